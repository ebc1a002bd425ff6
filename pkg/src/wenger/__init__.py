"""Wenger graphs W_m(q): constructions, spectra by three routes, and verification."""
