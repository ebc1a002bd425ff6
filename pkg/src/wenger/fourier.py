"""Diagonalizing translation-invariant kernels on (Z_p)^D.

When a symmetric integer matrix ``M`` on a vector space V = F_q^n satisfies
``M[a, b] = c[b - a]``, its eigenvalues are the character sums
``sum_x c[x] * zeta^(k.x)`` for ``k`` in (Z_p)^D, ``D = e*n``, ``zeta = exp(2 pi i/p)``.

The transform here is done exactly in the group ring Z[Z_p]: each cell
carries ``p`` integer counts ``N_r(k) = sum{c[x] : k.x = r mod p}``, obtained
one axis at a time by cyclic shifts.  Only the final evaluation
``sum_r N_r cos(2 pi r / p)`` touches floating point, after subtracting
``min_r N_r`` (the only relation among powers of zeta is that they sum to 0),
so a vanishing eigenvalue comes out as exactly 0.0.
"""

from __future__ import annotations

import numpy as np


class NotTranslationInvariant(ValueError):
    pass


def digit_shape(p: int, e: int, n: int) -> tuple[int, ...]:
    return (p,) * (e * n)


def difference_index(a: np.ndarray, b: np.ndarray, p: int, ndigits: int) -> np.ndarray:
    """Index of ``b - a`` where indices are base-``p`` digit strings added digitwise."""
    out = np.zeros_like(a)
    scale = 1
    for _ in range(ndigits):
        da, db = a % p, b % p
        out += ((db - da) % p) * scale
        a, b = a // p, b // p
        scale *= p
    return out


def translation_kernel(matrix, p: int, ndigits: int) -> np.ndarray:
    """Return ``c`` with ``M[a, b] == c[b - a]``; raise if ``M`` is not of that form.

    ``matrix`` is a scipy sparse matrix with integer entries.
    """
    coo = matrix.tocoo()
    size = matrix.shape[0]
    c = np.zeros(size, dtype=np.int64)
    row0 = coo.row == 0
    c[coo.col[row0]] = coo.data[row0]
    diff = difference_index(coo.row.astype(np.int64), coo.col.astype(np.int64), p, ndigits)
    if np.any(c[diff] != coo.data):
        k = int(np.flatnonzero(c[diff] != coo.data)[0])
        raise NotTranslationInvariant(f"entry ({coo.row[k]}, {coo.col[k]}) breaks translation invariance")
    per_row = np.bincount(coo.row, minlength=size)
    if np.any(per_row != np.count_nonzero(c)):
        raise NotTranslationInvariant("rows have different support sizes")
    return c


def group_ring_transform(c: np.ndarray, p: int, ndigits: int) -> np.ndarray:
    """Integer counts ``N[k, r]``; row ``k`` uses the same base-``p`` digit indexing as ``c``."""
    shape = (p,) * ndigits
    arr = np.zeros(shape + (p,), dtype=np.int64)
    arr[..., 0] = np.asarray(c, dtype=np.int64).reshape(shape)
    for axis in range(ndigits):
        a = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(a)
        for k in range(p):
            for x in range(p):
                out[k] += np.roll(a[x], (k * x) % p, axis=-1)
        arr = np.moveaxis(out, 0, axis)
    return arr.reshape(-1, p)


def kernel_eigenvalues(c: np.ndarray, p: int, ndigits: int) -> np.ndarray:
    """Eigenvalues (one per character, unsorted) of a real symmetric translation kernel."""
    counts = group_ring_transform(c, p, ndigits)
    counts = counts - counts.min(axis=1, keepdims=True)
    # real symmetric kernel: counts at r and -r coincide, so the sine part is exactly 0
    if not np.array_equal(counts, counts[:, (-np.arange(p)) % p]):
        raise NotTranslationInvariant("kernel is not symmetric under x -> -x")
    return counts @ np.cos(2.0 * np.pi * np.arange(p) / p)
