"""Command-line front end: ``wenger {build,spectrum,verify,report,census}``.

Output on stdout is deterministic; progress and timings go to stderr.
Exit status is 0 iff every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from wenger import construct as C
from wenger import graph as G
from wenger import spectral as S
from wenger.gf import FieldError, FieldSpec, factor_prime_power


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"2..9"`` or ``"2,3,5"`` (items may themselves be ranges)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return sorted(set(out))


def _field(q: int) -> FieldSpec:
    spec = FieldSpec.create(q)
    print(f"field GF({q}): p={spec.p} e={spec.e} modulus={list(spec.modulus)}", file=sys.stderr)
    return spec


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- build -------------------------------------------------------------------


def cmd_build(args) -> int:
    spec = _field(args.q)
    params = C.WengerParams(spec, args.m)
    g = C.build(args.presentation, params)
    fmt = args.format or "edgelist"
    if fmt not in G.FORMATS:
        raise C.ParameterError(f"build writes one of {G.FORMATS}, got {fmt!r}")
    data = G.export(g, fmt)
    summary = f"{args.presentation} q={args.q} m={args.m}: {g.n} vertices, {g.n_edges} edges\n"
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        sys.stdout.write(summary)
    else:
        sys.stdout.buffer.write(data)
        sys.stderr.write(summary)
    return 0


# -- spectrum -------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    q, m = args.q, args.m
    spec = _field(q)
    methods = ["closed", "census", "numeric"] if args.method == "all" else [args.method]
    tables = []
    for method in methods:
        t0 = time.perf_counter()
        if method == "closed":
            tables.append(S.closed_form_spectrum(q, m))
        elif method == "census":
            tables.append(S.census_spectrum(q, m, spec))
        else:
            params = C.WengerParams(spec, m)
            tables.append(S.numeric_spectrum(C.build_W(params), params))
        print(f"{method}: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    verdict = None
    if len(tables) > 1:
        ref = tables[0]
        exact_ok = all(ref.agrees_with(t, atol=0.0) for t in tables[1:] if t.provenance != "numeric")
        numeric_ok = all(ref.agrees_with(t, atol=1e-8) for t in tables[1:] if t.provenance == "numeric")
        verdict = "AGREE" if exact_ok and numeric_ok else "DISAGREE"
    if (args.format or "table") == "json":
        payload = {"schema": S.SCHEMA_VERSION, "tables": [t.to_dict() for t in tables]}
        if verdict:
            payload["verdict"] = verdict
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "".join(t.to_text() + "\n" for t in tables)
        if verdict:
            text += f"{verdict}\n"
    _emit(text, args.out)
    return 0 if verdict in (None, "AGREE") else 1


# -- report / census -----------------------------------------------------------


def cmd_report(args) -> int:
    rep = S.lambda2_report(args.q, args.m)
    if (args.format or "table") == "json":
        _emit(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(rep.to_text(), args.out)
    return 0


def cmd_census(args) -> int:
    q, m = args.q, args.m
    spec = _field(q)
    census = S.root_census(spec, m)
    rows = []
    for i, count in enumerate(census.counts):
        predicted = None
        if m <= q - 1:
            predicted = (q - 1) * sum(S.b_monic(q, d, i) for d in range(i, m + 1))
        rows.append({"roots": i, "tuples": count, "from_b": predicted})
    if (args.format or "table") == "json":
        payload = {"schema": S.SCHEMA_VERSION, "q": q, "m": m, "zero_polynomial": census.zero_count, "rows": rows}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"# root census q={q} m={m}: {census.total} tuples (zero polynomial counted separately)"]
        lines.append(f"{'roots':>5}  {'tuples':>10}  {'(q-1)*sum b':>12}")
        for r in rows:
            pred = "-" if r["from_b"] is None else str(r["from_b"])
            lines.append(f"{r['roots']:>5}  {r['tuples']:>10}  {pred:>12}")
        _emit("\n".join(lines) + "\n", args.out)
    ok = all(r["from_b"] is None or r["from_b"] == r["tuples"] for r in rows)
    return 0 if ok else 1


# -- verify ---------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # PASS | FAIL | SKIP | INFO
    detail: str = ""

    def line(self) -> str:
        return f"{self.name}: {self.status}" + (f" ({self.detail})" if self.detail else "")


def _prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
        return True
    except FieldError:
        return False


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def suite_identity(q: int, m: int) -> Iterable[Check]:
    r = S.check_identity(q, m)
    tag = f"identity q={q} m={m}"
    detail = f"{r.lhs} = {r.rhs}" if r.holds else f"{r.lhs} != {r.rhs}"
    if _prime_power(q) and m <= q - 1:
        yield Check(tag, _status(r.holds), detail)
    else:
        # outside prime powers with m <= q-1 the identity is only probed
        yield Check(tag, "INFO", "probe, " + detail)


def suite_isomorphisms(q: int, m: int) -> Iterable[Check]:
    params = C.WengerParams.create(q, m)
    g1, g2, mp = C.omega_map(params)
    rep = C.verify_isomorphism(g1, g2, mp)
    yield Check(f"omega W->W' q={q} m={m}", _status(rep.ok), rep.reason)
    h1, h2, mpsi = C.psi_map(params)
    rep = C.verify_isomorphism(h1, h2, mpsi)
    yield Check(f"psi H'->W q={q} m={m}", _status(rep.ok), rep.reason)
    if params.spec.e == 1:
        k1, k2, mphi = C.phi_map(m + 1, q)
        rep = C.verify_isomorphism(k1, k2, mphi)
        yield Check(f"phi H->H' p={q} k={m + 1}", _status(rep.ok), rep.reason)
        # H_{m+1}(p) -> H'_{m+2}(p) -> W_m(p) -> W'_m(p)
        chain = mp[mpsi[mphi]]
        rep = C.verify_isomorphism(k1, g2, chain)
        yield Check(f"omega.psi.phi H->W' p={q} m={m}", _status(rep.ok), rep.reason)
    else:
        yield Check(f"phi H->H' q={q} k={m + 1}", "SKIP", "H_k(p) needs prime p")


def suite_gram(q: int, m: int) -> Iterable[Check]:
    params = C.WengerParams.create(q, m)
    if params.side > S.GRAM_MAX_LINES:
        yield Check(f"gram q={q} m={m}", "SKIP", f"q^(m+1) > {S.GRAM_MAX_LINES}")
        return
    g = C.build_W(params)
    h = C.point_graph(params)
    rep = S.verify_gram_identity(g, h, q)
    yield Check(f"gram q={q} m={m}", _status(rep.ok), "" if rep.ok else f"first mismatch {rep.mismatch}")
    same = h.same_edges(C.point_graph(params, g, method="distance2"))
    yield Check(f"cayley=distance2 q={q} m={m}", _status(same))


def suite_census(q: int, m: int) -> Iterable[Check]:
    if q ** (m + 1) > S.CENSUS_MAX_TUPLES:
        yield Check(f"census q={q} m={m}", "SKIP", "too many tuples")
        return
    spec = FieldSpec.create(q)
    ok = S.census_spectrum(q, m, spec).agrees_with(S.closed_form_spectrum(q, m), atol=0.0)
    yield Check(f"census q={q} m={m}", _status(ok))
    if m <= q - 1:
        census = S.root_census(spec, m)
        link = all(
            census.counts[i] == (q - 1) * sum(S.b_monic(q, d, i) for d in range(i, m + 1))
            for i in range(m + 1)
        )
        yield Check(f"census-vs-b q={q} m={m}", _status(link))


def suite_structure(q: int, m: int) -> Iterable[Check]:
    params = C.WengerParams.create(q, m)
    g = C.build_W(params)
    lo, hi, regular = G.degree_profile(g)
    yield Check(f"regular q={q} m={m}", _status(regular and lo == q), f"degree {lo}..{hi}")
    yield Check(f"edges q={q} m={m}", _status(g.n_edges == q ** (m + 2)), f"{g.n_edges}")
    comps = G.connected_components(g)
    expected = 1 if m <= q - 1 else q ** (m - q + 1)
    yield Check(f"components q={q} m={m}", _status(len(comps) == expected), f"components={len(comps)}")
    if g.n > 4000:
        yield Check(f"diameter q={q} m={m}", "SKIP", "more than 4000 vertices")
        return
    diam, gi = G.bfs_metrics(g)
    if m <= q - 1:
        yield Check(f"diameter q={q} m={m}", _status(diam == 2 * m + 2), f"diameter={diam}")
    yield Check(f"girth q={q} m={m}", "INFO", f"girth={gi}")


SUITES: dict[str, Callable[[int, int], Iterable[Check]]] = {
    "isomorphisms": suite_isomorphisms,
    "gram": suite_gram,
    "identity": suite_identity,
    "census": suite_census,
    "structure": suite_structure,
}


def run_suites(names: list[str], qs: list[int], ms: list[int]) -> list[Check]:
    checks: list[Check] = []
    for name in names:
        for q in qs:
            if name != "identity" and not _prime_power(q):
                checks.append(Check(f"{name} q={q}", "SKIP", f"{q} is not a prime power"))
                continue
            for m in ms:
                try:
                    checks.extend(SUITES[name](q, m))
                except (C.ParameterError, S.SpectrumError) as exc:
                    checks.append(Check(f"{name} q={q} m={m}", "SKIP", str(exc)))
    return checks


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names, args.q, args.m)
    failed = sum(c.status == "FAIL" for c in checks)
    passed = sum(c.status == "PASS" for c in checks)
    if (args.format or "table") == "json":
        payload = {
            "schema": S.SCHEMA_VERSION,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
            "passed": passed,
            "failed": failed,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "".join(c.line() + "\n" for c in checks) + f"{passed} passed, {failed} failed\n"
    _emit(text, args.out)
    return 1 if failed else 0


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wenger", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, ranges=False):
        if ranges:
            p.add_argument("--q", type=parse_range, required=True, help="e.g. 3, 2..9 or 2,3,5")
            p.add_argument("--m", type=parse_range, required=True, help="e.g. 1..4")
        else:
            p.add_argument("--q", type=int, required=True, help="field order (prime power)")
            p.add_argument("--m", type=int, required=True)
        p.add_argument("--format", choices=["table", "json", "edgelist", "matrixmarket"])
        p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("build", help="construct a presentation and export it")
    common(p)
    p.add_argument("--presentation", choices=C.PRESENTATIONS, default="W")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("spectrum", help="spectrum by closed form, census, numerics or all three")
    common(p)
    p.add_argument("--method", choices=["closed", "census", "numeric", "all"], default="closed")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run verification suites over parameter ranges")
    common(p, ranges=True)
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="second eigenvalue, conjecture and Ramanujan verdicts")
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("census", help="tuples classified by number of distinct roots")
    common(p)
    p.set_defaults(func=cmd_census)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FieldError, C.ParameterError, S.SpectrumError, G.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
