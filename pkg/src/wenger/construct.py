"""Wenger graphs in their four presentations and the maps between them.

Vertex indexing is shared by every builder: a vector ``(x_1, ..., x_n)`` over
GF(q) gets index ``sum(canon(x_i) * q**(i-1))``; points come first, so a line
with vector index ``j`` is vertex ``n_points + j``.

Presentations (all adjacency rules solved for the unique point incident with a
given line and a chosen free coordinate, so construction is O(q^(m+2))):

``W_m(q)``   points (p_1..p_{m+1}), lines [l_1..l_{m+1}],
             l_{i+1} + p_{i+1} = l_i p_1 for i = 1..m.
``W'_m(q)``  same sets, l_k + p_k = l_1 p_1^(k-1) for k = 2..m+1.
``H_k(p)``   a = (a_0..a_{k-1}), b = (b_0..b_{k-1}) over Z_p,
             b_j = a_j + a_{j+1} b_{k-1} for j = 0..k-2; the a's are the points.
``H'_n(q)``  points (p_2..p_n), lines [l_1, l_3, l_4, ..., l_n],
             l_k - p_k = l_1 p_{k-1} for k = 3..n.

``H'`` skips subscript 2 on lines.  Storage is dense; the subscript of each
stored slot is given by :func:`hprime_line_subscripts`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from wenger.gf import FieldElement, FieldSpec, is_prime
from wenger.graph import BipartiteGraph, SimpleGraph

MAX_Q = 16
DEFAULT_MAX_SIDE = 100_000


class ParameterError(ValueError):
    pass


def max_side() -> int:
    """Construction guard on vertices per side; ``WENGER_MAX_VERTICES`` overrides it."""
    return int(os.environ.get("WENGER_MAX_VERTICES", DEFAULT_MAX_SIDE))


def _guard(q: int, dim: int):
    if q > MAX_Q:
        raise ParameterError(f"q={q} exceeds the desk-scale limit q <= {MAX_Q}")
    if q**dim > max_side():
        raise ParameterError(
            f"q^{dim} = {q**dim} vertices per side exceeds the limit {max_side()} "
            "(set WENGER_MAX_VERTICES to raise it)"
        )


@dataclass(frozen=True)
class FqVector:
    """Coordinates over GF(q); ``coords[i-1]`` holds subscript ``i``."""

    spec: FieldSpec
    coords: tuple[FieldElement, ...]

    def __post_init__(self):
        if any(c.spec != self.spec for c in self.coords):
            raise ParameterError("all coordinates must come from the same field")

    @classmethod
    def of(cls, spec: FieldSpec, values) -> "FqVector":
        return cls(spec, tuple(spec.element(int(v)) for v in values))

    @classmethod
    def from_index(cls, spec: FieldSpec, index: int, dim: int) -> "FqVector":
        return cls.of(spec, decode(index, spec.q, dim))

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    @property
    def index(self) -> int:
        return encode(self.values, self.spec.q)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "FqVector") -> "FqVector":
        return FqVector(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> "FqVector":
        return FqVector(self.spec, tuple(-a for a in self.coords))

    def __repr__(self):
        return f"FqVector(q={self.spec.q}, {list(self.values)})"


@dataclass(frozen=True)
class Vertex:
    kind: str  # "point" or "line"
    vec: FqVector

    def __post_init__(self):
        if self.kind not in ("point", "line"):
            raise ParameterError(f"vertex kind must be 'point' or 'line', got {self.kind!r}")


@dataclass(frozen=True)
class WengerParams:
    spec: FieldSpec
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")

    @classmethod
    def create(cls, q: int, m: int, modulus=None) -> "WengerParams":
        return cls(FieldSpec.create(q, modulus), m)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def connected_regime(self) -> bool:
        return self.m <= self.q - 1

    @property
    def side(self) -> int:
        return self.q ** (self.m + 1)


def encode(values, q: int) -> int:
    return sum(int(v) * q**i for i, v in enumerate(values))


def decode(index: int, q: int, dim: int) -> tuple[int, ...]:
    out = []
    for _ in range(dim):
        index, r = divmod(index, q)
        out.append(r)
    return tuple(out)


def all_vectors(q: int, dim: int) -> np.ndarray:
    """``(q**dim, dim)`` digit array; row ``j`` is the vector with index ``j``."""
    j = np.arange(q**dim, dtype=np.int64)
    return (j[:, None] // q ** np.arange(dim, dtype=np.int64)) % q


def _index_of(digits: np.ndarray, q: int) -> np.ndarray:
    return digits @ (q ** np.arange(digits.shape[1], dtype=np.int64))


def _from_solver(spec: FieldSpec, dim: int, solve: Callable[[np.ndarray, int], np.ndarray]):
    """Run ``solve(line_digits, free_value) -> point_digits`` over all lines and free values."""
    q = spec.q
    lines = all_vectors(q, dim)
    line_idx = np.arange(len(lines))
    pts, lns = [], []
    for t in range(q):
        pts.append(_index_of(solve(lines, t), q))
        lns.append(line_idx)
    return BipartiteGraph.from_incidences(q**dim, q**dim, np.concatenate(pts), np.concatenate(lns))


def build_W(params: WengerParams) -> BipartiteGraph:
    spec, m = params.spec, params.m
    _guard(spec.q, m + 1)
    mul, sub = spec.mul_table, spec.sub_table

    def solve(l, p1):
        p = np.empty_like(l)
        p[:, 0] = p1
        # p_{i+1} = l_i p_1 - l_{i+1}
        p[:, 1:] = sub[mul[l[:, :-1], p1], l[:, 1:]]
        return p

    return _from_solver(spec, m + 1, solve)


def build_W_prime(params: WengerParams) -> BipartiteGraph:
    spec, m = params.spec, params.m
    _guard(spec.q, m + 1)
    mul, sub = spec.mul_table, spec.sub_table

    def solve(l, p1):
        p = np.empty_like(l)
        p[:, 0] = p1
        powk = 1  # p_1^(k-1)
        for k in range(1, m + 1):
            powk = spec.mul_int(powk, p1)
            p[:, k] = sub[mul[l[:, 0], powk], l[:, k]]
        return p

    return _from_solver(spec, m + 1, solve)


def build_H(k: int, p: int) -> BipartiteGraph:
    """Wenger's original ``H_k(p)`` over the integers mod a prime ``p``."""
    if k < 2:
        raise ParameterError(f"H_k(p) needs k >= 2, got {k}")
    if not is_prime(p):
        raise ParameterError(f"H_k(p) needs a prime p, got {p}")
    _guard(p, k)

    def solve(b, a_last):
        a = np.empty_like(b)
        a[:, k - 1] = a_last
        # a_j = b_j - a_{j+1} b_{k-1}, solved downwards
        for j in range(k - 2, -1, -1):
            a[:, j] = (b[:, j] - a[:, j + 1] * b[:, k - 1]) % p
        return a

    return _from_solver(FieldSpec.create(p), k, solve)


def hprime_line_subscripts(n: int) -> tuple[int, ...]:
    """Subscripts of the stored line coordinates of ``H'_n(q)``: (1, 3, 4, ..., n)."""
    return (1,) + tuple(range(3, n + 1))


def build_H_prime(n: int, spec: FieldSpec) -> BipartiteGraph:
    if n < 3:
        raise ParameterError(f"H'_n(q) needs n >= 3, got {n}")
    _guard(spec.q, n - 1)
    mul, sub = spec.mul_table, spec.sub_table

    def solve(l, p2):
        # point slot s holds p_{s+2}; line slot 0 is l_1, slot s >= 1 is l_{s+2}
        p = np.empty_like(l)
        p[:, 0] = p2
        for s in range(1, n - 1):
            # p_k = l_k - l_1 p_{k-1}
            p[:, s] = sub[l[:, s], mul[l[:, 0], p[:, s - 1]]]
        return p

    return _from_solver(spec, n - 1, solve)


# -- the explicit isomorphisms ----------------------------------------------


def iso_phi(v: Vertex, k: int) -> Vertex:
    """``H_k(p) -> H'_{k+1}(p)``: reverse the coordinates, a's to points, b's to lines."""
    if k < 2:
        raise ParameterError(f"phi is defined for k >= 2, got {k}")
    if len(v.vec) != k:
        raise ParameterError(f"expected a vertex of H_{k}(p) with {k} coordinates, got {len(v.vec)}")
    return Vertex(v.kind, FqVector(v.vec.spec, v.vec.coords[::-1]))


def iso_psi(v: Vertex, m: int) -> Vertex:
    """``H'_{m+2}(q) -> W_m(q)``: points become lines verbatim, lines become negated points."""
    if len(v.vec) != m + 1:
        raise ParameterError(f"expected {m + 1} coordinates, got {len(v.vec)}")
    if v.kind == "point":
        return Vertex("line", v.vec)
    return Vertex("point", -v.vec)


def iso_omega(v: Vertex, m: int) -> Vertex:
    """``W_m(q) -> W'_m(q)``: lines fixed; p'_k = p_k + sum_{i=2}^{k-1} p_i p_1^(k-i)."""
    if len(v.vec) != m + 1:
        raise ParameterError(f"expected {m + 1} coordinates, got {len(v.vec)}")
    if v.kind == "line":
        return v
    p = v.vec.coords
    out = list(p)
    for k in range(3, m + 2):
        acc = p[k - 1]
        for i in range(2, k):
            acc = acc + p[i - 1] * p[0] ** (k - i)
        out[k - 1] = acc
    return Vertex("point", FqVector(v.vec.spec, tuple(out)))


def vertex_of(g: BipartiteGraph, index: int, spec: FieldSpec, dim: int) -> Vertex:
    if index < g.n_points:
        return Vertex("point", FqVector.from_index(spec, index, dim))
    return Vertex("line", FqVector.from_index(spec, index - g.n_points, dim))


def index_of(g: BipartiteGraph, v: Vertex) -> int:
    return v.vec.index + (0 if v.kind == "point" else g.n_points)


def vertex_map(src: BipartiteGraph, dst: BipartiteGraph, spec: FieldSpec, dim: int, fn) -> np.ndarray:
    """Tabulate a vertex map ``fn: Vertex -> Vertex`` as an index array ``src -> dst``."""
    return np.array(
        [index_of(dst, fn(vertex_of(src, v, spec, dim))) for v in range(src.n)], dtype=np.int64
    )


@dataclass
class IsomorphismReport:
    ok: bool
    reason: str = ""
    violation: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def verify_isomorphism(g1, g2, mapping) -> IsomorphismReport:
    """Check that ``mapping[v]`` is a bijection preserving adjacency and non-adjacency."""
    mapping = np.asarray(mapping, dtype=np.int64)
    if g1.n != g2.n:
        raise ParameterError(f"orders differ: {g1.n} vs {g2.n}")
    if len(mapping) != g1.n:
        raise ParameterError(f"map has {len(mapping)} entries for {g1.n} vertices")
    if mapping.min(initial=0) < 0 or mapping.max(initial=0) >= g2.n:
        return IsomorphismReport(False, "map leaves the target vertex set")
    if len(np.unique(mapping)) != g1.n:
        vals, counts = np.unique(mapping, return_counts=True)
        hits = np.flatnonzero(mapping == vals[counts > 1][0])
        return IsomorphismReport(False, "map is not injective", (int(hits[0]), int(hits[1])))
    for u, v in g1.edges():
        if not g2.has_edge(mapping[u], mapping[v]):
            return IsomorphismReport(False, "edge not preserved", (int(u), int(v)))
    if g1.n_edges != g2.n_edges:
        # a bijection carrying E1 into E2 with |E1| < |E2| misses some image edge
        inv = np.empty_like(mapping)
        inv[mapping] = np.arange(g1.n)
        for a, b in g2.edges():
            if not g1.has_edge(inv[a], inv[b]):
                return IsomorphismReport(False, "non-edge mapped onto an edge", (int(inv[a]), int(inv[b])))
    return IsomorphismReport(True)


def phi_map(k: int, p: int) -> tuple[BipartiteGraph, BipartiteGraph, np.ndarray]:
    spec = FieldSpec.create(p)
    g1, g2 = build_H(k, p), build_H_prime(k + 1, spec)
    return g1, g2, vertex_map(g1, g2, spec, k, lambda v: iso_phi(v, k))


def psi_map(params: WengerParams) -> tuple[BipartiteGraph, BipartiteGraph, np.ndarray]:
    m = params.m
    g1, g2 = build_H_prime(m + 2, params.spec), build_W(params)
    return g1, g2, vertex_map(g1, g2, params.spec, m + 1, lambda v: iso_psi(v, m))


def omega_map(params: WengerParams) -> tuple[BipartiteGraph, BipartiteGraph, np.ndarray]:
    m = params.m
    g1, g2 = build_W(params), build_W_prime(params)
    return g1, g2, vertex_map(g1, g2, params.spec, m + 1, lambda v: iso_omega(v, m))


# -- the point graph on lines ------------------------------------------------


def connection_set(params: WengerParams) -> np.ndarray:
    """Digits of S = {(t, tu, ..., tu^m) : t != 0}; shape ``(q(q-1), m+1)``."""
    spec, m = params.spec, params.m
    rows = []
    for t in range(1, spec.q):
        for u in range(spec.q):
            row, x = [], t
            for _ in range(m + 1):
                row.append(x)
                x = spec.mul_int(x, u)
            rows.append(row)
    return np.array(rows, dtype=np.int64)


def cayley_point_graph(params: WengerParams) -> SimpleGraph:
    """Cayley graph of (F_q^{m+1}, +) with connection set S."""
    spec, m = params.spec, params.m
    _guard(spec.q, m + 1)
    x = all_vectors(spec.q, m + 1)
    idx = np.arange(len(x))
    src, dst = [], []
    for s in connection_set(params):
        src.append(idx)
        dst.append(_index_of(spec.add_table[x, s], spec.q))
    return SimpleGraph.from_edges(len(x), np.concatenate(src), np.concatenate(dst))


def distance_two_point_graph(g: BipartiteGraph) -> SimpleGraph:
    """Lines joined when they share a point (read off the incidence structure)."""
    src, dst = [], []
    for pt in range(g.n_points):
        nb = g.neighbors(pt) - g.n_points
        a, b = np.meshgrid(nb, nb, indexing="ij")
        mask = a != b
        src.append(a[mask])
        dst.append(b[mask])
    src = np.concatenate(src) if src else np.empty(0, dtype=np.int64)
    dst = np.concatenate(dst) if dst else np.empty(0, dtype=np.int64)
    return SimpleGraph.from_edges(g.n_lines, src, dst)


def point_graph(params: WengerParams, g: BipartiteGraph | None = None, method: str = "cayley") -> SimpleGraph:
    if method == "cayley":
        return cayley_point_graph(params)
    if method == "distance2":
        return distance_two_point_graph(g if g is not None else build_W(params))
    raise ParameterError(f"unknown point-graph method {method!r}")


PRESENTATIONS = ("W", "Wprime", "H", "Hprime")


def build(presentation: str, params: WengerParams) -> BipartiteGraph:
    """Build the presentation isomorphic to ``W_m(q)`` for the given parameters."""
    if presentation == "W":
        return build_W(params)
    if presentation == "Wprime":
        return build_W_prime(params)
    if presentation == "Hprime":
        return build_H_prime(params.m + 2, params.spec)
    if presentation == "H":
        if params.spec.e != 1:
            raise ParameterError(f"H_k(p) is defined for prime p only, got q={params.q}")
        return build_H(params.m + 1, params.q)
    raise ParameterError(f"unknown presentation {presentation!r}; expected one of {PRESENTATIONS}")
