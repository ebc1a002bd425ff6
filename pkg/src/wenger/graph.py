"""Graph containers, BFS metrics and exchange formats.

Graphs are stored in CSR form (``indptr``, ``indices``; neighbor lists sorted
and duplicate-free).  Vertex ``v`` of a :class:`BipartiteGraph` is a point when
``v < n_points`` and a line otherwise.

The all-sources BFS behind :func:`diameter` and :func:`girth` is the hot loop;
it has a numba kernel and a numpy kernel (see :mod:`wenger._accel`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from wenger._accel import dispatch, njit

INF = math.inf


class GraphError(ValueError):
    pass


def _csr_from_edges(n: int, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
        raise GraphError("edge endpoint out of range")
    if np.any(u == v):
        raise GraphError("loops are not allowed")
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    key = np.unique(src * n + dst)
    src, dst = np.divmod(key, n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int64)


class _CSRGraph:
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def edges(self) -> np.ndarray:
        """``(E, 2)`` array of edges ``u < v`` in lexicographic order."""
        owner = np.repeat(np.arange(self.n), self.degrees())
        mask = owner < self.indices
        return np.column_stack([owner[mask], self.indices[mask]])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < len(nb) and nb[k] == v)

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        owner = np.repeat(np.arange(self.n), self.degrees())
        a[owner, self.indices] = 1
        return a

    def same_edges(self, other: "_CSRGraph") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )


@dataclass(frozen=True, eq=False)
class SimpleGraph(_CSRGraph):
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_edges(cls, n: int, u, v) -> "SimpleGraph":
        return cls(*_csr_from_edges(n, u, v))


@dataclass(frozen=True, eq=False)
class BipartiteGraph(_CSRGraph):
    n_points: int
    n_lines: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_incidences(cls, n_points: int, n_lines: int, points, lines) -> "BipartiteGraph":
        """Build from point/line index pairs; line ``j`` becomes vertex ``n_points + j``."""
        points = np.asarray(points, dtype=np.int64)
        lines = np.asarray(lines, dtype=np.int64)
        if points.size and (points.min() < 0 or points.max() >= n_points):
            raise GraphError("point index out of range")
        if lines.size and (lines.min() < 0 or lines.max() >= n_lines):
            raise GraphError("line index out of range")
        indptr, indices = _csr_from_edges(n_points + n_lines, points, lines + n_points)
        return cls(n_points, n_lines, indptr, indices)

    def is_point(self, v: int) -> bool:
        return v < self.n_points

    def biadjacency(self):
        """Sparse ``n_points x n_lines`` 0/1 incidence matrix ``N`` (int64)."""
        from scipy.sparse import csr_matrix

        rows = np.repeat(np.arange(self.n_points), self.degrees()[: self.n_points])
        cols = self.indices[: self.indptr[self.n_points]] - self.n_points
        data = np.ones(len(rows), dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(self.n_points, self.n_lines))

    def check_bipartite(self) -> bool:
        owner = np.repeat(np.arange(self.n), self.degrees())
        return bool(np.all((owner < self.n_points) != (self.indices < self.n_points)))


def degree_profile(g: _CSRGraph) -> tuple[int, int, bool]:
    deg = g.degrees()
    if len(deg) == 0:
        return 0, 0, True
    lo, hi = int(deg.min()), int(deg.max())
    return lo, hi, lo == hi


# -- single-source BFS ------------------------------------------------------


@njit
def _bfs_numba(indptr, indices, src):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
    return dist


def _bfs_numpy(indptr, indices, src):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    dist[src] = 0
    frontier = np.array([src], dtype=np.int64)
    level = 0
    deg = np.diff(indptr)
    while frontier.size:
        level += 1
        starts = indptr[frontier]
        counts = deg[frontier]
        # gather all neighbor slots of the frontier in one shot
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = indices[np.repeat(starts, counts) + offs]
        nbrs = np.unique(nbrs[dist[nbrs] < 0])
        dist[nbrs] = level
        frontier = nbrs
    return dist


bfs_distances = dispatch(_bfs_numba, _bfs_numpy)


def connected_components(g: _CSRGraph) -> list[np.ndarray]:
    """Vertex sets of the components, each sorted, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for v in range(g.n):
        if not seen[v]:
            comp = np.flatnonzero(bfs_distances(g.indptr, g.indices, v) >= 0)
            seen[comp] = True
            comps.append(comp)
    return comps


def induced_subgraph(g: _CSRGraph, vertices) -> _CSRGraph:
    """Subgraph on ``vertices``, relabelled 0.. in sorted order.

    Bipartite graphs keep their point/line split since points sort first.
    """
    keep = np.unique(np.asarray(vertices, dtype=np.int64))
    relabel = np.full(g.n, -1, dtype=np.int64)
    relabel[keep] = np.arange(len(keep))
    owner = np.repeat(np.arange(g.n), g.degrees())
    mask = (relabel[owner] >= 0) & (relabel[g.indices] >= 0) & (owner < g.indices)
    u, v = relabel[owner[mask]], relabel[g.indices[mask]]
    if isinstance(g, BipartiteGraph):
        n_points = int(np.count_nonzero(keep < g.n_points))
        return BipartiteGraph.from_incidences(n_points, len(keep) - n_points, u, v - n_points)
    return SimpleGraph.from_edges(len(keep), u, v)


# -- all-sources BFS: eccentricities and girth in one pass -------------------

# girth candidates per root: an edge inside a BFS layer closes an odd cycle of
# length <= 2d+1; a vertex at depth d with two parents closes an even cycle of
# length <= 2d.  The minimum over all roots is exactly the girth.

_NO_CYCLE = np.iinfo(np.int64).max


@njit
def _all_sources_numba(indptr, indices):
    n = len(indptr) - 1
    ecc = np.empty(n, dtype=np.int64)
    best = _NO_CYCLE
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for r in range(n):
        dist[:] = -1
        dist[r] = 0
        queue[0] = r
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                dw = dist[w]
                if dw < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
                elif dw == du:
                    if 2 * du + 1 < best:
                        best = 2 * du + 1
                elif dw == du + 1:
                    if 2 * dw < best:
                        best = 2 * dw
        ecc[r] = dist[queue[tail - 1]] if tail == n else -1
    return ecc, best


def _all_sources_numpy(indptr, indices, chunk_elems=40_000_000):
    n = len(indptr) - 1
    deg = np.diff(indptr)
    owner = np.repeat(np.arange(n), deg)
    starts = indptr[:-1]
    has_nbrs = deg > 0
    # reduceat needs in-range offsets; pad one sentinel slot
    starts_safe = np.minimum(starts, len(indices))
    ecc = np.empty(n, dtype=np.int64)
    best = _NO_CYCLE
    rows_per_chunk = max(1, chunk_elems // max(1, n + len(indices)))
    for lo in range(0, n, rows_per_chunk):
        roots = np.arange(lo, min(n, lo + rows_per_chunk))
        r = len(roots)
        dist = np.full((r, n), -1, dtype=np.int64)
        dist[np.arange(r), roots] = 0
        frontier = np.zeros((r, n + 1), dtype=bool)
        frontier[np.arange(r), roots] = True
        level = 0
        while True:
            level += 1
            slots = np.concatenate([frontier[:, indices], np.zeros((r, 1), dtype=bool)], axis=1)
            reach = np.logical_or.reduceat(slots, starts_safe, axis=1) & has_nbrs
            new = reach & (dist < 0)
            if not new.any():
                break
            dist[new] = level
            frontier[:, :n] = new
        ecc[roots] = np.where((dist >= 0).all(axis=1), dist.max(axis=1), -1)
        if len(indices) == 0:
            continue
        du = dist[:, owner]
        dw = dist[:, indices]
        odd = (du >= 0) & (du == dw)
        if odd.any():
            best = min(best, int(2 * du[odd].min() + 1))
        parent = np.concatenate([(du >= 1) & (dw == du - 1), np.zeros((r, 1), dtype=bool)], axis=1)
        n_parents = np.add.reduceat(parent.astype(np.int64), starts_safe, axis=1) * has_nbrs
        multi = n_parents >= 2
        if multi.any():
            best = min(best, int(2 * dist[multi].min()))
    return ecc, best


all_sources_bfs = dispatch(_all_sources_numba, _all_sources_numpy)


def bfs_metrics(g: _CSRGraph) -> tuple[int | float, int | float]:
    """``(diameter, girth)`` from a single all-sources pass."""
    if g.n == 0:
        return 0, INF
    ecc, best = all_sources_bfs(g.indptr, g.indices)
    diam = INF if np.any(ecc < 0) else int(ecc.max())
    return diam, (INF if best == _NO_CYCLE else int(best))


def eccentricities(g: _CSRGraph) -> np.ndarray:
    return all_sources_bfs(g.indptr, g.indices)[0]


def diameter(g: _CSRGraph) -> int | float:
    """Largest eccentricity; ``math.inf`` when the graph is disconnected."""
    if g.n == 0:
        return 0
    ecc = eccentricities(g)
    if np.any(ecc < 0):
        return INF
    return int(ecc.max())


def girth(g: _CSRGraph) -> int | float:
    """Length of a shortest cycle; ``math.inf`` for a forest."""
    if g.n == 0:
        return INF
    best = all_sources_bfs(g.indptr, g.indices)[1]
    return INF if best == _NO_CYCLE else int(best)


# -- exchange formats --------------------------------------------------------

FORMATS = ("edgelist", "matrixmarket")


def export(g: _CSRGraph, fmt: str) -> bytes:
    """Serialize ``g``.

    ``edgelist``: one ``"u v"`` per line, zero-based, ``u < v``, sorted.
    ``matrixmarket``: coordinate pattern symmetric, 1-based, lower triangle.
    """
    e = g.edges()
    if fmt == "edgelist":
        return "".join(f"{u} {v}\n" for u, v in e).encode("ascii")
    if fmt == "matrixmarket":
        e = e[np.lexsort((e[:, 0], e[:, 1]))]
        lines = [
            "%%MatrixMarket matrix coordinate pattern symmetric\n",
            f"{g.n} {g.n} {len(e)}\n",
        ]
        lines.extend(f"{v + 1} {u + 1}\n" for u, v in e)
        return "".join(lines).encode("ascii")
    raise GraphError(f"unknown export format {fmt!r}; expected one of {FORMATS}")


def read_edgelist(data: bytes | str, n: int | None = None) -> SimpleGraph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    pairs = [tuple(map(int, ln.split())) for ln in data.splitlines() if ln.strip()]
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    if n is None:
        n = int(arr.max()) + 1 if len(arr) else 0
    return SimpleGraph.from_edges(n, arr[:, 0], arr[:, 1])


def read_matrixmarket(data: bytes | str) -> SimpleGraph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    rows = [ln for ln in data.splitlines() if ln.strip() and not ln.startswith("%")]
    n, _, nnz = map(int, rows[0].split())
    arr = np.array([tuple(map(int, ln.split())) for ln in rows[1:]], dtype=np.int64).reshape(-1, 2)
    if len(arr) != nnz:
        raise GraphError(f"header announces {nnz} entries, found {len(arr)}")
    return SimpleGraph.from_edges(n, arr[:, 0] - 1, arr[:, 1] - 1)
