"""Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

Rotations are scheduled in round-robin (tournament) order: each round pairs
the indices into n/2 disjoint planes, so all rotations of a round commute and
can be applied as one orthogonal similarity.  The numba kernel applies them
with row-contiguous loops; the numpy kernel applies them with fancy indexing.
Both perform the same rotation sequence.

Convergence: off-diagonal Frobenius norm below ``1e-12 * n``; at most 100
sweeps (one sweep = n-1 rounds touches every pair once).

:func:`jacobi_singular_values` is the one-sided (Hestenes) variant: it rotates
columns of ``N`` so that the Gram matrix ``N^T N`` is diagonalized implicitly by
the same rotation sequence, and reads singular values off as column norms.  For
a bipartite graph this yields the eigenvalues of ``A`` as ``+-sigma`` without
square-rooting a computed eigenvalue of ``N^T N``; that square root would turn
an absolute error of 1e-13 at a zero eigenvalue into 3e-7.
"""

from __future__ import annotations

import numpy as np

from wenger._accel import dispatch, njit

MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    pass


def tournament_rounds(n: int) -> np.ndarray:
    """``(rounds, n_pairs, 2)`` schedule covering every unordered pair exactly once.

    Odd ``n`` gets a phantom index ``n``; pairs containing it are dropped.
    """
    m = n + (n & 1)
    players = np.arange(m)
    rounds = []
    for _ in range(m - 1):
        pairs = np.column_stack([players[: m // 2], players[::-1][: m // 2]])
        pairs = pairs[(pairs < n).all(axis=1)]
        pairs.sort(axis=1)
        rounds.append(pairs)
        players = np.concatenate([players[:1], players[-1:], players[1:-1]])
    width = max((len(r) for r in rounds), default=0)
    out = np.full((len(rounds), width, 2), -1, dtype=np.int64)
    for k, r in enumerate(rounds):
        out[k, : len(r)] = r
    return out


@njit
def _off_norm_numba(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return np.sqrt(s)


@njit
def _sweeps_numba(a, schedule, tol, max_sweeps):
    n = a.shape[0]
    width = schedule.shape[1]
    cs = np.empty(width)
    sn = np.empty(width)
    for sweep in range(max_sweeps + 1):
        if _off_norm_numba(a) < tol:
            return sweep
        if sweep == max_sweeps:
            break
        for r in range(schedule.shape[0]):
            for k in range(width):
                p = schedule[r, k, 0]
                q = schedule[r, k, 1]
                cs[k] = 1.0
                sn[k] = 0.0
                if p < 0:
                    continue
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                cs[k] = c
                sn[k] = t * c
            # A <- A J, row by row
            for i in range(n):
                for k in range(width):
                    p = schedule[r, k, 0]
                    if p < 0 or sn[k] == 0.0:
                        continue
                    q = schedule[r, k, 1]
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = cs[k] * aip - sn[k] * aiq
                    a[i, q] = sn[k] * aip + cs[k] * aiq
            # A <- J^T A, pairs of rows
            for k in range(width):
                p = schedule[r, k, 0]
                if p < 0 or sn[k] == 0.0:
                    continue
                q = schedule[r, k, 1]
                c = cs[k]
                s = sn[k]
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = c * apj - s * aqj
                    a[q, j] = s * apj + c * aqj
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


def _off_norm_numpy(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(np.sum(off * off)))


def _sweeps_numpy(a, schedule, tol, max_sweeps):
    for sweep in range(max_sweeps + 1):
        if _off_norm_numpy(a) < tol:
            return sweep
        if sweep == max_sweeps:
            break
        for pairs in schedule:
            pairs = pairs[pairs[:, 0] >= 0]
            p, q = pairs[:, 0], pairs[:, 1]
            apq = a[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
    return -1


_sweeps = dispatch(_sweeps_numba, _sweeps_numpy)


def jacobi_eigenvalues(matrix, tol: float | None = None, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, sorted ascending."""
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    if n == 0:
        return np.empty(0)
    if tol is None:
        tol = 1e-12 * n
    sweeps = _sweeps(a, tournament_rounds(n), float(tol), int(max_sweeps))
    if sweeps < 0:
        raise JacobiConvergenceError(f"no convergence after {max_sweeps} sweeps (n={n})")
    return np.sort(np.diag(a))


# -- one-sided variant: rows of ``w`` are the columns of N -------------------


@njit
def _hestenes_numba(w, schedule, tol, max_sweeps):
    n, dim = w.shape
    width = schedule.shape[1]
    for sweep in range(max_sweeps):
        off = 0.0
        for r in range(schedule.shape[0]):
            for k in range(width):
                p = schedule[r, k, 0]
                if p < 0:
                    continue
                q = schedule[r, k, 1]
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for j in range(dim):
                    alpha += w[p, j] * w[p, j]
                    beta += w[q, j] * w[q, j]
                    gamma += w[p, j] * w[q, j]
                if gamma == 0.0:
                    continue
                off += 2.0 * gamma * gamma
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for j in range(dim):
                    wp = w[p, j]
                    wq = w[q, j]
                    w[p, j] = c * wp - s * wq
                    w[q, j] = s * wp + c * wq
        if np.sqrt(off) < tol:
            return sweep + 1
    return -1


def _hestenes_numpy(w, schedule, tol, max_sweeps):
    for sweep in range(max_sweeps):
        off = 0.0
        for pairs in schedule:
            pairs = pairs[pairs[:, 0] >= 0]
            p, q = pairs[:, 0], pairs[:, 1]
            wp, wq = w[p], w[q]
            alpha = np.einsum("ij,ij->i", wp, wp)
            beta = np.einsum("ij,ij->i", wq, wq)
            gamma = np.einsum("ij,ij->i", wp, wq)
            live = gamma != 0.0
            if not live.any():
                continue
            p, q, wp, wq = p[live], q[live], wp[live], wq[live]
            alpha, beta, gamma = alpha[live], beta[live], gamma[live]
            off += 2.0 * float(np.sum(gamma * gamma))
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = (1.0 / np.sqrt(1.0 + t * t))[:, None]
            s = t[:, None] * c
            w[p] = c * wp - s * wq
            w[q] = s * wp + c * wq
        if np.sqrt(off) < tol:
            return sweep + 1
    return -1


_hestenes = dispatch(_hestenes_numba, _hestenes_numpy)


def jacobi_singular_values(matrix, tol: float | None = None, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Singular values of a real ``rows x cols`` matrix, sorted ascending.

    Returns ``min(rows, cols)`` values.  A sweep is accepted as final when the
    off-diagonal mass of the implicit Gram matrix it saw is below ``tol``.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    # rotate the shorter dimension's vectors; rows of w are columns of the operand
    w = np.ascontiguousarray(a.T if a.shape[1] <= a.shape[0] else a, dtype=np.float64).copy()
    n = w.shape[0]
    if n == 0:
        return np.empty(0)
    if tol is None:
        tol = 1e-12 * n
    sweeps = _hestenes(w, tournament_rounds(n), float(tol), int(max_sweeps))
    if sweeps < 0:
        raise JacobiConvergenceError(f"no convergence after {max_sweeps} sweeps (n={n})")
    return np.sort(np.sqrt(np.einsum("ij,ij->i", w, w)))
