"""Attractor kernels over index-based game graphs.

Two interchangeable backends compute identical results:

* ``numba``: a worklist (counter) algorithm compiled with ``@njit``.
* ``numpy``: a layered, fully vectorized fixpoint.

The backend is chosen once at import time from the ``TEMPGAMES_NUMBA``
environment variable (``0``/``off`` disables numba). Both implementations
stay importable under explicit names so tests and the benchmark can compare
them directly.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _numba_requested():
    return os.environ.get("TEMPGAMES_NUMBA", "1").strip().lower() not in (
        "0",
        "off",
        "false",
        "no",
    )


USE_NUMBA = HAVE_NUMBA and _numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"


class GameGraph:
    """Immutable CSR view of a finite game graph over vertices ``0..n-1``.

    Edges are stored sorted by ``(src, dst)`` so that the first admissible
    edge of a vertex is always its lowest-index successor.
    """

    __slots__ = ("n", "owner", "src", "dst", "succ_ptr", "pred_ptr", "pred_idx", "out_deg")

    def __init__(self, owner, src, dst):
        owner = np.asarray(owner, dtype=np.int8)
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        n = owner.shape[0]
        if src.size:
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
            keep = np.ones(src.size, dtype=bool)
            keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
            src, dst = src[keep], dst[keep]
        self.n = n
        self.owner = owner
        self.src = src
        self.dst = dst
        self.out_deg = np.bincount(src, minlength=n).astype(np.int64)
        self.succ_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.out_deg, out=self.succ_ptr[1:])
        by_dst = np.argsort(dst, kind="stable")
        self.pred_idx = src[by_dst]
        self.pred_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dst, minlength=n), out=self.pred_ptr[1:])

    @classmethod
    def from_successors(cls, owner, successors):
        src = [u for u, succ in enumerate(successors) for _ in succ]
        dst = [v for succ in successors for v in succ]
        return cls(owner, src, dst)

    def successors(self, u):
        return self.dst[self.succ_ptr[u] : self.succ_ptr[u + 1]]

    @property
    def num_edges(self):
        return int(self.src.size)


# ---------------------------------------------------------------------------
# numba backend


def _attractor_worklist(n, pred_ptr, pred_idx, out_deg, mine, target):
    rank = np.full(n, -1, dtype=np.int64)
    remaining = out_deg.copy()
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if target[v]:
            rank[v] = 0
            queue[tail] = v
            tail += 1
    # FIFO order keeps ranks non-decreasing, so the first hit on a vertex of
    # ``mine`` is a minimal-rank successor and the last hit on an opponent
    # vertex is a maximal-rank one.
    while head < tail:
        v = queue[head]
        head += 1
        for j in range(pred_ptr[v], pred_ptr[v + 1]):
            u = pred_idx[j]
            if rank[u] >= 0:
                continue
            if mine[u]:
                rank[u] = rank[v] + 1
                queue[tail] = u
                tail += 1
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    rank[u] = rank[v] + 1
                    queue[tail] = u
                    tail += 1
    return rank


if HAVE_NUMBA:
    _attractor_nb = njit(cache=True)(_attractor_worklist)

    @njit(cache=True)
    def _reach_matrix_nb(n, pred_ptr, pred_idx, out_deg, mine):
        out = np.zeros((n, n), dtype=np.bool_)
        target = np.zeros(n, dtype=np.bool_)
        for v in range(n):
            target[v] = True
            rank = _attractor_nb(n, pred_ptr, pred_idx, out_deg, mine, target)
            target[v] = False
            for u in range(n):
                out[u, v] = rank[u] >= 0
        return out


def attractor_ranks_numba(graph, target, mine):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return _attractor_nb(
        graph.n, graph.pred_ptr, graph.pred_idx, graph.out_deg,
        np.ascontiguousarray(mine, dtype=np.bool_),
        np.ascontiguousarray(target, dtype=np.bool_),
    )


def reach_matrix_numba(graph, mine):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return _reach_matrix_nb(
        graph.n, graph.pred_ptr, graph.pred_idx, graph.out_deg,
        np.ascontiguousarray(mine, dtype=np.bool_),
    )


# ---------------------------------------------------------------------------
# numpy backend


def attractor_ranks_numpy(graph, target, mine):
    n = graph.n
    target = np.asarray(target, dtype=bool)
    mine = np.asarray(mine, dtype=bool)
    rank = np.where(target, 0, -1).astype(np.int64)
    inside = np.zeros(n, dtype=np.int64)
    frontier = target.copy()
    level = 0
    src, dst, out_deg = graph.src, graph.dst, graph.out_deg
    while frontier.any():
        hit = frontier[dst]
        inside += np.bincount(src[hit], minlength=n)
        level += 1
        joined = (rank < 0) & np.where(mine, inside > 0, (inside == out_deg) & (out_deg > 0))
        rank[joined] = level
        frontier = joined
    return rank


_DENSE_LIMIT = 2048


def reach_matrix_numpy(graph, mine):
    """All single-target attractors at once; row ``u``, column ``v``."""
    n = graph.n
    mine = np.asarray(mine, dtype=bool)
    if n > _DENSE_LIMIT:
        out = np.zeros((n, n), dtype=bool)
        for v in range(n):
            t = np.zeros(n, dtype=bool)
            t[v] = True
            out[:, v] = attractor_ranks_numpy(graph, t, mine) >= 0
        return out
    # float32 goes through BLAS; counts stay exact far beyond any out-degree here
    adj = np.zeros((n, n), dtype=np.float32)
    adj[graph.src, graph.dst] = 1
    # region[t, u]: u is in the attractor of target t
    region = np.eye(n, dtype=bool)
    frontier = region.copy()
    inside = np.zeros((n, n), dtype=np.float32)
    out_deg = graph.out_deg.astype(np.float32)
    while frontier.any():
        inside += frontier.astype(np.float32) @ adj.T
        joined = ~region & np.where(mine, inside > 0, (inside == out_deg) & (out_deg > 0))
        region |= joined
        frontier = joined
    return region.T.copy()


# ---------------------------------------------------------------------------
# dispatch


def attractor_ranks(graph, target, mine, backend=None):
    """Attractor ranks: ``-1`` outside the region, else the least forcing horizon."""
    backend = backend or BACKEND
    if backend == "numba":
        return attractor_ranks_numba(graph, target, mine)
    return attractor_ranks_numpy(graph, target, mine)


def reach_matrix(graph, mine, backend=None):
    backend = backend or BACKEND
    if backend == "numba":
        return reach_matrix_numba(graph, mine)
    return reach_matrix_numpy(graph, mine)


def attractor_strategy(graph, rank, mine):
    """Lowest-index successor of minimal rank for every ``mine`` vertex with rank > 0."""
    src, dst = graph.src, graph.dst
    strategy = np.full(graph.n, -1, dtype=np.int64)
    if src.size == 0:
        return strategy
    ok = mine[src] & (rank[src] > 0) & (rank[dst] == rank[src] - 1)
    s, d = src[ok], dst[ok]
    if s.size:
        firsts, idx = np.unique(s, return_index=True)
        strategy[firsts] = d[idx]
    return strategy
