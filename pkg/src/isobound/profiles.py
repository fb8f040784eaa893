"""Exact edge-isoperimetric profiles of small graphs.

i_k(G) = min { e(A, A^c) / |A| : A subset of V, |A| = k }, stored as an exact
rational.  Searches enumerate k-subsets in lexicographic order of the sorted
member tuple and keep the first minimizer found, so the reported witness is
always the lexicographically smallest one and repeated runs are identical.

Pure enumeration is the default up to EXHAUSTIVE_CAP vertices.  Above that a
branch-and-bound variant prunes partial sets whose crossing count minus the
best possible future cancellation (from residual degrees within the candidate
pool) cannot beat the incumbent; it visits subsets in the same order, so the
canonical witness is unchanged.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .graphs import CapExceededError, Graph, VertexSet

EXHAUSTIVE_CAP = 20
PRUNED_CAP = 30


@dataclass(frozen=True)
class ProfileEntry:
    k: int
    min_boundary: int
    ratio: Fraction  # i_k, exact
    witness: VertexSet


@dataclass(frozen=True)
class IsoProfile:
    graph_size: int
    entries: tuple[ProfileEntry, ...]  # entries[k - 1] is size k

    def entry(self, k: int) -> ProfileEntry:
        if not 1 <= k <= self.graph_size:
            raise ValueError(f"size {k} outside 1..{self.graph_size}")
        return self.entries[k - 1]

    def boundary(self, k: int) -> int:
        return self.entry(k).min_boundary

    def ratio(self, k: int) -> Fraction:
        return self.entry(k).ratio

    def to_csv(self) -> str:
        lines = ["k,min_boundary,i_k_num,i_k_den,witness"]
        for e in self.entries:
            lines.append(
                f"{e.k},{e.min_boundary},{e.ratio.numerator},{e.ratio.denominator},"
                f"{e.witness.to_hex()}"
            )
        return "\n".join(lines) + "\n"


def _check_cap(m: int, prune: bool | None, max_vertices: int | None) -> bool:
    """Resolve the prune flag and enforce the search cap.  Returns prune."""
    if prune is None:
        prune = m > EXHAUSTIVE_CAP
    if max_vertices is None:
        max_vertices = PRUNED_CAP if prune else EXHAUSTIVE_CAP
    if m > max_vertices:
        raise CapExceededError(
            f"graph has {m} vertices but the search cap is {max_vertices}"
            f" (pass max_vertices to override)"
        )
    return prune


def _search(g: Graph, k: int, prune: bool) -> tuple[int, int]:
    """(min boundary, witness mask) over k-subsets, lexicographic DFS."""
    m = g.vertex_count
    if k == m:
        return 0, (1 << m) - 1
    adj = g.adjacency_masks
    deg = g.degrees
    best_val = inf
    best_mask = 0
    # pool_masks[v] = vertices v..m-1, the candidates after picking up to v-1
    pool_masks = [((1 << m) - 1) ^ ((1 << v) - 1) for v in range(m + 1)]

    def future_floor(mask: int, lo: int, need: int) -> float:
        # Sound lower bound on the boundary change of any completion: each
        # candidate u can cancel at most its edges into mask plus its edges
        # into the pool (the latter double-counted across picks, hence once
        # per endpoint here).
        pool = pool_masks[lo]
        weights = []
        while pool:
            low = pool & -pool
            u = low.bit_length() - 1
            pool ^= low
            w = deg[u] - 2 * (adj[u] & mask).bit_count() - (adj[u] & pool_masks[lo]).bit_count()
            weights.append(w)
        weights.sort()
        return sum(weights[:need])

    def extend(lo: int, mask: int, cross: int, need: int) -> None:
        nonlocal best_val, best_mask
        for v in range(lo, m - need + 1):
            delta = deg[v] - 2 * (adj[v] & mask).bit_count()
            new_cross = cross + delta
            new_mask = mask | (1 << v)
            if need == 1:
                if new_cross < best_val:
                    best_val = new_cross
                    best_mask = new_mask
            else:
                if prune and new_cross + future_floor(new_mask, v + 1, need - 1) >= best_val:
                    continue
                extend(v + 1, new_mask, new_cross, need - 1)

    extend(0, 0, 0, k)
    return int(best_val), best_mask


def min_boundary(
    g: Graph,
    k: int,
    *,
    prune: bool | None = None,
    max_vertices: int | None = None,
) -> tuple[int, VertexSet]:
    """Exact minimum edge boundary over all k-subsets, with canonical witness."""
    m = g.vertex_count
    if not 1 <= k <= m:
        raise ValueError(f"size {k} outside 1..{m}")
    use_prune = _check_cap(m, prune, max_vertices)
    value, mask = _search(g, k, use_prune)
    return value, VertexSet(mask, k)


def profile_bruteforce(
    g: Graph,
    *,
    prune: bool | None = None,
    max_vertices: int | None = None,
    threads: int = 1,
) -> IsoProfile:
    """Full profile k = 1..m; each size is an independent search."""
    m = g.vertex_count
    use_prune = _check_cap(m, prune, max_vertices)

    def solve(k: int) -> ProfileEntry:
        value, mask = _search(g, k, use_prune)
        return ProfileEntry(k, value, Fraction(value, k), VertexSet(mask, k))

    ks = range(1, m + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = tuple(pool.map(solve, ks))
    else:
        entries = tuple(solve(k) for k in ks)
    return IsoProfile(m, entries)


def profile_closed_form(family: str, m: int) -> IsoProfile:
    """Known families without search: i_k(K_m) = m - k, i_k(P_m) = 1/k,
    i_k(C_m) = 2/k (all for k < m; i_m = 0).  Witnesses are prefixes, which
    are also the lexicographically smallest minimizers."""
    entries = []
    for k in range(1, m + 1):
        if family == "complete":
            if m < 1:
                raise ValueError(f"complete graph needs m >= 1, got {m}")
            boundary = k * (m - k)
        elif family == "path":
            if m < 1:
                raise ValueError(f"path needs m >= 1, got {m}")
            boundary = 1 if k < m else 0
        elif family == "cycle":
            if m < 3:
                raise ValueError(f"cycle needs m >= 3, got {m}")
            boundary = 2 if k < m else 0
        else:
            raise ValueError(f"no closed-form profile for family {family!r}")
        witness = VertexSet((1 << k) - 1, k)
        entries.append(ProfileEntry(k, boundary, Fraction(boundary, k), witness))
    return IsoProfile(m, tuple(entries))
