"""Nested split sequences of trees and the edge-partition families built from
them: the 2-partition family over a spanning tree, the recursive k-partition
family, the Case I/II tree construction, and a polynomial exact solver for
2-edge-partition profiles of trees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import t_value
from .errors import DisconnectedError, TooSmallError
from .graph import (
    Graph,
    RootedTree,
    bits,
    components,
    is_connected_edge_set,
    spanning_tree,
)


@dataclass
class SplitSequence:
    """Sequence of (A_i, B_i, v_i) vertex-bitmask triples over a rooted tree.

    Invariants: A_i and B_i intersect exactly in {v_i}, cover V, both induce
    connected subtrees, A strictly shrinks while B strictly grows, every
    earlier pivot lies in all later B sets, and the length is at least
    t(n) + 1.
    """

    tree: RootedTree
    items: list  # [(A_mask, B_mask, v), ...]

    def __len__(self):
        return len(self.items)

    def check(self):
        """Assert all four invariants; raises AssertionError on violation."""
        T = self.tree
        G = T.graph
        full = G.full_vertex_mask()
        items = self.items
        assert items, "empty split sequence"
        assert items[0][2] == T.root
        for i, (A, B, v) in enumerate(items):
            assert A & B == 1 << v
            assert A | B == full
            assert _connected_in(G, A) and _connected_in(G, B)
            for _, Bj, _ in items[i + 1 :]:
                assert (Bj >> v) & 1, "earlier pivot missing from later B"
        for (A1, B1, _), (A2, B2, _) in zip(items, items[1:]):
            assert A2 & ~A1 == 0 and A1 != A2, "A sets not strictly decreasing"
            assert B1 & ~B2 == 0 and B1 != B2, "B sets not strictly increasing"
        assert len(items) >= t_value(G.n) + 1


def _connected_in(G, mask):
    if mask == 0:
        return False
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = G.neighbor_mask(start) & mask
    while frontier & ~seen:
        seen |= frontier
        nf = 0
        for v in bits(frontier):
            nf |= G.neighbor_mask(v)
        frontier = nf & mask & ~seen
    return seen & mask == mask


def nested_split_sequence(T):
    """The nested (A_i, B_i, v_i) sequence of a rooted tree.

    At each level the components of the current subtree minus its root are
    peeled off one by one (largest component last, ties by smallest contained
    vertex id); the recursion continues inside the largest component, rooted
    at the root's neighbor there.
    """
    G = T.graph
    full = G.full_vertex_mask()

    def rec(mask, v):
        vbit = 1 << v
        if mask == vbit:
            return [(mask, mask, v)]
        comps = components(G, removed=(full & ~mask) | vbit)
        comps.sort(key=lambda c: (-c.bit_count(), (c & -c).bit_length()))
        largest = comps[0]
        rest = sorted(comps[1:], key=lambda c: (c.bit_count(), (c & -c).bit_length()))
        seq = []
        a, b = mask, vbit
        for c in rest + [largest]:
            seq.append((a, b, v))
            a &= ~c
            b |= c
        vp = (G.neighbor_mask(v) & largest).bit_length() - 1
        ext = mask & ~largest
        for A, B, u in rec(largest, vp):
            seq.append((A, B | ext, u))
        return seq

    return SplitSequence(T, rec(full, T.root))


def validate_edge_partition(G, parts, k=None):
    """True iff parts are nonempty, disjoint, cover E(G), and each is a
    connected edge set."""
    if k is not None and len(parts) != k:
        return False
    union = 0
    for p in parts:
        if p == 0 or (union & p):
            return False
        union |= p
        if not is_connected_edge_set(G, p):
            return False
    return union == G.full_edge_mask()


def profile_of(parts):
    """Canonical (sorted descending) size tuple of a partition."""
    return tuple(sorted((p.bit_count() for p in parts), reverse=True))


def two_partitions_from_splits(G, T):
    """Connected 2-edge-partitions of G harvested from the split sequence of
    a spanning tree T: part 2 is the edges inside B_i, part 1 everything else.
    Degenerate items (an empty side) are filtered; |part 2| is strictly
    increasing across the emitted list."""
    if T.graph.n != G.n:
        raise DisconnectedError("spanning tree does not match graph")
    seq = nested_split_sequence(T)
    full = G.full_edge_mask()
    out = []
    for _, B, _ in seq.items:
        e2 = G.edge_set_of_vertices(B)
        e1 = full & ~e2
        if e1 and e2:
            out.append([e1, e2])
    return out


def _subtree_sizes(T):
    n = T.graph.n
    order = []
    seen = 1 << T.root
    stack = [T.root]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in bits(T.graph.neighbor_mask(v) & ~seen):
            seen |= 1 << u
            stack.append(u)
    sz = [1] * n
    for v in reversed(order):
        if T.parent[v] >= 0:
            sz[T.parent[v]] += sz[v]
    return sz, order


def centroid(T):
    """Vertex minimizing the largest component of T - v; ties by smallest id."""
    n = T.graph.n
    sz, _ = _subtree_sizes(T)
    best, best_v = n + 1, -1
    for v in range(n):
        worst = n - sz[v]
        for u in bits(T.graph.neighbor_mask(v)):
            if T.parent[u] == v:
                worst = max(worst, sz[u])
        if worst < best:
            best, best_v = worst, v
    return best_v


def _branch_components(T, v):
    """Components of T - v as vertex bitmasks, via subtree sizes."""
    return components(T.graph, removed=1 << v)


def recursive_k_partitions(G, k):
    """Connected k-edge-partitions with pairwise distinct ordered size tuples.

    k=2 is the split-sequence family over a BFS spanning tree.  For k > 2 the
    graph is split at a spanning-tree centroid into a chunk holding roughly a
    third to a half of the vertices; the split sequence runs inside the chunk
    and the construction recurses with k-1 parts on the complement side of
    every split.
    """
    if k < 2:
        raise TooSmallError("k must be >= 2")
    if G.m < k:
        raise TooSmallError(f"graph has {G.m} edges < k={k}")
    if k == 2:
        return two_partitions_from_splits(G, spanning_tree(G, 0))

    n = G.n
    T = spanning_tree(G, 0)
    v = centroid(T)
    comps = _branch_components(T, v)
    comps.sort(key=lambda c: (-c.bit_count(), (c & -c).bit_length()))
    vbit = 1 << v
    if len(comps) == 1:
        sel = comps[0]
    elif len(comps) == 2:
        sel = comps[1]  # the smaller one
    else:
        if 3 * comps[0].bit_count() >= n:
            sel = comps[0]
        else:
            sel, s = 0, 0
            for c in comps:
                sel |= c
                s += c.bit_count()
                if 3 * s >= n - 1:
                    break
            other = 0
            for c in comps:
                if not (c & sel):
                    other |= c
            # prefer the accumulated side; fall back to whichever fits n/2
            if 2 * (sel.bit_count() + 1) > n and 2 * (other.bit_count() + 1) <= n:
                sel = other
    a1 = sel | vbit

    subT, tvmap, _ = T.graph.induced(a1)
    local_root = tvmap.index(v)
    seq = nested_split_sequence(RootedTree(subT, local_root))
    full_e = G.full_edge_mask()
    full_v = G.full_vertex_mask()
    out = []
    for _, B_loc, _ in seq.items:
        B = full_v & ~a1
        for i in bits(B_loc):
            B |= 1 << tvmap[i]
        e2 = G.edge_set_of_vertices(B)
        e1 = full_e & ~e2
        if not e1 or e2.bit_count() < k - 1:
            continue
        sub, _, emap = G.induced(B)
        try:
            inner = recursive_k_partitions(sub, k - 1)
        except TooSmallError:
            continue
        for parts in inner:
            mapped = []
            for p in parts:
                pm = 0
                for j in bits(p):
                    pm |= 1 << emap[j]
                mapped.append(pm)
            out.append([e1] + mapped)
    return out


def tree_exact_P2(T):
    """Exact 2-edge-partition profile of a tree.

    Any connected 2-edge-partition of a tree splits the branches at a single
    shared vertex, so the achievable sizes are exactly the proper subset sums
    of branch edge counts, collected per vertex by bitset convolution.
    """
    if isinstance(T, Graph):
        T = RootedTree(T, 0)
    G = T.graph
    n, m = G.n, G.m
    if m == 0:
        return set()
    sz, _ = _subtree_sizes(T)
    children = [[] for _ in range(n)]
    for u in range(n):
        if T.parent[u] >= 0:
            children[T.parent[u]].append(u)
    profile = set()
    interior = (1 << (m + 1)) - 2  # bits 1..m-1 plus m; m masked off below
    for v in range(n):
        branches = [sz[c] for c in children[v]]
        if v != T.root:
            branches.append(n - sz[v])
        if len(branches) < 2:
            continue
        reach = 1
        for b in branches:
            reach |= reach << b
        for s in bits(reach & interior & ~(1 << m)):
            profile.add((max(s, m - s), min(s, m - s)))
    return profile


def tree_lower_bound_partitions(T):
    """Distinct-size connected 2-edge-partitions of a tree via the equal-split
    (Case I) or oriented-sink (Case II) construction; count >= t(n) - 2."""
    if isinstance(T, Graph):
        T = RootedTree(T, 0)
    G = T.graph
    n = G.n
    if n < 2:
        return []
    sz, _ = _subtree_sizes(T)

    # Case I: an edge whose removal splits the tree into equal halves
    half_vertex = -1
    if n % 2 == 0:
        for u in range(n):
            if T.parent[u] >= 0 and 2 * sz[u] == n:
                half_vertex = u
                break
    if half_vertex >= 0:
        sub_mask = _subtree_mask(T, half_vertex, sz)
        return _partitions_from_subtree(G, sub_mask, half_vertex)

    # Case II: orient edges toward the larger side; find the unique sink
    sink = -1
    for v in range(n):
        ok = True
        for u in bits(G.neighbor_mask(v)):
            side = sz[u] if T.parent[u] == v else n - sz[v]
            if 2 * side >= n:
                ok = False
                break
        if ok:
            sink = v
            break
    assert sink >= 0, "no sink found in Case II"
    comps = components(G, removed=1 << sink)
    comps.sort(key=lambda c: (-c.bit_count(), (c & -c).bit_length()))
    lo = (n - 1 + 2) // 3  # ceil((n-1)/3)
    if 3 * comps[0].bit_count() >= n - 1:
        tmask = comps[0] | (1 << sink)
    else:
        # group the largest components until they hold >= (n-1)/3 vertices;
        # whichever of the prefix/suffix sides stays at or below ceil(n/2)
        # becomes the chunk holding the split sequence
        pref, s = 0, 0
        for c in comps:
            pref |= c
            s += c.bit_count()
            if 3 * s >= n - 1:
                break
        if 2 * s < n:
            tmask = pref | (1 << sink)
        else:
            suff = 0
            for c in comps:
                if not (c & pref):
                    suff |= c
            tmask = suff | (1 << sink)
    assert 3 * tmask.bit_count() >= n - 1, "Case II chunk too small"
    return _partitions_from_subtree(G, tmask, sink)


def _subtree_mask(T, u, sz):
    mask = 1 << u
    stack = [u]
    while stack:
        v = stack.pop()
        for w in bits(T.graph.neighbor_mask(v)):
            if T.parent[w] == v and not (mask >> w) & 1:
                mask |= 1 << w
                stack.append(w)
    return mask


def _partitions_from_subtree(G, sub_mask, local_root):
    """Run the split sequence inside G[sub_mask] (a subtree of the tree G) and
    turn each split into a 2-edge-partition of the whole tree."""
    sub, vmap, _ = G.induced(sub_mask)
    seq = nested_split_sequence(RootedTree(sub, vmap.index(local_root)))
    full = G.full_edge_mask()
    out = []
    for A_loc, _, _ in seq.items:
        A = 0
        for i in bits(A_loc):
            A |= 1 << vmap[i]
        e1 = G.edge_set_of_vertices(A)
        e2 = full & ~e1
        if e1 and e2:
            out.append([e1, e2])
    return out
