"""Deterministic generators for the named graph families plus seeded random
instances.  Vertex labeling of every construction is canonical breadth-first;
random generation uses the Mersenne Twister (python stdlib ``random.Random``)
with an explicit integer seed, so fixtures are reproducible.
"""

from __future__ import annotations

import random

from .errors import InfeasibleDensityError, OutOfRangeError
from .graph import Graph, RootedTree


def make_complete_ternary(height):
    """Complete ternary tree of the given height, BFS-labeled from the root."""
    if height < 0:
        raise OutOfRangeError("height must be >= 0")
    n = (3 ** (height + 1) - 1) // 2
    edges = []
    for v in range(1, n):
        edges.append(((v - 1) // 3, v))
    return RootedTree(Graph(n, edges), 0)


def make_T_ell(ell, max_vertices=10**6):
    """Complete ternary tree of height ell with every leaf turned into the
    middle vertex of a 5-vertex path; n = 4*3^ell + sum_{i<=ell} 3^i."""
    if ell < 1:
        raise OutOfRangeError("ell must be >= 1")
    core = (3 ** (ell + 1) - 1) // 2
    n = core + 4 * 3**ell
    if n > max_vertices:
        raise OutOfRangeError(f"n={n} exceeds budget {max_vertices}")
    edges = [((v - 1) // 3, v) for v in range(1, core)]
    leaves = range(core - 3**ell, core)
    nxt = core
    for leaf in leaves:
        # two fresh 2-paths hanging off the leaf: a-b-leaf-c-d
        edges.append((leaf, nxt))
        edges.append((nxt, nxt + 1))
        edges.append((leaf, nxt + 2))
        edges.append((nxt + 2, nxt + 3))
        nxt += 4
    return RootedTree(Graph(n, edges), 0)


def make_binary_clique_graph(h1, h2, max_vertices=2**15):
    """Complete binary tree of height h1+h2 whose depth-h1 descendant
    subtrees are completed into cliques.

    Heap labeling: children of v are 2v+1 and 2v+2.
    """
    if h1 < 1 or h2 < 0:
        raise OutOfRangeError("need h1 >= 1 and h2 >= 0")
    n = 2 ** (h1 + h2 + 1) - 1
    if n > max_vertices:
        raise OutOfRangeError(f"n={n} exceeds budget {max_vertices}")
    edges = set()
    for v in range(1, 2 ** (h1 + 1) - 1):
        edges.add(((v - 1) // 2, v))
    first = 2**h1 - 1
    for root in range(first, 2 * first + 1):
        sub = [root]
        i = 0
        while i < len(sub):
            v = sub[i]
            i += 1
            for c in (2 * v + 1, 2 * v + 2):
                if c < n:
                    sub.append(c)
        for i, u in enumerate(sub):
            for w in sub[i + 1 :]:
                edges.add((min(u, w), max(u, w)))
    return Graph(n, sorted(edges))


def make_nonmonotone_example():
    """The 31-vertex complete binary tree with 8 extra edges joining
    neighboring leaves (0-indexed), plus the distinguished edge whose removal
    increases the 2-partition profile."""
    edges = []
    for i in range(1, 16):
        edges.append((i - 1, 2 * i - 1))
        edges.append((i - 1, 2 * i))
    for i in range(16, 31, 2):
        edges.append((i - 1, i))
    return Graph(31, edges), (29, 30)


def random_tree(n, seed=0):
    """Random labeled tree: each vertex i >= 1 picks a uniform parent < i."""
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return RootedTree(Graph(n, edges), 0)


def random_connected_graph(n, m, seed=0):
    """Random parent-array tree plus m-(n-1) distinct random non-tree edges."""
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise InfeasibleDensityError(f"m={m} infeasible for n={n}")
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    present = {(min(u, v), max(u, v)) for u, v in edges}
    candidates = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in present
    ]
    extra = rng.sample(candidates, m - (n - 1))
    return Graph(n, edges + extra)
