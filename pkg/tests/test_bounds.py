import itertools
import math
import random

import pytest

from partctl import (
    Graph,
    bits,
    cmc,
    connected_cut_bound,
    count_partitions,
    dense_core,
    edge_partition_profile,
    long_path,
    mask_of,
    min_degree,
    ordered_vertex_partitions,
    packing_partitions,
    path_cut_partitions,
    random_connected_graph,
    random_tree,
    spanning_tree_packing,
    validate_edge_partition,
    validate_vertex_partition,
    vertex_partition_profile,
)
from partctl.errors import PackingInfeasibleError
from partctl.splits import profile_of


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(q):
    return Graph(q + 1, [(0, i) for i in range(1, q + 1)])


# ------------------------------------------------------------- dense core


def test_dense_core_complete():
    core = dense_core(complete(5))
    assert core.vertices == mask_of(range(5))
    assert core.min_degree == 4


def test_dense_core_path():
    core = dense_core(path(6))
    assert core.vertices == mask_of(range(6))  # threshold < 1 removes nothing


def test_dense_core_k4_with_pendant():
    G = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    core = dense_core(G)
    assert sorted(bits(core.vertices)) == [0, 1, 2, 3]
    assert core.peel_trace == [4]
    assert core.min_degree == 3


def test_dense_core_guarantee_random():
    rng = random.Random(12)
    for i in range(40):
        n = rng.randint(3, 40)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        core = dense_core(G)
        # min degree of the core is at least half the average degree
        assert 2 * core.min_degree >= G.average_degree() - 1e-9


# -------------------------------------------------------------- long path


def test_long_path_cycle_and_complete():
    assert len(long_path(cycle(7))) == 7
    assert len(long_path(complete(4))) == 4


def test_long_path_star():
    p = long_path(star(4))
    assert len(p) == 3 >= min_degree(star(4)) + 1


def test_long_path_lower_bound_random():
    rng = random.Random(13)
    for i in range(30):
        n = rng.randint(2, 30)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        p = long_path(G)
        assert len(p) >= min_degree(G) + 1
        assert len(set(p)) == len(p)
        for u, v in zip(p, p[1:]):
            assert (G.neighbor_mask(u) >> v) & 1


# --------------------------------------------------------------- path cut


def test_path_cut_c6():
    parts, rep = path_cut_partitions(cycle(6))
    for p in parts:
        assert validate_edge_partition(cycle(6), p, 2)
    assert rep.distinct_pairs >= -(-rep.m_cut // 2)


def test_path_cut_k6():
    parts, rep = path_cut_partitions(complete(6))
    assert rep.delta_core == 5
    assert rep.prefix_len == 3
    assert rep.m_cut >= 6  # ceil(delta^2/4)
    assert rep.distinct_pairs >= 3


def test_path_cut_tree_degenerate():
    parts, rep = path_cut_partitions(path(6))
    assert len(parts) >= 1
    for p in parts:
        assert validate_edge_partition(path(6), p, 2)


def test_path_cut_profiles_subset_of_exact():
    rng = random.Random(14)
    for i in range(20):
        n = rng.randint(4, 9)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        parts, rep = path_cut_partitions(G)
        assert rep.emitted == len(parts)
        emitted = {profile_of(p) for p in parts}
        assert emitted <= edge_partition_profile(G, 2, max_edges=45).profile


# ---------------------------------------------------------------- packing


def nash_williams_feasible(G, k):
    """Reference: k spanning trees exist iff every vertex partition P has at
    least k*(|P|-1) crossing edges."""

    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in set_partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
            yield [[first]] + sub

    if G.m < k * (G.n - 1):
        return False
    for blocks in set_partitions(list(range(G.n))):
        if len(blocks) == 1:
            continue
        where = {}
        for bi, b in enumerate(blocks):
            for v in b:
                where[v] = bi
        crossing = sum(1 for u, v in G.edges if where[u] != where[v])
        if crossing < k * (len(blocks) - 1):
            return False
    return True


def test_packing_k1_is_spanning_tree():
    G = cycle(5)
    packing = spanning_tree_packing(G, 1)
    assert packing.trees[0].bit_count() == 4
    assert packing.leftover.bit_count() == 1


def test_packing_k4():
    packing = spanning_tree_packing(complete(4), 2)
    assert packing.leftover == 0
    assert all(t.bit_count() == 3 for t in packing.trees)


def test_packing_cycle_infeasible():
    for n in (3, 5, 8):
        with pytest.raises(PackingInfeasibleError) as exc:
            spanning_tree_packing(cycle(n), 2)
        assert len(exc.value.forests) == 2


def test_packing_matches_nash_williams():
    rng = random.Random(15)
    for i in range(25):
        n = rng.randint(3, 6)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        for k in (1, 2, 3):
            want = nash_williams_feasible(G, k)
            try:
                packing = spanning_tree_packing(G, k)
                got = True
                seen = 0
                for t in packing.trees:
                    assert seen & t == 0
                    seen |= t
            except PackingInfeasibleError:
                got = False
            assert got == want, (i, k)


def test_packing_partitions_k5():
    parts, rep = packing_partitions(complete(5), 2)
    assert rep.leftover == 2
    profs = {profile_of(p) for p in parts}
    assert profs == {(6, 4), (5, 5)}
    assert len(parts) == count_partitions(2, 2, allow_zero=True) == 2
    exact = edge_partition_profile(complete(5), 2).profile
    assert profs <= exact


def test_packing_partitions_k4():
    parts, rep = packing_partitions(complete(4), 2)
    assert rep.leftover == 0
    assert {profile_of(p) for p in parts} == {(3, 3)}


def test_packing_partitions_counts():
    rng = random.Random(16)
    done = 0
    i = 0
    while done < 8 and i < 200:
        i += 1
        n = rng.randint(4, 8)
        m = rng.randint(2 * (n - 1), n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        try:
            parts, rep = packing_partitions(G, 2)
        except PackingInfeasibleError:
            continue
        done += 1
        assert len(parts) == count_partitions(rep.leftover, 2, allow_zero=True)
        for p in parts:
            assert validate_edge_partition(G, p, 2)
    assert done == 8


# ------------------------------------------------------------- cut bounds


def test_cut_bound_k6():
    w = connected_cut_bound(complete(6), 2)
    assert sorted(p.bit_count() for p in w.parts) == [3, 3]
    assert w.cut_size == 9


def test_cut_bound_tree():
    for i in range(5):
        T = random_tree(8, seed=i)
        w = connected_cut_bound(T.graph, 2)
        assert w.cut_size == 1


def test_cut_bound_below_exact():
    rng = random.Random(17)
    for i in range(25):
        n = rng.randint(4, 9)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        for r in (2, 3):
            w = connected_cut_bound(G, r)
            assert validate_vertex_partition(G, w.parts, r)
            assert w.cut_size <= cmc(G, r).cut_size


def test_cut_bound_k5_r3():
    w = connected_cut_bound(complete(5), 3)
    assert validate_vertex_partition(complete(5), w.parts, 3)
    assert w.cut_size <= cmc(complete(5), 3).cut_size


# --------------------------------------------------- ordered vertex parts


def test_ordered_k6():
    parts, rep = ordered_vertex_partitions(complete(6), 2)
    assert rep.attempted == rep.succeeded == 5  # every prefix works
    vecs = [tuple(p.bit_count() for p in ps) for ps in parts]
    assert len(set(vecs)) == len(vecs)


def test_ordered_c8():
    G = cycle(8)
    parts, rep = ordered_vertex_partitions(G, 2)
    for ps in parts:
        assert validate_vertex_partition(G, ps, 2)
    assert -(-rep.succeeded // 2) <= vertex_partition_profile(G, 2).value == 4


def test_ordered_p5_k3():
    G = path(5)
    parts, rep = ordered_vertex_partitions(G, 3)
    assert rep.succeeded == len(parts)
    for ps in parts:
        assert validate_vertex_partition(G, ps, 3)


def test_ordered_pi_bound_random():
    rng = random.Random(18)
    for i in range(20):
        n = rng.randint(4, 10)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        G = random_connected_graph(n, m, seed=i)
        for k in (2, 3):
            parts, rep = ordered_vertex_partitions(G, k)
            vecs = [tuple(p.bit_count() for p in ps) for ps in parts]
            assert len(set(vecs)) == len(vecs) == rep.succeeded
            lower = -(-rep.succeeded // math.factorial(k))
            assert lower <= vertex_partition_profile(G, k).value
