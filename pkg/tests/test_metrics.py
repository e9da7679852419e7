import math
import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from cbcd.graph import Graph, Partition
from cbcd.metrics import (ContingencyTable as CT, DegenerateTableError, community_cos, community_F,
                          community_Phi, confidence_scores, contingency, cos_or_zero, delta_add,
                          delta_merge_W, delta_remove, modularity_Q, outside_contingency, partition_gamma,
                          phi, phi_or_zero, ps)
from conftest import graph_from_text, random_blocks, random_graph
from oracles import F_vec, Phi_vec, bridged_cliques, clique, modularity_nx, phi_vec, ps_vec


def two_triangles():
    return Graph(6, clique(3) + clique(3, 3))


# ------------------------------------------------------------------ contingency

class TestContingency:
    def test_fig2(self, fig2):
        g, members = fig2
        p = Partition.from_blocks(g, [members, [u for u in range(g.n) if u not in members]])
        assert contingency(g, p, g.index_of(5)) == (3, 4, 5, 6)

    def test_k3_and_path(self):
        g = graph_from_text("0 1\n1 2\n2 0")
        p = Partition.from_blocks(g, [[0, 1, 2]])
        assert all(contingency(g, p, u) == (2, 2, 2, 2) for u in range(3))
        path = graph_from_text("0 1\n1 2\n")
        q = Partition.from_blocks(path, [[0, 1], [2]])
        assert contingency(path, q, 1) == (1, 1, 2, 2)

    def test_unassigned(self):
        g = graph_from_text("0 1\n")
        with pytest.raises(ValueError):
            contingency(g, Partition(g), 0)

    def test_outside_uses_whole_community(self):
        path = graph_from_text("0 1\n1 2\n")
        q = Partition.from_blocks(path, [[0, 1], [2]])
        assert outside_contingency(path, q, 2, q.assignment[0]) == (1, 2, 1, 2)
        with pytest.raises(ValueError):
            outside_contingency(path, q, 0, q.assignment[0])

    def test_cells(self):
        ct = CT(3, 4, 5, 6)
        assert ct.cells == (3, 1, 2, 0) and ct.is_valid()
        assert not CT(2, 1, 1, 5).is_valid()
        assert not CT(0, 3, 3, 5).is_valid()


# ------------------------------------------------------------------ node measures

class TestNodeMeasures:
    def test_ps_examples(self):
        assert ps(CT(1, 2, 3, 6)) == 0
        assert ps(CT(3, 4, 5, 6)) == pytest.approx(-1 / 18, abs=1e-15)
        assert ps(CT(4, 4, 4, 20)) == pytest.approx(0.16, abs=1e-15)
        with pytest.raises(DegenerateTableError):
            ps(CT(0, 0, 0, 0))

    def test_phi_examples(self):
        assert phi(CT(4, 4, 4, 20)) == pytest.approx(1.0, abs=1e-15)
        assert phi(CT(1, 2, 3, 6)) == 0
        assert phi(CT(3, 4, 5, 6)) == pytest.approx(-2 / math.sqrt(40), abs=1e-15)
        assert round(phi(CT(3, 4, 5, 6)), 6) == -0.316228

    @pytest.mark.parametrize("ct", [CT(0, 0, 3, 6), CT(3, 6, 3, 6), CT(0, 2, 0, 6), CT(2, 2, 6, 6)])
    def test_phi_degenerate(self, ct):
        with pytest.raises(DegenerateTableError):
            phi(ct)
        assert phi_or_zero(*ct) == 0.0

    def test_fig2_against_vectors(self, fig2):
        g, members = fig2
        u = g.index_of(5)
        assert ps_vec(g, members, u) == pytest.approx(-1 / 18, abs=1e-12)
        assert phi_vec(g, members, u) == pytest.approx(-2 / math.sqrt(40), abs=1e-12)

    def test_confidence(self):
        assert confidence_scores(CT(3, 4, 5, 6)) == (0.6, 0.75)
        assert confidence_scores(CT(5, 5, 5, 9)) == (1.0, 1.0)
        assert confidence_scores(CT(0, 3, 2, 9)) == (0.0, 0.0)
        with pytest.raises(DegenerateTableError):
            confidence_scores(CT(0, 0, 2, 9))
        with pytest.raises(DegenerateTableError):
            confidence_scores(CT(0, 2, 0, 9))

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 60).flatmap(lambda N: st.tuples(
        st.just(N), st.integers(1, N - 1), st.integers(1, N - 1), st.integers(0, N))))
    def test_phi_range_and_vector_identity(self, t):
        N, e, d, w = t
        assume(w <= min(e, d) and N - e - d + w >= 0)
        v = phi(CT(w, e, d, N))
        assert -1 - 1e-12 <= v <= 1 + 1e-12
        # same value as Pearson correlation of explicit 0/1 vectors
        nbr = [1] * w + [1] * (d - w) + [0] * (N - d)
        com = [1] * w + [0] * (d - w) + [1] * (e - w) + [0] * (N - d - e + w)
        mean_n, mean_c = d / N, e / N
        cov = sum(a * b for a, b in zip(nbr, com)) / N - mean_n * mean_c
        assert ps(CT(w, e, d, N)) == pytest.approx(cov, abs=1e-12)
        sd = math.sqrt(mean_n * (1 - mean_n) * mean_c * (1 - mean_c))
        assert v == pytest.approx(cov / sd, abs=1e-9)

    def test_monotonicity_small_exhaustive(self):
        for N in range(2, 21):
            for e in range(1, N):
                for d in range(1, N):
                    for w in range(1, min(e, d) + 1):
                        if N - e - d + w < 0:
                            continue
                        a = CT(w, e, d, N)
                        if w + 1 <= min(e, d):
                            b = CT(w + 1, e, d, N)
                            assert ps(b) > ps(a) and phi(b) > phi(a)
                        if e + 1 < N and N - e - 1 - d + w >= 0:
                            b = CT(w, e + 1, d, N)
                            assert ps(b) < ps(a) and phi(b) < phi(a)
                        if d + 1 < N and N - e - d - 1 + w >= 0:
                            b = CT(w, e, d + 1, N)
                            assert ps(b) < ps(a) and phi(b) < phi(a)

    def test_cosine_limit(self):
        diffs = [abs(phi(CT(3, 4, 5, N)) - 3 / math.sqrt(20)) for N in (10**3, 10**4, 10**5, 10**6)]
        assert all(a > b for a, b in zip(diffs, diffs[1:]))
        assert diffs[-1] < 1e-4
        # the gap shrinks roughly like 1/N
        assert diffs[-1] * 10**6 < 10 * diffs[0] * 10**3


# ------------------------------------------------------------------ community level

class TestCommunity:
    def test_singleton_and_k3(self):
        g = graph_from_text("0 1\n1 2\n2 0")
        p = Partition.from_blocks(g, [[0], [1], [2]])
        assert all(community_F(g, p, c) == 0 for c in p.communities)
        assert partition_gamma(g, p) == 0
        assert all(community_Phi(g, p, c) == 0 and community_cos(g, p, c) == 0 for c in p.communities)
        q = Partition.from_blocks(g, [[0, 1, 2]])
        assert community_F(g, q, 0) == pytest.approx(0.0, abs=1e-15)

    def test_two_triangles(self):
        g = two_triangles()
        p = Partition.from_blocks(g, [[0, 1, 2], [3, 4, 5]])
        f = community_F(g, p, 0)
        assert f == pytest.approx(2 * 3 / 5 - 2 * 6 / 25, abs=1e-15)
        assert partition_gamma(g, p) == pytest.approx(2 * f, abs=1e-15)
        assert modularity_Q(g, p) == pytest.approx(0.5, abs=1e-15)

    def test_modularity_examples(self):
        g = graph_from_text("0 1\n1 2\n2 0")
        assert modularity_Q(g, Partition.from_blocks(g, [[0, 1, 2]])) == pytest.approx(0.0, abs=1e-15)
        assert modularity_Q(g, Partition.from_blocks(g, [[0], [1], [2]])) == pytest.approx(-1 / 3, abs=1e-15)

    def test_modularity_without_edges(self):
        g = Graph(2, [])
        with pytest.raises(ValueError):
            modularity_Q(g, Partition.from_blocks(g, [[0, 1]]))

    def test_perfect_members_in_k5(self):
        # K5 where nodes 0 and 1 have one outside neighbour each
        g = Graph(8, clique(5) + [(0, 5), (1, 6), (5, 6), (6, 7)])
        p = Partition.from_blocks(g, [[0, 1, 2, 3, 4], [5, 6, 7]])
        cid = p.assignment[0]
        for u in (2, 3, 4):
            assert phi(contingency(g, p, u)) == pytest.approx(1.0, abs=1e-12)
        # cosine: three perfect members plus two nodes with omega=4, d=5, eps=4
        assert community_cos(g, p, cid) == pytest.approx(3 + 2 * 4 / math.sqrt(20), abs=1e-12)

    def test_isolated_clique_cosine(self):
        g = Graph(9, clique(4) + clique(5, 4))
        p = Partition.from_blocks(g, [[0, 1, 2, 3], [4, 5, 6, 7, 8]])
        assert community_cos(g, p, p.assignment[4]) == pytest.approx(5.0, abs=1e-12)

    def test_against_vector_oracles(self):
        rng = random.Random(5)
        for _ in range(100):
            g = random_graph(rng, 30)
            blocks = random_blocks(rng, g.n)
            p = Partition.from_blocks(g, blocks)
            gamma = 0.0
            for b in blocks:
                cid = p.assignment[b[0]]
                f = community_F(g, p, cid)
                assert f == pytest.approx(F_vec(g, b), abs=1e-12)
                assert f == pytest.approx(sum(ps(contingency(g, p, u)) for u in b), abs=1e-12)
                assert community_Phi(g, p, cid) == pytest.approx(Phi_vec(g, b), abs=1e-9)
                gamma += f
            assert partition_gamma(g, p) == pytest.approx(gamma, abs=1e-12)
            if g.m:
                assert modularity_Q(g, p) == pytest.approx(modularity_nx(g, blocks), abs=1e-12)

    def test_karate_gamma_bruteforce(self, karate):
        g, truth = karate
        p = Partition.from_blocks(g, truth.blocks())
        brute = sum(ps_vec(g, b, u) for b in truth.blocks() for u in b)
        assert partition_gamma(g, p) == pytest.approx(brute, abs=1e-12)

    def test_cos_minus_phi_shrinks_with_padding(self):
        # same K5 community, more and more isolated filler nodes
        gaps = []
        for pad in (10, 100, 1000):
            g = Graph(5 + 2 + pad, clique(5) + [(0, 5), (1, 6)])
            p = Partition.from_blocks(g, [[0, 1, 2, 3, 4], [5, 6] + list(range(7, 7 + pad))])
            gaps.append(abs(community_cos(g, p, 0) - community_Phi(g, p, 0)))
        assert gaps[0] > gaps[1] > gaps[2]


# ------------------------------------------------------------------ deltas

def F_of(g, members):
    s = set(members)
    if not s:
        return 0.0
    l_s = sum(1 for u in s for v in g.adj[u] if v in s) // 2
    return 2 * l_s / (g.n - 1) - (len(s) - 1) * sum(g.degree[u] for u in s) / (g.n - 1) ** 2


class TestDeltas:
    def test_add_without_links(self):
        g = Graph(6, clique(3) + [(3, 4), (4, 5)])
        p = Partition.from_blocks(g, [[0, 1, 2], [3, 4, 5]])
        q = Partition.from_blocks(g, [[0, 1, 2], [3, 5]])
        val = delta_add(g, q, 4, q.assignment[0])
        assert val == pytest.approx(-(3 * 2 + 6) / 25, abs=1e-15) and val < 0
        with pytest.raises(ValueError):
            delta_add(g, p, 0, p.assignment[0])

    def test_add_to_empty_community(self):
        g = Graph(3, clique(3))
        p = Partition(g)
        cid = p.new_community()
        assert delta_add(g, p, 0, cid) == 0.0

    def test_remove_singleton(self):
        g = Graph(3, clique(3))
        p = Partition.from_blocks(g, [[0], [1, 2]])
        assert delta_remove(g, p, 0) == 0.0

    def test_random_identities(self):
        rng = random.Random(7)
        for _ in range(100):
            g = random_graph(rng, 30)
            blocks = random_blocks(rng, g.n)
            p = Partition.from_blocks(g, blocks)
            u = rng.randrange(g.n)
            own = p.assignment[u]
            members = sorted(p.communities[own].members)
            others = [c for c in p.communities if c != own]
            if others:
                c = rng.choice(others)
                target = sorted(p.communities[c].members)
                expect = F_of(g, target + [u]) - F_of(g, target)
                assert delta_add(g, p, u, c) == pytest.approx(expect, abs=1e-12)
            rest = [v for v in members if v != u]
            m = delta_remove(g, p, u)
            assert m == pytest.approx(F_of(g, members) - F_of(g, rest), abs=1e-12)
            q = p.copy()
            q.remove(u)
            if rest:
                assert delta_add(g, q, u, own) == pytest.approx(m, abs=1e-12)

    def test_merge_examples(self):
        g, blocks = bridged_cliques(5)
        p = Partition.from_blocks(g, blocks)
        assert delta_merge_W(g, p, 0, 1, "cos") == pytest.approx(-2.894427, abs=1e-6)
        # without the links to the rest of the graph
        h = Graph(10, clique(5) + clique(5, 5) + [(0, 5)])
        q = Partition.from_blocks(h, [list(range(5)), list(range(5, 10))])
        assert delta_merge_W(h, q, 0, 1, "cos") == pytest.approx(-2.964809, abs=1e-6)
        # K6 beside a triangle; alone it would make every table degenerate (d = N)
        k6 = Graph(9, clique(6) + clique(3, 6))
        halves = Partition.from_blocks(k6, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
        assert delta_merge_W(k6, halves, 0, 1) > 0
        with pytest.raises(ValueError):
            delta_merge_W(k6, halves, 0, 0)
        with pytest.raises(ValueError):
            delta_merge_W(k6, halves, 0, 1, "lift")

    def test_merge_disconnected_negative(self):
        rng = random.Random(9)
        for _ in range(30):
            a, b = rng.randint(3, 6), rng.randint(3, 6)
            g = Graph(a + b + 3, clique(a) + clique(b, a) + [(a + b, a + b + 1), (a + b + 1, a + b + 2)])
            p = Partition.from_blocks(g, [list(range(a)), list(range(a, a + b)), [a + b, a + b + 1, a + b + 2]])
            assert delta_merge_W(g, p, 0, 1) < 0

    def test_merge_against_oracle(self):
        rng = random.Random(13)
        for _ in range(100):
            g = random_graph(rng, 30)
            blocks = random_blocks(rng, g.n)
            if len(blocks) < 2:
                continue
            p = Partition.from_blocks(g, blocks)
            i, j = rng.sample(sorted(p.communities), 2)
            si = sorted(p.communities[i].members)
            sj = sorted(p.communities[j].members)
            expect = Phi_vec(g, si + sj) - Phi_vec(g, si) - Phi_vec(g, sj)
            assert delta_merge_W(g, p, i, j) == pytest.approx(expect, abs=1e-9)

    def test_bridged_cliques_lose_phi_when_joined(self):
        for size in range(5, 11):
            g, blocks = bridged_cliques(size)
            assert g.n == 4 * size + 8
            p = Partition.from_blocks(g, blocks)
            assert community_Phi(g, p, 0) + community_Phi(g, p, 1) > Phi_vec(g, blocks[0] + blocks[1])


def test_cos_or_zero_degenerate():
    assert cos_or_zero(0, 0, 3) == 0.0 and cos_or_zero(0, 3, 0) == 0.0
