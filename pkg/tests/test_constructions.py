import math
import random

import pytest

from hyperzero.constructions import (ConstructionSpec, InfeasibleError, bisect_root,
                                     build_random_hypergraph, build_random_linear_hypertree,
                                     build_regular_tree_truncation, build_samotij, build_star,
                                     samotij_negativity_probe, samotij_threshold,
                                     samotij_Z_closed_form, star_negativity_probe,
                                     star_normalized, star_threshold, star_Z_closed_form)
from hyperzero.exact import brute_force_Z, dc_coeffs, dc_eval
from hyperzero.hypergraph import HypergraphError
from oracles import Z_enum

# frozen from a 50-digit mpmath evaluation of the closed form
SAMOTIJ_3_S0 = 3
SAMOTIJ_3_VALUE_AT_S0 = -0.71903045653871153


def random_lambdas(seed, count=20):
    rng = random.Random(seed)
    return [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(count)]


class TestSamotij:
    @pytest.mark.parametrize("k,s", [(3, 1), (3, 2), (5, 1), (5, 3), (7, 2)])
    def test_shape(self, k, s):
        G = build_samotij(k, s)
        assert G.vertex_count == k + k * s and G.edge_count == k * s
        assert G.max_degree == (k - 1) * s
        assert G.uniformity == k
        assert all(G.degrees[v] == 1 for v in range(k, G.vertex_count))

    def test_example_value(self):
        assert brute_force_Z(build_samotij(3, 1), 1) == 45 == 64 - 3 * 8 + 3 * 2 - 1
        assert samotij_Z_closed_form(3, 1, 1) == 45

    @pytest.mark.parametrize("k,s", [(3, 1), (3, 2), (5, 1)])
    def test_closed_form_matches_brute_force(self, k, s):
        G = build_samotij(k, s)
        for lam in random_lambdas(k * 10 + s):
            assert samotij_Z_closed_form(k, s, lam) == pytest.approx(brute_force_Z(G, lam),
                                                                     rel=1e-12)

    def test_closed_form_matches_coefficients(self):
        p = dc_coeffs(build_samotij(3, 4))
        for lam in (0.1, -0.3, 0.2 + 0.5j):
            assert samotij_Z_closed_form(3, 4, lam) == pytest.approx(p.eval(lam), rel=1e-12)

    @pytest.mark.parametrize("k,s", [(2, 1), (4, 1), (3, 0)])
    def test_invalid(self, k, s):
        with pytest.raises(HypergraphError):
            build_samotij(k, s)

    def test_probe_out_of_range_for_small_s(self):
        for s in (1, 2):
            res = samotij_negativity_probe(3, s)
            assert res.lambda_probe <= -1 and not res.in_range and not res.verdict

    def test_probe_at_threshold(self):
        res = samotij_negativity_probe(3, SAMOTIJ_3_S0)
        assert res.in_range and res.verdict
        assert res.lambda_probe == pytest.approx(-3 * math.log(6) / 6, rel=1e-15)
        assert res.value == pytest.approx(SAMOTIJ_3_VALUE_AT_S0, rel=1e-12)

    def test_threshold_frozen(self):
        assert samotij_threshold(3, 1000) == SAMOTIJ_3_S0

    def test_probe_negative_on_a_sparse_large_grid(self):
        for s in (10, 100, 10 ** 4, 10 ** 6):
            assert samotij_negativity_probe(3, s).verdict

    def test_negative_probe_brackets_a_root(self):
        for s in (3, 7, 50):
            res = samotij_negativity_probe(3, s)
            delta = 2 * s
            root = bisect_root(lambda x: samotij_Z_closed_form(3, s, x), res.lambda_probe, 0)
            assert abs(root) < 3 * math.log(delta) / delta
            assert abs(samotij_Z_closed_form(3, s, root)) < 1e-9


class TestStar:
    def test_shape(self):
        for k in (2, 3, 5):
            for d in (1, 3, 6):
                G = build_star(k, d)
                assert G.vertex_count == 1 + (k - 1) * d and G.edge_count == d
                assert G.degrees[0] == d and G.is_linear_hypertree

    def test_small_star(self):
        G = build_star(2, 3)
        assert G.vertex_count == 4
        for lam in (0.3, -0.7, 2.0):
            assert star_Z_closed_form(2, 3, lam) == pytest.approx((1 + lam) ** 3 + lam)

    def test_closed_form_example(self):
        assert star_Z_closed_form(3, 2, 1) == 25 == brute_force_Z(build_star(3, 2), 1)
        assert dc_coeffs(build_star(3, 2)).coeffs == (1, 5, 10, 8, 1)

    @pytest.mark.parametrize("k,d", [(3, 2), (4, 3), (4, 5), (6, 2)])
    def test_closed_form_matches_oracles(self, k, d):
        G = build_star(k, d)
        for lam in random_lambdas(k + d, 8):
            expect = Z_enum(G.vertex_count, G.edges, lam)
            scale = 1e-12 * (1 + abs(lam)) ** G.vertex_count
            assert star_Z_closed_form(k, d, lam) == pytest.approx(expect, abs=scale)
            assert dc_eval(G, lam) == pytest.approx(expect, abs=scale)

    def test_normalized_sign(self):
        for lam in (-0.9, -0.5, -0.1, 0.4):
            full = star_Z_closed_form(4, 7, lam)
            assert math.copysign(1, full) == math.copysign(1, star_normalized(4, 7, lam))

    @pytest.mark.parametrize("k", [3, 5, 2])
    def test_probe_needs_even_k(self, k):
        with pytest.raises(HypergraphError):
            star_negativity_probe(k, 10)
        with pytest.raises(HypergraphError):
            star_threshold(k, 100)

    def test_probe_is_consistent_with_closed_form(self):
        for d in (3, 10, 40, 200):
            res = star_negativity_probe(4, d)
            val = star_Z_closed_form(4, d, res.lambda_probe)
            assert (val < 0) == res.verdict
            assert res.value == pytest.approx(val, rel=1e-9, abs=1e-300)

    def test_negative_probe_brackets_a_root(self):
        for d in (50, 500):
            res = star_negativity_probe(4, d)
            assert res.verdict
            root = bisect_root(lambda x: star_normalized(4, d, x), res.lambda_probe, 0)
            assert abs(root) <= abs(res.lambda_probe)

    def test_threshold(self):
        d0 = star_threshold(4, 10 ** 5)
        assert d0 == 3
        assert not star_negativity_probe(4, d0 - 1).verdict
        assert all(star_negativity_probe(4, d).verdict for d in range(d0, 2000))


class TestTrees:
    def test_sizes(self):
        assert build_regular_tree_truncation(3, 1).vertex_count == 4
        assert build_regular_tree_truncation(3, 2).vertex_count == 10
        assert build_regular_tree_truncation(3, 7).vertex_count == 382

    def test_depth_zero(self):
        G = build_regular_tree_truncation(3, 0)
        assert G.vertex_count == 1 and dc_eval(G, 0.3) == pytest.approx(1.3)

    def test_degrees(self):
        G = build_regular_tree_truncation(4, 3)
        interior = [v for v in G.vertices if G.degrees[v] > 1]
        assert all(G.degrees[v] == 4 for v in interior)
        assert G.is_graph and len(G.components) == 1 and G.edge_count == G.vertex_count - 1


class TestRandom:
    def test_linear_hypertree(self):
        for seed in range(10):
            G = build_random_linear_hypertree(3, 3, 25, seed)
            assert G.is_linear_hypertree and G.max_degree <= 3 and G.vertex_count >= 25
            assert G.uniformity == 3

    def test_hypertree_determinism(self):
        assert build_random_linear_hypertree(4, 2, 30, 5) == build_random_linear_hypertree(4, 2, 30, 5)

    def test_random_hypergraph(self):
        for seed in range(10):
            G = build_random_hypergraph(3, 4, 30, 36, seed)
            assert G.vertex_count == 30 and G.edge_count == 36 and G.max_degree <= 4
            assert G.uniformity == 3
        assert build_random_hypergraph(3, 4, 30, 36, 1) == build_random_hypergraph(3, 4, 30, 36, 1)

    def test_mixed_sizes(self):
        G = build_random_hypergraph([2, 3], 3, 15, 12, 2)
        assert {len(e) for e in G.edges} <= {2, 3}

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            build_random_hypergraph(3, 1, 6, 3, 0)
        with pytest.raises(InfeasibleError):
            build_random_hypergraph(5, 2, 4, 1, 0)
        with pytest.raises(InfeasibleError):
            build_random_linear_hypertree(3, 1, 10, 0)


class TestSpec:
    def test_build_dispatch(self):
        assert ConstructionSpec("star", k=3, delta=2).build() == build_star(3, 2)
        assert ConstructionSpec("samotij", k=3, s=2).build() == build_samotij(3, 2)
        assert ConstructionSpec("regular_tree", delta=3, depth=2).build().vertex_count == 10

    def test_random_needs_seed(self):
        with pytest.raises(HypergraphError):
            ConstructionSpec("random_hypergraph", k=3, delta=3, n=10, m=5).build()

    def test_unknown_family(self):
        with pytest.raises(HypergraphError):
            ConstructionSpec("wheel").build()


class TestBisection:
    def test_examples(self):
        assert bisect_root(lambda x: 1 + 2 * x, -1, 0) == pytest.approx(-0.5, abs=1e-12)
        golden = (-3 + 5 ** 0.5) / 2
        assert bisect_root(lambda x: 1 + 3 * x + x * x, -1, 0) == pytest.approx(golden, abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(ValueError):
            bisect_root(lambda x: 1 + x * x, -1, 0)
