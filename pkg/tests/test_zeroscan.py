import csv
import io
import json
import math
import random

import numpy as np
import pytest

from hyperzero.bounds import hypergraph_radius, shearer_radius
from hyperzero.constructions import build_regular_tree_truncation, build_star, star_Z_closed_form
from hyperzero.exact import dc_eval
from hyperzero.hypergraph import Hypergraph
from hyperzero.zeroscan import (envelope, min_root_of, negative_axis_root, polar_grid,
                                scan_disk)
from oracles import Z_enum, random_edges

H = Hypergraph.from_edges

# frozen: sympy nroots on coefficients counted by plain subset enumeration
TREE3_DEPTH2_ROOT = -0.22982790316286633
TREE3_DEPTH3_ROOT = -0.19866038953264287


def random_degree3(rng, n_max=18):
    n = rng.randint(4, n_max)
    return H(random_edges(rng, n, [2, 3], rng.randint(1, n), 3), n=n)


class TestGrid:
    def test_layout(self):
        pts = polar_grid(1.0, 4)
        assert pts.shape == (16,)
        assert np.allclose(pts[:4], 0)
        assert np.allclose(pts[-4:], [1, 1j, -1, -1j])

    def test_center(self):
        pts = polar_grid(0.5, 3, center=1 + 1j)
        assert np.allclose(pts[:3], 1 + 1j)
        assert np.allclose(np.abs(pts[-3:] - (1 + 1j)), 0.5)

    def test_invalid(self):
        with pytest.raises(ValueError):
            polar_grid(0, 8)
        with pytest.raises(ValueError):
            polar_grid(1, 0)


class TestScan:
    def test_origin_value(self):
        res = scan_disk(H([[0, 1, 2]]), 0.1, 8)
        assert np.allclose(res.abs_z[:8], 1)

    def test_envelope(self):
        G = H([[0, 1, 2], [2, 3]])
        assert envelope(G) == pytest.approx((2 / 3) ** 4)

    def test_no_violations_on_random_degree3(self):
        rng = random.Random(5)
        for _ in range(15):
            G = random_degree3(rng)
            res = scan_disk(G, hypergraph_radius(3), 32)
            assert res.violations == []
            assert res.envelope_radius == hypergraph_radius(max(G.max_degree, 1))

    def test_inflated_tree_dips_below_envelope_near_negative_axis(self):
        G = build_regular_tree_truncation(3, 6)
        res = scan_disk(G, 2 * shearer_radius(3), 64)
        assert res.violations == []
        below = res.points[res.below_envelope]
        assert below.size > 0
        assert np.any((below.real < 0) & (np.abs(below.imag) < 0.05))
        assert min_root_of(G).modulus < 2 * shearer_radius(3)

    def test_evaluators_agree_inside_disk(self):
        rng = random.Random(6)
        for _ in range(8):
            G = random_degree3(rng, 14)
            r = hypergraph_radius(3)
            a = scan_disk(G, r, 16, "dc").values
            b = scan_disk(G, r, 16, "coeffs").values
            assert np.allclose(a, b, rtol=1e-8, atol=0)

    def test_closed_form_evaluator(self):
        G = build_star(3, 4)
        a = scan_disk(G, 0.2, 16, "closed_form", Zfn=lambda z: star_Z_closed_form(3, 4, z))
        b = scan_disk(G, 0.2, 16, "dc")
        assert np.allclose(a.values, b.values, rtol=1e-12)
        with pytest.raises(ValueError):
            scan_disk(G, 0.2, 16, "closed_form")

    def test_dc_matches_oracle(self):
        G = H([[0, 1, 2], [2, 3], [3, 4, 5]])
        res = scan_disk(G, 0.3, 6)
        for z, v in zip(res.points, res.values):
            assert v == pytest.approx(Z_enum(6, G.edges, complex(z)), rel=1e-12)

    def test_workers_do_not_change_results(self):
        G = build_regular_tree_truncation(3, 4)
        a = scan_disk(G, 0.2, 24, workers=1)
        b = scan_disk(G, 0.2, 24, workers=3)
        assert np.array_equal(a.values, b.values)
        assert a.to_csv() == b.to_csv()

    def test_budget_failure_is_recorded(self):
        G = H(random_edges(random.Random(1), 24, [3], 30, 4), n=24)
        res = scan_disk(G, 0.05, 4, budget=3)
        assert res.errors and np.all(np.isnan(res.values))

    def test_unknown_evaluator(self):
        with pytest.raises(ValueError):
            scan_disk(H([[0, 1]]), 0.1, 4, "magic")


class TestOutput:
    def test_csv(self):
        res = scan_disk(H([[0, 1, 2]]), 0.1, 5)
        rows = list(csv.reader(io.StringIO(res.to_csv())))
        assert rows[0] == ["re", "im", "abs_z", "arg_z"]
        assert len(rows) == 1 + 25
        assert float(rows[1][2]) == 1

    def test_summary(self):
        res = scan_disk(H([[0, 1, 2]]), 0.1, 5)
        data = json.loads(res.to_json())
        assert data["points"] == 25 and data["violations"] == []
        assert data["min_abs"] == pytest.approx(abs(dc_eval(H([[0, 1, 2]]), res.min_location)))
        assert abs(res.min_location) == pytest.approx(0.1)


class TestNegativeAxis:
    def test_examples(self):
        assert negative_axis_root(lambda x: 1 + 2 * x, 1) == pytest.approx(-0.5, abs=1e-12)
        golden = (-3 + 5 ** 0.5) / 2
        assert negative_axis_root(lambda x: 1 + 3 * x + x * x, 1) == pytest.approx(golden,
                                                                                    abs=1e-12)

    def test_smallest_root_is_returned(self):
        root = negative_axis_root(lambda x: (1 + 4 * x) * (1 + 2 * x), 1)
        assert root == pytest.approx(-0.25, abs=1e-12)

    def test_none(self):
        assert negative_axis_root(lambda x: 1 + x * x, 2) is None
        with pytest.raises(ValueError):
            negative_axis_root(lambda x: x, 0)


class TestMinRoot:
    def test_triangle(self):
        r = min_root_of(H([[0, 1], [1, 2], [0, 2]]))
        assert r.root == pytest.approx(-1 / 3, abs=1e-14) and r.degree == 1

    def test_single_three_edge(self):
        r = min_root_of(H([[0, 1, 2]]))
        assert r.modulus == pytest.approx(1 / math.sqrt(3), rel=1e-14)
        assert r.residual <= 1e-10

    def test_frozen_tree_roots(self):
        for depth, expect in ((2, TREE3_DEPTH2_ROOT), (3, TREE3_DEPTH3_ROOT)):
            r = min_root_of(build_regular_tree_truncation(3, depth))
            assert r.root == pytest.approx(expect, abs=1e-13)

    def test_constant(self):
        with pytest.raises(ValueError):
            min_root_of(Hypergraph.empty(0))

    def test_min_root_respects_hypergraph_radius(self):
        rng = random.Random(8)
        for _ in range(30):
            G = random_degree3(rng, 16)
            d = max(G.max_degree, 1)
            assert min_root_of(G).modulus > hypergraph_radius(d)
