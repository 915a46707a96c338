"""Theorem audits: the 2g = 1 - h relation and the fibre scanner."""

import pytest

from jaccoord import (
    Coordinate,
    NotCoordinate,
    gen_random_coordinate,
    parse_poly,
    rat,
    relation_check,
    theorem3_scan,
)
from jaccoord.audit import GenusJump, Inconclusive, ReducibleFibre
from jaccoord.fibre import ConstantInputError, Unknown


class TestRelationCheck:
    def test_rational_curve_values(self):
        assert relation_check(0, 1)

    def test_violations(self):
        assert not relation_check(1, 1)
        assert not relation_check(0, 2)
        assert not relation_check(2, 1)


class TestScanNonCoordinates:
    def test_product_flags_reducible_fibre(self):
        r = theorem3_scan(parse_poly("x*y"), n_random=4, seed=0)
        assert isinstance(r.verdict, NotCoordinate)
        assert isinstance(r.violation, ReducibleFibre)
        assert r.violation.c == rat(0)
        assert not r.theorem_violation_suspected

    def test_degenerate_vertex_case(self):
        r = theorem3_scan(parse_poly("x + x^2*y"), n_random=4, seed=0)
        assert isinstance(r.verdict, NotCoordinate)
        assert isinstance(r.violation, ReducibleFibre)
        assert r.violation.c == rat(0)

    def test_cusp_inconclusive_at_zero(self):
        r = theorem3_scan(parse_poly("y^2 - x^3"), n_random=6, seed=0)
        assert isinstance(r.verdict, NotCoordinate)
        assert r.generic_genus == 1
        assert isinstance(r.violation, (GenusJump, Inconclusive))
        if isinstance(r.violation, Inconclusive):
            assert rat(0) in r.violation.unknown_cs
        assert not r.theorem_violation_suspected

    def test_elliptic_generic_genus(self):
        r = theorem3_scan(parse_poly("y^2 - x^3 - x - 1"), n_random=6, seed=0)
        assert isinstance(r.verdict, NotCoordinate)
        assert r.generic_genus == 1
        assert not r.theorem_violation_suspected


class TestScanCoordinates:
    def test_generated_coordinate_consistent(self):
        P, _ = gen_random_coordinate(4, 1, 2, 3)
        r = theorem3_scan(P, n_random=4, seed=0)
        assert isinstance(r.verdict, Coordinate)
        assert r.violation is None
        assert r.relation_holds_on_known
        assert not r.theorem_violation_suspected

    def test_known_samples_are_rational_curves(self):
        P, _ = gen_random_coordinate(6, 1, 2, 3)
        r = theorem3_scan(P, n_random=6, seed=1)
        for s in r.samples:
            if isinstance(s.genus, Unknown):
                continue
            assert s.genus == 0
            if not isinstance(s.branches_at_infinity, Unknown):
                assert s.branches_at_infinity == 1

    def test_closed_loop_many_seeds(self):
        for seed in range(30):
            P, _ = gen_random_coordinate(seed, 1 + seed % 2, 2, 3)
            r = theorem3_scan(P, n_random=2, seed=0)
            assert isinstance(r.verdict, Coordinate), P.to_str()
            assert r.violation is None
            assert r.relation_holds_on_known
            assert not r.theorem_violation_suspected


class TestScanMechanics:
    def test_constant_rejected(self):
        with pytest.raises(ConstantInputError):
            theorem3_scan(parse_poly("3"), n_random=2, seed=0)

    def test_sample_count(self):
        P = parse_poly("y + x^2")
        r = theorem3_scan(P, n_random=5, seed=0)
        n_special = len(r.special_values.rational_candidates)
        assert len(r.samples) == 5 + n_special

    def test_samples_sorted(self):
        r = theorem3_scan(parse_poly("y^2 - x^3"), n_random=6, seed=2)
        cs = [s.c for s in r.samples]
        assert cs == sorted(cs)

    def test_determinism(self):
        P = parse_poly("y^2 - x^3 - x")
        assert theorem3_scan(P, 4, 7) == theorem3_scan(P, 4, 7)

    def test_seed_changes_samples(self):
        P = parse_poly("y + x^2")
        a = theorem3_scan(P, 6, 0)
        b = theorem3_scan(P, 6, 1)
        assert {s.c for s in a.samples} != {s.c for s in b.samples}
