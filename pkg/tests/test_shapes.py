import itertools
import random
from fractions import Fraction

import pytest

from mncomplex.complexes import SimplicialComplex
from mncomplex.errors import BudgetExceededError, ConfigError
from mncomplex.shapes import (
    FSetWitness,
    FShape,
    cap_product,
    conjecture2_inequalities,
    convert_version,
    enumerate_m_pure_shapes,
    m_density,
    max_sub_density,
    maximal_faces,
    pair_density,
    r_density,
    r_shape,
    reduced_parameters,
    shape_from_complex,
    shape_from_facets,
    shape_leq,
    shape_predicates,
)

# Three-facet worked example A (bitmask order: {}, f, g, fg, h, fh, gh, fgh):
# f={a,c,d}, g={c,d,t}, h={d,k,l}
EX1_CAP = (6, 3, 3, 2, 3, 1, 1, 1)
EX1_EXCL = (0, 1, 1, 1, 2, 0, 0, 1)
EX1_CUP = (0, 3, 3, 4, 3, 5, 5, 6)

# Worked example B: same f, g but h={t,k,l}
EX2_CAP = (6, 3, 3, 2, 3, 0, 1, 0)

# Witness shapes for example B (2-pure)
WIT_A_CAP = (6, 2, 2, 0, 2, 0, 0, 0)          # spread-out witness, r-shape
WIT_B_CAP = (5, 2, 2, 1, 2, 0, 0, 0)          # one shared label between f and g
WIT_C_CAP = (2, 2, 2, 2, 2, 2, 2, 2)          # one shared pair for all facets


class TestConvertVersion:
    def test_worked_example_all_versions(self):
        assert tuple(convert_version(EX1_CAP, "cap", "excl", 3)) == EX1_EXCL
        assert tuple(convert_version(EX1_CAP, "cap", "cup", 3)) == EX1_CUP
        assert tuple(convert_version(EX1_EXCL, "excl", "cap", 3)) == EX1_CAP
        assert tuple(convert_version(EX1_EXCL, "excl", "cup", 3)) == EX1_CUP
        assert tuple(convert_version(EX1_CUP, "cup", "cap", 3)) == EX1_CAP
        assert tuple(convert_version(EX1_CUP, "cup", "excl", 3)) == EX1_EXCL

    def test_spot_values(self):
        # cup[{f,g}] = 3 + 3 - 2, excl[{f}] = 3 - 2 - 1 + 1, cap[{f,g}] = 3 + 3 - 4
        assert convert_version(EX1_CAP, "cap", "cup", 3)[0b011] == 4
        assert convert_version(EX1_CAP, "cap", "excl", 3)[0b001] == 1
        assert convert_version(EX1_CUP, "cup", "cap", 3)[0b011] == 2
        # union-to-exclusive ranges over every subset including the empty one
        assert convert_version(EX1_CUP, "cup", "excl", 3)[0b011] == -6 + 5 + 5 - 3

    def test_zero_vector_fixed_point(self):
        zero = [0] * 8
        for frm in ("cap", "excl", "cup"):
            for to in ("cap", "excl", "cup"):
                assert convert_version(zero, frm, to, 3) == zero

    def test_round_trips_on_random_shapes(self):
        rng = random.Random(424242)
        for _ in range(1000):
            phi = rng.randint(1, 3)
            size = 1 << phi
            excl = [0] + [rng.randint(-5, 5) for _ in range(size - 1)]
            cap = convert_version(excl, "excl", "cap", phi)
            cup = convert_version(excl, "excl", "cup", phi)
            vectors = {"cap": cap, "excl": excl, "cup": cup}
            for frm, to in itertools.permutations(("cap", "excl", "cup"), 2):
                assert convert_version(vectors[frm], frm, to, phi) == vectors[to]

    def test_bad_length_rejected(self):
        with pytest.raises(ConfigError):
            convert_version([1, 2, 3], "cap", "excl", 2)


class TestFShape:
    def test_from_cap_builds_all_versions(self):
        x = FShape.from_cap(EX1_CAP)
        assert x.phi == 3
        assert x.excl == EX1_EXCL
        assert x.cup == EX1_CUP
        assert x.x0 == 6

    def test_single_facet(self):
        x = FShape.from_cap((3, 3))
        assert x.excl == (0, 3)
        assert x.cup == (0, 3)

    def test_inconsistent_cap_rejected(self):
        with pytest.raises(ConfigError):
            FShape.from_cap((7, 3, 3, 2, 3, 1, 1, 1))  # ground size does not match

    def test_json_round_trip(self):
        x = FShape.from_cap(EX2_CAP)
        assert FShape.from_json(x.to_json()) == x

    def test_purity(self):
        assert FShape.from_cap(EX1_CAP).pure_value() == 3
        assert FShape.from_cap((4, 3, 2, 1)).pure_value() is None

    def test_nonnegativity(self):
        assert FShape.from_cap(EX1_CAP).is_nonnegative()
        # +1 on a pair, -1 on its singletons
        v = FShape.from_excl((0, -1, -1, 1))
        assert not v.is_nonnegative()


class TestShapeFromFacets:
    def test_worked_example_a(self):
        facets = [{"a", "c", "d"}, {"c", "d", "t"}, {"d", "k", "l"}]
        assert shape_from_facets(facets).cap == EX1_CAP

    def test_worked_example_b(self):
        facets = [{"a", "c", "d"}, {"c", "d", "t"}, {"t", "k", "l"}]
        x = shape_from_facets(facets)
        assert x.singleton_caps() == (3, 3, 3)
        assert (x.cap[0b011], x.cap[0b101], x.cap[0b110]) == (2, 0, 1)
        assert x.cap[0b111] == 0

    def test_extra_vertices_rejected(self):
        with pytest.raises(ConfigError):
            shape_from_facets([{0, 1}], vertices=[0, 1, 2])

    def test_from_complex_uses_maximal_faces(self):
        kx = SimplicialComplex.from_faces(
            3, [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2), (0, 1, 2)]
        )
        assert maximal_faces(kx) == [(0, 1, 2)]
        assert shape_from_complex(kx).cap == (3, 3)


class TestCapProduct:
    @pytest.mark.parametrize(
        "witness_cap,expected",
        [(WIT_A_CAP, 18), (WIT_B_CAP, 16), (WIT_C_CAP, 12)],
    )
    def test_product_ground_sizes(self, witness_cap, expected):
        x = FShape.from_cap(EX2_CAP)
        w = FShape.from_cap(witness_cap)
        assert cap_product(w, x).x0 == expected

    def test_product_singletons_multiply(self):
        x = FShape.from_cap(EX2_CAP)
        w = FShape.from_cap(WIT_B_CAP)
        assert cap_product(w, x).singleton_caps() == (6, 6, 6)

    def test_phi_mismatch_rejected(self):
        with pytest.raises(ConfigError):
            cap_product(FShape.from_cap((2, 2)), FShape.from_cap(EX2_CAP))


class TestPairDensity:
    @pytest.mark.parametrize(
        "witness_cap,expected",
        [
            (WIT_A_CAP, Fraction(3, 2)),
            (WIT_B_CAP, Fraction(16, 11)),
            (WIT_C_CAP, Fraction(3, 2)),
        ],
    )
    def test_worked_example_densities(self, witness_cap, expected):
        x = FShape.from_cap(EX2_CAP)
        assert pair_density(x, FShape.from_cap(witness_cap)) == expected

    def test_exactness(self):
        d = pair_density(FShape.from_cap(EX2_CAP), FShape.from_cap(WIT_B_CAP))
        assert isinstance(d, Fraction)


class TestPredicatesAndOrder:
    def test_worked_example_predicates(self):
        pr = shape_predicates(FShape.from_cap(EX1_CAP), k=3)
        assert pr.nonnegative and pr.k_pure and pr.pure_value == 3

    def test_r_shape_predicates(self):
        r = r_shape(3, 2)
        pr = shape_predicates(r, k=2)
        assert pr.nonnegative and pr.k_pure

    def test_reflexive_order(self):
        x = FShape.from_cap(EX1_CAP)
        assert shape_leq(x, x)

    def test_zero_below_everything_nonnegative(self):
        zero = FShape.from_excl((0,) * 8)
        assert shape_leq(zero, FShape.from_cap(EX1_CAP))

    def test_componentwise_reduction_is_below(self):
        reduced = list(EX1_EXCL)
        reduced[0b100] -= 1  # drop the h-only count 2 -> 1
        assert shape_leq(FShape.from_excl(reduced), FShape.from_excl(EX1_EXCL))


class TestEnumeration:
    def test_single_facet_forced(self):
        shapes = list(enumerate_m_pure_shapes(1, 2))
        assert len(shapes) == 1
        assert shapes[0].excl == (0, 2)

    def test_two_facets_m1(self):
        shapes = list(enumerate_m_pure_shapes(2, 1))
        excls = sorted(s.excl for s in shapes)
        assert excls == [(0, 0, 0, 1), (0, 1, 1, 0)]

    def test_yielded_shapes_are_pure_and_nonnegative(self):
        for s in enumerate_m_pure_shapes(3, 2):
            assert s.is_nonnegative()
            assert s.pure_value() == 2

    def test_budget_enforced(self):
        with pytest.raises(BudgetExceededError):
            list(enumerate_m_pure_shapes(4, 10, budget=10))


class TestDensities:
    def test_two_single_facets(self):
        x = FShape.from_cap((3, 3))
        w = FShape.from_cap((2, 2))
        assert max_sub_density(x, w) == Fraction(6, 5)

    def test_self_pair_single_facet(self):
        x = FShape.from_cap((4, 4))
        assert max_sub_density(x, x) == Fraction(2)

    def test_dominates_plain_pair_density(self):
        x = FShape.from_cap(EX2_CAP)
        for wcap in (WIT_A_CAP, WIT_B_CAP, WIT_C_CAP):
            w = FShape.from_cap(wcap)
            assert max_sub_density(x, w) >= pair_density(x, w)

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_single_facet_m_density_closed_form(self, k, m):
        x = FShape.from_cap((k, k))
        assert m_density(x, m) == Fraction(k * m, k + m)

    def test_worked_example_b_density(self):
        # value frozen from an independent brute-force enumeration oracle
        assert m_density(FShape.from_cap(EX2_CAP), 2) == Fraction(7, 5)

    def test_impure_shape_rejected(self):
        with pytest.raises(ConfigError):
            m_density(FShape.from_cap((4, 3, 2, 1)), 2)


class TestRShape:
    def test_r_density_formula(self):
        x = FShape.from_cap(EX2_CAP)
        assert r_density(x, 2) == Fraction(3, 2)

    def test_single_facet_specialization(self):
        x = FShape.from_cap((3, 3))
        assert r_density(x, 2) == Fraction(6, 5)

    def test_worked_example_a_same_value(self):
        assert r_density(FShape.from_cap(EX1_CAP), 2) == Fraction(3, 2)


class TestReducedParameters:
    def test_spread_out_witness_inapplicable(self):
        x = FShape.from_cap(EX2_CAP)
        params = reduced_parameters(x, FShape.from_cap(WIT_A_CAP))
        assert params.phi_w == 1 and params.pi_x_w == 1
        assert params.pi_w_x == Fraction(3, 2)
        res = conjecture2_inequalities(params)
        assert not res["ineq3"].applicable and not res["ineq4"].applicable

    def test_overlapping_witness_ties(self):
        x = FShape.from_cap(EX2_CAP)
        params = reduced_parameters(x, FShape.from_cap(WIT_B_CAP))
        assert params.phi_w == Fraction(6, 5)
        assert params.pi_x_w == Fraction(16, 15)
        assert params.pi_w_x == Fraction(4, 3)
        res = conjecture2_inequalities(params)
        assert res["ineq3"].applicable and res["ineq3"].lhs == 3 and res["ineq3"].rhs == 3
        assert res["ineq3"].holds is False
        assert res["ineq4"].rhs == 3 and res["ineq4"].holds is False

    def test_concentrated_witness_fails_strictly(self):
        x = FShape.from_cap(EX2_CAP)
        params = reduced_parameters(x, FShape.from_cap(WIT_C_CAP))
        assert params.phi_w == 3 and params.pi_x_w == 2 and params.pi_w_x == 1
        res = conjecture2_inequalities(params)
        assert (res["ineq3"].lhs, res["ineq3"].rhs) == (3, 2)
        assert (res["ineq4"].lhs, res["ineq4"].rhs) == (3, 1)
        assert res["ineq3"].holds is False and res["ineq4"].holds is False


class TestFSetWitness:
    def test_shape_and_purity(self):
        w = FSetWitness(({"u", "v"}, {"v", "w"}))
        assert w.phi == 2
        assert w.is_m_pure(2)
        assert w.shape().cap == (3, 2, 2, 1)
