import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngit.exactalg import Ring
from ngit.linrep import (
    DegreeViolation,
    ParamMatrix,
    SubstitutionAutomorphism,
    example_surface_family,
    example_toric_family,
    group_law_check,
    identity_substitution,
    monomial_basis,
    substitution_matrix,
)

TORIC_MATRIX = [
    ["1", "0", "0", "0", "0", "l", "0", "0", "l^2"],
    ["0", "1", "0", "0", "0", "m", "l", "0", "2*l*m"],
    ["0", "0", "1", "0", "0", "n", "m", "l", "2*l*n + m^2"],
    ["0", "0", "0", "1", "0", "0", "n", "m", "2*m*n"],
    ["0", "0", "0", "0", "1", "0", "0", "n", "n^2"],
    ["0", "0", "0", "0", "0", "1", "0", "0", "2*l"],
    ["0", "0", "0", "0", "0", "0", "1", "0", "2*m"],
    ["0", "0", "0", "0", "0", "0", "0", "1", "2*n"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "1"],
]


class TestBasis:
    def test_weighted_degree_four(self):
        b = monomial_basis((1, 1, 2), 4)
        assert b.labels() == ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4", "x^2*z", "x*y*z", "y^2*z", "z^2"]

    def test_degree_two(self):
        assert monomial_basis((1, 1, 2), 2).labels() == ["x^2", "x*y", "y^2", "z"]

    @pytest.mark.parametrize("weights", [(1, 1, 2), (1, 2, 3), (1, 1, 1, 1), (2, 3)])
    @pytest.mark.parametrize("degree", range(1, 8))
    def test_counts_match_lattice_points(self, weights, degree):
        count = sum(
            1
            for e in itertools.product(*(range(degree // w + 1) for w in weights))
            if sum(a * w for a, w in zip(e, weights)) == degree
        )
        b = monomial_basis(weights, degree)
        assert len(b) == count == len(set(b.monomials))

    def test_invalid(self):
        with pytest.raises(ValueError):
            monomial_basis((1, 0), 2)
        with pytest.raises(ValueError):
            monomial_basis((1, 1), 0)


class TestMatrix:
    def test_toric_matrix_entrywise(self):
        s = example_toric_family()
        M = substitution_matrix(s, monomial_basis(s.weights, 4))
        ring = M.ring
        assert M.size == 9
        for i, j in itertools.product(range(9), repeat=2):
            assert M[i, j] == ring(TORIC_MATRIX[i][j]), (i, j)

    def test_degree_two_block(self):
        s = example_toric_family()
        M = substitution_matrix(s, monomial_basis(s.weights, 2))
        assert [str(e) for e in M.column(3)] == ["l", "m", "n", "1"]
        I = substitution_matrix(identity_substitution(s.names, s.weights), monomial_basis(s.weights, 2))
        assert I == ParamMatrix.identity(Ring([]), 4)

    @pytest.mark.parametrize("degree", [2, 4, 6])
    def test_unipotent(self, degree):
        s = example_toric_family()
        assert substitution_matrix(s, monomial_basis(s.weights, degree)).determinant() == 1

    def test_json_round_trip(self):
        s = example_toric_family()
        M = substitution_matrix(s, monomial_basis(s.weights, 4))
        assert ParamMatrix.from_json(json.dumps(M.to_json())) == M
        assert SubstitutionAutomorphism.from_json(json.dumps(s.to_json())).images == s.images

    def test_degree_violation(self):
        with pytest.raises(DegreeViolation):
            SubstitutionAutomorphism(("x", "y", "z"), (1, 1, 2), ("l",), {"z": "z + l*x"})
        with pytest.raises(DegreeViolation):
            SubstitutionAutomorphism(("x", "y"), (1, 1), (), {"x": "x^2"})


class TestGroupLaw:
    def test_toric(self):
        assert group_law_check(example_toric_family())
        s = example_toric_family()
        assert group_law_check(s, monomial_basis(s.weights, 6))

    def test_surface(self):
        s = example_surface_family()
        assert not s.apply(s.ring("x1*x3 - x2^2 - x0*x2")) - s.ring("x1*x3 - x2^2 - x0*x2")
        assert group_law_check(s)
        assert group_law_check(s, monomial_basis(s.weights, 3))

    def test_wrong_rule_fails(self):
        def doubled(params, primed):
            return {p: f"2*{p} + {primed[p]}" for p in params}

        assert not group_law_check(example_toric_family(), rule=doubled)


@settings(max_examples=100)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.sampled_from([2, 4]))
def test_functoriality(a, b, c, d, degree):
    # M(s) M(t) = M(s o t) for numerical specialisations
    fam = example_toric_family()
    basis = monomial_basis(fam.weights, degree)
    empty = Ring([])
    s = fam.specialize({"l": empty(str(a)), "m": empty(str(b)), "n": empty("0")}, ())
    t = fam.specialize({"l": empty(str(c)), "m": empty("0"), "n": empty(str(d))}, ())
    lhs = substitution_matrix(s, basis) @ substitution_matrix(t, basis)
    assert lhs == substitution_matrix(s.compose(t), basis)
