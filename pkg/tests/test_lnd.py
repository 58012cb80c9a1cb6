import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngit.exactalg import Ring, RingMismatchError, SubalgebraMembership
from ngit.lnd import (
    Derivation,
    NilpotencyBoundExceeded,
    SlicePreconditionError,
    apply_derivation,
    canonical_generators,
    dixmier_map,
    invariant_presentation,
    is_locally_nilpotent,
    kernel_generators,
    nullcone_check,
    present,
    resolve_assignment,
    weitzenboeck,
)
from strategies import R3, polynomials

REFERENCE_N3 = [
    "x0",
    "x0*x2 - x1^2",
    "x1^3 + 1/2*x0^2*x3 - 3/2*x0*x1*x2",
    "2*x0*x1*x2*x3 - 1/3*x0^2*x3^2 + x1^2*x2^2 - 4/3*x1^3*x3 - 4/3*x0*x2^3",
]
REFERENCE_N4 = [
    "x0",
    "x0*x2 - x1^2",
    "x2^2 + 1/3*x0*x4 - 4/3*x1*x3",
    "x1^3 + 1/2*x0^2*x3 - 3/2*x0*x1*x2",
    "x2^3 - 2*x1*x2*x3 + x0*x3^2 + x1^2*x4 - x0*x2*x4",
]


def mutually_contained(a, b):
    ma, mb = SubalgebraMembership(a), SubalgebraMembership(b)
    return all(mb.contains(g) for g in a) and all(ma.contains(g) for g in b)


def same_up_to_unit(f, g):
    return f.primitive() == g.primitive()


class TestDerivation:
    def test_annihilates_examples(self):
        D = weitzenboeck(2)
        assert not D(D.ring("x1^2 - x0*x2"))
        D = weitzenboeck(3)
        assert not D(D.ring("x1^3 + 1/2*x0^2*x3 - 3/2*x0*x1*x2"))
        R = Ring(["x0", "x1", "x2", "x3"])
        E = Derivation(R, {"x2": "x1", "x3": "2*x2 + x0"})
        assert not apply_derivation(E, R("x1*x3 - x2^2 - x0*x2"))

    def test_weitzenboeck_images(self):
        assert {k: str(v) for k, v in weitzenboeck(1).images.items()} == {"x0": "0", "x1": "x0"}
        assert str(weitzenboeck(2).images["x2"]) == "2*x1"
        assert str(weitzenboeck(3).images["x3"]) == "3*x2"
        with pytest.raises(ValueError):
            weitzenboeck(0)

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatchError):
            weitzenboeck(2)(weitzenboeck(3).ring("x0"))
        with pytest.raises(ValueError):
            Derivation(R3, {"w": "x"})

    def test_json_round_trip(self):
        D = weitzenboeck(3)
        E = Derivation.from_json(json.dumps(D.to_json()))
        assert E.images == D.images
        F = Derivation.from_json({"vars": ["a", "b"], "images": {"b": "a"}})
        assert str(F(F.ring("b^2"))) == "2*a*b"


class TestNilpotency:
    def test_weitzenboeck_indices(self):
        cert = is_locally_nilpotent(weitzenboeck(4), 10)
        assert cert.indices == {f"x{i}": i + 1 for i in range(5)}
        assert cert.kernel_variables() == ["x0"]

    def test_failure_reports_variable(self):
        R = Ring(["x"])
        with pytest.raises(NilpotencyBoundExceeded) as err:
            is_locally_nilpotent(Derivation(R, {"x": "x"}), 10)
        assert err.value.variable == "x"

    def test_four_dimensional_example(self):
        R = Ring(["w1", "w2", "w3", "w4", "w5"])
        D = Derivation(R, {"w3": "w1", "w4": "w2", "w5": "1 + w1*w4 - w2*w3"})
        cert = is_locally_nilpotent(D, 10)
        assert cert.indices["w5"] == 2

    def test_bound_must_be_positive(self):
        with pytest.raises(ValueError):
            is_locally_nilpotent(weitzenboeck(1), 0)


class TestDixmier:
    def test_examples(self):
        D = weitzenboeck(2)
        x0 = D.ring("x0")
        assert dixmier_map(D, "x1", x0, "x0").numerator == x0
        assert not dixmier_map(D, "x1", x0, "x1").numerator
        frac = dixmier_map(D, "x1", x0, "x2")
        assert frac.power == 1 and frac.numerator == D.ring("x0*x2 - x1^2")

    def test_preconditions(self):
        D = weitzenboeck(2)
        with pytest.raises(SlicePreconditionError):
            dixmier_map(D, "x2", D.ring("x0"), "x1")
        with pytest.raises(SlicePreconditionError):
            dixmier_map(D, "x1", D.ring("x1"), "x2")

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_output_in_kernel(self, n):
        # D(h / d^k) = D(h) / d^k because D(d) = 0
        D = weitzenboeck(n)
        for v in D.ring.names:
            frac = dixmier_map(D, "x1", D.ring("x0"), v)
            assert not D(frac.numerator)


class TestKernel:
    def test_n1(self):
        assert [str(g) for g in kernel_generators(weitzenboeck(1))] == ["x0"]

    def test_n2(self):
        D = weitzenboeck(2)
        gens = kernel_generators(D)
        assert mutually_contained(gens, [D.ring("x0"), D.ring("x1^2 - x0*x2")])

    @pytest.mark.parametrize("n,reference", [(3, REFERENCE_N3), (4, REFERENCE_N4)])
    def test_matches_reference_lists(self, n, reference):
        D = weitzenboeck(n)
        gens = kernel_generators(D)
        assert len(gens) == len(reference)
        assert all(not D(g) for g in gens)
        assert mutually_contained(gens, [D.ring(p) for p in reference])
        for g in gens:
            assert g.primitive() == g

    def test_requires_witness(self):
        R = Ring(["a", "b"])
        with pytest.raises(ValueError):
            kernel_generators(Derivation(R, {"b": "a"}))
        gens = kernel_generators(Derivation(R, {"b": "a"}), witness="b")
        assert [str(g) for g in gens] == ["a"]

    def test_canonical_generators_drop_redundant(self):
        R = Ring(["x0", "x1", "x2"])
        gens = canonical_generators([R("x0"), R("x1^2 - x0*x2"), R("x0^2 + 3*x1^2 - 3*x0*x2")])
        assert [str(g) for g in gens] == ["x0", "x1^2 - x0*x2"]


class TestPresentation:
    def test_n2(self):
        p = invariant_presentation(2)
        assert p.ambient == "P(1,2)" and p.relations.is_zero()

    def test_n3(self):
        p = invariant_presentation(3)
        assert p.ambient == "P(1,2,3,4)"
        (rel,) = p.relations
        assert same_up_to_unit(rel, rel.ring("3*y0^2*y3 - 4*y1^3 + 4*y2^2"))
        assert p.relation_degrees() == [6]
        assert not p.substitute(rel)

    def test_n4(self):
        p = invariant_presentation(4)
        assert p.ambient == "P(1,2,2,3,3)"
        (rel,) = p.relations
        target = rel.ring("4*y3^2 - 4*y1^3 - y0^3*y4 + 3*y0^2*y1*y2")
        assert same_up_to_unit(rel, target)
        assert resolve_assignment(p, target) is p

    def test_resolution_reorders_generators(self):
        p = invariant_presentation(4)
        swapped = present([p.generators[i] for i in (0, 2, 1, 4, 3)])
        target = swapped.relations.ring("4*y3^2 - 4*y1^3 - y0^3*y4 + 3*y0^2*y1*y2")
        fixed = resolve_assignment(swapped, target)
        assert fixed is not None and fixed.generators == p.generators

    def test_json(self):
        obj = invariant_presentation(3).to_json()
        assert obj["degrees"] == [1, 2, 3, 4] and len(obj["relations"]) == 1


class TestNullcone:
    @pytest.mark.parametrize("n,expected", [(2, ["x0", "x1"]), (3, ["x0", "x1"]), (4, ["x0", "x1", "x2"])])
    def test_coordinate_ideal(self, n, expected):
        assert [str(g) for g in nullcone_check(n)] == expected


_images = st.fixed_dictionaries({v: polynomials(max_deg=2, max_terms=3) for v in R3.names})


@settings(max_examples=1000)
@given(_images, polynomials(max_deg=3), polynomials(max_deg=3))
def test_leibniz(images, f, g):
    D = Derivation(R3, images)
    assert D(f * g) == f * D(g) + g * D(f)
    assert D(f + g) == D(f) + D(g)
