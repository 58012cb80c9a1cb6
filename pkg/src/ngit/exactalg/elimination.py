"""Elimination, saturation, subalgebra membership and radical membership."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .groebner import Budget, Ideal, Reducer, _coerce_ideal, as_budget, groebner_basis
from .orders import GREVLEX, block_order
from .poly import Polynomial, Ring, RingMismatchError


def eliminate(gens, drop: Iterable[str], budget=None, weights: Mapping[str, int] | None = None) -> Ideal:
    """Generators of ``I ∩ k[remaining variables]``, as an ideal of the smaller ring.

    Pass ``weights`` only when every generator is homogeneous for them
    (unlisted variables weigh 1); the computation is then graded.
    """
    ideal = _coerce_ideal(gens)
    ring = ideal.ring
    drop = set(drop)
    for name in drop:
        ring.index(name)
    sub = ring.drop(drop)
    if not drop:
        return Ideal(sub, groebner_basis(ideal, GREVLEX, budget))
    if weights:
        wt = [weights.get(name, 1) for name in ring.names]
        if not all(g.is_homogeneous(wt) for g in ideal):
            raise ValueError("generators are not homogeneous for the given weights")
    gb = groebner_basis(ideal, block_order(drop, weights), budget)
    kept = [g for g in gb if not drop.intersection(g.variables())]
    return Ideal(sub, [g.to_ring(sub) for g in kept])


def saturate(gens, f: Polynomial, budget=None) -> Ideal:
    """``I : f^∞`` via ``I + (t f - 1)`` and elimination of ``t``."""
    ideal = _coerce_ideal(gens)
    ring = ideal.ring
    if f.ring != ring:
        raise RingMismatchError(f"{f.ring} is not {ring}")
    if not f:
        raise ValueError("cannot saturate by the zero polynomial")
    t = ring.fresh_name("t")
    big = ring.extend([t])
    tv = big.var(t)
    lifted = [g.to_ring(big) for g in ideal] + [tv * f.to_ring(big) - 1]
    return eliminate(Ideal(big, lifted), [t], budget)


def radical_membership(f: Polynomial, gens, budget=None) -> bool:
    """True iff ``f`` vanishes on the zero set of ``gens`` (Rabinowitsch trick)."""
    ideal = _coerce_ideal(gens) if not isinstance(gens, Ideal) else gens
    ring = ideal.ring
    if f.ring != ring:
        raise RingMismatchError(f"{f.ring} is not {ring}")
    if not f:
        return True
    if ideal.is_zero():
        return False
    t = ring.fresh_name("t")
    big = ring.extend([t])
    lifted = [g.to_ring(big) for g in ideal] + [1 - big.var(t) * f.to_ring(big)]
    return groebner_basis(Ideal(big, lifted), GREVLEX, budget).is_unit()


def _tag_names(ring: Ring, count: int, tags: Sequence[str] | None, start: int) -> list[str]:
    if tags is not None:
        tags = list(tags)
        if len(tags) != count:
            raise ValueError(f"expected {count} tag names, got {len(tags)}")
        clash = [t for t in tags if t in ring]
        if clash:
            raise ValueError(f"tag names {clash} clash with ring variables")
        return tags
    stem = "y"
    while any(f"{stem}{i}" in ring for i in range(start, start + count)):
        stem += "y"
    return [f"{stem}{i}" for i in range(start, start + count)]


def _tagged_ideal(gens: Sequence[Polynomial], tags: list[str]) -> tuple[Ring, Ring, Ideal]:
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    big = ring.extend(tags)
    tag_ring = Ring(tags)
    ideal = Ideal(big, [big.var(t) - g.to_ring(big) for t, g in zip(tags, gens)])
    return big, tag_ring, ideal


def _tag_weights(gens: Sequence[Polynomial], tags: list[str]) -> dict | None:
    """Weights making every ``y_i - g_i`` homogeneous, if the generators are."""
    if all(g.is_homogeneous() and not g.is_constant() for g in gens):
        return {t: g.total_degree() for t, g in zip(tags, gens)}
    return None


class SubalgebraMembership:
    """Decides ``f ∈ k[g_1, ..., g_m]`` with one Groebner basis for many queries.

    Uses tag variables ``y_i - g_i`` under an elimination order ranking the
    original variables above the tags; ``f`` is in the subalgebra iff its
    normal form involves tags only, and that normal form is the witness.
    Homogeneous generators give a graded ideal, and the order then compares
    weighted degree first, which keeps the Groebner basis small.
    """

    def __init__(self, gens: Sequence[Polynomial], tags: Sequence[str] | None = None, budget=None):
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        self.generators = gens
        self.ring = gens[0].ring
        self.tags = _tag_names(self.ring, len(gens), tags, 1)
        big, self.tag_ring, ideal = _tagged_ideal(gens, self.tags)
        self._big = big
        order = block_order(self.ring.names, _tag_weights(gens, self.tags))
        self._reducer = Reducer(groebner_basis(ideal, order, budget), order)

    def __call__(self, f: Polynomial) -> tuple[bool, Polynomial | None]:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} is not {self.ring}")
        nf = self._reducer.normal_form(f.to_ring(self._big))
        if set(nf.variables()) - set(self.tags):
            return False, None
        return True, nf.to_ring(self.tag_ring)

    def contains(self, f: Polynomial) -> bool:
        return self(f)[0]

    def expand(self, witness: Polynomial) -> Polynomial:
        """Substitute the generators for the tags."""
        return witness.substitute(dict(zip(self.tags, self.generators)), self.ring)


def subalgebra_membership(
    f: Polynomial, gens: Sequence[Polynomial], tags: Sequence[str] | None = None, budget=None
) -> tuple[bool, Polynomial | None]:
    """``(True, witness)`` if ``f`` is a polynomial in ``gens``, else ``(False, None)``."""
    return SubalgebraMembership(gens, tags, budget)(f)


def relation_ideal(gens: Sequence[Polynomial], tags: Sequence[str] | None = None, budget=None) -> Ideal:
    """Kernel of ``k[y] -> k[x]``, ``y_i -> g_i``, as an ideal of the tag ring."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    tags = _tag_names(gens[0].ring, len(gens), tags, 1)
    big, tag_ring, ideal = _tagged_ideal(gens, tags)
    elim = eliminate(ideal, gens[0].ring.names, budget, _tag_weights(gens, tags))
    return Ideal(tag_ring, [g.to_ring(tag_ring) for g in elim])


__all__ = [
    "Budget",
    "SubalgebraMembership",
    "eliminate",
    "radical_membership",
    "relation_ideal",
    "saturate",
    "subalgebra_membership",
]
