"""Locally nilpotent derivations and their kernels.

A derivation is stored by its images on the ring variables and extended by
the Leibniz rule, ``D(f) = sum_i D(x_i) * df/dx_i``.  Kernels are computed
with the Dixmier map attached to a local slice followed by the saturation
loop: the kernel ``A`` of ``D`` is the subalgebra generated so far exactly
when ``A ∩ d·k[x] = d·A`` for the slice denominator ``d``.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .exactalg import (
    Ideal,
    Polynomial,
    Ring,
    RingMismatchError,
    SubalgebraMembership,
    eliminate,
    radical_membership,
    relation_ideal,
)
from .exactalg.groebner import as_budget
from .exactalg.serialize import polynomial_from_json, polynomial_to_json

log = logging.getLogger(__name__)


class NilpotencyBoundExceeded(ArithmeticError):
    """Iterating the derivation on ``variable`` did not reach zero within ``bound`` steps.

    This does not prove the derivation is not locally nilpotent.
    """

    def __init__(self, variable: str, bound: int):
        super().__init__(f"D^k({variable}) is nonzero for all k <= {bound}")
        self.variable = variable
        self.bound = bound


class SlicePreconditionError(ValueError):
    pass


class Derivation:
    """A k-derivation of a polynomial ring, given by its values on the variables."""

    def __init__(self, ring: Ring, images: Mapping[str, Polynomial]):
        self.ring = ring
        imgs = {}
        for name in ring.names:
            img = images.get(name)
            if img is None:
                img = ring.zero()
            elif not isinstance(img, Polynomial):
                img = ring(img)
            if img.ring != ring:
                raise RingMismatchError(f"image of {name} lives in {img.ring}, not {ring}")
            imgs[name] = img
        unknown = set(images) - set(ring.names)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        self.images = imgs

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_derivation(self, f)

    def iterate(self, f: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            if not f:
                break
            f = self(f)
        return f

    def __repr__(self):
        body = ", ".join(f"{n} -> {self.images[n]}" for n in self.ring.names)
        return f"Derivation({body})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "images": {n: polynomial_to_json(self.images[n]) for n in self.ring.names if self.images[n]},
        }

    @classmethod
    def from_json(cls, obj) -> "Derivation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            ring = Ring(obj["vars"])
            raw = obj.get("images", {})
        except (KeyError, TypeError, AttributeError):
            raise ValueError("derivation JSON needs 'vars' and 'images'") from None
        images = {}
        for name, value in raw.items():
            if isinstance(value, str):
                images[name] = ring(value)
            else:
                images[name] = polynomial_from_json(value, ring)
        return cls(ring, images)


def apply_derivation(D: Derivation, f: Polynomial) -> Polynomial:
    if f.ring != D.ring:
        raise RingMismatchError(f"{f.ring} is not the ring of the derivation {D.ring}")
    total = f.ring.zero()
    for name in f.variables():
        img = D.images[name]
        if img:
            total = total + img * f.diff(name)
    return total


@dataclass(frozen=True)
class LNDCertificate:
    """Per-variable nilpotency index: the least k with D^k(v) = 0."""

    indices: Mapping[str, int]

    def kernel_variables(self) -> list[str]:
        return [v for v, k in self.indices.items() if k == 1]


def is_locally_nilpotent(D: Derivation, bound: int = 64) -> LNDCertificate:
    """Certify local nilpotency by iterating D on every variable.

    Raises :class:`NilpotencyBoundExceeded` for the first variable whose
    iterates are still nonzero after ``bound`` applications.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    indices = {}
    for name in D.ring.names:
        f = D.ring.var(name)
        for k in range(1, bound + 1):
            f = D(f)
            if not f:
                indices[name] = k
                break
        else:
            raise NilpotencyBoundExceeded(name, bound)
    return LNDCertificate(indices)


def weitzenboeck(n: int) -> Derivation:
    """Basic Weitzenboeck derivation on binary forms of degree n: x_i -> i*x_{i-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    ring = Ring(f"x{i}" for i in range(n + 1))
    images = {f"x{i}": i * ring.var(f"x{i - 1}") for i in range(1, n + 1)}
    return Derivation(ring, images)


# -- Dixmier map ------------------------------------------------------------


@dataclass(frozen=True)
class LocalFraction:
    """``numerator / denominator**power`` in the localisation at ``denominator``."""

    numerator: Polynomial
    denominator: Polynomial
    power: int

    def __eq__(self, other):
        if not isinstance(other, LocalFraction):
            return NotImplemented
        k = max(self.power, other.power)
        return (
            self.numerator * self.denominator ** (k - self.power)
            == other.numerator * other.denominator ** (k - other.power)
        )

    def __hash__(self):
        return hash((self.denominator, self.power))


def _try_divide(f: Polynomial, d: Polynomial) -> Polynomial | None:
    try:
        return f.divide_by(d)
    except ValueError:
        return None


def dixmier_map(
    D: Derivation,
    slice_num: str,
    slice_den: Polynomial,
    x,
    bound: int = 256,
) -> LocalFraction:
    """``pi(x) = sum_k (-s)^k D^k(x) / k!`` with slice ``s = slice_num / slice_den``.

    ``x`` is a variable name or a polynomial.  The fraction is returned with
    the smallest power of ``slice_den`` that clears denominators.
    """
    ring = D.ring
    num = ring.var(slice_num) if isinstance(slice_num, str) else slice_num
    if slice_den.ring != ring:
        raise RingMismatchError(f"{slice_den.ring} is not {ring}")
    if not slice_den:
        raise SlicePreconditionError("slice denominator is zero")
    if D(slice_den):
        raise SlicePreconditionError(f"D({slice_den}) is not zero")
    if D(num) != slice_den:
        raise SlicePreconditionError(f"D({num}) != {slice_den}")
    f = ring.var(x) if isinstance(x, str) else x
    iterates = []
    while f:
        if len(iterates) > bound:
            raise NilpotencyBoundExceeded(str(x), bound)
        iterates.append(f)
        f = D(f)
    top = max(len(iterates) - 1, 0)
    total = ring.zero()
    for k, dk in enumerate(iterates):
        total = total + dk * (-num) ** k * slice_den ** (top - k) / factorial(k)
    power = top
    while power and total:
        q = _try_divide(total, slice_den)
        if q is None:
            break
        total, power = q, power - 1
    if not total:
        power = 0
    return LocalFraction(total, slice_den, power)


# -- kernel generators --------------------------------------------------------


def _homogeneous(gens: Sequence[Polynomial]) -> bool:
    return all(g.is_homogeneous() for g in gens)


def _pivot_reduce(vec: dict, pivots: dict) -> dict:
    """Eliminate pivot monomials from a sparse vector (exact, in place)."""
    changed = True
    while changed:
        changed = False
        for m in [m for m in vec if m in pivots]:
            c = vec.get(m)
            if not c:
                continue
            row = pivots[m]
            for mm, cc in row.items():
                v = vec.get(mm, 0) - c * cc
                if v:
                    vec[mm] = v
                else:
                    vec.pop(mm, None)
            changed = True
    return vec


def _echelon(vectors: list[dict], key) -> dict:
    """Reduced row echelon basis keyed by pivot (largest monomial under ``key``)."""
    pivots: dict = {}
    for v in vectors:
        v = _pivot_reduce(dict(v), pivots)
        if not v:
            continue
        m = max(v, key=key)
        c = v[m]
        v = {mm: cc / c for mm, cc in v.items()}
        for row in pivots.values():
            if m in row:
                a = row[m]
                for mm, cc in v.items():
                    nv = row.get(mm, 0) - a * cc
                    if nv:
                        row[mm] = nv
                    else:
                        row.pop(mm, None)
        pivots[m] = v
    return pivots


def canonical_generators(gens: Sequence[Polynomial], normalize: str = "primitive") -> list[Polynomial]:
    """Minimal, canonical generating set of the graded subalgebra ``k[gens]``.

    Degree by degree, every generator is reduced modulo the span of products
    of lower-degree generators and the survivors are put in reduced row
    echelon form (pivots are grevlex-leading monomials).  Redundant generators
    vanish in the process.  ``normalize`` is ``"primitive"`` (coprime integer
    coefficients, positive lead) or ``"monic"``.

    Non-homogeneous input is only minimised, using subalgebra membership.
    """
    gens = [g for g in gens if g and not g.is_constant()]
    if not gens:
        return []
    ring = gens[0].ring
    if not _homogeneous(gens):
        return _minimise_by_membership(gens, normalize)
    from .exactalg.orders import GREVLEX

    key = GREVLEX.bind(ring).encode
    by_degree: dict[int, list[Polynomial]] = {}
    for g in gens:
        by_degree.setdefault(g.total_degree(), []).append(g)
    kept: list[Polynomial] = []
    for d in sorted(by_degree):
        products = [dict(p.terms) for p in _products_of_degree(kept, d)]
        decomposable = _echelon(products, key)
        reduced = []
        for g in by_degree[d]:
            v = _pivot_reduce(dict(g.terms), decomposable)
            if v:
                reduced.append(v)
        for m, row in sorted(_echelon(reduced, key).items(), key=lambda t: key(t[0]), reverse=True):
            kept.append(Polynomial(ring, row))
    out = [g.monic() if normalize == "monic" else g.primitive() for g in kept]
    return out


def _products_of_degree(gens: Sequence[Polynomial], d: int) -> list[Polynomial]:
    """All products of the (lower-degree) generators with total degree ``d``."""
    degs = [g.total_degree() for g in gens]
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        if i == len(gens):
            return
        e = 0
        cur = acc
        while e * degs[i] <= remaining:
            rec(i + 1, remaining - e * degs[i], cur)
            e += 1
            cur = cur * gens[i]

    if gens:
        rec(0, d, gens[0].ring.one())
    return out


def _minimise_by_membership(gens: list[Polynomial], normalize: str) -> list[Polynomial]:
    gens = sorted(gens, key=lambda g: (g.total_degree(), len(g)))
    keep = list(gens)
    for g in reversed(gens):
        others = [h for h in keep if h is not g]
        if others and SubalgebraMembership(others).contains(g):
            keep = others
    return [g.monic() if normalize == "monic" else g.primitive() for g in keep]


def kernel_generators(
    D: Derivation,
    witness: str | None = None,
    budget=None,
    max_rounds: int = 64,
    normalize: str = "primitive",
) -> list[Polynomial]:
    """Generators of ker D for a locally nilpotent D with a local slice.

    ``witness`` is a variable v with D(v) != 0 and D(D(v)) = 0; the slice is
    v / D(v).  For Weitzenboeck derivations it defaults to ``x1``.
    """
    budget = as_budget(budget)
    ring = D.ring
    if witness is None:
        if "x1" in ring and "x0" in ring and D.images["x1"] and not D(D.images["x1"]):
            witness = "x1"
        else:
            raise ValueError("a localization witness variable is required")
    den = D.images[witness]
    if not den or D(den):
        raise SlicePreconditionError(f"D({witness}) must be a nonzero kernel element")

    gens = [den]
    for name in ring.names:
        if name == witness:
            continue
        frac = dixmier_map(D, witness, den, name)
        h = frac.numerator
        if h and not h.is_constant():
            gens.append(_strip_factor(h, den).primitive())
    gens = canonical_generators(gens)
    log.debug("initial kernel candidates: %s", gens)

    for round_ in range(max_rounds):
        new = [_strip_factor(c, den) for c in _saturation_candidates(gens, den, budget)]
        new = _not_in_subalgebra(new, gens, budget)
        log.debug("round %d: %d new generators", round_, len(new))
        if not new:
            break
        gens = canonical_generators(gens + new)
    else:
        raise RuntimeError(f"kernel computation did not stabilise in {max_rounds} rounds")
    return canonical_generators(gens, normalize)


def _strip_factor(h: Polynomial, den: Polynomial) -> Polynomial:
    # kernels of LNDs are factorially closed, so dividing by den stays inside
    while not h.is_constant():
        q = _try_divide(h, den)
        if q is None or q.is_constant():
            break
        h = q
    return h


def _not_in_subalgebra(cands: list[Polynomial], gens: list[Polynomial], budget) -> list[Polynomial]:
    if not cands:
        return []
    if not (_homogeneous(gens) and _homogeneous(cands)):
        member = SubalgebraMembership(gens, budget=budget)
        return [c for c in cands if not member.contains(c)]
    from .exactalg.orders import GREVLEX

    key = GREVLEX.bind(gens[0].ring).encode
    spans: dict[int, dict] = {}
    out = []
    for c in cands:
        d = c.total_degree()
        if d not in spans:
            lower = [g for g in gens if g.total_degree() <= d]
            spans[d] = _echelon([dict(p.terms) for p in _products_of_degree(lower, d)], key)
        if _pivot_reduce(dict(c.terms), spans[d]):
            out.append(c)
    return out


def _saturation_candidates(gens: list[Polynomial], den: Polynomial, budget) -> list[Polynomial]:
    """``P(g) / den`` for generators P of {P : P(g) ∈ (den)}."""
    ring = gens[0].ring
    tags = [ring.fresh_name(f"_y{i}") for i in range(len(gens))]
    big = ring.extend(tags)
    ideal = Ideal(big, [den.to_ring(big)] + [big.var(t) - g.to_ring(big) for t, g in zip(tags, gens)])
    rel = eliminate(ideal, ring.names, budget)
    out = []
    for P in rel:
        value = P.substitute(dict(zip(tags, gens)), ring)
        if not value:
            continue
        q = value.divide_by(den)
        if q and not q.is_constant():
            out.append(q.primitive())
    out.sort(key=lambda g: (g.total_degree(), len(g)))
    return out


# -- presentations ------------------------------------------------------------


@dataclass
class SubalgebraPresentation:
    """``k[g_0, ..., g_m] ≅ k[y_0, ..., y_m] / relations`` with weighted degrees."""

    generators: list[Polynomial]
    degrees: list[int]
    tags: list[str]
    relations: Ideal
    notes: dict = field(default_factory=dict)

    @property
    def ambient(self) -> str:
        return "P(" + ",".join(map(str, self.degrees)) + ")"

    def relation_degrees(self) -> list[int]:
        return [r.weighted_degree(self.degrees) for r in self.relations]

    def substitute(self, relation: Polynomial) -> Polynomial:
        return relation.substitute(dict(zip(self.tags, self.generators)), self.generators[0].ring)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "degrees": self.degrees,
            "tags": self.tags,
            "generators": [polynomial_to_json(g) for g in self.generators],
            "relations": [polynomial_to_json(r) for r in self.relations],
        }


def _presentation_order(gens: list[Polynomial]) -> list[Polynomial]:
    from .exactalg.orders import GREVLEX

    key = GREVLEX.bind(gens[0].ring).encode
    return sorted(gens, key=lambda g: (g.total_degree(), -key(g.leading_term()[0])))


def present(gens: Sequence[Polynomial], budget=None, tag_stem: str = "y") -> SubalgebraPresentation:
    gens = list(gens)
    tags = [f"{tag_stem}{i}" for i in range(len(gens))]
    rel = relation_ideal(gens, tags, budget)
    rel = Ideal(rel.ring, [r.primitive() for r in rel])
    return SubalgebraPresentation(gens, [g.total_degree() for g in gens], tags, rel)


def invariant_presentation(n: int, budget=None) -> SubalgebraPresentation:
    """Weighted projective presentation of the invariants of weitzenboeck(n).

    Generators are canonical and monic, ordered by degree and, within a
    degree, by descending grevlex leading monomial.
    """
    budget = as_budget(budget)
    gens = kernel_generators(weitzenboeck(n), budget=budget, normalize="monic")
    return present(_presentation_order(gens), budget)


def resolve_assignment(p: SubalgebraPresentation, relation: Polynomial) -> SubalgebraPresentation | None:
    """Reorder generators of equal degree so that ``relation`` vanishes.

    ``relation`` is written in the tags of ``p``.  Returns the reordered
    presentation (relations recomputed) or None if no reordering works.
    """
    groups: dict[int, list[int]] = {}
    for i, d in enumerate(p.degrees):
        groups.setdefault(d, []).append(i)
    ring = p.generators[0].ring
    choices = [list(itertools.permutations(idx)) for _, idx in sorted(groups.items())]
    for combo in itertools.product(*choices):
        perm = [i for block in combo for i in block]
        gens = [p.generators[i] for i in perm]
        value = relation.substitute(dict(zip(p.tags, gens)), ring)
        if not value:
            if perm == sorted(perm):
                return p
            return present(gens)
    return None


def nullcone_check(n: int, budget=None) -> Ideal:
    """Coordinate ideal whose zero set is the common zero set of all invariants."""
    budget = as_budget(budget)
    D = weitzenboeck(n)
    gens = kernel_generators(D, budget=budget)
    ring = D.ring
    inv = Ideal(ring, gens)
    vanishing = [ring.var(x) for x in ring.names if radical_membership(ring.var(x), inv, budget)]
    coord = Ideal(ring, vanishing)
    for g in gens:
        if not radical_membership(g, coord, budget):
            raise ArithmeticError(f"zero set of the invariants is not a coordinate subspace ({g})")
    return coord


__all__ = [
    "Derivation",
    "LNDCertificate",
    "LocalFraction",
    "NilpotencyBoundExceeded",
    "SlicePreconditionError",
    "SubalgebraPresentation",
    "apply_derivation",
    "canonical_generators",
    "dixmier_map",
    "invariant_presentation",
    "is_locally_nilpotent",
    "kernel_generators",
    "nullcone_check",
    "present",
    "resolve_assignment",
    "weitzenboeck",
]
