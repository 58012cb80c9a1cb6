"""Linear representations induced by polynomial substitutions on graded pieces.

A substitution sends each variable to a weighted-homogeneous polynomial of
the same weight whose coefficients are polynomials in formal parameters.
It acts on polynomials by ``f ↦ f(s(x))`` and therefore linearly on each
graded piece; the matrix of that action has the images of the basis
monomials as its columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .exactalg import Polynomial, Ring, polynomial_from_json


class DegreeViolation(ValueError):
    """An image is not weighted-homogeneous of the right degree."""


@dataclass(frozen=True)
class GradedMonomialBasis:
    """Monomials of one weighted degree.

    Ordered by ascending exponent of the last variable, then of the one
    before it, and so on: for weights (1,1,2) and degree 4 this gives
    x^4, x^3y, x^2y^2, xy^3, y^4, x^2z, xyz, y^2z, z^2.
    """

    names: tuple
    weights: tuple
    degree: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def index(self, exps) -> int:
        return self.monomials.index(tuple(exps))

    def labels(self) -> list[str]:
        ring = Ring(self.names)
        return [str(ring.monomial(m)) for m in self.monomials]


def _default_names(k: int) -> tuple:
    return ("x", "y", "z")[:k] if k <= 3 else tuple(f"x{i}" for i in range(k))


def monomial_basis(weights: Sequence[int], degree: int, names: Sequence[str] | None = None) -> GradedMonomialBasis:
    weights = tuple(int(w) for w in weights)
    if not weights or min(weights) < 1:
        raise ValueError("weights must be positive")
    if degree < 1:
        raise ValueError("degree must be positive")
    names = tuple(names) if names is not None else _default_names(len(weights))
    if len(names) != len(weights):
        raise ValueError("need one name per weight")
    out = []

    def rec(i, remaining, acc):
        if i == len(weights) - 1:
            if remaining % weights[i] == 0:
                out.append(acc + (remaining // weights[i],))
            return
        for e in range(remaining // weights[i], -1, -1):
            rec(i + 1, remaining - e * weights[i], acc + (e,))

    rec(0, degree, ())
    out.sort(key=lambda m: m[::-1])
    return GradedMonomialBasis(names, weights, degree, tuple(out))


class ParamMatrix:
    """Square matrix whose entries are polynomials in the parameter ring."""

    def __init__(self, ring: Ring, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        self.ring = ring
        self.rows = rows

    @classmethod
    def identity(cls, ring: Ring, size: int) -> "ParamMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(size)] for i in range(size)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.rows]

    def to_ring(self, ring: Ring) -> "ParamMatrix":
        return ParamMatrix(ring, [[e.to_ring(ring) for e in r] for r in self.rows])

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        ring = self.ring
        if other.ring != ring:
            ring = Ring(dict.fromkeys(self.ring.names + other.ring.names))
            return self.to_ring(ring) @ other.to_ring(ring)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ring.zero()
                for k in range(n):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ParamMatrix(ring, out)

    def __eq__(self, other):
        if not isinstance(other, ParamMatrix) or self.size != other.size:
            return NotImplemented
        ring = Ring(dict.fromkeys(self.ring.names + other.ring.names))
        return all(
            a.to_ring(ring) == b.to_ring(ring)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def substitute(self, values: Mapping[str, Polynomial], ring: Ring) -> "ParamMatrix":
        return ParamMatrix(ring, [[e.substitute(values, ring) for e in r] for r in self.rows])

    def determinant(self) -> Polynomial:
        """Bareiss fraction-free elimination; divisions are exact."""
        m = [list(r) for r in self.rows]
        n = self.size
        ring = self.ring
        sign = 1
        prev = ring.one()
        for k in range(n - 1):
            if not m[k][k]:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return ring.zero()
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_by(prev)
            prev = m[k][k]
        det = m[n - 1][n - 1] if n else ring.one()
        return det if sign > 0 else -det

    def to_json(self) -> dict:
        return {"params": list(self.ring.names), "rows": [[str(e) for e in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "ParamMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = Ring(obj["params"])
        return cls(ring, [[ring(e) for e in r] for r in obj["rows"]])

    def __repr__(self):
        return "ParamMatrix(" + "; ".join(", ".join(map(str, r)) for r in self.rows) + ")"


class SubstitutionAutomorphism:
    """Variable images in the ring of geometric variables followed by parameters."""

    def __init__(self, names: Sequence[str], weights: Sequence[int], params: Sequence[str], images: Mapping):
        self.names = tuple(names)
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != len(self.names):
            raise ValueError("need one weight per variable")
        self.params = tuple(params)
        clash = set(self.names) & set(self.params)
        if clash:
            raise ValueError(f"names {sorted(clash)} used for both variables and parameters")
        self.ring = Ring(self.names + self.params)
        self.param_ring = Ring(self.params)
        unknown = set(images) - set(self.names)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        grading = self.weights + (0,) * len(self.params)
        self.images = {}
        for name, w in zip(self.names, self.weights):
            img = images.get(name)
            if img is None:
                img = self.ring.var(name)
            elif isinstance(img, str):
                img = self.ring(img)
            else:
                img = img.to_ring(self.ring)
            if not img.is_homogeneous(grading) or img.weighted_degree(grading) != w:
                raise DegreeViolation(f"image of {name} is not homogeneous of weight {w}: {img}")
            self.images[name] = img

    def apply(self, f: Polynomial) -> Polynomial:
        return f.to_ring(self.ring).substitute(self.images, self.ring)

    def rename_params(self, mapping: Mapping[str, str]) -> "SubstitutionAutomorphism":
        params = [mapping.get(p, p) for p in self.params]
        ring = Ring(self.names + tuple(params))
        subs = {p: ring.var(mapping.get(p, p)) for p in self.params}
        subs.update({n: ring.var(n) for n in self.names})
        images = {n: img.substitute(subs, ring) for n, img in self.images.items()}
        return SubstitutionAutomorphism(self.names, self.weights, params, images)

    def specialize(self, values: Mapping[str, Polynomial], params: Sequence[str]) -> "SubstitutionAutomorphism":
        """Replace parameters by polynomials in new parameters ``params``."""
        ring = Ring(self.names + tuple(params))
        subs = {n: ring.var(n) for n in self.names}
        for p in self.params:
            v = values.get(p, ring.var(p) if p in ring else ring.zero())
            subs[p] = v if isinstance(v, Polynomial) else ring(str(v))
            subs[p] = subs[p].to_ring(ring)
        images = {n: img.substitute(subs, ring) for n, img in self.images.items()}
        return SubstitutionAutomorphism(self.names, self.weights, params, images)

    def compose(self, other: "SubstitutionAutomorphism") -> "SubstitutionAutomorphism":
        """The substitution ``f ↦ self(other(f))``; its matrix is M(self)·M(other)."""
        if self.names != other.names or self.weights != other.weights:
            raise ValueError("substitutions act on different weighted rings")
        params = tuple(dict.fromkeys(self.params + other.params))
        ring = Ring(self.names + params)
        mine = {n: img.to_ring(ring) for n, img in self.images.items()}
        images = {n: other.images[n].to_ring(ring).substitute(mine, ring) for n in self.names}
        return SubstitutionAutomorphism(self.names, self.weights, params, images)

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "weights": list(self.weights),
            "params": list(self.params),
            "images": {n: str(img) for n, img in self.images.items() if img != self.ring.var(n)},
        }

    @classmethod
    def from_json(cls, obj) -> "SubstitutionAutomorphism":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            weights = obj["weights"]
            names = obj.get("vars") or _default_names(len(weights))
            params = obj.get("params", [])
            raw = obj["images"]
        except (KeyError, TypeError, AttributeError):
            raise ValueError("substitution JSON needs 'weights' and 'images'") from None
        ring = Ring(tuple(names) + tuple(params))
        images = {}
        for name, value in raw.items():
            images[name] = ring(value) if isinstance(value, str) else polynomial_from_json(value, ring)
        return cls(names, weights, params, images)


def identity_substitution(names: Sequence[str], weights: Sequence[int]) -> SubstitutionAutomorphism:
    return SubstitutionAutomorphism(names, weights, (), {})


def substitution_matrix(s: SubstitutionAutomorphism, b: GradedMonomialBasis) -> ParamMatrix:
    if tuple(b.names) != s.names or tuple(b.weights) != s.weights:
        raise ValueError("basis and substitution use different variables or weights")
    nv = len(s.names)
    pring = s.param_ring
    size = len(b)
    cols = []
    for m in b.monomials:
        image = s.apply(s.ring.monomial(m + (0,) * len(s.params)))
        col = [dict() for _ in range(size)]
        for exps, c in image.terms.items():
            key = exps[:nv]
            try:
                row = b.index(key)
            except ValueError:
                raise DegreeViolation(f"image of {s.ring.monomial(m + (0,) * len(s.params))} leaves the basis") from None
            pe = exps[nv:]
            col[row][pe] = col[row].get(pe, 0) + c
        cols.append([Polynomial(pring, entry) for entry in col])
    return ParamMatrix(pring, [[cols[j][i] for j in range(size)] for i in range(size)])


def additive_rule(params: Sequence[str], primed: Mapping[str, str]) -> dict[str, str]:
    return {p: f"{p} + {primed[p]}" for p in params}


def group_law_check(
    family: SubstitutionAutomorphism,
    basis: GradedMonomialBasis | None = None,
    rule: Callable[[Sequence[str], Mapping[str, str]], Mapping[str, str]] = additive_rule,
) -> bool:
    """Does ``M(s_a)·M(s_b) = M(s_{rule(a, b)})`` hold identically in the parameters?

    ``rule`` receives the parameter names and the map to their primed copies
    and returns, for each parameter, an expression in both sets.  The default
    basis is the graded piece of degree twice the largest weight.
    """
    if basis is None:
        basis = monomial_basis(family.weights, 2 * max(family.weights), family.names)
    taken = set(family.names) | set(family.params)
    primed = {}
    for p in family.params:
        q = p + "p"
        while q in taken:
            q += "p"
        taken.add(q)
        primed[p] = q
    other = family.rename_params(primed)
    both = tuple(family.params) + tuple(primed[p] for p in family.params)
    ring = Ring(both)
    values = {p: ring(expr) for p, expr in rule(family.params, primed).items()}
    combined = family.specialize(values, both)
    lhs = substitution_matrix(family, basis) @ substitution_matrix(other, basis)
    return lhs == substitution_matrix(combined, basis)


def example_toric_family() -> SubstitutionAutomorphism:
    """``z ↦ z + l x^2 + m x y + n y^2`` on P(1,1,2)."""
    return SubstitutionAutomorphism(("x", "y", "z"), (1, 1, 2), ("l", "m", "n"), {"z": "z + l*x^2 + m*x*y + n*y^2"})


def example_surface_family() -> SubstitutionAutomorphism:
    """One-parameter family on P^3 preserving the quadric x1 x3 - x2^2 - x0 x2."""
    return SubstitutionAutomorphism(
        ("x0", "x1", "x2", "x3"),
        (1, 1, 1, 1),
        ("t",),
        {"x2": "x2 + t*x1", "x3": "x3 + t*(2*x2 + x0) + t^2*x1"},
    )


__all__ = [
    "DegreeViolation",
    "GradedMonomialBasis",
    "ParamMatrix",
    "SubstitutionAutomorphism",
    "additive_rule",
    "example_surface_family",
    "example_toric_family",
    "group_law_check",
    "identity_substitution",
    "monomial_basis",
    "substitution_matrix",
]
