"""Buchberger's algorithm with the Gebauer-Moeller criteria.

The engine works on packed integer polynomials (see :mod:`.orders`) with
integer coefficients; public functions take and return :class:`Polynomial`
objects with monic leading coefficients.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .kernels import kernels
from .orders import GREVLEX, BoundOrder, MonomialOrder
from .poly import Polynomial, Ring, RingMismatchError

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """A Groebner computation used more S-pair reductions than allowed."""


class Budget:
    """Counts S-pair reductions; shared by all Groebner calls of one operation."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit < 1:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.used = 0

    def charge(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"step budget of {self.limit} S-pair reductions exceeded")

    def __repr__(self):
        return f"Budget(used={self.used}, limit={self.limit})"


def as_budget(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


class Ideal:
    """A finite list of generators in a common ring; zero generators dropped."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @classmethod
    def of(cls, gens: Iterable[Polynomial]) -> "Ideal":
        gens = list(gens)
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        return cls(gens[0].ring, gens)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"


def _coerce_ideal(gens) -> Ideal:
    if isinstance(gens, Ideal):
        return gens
    return Ideal.of(gens)


# -- engine conversion ----------------------------------------------------


def to_engine(f: Polynomial, bound: BoundOrder) -> dict:
    den = lcm(*(c.denominator for c in f.terms.values())) if f else 1
    enc = bound.encode
    return {enc(m): (c * den).numerator for m, c in f.terms.items()}


def from_engine(d: dict, bound: BoundOrder, ring: Ring, scale: Fraction = Fraction(1)) -> Polynomial:
    dec = bound.decode
    return Polynomial._raw(ring, {dec(k): Fraction(c) * scale for k, c in d.items()})


def _monic_from_engine(d: dict, bound: BoundOrder, ring: Ring) -> Polynomial:
    lc = d[max(d)]
    return from_engine(d, bound, ring, Fraction(1, lc))


class _Basis:
    """Parallel arrays describing the active reducers."""

    def __init__(self, bound: BoundOrder):
        self.bound = bound
        self.keys: list[int] = []
        self.lows: list[int] = []
        self.polys: list[dict] = []
        self.lcs: list[int] = []

    def add(self, f: dict):
        key = max(f)
        self.keys.append(key)
        self.lows.append(key & self.bound.lowmask)
        self.polys.append(f)
        self.lcs.append(f[key])

    def reduce(self, f: dict, full: bool):
        b = self.bound
        return kernels.reduce(f, self.keys, self.lows, self.polys, self.lcs, b.lowmask, b.guard, full)


def buchberger(polys: Sequence[dict], bound: BoundOrder, budget: Budget) -> list[dict]:
    """Reduced Groebner basis (primitive integer polynomials) of engine polynomials."""
    polys = [kernels.primitive(dict(p)) for p in polys if p]
    if not polys:
        return []
    lowmask = bound.lowmask
    for p in polys:
        if max(p) & lowmask == 0:
            return [{0: 1}]

    store: list[dict] = []
    store_key: list[int] = []
    active: list[int] = []
    pairs: list[tuple[int, int, int]] = []  # (lcm key, i, j)

    def disjoint(a: int, b: int) -> bool:
        ea, eb = bound.decode(a), bound.decode(b)
        return all(not (x and y) for x, y in zip(ea, eb))

    def divides(a: int, b: int) -> bool:
        return bound.divides(a, b)

    def lcmk(a: int, b: int) -> int:
        return bound.lcm(a, b)

    def update(h_idx: int):
        nonlocal active, pairs
        h = store_key[h_idx]
        cand = list(active)
        lcms = {g: lcmk(h, store_key[g]) for g in cand}
        # chain criterion among new pairs, then product criterion
        kept = []
        while cand:
            g1 = cand.pop()
            l1 = lcms[g1]
            if disjoint(h, store_key[g1]) or (
                not any(divides(lcms[g2], l1) for g2 in cand) and not any(divides(lcms[g2], l1) for g2 in kept)
            ):
                kept.append(g1)
        new_pairs = [(lcms[g], g, h_idx) for g in kept if not disjoint(h, store_key[g])]
        old = []
        for lk, i, j in pairs:
            if divides(h, lk) and lcmk(store_key[i], h) != lk and lcmk(store_key[j], h) != lk:
                continue
            old.append((lk, i, j))
        pairs = old + new_pairs
        active = [g for g in active if not divides(h, store_key[g])] + [h_idx]

    basis = _Basis(bound)

    def rebuild_basis():
        basis.keys.clear()
        basis.lows.clear()
        basis.polys.clear()
        basis.lcs.clear()
        for g in active:
            basis.add(store[g])

    # inter-reduce the input first so that small inputs stay small
    polys.sort(key=max)
    for p in polys:
        r, _, _, _ = basis.reduce(dict(p), full=False)
        if not r:
            continue
        r = kernels.primitive(r)
        if max(r) & lowmask == 0:
            return [{0: 1}]
        store.append(r)
        store_key.append(max(r))
        update(len(store) - 1)
        rebuild_basis()

    while pairs:
        best = min(range(len(pairs)), key=lambda k: pairs[k][0])
        lk, i, j = pairs.pop(best)
        budget.charge()
        f, g = store[i], store[j]
        s = kernels.spoly(f, store_key[i], f[store_key[i]], g, store_key[j], g[store_key[j]], lk)
        if not s:
            continue
        r, _, _, _ = basis.reduce(s, full=False)
        if not r:
            continue
        r = kernels.primitive(r)
        if max(r) & lowmask == 0:
            return [{0: 1}]
        store.append(r)
        store_key.append(max(r))
        update(len(store) - 1)
        rebuild_basis()

    return interreduce([store[g] for g in active], bound)


def interreduce(gb: list[dict], bound: BoundOrder) -> list[dict]:
    """Reduce every tail of a minimal Groebner basis; sorted by descending lead."""
    gb = sorted(gb, key=max, reverse=True)
    out = []
    for idx, g in enumerate(gb):
        others = _Basis(bound)
        for k, h in enumerate(gb):
            if k != idx:
                others.add(h)
        key = max(g)
        lead = {key: g[key]}
        tail = {k: c for k, c in g.items() if k != key}
        r, num, den, _ = others.reduce(tail, full=True)
        # g == lead + tail  ~  lead + r*den/num ; scale to integers
        combined = {k: c * num for k, c in lead.items()}
        for k, c in r.items():
            combined[k] = combined.get(k, 0) + c * den
        out.append(kernels.primitive({k: c for k, c in combined.items() if c}))
    return out


# -- public API -----------------------------------------------------------


def groebner_basis(gens, order: MonomialOrder = GREVLEX, budget=None) -> Ideal:
    """Reduced Groebner basis with monic elements, sorted by descending lead."""
    ideal = _coerce_ideal(gens)
    ring = ideal.ring
    budget = as_budget(budget)
    bound = order.bind(ring)
    gb = buchberger([to_engine(g, bound) for g in ideal], bound, budget)
    log.debug("groebner basis of %d generators: %d elements", len(ideal), len(gb))
    return Ideal(ring, [_monic_from_engine(g, bound, ring) for g in gb])


class Reducer:
    """Normal forms modulo a fixed Groebner basis."""

    def __init__(self, basis, order: MonomialOrder = GREVLEX):
        basis = _coerce_ideal(basis)
        self.ring = basis.ring
        self.order = order
        self.bound = order.bind(self.ring)
        self._basis = _Basis(self.bound)
        for g in basis:
            self._basis.add(kernels.primitive(to_engine(g, self.bound)))

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} is not {self.ring}")
        if not f:
            return f
        den = lcm(*(c.denominator for c in f.terms.values()))
        d = to_engine(f, self.bound)
        r, num, rden, _ = self._basis.reduce(d, full=True)
        return from_engine(r, self.bound, self.ring, Fraction(rden, num * den))

    def reduces_to_zero(self, f: Polynomial) -> bool:
        return not self.normal_form(f)


def normal_form(f: Polynomial, basis, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by a Groebner basis for ``order``."""
    if not f:
        return f
    return Reducer(basis, order).normal_form(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    m = tuple(max(a, b) for a, b in zip(mf, mg))
    uf = tuple(a - b for a, b in zip(m, mf))
    ug = tuple(a - b for a, b in zip(m, mg))
    return f.mul_monomial(uf, 1 / cf) - g.mul_monomial(ug, 1 / cg)


def is_groebner_basis(basis, order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = _coerce_ideal(basis)
    red = Reducer(basis, order)
    gens = list(basis)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not red.reduces_to_zero(s_polynomial(gens[i], gens[j], order)):
                return False
    return True
