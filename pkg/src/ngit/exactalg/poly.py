"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a :class:`Ring`, which is nothing more than an
ordered tuple of variable names.  Monomials are exponent tuples whose length
equals the number of ring variables; coefficients are :class:`fractions.Fraction`.
Zero coefficients are never stored.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple

Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


class Ring:
    """An ordered set of variable names over the rationals."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a variable of {self}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(name) for name in self.names]

    def monomial(self, exps: Iterable[int], coeff: Scalar = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        return Polynomial(self, {exps: Fraction(coeff)})

    def extend(self, names: Iterable[str], front: bool = False) -> "Ring":
        """Ring with extra variables appended (or prepended)."""
        names = tuple(names)
        return Ring(names + self.names if front else self.names + names)

    def drop(self, names: Iterable[str]) -> "Ring":
        names = set(names)
        return Ring(n for n in self.names if n not in names)

    def fresh_name(self, stem: str) -> str:
        """A variable name starting with ``stem`` that is unused in this ring."""
        if stem not in self:
            return stem
        k = 0
        while f"{stem}{k}" in self:
            k += 1
        return f"{stem}{k}"

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)


def _coerce(ring: Ring, other) -> "Polynomial":
    if isinstance(other, Polynomial):
        if other.ring != ring:
            raise RingMismatchError(f"{other.ring} is not {ring}")
        return other
    if isinstance(other, (int, Fraction)):
        return ring.constant(other)
    return NotImplemented


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar]):
        self.ring = ring
        clean = {}
        for exps, c in terms.items():
            if c:
                clean[tuple(exps)] = c if isinstance(c, Fraction) else Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        # terms already clean: Fraction coefficients, no zeros
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degree(self, weights: Iterable[int]) -> int:
        weights = tuple(weights)
        return max((sum(w * e for w, e in zip(weights, m)) for m in self._terms), default=-1)

    def is_homogeneous(self, weights: Iterable[int] | None = None) -> bool:
        weights = tuple(weights) if weights is not None else (1,) * self.ring.nvars
        degs = {sum(w * e for w, e in zip(weights, m)) for m in self._terms}
        return len(degs) <= 1

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self._terms), default=-1)

    def variables(self) -> list[str]:
        """Names of the variables that actually occur."""
        used = [False] * self.ring.nvars
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return [n for n, u in zip(self.ring.names, used) if u]

    def sorted_terms(self, order=None) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order (grevlex unless ``order`` is given)."""
        from .orders import GREVLEX

        key = (order or GREVLEX).bind(self.ring).encode
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None) -> tuple[Monomial, Fraction]:
        from .orders import GREVLEX

        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or GREVLEX).bind(self.ring).encode
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def leading_coefficient(self, order=None) -> Fraction:
        return self.leading_term(order)[1]

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(_fold(gcd, nums), _fold(lcm, dens))

    def primitive(self, order=None) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return self / c

    def monic(self, order=None) -> "Polynomial":
        if not self._terms:
            return self
        return self / self.leading_coefficient(order)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: c * other for m, c in self._terms.items()})
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            inv = 1 / Fraction(other)
            return Polynomial._raw(self.ring, {m: c * inv for m, c in self._terms.items()})
        if isinstance(other, Polynomial) and other.is_constant() and other:
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps: Monomial, coeff: Scalar = 1) -> "Polynomial":
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): c * coeff for m, c in self._terms.items()},
        )

    def exact_divide_monomial(self, exps: Monomial) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            q = tuple(a - b for a, b in zip(m, exps))
            if min(q, default=0) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial._raw(self.ring, out)

    def divide_by(self, d: "Polynomial") -> "Polynomial":
        """Exact division by ``d``; raises ValueError if ``d`` does not divide."""
        from .orders import GREVLEX

        order = GREVLEX.bind(self.ring)
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        dm, dc = d.leading_term(GREVLEX)
        rem = self
        quot: dict = {}
        while rem:
            m = max(rem._terms, key=order.encode)
            c = rem._terms[m]
            q = tuple(a - b for a, b in zip(m, dm))
            if min(q, default=0) < 0:
                raise ValueError("polynomial division is not exact")
            qc = c / dc
            quot[q] = qc
            rem = rem - d.mul_monomial(q, qc)
        return Polynomial._raw(self.ring, quot)

    def diff(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.ring, out)

    # -- change of ring / substitution ------------------------------------

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-express in ``ring`` by variable name; unused variables may be dropped."""
        if ring == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            if name in ring:
                pos.append((i, ring.index(name)))
        used = {i for i, _ in pos}
        n = ring.nvars
        out = {}
        for m, c in self._terms.items():
            if any(e for i, e in enumerate(m) if i not in used):
                missing = [self.ring.names[i] for i, e in enumerate(m) if e and i not in used]
                raise RingMismatchError(f"variables {missing} are not in {ring}")
            new = [0] * n
            for i, j in pos:
                new[j] = m[i]
            out[tuple(new)] = c
        return Polynomial._raw(ring, out)

    def substitute(self, images: Mapping[str, "Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Replace variables by polynomials (all in ``ring``); others map to themselves."""
        if ring is None:
            ring = next(iter(images.values())).ring if images else self.ring
        subs = []
        for name in self.ring.names:
            img = images.get(name)
            if img is None:
                img = ring.var(name)
            elif not isinstance(img, Polynomial):
                img = ring.constant(img)
            elif img.ring != ring:
                raise RingMismatchError(f"image of {name} lives in {img.ring}, not {ring}")
            subs.append(img)
        powers: list[dict[int, Polynomial]] = [{0: ring.one(), 1: s} for s in subs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                h = e // 2
                cache[e] = power(i, h) * power(i, e - h)
            return cache[e]

        total = ring.zero()
        for m, c in self._terms.items():
            term = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(point[name]) for name in self.ring.names]
        for m, c in self._terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v**e
            total += t
        return total

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.ring!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ring.names, m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def polynomial_from_terms(ring: Ring, terms: Iterable[tuple[Iterable[int], Scalar]]) -> Polynomial:
    acc: dict = {}
    for exps, c in terms:
        exps = tuple(exps)
        acc[exps] = acc.get(exps, 0) + Fraction(c)
    return Polynomial(ring, acc)


# -- parsing --------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` such as ``"x1^2 - 3/2*x0*x2"`` into a polynomial of ``ring``.

    Accepts ``+ - * / ^ **`` and parentheses; division only by nonzero constants.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval_node(tree.body, ring, text)


def _eval_node(node, ring: Ring, text: str) -> Polynomial:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.constant(node.value)
    if isinstance(node, ast.Name):
        if node.id not in ring:
            raise PolynomialSyntaxError(f"unknown variable {node.id!r} in {text!r}")
        return ring.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(node.operand, ring, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, ring, text)
        if isinstance(node.op, ast.Pow):
            exp = _eval_node(node.right, ring, text)
            if not exp.is_constant() or exp.constant_value().denominator != 1 or exp.constant_value() < 0:
                raise PolynomialSyntaxError(f"exponent must be a non-negative integer in {text!r}")
            return left ** int(exp.constant_value())
        right = _eval_node(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right:
                raise PolynomialSyntaxError(f"division only by nonzero constants in {text!r}")
            return left / right.constant_value()
    raise PolynomialSyntaxError(f"unsupported syntax in {text!r}")
