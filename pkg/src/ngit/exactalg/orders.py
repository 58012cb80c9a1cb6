"""Monomial orders and their packed-integer encodings.

Every order is realised as an injective *additive* map from exponent vectors
to non-negative Python ints whose natural integer ordering is the monomial
order.  The integer is laid out in 32-bit fields: the high fields carry the
order's comparison digits, the low ``nvars`` fields carry the exponents
themselves.  Because the map is additive, multiplying monomials is adding
their codes, and the low fields give divisibility tests with guard bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .poly import Ring

FIELD_BITS = 32
FIELD = 1 << FIELD_BITS
FIELD_MASK = FIELD - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.

    A block order compares the ``block`` variables first (grevlex among them)
    and breaks ties by grevlex on the remaining variables, so it is an
    elimination order for ``block``.

    ``weights`` (pairs ``(name, w)`` with ``w > 0``) prepends a comparison of
    weighted degree.  On ideals that are homogeneous for those weights a
    weighted block order still eliminates ``block``, and Buchberger's
    algorithm then proceeds degree by degree.
    """

    kind: str = "grevlex"
    block: frozenset = frozenset()
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "block", frozenset(self.block))
        weights = tuple(sorted(dict(self.weights).items()))
        if any(int(w) != w or w <= 0 for _, w in weights):
            raise ValueError("order weights must be positive integers")
        object.__setattr__(self, "weights", weights)

    def bind(self, ring: Ring) -> "BoundOrder":
        return _bind(self, ring)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(names: Iterable[str], weights: Mapping[str, int] | None = None) -> MonomialOrder:
    return MonomialOrder("block", frozenset(names), tuple((weights or {}).items()))


class BoundOrder:
    """A monomial order specialised to a ring: encode/decode and field masks."""

    def __init__(self, order: MonomialOrder, ring: Ring):
        n = ring.nvars
        self.order = order
        self.ring = ring
        self.nvars = n
        if order.kind == "lex":
            rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        elif order.kind == "grevlex":
            rows = _grevlex_rows(list(range(n)), n)
        else:
            missing = order.block - set(ring.names)
            if missing:
                raise ValueError(f"block variables {sorted(missing)} not in {ring}")
            first = [i for i, name in enumerate(ring.names) if name in order.block]
            rest = [i for i, name in enumerate(ring.names) if name not in order.block]
            rows = _grevlex_rows(first, n) + _grevlex_rows(rest, n)
        if order.weights:
            w = dict(order.weights)
            missing = set(w) - set(ring.names)
            if missing:
                raise ValueError(f"weighted variables {sorted(missing)} not in {ring}")
            rows = [[int(w.get(name, 1)) for name in ring.names]] + rows
        self.rows = rows
        self.lowmask = (1 << (FIELD_BITS * n)) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(n))
        # code of x_i, from which every code is an integer combination
        self._var_codes = [self._encode_slow(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
        self._cache: dict = {}

    def _encode_slow(self, exps) -> int:
        code = 0
        for row in self.rows:
            digit = 0
            for w, e in zip(row, exps):
                if w:
                    digit += w * e
            code = (code << FIELD_BITS) | digit
        for e in reversed(exps):
            code = (code << FIELD_BITS) | e
        return code

    def encode(self, exps) -> int:
        code = self._cache.get(exps)
        if code is None:
            if exps and max(exps) > MAX_EXPONENT:
                raise OverflowError("exponent too large for packed monomial encoding")
            code = 0
            for c, e in zip(self._var_codes, exps):
                if e:
                    code += c * e
            if len(self._cache) < 1 << 16:
                self._cache[tuple(exps)] = code
        return code

    def decode(self, code: int) -> tuple:
        out = []
        for _ in range(self.nvars):
            out.append(code & FIELD_MASK)
            code >>= FIELD_BITS
        return tuple(out)

    def divides(self, a: int, b: int) -> bool:
        la, lb = a & self.lowmask, b & self.lowmask
        return ((lb | self.guard) - la) & self.guard == self.guard

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode(tuple(max(x, y) for x, y in zip(ea, eb)))

    def compare_key(self, exps):
        return self.encode(exps)


def _grevlex_rows(idx: list[int], n: int) -> list[list[int]]:
    """Degree row followed by (deg - e_v) rows for v in reversed(idx[1:])."""
    if not idx:
        return []
    deg = [1 if j in idx else 0 for j in range(n)]
    rows = [deg]
    for v in reversed(idx[1:]):
        rows.append([(1 if j in idx and j != v else 0) for j in range(n)])
    return rows


@lru_cache(maxsize=256)
def _bind(order: MonomialOrder, ring: Ring) -> BoundOrder:
    return BoundOrder(order, ring)
