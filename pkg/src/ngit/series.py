"""Truncated integer power series in t and Poincaré series of the quotients
of binary forms (points on P¹) by the upper triangular unipotent group.

Every series is exact through its truncation degree and silent beyond it.
Rational factors are only ever of the form ``1/(1 - t^k)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class TruncatedIntegerSeries:
    coeffs: tuple
    trunc: int

    def __init__(self, coeffs: Iterable[int], trunc: int | None = None):
        cs = [int(c) for c in coeffs]
        if trunc is None:
            trunc = max(len(cs) - 1, 0)
        if trunc < 0:
            raise ValueError("truncation degree must be non-negative")
        cs = cs[: trunc + 1] + [0] * (trunc + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc", trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, c: int = 1) -> "TruncatedIntegerSeries":
        return cls([0] * k + [c], trunc)

    @classmethod
    def even_polynomial(cls, coeffs: Sequence[int], trunc: int) -> "TruncatedIntegerSeries":
        """``sum_j coeffs[j] t^{2j}``."""
        out = [0] * (trunc + 1)
        for j, c in enumerate(coeffs):
            if 2 * j <= trunc:
                out[2 * j] = c
        return cls(out, trunc)

    @classmethod
    def geometric(cls, k: int, trunc: int) -> "TruncatedIntegerSeries":
        """Expansion of ``1/(1 - t^k)``."""
        if k < 1:
            raise ValueError("geometric factor needs k >= 1")
        return cls([1 if i % k == 0 else 0 for i in range(trunc + 1)], trunc)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative degree")
        if i > self.trunc:
            raise IndexError(f"degree {i} is beyond the truncation {self.trunc}")
        return self.coeffs[i]

    def _align(self, other: "TruncatedIntegerSeries"):
        n = min(self.trunc, other.trunc)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedIntegerSeries([other], self.trunc)
        a, b, n = self._align(other)
        return TruncatedIntegerSeries([x + y for x, y in zip(a, b)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedIntegerSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedIntegerSeries([c * other for c in self.coeffs], self.trunc)
        a, b, n = self._align(other)
        out = [0] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return TruncatedIntegerSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedIntegerSeries":
        """Multiply by ``t^k``."""
        return TruncatedIntegerSeries([0] * k + list(self.coeffs), self.trunc)

    def divide_by_one_minus(self, k: int) -> "TruncatedIntegerSeries":
        return self * TruncatedIntegerSeries.geometric(k, self.trunc)

    def truncate(self, n: int) -> "TruncatedIntegerSeries":
        if n > self.trunc:
            raise ValueError(f"cannot extend a series truncated at {self.trunc} to {n}")
        return TruncatedIntegerSeries(self.coeffs, n)

    def degree(self) -> int:
        """Highest nonzero degree within the truncation (-1 for zero)."""
        for i in range(self.trunc, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def is_palindromic(self, top: int | None = None) -> bool:
        top = self.degree() if top is None else top
        if top > self.trunc:
            raise ValueError("palindromy window exceeds the truncation")
        return all(self.coeffs[i] == self.coeffs[top - i] for i in range(top + 1)) and not any(
            self.coeffs[top + 1 :]
        )

    def even_coefficients(self) -> list[int]:
        return list(self.coeffs[::2])

    def betti_table(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            text = "0"
        else:
            text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, body in parts[1:]:
                text += f" {sign} {body}"
        return f"{text} + O(t^{self.trunc + 1})"

    def to_json(self) -> dict:
        return {"trunc": self.trunc, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> "TruncatedIntegerSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            coeffs = obj["coeffs"]
            trunc = int(obj.get("trunc", len(coeffs) - 1))
            if any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs):
                raise TypeError("coefficients must be integers")
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise ValueError(f"bad series JSON: {exc}") from None
        return cls(coeffs, trunc)


Series = TruncatedIntegerSeries


def default_truncation(n: int) -> int:
    return 2 * n + 4


def _trunc(n: int, N: int | None) -> int:
    return default_truncation(n) if N is None else N


def _even_range(lo: int, hi: int, N: int) -> Series:
    """``t^{2lo} + t^{2(lo+1)} + ... + t^{2hi}``."""
    return Series.even_polynomial([1 if lo <= j <= hi else 0 for j in range(hi + 1)], N)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class StratumDatum:
    label: str
    codimension: int
    factor: Series

    def contribution(self) -> Series:
        return self.factor.shift(2 * self.codimension)


def strata(n: int, N: int | None = None) -> list[StratumDatum]:
    """Unstable strata of Y = P² × P^n with their codimensions."""
    N = _trunc(n, N)
    g = Series.geometric(2, N)
    out = [StratumDatum(f"S({j},0)", j, g) for j in range(n // 2 + 1, n + 1)]
    out += [StratumDatum(f"S({j},1)", j + 1, g) for j in range(n + 1)]
    return out


def equivariant_series_y(n: int, N: int | None = None) -> Series:
    N = _trunc(n, N)
    return (_even_range(0, 2, N) * _even_range(0, n, N)).divide_by_one_minus(4)


def equivariant_series_yss(n: int, N: int | None = None) -> Series:
    """Equivariant Poincaré series of the semistable locus, by stratification."""
    _require(n >= 1, "n must be positive")
    N = _trunc(n, N)
    _require(N >= 2 * n, f"truncation {N} is below 2n = {2 * n}")
    total = equivariant_series_y(n, N)
    for s in strata(n, N):
        total = total - s.contribution()
    return total


def _min_index(j: int, n: int) -> int:
    return min(j, n - 1 - j)


def poincare_quotient_odd(n: int, N: int | None = None) -> Series:
    """Betti numbers of the quotient for odd n: ``1 + floor(min(j, n-1-j)/2)`` in degree 2j."""
    _require(n >= 3 and n % 2 == 1, "poincare_quotient_odd needs odd n >= 3")
    N = _trunc(n, N)
    return Series.even_polynomial([1 + _min_index(j, n) // 2 for j in range(n)], N)


def poincare_partial_desing(n: int, N: int | None = None) -> Series:
    _require(n >= 4 and n % 2 == 0, "poincare_partial_desing needs even n >= 4")
    N = _trunc(n, N)
    blowup = _even_range(1, n - 1, N).divide_by_one_minus(4)
    exceptional = _even_range(0, (n - 2) // 2, N).shift(n).divide_by_one_minus(2)
    return equivariant_series_yss(n, N) + blowup - exceptional


def ip_correction(n: int, N: int | None = None) -> Series:
    _require(n >= 4 and n % 2 == 0, "ip_correction needs even n >= 4")
    N = _trunc(n, N)
    return Series.even_polynomial([0] + [-(-_min_index(j, n) // 2) for j in range(1, n - 1)], N)


def intersection_poincare(n: int, N: int | None = None) -> Series:
    """Intersection Poincaré polynomial for even n (partial desingularisation minus correction)."""
    _require(n >= 4 and n % 2 == 0, "intersection_poincare needs even n >= 4")
    N = _trunc(n, N)
    result = poincare_partial_desing(n, N) - ip_correction(n, N)
    closed = Series.even_polynomial([1 + _min_index(j, n) // 2 for j in range(n)], N)
    if result != closed:
        raise ArithmeticError(f"correction rule disagrees with the closed form at n={n}")
    return result


def poincare_stable_quotient(n: int, N: int | None = None) -> Series:
    _require(n >= 2, "poincare_stable_quotient needs n >= 2")
    N = _trunc(n, N)
    top = (n - 1) // 2 if n % 2 else (n - 2) // 2
    return _even_range(0, top, N)


def poincare_binary_quotient(n: int, N: int | None = None) -> Series:
    """Poincaré series of the reductive quotient of binary forms, by stratifying P^n."""
    _require(n >= 1 and n % 2 == 1, "poincare_binary_quotient needs odd n")
    N = _trunc(n, N)
    total = _even_range(0, n, N).divide_by_one_minus(4)
    g = Series.geometric(2, N)
    for j in range(n // 2 + 1, n + 1):
        total = total - g.shift(2 * (j - 1))
    return total


__all__ = [
    "Series",
    "StratumDatum",
    "TruncatedIntegerSeries",
    "default_truncation",
    "equivariant_series_y",
    "equivariant_series_yss",
    "intersection_poincare",
    "ip_correction",
    "poincare_binary_quotient",
    "poincare_partial_desing",
    "poincare_quotient_odd",
    "poincare_stable_quotient",
    "strata",
]
