"""Hilbert-Mumford stability tests.

Torus actions are tested with the weight-polytope criterion (exact linear
programming for rank > 1).  Configurations of points on the projective line
carry the linearisation ``L^p ⊗ L_2^q`` on ``P^n × P²``, where ``SL(2)``
acts on the P² factor through ``C ⊕ C²`` with the base point at
``[1:1:0]``.
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class Verdict(str, enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"

    @property
    def semistable(self) -> bool:
        return self is not Verdict.UNSTABLE

    def __str__(self):
        return self.value


class ConfigurationSyntaxError(ValueError):
    pass


# -- torus hull test ----------------------------------------------------------


@dataclass(frozen=True)
class TorusWeightSet:
    rank: int
    weights: tuple

    def __init__(self, weights: Iterable, rank: int | None = None):
        ws = []
        for w in weights:
            if isinstance(w, (int, Fraction)):
                w = (w,)
            ws.append(tuple(Fraction(x) for x in w))
        if rank is None:
            if not ws:
                raise ValueError("cannot infer the rank of an empty weight list")
            rank = len(ws[0])
        if rank < 1:
            raise ValueError("torus rank must be at least 1")
        bad = [w for w in ws if len(w) != rank]
        if bad:
            raise ValueError(f"weight vectors {bad} do not have length {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "weights", tuple(ws))


def _cone_contains(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    """Is ``target`` a nonnegative combination of ``columns``?  (phase-1 simplex)"""
    m = len(target)
    k = len(columns)
    if k == 0:
        return all(t == 0 for t in target)
    # rows: sum_j col_j[i] * lam_j + art_i = |target_i|, signs flipped to keep rhs >= 0
    rows = []
    for i in range(m):
        sign = -1 if target[i] < 0 else 1
        row = [sign * Fraction(columns[j][i]) for j in range(k)]
        row += [Fraction(1 if r == i else 0) for r in range(m)]
        row.append(sign * Fraction(target[i]))
        rows.append(row)
    basis = [k + i for i in range(m)]
    ncols = k + m
    # objective: minimise the sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (ncols + 1)
    for row in rows:
        for j in range(ncols + 1):
            cost[j] -= row[j]
    for i in range(m):
        cost[k + i] += 1
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur for a bounded phase-1 objective
            break
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, rows[leave])]
        basis[leave] = enter
    return cost[-1] == 0


def _hull_contains_origin(points: Sequence[Sequence[Fraction]]) -> bool:
    cols = [tuple(p) + (Fraction(1),) for p in points]
    rank = len(points[0])
    return _cone_contains(cols, (Fraction(0),) * rank + (Fraction(1),))


def _origin_in_interior(points: Sequence[Sequence[Fraction]]) -> bool:
    rank = len(points[0])
    for k in range(rank):
        for s in (1, -1):
            e = tuple(Fraction(s if i == k else 0) for i in range(rank))
            if not _cone_contains(points, e):
                return False
    return True


def torus_status(w: TorusWeightSet, support: Iterable[int]) -> Verdict:
    """Stability of a point whose nonzero coordinates are ``support``.

    Stable iff 0 is interior to the convex hull of the supported weights
    (interior taken in the full weight space), strictly semistable iff 0 is
    on the hull but not interior.
    """
    support = sorted(set(support))
    if not support:
        raise ValueError("support must be nonempty")
    if support[0] < 0 or support[-1] >= len(w.weights):
        raise ValueError(f"support {support} out of range for {len(w.weights)} weights")
    pts = [w.weights[i] for i in support]
    if w.rank == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        if lo > 0 or hi < 0:
            return Verdict.UNSTABLE
        return Verdict.STABLE if lo < 0 < hi else Verdict.STRICTLY_SEMISTABLE
    if not _hull_contains_origin(pts):
        return Verdict.UNSTABLE
    return Verdict.STABLE if _origin_in_interior(pts) else Verdict.STRICTLY_SEMISTABLE


def _interval_verdict(lo: Fraction, hi: Fraction) -> Verdict:
    if lo > 0 or hi < 0:
        return Verdict.UNSTABLE
    return Verdict.STABLE if lo < 0 < hi else Verdict.STRICTLY_SEMISTABLE


# -- points on the projective line ------------------------------------------


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A point ``[a:b]`` of P¹ in canonical form (``b = 1`` or ``[1:0]``)."""

    a: Fraction
    b: Fraction

    def __init__(self, a, b=1):
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise ValueError("[0:0] is not a point of the projective line")
        if b == 0:
            a = Fraction(1)
        else:
            a, b = a / b, Fraction(1)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def __str__(self):
        return f"{self.a}:{self.b}"


INFINITY = ProjectivePoint(1, 0)
ZERO = ProjectivePoint(0, 1)


@dataclass(frozen=True)
class PointConfiguration:
    """An unordered multiset of points on P¹."""

    entries: tuple

    def __init__(self, entries: Mapping[ProjectivePoint, int] | Iterable):
        counts: Counter = Counter()
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if isinstance(item, ProjectivePoint):
                pt, m = item, 1
            else:
                pt, m = item
                if not isinstance(pt, ProjectivePoint):
                    pt = ProjectivePoint(*pt)
            if int(m) != m or m < 1:
                raise ValueError(f"multiplicity {m} is not a positive integer")
            counts[pt] += int(m)
        if not counts:
            raise ValueError("a configuration needs at least one point")
        object.__setattr__(self, "entries", tuple(sorted(counts.items())))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, pt: ProjectivePoint) -> int:
        return dict(self.entries).get(pt, 0)

    def max_multiplicity(self) -> int:
        return max(m for _, m in self.entries)

    def support(self) -> list[ProjectivePoint]:
        return [pt for pt, _ in self.entries]

    def __str__(self):
        return ",".join(f"{pt}^{m}" for pt, m in self.entries)

    def to_json(self) -> dict:
        return {"points": [{"a": str(pt.a), "b": str(pt.b), "mult": m} for pt, m in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "PointConfiguration":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            pts = obj["points"] if isinstance(obj, dict) else obj
            return cls([((Fraction(p["a"]), Fraction(p["b"])), p.get("mult", 1)) for p in pts])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigurationSyntaxError(f"bad configuration JSON: {exc}") from None


_ENTRY = re.compile(r"^\s*([^:^\s]+)\s*:\s*([^:^\s]+)\s*(?:\^\s*(\d+))?\s*$")


def parse_configuration(text: str) -> PointConfiguration:
    """Parse ``"a:b^m,c:d^k"``; a missing ``^m`` means multiplicity one."""
    items = []
    for part in text.split(","):
        if not part.strip():
            continue
        match = _ENTRY.match(part)
        if not match:
            raise ConfigurationSyntaxError(f"cannot parse configuration entry {part.strip()!r}")
        a, b, m = match.groups()
        try:
            pt = ProjectivePoint(Fraction(a), Fraction(b))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationSyntaxError(f"bad point {part.strip()!r}: {exc}") from None
        m = int(m) if m is not None else 1
        if m < 1:
            raise ConfigurationSyntaxError(f"multiplicity must be positive in {part.strip()!r}")
        items.append((pt, m))
    if not items:
        raise ConfigurationSyntaxError("empty configuration")
    return PointConfiguration(items)


@dataclass(frozen=True)
class LinearizationPair:
    p: int
    q: int

    def __post_init__(self):
        if int(self.p) != self.p or int(self.q) != self.q or self.p < 1 or self.q < 1:
            raise ValueError("linearisation exponents must be positive integers")


def _lin(lin) -> LinearizationPair:
    return lin if isinstance(lin, LinearizationPair) else LinearizationPair(*lin)


# -- closed-form criteria ----------------------------------------------------


def destabilizing_threshold(n: int, lin) -> Fraction:
    """Coincidence count above which a configuration is unstable."""
    lin = _lin(lin)
    return Fraction(n, 2) + Fraction(lin.q, 2 * lin.p)


def config_status(c: PointConfiguration, lin) -> Verdict:
    lin = _lin(lin)
    n = c.n
    half = Fraction(n, 2)
    thr = destabilizing_threshold(n, lin)
    top = c.max_multiplicity()
    at_inf = c.multiplicity(INFINITY)
    if top > thr or at_inf > half:
        return Verdict.UNSTABLE
    if top < thr and at_inf < half:
        return Verdict.STABLE
    return Verdict.STRICTLY_SEMISTABLE


def g_status_binary_forms(c: PointConfiguration) -> Verdict:
    half = Fraction(c.n, 2)
    top = c.max_multiplicity()
    if top > half:
        return Verdict.UNSTABLE
    return Verdict.STABLE if top < half else Verdict.STRICTLY_SEMISTABLE


def boundary_unstable(n: int, lin) -> bool:
    """Is every point of the boundary divisor (P² line at infinity) unstable?"""
    lin = _lin(lin)
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * max(lin.p, lin.q) > lin.q + lin.p * n


# -- brute-force oracles ------------------------------------------------------


def _mobius_to_fixed_points(u: ProjectivePoint, v: ProjectivePoint):
    """Matrix g with g·u on [1:0] and g·v on [0:1] (inverse of columns u, v)."""
    a, c = u.a, u.b
    b, d = v.a, v.b
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def _apply(g, vec):
    return (g[0][0] * vec[0] + g[0][1] * vec[1], g[1][0] * vec[0] + g[1][1] * vec[1])


def _form_weights(points: Sequence[tuple[tuple, int]]) -> list[int]:
    """Weights ``n - 2i`` of the nonzero coefficients of prod (a E1 + b E2)^m."""
    coeffs = [Fraction(1)]
    for (a, b), m in points:
        for _ in range(m):
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c * a
                nxt[i + 1] += c * b
            coeffs = nxt
    n = len(coeffs) - 1
    return [n - 2 * i for i, c in enumerate(coeffs) if c]


def _p2_weights(vec, with_origin: bool) -> list[int]:
    out = [0] if with_origin else []
    if vec[0]:
        out.append(1)
    if vec[1]:
        out.append(-1)
    return out


def _fresh_points(taken: Iterable[ProjectivePoint], count: int) -> list[ProjectivePoint]:
    taken = set(taken)
    out = []
    k = 1
    while len(out) < count:
        pt = ProjectivePoint(k, 1)
        if pt not in taken:
            out.append(pt)
        k += 1
    return out


def _oracle_verdict(points, direction, lin, with_origin, candidates) -> Verdict:
    verdicts = []
    for u, v in itertools.permutations(candidates, 2):
        g = _mobius_to_fixed_points(u, v)
        moved = [(_apply(g, (pt.a, pt.b)), m) for pt, m in points]
        fw = _form_weights(moved)
        pw = _p2_weights(_apply(g, direction), with_origin)
        combined = TorusWeightSet([lin.p * a + lin.q * b for a in fw for b in pw])
        verdict = torus_status(combined, range(len(combined.weights)))
        if verdict is Verdict.UNSTABLE:
            return verdict
        verdicts.append(verdict)
    if Verdict.STRICTLY_SEMISTABLE in verdicts:
        return Verdict.STRICTLY_SEMISTABLE
    return Verdict.STABLE


def config_status_oracle(c: PointConfiguration, lin) -> Verdict:
    """Verdict by exhausting one-parameter subgroups with fixed points at
    configuration points, [1:0], [0:1] or a generic point.

    For each candidate the point is moved by an explicit Möbius matrix, the
    binary form is expanded, and the combined weights are hull-tested.
    """
    lin = _lin(lin)
    support = c.support()
    cands = list(dict.fromkeys(support + [INFINITY, ZERO]))
    cands += _fresh_points(cands, 1)
    return _oracle_verdict(c.entries, (Fraction(1), Fraction(0)), lin, True, cands)


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def boundary_unstable_oracle(n: int, lin) -> bool:
    """Exhaust multiplicity types of boundary points and hull-test each."""
    lin = _lin(lin)
    if n < 1:
        raise ValueError("n must be positive")
    for parts in _partitions(n):
        pts = _fresh_points([], len(parts) + 1)
        # the P² direction either coincides with one of the points or is fresh
        for hit in range(len(parts) + 1):
            direction = pts[hit] if hit < len(parts) else pts[-1]
            config = list(zip(pts[: len(parts)], parts))
            cands = list(dict.fromkeys(pts[: len(parts)] + [direction]))
            cands += _fresh_points(cands, 1)
            verdict = _oracle_verdict(config, (direction.a, direction.b), lin, False, cands)
            if verdict.semistable:
                return False
    return True


def example_weights(kind: str, n: int) -> TorusWeightSet:
    """Rank-one weights ``(w, ..., w, w')`` of the three linearisations on C^n."""
    table = {"plus": (3, 1), "zero": (2, 0), "minus": (1, -1)}
    try:
        w, last = table[kind]
    except KeyError:
        raise ValueError(f"unknown linearisation {kind!r}; use plus, zero or minus") from None
    return TorusWeightSet([w] * n + [last])


__all__ = [
    "ConfigurationSyntaxError",
    "INFINITY",
    "LinearizationPair",
    "PointConfiguration",
    "ProjectivePoint",
    "TorusWeightSet",
    "Verdict",
    "ZERO",
    "boundary_unstable",
    "boundary_unstable_oracle",
    "config_status",
    "config_status_oracle",
    "destabilizing_threshold",
    "example_weights",
    "g_status_binary_forms",
    "parse_configuration",
    "torus_status",
]
