"""JSON encoding of polynomials.

``{"vars": ["x0", ...], "terms": [{"num": "3", "den": "2", "exp": [2, 0]}, ...]}``
with terms in descending grevlex order and numbers as decimal strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .poly import Polynomial, Ring


class PolynomialFormatError(ValueError):
    pass


def polynomial_to_json(f: Polynomial) -> dict:
    return {
        "vars": list(f.ring.names),
        "terms": [
            {"num": str(c.numerator), "den": str(c.denominator), "exp": list(m)} for m, c in f.sorted_terms()
        ],
    }


def polynomial_from_json(obj, ring: Ring | None = None) -> Polynomial:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        names = obj["vars"]
        terms = obj["terms"]
    except (KeyError, TypeError):
        raise PolynomialFormatError("polynomial JSON needs 'vars' and 'terms'") from None
    own = Ring(names)
    acc: dict = {}
    for t in terms:
        try:
            num = int(t["num"])
            den = int(t.get("den", "1"))
            exp = tuple(int(e) for e in t["exp"])
        except (KeyError, TypeError, ValueError):
            raise PolynomialFormatError(f"malformed term {t!r}") from None
        if den <= 0:
            raise PolynomialFormatError(f"denominator must be positive in {t!r}")
        if len(exp) != own.nvars or min(exp, default=0) < 0:
            raise PolynomialFormatError(f"exponent vector {list(exp)} does not fit {names}")
        acc[exp] = acc.get(exp, 0) + Fraction(num, den)
    f = Polynomial(own, acc)
    return f.to_ring(ring) if ring is not None else f
