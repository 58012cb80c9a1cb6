"""Pure-Python reduction kernels (fallback for the compiled ``_kernels_c``).

Polynomials here are ``dict[int, int]``: packed monomial code -> integer
coefficient (see :mod:`ngit.exactalg.orders`).  All reductions are
fraction-free; callers normalise content afterwards.
"""

from math import gcd

IMPLEMENTATION = "python"


def content(f):
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(f):
    """Divide by the content and make the leading coefficient positive."""
    if not f:
        return f
    g = content(f)
    if f[max(f)] < 0:
        g = -g
    if g == 1:
        return f
    return {k: c // g for k, c in f.items()}


def shift_scale(f, shift, scale):
    return {k + shift: c * scale for k, c in f.items()}


def mul(f, g):
    out = {}
    get = out.get
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def spoly(f, fkey, flc, g, gkey, glc, lcm_key):
    """glc'*m_f*f - flc'*m_g*g with the leading terms cancelling."""
    d = gcd(flc, glc)
    a, b = glc // d, flc // d
    sf, sg = lcm_key - fkey, lcm_key - gkey
    out = {k + sf: c * a for k, c in f.items()}
    get = out.get
    for k, c in g.items():
        kk = k + sg
        v = get(kk, 0) - c * b
        if v:
            out[kk] = v
        else:
            out.pop(kk, None)
    return out


def reduce(f, lead_keys, lead_lows, polys, lcs, lowmask, guard, full):
    """Reduce ``f`` (consumed) by the basis given by parallel lists.

    Returns ``(r, num, den, steps)`` where ``r * den == num * f`` modulo the
    basis ideal, i.e. the rational remainder of ``f`` is ``r * den / num``.
    With ``full`` false only the leading term is reduced.
    """
    r = {}
    num = 1
    den = 1
    steps = 0
    nb = len(lead_keys)
    while f:
        key = max(f)
        c = f[key]
        low = (key & lowmask) | guard
        j = 0
        while j < nb:
            if (low - lead_lows[j]) & guard == guard:
                break
            j += 1
        if j < nb:
            lc = lcs[j]
            d = gcd(c, lc)
            a = lc // d
            b = c // d
            if a != 1:
                if a == -1:
                    for k in f:
                        f[k] = -f[k]
                    for k in r:
                        r[k] = -r[k]
                    num = -num
                else:
                    for k in f:
                        f[k] *= a
                    for k in r:
                        r[k] *= a
                    num *= a
            shift = key - lead_keys[j]
            get = f.get
            for k, v in polys[j].items():
                kk = k + shift
                nv = get(kk, 0) - b * v
                if nv:
                    f[kk] = nv
                else:
                    del f[kk]
            steps += 1
            if steps % 32 == 0:
                g = gcd(content(f), content(r)) if r else content(f)
                if g > 1:
                    for k in f:
                        f[k] //= g
                    for k in r:
                        r[k] //= g
                    den *= g
        elif full:
            r[key] = c
            del f[key]
        else:
            r.update(f)
            break
    return r, num, den, steps
