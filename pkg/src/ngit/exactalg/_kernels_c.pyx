# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernels; same interface as ``_kernels_py``."""

from cpython.dict cimport PyDict_DelItem, PyDict_GetItem, PyDict_SetItem
from cpython.object cimport PyObject
from math import gcd

IMPLEMENTATION = "cython"


cpdef object content(dict f):
    cdef object g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


cpdef dict primitive(dict f):
    if not f:
        return f
    cdef object g = content(f)
    if f[max(f)] < 0:
        g = -g
    if g == 1:
        return f
    return {k: c // g for k, c in f.items()}


cpdef dict shift_scale(dict f, object shift, object scale):
    return {k + shift: c * scale for k, c in f.items()}


cpdef dict mul(dict f, dict g):
    cdef dict out = {}
    cdef object k, k1, k2, c1, c2
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            k = k1 + k2
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


cpdef dict spoly(dict f, object fkey, object flc, dict g, object gkey, object glc, object lcm_key):
    cdef object d = gcd(flc, glc)
    cdef object a = glc // d
    cdef object b = flc // d
    cdef object sf = lcm_key - fkey
    cdef object sg = lcm_key - gkey
    cdef dict out = {k + sf: c * a for k, c in f.items()}
    cdef object k, c, kk, v
    for k, c in g.items():
        kk = k + sg
        v = out.get(kk, 0) - c * b
        if v:
            out[kk] = v
        else:
            out.pop(kk, None)
    return out


cpdef tuple reduce(dict f, list lead_keys, list lead_lows, list polys, list lcs, object lowmask, object guard, bint full):
    cdef dict r = {}
    cdef object num = 1
    cdef object den = 1
    cdef Py_ssize_t steps = 0
    cdef Py_ssize_t nb = len(lead_keys)
    cdef Py_ssize_t j
    cdef object key, c, low, lc, d, a, b, shift, kk, nv, v, k, g
    cdef dict red
    cdef PyObject *cur
    while f:
        key = max(f)
        c = f[key]
        low = (key & lowmask) | guard
        j = 0
        while j < nb:
            if (low - <object>lead_lows[j]) & guard == guard:
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
                        f[k] = f[k] * a
                    for k in r:
                        r[k] = r[k] * a
                    num = num * a
            shift = key - lead_keys[j]
            red = <dict>polys[j]
            for k, v in red.items():
                kk = k + shift
                cur = PyDict_GetItem(f, kk)
                if cur is NULL:
                    PyDict_SetItem(f, kk, -(b * v))
                else:
                    nv = <object>cur - b * v
                    if nv:
                        PyDict_SetItem(f, kk, nv)
                    else:
                        PyDict_DelItem(f, kk)
            steps += 1
            if steps % 32 == 0:
                g = gcd(content(f), content(r)) if r else content(f)
                if g > 1:
                    for k in f:
                        f[k] = f[k] // g
                    for k in r:
                        r[k] = r[k] // g
                    den = den * g
        elif full:
            r[key] = c
            del f[key]
        else:
            r.update(f)
            break
    return r, num, den, steps
