# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dictionary kernels.

Same contract as ``higgspec._core_py``: dicts mapping exponent tuples to
nonzero Fraction coefficients, arguments never mutated.  Coefficients stay
arbitrary-precision Python objects; the win is the merge and convolution
loop overhead.
"""

from fractions import Fraction

_ZERO = Fraction(0)


cdef inline tuple _eadd(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object e, c, prev, s
    for e, c in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = c
        else:
            s = prev + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object e, c, prev, s
    for e, c in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = -c
        else:
            s = prev - c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def scale_terms(dict a, object c):
    cdef dict out = {}
    cdef object e, k
    if not c:
        return out
    for e, k in a.items():
        out[e] = k * c
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef object ea, eb, ca, cb, prev, s
    cdef tuple e
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _eadd(<tuple>ea, <tuple>eb)
            prev = out.get(e)
            if prev is None:
                out[e] = ca * cb
            else:
                s = prev + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def submul_terms(dict r, object c, tuple e, dict b):
    """r - c * x^e * b, the inner step of division and remainder loops."""
    cdef dict out = dict(r)
    cdef object eb, cb, prev, s
    cdef tuple k
    for eb, cb in b.items():
        k = _eadd(e, <tuple>eb)
        prev = out.get(k)
        if prev is None:
            out[k] = -c * cb
        else:
            s = prev - c * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def eval_terms(dict a, tuple point):
    cdef object total = _ZERO
    cdef object e, c, v, x
    cdef Py_ssize_t i, n
    for e, c in a.items():
        v = c
        n = len(<tuple>e)
        for i in range(n):
            k = (<tuple>e)[i]
            if k:
                x = point[i]
                v = v * x**k
        total = total + v
    return total
