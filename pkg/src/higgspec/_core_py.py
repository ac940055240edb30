"""Pure-Python term-dictionary kernels.

Same contract as the compiled module ``higgspec._core``: all functions
operate on plain dicts mapping exponent tuples to nonzero Fraction
coefficients and never mutate their arguments.
"""

from fractions import Fraction


def add_terms(a, b):
    out = dict(a)
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


def sub_terms(a, b):
    out = dict(a)
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


def scale_terms(a, c):
    if not c:
        return {}
    return {e: k * c for e, k in a.items()}


def mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
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


def submul_terms(r, c, e, b):
    """r - c * x^e * b, the inner step of division and remainder loops."""
    out = dict(r)
    for eb, cb in b.items():
        k = tuple(x + y for x, y in zip(e, eb))
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


def eval_terms(a, point):
    total = Fraction(0)
    for e, c in a.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v *= x**k
        total += v
    return total
