"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is a map from exponent vectors to nonzero ``Fraction``
coefficients, kept canonical at all times so that mathematical equality of
polynomials coincides with structural equality of objects.  Leading terms,
normalisation and serialisation all use the graded lexicographic order.

Floating point is rejected everywhere; the scalar field is Q.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

from . import _kernels as _K
from .errors import DivisionFailure, ZeroPolynomial

_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficients must be Fraction or int, got {type(c).__name__}")


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Nonnegative gcd on Q: gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)."""
    if not a:
        return abs(b)
    if not b:
        return abs(a)
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def _grlex_key(e):
    return (sum(e), e)


class Poly:
    """Canonical multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} has length {len(e)}, expected {nvars}")
            if any((not isinstance(k, int)) or k < 0 for k in e):
                raise ValueError(f"exponents must be nonnegative integers: {e}")
            c = _coerce_coeff(c)
            if c:
                prev = clean.get(e)
                if prev is None:
                    clean[e] = c
                else:
                    s = prev + c
                    if s:
                        clean[e] = s
                    else:
                        del clean[e]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, nvars, terms):
        # internal: terms already canonical (kernel output)
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars, c):
        c = _coerce_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(nvars, {e: Fraction(1)})

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        return cls(nvars, {tuple(exps): c})

    # -- predicates and views ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, v):
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def leading_exponent(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_exponent()]

    def content(self) -> Fraction:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial)."""
        c = Fraction(0)
        for v in self.terms.values():
            c = frac_gcd(c, v)
            if c == 1:
                break
        return c

    def primitive(self):
        """Split off the signed rational content.

        Returns ``(content, prim)`` with ``content * prim == self``, ``prim``
        of content one and positive leading coefficient.
        """
        if self.is_zero():
            return Fraction(0), self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return c, self
        inv = 1 / c
        return c, Poly._raw(self.nvars, _K.scale_terms(self.terms, inv))

    # -- arithmetic ---------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return Poly._raw(self.nvars, _K.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return Poly._raw(self.nvars, _K.sub_terms(self.terms, other.terms))

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return Poly._raw(self.nvars, _K.sub_terms(other.terms, self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly._raw(self.nvars, _K.scale_terms(self.terms, Fraction(other)))
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return Poly._raw(self.nvars, _K.mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __neg__(self):
        return Poly._raw(self.nvars, _K.scale_terms(self.terms, Fraction(-1)))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def partial(self, v):
        """Partial derivative with respect to variable v."""
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                e2 = e[:v] + (k - 1,) + e[v + 1 :]
                out[e2] = out.get(e2, Fraction(0)) + c * k
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def evaluate(self, point):
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.nvars:
            raise ValueError("point length must equal nvars")
        return _K.eval_terms(self.terms, point)

    def lift(self, extra=1):
        """Adjoin `extra` fresh trailing variables (used for charpoly in lambda)."""
        pad = (0,) * extra
        return Poly._raw(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    # -- equality, ordering helpers ----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_text()!r})"

    # -- serialization ------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i + 1}")
                elif k > 1:
                    factors.append(f"x{i + 1}^{k}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, nvars: int) -> "Poly":
        terms = {}
        body = text.strip()
        if not body:
            raise ValueError("empty polynomial text")
        for raw_term in body.split("+"):
            raw_term = raw_term.strip()
            if not raw_term:
                raise ValueError(f"empty term in {text!r}")
            coeff = Fraction(1)
            exps = [0] * nvars
            for piece in raw_term.split("*"):
                piece = piece.strip()
                m = _VAR_RE.match(piece)
                if m:
                    idx = int(m.group(1)) - 1
                    if not 0 <= idx < nvars:
                        raise ValueError(f"variable x{idx + 1} out of range for nvars={nvars}")
                    exps[idx] += int(m.group(2) or 1)
                else:
                    coeff *= Fraction(piece)
            e = tuple(exps)
            terms[e] = terms.get(e, Fraction(0)) + coeff
        return cls(nvars, terms)

    def to_tree(self):
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": list(e), "num": c.numerator, "den": c.denominator}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_tree(cls, tree) -> "Poly":
        terms = {}
        for t in tree["terms"]:
            e = tuple(t["exps"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(t["num"], t["den"])
        return cls(tree["nvars"], terms)


# -- division ---------------------------------------------------------------


def exact_div(a: Poly, b: Poly) -> Poly:
    """Exact quotient a / b in the polynomial ring.

    Raises :class:`DivisionFailure` with the remainder witness when b does
    not divide a.  Reduction is by leading terms in graded-lex order, which
    is complete for exact division because the order is multiplicative.
    """
    if a.nvars != b.nvars:
        raise ValueError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return Poly.zero(a.nvars)
    eb = b.leading_exponent()
    cb = b.terms[eb]
    q = {}
    r = a.terms
    while r:
        er = max(r, key=_grlex_key)
        diff = tuple(x - y for x, y in zip(er, eb))
        if any(d < 0 for d in diff):
            raise DivisionFailure(Poly._raw(a.nvars, r))
        c = r[er] / cb
        q[diff] = c
        r = _K.submul_terms(r, c, diff, b.terms)
    return Poly._raw(a.nvars, q)


def divides(b: Poly, a: Poly) -> bool:
    try:
        exact_div(a, b)
        return True
    except DivisionFailure:
        return False


# -- gcd ---------------------------------------------------------------------


def _positive_leading(p: Poly) -> Poly:
    if not p.is_zero() and p.leading_coefficient() < 0:
        return -p
    return p


def _univariate_coeffs(p: Poly, v: int):
    """Coefficients of p viewed in the variable v: map v-degree -> Poly."""
    out = {}
    for e, c in p.terms.items():
        k = e[v]
        e2 = e[:v] + (0,) + e[v + 1 :]
        d = out.setdefault(k, {})
        d[e2] = d.get(e2, Fraction(0)) + c
    return {
        k: Poly._raw(p.nvars, {e: c for e, c in d.items() if c}) for k, d in out.items()
    }


def _content_in(p: Poly, v: int) -> Poly:
    coeffs = list(_univariate_coeffs(p, v).values())
    return reduce(poly_gcd, coeffs)


def _lead_in(p: Poly, v: int) -> Poly:
    d = p.degree_in(v)
    out = {}
    for e, c in p.terms.items():
        if e[v] == d:
            out[e[:v] + (0,) + e[v + 1 :]] = c
    return Poly._raw(p.nvars, out)


def _var_monomial(nvars, v, k):
    e = tuple(k if j == v else 0 for j in range(nvars))
    return Poly._raw(nvars, {e: Fraction(1)})


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b in the variable v."""
    db = b.degree_in(v)
    lb = _lead_in(b, v)
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        lr = _lead_in(r, v)
        shift = _var_monomial(a.nvars, v, r.degree_in(v) - db)
        r = lb * r - lr * shift * b
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd in Q[x1..xn], rational content included, positive leading coefficient.

    Primitive pseudo-remainder sequences on a common variable, with contents
    handled recursively.  gcd(0, 0) = 0.
    """
    if a.nvars != b.nvars:
        raise ValueError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if a.is_zero():
        return _positive_leading(b)
    if b.is_zero():
        return _positive_leading(a)
    if a.is_constant() or b.is_constant():
        return Poly.constant(a.nvars, frac_gcd(a.content(), b.content()))
    if a.terms == b.terms:
        return _positive_leading(a)
    if len(a.terms) == 1 and len(b.terms) == 1:
        (ea,) = a.terms
        (eb,) = b.terms
        e = tuple(min(x, y) for x, y in zip(ea, eb))
        return Poly._raw(a.nvars, {e: frac_gcd(a.terms[ea], b.terms[eb])})

    common = [
        v for v in range(a.nvars) if a.degree_in(v) > 0 and b.degree_in(v) > 0
    ]
    if not common:
        # a factor of both can only involve shared variables
        return Poly.constant(a.nvars, frac_gcd(a.content(), b.content()))
    v = min(common, key=lambda u: min(a.degree_in(u), b.degree_in(u)))

    ca = _content_in(a, v)
    cb = _content_in(b, v)
    pa = exact_div(a, ca)
    pb = exact_div(b, cb)
    cg = poly_gcd(ca, cb)

    f, g = (pa, pb) if pa.degree_in(v) >= pb.degree_in(v) else (pb, pa)
    while True:
        r = _prem(f, g, v)
        if r.is_zero():
            prim = exact_div(g, _content_in(g, v))
            break
        if r.degree_in(v) == 0:
            prim = Poly.one(a.nvars)
            break
        f, g = g, exact_div(r, _content_in(r, v))
    return _positive_leading(cg * prim)


def poly_gcd_many(polys) -> Poly:
    it = iter(polys)
    try:
        g = next(it)
    except StopIteration:
        raise ValueError("gcd of an empty collection")
    for p in it:
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero() and g.constant_value() == 1:
            break
    return _positive_leading(g)


# -- squarefree decomposition -------------------------------------------------


class SquarefreeDecomposition:
    """content * prod f_i^{m_i} with squarefree, pairwise coprime, primitive f_i.

    One factor per multiplicity class; callers needing a finer splitting
    declare their own component list.
    """

    __slots__ = ("content", "factors")

    def __init__(self, content: Fraction, factors):
        self.content = Fraction(content)
        self.factors = tuple((f, int(m)) for f, m in factors)

    def reconstruct(self, nvars=None) -> Poly:
        if self.factors:
            nvars = self.factors[0][0].nvars
        if nvars is None:
            raise ValueError("nvars needed to reconstruct a constant")
        out = Poly.constant(nvars, self.content)
        for f, m in self.factors:
            out = out * f**m
        return out

    def multiplicities(self):
        return tuple(m for _, m in self.factors)

    def __eq__(self, other):
        if not isinstance(other, SquarefreeDecomposition):
            return NotImplemented
        return self.content == other.content and self.factors == other.factors

    def __repr__(self):
        fs = ", ".join(f"({f.to_text()})^{m}" for f, m in self.factors)
        return f"SquarefreeDecomposition({self.content}, [{fs}])"


def _squarefree_cofactor(p: Poly) -> Poly:
    """gcd(p, dp/dx1, ..., dp/dxn) for primitive p; constant iff p squarefree."""
    g = p
    for v in range(p.nvars):
        if p.degree_in(v) > 0:
            g = poly_gcd(g, p.partial(v))
            if g.is_constant():
                break
    return g


def is_squarefree(f: Poly) -> bool:
    if f.is_zero():
        raise ZeroPolynomial("squarefree test of the zero polynomial")
    _, prim = f.primitive()
    if prim.is_constant():
        return True
    return _squarefree_cofactor(prim).is_constant()


def squarefree_decompose(f: Poly) -> SquarefreeDecomposition:
    """Multiplicity-class decomposition over characteristic zero.

    Gcd-based: with g = gcd(f, all partials) the quotient f/g is the
    squarefree part, and repeated gcds with g peel off the classes of equal
    multiplicity.  Reconstruction is exact by construction.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    content, prim = f.primitive()
    if prim.is_constant():
        return SquarefreeDecomposition(content, [])
    g = _squarefree_cofactor(prim)
    if g.is_constant():
        return SquarefreeDecomposition(content, [(prim, 1)])
    g = exact_div(g, Poly.constant(f.nvars, g.content()))
    w = exact_div(prim, g)
    _, w = w.primitive()

    factors = []
    i = 1
    while not w.is_constant():
        y = poly_gcd(w, g)
        _, y = y.primitive()
        fi = exact_div(w, y)
        _, fi = fi.primitive()
        if not fi.is_constant():
            factors.append((fi, i))
        w = y
        if not g.is_constant():
            g = exact_div(g, y)
            _, g = g.primitive()
        i += 1
    return SquarefreeDecomposition(content, factors)
