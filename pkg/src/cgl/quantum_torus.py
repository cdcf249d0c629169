"""Laurent polynomials in the quantum torus T_q and the embedding R -> T_q.

Monomials y^f are stored normal-ordered (ascending indices). With the
commutation matrix q (y_k y_j = q_{kj} y_j y_k),

    y^f y^g = c(f, g) y^{f+g},   c(f, g) = prod_{k > j} q_{kj}^{f_k g_j}.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping

from .checks import CheckList
from .errors import NonUnitInversion, ZeroElement
from .pbw import PBWPoly, _add_into, _as_rf, format_terms, revlex_key, substitute
from .scalars import ONE, MonomialScalar, RationalFunction


class Bicharacter:
    def __init__(self, qmat):
        self.N = len(qmat)
        self.q = tuple(tuple(r) for r in qmat)
        self._cache: dict = {}

    def __call__(self, f, g) -> RationalFunction:
        key = (f, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        c = Fraction(1)
        e = 0
        for k in range(self.N):
            if not f[k]:
                continue
            for j in range(k):
                if g[j]:
                    m = f[k] * g[j]
                    s = self.q[k][j]
                    c *= s.c**m
                    e += s.e * m
        val = RationalFunction.monomial(c, e)
        self._cache[key] = val
        return val

    def scalar(self, f, g) -> MonomialScalar:
        return self(f, g).as_monomial()


class LaurentPoly:
    __slots__ = ("chi", "terms")

    def __init__(self, chi: Bicharacter, terms: Mapping | None = None):
        self.chi = chi
        clean: dict = {}
        for f, c in (terms or {}).items():
            c = _as_rf(c)
            if not c.is_zero():
                _add_into(clean, tuple(f), c)
        self.terms = clean

    @classmethod
    def _wrap(cls, chi, terms):
        obj = object.__new__(cls)
        obj.chi, obj.terms = chi, terms
        return obj

    @property
    def N(self):
        return self.chi.N

    @classmethod
    def one(cls, chi):
        return cls._wrap(chi, {(0,) * chi.N: ONE})

    @classmethod
    def gen(cls, chi, i, power=1):
        f = [0] * chi.N
        f[i] = power
        return cls._wrap(chi, {tuple(f): ONE})

    @classmethod
    def monomial(cls, chi, f, c=ONE):
        c = _as_rf(c)
        return cls._wrap(chi, {} if c.is_zero() else {tuple(f): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(self.chi, (0,) * self.N, other)
        acc = dict(self.terms)
        for f, c in other.terms.items():
            _add_into(acc, f, c)
        return LaurentPoly._wrap(self.chi, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap(self.chi, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(self.chi, (0,) * self.N, other)
        return self + (-other)

    def scale(self, c):
        c = _as_rf(c)
        if c.is_zero():
            return LaurentPoly._wrap(self.chi, {})
        return LaurentPoly._wrap(self.chi, {f: v * c for f, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        out: dict = {}
        chi = self.chi
        for f, a in self.terms.items():
            for g, b in other.terms.items():
                h = tuple(x + y for x, y in zip(f, g))
                _add_into(out, h, a * b * chi(f, g))
        return LaurentPoly._wrap(chi, out)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = LaurentPoly.one(self.chi)
        for _ in range(n):
            acc = acc * self
        return acc

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit of T_q (a single nonzero term)."""
        if len(self.terms) != 1:
            raise NonUnitInversion(f"{self} is not a single Laurent term")
        (f, c), = self.terms.items()
        g = tuple(-v for v in f)
        # y^f y^-f = c(f, -f)
        return LaurentPoly._wrap(self.chi, {g: (c * self.chi(f, g)).inverse()})

    def support_vars(self):
        return {i for f in self.terms for i, v in enumerate(f) if v}

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self == LaurentPoly.monomial(self.chi, (0,) * self.N, other)
        return NotImplemented

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: revlex_key(t[0]), reverse=True)

    def __str__(self):
        return format_terms(self.sorted_terms(), "y")

    def __repr__(self):
        return f"LaurentPoly({self})"


def laurent_multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def ltq(a: LaurentPoly):
    """Reverse-lex maximal term as ``(coefficient, exponent)``."""
    if a.is_zero():
        raise ZeroElement("leading term of zero")
    f = max(a.terms, key=revlex_key)
    return a.terms[f], f


def torus_for(seq) -> Bicharacter:
    return Bicharacter(seq.qmat)


def image_of(a: PBWPoly, images, chi) -> LaurentPoly:
    """Image of a PBW element under x_i -> images[i]."""
    return substitute(a, images, lambda u, v: u * v, LaurentPoly.one(chi), lambda i: images[i].inverse())


def embed_x_to_y(P, seq, chi=None):
    """Images X_k in T_q: y_k if p(k) = -inf, else y_{p(k)}^{-1} (y_k + D_k)."""
    chi = chi or torus_for(seq)
    images = []
    for k in range(P.N):
        yk = LaurentPoly.gen(chi, k)
        pk = seq.p[k]
        if pk is None:
            images.append(yk)
            continue
        D = image_of(seq.d[k], images, chi)
        images.append(LaurentPoly.gen(chi, pk, -1) * (yk + D))
    return images


def pbw_monomials(N, max_degree):
    """All exponent vectors with total degree <= max_degree."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(N), d):
            f = [0] * N
            for i in combo:
                f[i] += 1
            out.append(tuple(f))
    return out


def verify_embedding(P, images, seq=None, max_degree: int = 4) -> CheckList:
    out = CheckList()
    N = P.N
    chi = images[0].chi
    for k in range(N):
        for j in range(k):
            rel = images[k] * images[j] - (images[j] * images[k]).scale(P.lam[k][j])
            rel = rel - image_of(P.d(k, j), images, chi)
            out.add(f"relation x{k + 1}x{j + 1} maps to 0", rel.is_zero(), "" if rel.is_zero() else str(rel))
    if seq is not None:
        for k in range(N):
            img = image_of(seq.y[k], images, chi)
            out.add(f"y{k + 1} maps to the torus generator", img == LaurentPoly.gen(chi, k))
    seen: dict = {}
    clash = []
    for f in pbw_monomials(N, max_degree):
        img = image_of(PBWPoly.monomial(f), images, chi)
        _, g = ltq(img)
        if g in seen:
            clash.append((seen[g], f))
        seen[g] = f
    out.add(
        f"leading terms separate PBW monomials of degree <= {max_degree}",
        not clash,
        "" if not clash else f"collisions {clash[:3]}",
    )
    return out


def graded_component(values, g):
    """Restrict (input exponent, output LaurentPoly) pairs to degree g."""
    out = []
    for f, a in values:
        h = tuple(x + y for x, y in zip(f, g))
        c = a.terms.get(h)
        out.append((f, LaurentPoly._wrap(a.chi, {} if c is None else {h: c})))
    return out


def graded_degrees(values):
    """All degrees g with a nonzero component, in increasing reverse-lex order."""
    gs = {tuple(h - x for h, x in zip(hh, f)) for f, a in values for hh in a.terms}
    return sorted(gs, key=revlex_key)


def decompose_exponent(f, seq):
    """f = g + sum_i c_i * (top of mu^-1(i))-bar with g in Delta(R)."""
    f = tuple(f)
    labels = sorted(set(seq.mu))
    c = []
    g = list(f)
    for i in labels:
        fiber = [k for k in range(seq.N) if seq.mu[k] == i]
        ci = min(f[k] for k in fiber)
        c.append(ci)
        for k in fiber:
            g[k] -= ci
    return tuple(g), tuple(c)


def in_delta(g, seq) -> bool:
    if any(v < 0 for v in g):
        return False
    for i in set(seq.mu):
        if all(g[k] != 0 for k in range(seq.N) if seq.mu[k] == i):
            return False
    return True


def top_bars(seq):
    """kbar of max mu^-1(i) for each level-set label i, in label order."""
    return [seq.kbar(max(k for k in range(seq.N) if seq.mu[k] == i)) for i in sorted(set(seq.mu))]


__all__ = [
    "Bicharacter",
    "LaurentPoly",
    "laurent_multiply",
    "ltq",
    "embed_x_to_y",
    "verify_embedding",
    "graded_component",
    "decompose_exponent",
    "in_delta",
]
