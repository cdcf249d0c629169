"""PBW-basis arithmetic for iterated Ore extensions.

Elements are finite sums of normal-ordered monomials x^f = x_1^{f_1} ... x_N^{f_N}
(indices ascending left to right). Negative exponents are allowed on the
variables of ``mask``, which models a localization at those generators.

Internally indices are 0-based.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BoundExceeded, UndefinedInverseRewrite, ZeroElement
from .scalars import ONE, ZERO, MonomialScalar, RationalFunction

Exp = tuple


def revlex_key(f):
    """Sort key for the reverse lexicographic order: compare from the last slot."""
    return tuple(reversed(f))


def _as_rf(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, MonomialScalar):
        return c.to_rf()
    return RationalFunction.from_fraction(Fraction(c))


def _add_into(acc: dict, f, c):
    old = acc.get(f)
    if old is None:
        acc[f] = c
    else:
        s = old + c
        if s.is_zero():
            del acc[f]
        else:
            acc[f] = s


def format_monomial(f, var="x") -> str:
    parts = []
    for i, m in enumerate(f):
        if m == 1:
            parts.append(f"{var}{i + 1}")
        elif m != 0:
            parts.append(f"{var}{i + 1}^{m}")
    return "*".join(parts)


def format_terms(items, var="x") -> str:
    if not items:
        return "0"
    out = []
    for idx, (f, c) in enumerate(items):
        mono = format_monomial(f, var)
        cm = c.as_monomial()
        cs = str(c) if cm is None else str(cm)
        neg = False
        if cm is not None and cm.c < 0:
            neg = True
            cs = str(cm * -1)
        else:
            nz = [int(v) for v in c.num.coeffs() if v != 0]
            if len(nz) == 1 and nz[0] < 0:
                neg, cs = True, str(-c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            if " " in cs:
                cs = f"({cs})"
            body = f"{cs}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class PBWPoly:
    """Sparse element of an iterated Ore extension (or a localization of one).

    >>> x1 = PBWPoly.gen(2, 0)
    >>> str(x1 + x1)
    '2*x1'
    """

    __slots__ = ("N", "terms", "mask", "_hash")

    def __init__(self, N: int, terms: Mapping | None = None, mask: Iterable[int] = ()):
        self.N = N
        clean = {}
        mask = set(mask)
        for f, c in (terms or {}).items():
            f = tuple(int(v) for v in f)
            if len(f) != N:
                raise ValueError(f"exponent {f} has length {len(f)}, expected {N}")
            c = _as_rf(c)
            if c.is_zero():
                continue
            for i, v in enumerate(f):
                if v < 0:
                    mask.add(i)
            _add_into(clean, f, c)
        self.terms = clean
        self.mask = frozenset(mask)
        self._hash = None

    @classmethod
    def _wrap(cls, N, terms, mask=frozenset()):
        obj = object.__new__(cls)
        obj.N, obj.terms, obj._hash = N, terms, None
        m = set(mask)
        for f in terms:
            for i, v in enumerate(f):
                if v < 0:
                    m.add(i)
        obj.mask = frozenset(m)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, N):
        return cls._wrap(N, {})

    @classmethod
    def one(cls, N):
        return cls._wrap(N, {(0,) * N: ONE})

    @classmethod
    def constant(cls, N, c):
        c = _as_rf(c)
        return cls._wrap(N, {} if c.is_zero() else {(0,) * N: c})

    @classmethod
    def gen(cls, N, i, power=1):
        f = [0] * N
        f[i] = power
        return cls._wrap(N, {tuple(f): ONE})

    @classmethod
    def monomial(cls, f, c=ONE):
        c = _as_rf(c)
        return cls._wrap(len(f), {} if c.is_zero() else {tuple(f): c})

    # -- basic algebra ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        if other.N != self.N:
            raise ValueError("operands live in algebras of different length")
        return other

    def __add__(self, other):
        if not isinstance(other, PBWPoly):
            return self + PBWPoly.constant(self.N, other)
        self._check(other)
        acc = dict(self.terms)
        for f, c in other.terms.items():
            _add_into(acc, f, c)
        return PBWPoly._wrap(self.N, acc, self.mask | other.mask)

    __radd__ = __add__

    def __neg__(self):
        return PBWPoly._wrap(self.N, {f: -c for f, c in self.terms.items()}, self.mask)

    def __sub__(self, other):
        if not isinstance(other, PBWPoly):
            other = PBWPoly.constant(self.N, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PBWPoly":
        c = _as_rf(c)
        if c.is_zero():
            return PBWPoly._wrap(self.N, {}, self.mask)
        return PBWPoly._wrap(self.N, {f: v * c for f, v in self.terms.items()}, self.mask)

    def __eq__(self, other):
        if isinstance(other, PBWPoly):
            return self.N == other.N and self.terms == other.terms
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self == PBWPoly.constant(self.N, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, frozenset(self.terms.items())))
        return self._hash

    # -- inspection -------------------------------------------------------

    def sorted_terms(self):
        """Terms in decreasing reverse-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: revlex_key(t[0]), reverse=True)

    def coefficient(self, f) -> RationalFunction:
        return self.terms.get(tuple(f), ZERO)

    def support_vars(self) -> set:
        return {i for f in self.terms for i, v in enumerate(f) if v != 0}

    def max_var(self) -> int:
        """Largest variable index occurring, or -1 for constants."""
        s = self.support_vars()
        return max(s) if s else -1

    def total_degree(self) -> int:
        return max((sum(f) for f in self.terms), default=0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_terms(self.sorted_terms(), "x")

    def __repr__(self):
        return f"PBWPoly({self})"


def leading_term(a: PBWPoly):
    """The reverse-lex maximal term as ``(coefficient, exponent)``."""
    if a.is_zero():
        raise ZeroElement("leading term of zero")
    f = max(a.terms, key=revlex_key)
    return a.terms[f], f


# -- the normal-ordering engine ---------------------------------------------


class Engine:
    """Multiplication and sigma/delta application for one presentation.

    The core step multiplies a normal monomial by a single generator power
    x_i^{+-1} on the right, peeling the last factor of the monomial and using
    the exchange rules (m > i, D = delta_m(x_i), l = lambda_{mi}):

        x_m      x_i      = l x_i x_m + D
        x_m      x_i^-1   = l^-1 x_i^-1 x_m - l^-1 x_i^-1 D x_i^-1
        x_m^-1   x_i      = l^-1 x_i x_m^-1 - l^-1 x_m^-1 D x_m^-1
        x_m^-1   x_i^-1   = l x_i^-1 x_m^-1         (only when D = 0)
    """

    def __init__(self, P):
        self.P = P
        self.N = P.N
        self.lam_rf = [[P.lam[k][j].to_rf() for j in range(P.N)] for k in range(P.N)]
        self.delta = {kj: dict(p.terms) for kj, p in P.delta_items()}
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._delta_cache: dict = {}
        self._active: set = set()

    # raw dict helpers; keys are exponent tuples, values RationalFunction

    def _mul_gen(self, f, i, eps) -> dict:
        key = (f, i, eps)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise UndefinedInverseRewrite(
                f"rewriting x^{list(f)} * x{i + 1}^{eps} does not terminate"
            )
        self._active.add(key)
        try:
            res = self._mul_gen_uncached(f, i, eps)
        finally:
            self._active.discard(key)
        self._gen_cache[key] = res
        return res

    def _mul_gen_uncached(self, f, i, eps) -> dict:
        m = -1
        for t in range(self.N - 1, -1, -1):
            if f[t] != 0:
                m = t
                break
        if m <= i:
            g = list(f)
            g[i] += eps
            return {tuple(g): ONE}
        s = 1 if f[m] > 0 else -1
        fp = list(f)
        fp[m] -= s
        fp = tuple(fp)
        lam = self.lam_rf[m][i]
        D = self.delta.get((m, i), {})
        out: dict = {}
        if s == 1 and eps == 1:
            main_c = lam
            corr = self._mul_poly({fp: ONE}, D) if D else {}
        elif s == 1 and eps == -1:
            main_c = lam.inverse()
            if D:
                t = self._mul_gen(fp, i, -1)
                t = self._mul_poly(t, D)
                t = self._mul_poly_gen(t, i, -1)
                corr = _scaled(t, -main_c)
            else:
                corr = {}
        elif s == -1 and eps == 1:
            main_c = lam.inverse()
            if D:
                t = self._mul_poly({f: ONE}, D)
                t = self._mul_poly_gen(t, m, -1)
                corr = _scaled(t, -main_c)
            else:
                corr = {}
        else:
            if D:
                raise UndefinedInverseRewrite(
                    f"x{m + 1}^-1 x{i + 1}^-1 cannot be reordered: delta_{m + 1}(x{i + 1}) != 0"
                )
            main_c = lam
            corr = {}
        head = self._mul_gen(fp, i, eps)
        head = self._mul_poly_gen(head, m, s)
        for g, c in head.items():
            _add_into(out, g, c * main_c)
        for g, c in corr.items():
            _add_into(out, g, c)
        return out

    def _mul_poly_gen(self, a: dict, i, eps) -> dict:
        out: dict = {}
        for f, c in a.items():
            for g, d in self._mul_gen(f, i, eps).items():
                _add_into(out, g, c * d)
        return out

    def _mul_mono(self, f, g) -> dict:
        key = (f, g)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        cur = {f: ONE}
        for i, v in enumerate(g):
            eps = 1 if v > 0 else -1
            for _ in range(abs(v)):
                cur = self._mul_poly_gen(cur, i, eps)
        self._mono_cache[key] = cur
        return cur

    def _mul_poly(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for g, d in b.items():
            for f, c in a.items():
                cd = c * d
                for h, e in self._mul_mono(f, g).items():
                    _add_into(out, h, cd * e)
        return out

    def _sigma_factor(self, k, f, power=1) -> RationalFunction:
        c = ONE
        for j, v in enumerate(f):
            if v:
                c = c * self.lam_rf[k][j] ** (v * power)
        return c

    def _delta_mono(self, k, f) -> dict:
        key = (k, f)
        hit = self._delta_cache.get(key)
        if hit is not None:
            return hit
        m = -1
        for t in range(self.N - 1, -1, -1):
            if f[t] != 0:
                m = t
                break
        if m == -1:
            res: dict = {}
        else:
            if m >= k:
                raise ValueError(f"delta_{k + 1} applied to a monomial involving x{m + 1}")
            s = 1 if f[m] > 0 else -1
            fp = list(f)
            fp[m] -= s
            fp = tuple(fp)
            # delta(a v) = sigma(a) delta(v) + delta(a) v
            dv = self._delta_gen(k, m, s)
            res = {}
            if dv:
                sc = self._sigma_factor(k, fp)
                for g, c in self._mul_poly({fp: ONE}, dv).items():
                    _add_into(res, g, c * sc)
            da = self._delta_mono(k, fp)
            if da:
                for g, c in self._mul_poly_gen(da, m, s).items():
                    _add_into(res, g, c)
        self._delta_cache[key] = res
        return res

    def _delta_gen(self, k, v, s) -> dict:
        D = self.delta.get((k, v), {})
        if s == 1 or not D:
            return dict(D)
        # delta(v^-1) = -sigma(v)^-1 v^-1 delta(v) v^-1
        e = [0] * self.N
        e[v] = -1
        t = self._mul_poly({tuple(e): ONE}, D)
        t = self._mul_poly_gen(t, v, -1)
        return _scaled(t, -self.lam_rf[k][v].inverse())

    # public wrappers

    def multiply(self, a: PBWPoly, b: PBWPoly) -> PBWPoly:
        return PBWPoly._wrap(self.N, self._mul_poly(a.terms, b.terms), a.mask | b.mask)

    def delta_apply(self, k, a: PBWPoly) -> PBWPoly:
        out: dict = {}
        for f, c in a.terms.items():
            for g, d in self._delta_mono(k, f).items():
                _add_into(out, g, c * d)
        return PBWPoly._wrap(self.N, out, a.mask)

    def sigma_apply(self, k, a: PBWPoly, power=1) -> PBWPoly:
        return PBWPoly._wrap(
            self.N,
            {f: c * self._sigma_factor(k, f, power) for f, c in a.terms.items()},
            a.mask,
        )


def _scaled(d: dict, c) -> dict:
    return {f: v * c for f, v in d.items()}


def engine(P) -> Engine:
    """The (cached) engine attached to a presentation."""
    eng = P.__dict__.get("_engine")
    if eng is None:
        eng = Engine(P)
        object.__setattr__(P, "_engine", eng)
    return eng


def _ensure_recursion():
    if sys.getrecursionlimit() < 20000:
        sys.setrecursionlimit(20000)


_ensure_recursion()


def multiply(a: PBWPoly, b: PBWPoly, P) -> PBWPoly:
    """Normal-ordered product a*b in the algebra presented by P."""
    return engine(P).multiply(a, b)


def product(factors, P) -> PBWPoly:
    it = iter(factors)
    acc = next(it)
    for b in it:
        acc = multiply(acc, b, P)
    return acc


def power(a: PBWPoly, n: int, P) -> PBWPoly:
    acc = PBWPoly.one(a.N)
    for _ in range(n):
        acc = multiply(acc, a, P)
    return acc


def commutator(a, b, P, c=ONE) -> PBWPoly:
    """a*b - c*b*a."""
    return multiply(a, b, P) - multiply(b, a, P).scale(c)


def apply_sigma(k: int, a: PBWPoly, P, power: int = 1) -> PBWPoly:
    """sigma_k^power: scales x^f by prod_j lambda_{kj}^{f_j * power}."""
    return engine(P).sigma_apply(k, a, power)


def apply_delta(k: int, a: PBWPoly, P) -> PBWPoly:
    return engine(P).delta_apply(k, a)


def apply_delta_power(k: int, a: PBWPoly, P, m: int) -> PBWPoly:
    for _ in range(m):
        if a.is_zero():
            break
        a = apply_delta(k, a, P)
    return a


def apply_diagonal(psi, a: PBWPoly) -> PBWPoly:
    """Act by the diagonal torus element psi: x^f -> psi^f x^f."""
    rf = [p.to_rf() for p in psi]
    out = {}
    for f, c in a.terms.items():
        s = ONE
        for j, v in enumerate(f):
            if v:
                s = s * rf[j] ** v
        out[f] = c * s
    return PBWPoly._wrap(a.N, out, a.mask)


def nilpotency_index(k: int, j: int, P, bound: int) -> int:
    """Least m <= bound with delta_k^m(x_j) = 0."""
    a = PBWPoly.gen(P.N, j)
    for m in range(1, bound + 1):
        a = apply_delta(k, a, P)
        if a.is_zero():
            return m
    raise BoundExceeded(f"delta_{k + 1}^m(x{j + 1}) nonzero for all m <= {bound}")


def substitute(a: PBWPoly, images, mul, one, inverse=None):
    """Evaluate a at generator images using the ring operation ``mul``.

    ``images[i]`` is the image of x_i; negative exponents use ``inverse(i)``.
    Factors are multiplied in PBW order, left to right.
    """
    total = None
    for f, c in a.terms.items():
        acc = one
        for i, v in enumerate(f):
            if v == 0:
                continue
            base = images[i] if v > 0 else inverse(i)
            for _ in range(abs(v)):
                acc = mul(acc, base)
        term = acc.scale(c)
        total = term if total is None else total + term
    return total if total is not None else one.scale(ZERO)
