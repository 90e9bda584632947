"""
Normal-form arithmetic for the presented algebras

    g1 g2 = lambda g2 g1,   g1 invertible,   g2^n = R

with R one of 0, mu*g1^(mn) or mu*(g1^(mn) - 1).  The basis is g1^p g2^q with
p in Z and 0 <= q < n; elements are sparse maps (p, q) -> scalar.

Tensors over several legs use tuples of such keys.  Linear maps acting on
single legs are ``LegMap`` objects, so composites like (iota (x) phi)(Delta(a))
are written as ``apply_legs(Delta(a), [None, phi])``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .errors import ConfigurationError
from .scalar import CyclotomicField, CyclotomicScalar

Key = tuple  # (p, q)

ZERO_REDUCTION = "zero"
MU_REDUCTION = "mu"
MU_MINUS_ONE_REDUCTION = "mu_minus_one"
_REDUCTIONS = (ZERO_REDUCTION, MU_REDUCTION, MU_MINUS_ONE_REDUCTION)


class Presentation:
    """Relations g1 g2 = lambda g2 g1 and a reduction rule for g2^n."""

    def __init__(self, n: int, m: int, lambda_exponent: int = 1,
                 reduction: str = ZERO_REDUCTION, mu=0,
                 names: tuple[str, str] = ("a", "b")):
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ConfigurationError(f"n must be an integer >= 2, got {n!r}")
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise ConfigurationError(f"m must be an integer >= 1, got {m!r}")
        if not isinstance(lambda_exponent, int) or gcd(lambda_exponent, n) != 1:
            raise ConfigurationError(
                f"lambda exponent {lambda_exponent!r} must be coprime to n={n}")
        if gcd(m, n) != 1:
            raise ConfigurationError(
                f"m={m} and n={n} must be coprime (lambda^m has to stay primitive)")
        if reduction not in _REDUCTIONS:
            raise ConfigurationError(f"unknown reduction rule {reduction!r}")
        if len(names) != 2 or names[0] == names[1] or "z" in names:
            raise ConfigurationError(f"bad generator names {names!r}")
        self.n = n
        self.m = m
        self.lambda_exponent = lambda_exponent % n
        self.reduction = reduction
        self.field = CyclotomicField(n)
        self.mu = self.field.rational(mu) if not isinstance(mu, CyclotomicScalar) else self.field.rational(mu)
        if reduction == ZERO_REDUCTION and self.mu:
            raise ConfigurationError("the nilpotent presentation takes no mu")
        self.names = tuple(names)
        self._key = (n, m, self.lambda_exponent, reduction, self.mu, self.names)
        self._hash = hash(self._key)
        self._mono_cache: dict = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, Presentation) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        a, b = self.names
        return (f"Presentation(n={self.n}, m={self.m}, lambda=z^{self.lambda_exponent}, "
                f"{self.relation_text()})")

    def relation_text(self) -> str:
        a, b = self.names
        k = self.m * self.n
        body = f"{a}^{k}" if self.reduction == MU_REDUCTION else f"({a}^{k} - 1)"
        if self.reduction == ZERO_REDUCTION or not self.mu:
            tail = "0"
        elif self.mu == 1:
            tail = body.strip("()")
        else:
            tail = f"{self.mu}*{body}"
        return f"{a}*{b} = z^{self.lambda_exponent}*{b}*{a}, {b}^{self.n} = {tail}"

    def lam(self, e: int) -> CyclotomicScalar:
        """lambda^e."""
        return self.field.zeta(self.lambda_exponent * e)

    def with_names(self, names) -> "Presentation":
        return Presentation(self.n, self.m, self.lambda_exponent, self.reduction,
                            self.mu, names)

    # -- the monomial law --------------------------------------------------
    def mono_mul(self, k1: Key, k2: Key) -> tuple:
        """Product of basis monomials as a tuple of (key, coefficient)."""
        r = self._mono_cache.get((k1, k2))
        if r is not None:
            return r
        p, q = k1
        s_p, s = k2
        c = self.lam(-q * s_p)
        e = q + s
        if e < self.n:
            r = (((p + s_p, e), c),)
        elif self.reduction == ZERO_REDUCTION or not self.mu:
            r = ()
        else:
            c = c * self.mu
            top = (p + s_p + self.m * self.n, e - self.n)
            if self.reduction == MU_REDUCTION:
                r = ((top, c),)
            else:
                r = ((top, c), ((p + s_p, e - self.n), -c))
        self._mono_cache[(k1, k2)] = r
        return r

    def one(self) -> "Element":
        return Element(self, {(0, 0): self.field.one})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen1(self, p: int = 1) -> "Element":
        return Element(self, {(p, 0): self.field.one})

    def gen2(self) -> "Element":
        return Element(self, {(0, 1): self.field.one})

    def monomial(self, p: int, q: int = 0, coef=1) -> "Element":
        if not 0 <= q < self.n:
            raise ValueError(f"exponent of {self.names[1]} must lie in [0, {self.n})")
        c = self.field.rational(coef)
        return Element(self, {(p, q): c} if c else {})

    def scalar(self, c) -> "Element":
        c = self.field.rational(c)
        return Element(self, {(0, 0): c} if c else {})


def quantum_group_presentation(n: int, m: int, lambda_exponent: int = 1,
                               names=("a", "b")) -> Presentation:
    """a b = lambda b a, b^n = 0."""
    return Presentation(n, m, lambda_exponent, ZERO_REDUCTION, 0, names)


def galois_presentation(n: int, m: int, mu, lambda_exponent: int = 1,
                        names=("x", "y")) -> Presentation:
    """x y = lambda y x, y^n = mu x^(mn)."""
    return Presentation(n, m, lambda_exponent, MU_REDUCTION, mu, names)


def reflected_presentation(n: int, m: int, mu, lambda_exponent: int = 1,
                           names=("u", "w")) -> Presentation:
    """u w = lambda w u, w^n = mu (u^(mn) - 1)."""
    return Presentation(n, m, lambda_exponent, MU_MINUS_ONE_REDUCTION, mu, names)


def _coerce_scalar(field: CyclotomicField, c) -> CyclotomicScalar | None:
    if isinstance(c, CyclotomicScalar):
        return field.rational(c)
    if isinstance(c, Rational) and not isinstance(c, bool):
        return field.rational(c)
    return None


def _acc(d: dict, k, c) -> None:
    v = d.get(k)
    if v is None:
        d[k] = c
    else:
        v = v + c
        if v:
            d[k] = v
        else:
            del d[k]


class Element:
    """A finite linear combination of normal-form monomials."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: dict | None = None):
        self.pres = pres
        self.terms = terms if terms is not None else {}

    @classmethod
    def from_terms(cls, pres: Presentation, terms) -> "Element":
        d: dict = {}
        for (p, q), c in (terms.items() if isinstance(terms, dict) else terms):
            if not 0 <= q < pres.n:
                raise ValueError(f"exponent {q} out of range [0, {pres.n})")
            c = pres.field.rational(c)
            if c:
                _acc(d, (p, q), c)
        return cls(pres, d)

    def _check(self, other: "Element") -> None:
        if self.pres != other.pres:
            raise ConfigurationError("elements live in different presentations")

    def items(self) -> list:
        return sorted(self.terms.items())

    def coefficient(self, p: int, q: int = 0) -> CyclotomicScalar:
        return self.terms.get((p, q), self.pres.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        if not isinstance(other, Element):
            c = _coerce_scalar(self.pres.field, other)
            if c is None:
                return NotImplemented
            other = self.pres.scalar(c)
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            _acc(d, k, c)
        return Element(self.pres, d)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            c = _coerce_scalar(self.pres.field, other)
            if c is None:
                return NotImplemented
            other = self.pres.scalar(c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = self.pres.field.rational(c)
        if not c:
            return Element(self.pres, {})
        if c == 1:
            return self
        return Element(self.pres, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = _coerce_scalar(self.pres.field, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = _coerce_scalar(self.pres.field, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __truediv__(self, other):
        c = _coerce_scalar(self.pres.field, other)
        if c is None:
            return NotImplemented
        return self.scale(c.inverse())

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        result = self.pres.one()
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_invertible_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        (p, q), = self.terms
        return q == 0

    def inverse(self) -> "Element":
        """Inverse of c*g1^p; other elements are treated as non-invertible."""
        if not self.is_invertible_monomial():
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        ((p, _), c), = self.terms.items()
        return Element(self.pres, {(-p, 0): c.inverse()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.pres == other.pres and self.terms == other.terms
        c = _coerce_scalar(self.pres.field, other) if isinstance(other, (Rational, CyclotomicScalar)) else None
        if c is None:
            return NotImplemented
        return self.terms == ({(0, 0): c} if c else {})

    __hash__ = None

    def map_monomials(self, fn: Callable[[Key], "Element"],
                      out: Presentation | None = None) -> "Element":
        """Linear extension of ``fn`` defined on basis keys."""
        d: dict = {}
        for k, c in self.terms.items():
            for k2, c2 in fn(k).terms.items():
                _acc(d, k2, c * c2)
        return Element(out or self.pres, d)

    def __str__(self) -> str:
        from .literals import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


def multiply(e1: Element, e2: Element) -> Element:
    """Product in normal form."""
    e1._check(e2)
    pres = e1.pres
    d: dict = {}
    mm = pres.mono_mul
    for k1, c1 in e1.terms.items():
        for k2, c2 in e2.terms.items():
            c12 = c1 * c2
            for k, c in mm(k1, k2):
                _acc(d, k, c12 * c)
    return Element(pres, d)


def opposite_multiply(e1: Element, e2: Element) -> Element:
    """The product of the opposite algebra: e1 . e2 = e2 e1."""
    return multiply(e2, e1)


# -- tensors -------------------------------------------------------------------

class Tensor:
    """Sparse element of a tensor product; keys are tuples of per-leg keys."""

    __slots__ = ("legs", "terms")

    def __init__(self, legs: Sequence[Presentation], terms: dict | None = None):
        self.legs = tuple(legs)
        self.terms = terms if terms is not None else {}

    @property
    def field(self) -> CyclotomicField:
        return self.legs[0].field

    def _check(self, other: "Tensor") -> None:
        if self.legs != other.legs:
            raise ConfigurationError("tensors have different leg structure")

    def items(self) -> list:
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            _acc(d, k, c)
        return Tensor(self.legs, d)

    def __neg__(self):
        return Tensor(self.legs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = self.field.rational(c)
        if not c:
            return Tensor(self.legs, {})
        if c == 1:
            return self
        return Tensor(self.legs, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Tensor):
            return tensor_multiply(self, other)
        c = _coerce_scalar(self.field, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = _coerce_scalar(self.field, other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    __hash__ = None

    def permute(self, order: Sequence[int]) -> "Tensor":
        """Reorder legs: new leg i is old leg order[i]."""
        legs = tuple(self.legs[i] for i in order)
        return Tensor(legs, {tuple(k[i] for i in order): c for k, c in self.terms.items()})

    def flip(self) -> "Tensor":
        return self.permute((1, 0))

    def to_element(self) -> Element:
        if len(self.legs) != 1:
            raise ValueError("only single-leg tensors convert to elements")
        return Element(self.legs[0], {k[0]: c for k, c in self.terms.items()})

    def __str__(self) -> str:
        from .literals import format_tensor
        return format_tensor(self)

    def __repr__(self) -> str:
        return f"Tensor({self})"


def as_tensor(e: Element) -> Tensor:
    return Tensor((e.pres,), {(k,): c for k, c in e.terms.items()})


def tensor(*factors: Element | Tensor) -> Tensor:
    """Outer tensor product."""
    legs: list = []
    terms = {(): None}
    for f in factors:
        t = as_tensor(f) if isinstance(f, Element) else f
        legs.extend(t.legs)
        new: dict = {}
        for k1, c1 in terms.items():
            for k2, c2 in t.terms.items():
                c = c2 if c1 is None else c1 * c2
                _acc(new, k1 + k2, c)
        terms = new
    if () in terms:
        terms = {}
    return Tensor(legs, terms)


def tensor_multiply(t1: Tensor, t2: Tensor, opposite: Sequence[bool] | None = None) -> Tensor:
    """Legwise product; legs flagged in ``opposite`` multiply in reversed order."""
    t1._check(t2)
    legs = t1.legs
    nlegs = len(legs)
    ops = tuple(opposite) if opposite is not None else (False,) * nlegs
    d: dict = {}
    for k1, c1 in t1.terms.items():
        for k2, c2 in t2.terms.items():
            partial = [((), c1 * c2)]
            for i in range(nlegs):
                a, b = (k2[i], k1[i]) if ops[i] else (k1[i], k2[i])
                prods = legs[i].mono_mul(a, b)
                if not prods:
                    partial = []
                    break
                partial = [(kk + (k,), cc * c) for kk, cc in partial for k, c in prods]
            for k, c in partial:
                _acc(d, k, c)
    return Tensor(legs, d)


def multiply_legs(t: Tensor, groups: Sequence[Sequence[int]]) -> Tensor:
    """Multiply together the legs listed in each group (left to right)."""
    out_legs = []
    for g in groups:
        pres = t.legs[g[0]]
        for i in g[1:]:
            if t.legs[i] != pres:
                raise ConfigurationError("cannot multiply legs of different algebras")
        out_legs.append(pres)
    d: dict = {}
    for k, c in t.terms.items():
        partial = [((), c)]
        for gi, g in enumerate(groups):
            pres = out_legs[gi]
            cur = [(k[g[0]], pres.field.one)]
            for i in g[1:]:
                nxt = []
                for kk, cc in cur:
                    for k2, c2 in pres.mono_mul(kk, k[i]):
                        nxt.append((k2, cc * c2))
                cur = nxt
            partial = [(pk + (k2,), pc * c2) for pk, pc in partial for k2, c2 in cur]
            if not partial:
                break
        for kk, cc in partial:
            _acc(d, kk, cc)
    return Tensor(out_legs, d)


# -- linear maps on legs -------------------------------------------------------

class LegMap:
    """A linear map from one algebra into a tensor product of algebras.

    ``out_legs`` may be empty, in which case the map is a functional and
    images are dicts {(): scalar}.
    """

    __slots__ = ("out_legs", "_fn", "_cache", "name")

    def __init__(self, out_legs: Sequence[Presentation], fn: Callable[[Key], dict], name: str = ""):
        self.out_legs = tuple(out_legs)
        self._fn = fn
        self._cache: dict = {}
        self.name = name

    def image(self, key: Key) -> dict:
        r = self._cache.get(key)
        if r is None:
            r = self._fn(key)
            self._cache[key] = r
        return r

    @classmethod
    def from_element_map(cls, out: Presentation, fn: Callable[[Key], Element], name: str = "") -> "LegMap":
        return cls((out,), lambda k: {(k2,): c for k2, c in fn(k).terms.items()}, name)

    @classmethod
    def from_tensor_map(cls, out_legs, fn: Callable[[Key], Tensor], name: str = "") -> "LegMap":
        return cls(out_legs, lambda k: dict(fn(k).terms), name)

    @classmethod
    def functional(cls, fn: Callable[[Key], object], field: CyclotomicField, name: str = "") -> "LegMap":
        def f(k):
            v = fn(k)
            v = field.rational(v)
            return {(): v} if v else {}
        return cls((), f, name)

    def __call__(self, x):
        """Apply to an Element; returns Element, Tensor or scalar."""
        if isinstance(x, Element):
            d: dict = {}
            for k, c in x.terms.items():
                for k2, c2 in self.image(k).items():
                    _acc(d, k2, c * c2)
            return _from_dict(self.out_legs, d, x.pres.field)
        raise TypeError("LegMap applies to Element; use apply_legs for tensors")


def _from_dict(legs, d, field):
    if not legs:
        return d.get((), field.zero)
    if len(legs) == 1:
        return Element(legs[0], {k[0]: c for k, c in d.items()})
    return Tensor(legs, d)


def apply_legs(t: Tensor | Element, maps: Sequence[LegMap | None]):
    """(f_1 (x) ... (x) f_k)(t); ``None`` means the identity on that leg."""
    if isinstance(t, Element):
        t = as_tensor(t)
    if len(maps) != len(t.legs):
        raise ConfigurationError("one map per leg required")
    out_legs: list = []
    for i, f in enumerate(maps):
        out_legs.extend((t.legs[i],) if f is None else f.out_legs)
    d: dict = {}
    for k, c in t.terms.items():
        partial = [((), c)]
        for i, f in enumerate(maps):
            if f is None:
                partial = [(pk + (k[i],), pc) for pk, pc in partial]
            else:
                img = f.image(k[i])
                if not img:
                    partial = []
                    break
                partial = [(pk + k2, pc * c2) for pk, pc in partial for k2, c2 in img.items()]
        for kk, cc in partial:
            _acc(d, kk, cc)
    return _from_dict(out_legs, d, t.field)


def identity_map(pres: Presentation) -> LegMap:
    return LegMap((pres,), lambda k: {(k,): pres.field.one}, "id")


def scalar_part(x) -> CyclotomicScalar | None:
    """The scalar c when ``x`` equals c*1 (Element or Tensor), else None."""
    if isinstance(x, Element):
        if not x.terms:
            return x.pres.field.zero
        if set(x.terms) == {(0, 0)}:
            return x.terms[(0, 0)]
        return None
    unit = tuple((0, 0) for _ in x.legs)
    if not x.terms:
        return x.field.zero
    if set(x.terms) == {unit}:
        return x.terms[unit]
    return None


# -- windows -------------------------------------------------------------------

class Window:
    """The finite set {(p, q) : |p| <= P, 0 <= q < n} used for quantification."""

    __slots__ = ("P",)

    def __init__(self, P: int):
        if isinstance(P, bool) or not isinstance(P, int) or P < 0:
            raise ConfigurationError(f"window bound must be an integer >= 0, got {P!r}")
        self.P = P

    def __repr__(self) -> str:
        return f"Window({self.P})"

    def keys(self, n: int) -> list:
        return [(p, q) for p in range(-self.P, self.P + 1) for q in range(n)]

    def monomials(self, pres: Presentation) -> list:
        one = pres.field.one
        return [Element(pres, {k: one}) for k in self.keys(pres.n)]

    def pairs(self, n: int) -> Iterable:
        ks = self.keys(n)
        return iproduct(ks, ks)

    def grow(self, extra: int) -> "Window":
        return Window(self.P + extra)

    def __contains__(self, key) -> bool:
        return abs(key[0]) <= self.P


def key_element(pres: Presentation, key: Key, coef=None) -> Element:
    return Element(pres, {key: pres.field.one if coef is None else coef})


# -- q-calculus ----------------------------------------------------------------

def gaussian_binomial(k: int, j: int, q):
    """[k choose j]_q by the Pascal rule [k,j] = [k-1,j-1] + q^j [k-1,j]."""
    if not (isinstance(k, int) and isinstance(j, int)) or k < 0 or not 0 <= j <= k:
        raise ValueError(f"need 0 <= j <= k, got k={k}, j={j}")
    return _gauss(k, j, q)


@lru_cache(maxsize=4096)
def _gauss(k: int, j: int, q):
    if j == 0 or j == k:
        return q ** 0 if not isinstance(q, (int, Fraction)) else 1
    return _gauss(k - 1, j - 1, q) + (q ** j) * _gauss(k - 1, j, q)


def q_integer(k: int, q):
    """[k]_q = 1 + q + ... + q^(k-1)."""
    return gaussian_binomial(k, 1, q) if k >= 1 else q * 0
