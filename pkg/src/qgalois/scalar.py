"""
Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored as coefficient vectors of length phi(n) over the power
basis 1, z, ..., z^(d-1), reduced modulo the n-th cyclotomic polynomial.
Coefficients are Python ints whenever possible and ``Fraction`` otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import ConfigurationError

__all__ = [
    "CyclotomicField",
    "CyclotomicScalar",
    "cyclotomic_polynomial",
    "lambda_pow",
]


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; coefficients low -> high
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ConfigurationError(f"cyclotomic order must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


# -- polynomial helpers over Q, lowest degree first ---------------------------

def _ptrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if not a or len(a) < len(b):
        return [], a
    lead = Fraction(b[-1])
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        c = a[-1] / lead
        k = len(a) - len(b)
        quo[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        a.pop()
        _ptrim(a)
    return quo, a


def _psub_mul(a: list, q: list, b: list) -> list:
    # a - q*b
    out = list(a) + [0] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _ptrim(out)


class CyclotomicField:
    """The field Q(zeta_n); instances are interned per order."""

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        if not isinstance(n, int) or n < 2:
            raise ConfigurationError(f"cyclotomic order must be an integer >= 2, got {n!r}")
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(n)
            cls._instances[n] = inst
        return inst

    def __getnewargs__(self):
        return (self.n,)

    def _setup(self, n: int) -> None:
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        d = len(self.phi) - 1
        self.degree = d
        # vectors of z^k for 0 <= k < max(2d - 1, n)
        table = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(max(2 * d - 1, n)):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(d):
                    vec[j] -= top * self.phi[j]
        self._powers = tuple(table)
        self.zero = CyclotomicScalar(self, (0,) * d)
        self.one = CyclotomicScalar(self, (1,) + (0,) * (d - 1))
        self._zeta_cache = tuple(
            CyclotomicScalar(self, self._powers[k]) for k in range(n)
        )

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (CyclotomicField, (self.n,))

    def zeta(self, k: int = 1) -> "CyclotomicScalar":
        """z^k with k taken modulo n."""
        return self._zeta_cache[k % self.n]

    def rational(self, x) -> "CyclotomicScalar":
        if isinstance(x, CyclotomicScalar):
            if x.field is not self:
                raise ConfigurationError(f"order mismatch: {x.field.n} vs {self.n}")
            return x
        if isinstance(x, bool) or not isinstance(x, Rational):
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        return CyclotomicScalar(self, (_norm(Fraction(x)) if not isinstance(x, int) else x,) + (0,) * (self.degree - 1))

    def from_coefficients(self, coeffs) -> "CyclotomicScalar":
        """Build the residue of sum coeffs[k] z^k, for any length of ``coeffs``."""
        d = self.degree
        acc = [0] * d
        for k, c in enumerate(coeffs):
            if c:
                k %= self.n
                for j, v in enumerate(self._powers[k]):
                    if v:
                        acc[j] += c * v
        return CyclotomicScalar(self, tuple(_norm(Fraction(c)) if not isinstance(c, int) else c for c in acc))


def lambda_pow(field: CyclotomicField, e: int, lambda_exponent: int = 1) -> "CyclotomicScalar":
    """lambda^e where lambda = z^lambda_exponent; e may be negative."""
    return field.zeta(lambda_exponent * e)


class CyclotomicScalar:
    """An immutable element of Q(zeta_n)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _other(self, other) -> "CyclotomicScalar | None":
        if isinstance(other, CyclotomicScalar):
            if other.field is not self.field:
                raise ConfigurationError(
                    f"order mismatch: {self.field.n} vs {other.field.n}"
                )
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.field.rational(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(
            self.field, tuple(_norm(a + b) for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(
            self.field, tuple(_norm(a - b) for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 1:
                return self
            return CyclotomicScalar(self.field, tuple(a * other for a in self.coeffs))
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        d = len(a)
        if d == 1:
            return CyclotomicScalar(self.field, (_norm(a[0] * b[0]),))
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        powers = self.field._powers
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                for j, v in enumerate(powers[k]):
                    if v:
                        out[j] += c * v
        return CyclotomicScalar(self.field, tuple(_norm(c) for c in out))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicScalar":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero in cyclotomic field")
        d = self.field.degree
        if d == 1 or not any(self.coeffs[1:]):
            c0 = Fraction(self.coeffs[0])
            return self.field.rational(1 / c0)
        # invariant: s_i * a == r_i (mod Phi)
        r0, r1 = [Fraction(c) for c in self.field.phi], _ptrim([Fraction(c) for c in self.coeffs])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub_mul(s0, q, s1)
        c = r1[0]
        return self.field.from_coefficients([x / c for x in s1])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicScalar):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.field.n, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    # -- display ----------------------------------------------------------
    def as_root_multiple(self) -> tuple[Fraction, int] | None:
        """Return (c, k) with self == c * z^k (0 <= k < n, smallest k), if any."""
        if self.is_zero():
            return None
        powers = self.field._powers
        for k in range(self.field.n):
            v = powers[k]
            i = next(j for j, x in enumerate(v) if x)
            c = Fraction(self.coeffs[i]) / v[i]
            if all(self.coeffs[j] == c * v[j] for j in range(len(v))):
                return c, k
        return None

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"CyclotomicScalar(n={self.field.n}, {format_scalar(self)})"


def _fmt_rational(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_root_term(c: Fraction, k: int) -> str:
    if k == 0:
        return _fmt_rational(c)
    if c == 1:
        return f"z^{k}"
    if c == -1:
        return f"-z^{k}"
    return f"{_fmt_rational(c)}*z^{k}"


def format_scalar(s: CyclotomicScalar) -> str:
    """Canonical text for a scalar: ``c*z^k`` when possible, else a parenthesised sum."""
    if s.is_zero():
        return "0"
    rm = s.as_root_multiple()
    if rm is not None:
        return _fmt_root_term(*rm)
    parts = []
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        t = _fmt_root_term(Fraction(c), k)
        if parts:
            parts.append(f"- {t[1:]}" if t.startswith("-") else f"+ {t}")
        else:
            parts.append(t)
    return "(" + " ".join(parts) + ")"


def is_primitive_exponent(k: int, n: int) -> bool:
    return gcd(k, n) == 1
