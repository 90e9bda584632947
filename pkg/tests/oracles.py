"""Independent reference computations for the tests.

Scalars are sympy polynomials in z reduced modulo the cyclotomic polynomial,
and products are computed by naive letter-by-letter rewriting of words, so
neither shares code with the package.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

Z = sp.Symbol("z")


def reduce(expr, n: int):
    return sp.rem(sp.expand(expr), sp.cyclotomic_poly(n, Z), Z)


def to_sympy(s) -> sp.Expr:
    """Package scalar -> sympy polynomial in z."""
    out = sp.Integer(0)
    for k, c in enumerate(s.coeffs):
        c = Fraction(c)
        out += sp.Rational(c.numerator, c.denominator) * Z ** k
    return out


def same(s, expr, n: int) -> bool:
    return sp.expand(reduce(to_sympy(s) - expr, n)) == 0


# -- words ------------------------------------------------------------------------
# letters: "g" = g1, "G" = g1^-1, "h" = g2.  Relation g1 g2 = lambda g2 g1, i.e.
# h g = lambda^-1 g h and h G = lambda G h.

def word(p: int, q: int) -> tuple:
    return ("g" * p if p >= 0 else "G" * -p) + "h" * q


class Rewriter:
    """Normal forms g1^p g2^q by rewriting; overflow g2^n -> mu*(g1^(mn) - shift)."""

    def __init__(self, n: int, m: int, lam_exp: int = 1, mu=0, kind: str = "zero"):
        self.n, self.m = n, m
        self.lam = Z ** (lam_exp % n)
        self.lam_inv = Z ** (-lam_exp % n)
        self.mu = sp.sympify(mu)
        self.kind = kind  # "zero" (A), "mu" (X) or "mu_minus_one" (C)

    def normal(self, w: str) -> dict:
        todo = [(w, sp.Integer(1))]
        out: dict = {}
        while todo:
            w, c = todo.pop()
            i = self._first_bad(w)
            if i is None:
                key = (w.count("g") - w.count("G"), w.count("h"))
                out[key] = out.get(key, 0) + c
                continue
            pair = w[i:i + 2]
            if pair in ("gG", "Gg"):
                todo.append((w[:i] + w[i + 2:], c))
            elif pair == "hg":
                todo.append((w[:i] + "gh" + w[i + 2:], c * self.lam_inv))
            elif pair == "hG":
                todo.append((w[:i] + "Gh" + w[i + 2:], c * self.lam))
            else:  # a run of n letters h
                j = w.index("h" * self.n)
                rest_l, rest_r = w[:j], w[j + self.n:]
                if self.kind == "zero" or self.mu == 0:
                    continue
                todo.append((rest_l + "g" * (self.m * self.n) + rest_r, c * self.mu))
                if self.kind == "mu_minus_one":
                    todo.append((rest_l + rest_r, -c * self.mu))
        return {k: reduce(v, self.n) for k, v in out.items()
                if sp.expand(reduce(v, self.n)) != 0}

    def _first_bad(self, w: str):
        for i in range(len(w) - 1):
            if w[i:i + 2] in ("gG", "Gg", "hg", "hG"):
                return i
        if "h" * self.n in w:
            return w.index("h" * self.n)
        return None

    def mul(self, k1, k2) -> dict:
        return self.normal(word(*k1) + word(*k2))


def element_matches(e, expected: dict, n: int) -> bool:
    """Package Element vs {key: sympy coefficient}."""
    got = {k: to_sympy(c) for k, c in e.terms.items()}
    keys = set(got) | set(expected)
    return all(sp.expand(reduce(got.get(k, 0) - expected.get(k, 0), n)) == 0 for k in keys)


def tensor_matches(t, expected: dict, n: int) -> bool:
    got = {k: to_sympy(c) for k, c in t.terms.items()}
    keys = set(got) | set(expected)
    return all(sp.expand(reduce(got.get(k, 0) - expected.get(k, 0), n)) == 0 for k in keys)


def tensor_mul(rws, t1: dict, t2: dict, n: int) -> dict:
    """Legwise product of two tensors given as {(key, key): coefficient}."""
    out: dict = {}
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            left = rws[0].mul(a1, a2)
            right = rws[1].mul(b1, b2)
            for ka, ca in left.items():
                for kb, cb in right.items():
                    k = (ka, kb)
                    out[k] = out.get(k, 0) + c1 * c2 * ca * cb
    return {k: reduce(v, n) for k, v in out.items() if sp.expand(reduce(v, n)) != 0}


def gaussian_binomial(k: int, j: int, q):
    """Pascal recurrence [k,j] = [k-1,j-1] + q^j [k-1,j]."""
    if j < 0 or j > k:
        return sp.Integer(0)
    if j == 0 or j == k:
        return sp.Integer(1)
    return sp.expand(gaussian_binomial(k - 1, j - 1, q) + q ** j * gaussian_binomial(k - 1, j, q))
