"""
Hopf structure on the presented algebras with g2^n = 0 or g2^n = mu(g1^(mn) - 1):

    Delta(g1) = g1 (x) g1,   Delta(g2) = g2 (x) g1^m + 1 (x) g2,
    eps(g1) = 1, eps(g2) = 0,   S(g1) = g1^-1,   S(g2) = -g2 g1^-m.

The left integral, modular element, modular automorphism and scaling
constant are obtained by solving their defining identities on a finite
window and then re-checked on a larger one.
"""

from __future__ import annotations

from .errors import ConstructionError, VerificationError
from .linalg import LinearSystem
from .qalgebra import (
    MU_MINUS_ONE_REDUCTION, ZERO_REDUCTION, Element, LegMap, Presentation, Tensor,
    Window, apply_legs, key_element, multiply_legs, tensor, tensor_multiply,
)
from .report import Report


class HopfStructure:
    """Coproduct, counit, antipode and invariant data of A or C."""

    def __init__(self, pres: Presentation, radius: int | None = None):
        if pres.reduction not in (ZERO_REDUCTION, MU_MINUS_ONE_REDUCTION):
            raise ConstructionError(
                "a Hopf structure needs g2^n = 0 or g2^n = mu(g1^(mn) - 1)")
        self.pres = pres
        self.n, self.m = pres.n, pres.m
        self.field = pres.field
        self.legs2 = (pres, pres)
        # solving radius for the integral; the support has to sit well inside
        self.radius = radius if radius is not None else 2 * self.m * (self.n - 1) + 2
        one = pres.field.one
        g1, g2 = pres.gen1(), pres.gen2()
        self.delta_g1 = tensor(g1, g1)
        self.delta_g2 = tensor(g2, pres.gen1(self.m)) + tensor(pres.one(), g2)
        self.S_g1 = pres.gen1(-1)
        self.S_g2 = -(g2 * pres.gen1(-self.m))
        self._dg2_powers = [Tensor(self.legs2, {((0, 0), (0, 0)): one})]
        self._sg2_powers = [pres.one()]
        for _ in range(1, self.n):
            self._dg2_powers.append(self._dg2_powers[-1] * self.delta_g2)
            self._sg2_powers.append(self._sg2_powers[-1] * self.S_g2)

        self.coproduct_map = LegMap.from_tensor_map(self.legs2, self._delta_key, "Delta")
        self.counit_map = LegMap.functional(lambda k: 1 if k[1] == 0 else 0, self.field, "eps")
        self.antipode_map = LegMap.from_element_map(pres, self._S_key, "S")
        self.antipode_inv_map = LegMap.from_element_map(pres, self._S_inv_key, "S^-1")
        self._check_relations()

        self._phi: dict | None = None
        self._delta: Element | None = None
        self._tau = None
        self.phi_map = LegMap.functional(self._phi_key, self.field, "phi")
        self.psi_map = LegMap.functional(self._psi_key, self.field, "psi")
        self.sigma_map = LegMap.from_element_map(pres, self._sigma_key, "sigma")
        self.sigma_inv_map = LegMap.from_element_map(pres, self._sigma_inv_key, "sigma^-1")
        self.sigma_prime_map = LegMap.from_element_map(pres, self._sigma_prime_key, "sigma'")
        self.sigma_prime_inv_map = LegMap.from_element_map(
            pres, self._sigma_prime_inv_key, "sigma'^-1")
        self.S2_map = LegMap.from_element_map(
            pres, lambda k: self.antipode(self.antipode(key_element(pres, k))), "S^2")
        self.S_inv2_map = LegMap.from_element_map(
            pres, lambda k: self.antipode_inv(self.antipode_inv(key_element(pres, k))), "S^-2")

    # -- generator data --------------------------------------------------------
    def _check_relations(self) -> None:
        pres = self.pres
        lam = pres.lam(1)
        d1, d2 = self.delta_g1, self.delta_g2
        if d1 * d2 != (d2 * d1).scale(lam):
            raise ConstructionError("Delta(g1)Delta(g2) != lambda Delta(g2)Delta(g1)")
        rhs = self._reduction_rhs()
        d_rhs = Tensor(self.legs2, {})
        for k, c in rhs.terms.items():
            d_rhs = d_rhs + self._delta_key(k).scale(c)
        if self._dg2_powers[-1] * d2 != d_rhs:
            raise ConstructionError("Delta(g2)^n does not match Delta of the reduction")
        s1, s2 = self.S_g1, self.S_g2
        # S is an anti-homomorphism: S(g2)S(g1) = lambda S(g1)S(g2)
        if s2 * s1 != (s1 * s2).scale(lam):
            raise ConstructionError("antipode images violate the commutation relation")
        s_rhs = rhs.map_monomials(self._S_key)
        if self._sg2_powers[-1] * s2 != s_rhs:
            raise ConstructionError("S(g2)^n does not match S of the reduction")

    def _reduction_rhs(self) -> Element:
        pres = self.pres
        if pres.reduction == ZERO_REDUCTION:
            return pres.zero()
        k = pres.m * pres.n
        return (pres.gen1(k) - pres.one()).scale(pres.mu)

    def _delta_key(self, key) -> Tensor:
        p, q = key
        d = {}
        for ((i, j), (k, l)), c in self._dg2_powers[q].terms.items():
            d[((i + p, j), (k + p, l))] = c
        return Tensor(self.legs2, d)

    def _S_key(self, key) -> Element:
        p, q = key
        return self._sg2_powers[q] * self.pres.gen1(-p)

    def _S_inv_key(self, key) -> Element:
        p, q = key
        pre = (-p - self.m * q, q)
        img = self._S_key(pre)
        if set(img.terms) != {key}:
            raise VerificationError("antipode does not act monomially")
        return key_element(self.pres, pre, img.terms[key].inverse())

    # -- public maps -------------------------------------------------------------
    def coproduct(self, e: Element) -> Tensor:
        return self.coproduct_map(e)

    def counit(self, e: Element):
        return self.counit_map(e)

    def antipode(self, e: Element) -> Element:
        return self.antipode_map(e)

    def antipode_inv(self, e: Element) -> Element:
        return self.antipode_inv_map(e)

    def left_integral(self, e: Element):
        return self.phi_map(e)

    phi = left_integral

    def right_integral(self, e: Element):
        return self.psi_map(e)

    psi = right_integral

    def sigma(self, e: Element) -> Element:
        return self.sigma_map(e)

    def sigma_inv(self, e: Element) -> Element:
        return self.sigma_inv_map(e)

    def sigma_prime(self, e: Element) -> Element:
        return self.sigma_prime_map(e)

    # -- the left integral -------------------------------------------------------
    def _solve_phi(self) -> dict:
        pres = self.pres
        R, n = self.radius, self.n
        top = (0, n - 1)
        sys = LinearSystem(self.field)
        for p in range(-R, R + 1):
            for q in range(n):
                a = (p, q)
                rows: dict = {}
                for (g, h), c in self._delta_key(a).terms.items():
                    row = rows.setdefault(g, {})
                    row[h] = row.get(h, self.field.zero) + c
                unit = rows.setdefault((0, 0), {})
                unit[a] = unit.get(a, self.field.zero) - 1
                for g in sorted(rows):
                    sys.add(rows[g], 0)
        sys.add({top: 1}, 1)
        if sys.inconsistent:
            raise VerificationError("no left invariant functional with phi(g2^(n-1)) = 1")
        part, null = sys.solution()
        core = R - self.m * (n - 1)
        for vec in null:
            if any(abs(k[0]) <= core for k, c in vec.items() if c):
                raise VerificationError("left invariant functional not unique on the window")
        values = {k: c for k, c in part.items() if abs(k[0]) <= core and c}
        margin = core - 1
        if any(abs(k[0]) > margin for k in values):
            raise VerificationError("left integral support reaches the solving boundary")
        return values

    @property
    def phi_values(self) -> dict:
        """Nonzero values of the left integral on basis monomials."""
        if self._phi is None:
            self._phi = self._solve_phi()
        return self._phi

    def _phi_key(self, key):
        return self.phi_values.get(key, 0)

    def phi_closed_form(self, key) -> int:
        return 1 if key == (0, self.n - 1) else 0

    def _psi_key(self, key):
        return self.phi(self._S_key(key))

    # -- modular data ------------------------------------------------------------
    def _support_key(self):
        return min(self.phi_values)

    @property
    def modular_element(self) -> Element:
        """delta with (phi (x) iota)Delta(a) = phi(a) delta."""
        if self._delta is None:
            a0 = self._support_key()
            t = apply_legs(self._delta_key(a0), [self.phi_map, None])
            d = t.scale(self.phi_values[a0].inverse())
            if not d.is_invertible_monomial():
                raise VerificationError(f"modular element {d} is not invertible")
            self._delta = d
        return self._delta

    @property
    def scaling_constant(self):
        """tau with phi(S^2(a)) = tau phi(a)."""
        if self._tau is None:
            a0 = self._support_key()
            val = self.phi(self.antipode(self.antipode(key_element(self.pres, a0))))
            tau = val * self.phi_values[a0].inverse()
            if not tau:
                raise VerificationError("scaling constant vanishes")
            self._tau = tau
        return self._tau

    def _sigma_key(self, key) -> Element:
        """Solve phi(b sigma(a)) = phi(a b) for all b."""
        pres = self.pres
        n = self.n
        spread = self.m * (n - 1) + 1
        unknowns = [(r, s) for r in range(key[0] - spread, key[0] + spread + 1)
                    for s in range(n)]
        supp = list(self.phi_values)
        lo = min(k[0] for k in supp) - (key[0] + spread) - self.m * n
        hi = max(k[0] for k in supp) - (key[0] - spread) + self.m * n
        sys = LinearSystem(self.field)
        for pb in range(lo, hi + 1):
            for qb in range(n):
                b = (pb, qb)
                row = {}
                for u in unknowns:
                    v = 0
                    for k, c in pres.mono_mul(b, u):
                        ph = self.phi_values.get(k)
                        if ph is not None:
                            v = c * ph + v
                    if v:
                        row[u] = v
                rhs = 0
                for k, c in pres.mono_mul(key, b):
                    ph = self.phi_values.get(k)
                    if ph is not None:
                        rhs = c * ph + rhs
                if row or rhs:
                    sys.add(row, rhs)
        sys.variables.update(unknowns)
        part, null = sys.solution()
        if null:
            raise VerificationError(f"modular automorphism not determined at {key}")
        return Element(pres, dict(part))

    def _sigma_inv_key(self, key) -> Element:
        img = self._sigma_key(key)
        if set(img.terms) != {key}:
            raise VerificationError("modular automorphism is not diagonal")
        return key_element(self.pres, key, img.terms[key].inverse())

    def _sigma_prime_key(self, key) -> Element:
        d = self.modular_element
        return d * self.sigma_map(key_element(self.pres, key)) * d.inverse()

    def _sigma_prime_inv_key(self, key) -> Element:
        d = self.modular_element
        return self.sigma_inv_map(d.inverse() * key_element(self.pres, key) * d)

    def hat_delta_value(self, key):
        """The functional eps o sigma^-1 on a basis monomial."""
        return self.counit(self.sigma_inv_map(key_element(self.pres, key)))

    def psi_phi_delta_ratio(self):
        """The constant c with psi = c * phi(. delta)."""
        d = self.modular_element
        target = (-d.items()[0][0][0] + self._support_key()[0], self._support_key()[1])
        x = key_element(self.pres, target)
        val = self.phi(x * d)
        if not val:
            raise VerificationError("phi(. delta) vanishes at the expected support")
        return self.psi(x) * val.inverse()

    # -- T maps --------------------------------------------------------------------
    def T1(self, t: Tensor) -> Tensor:
        """a (x) b -> Delta(a)(1 (x) b)."""
        return multiply_legs(apply_legs(t, [self.coproduct_map, None]), [(0,), (1, 2)])

    def T1_inv(self, t: Tensor) -> Tensor:
        """a (x) b -> ((iota (x) S)Delta(a))(1 (x) b)."""
        d = apply_legs(t, [self.coproduct_map, None])
        d = apply_legs(d, [None, self.antipode_map, None])
        return multiply_legs(d, [(0,), (1, 2)])

    def T2(self, t: Tensor) -> Tensor:
        """a (x) b -> (a (x) 1)Delta(b)."""
        return multiply_legs(apply_legs(t, [None, self.coproduct_map]), [(0, 1), (2,)])

    def T2_inv(self, t: Tensor) -> Tensor:
        """a (x) b -> (a (x) 1)((S (x) iota)Delta(b))."""
        d = apply_legs(t, [None, self.coproduct_map])
        d = apply_legs(d, [None, self.antipode_map, None])
        return multiply_legs(d, [(0, 1), (2,)])

    def T3(self, t: Tensor) -> Tensor:
        """a (x) b -> Delta(a)(b (x) 1)."""
        d = apply_legs(t, [self.coproduct_map, None])
        return multiply_legs(d, [(0, 2), (1,)])

    def T3_inv(self, t: Tensor) -> Tensor:
        """p (x) q -> q_(2) (x) S^-1(q_(1)) p."""
        d = apply_legs(t, [None, self.coproduct_map])          # p, q1, q2
        d = apply_legs(d, [None, self.antipode_inv_map, None])
        return multiply_legs(d, [(2,), (1, 0)])

    def T4(self, t: Tensor) -> Tensor:
        """a (x) b -> (1 (x) a)Delta(b)."""
        d = apply_legs(t, [None, self.coproduct_map])          # a, b1, b2
        return multiply_legs(d, [(1,), (0, 2)])

    def T4_inv(self, t: Tensor) -> Tensor:
        """p (x) q -> q S^-1(p_(2)) (x) p_(1)."""
        d = apply_legs(t, [self.coproduct_map, None])          # p1, p2, q
        d = apply_legs(d, [None, self.antipode_inv_map, None])
        return multiply_legs(d, [(2, 1), (0,)])

    # -- presentation -------------------------------------------------------------
    def describe(self, report: Report, prefix: str = "") -> None:
        pres = self.pres
        g1, g2 = pres.names
        report.add_row(f"{prefix}phi support", ", ".join(
            f"{_mono(pres, k)}: {c}" for k, c in sorted(self.phi_values.items())))
        report.add_row(f"{prefix}delta", self.modular_element)
        report.add_row(f"{prefix}sigma({g1})", self.sigma(pres.gen1()))
        report.add_row(f"{prefix}sigma({g2})", self.sigma(pres.gen2()))
        report.add_row(f"{prefix}sigma'({g1})", self.sigma_prime(pres.gen1()))
        report.add_row(f"{prefix}sigma'({g2})", self.sigma_prime(pres.gen2()))
        report.add_row(f"{prefix}tau", self.scaling_constant)
        report.add_row(f"{prefix}psi / phi(. delta)", self.psi_phi_delta_ratio())


def _mono(pres, key) -> str:
    from .literals import monomial_text
    return monomial_text(pres, key)


def verify_hopf_axioms(h: HopfStructure, w: Window, report: Report | None = None,
                       prefix: str = "") -> Report:
    """Check the Hopf and integral axioms on every window monomial (pairs for
    the bilinear laws); identities involving the solved data use the window
    enlarged by 2."""
    pres = h.pres
    rep = report if report is not None else Report(
        f"Hopf axioms for {pres!r}", {"n": pres.n, "m": pres.m, "window": w.P})
    P = prefix
    keys = w.keys(pres.n)
    big = w.grow(2).keys(pres.n)
    one = pres.one()
    mono = {k: key_element(pres, k) for k in set(keys) | set(big)}
    D, S, Si, eps = h.coproduct_map, h.antipode_map, h.antipode_inv_map, h.counit_map

    for k in keys:
        a = mono[k]
        da = h.coproduct(a)
        rep.expect(P + "coassociativity", a, apply_legs(da, [D, None]), apply_legs(da, [None, D]))
        rep.expect(P + "counit-left", a, apply_legs(da, [eps, None]), a)
        rep.expect(P + "counit-right", a, apply_legs(da, [None, eps]), a)
        ea = one.scale(h.counit(a))
        rep.expect(P + "antipode-left", a,
                   multiply_legs(apply_legs(da, [S, None]), [(0, 1)]).to_element(), ea)
        rep.expect(P + "antipode-right", a,
                   multiply_legs(apply_legs(da, [None, S]), [(0, 1)]).to_element(), ea)
        rep.expect(P + "antipode-invertible", a, h.antipode(h.antipode_inv(a)), a)
        rep.expect(P + "antipode-invertible", a, h.antipode_inv(h.antipode(a)), a)

    for k1 in keys:
        a = mono[k1]
        for k2 in keys:
            b = mono[k2]
            t = tensor(a, b)
            ab = a * b
            rep.expect(P + "coproduct-homomorphism", (a, b), h.coproduct(ab),
                       h.coproduct(a) * h.coproduct(b))
            rep.expect(P + "antipode-antihomomorphism", (a, b), h.antipode(ab),
                       h.antipode(b) * h.antipode(a))
            rep.expect(P + "counit-homomorphism", (a, b), h.counit(ab),
                       h.counit(a) * h.counit(b))
            for name, T, Tinv in (("T1", h.T1, h.T1_inv), ("T2", h.T2, h.T2_inv),
                                  ("T3", h.T3, h.T3_inv), ("T4", h.T4, h.T4_inv)):
                rep.expect(P + f"{name}-bijective", t, T(Tinv(t)), t)
                rep.expect(P + f"{name}-bijective", t, Tinv(T(t)), t)
            rep.expect(P + "phi-kms", (a, b), h.phi(ab), h.phi(b * h.sigma(a)))
            rep.expect(P + "psi-kms", (a, b), h.psi(ab), h.psi(b * h.sigma_prime(a)))
            rep.expect(P + "sigma-automorphism", (a, b), h.sigma(ab), h.sigma(a) * h.sigma(b))

    d = h.modular_element
    tau = h.scaling_constant
    ratio = h.psi_phi_delta_ratio()
    rep.expect(P + "delta-grouplike", d, h.coproduct(d), tensor(d, d))
    rep.expect(P + "delta-grouplike", d, h.counit(d), 1)
    for k in big:
        a = mono[k]
        da = h.coproduct(a)
        rep.expect(P + "phi-left-invariance", a, apply_legs(da, [None, h.phi_map]),
                   one.scale(h.phi(a)))
        rep.expect(P + "psi-right-invariance", a, apply_legs(da, [h.psi_map, None]),
                   one.scale(h.psi(a)))
        rep.expect(P + "modular-element", a, apply_legs(da, [h.phi_map, None]), d.scale(h.phi(a)))
        rep.expect(P + "psi-equals-phi-delta", a, h.psi(a), ratio * h.phi(a * d))
        rep.expect(P + "phi-sigma-invariance", a, h.phi(h.sigma(a)), h.phi(a))
        rep.expect(P + "scaling-constant", a, h.phi(h.antipode(h.antipode(a))), tau * h.phi(a))
        if pres.reduction == ZERO_REDUCTION:
            rep.expect(P + "phi-closed-form", a, h.phi(a), h.phi_closed_form(k))
    return rep
