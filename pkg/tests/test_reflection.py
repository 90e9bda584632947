from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from qgalois.galois import GaloisObject
from qgalois.qalgebra import Window, key_element, tensor
from qgalois.reflection import (
    BElement, DualElement, HatXElement, Reflection, bracket_Ahat, construct_C, d_multiplier,
    dual_act, dual_eval, hat_delta, verify_bi_galois, verify_reflection,
)
from qgalois.report import Report


@pytest.fixture(scope="module")
def R31():
    return Reflection(GaloisObject(3, 1, 1))


def test_dual_basis(R31):
    R = R31
    G, A, n = R.G, R.G.A, 3
    assert dual_eval(R.F(0, n - 1), A.gen2() ** (n - 1)) == 1
    assert dual_eval(R.F(1, 0), A.gen1() * A.gen2()) == 0
    for k in Window(3).keys(n):
        a = key_element(A, k)
        assert dual_eval(R.F(0, n - 1), a) == G.hopf.left_integral(a)


def test_dual_product_on_grouplikes(R31):
    R = R31
    A = R.G.A
    for p in range(-2, 3):
        for r in range(-2, 3):
            prod = R.F(p, 0) * R.F(r, 0)
            for t in range(-3, 4):
                want = 1 if p == r == t else 0
                assert dual_eval(prod, A.gen1(t)) == want


def test_dual_actions(R31):
    R = R31
    G, X, m = R.G, R.G.X, 1
    d = d_multiplier(G.hopf)
    for p in range(-2, 3):
        assert dual_act(G, d, X.gen1(p)) == X.zero()
    assert dual_act(G, d, X.gen2()) == X.one()
    for s in range(-3, 4):
        for p, q in Window(2).keys(3):
            x = X.monomial(p, q)
            want = x if p == s - m * q else X.zero()
            assert dual_act(G, R.e(s), x) == want


def test_hat_delta(R31):
    R = R31
    G, X = R.G, R.G.X
    hd = hat_delta(G.hopf)
    assert dual_act(G, hd, X.one()) == X.one()
    assert G.sigma_X(dual_act(G, hd, X.gen1())) == X.gen1()
    assert G.sigma_X(dual_act(G, hd, X.gen2())) == X.gen2().scale(X.lam(1))


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (3, 2), (5, 2), (4, 3)])
def test_C_q_is_a_q_integer(n, m):
    R = Reflection(GaloisObject(n, m, 1))
    assert R.C_q[1] == 1
    for q in range(1, n):
        assert R.C_q[q] == R.C_q_closed_form(q)
        assert R.kappa(q) == R.kappa(q - 1) * R.C_q[q]


def test_psi_X_right_action_by_unit_functional(R31):
    R = R31
    G = R.G
    psi1 = HatXElement.from_form(G, G.X.one(), "psi_right")
    for w1 in (R.F(0, 0), R.F(2, 1), R.F(-1, 2) + R.F(0, 0).scale(3)):
        assert psi1.right(w1) == psi1.scale(dual_eval(w1, G.A.one()))


def test_forms_round_trip(R31):
    R = R31
    G = R.G
    for form in ("phi_right", "phi_left", "psi_right", "psi_left"):
        for k in Window(2).keys(3):
            x = key_element(G.X, k)
            w = HatXElement.from_form(G, x, form)
            assert HatXElement.from_form(G, w.representative(form), form) == w


def test_bracket_Ahat_trivial(R31):
    R = R31
    G = R.G
    phi = HatXElement.from_form(G, G.X.one(), "phi_right")
    assert not bracket_Ahat(phi, phi, G.hopf)


def test_bracket_B_facts(R31):
    R = R31
    G = R.G
    phi = HatXElement.from_form(G, G.X.one(), "phi_right")
    for k in Window(2).keys(3):
        x = key_element(G.X, k)
        w = HatXElement.from_form(G, x, "psi_right")
        assert R.phi_B_bracket(phi, w) == G.phi_X(x)
    for w1 in (R.E(0, 0), R.E(1, 2), R.E(-1, 1)):
        for w2 in (R.E(0, 0), R.E(2, 0), R.E(0, 2)):
            b = R.bracket_B(w1, w2)
            assert isinstance(b, BElement)
            assert b.counit() == w1(G.X.one()) * w2(G.X.one())
            assert R.S_B(b) == R.S_B_bracket(w1, w2)


def test_B_local_unit(R31):
    R = R31
    # g_0 + g_1 + g_-1 acts as the identity on e_-1, e_0, e_1 pieces of X^
    unit = BElement.basis(R, -1) + BElement.basis(R, 0) + BElement.basis(R, 1)
    for w in (R.E(0, 0), R.E(1, 1), R.E(-1, 2)):
        assert unit.act_hatx(w) == w


def test_construct_C(R31):
    G = R31.G
    C = construct_C(G)
    X, Cp = G.X, C.pres
    assert C.gamma(X.gen1()) == tensor(Cp.gen1(), X.gen1())
    assert C.gamma(X.one()) == tensor(Cp.one(), X.one())
    assert C.beta(Cp.gen1()) == tensor(X.gen1(), X.gen1(-1))
    assert C.galois_map(C.beta(Cp.gen1())) == tensor(Cp.gen1(), X.one())
    assert C.relation_holds() == (True, True)


def test_C_degenerates_when_mu_vanishes():
    R = Reflection(GaloisObject(3, 1, 0))
    Cp = R.C.pres
    assert Cp.gen2() ** 3 == Cp.zero()
    assert Cp.relation_text().endswith("w^3 = 0")


def test_pairing_constants(R31):
    R = R31
    z = R.field.zeta(1)
    assert R.pis == [1, 1, -z]


@pytest.mark.parametrize("n,m,mu", [(2, 1, 1), (3, 1, 1), (3, 1, 0)])
def test_reflection_and_bi_galois(n, m, mu):
    R = Reflection(GaloisObject(n, m, mu))
    rep = Report()
    verify_reflection(R, Window(2), rep)
    verify_bi_galois(R, Window(2), rep)
    assert rep.passed, rep.to_text()
    assert "phi_B-faithful" in rep and "C-B-pairing" in rep


def test_phi_B_is_consistent(R31):
    values, cases, bad = R31.phi_B_functional(2)
    assert cases > 0 and not bad
    n = R31.n
    assert all(v == 0 for (s, k), v in values.items() if k < n - 1)


def test_corrupted_bracket_detected():
    R = Reflection(GaloisObject(2, 1, 1))
    R.C_q = [0, R.field.rational(2)]  # wrong chain constant
    rep = verify_reflection(R, Window(1), Report())
    assert not rep.passed


# -- properties on the dual -----------------------------------------------------

@st.composite
def duals(draw, R):
    n = R.n
    w = DualElement(R.hopf)
    for _ in range(draw(st.integers(1, 3))):
        w = w + R.F(draw(st.integers(-3, 3)), draw(st.integers(0, n - 1))).scale(
            draw(st.integers(-2, 2)) or 1)
    return w


R52_ = Reflection(GaloisObject(5, 2, 1))


@settings(max_examples=25, deadline=None)
@given(duals(R52_), duals(R52_), duals(R52_))
def test_dual_algebra_laws(w1, w2, w3):
    assert (w1 * w2) * w3 == w1 * (w2 * w3)
    assert w1 * (w2 + w3) == w1 * w2 + w1 * w3


@settings(max_examples=25, deadline=None)
@given(duals(R52_))
def test_dual_antipode_round_trip(w):
    assert w.antipode().antipode_inv() == w


@settings(max_examples=20, deadline=None)
@given(st.integers(-2, 2), st.integers(0, 4), st.integers(-2, 2), st.integers(0, 4))
def test_brackets_land_in_span(p1, i, p2, j):
    R = R52_
    b = R.bracket_B(R.E(p1, i), R.E(p2, j))  # raises if outside span{g_s h^k}
    for x in (R.G.X.monomial(-p1, 4), R.G.X.monomial(p1, 2)):
        assert b.act(x) == R.bracket_operator(R.E(p1, i), R.E(p2, j), x)
