from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from oracles import Rewriter, Z, reduce, tensor_matches, tensor_mul
from qgalois.errors import ConfigurationError
from qgalois.galois import (
    IDENTITY_LABELS, GaloisObject, verify_cocycle, verify_galois_bijectivity,
    verify_identity_suite, verify_properties, verify_representation, verify_theta_definition,
)
from qgalois.qalgebra import Element, Window, apply_legs, key_element, multiply_legs, tensor
from qgalois.report import Report


@pytest.fixture(scope="module")
def G31():
    return GaloisObject(3, 1, 1)


def test_alpha_examples(G31):
    G = G31
    X, A = G.X, G.A
    assert G.alpha(X.gen1()) == tensor(X.gen1(), A.gen1())
    assert G.alpha(X.one()) == tensor(X.one(), A.one())
    # alpha(y^2) against legwise rewriting of alpha(y)^2
    rx, ra = Rewriter(3, 1, 1, 1, "mu"), Rewriter(3, 1)
    ay = {((0, 1), (1, 0)): sp.Integer(1), ((0, 0), (0, 1)): sp.Integer(1)}
    expected = tensor_mul((rx, ra), ay, ay, 3)
    assert tensor_matches(G.alpha(X.gen2() ** 2), expected, 3)
    assert sp.expand(reduce(expected[((0, 1), (1, 1))] - (1 + Z ** 2), 3)) == 0  # 1 + lambda^-1


def test_beta_examples(G31):
    G = G31
    X, A = G.X, G.A
    assert G.beta(A.gen1()) == tensor(X.gen1(-1), X.gen1())
    assert G.beta(A.one()) == tensor(X.one(), X.one())
    # beta is a homomorphism into X^op (x) X
    ba, bb = G.beta(A.gen1()), G.beta(A.gen2())
    assert G.beta(A.gen1() * A.gen2()) == G._op_mul(ba, bb)


def test_galois_map_examples(G31):
    G = G31
    X, A = G.X, G.A
    assert G.galois_V_inv(tensor(X.one(), A.gen1())) == tensor(X.gen1(-1), X.gen1())
    t = tensor(X.gen1(), A.gen2())
    assert G.galois_V(G.galois_V_inv(t)) == t
    for z in (X.gen1(), X.gen2()):
        s = apply_legs(G.alpha(z), [None, G.beta_map])
        assert multiply_legs(s, [(0, 1), (2,)]) == tensor(X.one(), z)


def test_invariant_functionals(G31):
    for n, m in [(2, 1), (3, 1), (3, 2), (5, 2)]:
        G = GaloisObject(n, m, 1)
        X = G.X
        assert G.phi_X(X.gen2() ** (n - 1)) == 1
        assert G.psi_X(X.monomial(m * (1 - n), n - 1)) == X.lam(-m)
        assert G.delta_X == X.gen1(m * (n - 1))
        for k in Window(3).keys(n):
            e = key_element(X, k)
            assert G.phi_X(e * G.delta_X) == G.psi_X(e)


def test_modular_maps(G31):
    G = G31
    X = G.X
    assert G.sigma_X(X.gen1()) == X.gen1().scale(X.lam(-1))
    assert G.theta_X(X.one()) == X.one()
    assert G.sigma_X_prime(X.gen1()) == X.gen1().scale(X.lam(-1))
    assert G.theta_X(X.gen2()) == X.gen2().scale(X.lam(1))


def test_miyashita_ulbrich(G31):
    G = G31
    X, A = G.X, G.A
    assert G.miyashita_ulbrich(X.gen1(), A.gen1()) == X.gen1()
    assert G.miyashita_ulbrich(X.one(), A.gen1()) == X.one()
    for k in Window(1).keys(3):
        x = key_element(X, k)
        for a1 in (A.gen1(), A.gen2(), A.gen1(-1)):
            for a2 in (A.gen2(), A.gen1() * A.gen2()):
                assert G.miyashita_ulbrich(x, a1 * a2) == \
                    G.miyashita_ulbrich(G.miyashita_ulbrich(x, a1), a2)


@pytest.mark.parametrize("n,m,mu", [(2, 1, 1), (3, 1, 1), (3, 2, 2), (4, 3, 1)])
def test_cleft_cocycle_examples(n, m, mu):
    G = GaloisObject(n, m, mu)
    X, A = G.X, G.A
    assert G.cleft_cocycle(A.gen1(2), A.gen1(-3)) == X.one()
    for q in range(1, n):
        for r in (-2, 0, 1):
            got = G.cleft_cocycle(A.monomial(0, q), A.monomial(r, n - q))
            assert got == X.scalar(G.mu * X.lam(-r * q))
    if n > 2:
        assert G.cleft_cocycle(A.gen2(), A.gen2()) == X.zero()


def test_identity_suite_n2():
    G = GaloisObject(2, 1, 1)
    rep = verify_identity_suite(G, Window(3))
    assert rep.passed, rep.to_text()
    labels = {c.name.split(":")[0] for c in rep.checks}
    assert set(IDENTITY_LABELS) <= labels


def test_identity_v_at_delta(G31):
    G = G31
    assert G.sigma_X(G.delta_X).scale(G.hopf.scaling_constant) == G.delta_X


def test_identity_subset_and_xiv_trivial(G31):
    rep = verify_identity_suite(G31, Window(0), labels=["xiv"])
    assert rep.passed and rep.checks
    assert all(c.name.startswith("xiv") for c in rep.checks)


def test_representation_matches_left_multiplication(G31):
    for G in (GaloisObject(2, 1, 1), G31):
        X = G.X
        for k in Window(2).keys(G.n):
            for e in (X.gen1(), X.gen2(), X.gen2() ** G.n, X.gen1(-1) * X.gen1()):
                assert G.rep_apply(e, {k: G.field.one}) == (e * key_element(X, k)).terms


def test_rep_relation(G31):
    G = G31
    v = {(1, 2): G.field.one}
    for _ in range(G.n):
        v = G.rep_y(v)
    assert v == {(1 + G.n * G.m, 2): G.mu * G.X.lam(-1 * G.n)}


@pytest.mark.parametrize("n,m,mu", [(2, 1, 1), (3, 1, 0)])
def test_verifiers_pass(n, m, mu):
    G = GaloisObject(n, m, mu)
    rep = Report()
    w = Window(2)
    verify_properties(G, w, rep)
    verify_galois_bijectivity(G, w, rep)
    verify_theta_definition(G, w, rep)
    verify_cocycle(G, 2, rep)
    verify_representation(G, w, rep)
    assert rep.passed, rep.to_text()


def test_wrong_theta_is_caught(G31):
    G = GaloisObject(3, 1, 1)
    G.theta_X_map = G.sigma_X_map  # not the square of the missing antipode
    rep = verify_theta_definition(G, Window(1), Report())
    assert not rep.passed


def test_invalid_parameters():
    with pytest.raises(ConfigurationError):
        GaloisObject(4, 2, 1)
    with pytest.raises(ConfigurationError):
        GaloisObject(5, 1, 1, lambda_exponent=5)


G52 = GaloisObject(5, 2, 1)


@st.composite
def x_elements(draw):
    X = G52.X
    d = {}
    for _ in range(draw(st.integers(1, 3))):
        k = (draw(st.integers(-3, 3)), draw(st.integers(0, 4)))
        d[k] = X.field.zeta(draw(st.integers(0, 5))) * draw(st.integers(-2, 2))
    return Element.from_terms(X, d.items())


@settings(max_examples=25, deadline=None)
@given(x_elements(), x_elements())
def test_coaction_is_multiplicative(e1, e2):
    G = G52
    assert G.alpha(e1 * e2) == G.alpha(e1) * G.alpha(e2)
    assert G.theta_X(e1 * e2) == G.theta_X(e1) * G.theta_X(e2)
    assert G.sigma_X(e1 * e2) == G.sigma_X(e1) * G.sigma_X(e2)


@settings(max_examples=25, deadline=None)
@given(x_elements(), x_elements())
def test_kms_for_phi_X(e1, e2):
    G = G52
    assert G.phi_X(e1 * e2) == G.phi_X(e2 * G.sigma_X(e1))
    assert G.psi_X(e1 * e2) == G.psi_X(e2 * G.sigma_X_prime(e1))


@settings(max_examples=25, deadline=None)
@given(x_elements(), x_elements())
def test_galois_round_trip(e1, e2):
    G = G52
    t = tensor(e1, e2)
    assert G.galois_V_inv(G.galois_V(t)) == t
    assert G.galois_W_inv(G.galois_W(t)) == t
