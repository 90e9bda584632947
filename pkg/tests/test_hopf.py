from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from oracles import Rewriter, reduce, same, tensor_matches, tensor_mul
from qgalois.errors import ConstructionError
from qgalois.hopf import HopfStructure, verify_hopf_axioms
from qgalois.literals import parse_element
from qgalois.qalgebra import (
    Element, LegMap, Window, galois_presentation, key_element, quantum_group_presentation,
    reflected_presentation, tensor,
)
from qgalois.report import Report


def hopf(n, m, k=1):
    return HopfStructure(quantum_group_presentation(n, m, k, ("a", "b")))


def test_coproduct_examples():
    h = hopf(3, 2)
    A = h.pres
    a, b = A.gen1(), A.gen2()
    assert h.coproduct(a * a) == tensor(a * a, a * a)
    assert h.coproduct(b) == tensor(b, A.gen1(2)) + tensor(A.one(), b)
    expected = (tensor(b * b, A.gen1(4)) + tensor(b, A.gen1(2) * b).scale(1 + A.lam(-2))
                + tensor(A.one(), b * b))
    assert h.coproduct(b * b) == expected


@pytest.mark.parametrize("n,m", [(3, 1), (4, 3), (5, 2)])
def test_coproduct_of_powers_matches_oracle(n, m):
    h = hopf(n, m)
    rw = Rewriter(n, m)
    db = {((0, 1), (m, 0)): sp.Integer(1), ((0, 0), (0, 1)): sp.Integer(1)}
    power = {((0, 0), (0, 0)): sp.Integer(1)}
    for q in range(n):
        assert tensor_matches(h.coproduct(h.pres.monomial(0, q)), power, n), q
        power = tensor_mul((rw, rw), power, db, n)
    assert not power  # Delta(b)^n vanishes


def test_counit_and_antipode_examples():
    h = hopf(3, 1)
    A = h.pres
    a, b = A.gen1(), A.gen2()
    assert h.counit(a ** 5) == 1
    assert h.counit(a * a * b) == 0
    assert h.antipode(b) == -(b * A.gen1(-1))
    for n, m in [(3, 1), (5, 2), (7, 3)]:
        h = hopf(n, m)
        A = h.pres
        assert h.antipode(A.gen1() * A.gen2()) == A.monomial(-m - 1, 1, -A.lam(m + 1))


def test_left_integral_examples():
    for n in (2, 3, 5):
        h = hopf(n, 1)
        A = h.pres
        assert h.left_integral(A.gen2() ** (n - 1)) == 1
        assert h.left_integral(A.gen1() * A.gen2() ** (n - 1)) == 0
        assert h.left_integral(A.one()) == 0


def test_structure_solver_n2():
    h = hopf(2, 1)
    A = h.pres
    assert h.modular_element == A.gen1()
    assert h.sigma(A.gen1()) == -A.gen1()


@pytest.mark.parametrize("n,m,k", [(2, 1, 1), (3, 1, 1), (3, 2, 1), (4, 1, 1), (5, 2, 1), (5, 2, 3)])
def test_modular_element_and_tau(n, m, k):
    h = hopf(n, m, k)
    assert h.modular_element == h.pres.gen1(m * (n - 1))
    # S^2(b) = a^m b a^-m computed by rewriting, so S^2(b^(n-1)) = c^(n-1) b^(n-1)
    s2b = Rewriter(n, m, k).normal("g" * m + "h" + "G" * m)
    assert list(s2b) == [(0, 1)]
    tau = reduce(s2b[(0, 1)] ** (n - 1), n)
    assert same(h.scaling_constant, tau, n)


def test_tau_is_not_always_one():
    assert hopf(3, 1).scaling_constant != 1


@pytest.mark.parametrize("n,m", [(3, 1), (2, 1)])
def test_hopf_axioms_pass(n, m):
    rep = verify_hopf_axioms(hopf(n, m), Window(3))
    assert rep.passed, rep.to_text()
    assert len(rep.checks) > 10


def test_small_window_counit_law():
    rep = verify_hopf_axioms(hopf(2, 1), Window(0))
    assert rep.passed
    assert any("counit" in c.name for c in rep.checks)


def test_reflected_group_is_hopf():
    C = reflected_presentation(2, 1, 1, 1, ("u", "w"))
    rep = verify_hopf_axioms(HopfStructure(C), Window(3))
    assert rep.passed, rep.to_text()


def test_galois_presentation_is_not_hopf():
    with pytest.raises(ConstructionError):
        HopfStructure(galois_presentation(3, 1, 1, 1, ("x", "y")))


def test_broken_axiom_is_reported():
    # a wrong antipode (twice the right one) must show up as failing checks
    h = hopf(3, 1)
    right = h.antipode_map
    h.antipode_map = LegMap.from_element_map(h.pres, lambda k: right(key_element(h.pres, k)).scale(2))
    rep = verify_hopf_axioms(h, Window(1), Report())
    assert not rep.passed
    assert rep.failed_checks()


H5 = hopf(5, 2)


@st.composite
def elements(draw, pres):
    d = {}
    for _ in range(draw(st.integers(1, 3))):
        k = (draw(st.integers(-3, 3)), draw(st.integers(0, pres.n - 1)))
        d[k] = pres.field.zeta(draw(st.integers(0, pres.n))) * draw(st.integers(-2, 2))
    return Element.from_terms(pres, d.items())


@settings(max_examples=30, deadline=None)
@given(elements(H5.pres), elements(H5.pres))
def test_structure_maps_are_compatible_with_products(e1, e2):
    h = H5
    assert h.coproduct(e1 * e2) == h.coproduct(e1) * h.coproduct(e2)
    assert h.antipode(e1 * e2) == h.antipode(e2) * h.antipode(e1)
    assert h.counit(e1 * e2) == h.counit(e1) * h.counit(e2)
    assert h.antipode_inv(h.antipode(e1)) == e1
    assert h.sigma_inv(h.sigma(e1)) == e1


@settings(max_examples=30, deadline=None)
@given(elements(H5.pres), elements(H5.pres))
def test_kms_property(e1, e2):
    h = H5
    assert h.left_integral(e1 * e2) == h.left_integral(e2 * h.sigma(e1))


def test_parse_then_coproduct():
    h = hopf(3, 1)
    assert h.coproduct(parse_element("1", h.pres)) == tensor(h.pres.one(), h.pres.one())
