import random

import pytest
from hypothesis import given, settings, strategies as st

from koornwinder_lr.coeff_field import DEFAULT_FIELD as K
from koornwinder_lr.coeff_field import ExactBackend, Field, GENERATORS
from koornwinder_lr.hecke import (
    SpectralVector,
    apply_T,
    apply_U,
    apply_Y,
    representation,
    spectral_value,
    structure_scalar,
    t_name,
    weyl_act_poly,
)
from koornwinder_lr.koornwinder import e_poly_intertwiner, rho
from koornwinder_lr.laurent import LaurentPoly
from koornwinder_lr.suites import random_laurent, run_suite
from koornwinder_lr.weyl import (
    AffineRoot,
    finite_weyl_group,
    length_and_word,
    simple_reflection,
    simple_root,
    t_weight_monomial,
)


def h(name, k=1):
    return K.gen(name, k)


def x(*wt):
    return LaurentPoly.monomial(tuple(wt), K.one)


@pytest.mark.parametrize("n", [1, 2])
def test_hecke_suite(n):
    report = run_suite("hecke", rank=n)
    assert report.passed, [c.invariant for c in report.checks if c.status == "fail"]


@pytest.mark.parametrize("n", [1, 2])
def test_T_on_one(n):
    rep = representation(n)
    for i in range(n + 1):
        assert rep.T(i, rep.one()) == rep.one().scale(h(t_name(i, n)))


def test_weyl_action_examples():
    rep = representation(2)
    assert rep.weyl_act(simple_reflection(2, 1), x(1, 0)) == x(0, 1)
    got = weyl_act_poly(simple_reflection(1, 0), x(1))
    assert got == LaurentPoly.monomial((-1,), h("q", 2))


def test_Y_on_one_is_spectral():
    rep = representation(2)
    for lam in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
        want = spectral_value(AffineRoot(lam, 0))
        assert apply_Y(lam, rep.one(), rep) == rep.one().scale(want)
    assert rep.Y((0, 0), x(1, -1)) == x(1, -1)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**9))
def test_Y_operators_commute(seed):
    rep = representation(2)
    f = random_laurent(rep, random.Random(seed))
    assert rep.Y((1, 0), rep.Y((0, 1), f)) == rep.Y((0, 1), rep.Y((1, 0), f))


def test_spectral_values():
    assert spectral_value(AffineRoot((2,), -2)) == h("q", 2) * h("t0", 2) * h("tn", 2)
    assert spectral_value(AffineRoot((0,), 2)) == h("q", -2)
    want = h("q", -2) * h("t", -4) * h("t0", -2) * h("tn", -2)
    assert spectral_value(simple_root(2, 0)) == want


def test_cvee_product_is_n():
    Kz = Field(GENERATORS + ("z",))
    B = ExactBackend(Kz)
    zh = Kz.gen("z")
    for n in (1, 2):
        for i in range(n + 1):
            prod = structure_scalar("cvee", i, zh, n, B) * structure_scalar("cvee", i, 1 / zh, n, B)
            assert prod == structure_scalar("n", i, zh, n, B)


@pytest.mark.parametrize("j", [1, -1])
@pytest.mark.parametrize("k", [-3, -2, -1, 0, 1, 2, 3])
def test_rank1_rho_closed_form(j, k):
    rep = representation(1)
    qk = h("q", k)
    tt = K.gen("t0", -j) * K.gen("tn", -j)
    want = (
        h("tn")
        * (1 + qk * h("t0") * h("tn", -1) * tt)
        * (1 - qk * h("t0", -1) * h("tn", -1) * tt)
        / (1 - qk * qk * tt * tt)
    )
    assert rho(AffineRoot((2 * j,), 2 * k), rep) == want


def test_symmetrizer_on_one():
    rep = representation(2)
    W0 = finite_weyl_group(2)
    poincare = sum((K.monomial(t_weight_monomial(2, length_and_word(w)[1])) for w in W0), K.zero)
    top = t_weight_monomial(2, length_and_word(W0[-1])[1])
    assert apply_U(rep.one(), rep) == rep.one().scale(poincare * K.monomial(tuple(-e // 2 for e in top)))


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**9))
def test_symmetrizer_is_invariant(seed):
    rep = representation(2)
    Uf = rep.U(random_laurent(rep, random.Random(seed)))
    assert all(rep.weyl_act(w, Uf) == Uf for w in finite_weyl_group(2))


def test_E1_display():
    zh = h("q") * h("t0") * h("tn")
    want = x(1).scale(h("tn")) + LaurentPoly.constant(1, structure_scalar("psi-", 0, zh, 1))
    assert e_poly_intertwiner((1,)) == want
    rep = representation(1)
    E, spec = rep.intertwiner_word((0,))
    assert E == want and spec == SpectralVector.of_one(1).reflect(0)


def test_Eminus1_display():
    z1 = h("q") * h("t0") * h("tn")
    z2 = h("q", 2) * h("t0") * h("tn")
    p0p = structure_scalar("psi+", 0, z1, 1)
    p0m = structure_scalar("psi-", 0, z1, 1)
    p1p = structure_scalar("psi+", 1, z2, 1)
    want = (
        x(-1)
        + LaurentPoly.constant(1, h("tn") * p0p + p1p * p0m)
        + x(1).scale(h("tn") * p1p)
    )
    assert e_poly_intertwiner((-1,)) == want


@pytest.mark.parametrize("i", [0, 1, 2])
def test_intertwiner_shifts_spectrum(i):
    rep = representation(2)
    E, spec = rep.intertwiner_word((0, 1))
    F, new = rep.intertwiner(i, E, spec)
    assert new == spec.reflect(i)
    for lam in [(1, 0), (0, 1)]:
        val = new.eig[lam.index(1)]
        assert rep.Y(lam, F) == F.scale(K.monomial(val))


def test_apply_T_quadratic_on_monomial():
    rep = representation(1)
    f = x(2)
    th = h("tn")
    Tf = apply_T(1, f, rep=rep)
    assert apply_T(1, Tf, rep=rep) - Tf.scale(th - 1 / th) - f == LaurentPoly(1, {})
