import itertools
import json

import pytest

from koornwinder_lr.coeff_field import DEFAULT_FIELD as K
from koornwinder_lr.coeff_field import substitute_q_zero
from koornwinder_lr.hecke import representation
from koornwinder_lr.koornwinder import (
    LRExpansion,
    NonDominantWeightError,
    _colored_terms,
    aw_pieri_from_classical,
    aw_symmetric,
    aw_to_koornwinder,
    dominates,
    e_poly_intertwiner,
    e_poly_ramyip,
    expand_E_times_P,
    expand_x_times_E,
    hl_coefficients,
    lr_at_q_zero,
    lr_expand,
    lr_oracle,
    p_poly,
    pieri_aw,
    rank2_closed_forms,
    rank2_example,
    resum,
    rho,
)
from koornwinder_lr.alcove import classify_steps
from koornwinder_lr.laurent import LaurentPoly
from koornwinder_lr.suites import dominant_weights
from koornwinder_lr.weyl import (
    AffineRoot,
    dominant_rep,
    finite_weyl_group,
    identity,
    inversion_sets,
    length_and_word,
    min_coset_rep,
    stabilizer_data,
)

REP1, REP2 = representation(1), representation(2)


def rep(n):
    return REP1 if n == 1 else REP2


def x(*wt):
    return LaurentPoly.monomial(tuple(wt), K.one)


# -- non-symmetric polynomials ------------------------------------------------


def test_E0_is_one():
    assert e_poly_ramyip((0, 0)) == REP2.one() == e_poly_intertwiner((0, 0))


@pytest.mark.parametrize("mu", [(m,) for m in range(-3, 4)] + list(itertools.product(range(-1, 2), repeat=2)))
def test_ramyip_equals_intertwiners(mu):
    r = rep(len(mu))
    assert e_poly_ramyip(mu, r) == e_poly_intertwiner(mu, r)


@pytest.mark.parametrize("mu", [(-2,), (2,), (-1, 1), (1, -1), (0, -1)])
def test_ramyip_dp_equals_walk_sum(mu):
    assert e_poly_ramyip(mu, method="walks") == e_poly_ramyip(mu)


def test_ramyip_word_independent():
    assert e_poly_ramyip((1, -1)) == e_poly_ramyip((1, -1), word=(0, 2, 1, 0))
    with pytest.raises(ValueError):
        e_poly_ramyip((1, -1), word=(2, 0, 1, 2))


# -- symmetric polynomials ----------------------------------------------------


@pytest.mark.parametrize("lam", [(0,), (1,), (2,), (3,), (0, 0), (1, 0), (1, 1), (2, 0), (2, 1)])
def test_p_poly_contracts(lam):
    r = rep(len(lam))
    P = p_poly(lam, rep=r)
    assert P.coeff(lam) == K.one
    assert all(r.weyl_act(w, P) == P for w in finite_weyl_group(len(lam)))
    assert all(dominates(lam, dominant_rep(nu)) for nu in P.support())
    assert P == p_poly(lam, "rho_sum", r)


def test_P0_and_P_omega1():
    assert p_poly((0, 0)) == REP2.one()
    supp = set(p_poly((1, 0)).support())
    assert supp <= {(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)}


def test_P1_constant_term_in_askey_wilson_parameters():
    pi, s, sp = aw_symmetric()
    P1 = p_poly((1,))
    assert P1.coeff((1,)) == P1.coeff((-1,)) == K.one
    assert P1.coeff((0,)) == aw_to_koornwinder((pi * sp - s) / (1 - pi))
    # the displayed (pi s - s')/(1 - pi) has the opposite sign
    assert P1.coeff((0,)) != aw_to_koornwinder((pi * s - sp) / (1 - pi))


# -- walk expansions ----------------------------------------------------------


def test_x_times_E_trivial_and_small():
    assert expand_x_times_E((0, 0), (1, 0)) == {(1, 0): K.one}
    got = resum(expand_x_times_E((1,), (0,)), lambda nu: e_poly_ramyip(nu, REP1), REP1)
    assert got == x(1)
    lhs = x(1, 0) * e_poly_ramyip((1, 0))
    exp = expand_x_times_E((1, 0), (1, 0))
    assert resum(exp, lambda nu: e_poly_ramyip(nu, REP2), REP2) == lhs


@pytest.mark.parametrize("mu,lam", [((1,), (1,)), ((-1,), (2,)), ((1, 0), (1, 0)), ((0, -1), (1, 1))])
def test_E_times_P_resums(mu, lam):
    r = rep(len(mu))
    exp = expand_E_times_P(mu, lam, r)
    got = resum(exp, lambda nu: e_poly_ramyip(nu, r), r)
    assert got == e_poly_ramyip(mu, r) * p_poly(lam, rep=r)
    assert exp == expand_E_times_P(mu, lam, r, method="walks")


def test_E_times_P_trivial():
    assert expand_E_times_P((1, 0), (0, 0)) == {(1, 0): K.one}


# -- LR coefficients ----------------------------------------------------------


def test_lr_with_zero_weight():
    assert lr_expand((0, 0), (2, 1)).pairs == {(2, 1): K.one}
    assert lr_expand((0,), (3,)).pairs == {(3,): K.one}


PAIRS = [((1,), (1,)), ((1,), (2,)), ((2,), (2,)), ((3,), (1,)), ((1, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (1, 0))]


@pytest.mark.parametrize("lam,mu", PAIRS)
def test_lr_equals_oracle_and_product(lam, mu):
    r = rep(len(lam))
    exp = lr_expand(lam, mu, r)
    assert exp == lr_oracle(lam, mu, r)
    assert exp.reconstruct(r) == p_poly(lam, rep=r) * p_poly(mu, rep=r)


@pytest.mark.parametrize("lam,mu", PAIRS[:6])
def test_lr_dp_equals_walk_sum(lam, mu):
    r = rep(len(lam))
    dp = lr_expand(lam, mu, r)
    walks = lr_expand(lam, mu, r, method="walks")
    assert dp == walks and dp.walk_count == walks.walk_count


def test_lr_parallel_shards():
    assert lr_expand((1, 0), (1, 1), jobs=2) == lr_expand((1, 0), (1, 1))


def test_lr_word_independent():
    alt = (0, 1, 0, 2, 1, 0)
    assert lr_expand((2, 1), (0, 0), word=alt) == lr_expand((2, 1), (0, 0))
    assert lr_expand((2, 1), (0, 0), word=alt, method="walks") == lr_expand((2, 1), (0, 0))


@pytest.mark.parametrize("lam,mu", [((1,), (2,)), ((2,), (3,)), ((1,), (3,))])
def test_intro_reading_swaps_roles(lam, mu):
    # the introduction's sum runs over walks of type w(mu)^{-1}; the product is symmetric
    assert lr_expand(mu, lam) == lr_expand(lam, mu)


def test_non_dominant_rejected():
    with pytest.raises(NonDominantWeightError):
        lr_expand((0, 1), (1, 0))


def test_lr_json_schema():
    out = lr_expand((1,), (1,)).to_json()
    assert set(out) == {"lambda", "mu", "terms", "mode", "walk_count"}
    assert out["terms"][0] == {"nu": [2], "coeff": {"num": "1", "den": "1"}}
    json.dumps(out)


@pytest.mark.parametrize("lam", [(0,), (1,), (2,), (1, 0), (1, 1), (2, 0)])
def test_symmetrizer_of_intertwined_polynomials(lam):
    # U S_v S_{w(lam)} 1 = prod rho(-alpha) U S_{w(lam)} 1 over L(w(lam)^-1, (v w(lam))^-1)
    r = rep(len(lam))
    wl = min_coset_rep(lam)
    word = length_and_word(wl)[1]
    base = r.U(r.intertwiner_word(word)[0])
    for v in stabilizer_data(lam).W_upper:
        lhs = r.U(r.intertwiner_word(length_and_word(v)[1] + word)[0])
        _, roots = inversion_sets(wl.inverse(), (v * wl).inverse())
        c = K.one
        for a in roots:
            c = c * rho(-a, r)
        assert lhs == base.scale(c)


@pytest.mark.parametrize("l,m", [(1, 1), (2, 1), (1, 3), (2, 2)])
def test_rank1_case_functions(l, m):
    # rank 1: A_p = rho(2m delta - alpha_1) for v = e, else 1;
    # B_p = rho(-len(e(p)) delta + alpha_1) for even lengths, else 1
    exp = lr_expand((l,), (m,), REP1, trace=True)
    for t in exp.terms:
        v = t.walk.walk.spec.start.inverse() * min_coset_rep((m,)).inverse()
        a = rho(AffineRoot((-2,), 4 * m), REP1) if v == identity(1) else K.one
        ln = length_and_word(t.walk.walk.end())[0]
        b = rho(AffineRoot((2,), -2 * ln), REP1) if ln % 2 == 0 else K.one
        assert (t.A, t.B) == (a, b)


# -- Pieri, Askey-Wilson, Hall-Littlewood, rank 2 -------------------------------


def test_pieri_l0():
    assert pieri_aw(0) == (K.zero, K.zero)
    assert lr_expand((1,), (0,)).pairs == {(1,): K.one}


@pytest.mark.parametrize("l", range(1, 6))
def test_pieri_corrected_and_G(l):
    F, G = pieri_aw(l, "corrected")
    lr = lr_expand((1,), (l,), REP1).pairs
    assert lr[(l + 1,)] == K.one and lr[(l,)] == F and lr[(l - 1,)] == G
    assert pieri_aw(l, "printed")[1] == G
    assert (F, G) == tuple(aw_to_koornwinder(c) for c in aw_pieri_from_classical(l))


def test_pieri_printed_F_disagrees():
    # recorded deviation: the displayed bracket does not reproduce P_1 P_1
    assert pieri_aw(1, "printed")[0] != lr_expand((1,), (1,)).pairs[(1,)]


def test_hl_trivial_and_rank1():
    assert hl_coefficients((0,), (2,)).pairs == {(2,): K.one}
    F, G = pieri_aw(1, "corrected")
    hl = hl_coefficients((1,), (1,)).pairs
    assert hl[(1,)] == substitute_q_zero(F) and hl[(0,)] == substitute_q_zero(G)


def test_gray_negative_foldings_vanish_at_q_zero():
    for t in _colored_terms((1,), (1,), REP1):
        steps = classify_steps(t.walk.walk)
        gray_neg = any(c == "gray" and not steps[k].positive for k, c in t.walk.color_of().items())
        if gray_neg:
            prod = K.one
            for f in t.C:
                prod = prod * f
            assert substitute_q_zero(prod) == K.zero


@pytest.mark.parametrize("lam,mu", [(l, m) for l in dominant_weights(2, 2) for m in dominant_weights(2, 2) if sum(l) + sum(m) <= 3][:8])
def test_hl_equals_lr_at_q_zero(lam, mu):
    assert hl_coefficients(lam, mu) == lr_at_q_zero(lr_expand(lam, mu))


def test_rank2_example_report():
    report = rank2_example()
    assert report["passed"]
    assert all(report["a_factor_checks"].values())
    assert not report["checks"]["printed_closed_forms"]


def test_rank2_printed_forms_vanish():
    F, G = rank2_closed_forms("printed")
    assert F == K.zero and G == K.zero
    Fc, Gc = rank2_closed_forms("corrected")
    lr = lr_expand((1, 0), (1, 1)).pairs
    assert lr == {(2, 1): K.one, (1, 1): Fc, (1, 0): Gc}


def test_expansion_equality_is_support_and_values():
    a = LRExpansion((1,), (1,), {(2,): K.one})
    b = LRExpansion((1,), (1,), {(2,): K.one, (1,): K.zero + K.one})
    assert a != b
    assert a == LRExpansion((1,), (1,), {(2,): K.one}, mode="exact", walk_count=9)

