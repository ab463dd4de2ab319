"""
Verification suites: randomized and exhaustive invariant checks for every
module, each producing a machine-readable :class:`SuiteReport`.

Every suite draws its randomness from the ``random.Random`` passed in, so a
report together with its seed reproduces the run exactly.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .alcove import WalkSpec, enumerate_walks
from .coeff_field import EvalBackend, EvalPoint, PoleError, evaluate, substitute_q_zero, unit
from .hecke import HeckeRep, SpectralVector, representation, t_name
from .koornwinder import (
    aw_classical_coeffs,
    aw_gamma,
    aw_pieri_from_classical,
    aw_to_koornwinder,
    e_poly_intertwiner,
    e_poly_ramyip,
    hl_coefficients,
    lr_at_q_zero,
    lr_expand,
    lr_oracle,
    p_poly,
    pieri_aw,
    rank2_example,
)
from .laurent import LaurentPoly
from .weyl import (
    finite_weyl_group,
    identity,
    inversion_set,
    is_positive,
    length,
    length_and_word,
    longest_finite,
    min_coset_rep,
    random_element,
    simple_reflection,
    simple_root,
    translation,
    word_to_element,
)

__all__ = [
    "CheckResult",
    "SuiteReport",
    "SUITES",
    "run_suite",
    "random_laurent",
    "lusztig_holds",
    "tep_word",
    "dominant_weights",
]


@dataclass
class CheckResult:
    """One invariant run over ``instances`` inputs."""

    invariant: str
    instances: int = 0
    failures: int = 0
    seconds: float = 0.0
    note: str = ""
    informational: bool = False

    @property
    def status(self) -> str:
        if self.informational:
            return "info"
        if self.failures:
            return "fail"
        return "pass" if self.instances else "empty"

    def to_json(self) -> dict:
        out = asdict(self)
        out["seconds"] = round(self.seconds, 3)
        out["status"] = self.status
        return out


@dataclass
class SuiteReport:
    suite: str
    rank: int
    seed: int
    mode: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "info") for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "rank": self.rank,
            "seed": self.seed,
            "mode": self.mode,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


class _Runner:
    """Collects :class:`CheckResult` entries for one suite."""

    def __init__(self, report: SuiteReport):
        self.report = report

    def check(
        self, name: str, cases: Iterable, predicate: Callable, note: str = "", informational: bool = False
    ) -> CheckResult:
        """Run ``predicate`` on every case; informational checks never fail the suite."""
        res = CheckResult(name, note=note, informational=informational)
        start = time.perf_counter()
        for case in cases:
            res.instances += 1
            try:
                ok = predicate(case)
            except PoleError:
                ok = False
            if not ok:
                res.failures += 1
        res.seconds = time.perf_counter() - start
        self.report.checks.append(res)
        return res


# ---------------------------------------------------------------------------
# shared helpers


def random_laurent(rep: HeckeRep, rng: random.Random, degree: int = 2, terms: int = 3) -> LaurentPoly:
    """A random Laurent polynomial with exponents in ``[-degree, degree]``.

    Coefficients are small integers times random half-parameter monomials.
    """
    f = LaurentPoly(rep.n)
    for _ in range(terms):
        wt = tuple(rng.randint(-degree, degree) for _ in range(rep.n))
        exps = tuple(rng.randint(-1, 1) for _ in range(6))
        c = rep.B.mono(exps) * rng.choice((1, -1, 2, -3))
        f.add_term(wt, c)
    return f


def dominant_weights(n: int, total: int) -> list:
    """Dominant weights of rank ``n`` with coordinate sum ``<= total``."""
    out = []
    for w in itertools.product(range(total + 1), repeat=n):
        if sum(w) <= total and all(w[i] >= w[i + 1] for i in range(n - 1)):
            out.append(w)
    return out


def fundamental_weight(n: int, i: int) -> tuple:
    """``omega_i = eps_1 + ... + eps_i`` (``omega_0 = 0``)."""
    return tuple(1 if k < i else 0 for k in range(n))


def symmetric_test_weights(n: int) -> list:
    """``0, omega_1, omega_2, omega_1 + omega_2, 2 omega_1`` where defined at rank ``n``."""
    w1, w2 = fundamental_weight(n, 1), fundamental_weight(n, min(n, 2))
    cands = [fundamental_weight(n, 0), w1, w2, tuple(a + b for a, b in zip(w1, w2)), tuple(2 * a for a in w1)]
    return list(dict.fromkeys(cands))


def _x_root(n: int, i: int) -> tuple:
    """``(weight, q exponent pair)`` of ``x^{alpha_i/2}`` (``x^{alpha_i}`` for middle nodes)."""
    if i == 0:
        return tuple(-1 if k == 0 else 0 for k in range(n)), 1
    if i == n:
        return tuple(1 if k == n - 1 else 0 for k in range(n)), 0
    return tuple(1 if k == i - 1 else (-1 if k == i else 0) for k in range(n)), 0


def _x_mono(rep: HeckeRep, wt: tuple, qh: int, power: int) -> LaurentPoly:
    """``(q^{qh/2} x^wt)^power`` as a Laurent polynomial."""
    c = rep.B.mono(unit("q", qh * power))
    return LaurentPoly.monomial(tuple(power * a for a in wt), c)


def lusztig_holds(rep: HeckeRep, i: int, lam: tuple, f: LaurentPoly) -> bool:
    """``T_i x^lam - x^{s_i lam} T_i = d_i(x^{alpha_i})(x^lam - x^{s_i lam})`` on ``f``.

    Both sides are multiplied by ``1 - x^{alpha_i}`` so that only Laurent
    polynomials occur.  ``d_i(z)(1 - z)`` is expanded from the displayed
    ``c_i``: ``t^{1/2}(1 - z) - c_i(z)(1 - z)``.
    """
    n = rep.n
    s = simple_reflection(n, i)
    xl = rep.mono(lam)
    xs = rep.weyl_act(s, xl)
    lhs = rep.T(i, xl * f) - xs * rep.T(i, f)
    wt, qh = _x_root(n, i)
    one = rep.one()
    ti = rep.B.mono(unit(t_name(i, n), 1))
    if 0 < i < n:
        z = _x_mono(rep, wt, qh, 1)
        cz = (one - z.scale(ti * ti)).scale(1 / ti)  # c_i(z)(1 - z)
    else:
        zh = _x_mono(rep, wt, qh, 1)
        z = _x_mono(rep, wt, qh, 2)
        name = "u0" if i == 0 else "un"
        ui = rep.B.mono(unit(name, 1))
        cz = (one - zh.scale(ui * ti)) * (one + zh.scale(ti / ui))
        cz = cz.scale(1 / ti)
    dz = (one - z).scale(ti) - cz
    return (one - z) * lhs == dz * (xl - xs) * f


def tep_word(n: int, i: int) -> tuple:
    """The displayed reduced word ``s_{i-1}...s_1 s_0 s_1...s_n s_{n-1}...s_i`` of ``t(eps_i)``."""
    return (
        tuple(range(i - 1, 0, -1))
        + (0,)
        + tuple(range(1, n + 1))
        + tuple(range(n - 1, i - 1, -1))
    )


# ---------------------------------------------------------------------------
# suites


def suite_hecke(run: _Runner, n: int, rng: random.Random, instances: int = 50) -> None:
    """Operator identities of the basic representation."""
    rep = representation(n)
    B = rep.B
    nodes = range(n + 1)

    def polys():
        return [random_laurent(rep, rng) for _ in range(instances)]

    def quadratic(f):
        for i in nodes:
            th = B.mono(unit(t_name(i, n), 1))
            g = rep.T(i, f)
            if rep.T(i, g) - g.scale(th - 1 / th) - f.scale(B.one) != LaurentPoly(n):
                return False
        return True

    run.check("hecke quadratic relation (T_i - t^1/2)(T_i + t^-1/2) = 0", polys(), quadratic)

    def T(word, f):
        return rep.T_word(word, f)

    pairs = []
    for i, j in itertools.combinations(nodes, 2):
        if j - i > 1:
            pairs.append(((i, j), (j, i)))
    for i in range(1, n - 1):
        pairs.append(((i, i + 1, i), (i + 1, i, i + 1)))
    if n >= 2:
        for i in (0, n - 1):
            pairs.append(((i, i + 1, i, i + 1), (i + 1, i, i + 1, i)))

    def braid(f):
        return all(T(a, f) == T(b, f) for a, b in pairs)

    if pairs:
        run.check("braid relations", polys(), braid)

    def lusztig(f):
        i = rng.randint(0, n)
        lam = tuple(rng.randint(-2, 2) for _ in range(n))
        return lusztig_holds(rep, i, lam, f)

    run.check("Lusztig relation T_i x^lam - x^{s_i lam} T_i = d_i (x^lam - x^{s_i lam})", polys(), lusztig)

    def ut(f):
        uf = rep.U(f)
        return all(
            rep.U(rep.T(i, f)) == uf.scale(B.mono(unit(t_name(i, n), 1))) for i in range(1, n + 1)
        )

    run.check("symmetrizer U T_i = t_i^1/2 U", polys(), ut)

    def elements():
        return [random_element(n, rng, max_trans=1) for _ in range(instances)]

    def left(w):
        i = rng.randint(0, n)
        f, spec = rep.intertwiner_word(length_and_word(w)[1])
        lhs, _ = rep.intertwiner(i, f, spec)
        sw = simple_reflection(n, i) * w
        g, gspec = rep.intertwiner_word(length_and_word(sw)[1])
        if length(sw) > length(w):
            return lhs == g
        return lhs == g.scale(rep.scalar("n", i, -simple_root(n, i), gspec))

    run.check("left intertwiner relation S_i S_w = S_{s_i w} or n_i S_{s_i w}", elements(), left)

    def right(w):
        i = rng.randint(0, n)
        f, spec = rep.intertwiner_word((i,))
        lhs, _ = rep.intertwiner_word(length_and_word(w)[1], f, spec)
        ws = w * simple_reflection(n, i)
        g, _ = rep.intertwiner_word(length_and_word(ws)[1])
        if length(ws) > length(w):
            return lhs == g
        one = SpectralVector.of_one(n)
        return lhs == g.scale(rep.scalar("n", i, -simple_root(n, i), one))

    run.check("right intertwiner relation S_w S_i = S_{w s_i} or S_{w s_i} n_i", elements(), right)

    W0 = finite_weyl_group(n)
    w0inv = longest_finite(n).inverse()
    lw0 = set(inversion_set(n, length_and_word(w0inv)[1]))

    def lemma_u(mu):
        f, spec = rep.intertwiner_word(length_and_word(min_coset_rep(mu))[1])
        total = LaurentPoly(n)
        for w in W0:
            roots = set(inversion_set(n, length_and_word(w.inverse())[1])) ^ lw0
            c = B.one
            for a in roots:
                c = c * rep.scalar("b", a, -a, spec)
            g, _ = rep.intertwiner_word(length_and_word(w)[1], f.scale(c), spec)
            total.iadd(g)
        return total == rep.U(f)

    weights = [tuple(rng.randint(-1, 1) for _ in range(n)) for _ in range(instances)]
    run.check("symmetrizer as sum of intertwiners times b-factors on E_mu", weights, lemma_u)

    def xtmu(f):
        mu = tuple(rng.randint(-1, 1) for _ in range(n))
        return rep.x_op(translation(mu), f) == rep.mono(mu) * f

    run.check("x^{t(mu)} = x^mu from the T^vee word", polys(), xtmu)


def suite_walks(run: _Runner, n: int, rng: random.Random, instances: int = 200) -> None:
    """Walk counts, inversion sets, reduced words, and the rank-2 example walks."""
    words = []
    while len(words) < 12:
        g = random_element(n, rng, max_trans=2)
        w = length_and_word(g)[1]
        if len(w) <= 12:
            words.append(w)
    words.append(tuple(length_and_word(translation((3,) + (0,) * (n - 1)))[1])[:12])

    def count(word):
        spec = WalkSpec(word, identity(n))
        return sum(1 for _ in enumerate_walks(spec)) == 2 ** len(word)

    run.check("|walks of a reduced word| = 2^length (length <= 12)", words, count)

    elems = [random_element(n, rng) for _ in range(instances)]
    run.check(
        "|L(w)| = length(w)",
        elems,
        lambda g: len(set(inversion_set(n, length_and_word(g)[1]))) == length(g),
    )
    run.check(
        "all inversion-set roots are positive",
        elems,
        lambda g: all(is_positive(b) for b in inversion_set(n, length_and_word(g)[1])),
    )

    def tep(i):
        word = tep_word(n, i)
        g = word_to_element(n, word)
        eps = tuple(1 if k == i - 1 else 0 for k in range(n))
        return g == translation(eps) and length(g) == len(word) == 2 * n

    run.check("displayed reduced words of t(eps_i)", range(1, n + 1), tep)

    if n == 2:
        word = (1, 2, 1, 0)
        spec = WalkSpec(word, identity(2))
        walks = {p.bits: p for p in enumerate_walks(spec)}
        e = identity(2)
        s = {i: simple_reflection(2, i) for i in range(3)}
        expected = [
            [e, e, s[2], s[2] * s[1], s[2] * s[1] * s[0]],
            [e, s[1], s[1] * s[2], s[1] * s[2] * s[1], s[1] * s[2] * s[1] * s[0]],
        ]

        def member(alcoves):
            return any(p.elements() == alcoves for p in walks.values())

        run.check("rank-2 example walks p1, p2 of type s1 s2 s1 s0", expected, member)


def suite_eigen(run: _Runner, n: int, rng: random.Random, mode: str = "exact", points: int = 5) -> None:
    """Y-eigenfunctions and agreement of the two constructions of ``E_mu``."""
    rep = representation(n)
    small = list(itertools.product(range(-1, 2), repeat=n))
    large = [m for m in itertools.product(range(-2, 3), repeat=n) if m not in small]

    def eigen_in(r):
        def pred(mu):
            E, spec = r.intertwiner_word(length_and_word(min_coset_rep(mu))[1])
            for i in range(n):
                eps = tuple(1 if k == i else 0 for k in range(n))
                val = r.B.mono(spec.eig[i])
                if r.Y(eps, E) != E.scale(val):
                    return False
            return True

        return pred

    run.check("Y^{eps_i} E_mu = spectral value * E_mu (|mu_i| <= 1, exact)", small, eigen_in(rep))
    for k in range(points):
        r = representation(n, EvalBackend(EvalPoint.random(rng)))
        run.check(
            f"Y^{{eps_i}} E_mu = spectral value * E_mu (|mu_i| = 2, eval point {k})",
            large,
            eigen_in(r),
        )
    run.check(
        "Ram-Yip sum = iterated intertwiners (|mu_i| <= 2, exact)",
        small + large,
        lambda mu: e_poly_ramyip(mu, rep) == e_poly_intertwiner(mu, rep),
    )

    lams = symmetric_test_weights(n)
    W0 = finite_weyl_group(n)

    def p_contracts(lam):
        P = p_poly(lam, rep=rep)
        if P.coeff(lam) != rep.B.one:
            return False
        if any(rep.weyl_act(w, P) != P for w in W0):
            return False
        return P == p_poly(lam, "rho_sum", rep)

    run.check("P_lam monic, W0-invariant, symmetrize = rho-sum", lams, p_contracts)


def suite_pieri(run: _Runner, n: int, rng: random.Random, points: int = 20) -> None:
    """Rank-1 Pieri coefficients and the classical Askey-Wilson recurrence."""
    rep = representation(1)
    ls = range(1, 6)

    def lr_matches(form):
        def pred(l):
            F, G = pieri_aw(l, form, rep)
            lr = lr_expand((1,), (l,), rep)
            want = {(l + 1,): rep.B.one, (l,): F, (l - 1,): G}
            want = {k: v for k, v in want.items() if not v.is_zero()}
            return lr.pairs.keys() == want.keys() and all(lr.pairs[k] == want[k] for k in want)

        return pred

    run.check("P_1 P_l = LR oracle (l = 1..5)", ls, lambda l: lr_expand((1,), (l,), rep) == lr_oracle((1,), (l,), rep))
    run.check("closed forms F_l (corrected bracket), G_l = LR (l = 1..5)", ls, lr_matches("corrected"))
    run.check(
        "G_l as displayed = LR (l = 1..5)",
        ls,
        lambda l: pieri_aw(l, "printed", rep)[1] == lr_expand((1,), (l,), rep).pairs.get((l - 1,)),
    )
    run.check("P_1 P_0 = P_1, (F_0, G_0) = (0, 0)", [0], lambda l: all(x.is_zero() for x in pieri_aw(0)))
    run.check(
        "Askey-Wilson recurrence pushed through the parameter map = corrected (F_l, G_l)",
        range(1, 5),
        lambda l: tuple(aw_to_koornwinder(x) for x in aw_pieri_from_classical(l))
        == pieri_aw(l, "corrected", rep),
    )

    run.check(
        "displayed F_l bracket = LR (l = 1..5)",
        ls,
        lambda l: pieri_aw(l, "printed", rep)[0] == lr_expand((1,), (l,), rep).pairs.get((l,)),
        note="the displayed bracket multiplying rho(2l delta - alpha_1) has the wrong sign and psi",
        informational=True,
    )

    coeffs = {
        l: [aw_to_koornwinder(x) for x in aw_classical_coeffs(l)]
        + [aw_to_koornwinder(aw_gamma(k)) for k in (l - 1, l, l + 1)]
        for l in range(1, 5)
    }

    def recurrence(case):
        l, pt = case
        r = representation(1, EvalBackend(pt))
        f, g, h, g0, g1, g2 = (evaluate(x, pt) for x in coeffs[l])
        P1 = p_poly((1,), rep=r)
        two_z = P1 - r.one().scale(P1.coeff((0,)))  # x + 1/x
        lo, mid, hi = (p_poly((k,), rep=r) for k in (l - 1, l, l + 1))
        # p_k = gamma_k P_k
        lhs = two_z * mid.scale(g1)
        rhs = hi.scale(h * g2) + mid.scale(f * g1) + lo.scale(g * g0)
        return lhs == rhs

    cases = [(l, EvalPoint.random(rng)) for _ in range(points) for l in range(1, 5)]
    run.check(
        "classical recurrence 2z p_l = h p_{l+1} + f p_l + g p_{l-1} at random points",
        cases,
        recurrence,
    )


def suite_hl(run: _Runner, n: int, rng: random.Random) -> None:
    """Hall-Littlewood limit against ``q = 0`` of the LR coefficients."""
    for r in sorted({1, min(n, 2)}):
        rep = representation(r)
        pairs = [
            (lam, mu)
            for lam in dominant_weights(r, 3)
            for mu in dominant_weights(r, 3)
            if sum(lam) + sum(mu) <= 3
        ]
        run.check(
            f"Hall-Littlewood sum = LR at q = 0 (rank {r}, |lam|+|mu| <= 3)",
            pairs,
            lambda pm: hl_coefficients(*pm, rep) == lr_at_q_zero(lr_expand(*pm, rep)),
        )
    rep = representation(1)
    F, G = pieri_aw(1, "corrected", rep)
    want = {k: substitute_q_zero(v) for k, v in {(2,): rep.B.one, (1,): F, (0,): G}.items()}
    run.check(
        "rank-1 l = 1 limit equals q = 0 of (F_1, G_1)",
        [None],
        lambda _: all(
            hl_coefficients((1,), (1,), rep).pairs.get(k, rep.B.zero) == v for k, v in want.items()
        ),
    )


def suite_rank2(run: _Runner, n: int, rng: random.Random) -> None:
    """``P_{w1} P_{w2}`` three ways, reported per check."""
    report = rank2_example()
    checks = report["checks"]
    run.check("rank-2 LR = oracle", [None], lambda _: checks["lr_equals_oracle"])
    run.check("rank-2 corrected closed forms F, G = LR", [None], lambda _: checks["corrected_closed_forms"])
    run.check("rank-2 per-v A-factors", list(report["a_factor_checks"].values()), bool)
    run.check(
        "rank-2 displayed closed forms F, G = LR",
        [None],
        lambda _: checks["printed_closed_forms"],
        note="the displayed F and G contain a vanishing rho factor",
        informational=True,
    )


def suite_oracle(run: _Runner, n: int, rng: random.Random, total: int = 3) -> None:
    """LR walk sum against the peeling oracle on a small grid."""
    rep = representation(n)
    pairs = [
        (lam, mu)
        for lam in dominant_weights(n, total)
        for mu in dominant_weights(n, total)
        if sum(lam) + sum(mu) <= total
    ]
    run.check(
        f"LR walk sum = peeling oracle (rank {n}, |lam|+|mu| <= {total})",
        pairs,
        lambda pm: lr_expand(*pm, rep) == lr_oracle(*pm, rep),
    )


SUITES = {
    "hecke": suite_hecke,
    "walks": suite_walks,
    "eigen": suite_eigen,
    "pieri": suite_pieri,
    "hl": suite_hl,
    "rank2": suite_rank2,
    "oracle": suite_oracle,
}


def run_suite(name: str, rank: int = 2, seed: int = 0, mode: str = "exact") -> SuiteReport:
    """Run one suite (or ``"all"``) with a single seeded generator."""
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    rng = random.Random(seed)
    report = SuiteReport(name, rank, seed, mode)
    run = _Runner(report)
    names = list(SUITES) if name == "all" else [name]
    for s in names:
        fn = SUITES[s]
        if s == "eigen":
            fn(run, rank, rng, mode)
        else:
            fn(run, rank, rng)
    return report
