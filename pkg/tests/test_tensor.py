"""Tensor products with the intermediate series: actions, chains, decisions."""

import random
from fractions import Fraction

import pytest

from vermatools import verma
from vermatools.liealg import HV, W22, I, L, W
from vermatools.pbw import HighestWeight, ModuleContext
from vermatools.scalar import PolyContext
from vermatools.tensor import (
    IntermediateSeries,
    TensorSpace,
    cyclicity_check,
    decide_tensor,
    decide_tensor_hv,
    hv_decision_polynomials,
    lambda_product,
    series_action,
    subquotient_free_dims,
    subquotient_weight,
)


def w22_weight(c, h, hW, names=()):
    ctx = PolyContext(names)
    return HighestWeight.w22(ctx, c=c, h=h, hW=hW)


def hv_weight(cL, cLI, h, hI, names=()):
    ctx = PolyContext(names)
    return HighestWeight.hv(ctx, cL=cL, cLI=cLI, h=h, hI=hI, cI=0)


def subsingular_weight(p, r, hW=Fraction(1)):
    if p == 1:
        return w22_weight(1, verma.necessary_h(1, r, Fraction(0)), 0)
    return w22_weight(hW * Fraction(-24, p * p - 1),
                      verma.necessary_h(p, r, hW), hW)


# ---------------------------------------------------------------------------
# The series action


def test_series_coefficients():
    ctx = PolyContext(())
    s = IntermediateSeries.make(ctx, Fraction(1, 3), Fraction(1, 2))
    for n in (-2, 0, 3):
        for m in (-1, 0, 4):
            coeff, target = series_action(L(n), m, s)
            assert target == m + n
            assert coeff.as_fraction() == -(
                Fraction(m) + Fraction(1, 3) + Fraction(1, 2) + n * Fraction(1, 2))
            wc, _ = series_action(W(n), m, s)
            assert wc.is_zero()
    sf = IntermediateSeries.make(ctx, 0, 0, F=Fraction(5, 7))
    for n in (-1, 2):
        coeff, target = series_action(I(n), 3, sf)
        assert coeff.as_fraction() == Fraction(5, 7) and target == 3 + n


def test_reducible_series_detection():
    ctx = PolyContext(())
    assert IntermediateSeries.make(ctx, 2, 0).excluded_index() == -2
    assert IntermediateSeries.make(ctx, 2, 1).excluded_index() == -3
    assert not IntermediateSeries.make(ctx, Fraction(1, 2), 0).is_reducible_series()
    assert not IntermediateSeries.make(ctx, 0, Fraction(1, 2)).is_reducible_series()
    assert not IntermediateSeries.make(ctx, 0, 0, F=1).is_reducible_series()


def test_excluded_component_never_appears():
    hw = w22_weight(1, 2, 3)
    s = IntermediateSeries.make(hw.ctx, 0, 0)
    space = TensorSpace(ModuleContext(hw), s, (-4, 4))
    x = space.vacuum_at(1)
    y = space.act(L(-1), x)  # would land on the excluded index 0
    assert all(m != 0 for m, _ in y.terms)
    with pytest.raises(ValueError):
        space.vacuum_at(0)


def test_window_overflow_is_loud():
    hw = w22_weight(1, 2, 3)
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 3), 0)
    space = TensorSpace(ModuleContext(hw), s, (-2, 2))
    with pytest.raises(ValueError, match="window overflow"):
        space.act(L(-3), space.vacuum_at(0))


def random_tensor_vector(space, rng, kind):
    low = W if kind == W22 else I
    start = rng.randint(-2, 2)
    if start == space.excluded:
        start += 1
    x = space.vacuum_at(start)
    for _ in range(rng.randint(0, 2)):
        fam = L if rng.random() < 0.5 else low
        x = space.act(fam(rng.randint(-2, 2)), x)
        if x.is_zero():
            return space.vacuum_at(start)
    return x


@pytest.mark.parametrize("kind,alpha,beta,f", [
    (W22, Fraction(1, 3), Fraction(1, 2), 0),
    (W22, 0, 0, 0),
    (W22, 1, 1, 0),
    (HV, Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)),
    (HV, -1, 0, 0),
])
def test_tensor_action_respects_brackets(kind, alpha, beta, f):
    if kind == W22:
        hw = w22_weight(Fraction(2), Fraction(1, 2), Fraction(3))
        low = W
    else:
        hw = hv_weight(1, 2, 3, 5)
        low = I
    M = ModuleContext(hw)
    s = IntermediateSeries.make(hw.ctx, alpha, beta, f)
    space = TensorSpace(M, s, (-12, 12))
    rng = random.Random(777)
    gens = [fam(n) for n in range(-2, 3) for fam in (L, low)]
    for _ in range(25):
        a = gens[rng.randrange(len(gens))]
        b = gens[rng.randrange(len(gens))]
        x = random_tensor_vector(space, rng, kind)
        lhs = space.act(a, space.act(b, x)) - space.act(b, space.act(a, x))
        rhs = space.zero()
        from vermatools.liealg import bracket

        for g, coeff in bracket(a, b, kind):
            rhs = rhs + space.act(g, x).scaled(M.scalar_ctx.scalar(coeff))
        assert lhs == rhs


def test_component_weights_are_homogeneous():
    """Acting by a mode-n generator keeps level minus index constant."""
    hw = w22_weight(1, 2, 3)
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 3), 0)
    space = TensorSpace(ModuleContext(hw), s, (-8, 8))
    x = space.vacuum_at(2)
    for word in ([L(-1)], [L(-2), W(-1)], [W(-1), L(1), L(-3)]):
        y = space.multiply(word, x)
        offsets = {mono.level - m for (m, mono) in y.terms}
        assert len(offsets) == 1
        assert offsets == {sum(-g.mode for g in word) - 2}


# ---------------------------------------------------------------------------
# Cyclicity chains and the decision


def test_lambda_roots_are_the_break_indices():
    hw21 = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw21.ctx, 0, 0)
    for n in range(-3, 3):
        lam = lambda_product(hw21, s, n, 2, 1)
        assert lam.is_zero() == (n == -1)
        if n - 1 != s.excluded_index():
            assert cyclicity_check(hw21, s, n, 4) == (n != -1)

    hw12 = subsingular_weight(1, 2)
    s12 = IntermediateSeries.make(hw12.ctx, 0, 0)
    for n in range(-3, 3):
        lam = lambda_product(hw12, s12, n, 1, 2)
        assert lam.is_zero() == (n in (-1, 0))
        if n - 1 != s12.excluded_index():
            assert cyclicity_check(hw12, s12, n, 4) == (n not in (-1, 0))


def test_decide_requires_both_vectors_for_irreducibility():
    s_frac = lambda ctx: IntermediateSeries.make(ctx, Fraction(1, 3), 0)

    hw_gen = w22_weight(5, 3, 1)
    d = decide_tensor(hw_gen, s_frac(hw_gen.ctx))
    assert (d.verdict, d.reason) == ("Reducible", "NoSubsingular")

    hw_only = w22_weight(-8, 0, 1)
    d2 = decide_tensor(hw_only, s_frac(hw_only.ctx))
    assert (d2.verdict, d2.reason) == ("Reducible", "NoSubsingular")
    assert d2.p == 2

    hw_both = subsingular_weight(2, 1)
    d3 = decide_tensor(hw_both, s_frac(hw_both.ctx))
    assert d3.verdict == "Irreducible"
    assert d3.reason == "ProductNonzero"
    assert not d3.witness.is_zero()


def test_decide_integral_shift_witness():
    hw = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw.ctx, 1, 0)  # t = 1
    d = decide_tensor(hw, s)
    assert (d.verdict, d.reason, d.witness) == ("Reducible", "IntegralShift", -2)
    s2 = IntermediateSeries.make(hw.ctx, 0, 1)  # t = alpha + (1-p) beta = -1
    d2 = decide_tensor(hw, s2)
    assert (d2.verdict, d2.witness) == ("Reducible", 0)


def test_decide_rejects_symbolic_and_nonzero_f():
    ctx = PolyContext(("alpha",))
    hw = HighestWeight.w22(ctx, c=1, h=0, hW=0)
    with pytest.raises(ValueError):
        decide_tensor(hw, IntermediateSeries(ctx.var("alpha"), ctx.zero, ctx.zero))
    hw2 = w22_weight(1, 0, 0)
    with pytest.raises(ValueError):
        decide_tensor(hw2, IntermediateSeries.make(hw2.ctx, 0, 0, F=1))


def test_verma_factor_chain_never_stabilizes():
    hw = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw.ctx, 0, 0)
    for n in (-1, 2):
        assert not cyclicity_check(hw, s, n, 4, quotient="verma")
    s_frac = IntermediateSeries.make(hw.ctx, Fraction(1, 2), 0)
    for n in (-1, 0, 2):
        assert not cyclicity_check(hw, s_frac, n, 4, quotient="verma")


def test_layer_dimensions_match_free_modules():
    hw = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 2), 0)
    dims = subquotient_free_dims(hw, s, 0, 3)
    assert dims == {1: 2, 2: 5, 3: 10}


def test_cyclicity_rejects_excluded_target():
    hw = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw.ctx, 0, 0)  # excluded index 0
    with pytest.raises(ValueError, match="excluded"):
        cyclicity_check(hw, s, 1, 4)


def test_subquotient_weight_arithmetic():
    hw = w22_weight(1, Fraction(5, 2), 3)
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 3), Fraction(1, 2))
    wq = subquotient_weight(hw, s, 2)
    assert wq["h"].as_fraction() == Fraction(5, 2) - (2 + Fraction(1, 3) + Fraction(1, 2))
    assert wq["c"] == hw["c"] and wq["hW"] == hw["hW"]
    hv = hv_weight(1, 2, 3, 5)
    sf = IntermediateSeries.make(hv.ctx, 0, Fraction(1, 2), F=Fraction(1, 4))
    wq2 = subquotient_weight(hv, sf, -1)
    assert wq2["hI"].as_fraction() == 5 + Fraction(1, 4)
    assert wq2["h"].as_fraction() == 3 - (-1 + 0 + Fraction(1, 2))
    s_prime = IntermediateSeries.make(hw.ctx, 2, 0)
    with pytest.raises(ValueError):
        subquotient_weight(hw, s_prime, -2)


# ---------------------------------------------------------------------------
# Twisted Heisenberg-Virasoro certificates and decisions


def test_certificate_values_level_one():
    # pure-I degeneracy at p = 1: the descent certificate is s(F) = 1
    hw_i = hv_weight(1, 2, 3, 4)  # hI / cLI = 2 = 1 + p
    s = IntermediateSeries.make(hw_i.ctx, Fraction(1, 3), 0, F=1)
    cert = hv_decision_polynomials(hw_i, s, 1)
    assert cert.case == "I"
    assert cert.s_poly == cert.s_poly.ctx.one

    # L-case at p = 1: u'(v_{n+1} (x) v) = (-n - 1 - alpha + (h/cLI) F) v_n (x) v
    hw_l = hv_weight(1, 2, 5, 0)  # hI / cLI = 0 = 1 - p
    sl = IntermediateSeries.make(hw_l.ctx, Fraction(1, 3), 0, F=1)
    cert_l = hv_decision_polynomials(hw_l, sl, 1)
    assert cert_l.case == "L"
    ectx = cert_l.q_poly.ctx
    F = ectx.var("F")
    assert cert_l.q_poly == -ectx.one
    assert cert_l.r_poly == ectx.scalar(Fraction(-4, 3)) + F * Fraction(5, 2)


def test_certificate_value_level_two():
    hw = hv_weight(1, 2, 3, 6)  # hI / cLI = 3 = 1 + p with p = 2
    s = IntermediateSeries.make(hw.ctx, 0, 0, F=1)
    cert = hv_decision_polynomials(hw, s, 2)
    ectx = cert.s_poly.ctx
    assert cert.s_poly == ectx.one + ectx.var("F") / 2


@pytest.mark.parametrize("p,case", [(1, "I"), (2, "I"), (1, "L"), (2, "L")])
def test_certificate_degrees(p, case):
    if case == "I":
        hw = hv_weight(1, 2, 3, 2 * (1 + p))
    else:
        hw = hv_weight(1, 2, 3, 2 * (1 - p))
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 3), 0, F=1)
    cert = hv_decision_polynomials(hw, s, p)
    if case == "I":
        assert cert.s_poly.degree_in("F") == p - 1
    else:
        assert cert.q_poly.degree_in("F") == p - 1
        assert cert.r_poly.degree_in("F") == p


def test_hv_vacuum_decisions():
    hw = hv_weight(1, 2, 0, 0)
    d = decide_tensor_hv(hw, IntermediateSeries.make(hw.ctx, Fraction(1, 2), 0, F=5))
    assert d.verdict == "Irreducible"
    d2 = decide_tensor_hv(hw, IntermediateSeries.make(hw.ctx, -3, 1, F=5))
    assert (d2.verdict, d2.reason, d2.witness) == ("Reducible", "IntegralShift", 3)


def test_hv_generic_ratio_is_reducible():
    hw = hv_weight(1, 2, 3, 3)  # ratio 3/2, not an integer
    d = decide_tensor_hv(hw, IntermediateSeries.make(hw.ctx, 0, 0))
    assert (d.verdict, d.reason) == ("Reducible", "NoSubsingular")
    hw1 = hv_weight(1, 2, 3, 2)  # ratio 1: no degeneracy at any level
    d1 = decide_tensor_hv(hw1, IntermediateSeries.make(hw1.ctx, 0, 0))
    assert (d1.verdict, d1.reason) == ("Reducible", "NoSubsingular")


def test_hv_pure_i_case_matrix():
    hw = hv_weight(1, 2, 3, 6)  # I-case, p = 2, s(F) = 1 + F/2
    make = lambda f: IntermediateSeries.make(hw.ctx, Fraction(1, 3), 0, F=f)
    assert decide_tensor_hv(hw, make(0)).verdict == "Reducible"
    d_irr = decide_tensor_hv(hw, make(3))
    assert d_irr.verdict == "Irreducible"
    assert d_irr.witness.as_fraction() == Fraction(15, 2)
    d_unknown = decide_tensor_hv(hw, make(-2))
    assert d_unknown.verdict == "Unknown"


def test_hv_l_case_matrix():
    hw = hv_weight(1, 1, 2, 0)  # L-case, p = 1, certificate -n - 1 - alpha + 2F
    make = lambda a, f: IntermediateSeries.make(hw.ctx, a, 0, F=f)
    assert decide_tensor_hv(hw, make(Fraction(1, 2), 0)).verdict == "Irreducible"
    d_shift = decide_tensor_hv(hw, make(-1, 0))
    assert (d_shift.verdict, d_shift.reason, d_shift.witness) == (
        "Reducible", "IntegralShift", 1)
    # q n + r with q = -1, r = -1 - alpha + 2F: F = 1, alpha = 0 vanishes at n = 1
    assert decide_tensor_hv(hw, make(0, 1)).verdict == "Unknown"
    assert decide_tensor_hv(hw, make(0, Fraction(1, 3))).verdict == "Irreducible"


def test_hv_symbolic_f_is_transcendental():
    ctx = PolyContext(("F",))
    hw = HighestWeight.hv(ctx, cL=1, cLI=2, h=3, hI=6, cI=0)
    s = IntermediateSeries(ctx.scalar(Fraction(1, 3)), ctx.zero, ctx.var("F"))
    d = decide_tensor_hv(hw, s)
    assert d.verdict == "Irreducible"

    hw_l = HighestWeight.hv(ctx, cL=1, cLI=1, h=2, hI=0, cI=0)
    sl = IntermediateSeries(ctx.zero, ctx.zero, ctx.var("F"))
    dl = decide_tensor_hv(hw_l, sl)
    assert dl.verdict == "Irreducible"


def test_hv_decide_rejects_bad_central_charges():
    ctx = PolyContext(())
    bad_ci = HighestWeight.hv(ctx, cL=1, cLI=2, h=0, hI=3, cI=1)
    with pytest.raises(ValueError):
        decide_tensor_hv(bad_ci, IntermediateSeries.make(ctx, 0, 0))
    bad_cli = HighestWeight.hv(ctx, cL=1, cLI=0, h=0, hI=3, cI=0)
    with pytest.raises(ValueError):
        decide_tensor_hv(bad_cli, IntermediateSeries.make(ctx, 0, 0))


def test_decision_json_shape():
    hw = subsingular_weight(2, 1)
    s = IntermediateSeries.make(hw.ctx, Fraction(1, 3), 0)
    doc = decide_tensor(hw, s).to_json()
    assert doc["verdict"] == "Irreducible"
    assert set(doc) == {"verdict", "reason", "witness", "notes", "p", "r"}
    assert "text" in doc["witness"]
