import math
import random
from fractions import Fraction

import pytest

from supercalc import quadrature
from supercalc import randomgen as rg
from supercalc.berezin import berezin_integral
from supercalc.fock import (
    REPRESENTATIONS,
    FockAlgebraSpec,
    FockState,
    ModeError,
    apply,
    apply_word,
    dual_product,
    geometric_operator_name,
    inner_product,
    norm_squared,
    spanning_states,
    translate,
)
from supercalc.graded_poly import GradedPoly
from supercalc.grassmann import Supernumber
from supercalc.scalars import CRat

SPEC = FockAlgebraSpec(2, 2)


def comm(o1, o2, s, anti=False):
    a = apply(o1, apply(o2, s))
    b = apply(o2, apply(o1, s))
    return a + b if anti else a - b


def test_number_operator_on_single_quantum():
    vac = FockState.vacuum(SPEC)
    z1 = apply(("b+", 1), vac)
    assert apply(("b+", 1), apply(("b", 1), z1)) == z1


def test_fermionic_nilpotency():
    vac = FockState.vacuum(SPEC)
    assert apply(("f+", 1), apply(("f+", 1), vac)).is_zero()


def test_mode_bounds():
    vac = FockState.vacuum(SPEC)
    with pytest.raises(ModeError):
        apply(("b", 3), vac)
    with pytest.raises(ModeError):
        apply(("f+", 0), vac)


@pytest.mark.parametrize("rep", REPRESENTATIONS)
def test_algebra_relations(rep):
    states = spanning_states(SPEC, rep, max_occupation=2)
    vac = FockState.vacuum(SPEC, rep)
    for op in (("b", 1), ("b", 2), ("f", 1), ("f", 2)):
        assert apply(op, vac).is_zero()
    for s in states:
        for i in (1, 2):
            for j in (1, 2):
                want = s.scale(1 if i == j else 0)
                assert (comm(("b", i), ("b+", j), s) - want).is_zero()
                assert (comm(("f", i), ("f+", j), s, anti=True) - want).is_zero()
                assert comm(("b", i), ("b", j), s).is_zero()
                assert comm(("f", i), ("f", j), s, anti=True).is_zero()
                for o1 in (("b", i), ("b+", i)):
                    for o2 in (("f", j), ("f+", j)):
                        assert comm(o1, o2, s).is_zero()


def test_form_representation_is_differential_operators():
    # b+ multiplies by the even differential, f+ by the odd one
    spec = FockAlgebraSpec(1, 1)
    vac = FockState.vacuum(spec, "form")
    carrier = spec.carrier("form")
    assert apply(("b+", 1), vac).poly == GradedPoly.aux_even(carrier, 1)
    assert apply(("f+", 1), vac).poly == GradedPoly.aux_odd(carrier, 1)
    assert geometric_operator_name("form", ("b+", 1)) == "e(xi1)"
    assert geometric_operator_name("density", ("b+", 1)) == "i(d/dxi1)"


def test_translate_intertwines_everything():
    states = spanning_states(SPEC, "holomorphic", max_occupation=3)
    ops = [(kind, i) for kind in ("b", "b+", "f", "f+") for i in (1, 2)]
    for rep in ("form", "density"):
        for s in states:
            for op in ops:
                assert (translate(apply(op, s), rep) - apply(op, translate(s, rep))).is_zero()
            assert (translate(translate(s, rep), "holomorphic") - s).is_zero()
    vac = FockState.vacuum(SPEC)
    assert translate(vac, "form") == FockState.vacuum(SPEC, "form")


def test_inner_product_vacuum_and_moments():
    vac = FockState.vacuum(SPEC)
    assert inner_product(vac, vac) == CRat(1)
    z1 = apply(("b+", 1), vac)
    assert inner_product(z1, z1) == CRat(1)
    z1sq = apply(("b+", 1), z1)
    assert inner_product(z1sq, z1sq) == CRat(2)


def test_bosonic_moments_against_gaussian_quadrature():
    # the radial Gaussian moment integral gives n! with the unit-norm
    # normalization: integral_0^inf r^(2n) e^(-r^2) 2r dr = n!
    for n in range(5):
        value = quadrature.integrate(
            lambda r, _n=n: (r ** (2 * _n)) * math.exp(-r * r) * 2 * r, 0.0, 12.0, tol=1e-12
        )
        assert abs(value - math.factorial(n)) < 1e-9
        state = FockState.vacuum(SPEC)
        for _ in range(n):
            state = apply(("b+", 1), state)
        assert inner_product(state, state) == CRat(math.factorial(n))


def test_fermionic_inner_product_against_berezin_oracle():
    # single mode: represent zeta as xi1 and its conjugate as xi2, then
    # <f|g> equals the Berezin integral of g(zeta) f*(zbar) (1 + zeta zbar)
    def berezin_inner(f_coeffs, g_coeffs):
        zeta = Supernumber.generator(2, 1)
        zbar = Supernumber.generator(2, 2)
        a0, a1 = f_coeffs
        b0, b1 = g_coeffs
        fbar = Supernumber.scalar(2, a0.conjugate()) + zbar * a1.conjugate()
        g = Supernumber.scalar(2, b0) + zeta * b1
        weight = Supernumber.unit(2) + zeta * zbar
        return berezin_integral(g * fbar * weight)

    spec1 = FockAlgebraSpec(0, 1)
    rng = random.Random(41)
    for _ in range(20):
        a = (rg.crat(rng), rg.crat(rng))
        b = (rg.crat(rng), rg.crat(rng))
        vac = FockState.vacuum(spec1)
        f_state = vac.scale(a[0]) + apply(("f+", 1), vac).scale(a[1])
        g_state = vac.scale(b[0]) + apply(("f+", 1), vac).scale(b[1])
        assert inner_product(f_state, g_state) == berezin_inner(a, b)


def test_adjointness_and_cauchy_schwarz():
    rng = random.Random(42)
    states = spanning_states(SPEC, "holomorphic", max_occupation=3)

    def random_state():
        out = FockState.vacuum(SPEC).scale(0)
        for _ in range(4):
            out = out + rng.choice(states).scale(rg.crat(rng))
        return out

    for _ in range(25):
        f, g = random_state(), random_state()
        for i in (1, 2):
            assert inner_product(f, apply(("b+", i), g)) == inner_product(apply(("b", i), f), g)
            assert inner_product(f, apply(("f+", i), g)) == inner_product(apply(("f", i), f), g)
        nf = norm_squared(f)
        assert nf.im == 0 and nf.re >= 0
        assert inner_product(f, g).abs2() <= (nf * norm_squared(g)).re


def test_dual_product_examples():
    spec = FockAlgebraSpec(1, 1)
    d_state = apply(("b+", 1), FockState.vacuum(spec, "density"))
    w_state = apply(("b+", 1), FockState.vacuum(spec, "form"))
    assert dual_product(d_state, w_state) == CRat(1)
    assert dual_product(d_state, w_state, volume=Fraction(3, 2)) == CRat(Fraction(3, 2))
    mismatched = apply(("f+", 1), w_state)
    assert dual_product(d_state, mismatched) == CRat(0)


def test_dual_product_degree_orthogonality_exhaustive():
    states = spanning_states(SPEC, "holomorphic", max_occupation=4)
    by_degree = {}
    for s in states:
        occ = s.total_occupation()
        deg = max(occ) if occ else 0
        if deg <= 4:
            by_degree.setdefault(deg, []).append(s)
    for p, sp in by_degree.items():
        for q, sq in by_degree.items():
            if p == q:
                continue
            assert dual_product(translate(sp[0], "density"), translate(sq[0], "form")) == CRat(0)


def test_dual_product_bilinear():
    rng = random.Random(43)
    states = spanning_states(SPEC, "holomorphic", max_occupation=2)
    for _ in range(10):
        f = rng.choice(states).scale(rg.crat(rng))
        g = rng.choice(states).scale(rg.crat(rng))
        h = rng.choice(states).scale(rg.crat(rng))
        lhs = dual_product(translate(f, "density"), translate(g + h, "form"))
        rhs = dual_product(translate(f, "density"), translate(g, "form")) + dual_product(
            translate(f, "density"), translate(h, "form")
        )
        assert lhs == rhs


def test_number_operators_commute_and_project():
    states = spanning_states(SPEC, "holomorphic", max_occupation=3)
    for s in states[:30]:
        for i in (1, 2):
            for j in (1, 2):
                ni = lambda t: apply(("b+", i), apply(("b", i), t))
                mj = lambda t: apply(("f+", j), apply(("f", j), t))
                assert (ni(mj(s)) - mj(ni(s))).is_zero()
                assert (mj(mj(s)) - mj(s)).is_zero()


def test_apply_word_composition():
    vac = FockState.vacuum(SPEC)
    word = [("b+", 1), ("f+", 2), ("b+", 1)]
    state = apply_word(word, vac)
    manual = apply(("b+", 1), apply(("f+", 2), apply(("b+", 1), vac)))
    assert state == manual


def test_state_json_round_trip():
    from supercalc.fock import state_from_json, state_to_json

    rng = random.Random(44)
    states = spanning_states(SPEC, "holomorphic", max_occupation=3)
    for rep in REPRESENTATIONS:
        for _ in range(8):
            s = rng.choice(states).scale(rg.crat(rng))
            if rep != "holomorphic":
                s = translate(s, rep)
            data = state_to_json(s)
            assert data["representation"] == rep
            assert state_from_json(data) == s
