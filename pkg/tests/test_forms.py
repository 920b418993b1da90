import random
from fractions import Fraction

import pytest

from supercalc import randomgen as rg
from supercalc.berezin import Domain, mixed_integral
from supercalc.forms import (
    CoordinateSystem,
    SuperDensity,
    SuperForm,
    SuperVectorField,
    commutator_table,
    contract_iX,
    divergence,
    exterior_d,
    form_from_json,
    form_to_json,
    function_to_mixed,
    insert_iX,
    integrate_density,
    lie_derivative,
    mixed_to_function,
    op_divergence,
    op_e_form,
    op_i_form,
    pairing,
    scalar_density_integral,
    wedge,
)
from supercalc.graded_poly import GradedPoly
from supercalc.grassmann import Parity
from supercalc.scalars import CRat
from supercalc.suites import _trial_set


def test_wedge_symmetry_rules():
    c = CoordinateSystem(2, 2)
    dx1, dx2, dxi1, dxi2 = c.dx(1), c.dx(2), c.dxi(1), c.dxi(2)
    assert dx1 * dx2 == -(dx2 * dx1)
    assert dxi1 * dxi2 == dxi2 * dxi1
    assert (dx1 * dx1).is_zero()
    assert not (dxi1 * dxi1).is_zero()
    w1 = SuperForm(c, dx1)
    w2 = SuperForm(c, dxi1)
    assert wedge(w1, w2).degree == 2


def test_form_parity_counts_bosonic_differentials():
    c = CoordinateSystem(2, 2)
    w = SuperForm(c, c.dx(1) * c.dxi(1))
    assert w.parity() is Parity.ODD  # one bosonic differential
    w2 = SuperForm(c, c.dx(1) * c.dx(2))
    assert w2.parity() is Parity.EVEN


def test_exterior_d_examples():
    c = CoordinateSystem(2, 2)
    x1 = c.x(1).with_carrier(c.forms)
    w = SuperForm(c, x1 * c.dx(2))
    assert exterior_d(w) == SuperForm(c, c.dx(1) * c.dx(2))
    xi1 = SuperForm.from_function(c, c.xi(1))
    assert exterior_d(xi1) == SuperForm(c, c.dxi(1))
    assert exterior_d(exterior_d(xi1)).is_zero()


def test_dd_zero_random_mixed():
    rng = random.Random(21)
    c = CoordinateSystem(2, 2)
    for k in range(40):
        w = rg.form(rng, c, k % 4)
        assert exterior_d(exterior_d(w)).is_zero()


def test_divergence_example_and_bb():
    c2 = CoordinateSystem(2, 0)
    dens = SuperDensity(
        c2,
        GradedPoly.aux_odd(c2.densities, 1) * c2.x(1).with_carrier(c2.densities)
        + GradedPoly.aux_odd(c2.densities, 2) * c2.x(2).with_carrier(c2.densities),
    )
    out = divergence(dens)
    assert out == SuperDensity.from_function(c2, 2)
    with pytest.raises(ValueError):
        divergence(out)  # degree 0
    rng = random.Random(22)
    c3 = CoordinateSystem(3, 0)
    for k in range(20):
        u = rg.density(rng, c3, 2)
        assert divergence(u).poly == op_divergence(c3)(u.poly)
        if u.degree >= 2:
            dd = op_divergence(c3)(op_divergence(c3)(u.poly))
            assert dd.is_zero()
    cg = CoordinateSystem(0, 3)
    for k in range(20):
        u = rg.density(rng, cg, 2 + k % 2)
        assert op_divergence(cg)(op_divergence(cg)(u.poly)).is_zero()


def test_contraction_examples():
    c2 = CoordinateSystem(2, 0)
    vol = SuperForm(c2, c2.dx(1) * c2.dx(2))
    d1 = SuperVectorField.coordinate_basis(c2, ("x", 1))
    assert contract_iX(d1, vol) == SuperForm(c2, c2.dx(2))
    with pytest.raises(ValueError):
        contract_iX(d1, SuperForm.from_function(c2, 1))


def test_insertion_cyclic_example():
    # 2-density with component F^{12} = 1 in three dimensions: inserting
    # the third coordinate direction gives the cyclic three-term sum,
    # which in canonical order is the single slot monomial y1 y2 y3
    c3 = CoordinateSystem(3, 0)
    f12 = GradedPoly.aux_odd(c3.densities, 1) * GradedPoly.aux_odd(c3.densities, 2)
    dens = SuperDensity(c3, f12)
    x3 = SuperVectorField.coordinate_basis(c3, ("x", 3))
    ins = insert_iX(x3, dens)
    want = f12 * GradedPoly.aux_odd(c3.densities, 3)
    assert ins == SuperDensity(c3, want)
    assert ins.degree == 3


def test_grassmann_contraction_is_even_derivation():
    rng = random.Random(23)
    c = CoordinateSystem(0, 2)
    xi_dir = SuperVectorField.coordinate_basis(c, ("xi", 1))
    i_op = op_i_form(xi_dir)
    for _ in range(15):
        w = rg.form(rng, c, rng.randint(0, 3)).poly
        v = rg.form(rng, c, rng.randint(0, 3)).poly
        assert (i_op(w * v) - (i_op(w) * v + w * i_op(v))).is_zero()


def test_lie_derivative_examples():
    c = CoordinateSystem(2, 1)
    d1 = SuperVectorField.coordinate_basis(c, ("x", 1))
    rng = random.Random(24)
    for _ in range(10):
        w = rg.form(rng, c, rng.randint(0, 2))
        got = lie_derivative(d1, w)
        assert got.poly == w.poly.partial_x(1)
    # L_X(f w) = (Xf) w + f L_X(w) for even X
    x_field = rg.vector_field(rng, c, 0)
    f = rg.superfunction(rng, c, parity=0)
    for _ in range(5):
        w = rg.form(rng, c, 1)
        lhs = lie_derivative(x_field, SuperForm(c, f.with_carrier(c.forms) * w.poly))
        rhs = SuperForm(
            c,
            x_field.apply(f).with_carrier(c.forms) * w.poly
            + f.with_carrier(c.forms) * lie_derivative(x_field, w).poly,
        )
        assert lhs == rhs
    # constant form along a constant field
    const_field = SuperVectorField.make(c, [1, 2], [0], parity=0)
    const_form = SuperForm(c, c.dx(1) * c.dx(2))
    assert lie_derivative(const_field, const_form).is_zero()


def test_lie_on_densities_and_functions():
    c = CoordinateSystem(1, 1)
    rng = random.Random(25)
    x_field = rg.vector_field(rng, c, 0)
    f = rg.superfunction(rng, c)
    assert lie_derivative(x_field, f) == x_field.apply(f)
    u = rg.density(rng, c, 1)
    out = lie_derivative(x_field, u)
    assert isinstance(out, SuperDensity)


def test_operator_degree_shifts():
    c = CoordinateSystem(2, 2)
    rng = random.Random(26)
    w = rg.form(rng, c, 1)
    e_op = op_e_form(c, c.x(1))
    assert SuperForm(c, e_op(w.poly)).degree == 2
    i_op = op_i_form(SuperVectorField.coordinate_basis(c, ("x", 1)))
    out = i_op(w.poly)
    if not out.is_zero():
        assert SuperForm(c, out).degree == 0
    u = rg.density(rng, c, 1)
    ins = insert_iX(SuperVectorField.coordinate_basis(c, ("xi", 1)), u)
    assert ins.degree == 2


def test_complex_does_not_terminate():
    c = CoordinateSystem(0, 2)
    high = GradedPoly.aux_even(c.forms, 1) ** (c.nu + 2)
    assert not high.is_zero()
    assert SuperForm(c, high).degree == c.nu + 2


def test_commutator_table_all_mixes():
    rng = random.Random(27)
    for mix in ((2, 0), (0, 2), (2, 2), (3, 1)):
        coords = CoordinateSystem(*mix)
        for res in commutator_table(coords, _trial_set(rng, coords)):
            assert res.failures == 0, f"{mix}: {res.name}"


def test_vector_field_parity_validation():
    c = CoordinateSystem(1, 1)
    with pytest.raises(ValueError):
        SuperVectorField.make(c, [c.xi(1)], [0], parity=0)  # odd bosonic comp


def test_integrate_density_examples():
    c = CoordinateSystem(1, 2)
    f = (
        c.x(1) * c.xi(1) * c.xi(2)
    )  # f(x) xi1 xi2 with f = x
    assert integrate_density(f, ((0, 1),)) == CRat(Fraction(1, 2))
    # independent of the top monomial: zero
    g = c.x(1) * c.xi(1)
    assert integrate_density(g, ((0, 1),)) == CRat(0)
    # scalar-density wrapper accepted
    dens = SuperDensity.from_function(c, f)
    assert integrate_density(dens, ((0, 1),)) == CRat(Fraction(1, 2))
    with pytest.raises(ValueError):
        integrate_density(SuperDensity(c, GradedPoly.aux_odd(c.densities, 1)), ((0, 1),))


def test_integrate_density_matches_mixed_route():
    rng = random.Random(28)
    c = CoordinateSystem(2, 2)
    bounds = ((0, 1), (-1, 2))
    for _ in range(20):
        fn = rg.superfunction(rng, c, terms=5)
        direct = scalar_density_integral(fn, bounds)
        # split route: Grassmann derivative first (the differential
        # operator to the body), then the body integral
        via_mixed = mixed_integral(function_to_mixed(fn), Domain(bounds))
        assert direct == via_mixed
        assert mixed_to_function(function_to_mixed(fn)) == fn


def test_pairing_degree_orthogonality_and_weights():
    c = CoordinateSystem(1, 1)
    dens1 = SuperDensity(c, GradedPoly.aux_even(c.densities, 1))
    form1 = SuperForm(c, c.dxi(1))
    assert pairing(dens1, form1) == GradedPoly.unit(c.functions)
    form2 = SuperForm(c, c.dxi(1) ** 2)
    dens2 = SuperDensity(c, GradedPoly.aux_even(c.densities, 1) ** 2)
    assert pairing(dens2, form2) == GradedPoly.scalar(c.functions, 2)  # 2! weight
    assert pairing(dens1, form2).is_zero()  # degree mismatch


def test_form_json_round_trip():
    rng = random.Random(29)
    c = CoordinateSystem(2, 2)
    for k in range(8):
        w = rg.form(rng, c, k % 4)
        data = form_to_json(w)
        assert form_from_json(data) == w
