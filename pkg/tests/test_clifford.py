import math
import random
from fractions import Fraction

import pytest

from supercalc import exactmat
from supercalc import randomgen as rg
from supercalc.clifford import (
    CliffordContext,
    anticommutator_matrix,
    commutator_matrix,
    current,
    dirac_gamma_on_forms,
    dirac_operator,
    dirac_operator_gamma_route,
    gamma,
    gamma0,
    gamma_matrices,
    gamma_upper,
    gamma_upper_symbolic,
    identity_matrix,
    matrix_of,
    reversal,
)
from supercalc.grassmann import Supernumber
from supercalc.metric import Metric, MetricError
from supercalc.scalars import CRat


def random_context(rng, d):
    while True:
        g = rg.symmetric_invertible_matrix(rng, d)
        try:
            return CliffordContext.from_matrix(g)
        except ValueError:
            continue


def test_one_dimensional_square():
    ctx = CliffordContext.identity(1)
    op = gamma(ctx, [1])
    for mask in (0, 1):
        basis = Supernumber(1, {mask: CRat(1)})
        assert op(op(basis)) == basis


def test_clifford_relations_flat_two_dimensions():
    ctx = CliffordContext.identity(2)
    gs = gamma_matrices(ctx)
    ident = identity_matrix(2)
    for a in range(2):
        for b in range(2):
            want = exactmat.mscale(ident, CRat(2 if a == b else 0))
            assert exactmat.mat_eq(anticommutator_matrix(gs[a], gs[b]), want)


def test_clifford_relations_minkowski_bruteforce():
    ctx = CliffordContext.minkowski(4)
    gs = gamma_matrices(ctx)
    ident = identity_matrix(4)
    for a in range(4):
        for b in range(4):
            want = exactmat.mscale(ident, ctx.g_inv[a][b] * 2)
            assert exactmat.mat_eq(anticommutator_matrix(gs[a], gs[b]), want)


def test_clifford_relations_random_metrics():
    rng = random.Random(51)
    for d in (1, 2, 3):
        for _ in range(6):
            ctx = random_context(rng, d)
            gs = gamma_matrices(ctx)
            ident = identity_matrix(d)
            for a in range(d):
                for b in range(d):
                    want = exactmat.mscale(ident, ctx.g_inv[a][b] * 2)
                    assert exactmat.mat_eq(anticommutator_matrix(gs[a], gs[b]), want)


def test_gamma_vector_bilinearity():
    rng = random.Random(52)
    ctx = random_context(rng, 3)
    v = [rg.crat(rng, complex_ok=False) for _ in range(3)]
    w = [rg.crat(rng, complex_ok=False) for _ in range(3)]
    gv, gw = gamma(ctx, v), gamma(ctx, w)
    for mask in range(8):
        basis = Supernumber(3, {mask: CRat(1)})
        both = gv(gw(basis)) + gw(gv(basis))
        assert both == basis * (ctx.scalar_product(v, w) * 2)


def test_reversal_examples():
    one = Supernumber.unit(2)
    x1, x2 = Supernumber.generators(2)
    assert reversal(one) == one
    assert reversal(x1) == x1
    assert reversal(x1 * x2) == -(x1 * x2)
    rng = random.Random(53)
    for _ in range(20):
        w = rg.supernumber(rng, 4)
        assert reversal(reversal(w)) == w


def test_commuting_copy():
    rng = random.Random(54)
    for d in (2, 3, 4):
        ctx = CliffordContext.identity(d) if d < 4 else CliffordContext.minkowski(4)
        size = 1 << d
        zero = exactmat.zeros(size, size)
        ident = identity_matrix(d)
        g_low = gamma_matrices(ctx, upper=False)
        g0s = [matrix_of(gamma0(ctx, ctx.basis_vector(a)), d) for a in range(1, d + 1)]
        for a in range(d):
            for b in range(d):
                assert exactmat.mat_eq(commutator_matrix(g_low[a], g0s[b]), zero)
                want = exactmat.mscale(ident, ctx.g[a][b] * 2)
                assert exactmat.mat_eq(anticommutator_matrix(g0s[a], g0s[b]), want)
        # J gamma J = gamma0 by construction; check it differs from gamma
        # somewhere (the commutant is non-scalar, so the representation
        # is reducible)
        nonscalar = any(
            not exactmat.mat_eq(g0, exactmat.mscale(ident, g0[0][0])) for g0 in g0s
        )
        assert nonscalar


def test_symbolic_route_matches_matrices():
    rng = random.Random(55)
    for d in (2, 3):
        ctx = random_context(rng, d)
        for a in range(1, d + 1):
            assert exactmat.mat_eq(
                matrix_of(gamma_upper(ctx, a), d),
                matrix_of(gamma_upper_symbolic(ctx, a), d),
            )


def test_current_components():
    ctx2 = CliffordContext.identity(2)
    comps = current(ctx2, 0)
    assert list(comps) == [()]
    assert exactmat.mat_eq(comps[()], identity_matrix(2))
    pair = current(ctx2, 2)[(1, 2)]
    g1m, g2m = gamma_matrices(ctx2, upper=False)
    want = exactmat.mscale(
        exactmat.madd(
            exactmat.matmul(g1m, g2m), exactmat.mscale(exactmat.matmul(g2m, g1m), -1)
        ),
        Fraction(1, 2),
    )
    assert exactmat.mat_eq(pair, want)
    with pytest.raises(ValueError):
        current(ctx2, 3)


def test_current_counts_sum_to_dimension():
    ctx = CliffordContext.identity(4)
    total = 0
    for p in range(5):
        comps = current(ctx, p)
        assert len(comps) == math.comb(4, p)
        total += len(comps)
    assert total == 16


def test_dirac_routes_agree():
    rng = random.Random(56)
    for k in range(8):
        d = 2 + k % 2
        while True:
            g = rg.symmetric_invertible_matrix(rng, d)
            for i in range(d):
                g[i][i] += 4
            try:
                metric = Metric.from_matrix(g)
                break
            except MetricError:
                continue
        coords = metric.coords()
        w = rg.form(rng, coords, k % (d + 1)).poly
        assert (dirac_operator(metric)(w) - dirac_operator_gamma_route(metric)(w)).is_zero()


def test_form_gamma_anticommutators():
    rng = random.Random(57)
    m = Metric.from_matrix([[2, 1], [1, 3]])
    coords = m.coords()
    for k in range(6):
        w = rg.form(rng, coords, k % 3).poly
        for mu in (1, 2):
            for nu in (1, 2):
                gm = dirac_gamma_on_forms(m, mu)
                gn = dirac_gamma_on_forms(m, nu)
                dev = gm.anticommutator(gn)(w) - w * (m.g_inv[mu - 1][nu - 1] * 2)
                assert dev.is_zero()


def test_gamma_on_zero_form_is_differential_plus_gradient():
    # on a 0-form f the operator sum_mu gamma^mu d_mu f reduces to
    # df wedge + contraction with the gradient, i.e. just df
    m = Metric.identity(2)
    coords = m.coords()
    f = (coords.x(1) ** 2).with_carrier(coords.forms)
    out = dirac_operator(m)(f)
    d_only = coords.dx(1) * f.partial_x(1) + coords.dx(2) * f.partial_x(2)
    assert (out - d_only).is_zero()
