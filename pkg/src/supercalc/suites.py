"""Randomized invariant suites behind the ``check`` command.

Each suite draws its trials from a seeded generator, so a fixed seed
reproduces the run byte for byte; reports never include wall-clock data
in their canonical rendering for that reason (timing goes to stderr).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import randomgen as rg
from .analytic import EXP, EXP_NEG, RECIPROCAL, lift
from .berezin import (
    Domain,
    MixedFunction,
    berezin_integral,
    change_of_variables_check,
    density_pairing,
    grassmann_derivative,
    mixed_integral,
    tensor_product,
)
from .forms import (
    CoordinateSystem,
    TrialSet,
    commutator_table,
    function_to_mixed,
    pairing,
    scalar_density_integral,
)
from .graded_poly import GradedPoly
from .grassmann import Convention, Supernumber
from .matrices import (
    GradedMatrix,
    ParitySignature,
    apply_to_vector,
    conjugate_matrix,
    matmul,
    superhermitian,
    supertranspose,
)
from .scalars import CRat


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    checks: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failure_count(self) -> int:
        return sum(len(c.failures) for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed={self.seed}, trials={self.trials})"]
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            lines.append(f"  {status} {c.name} [{c.cases} cases]")
            for f in c.failures[:5]:
                lines.append(f"    ! {f}")
            if len(c.failures) > 5:
                lines.append(f"    ! ... {len(c.failures) - 5} more")
        lines.append(
            f"  => {'OK' if self.ok else 'FAILURES'} "
            f"({len(self.checks)} checks, {self.failure_count} failures)"
        )
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failure_count,
            "checks": [
                {"name": c.name, "cases": c.cases, "failures": list(c.failures)}
                for c in self.checks
            ],
        }


class _Recorder:
    def __init__(self, report: SuiteReport):
        self.report = report

    def check(self, name: str) -> CheckResult:
        result = CheckResult(name)
        self.report.checks.append(result)
        return result

    def expect(self, result: CheckResult, condition: bool, message: str) -> None:
        result.cases += 1
        if not condition:
            result.failures.append(message)


# -- grassmann core ---------------------------------------------------------


def run_grassmann(trials: int = 200, seed: int = 0, max_n: int = 6) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("grassmann", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    ring = rec.check("ring axioms: associativity, distributivity")
    graded = rec.check("graded commutativity on homogeneous pairs")
    nilp = rec.check("soul nilpotency soul(z)^(N+1) = 0")
    for k in range(trials):
        n = 2 + (k % (max_n - 1))
        a = rg.supernumber(rng, n)
        b_ = rg.supernumber(rng, n)
        c = rg.supernumber(rng, n)
        rec.expect(ring, (a * b_) * c == a * (b_ * c), f"assoc #{k} n={n}")
        rec.expect(ring, a * (b_ + c) == a * b_ + a * c, f"distrib #{k} n={n}")
        pa, pb = k % 2, (k // 2) % 2
        ha = rg.homogeneous_supernumber(rng, n, pa)
        hb = rg.homogeneous_supernumber(rng, n, pb)
        sign = -1 if pa * pb else 1
        rec.expect(graded, ha * hb == (hb * ha) * sign, f"graded #{k} parities {pa}{pb}")
        rec.expect(nilp, (a.soul() ** (n + 1)).is_zero(), f"nilpotency #{k} n={n}")

    inv = rec.check("mul(z, inverse(z)) = 1 on invertible z")
    for k in range(trials):
        n = 2 + (k % (max_n - 1))
        z = rg.supernumber(rng, n, ensure_body=True)
        rec.expect(inv, z * z.inverse() == Supernumber.unit(n), f"inverse #{k} n={n}")

    conj = rec.check("conjugation: additivity, product rules, involution")
    for k in range(trials):
        n = 2 + (k % (max_n - 1))
        z = rg.supernumber(rng, n)
        w = rg.supernumber(rng, n)
        rec.expect(
            conj,
            (z + w).conjugate() == z.conjugate() + w.conjugate(),
            f"additivity #{k}",
        )
        rec.expect(conj, z.conjugate().conjugate() == z, f"involution #{k}")
        rec.expect(
            conj,
            z.conjugate(Convention.DEWITT).conjugate(Convention.DEWITT) == z,
            f"dewitt involution #{k}",
        )
        rec.expect(
            conj,
            (z * w).conjugate() == z.conjugate() * w.conjugate(),
            f"koszul product rule #{k}",
        )
        pa, pb = k % 2, (k // 2) % 2
        ha = rg.homogeneous_supernumber(rng, n, pa)
        hb = rg.homogeneous_supernumber(rng, n, pb)
        sign = -1 if pa * pb else 1
        rec.expect(
            conj,
            (ha * hb).conjugate(Convention.DEWITT)
            == ha.conjugate(Convention.DEWITT) * hb.conjugate(Convention.DEWITT) * sign,
            f"dewitt product rule #{k}",
        )

    lifting = rec.check("lifting: exp multiplicativity, reciprocal, composition")
    for k in range(trials // 2):
        n = 2 + (k % (max_n - 1))
        z = rg.supernumber(rng, n).soul().even_part()
        w = rg.supernumber(rng, n).soul().even_part()
        rec.expect(
            lifting,
            lift(EXP, z) * lift(EXP, w) == lift(EXP, z + w),
            f"exp additivity #{k}",
        )
        zz = rg.supernumber(rng, n, ensure_body=True)
        rec.expect(lifting, lift(RECIPROCAL, zz) == zz.inverse(), f"reciprocal #{k}")
        rec.expect(
            lifting,
            lift(RECIPROCAL, lift(EXP, z)) == lift(EXP_NEG, z),
            f"composition #{k}",
        )

    report.elapsed = time.monotonic() - t0
    return report


# -- berezin -----------------------------------------------------------------


def run_berezin(trials: int = 200, seed: int = 0, max_nu: int = 4) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("berezin", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    anti = rec.check("left derivatives anticommute")
    di = rec.check("DI = 0 and ID = 0")
    for k in range(trials):
        nu = 1 + (k % max_nu)
        f = rg.supernumber(rng, nu)
        if nu >= 2:
            lam, mu = 1 + (k % nu), 1 + ((k + 1) % nu)
            lhs = grassmann_derivative(grassmann_derivative(f, lam), mu)
            rhs = grassmann_derivative(grassmann_derivative(f, mu), lam)
            rec.expect(anti, (lhs + rhs).is_zero(), f"anticommute #{k}")
        value = berezin_integral(f)
        rec.expect(di, isinstance(value, CRat), f"scalar result #{k}")
        mu = 1 + (k % nu)
        rec.expect(
            di,
            berezin_integral(grassmann_derivative(f, mu)) == CRat(0),
            f"ID = 0 #{k} nu={nu}",
        )

    parts = rec.check("derivation property: integral of d(fg) vanishes")
    for k in range(trials // 2):
        nu = 2 + (k % (max_nu - 1))
        f = rg.supernumber(rng, nu)
        g = rg.supernumber(rng, nu)
        mu = 1 + (k % nu)
        rec.expect(
            parts,
            berezin_integral(grassmann_derivative(f * g, mu)) == CRat(0),
            f"parts #{k}",
        )

    cov = rec.check("linear change of variables: derivative product vs det")
    for k in range(trials):
        nu = 1 + (k % max_nu)
        f = rg.supernumber(rng, nu)
        a = rg.invertible_rational_matrix(rng, nu)
        lhs, rhs = change_of_variables_check(f, a)
        rec.expect(cov, lhs == rhs, f"change of variables #{k} nu={nu}")

    fub = rec.check("Fubini on factorized integrands")
    for k in range(trials // 4):
        f1 = rg.mixed_function(rng, 1, 2)
        f2 = rg.mixed_function(rng, 1, 1)
        d1, d2 = Domain.box((0, 1)), Domain.box((-1, 1))
        combined = Domain.box((0, 1), (-1, 1))
        total = mixed_integral(tensor_product(f1, f2), combined)
        i1, i2 = mixed_integral(f1, d1), mixed_integral(f2, d2)
        rec.expect(fub, total == i1 * i2, f"fubini order 1 #{k}")
        total_swapped = mixed_integral(tensor_product(f2, f1), Domain.box((-1, 1), (0, 1)))
        rec.expect(fub, total_swapped == i2 * i1, f"fubini order 2 #{k}")

    lam = rec.check("density pairing equals multiply-then-integrate (n=1, nu=3)")
    dom = Domain.box((0, 1))
    for k in range(trials):
        d_fn = rg.mixed_function(rng, 1, 3)
        f_fn = rg.mixed_function(rng, 1, 3)
        rec.expect(
            lam,
            density_pairing(d_fn, f_fn, dom) == mixed_integral(d_fn * f_fn, dom),
            f"pairing #{k}",
        )

    gauss = rec.check("gaussian quadrature example reproduces sqrt(pi)")
    fgauss = MixedFunction(1, 2, {0b11: lambda x: math.exp(-x * x)})
    value = mixed_integral(fgauss, Domain(((-8.0, 8.0),), tol=1e-12))
    rec.expect(
        gauss,
        abs(value - math.sqrt(math.pi)) < 1e-10,
        f"got {value!r}, want sqrt(pi) within 1e-10",
    )

    report.elapsed = time.monotonic() - t0
    return report


# -- graded matrices ----------------------------------------------------------


def _supertranspose_oracle(k: GradedMatrix) -> GradedMatrix:
    """Entrywise sign pattern evaluated directly from the component rule,
    kept deliberately independent of the library implementation."""
    pk = k.parity()
    rows_out, cols_out = len(k.col_sig), len(k.row_sig)
    out = []
    for r in range(rows_out):
        row = []
        for c in range(cols_out):
            pr, pc = k.col_sig[r], k.row_sig[c]
            sign = (-1) ** (((pk + pc) * (pr + pc)) % 2)
            row.append(k.entries[c][r] * sign)
        out.append(row)
    return GradedMatrix(k.col_sig, k.row_sig, out)


def run_linalg(trials: int = 300, seed: int = 0, n_gen: int = 4) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("linalg", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    a7 = rec.check("ordinary transpose of homogeneous-entry products")
    a11 = rec.check("supertranspose product rule")
    a13 = rec.check("entrywise conjugation is multiplicative (Koszul)")
    a14 = rec.check("superhermitian product rule")
    double = rec.check("double supertranspose matches the sign-rule oracle")
    blocks = rec.check("block form of the supertranspose")
    parity_action = rec.check("even matrices preserve, odd matrices flip, vector parity")
    product_parity = rec.check("matrix product parity adds")

    for k in range(trials):
        sig_a = rg.parity_signature(rng)
        sig_b = rg.parity_signature(rng)
        sig_c = rg.parity_signature(rng)
        pk, pl = k % 2, (k // 2) % 2
        km = rg.graded_matrix(rng, sig_a, sig_b, n_gen, pk)
        lm = rg.graded_matrix(rng, sig_b, sig_c, n_gen, pl)

        # plain transpose rule for matrices with all entries of one parity
        ra, rb = rng.randint(1, 3), rng.randint(1, 3)
        rc = rng.randint(1, 3)
        ea, eb = k % 2, (k // 2) % 2
        ma = rg.homogeneous_entry_matrix(rng, ra, rb, n_gen, ea)
        mb = rg.homogeneous_entry_matrix(rng, rb, rc, n_gen, eb)
        prod = [
            [
                sum(
                    (ma[i][t] * mb[t][j] for t in range(rb)),
                    Supernumber.zero(n_gen),
                )
                for j in range(rc)
            ]
            for i in range(ra)
        ]
        lhs = [[prod[i][j] for i in range(ra)] for j in range(rc)]
        sign = -1 if ea * eb else 1
        rhs = [
            [
                sum(
                    (mb[t][j] * ma[i][t] * sign for t in range(rb)),
                    Supernumber.zero(n_gen),
                )
                for i in range(ra)
            ]
            for j in range(rc)
        ]
        rec.expect(a7, lhs == rhs, f"transpose rule #{k} parities {ea}{eb}")

        kl = matmul(km, lm)
        sign = CRat(-1 if pk * pl else 1)
        lhs_m = supertranspose(kl)
        rhs_m = matmul(supertranspose(lm), supertranspose(km)).scale(sign)
        rec.expect(a11, lhs_m == rhs_m, f"sT product #{k} parities {pk}{pl}")

        rec.expect(
            a13,
            conjugate_matrix(kl) == matmul(conjugate_matrix(km), conjugate_matrix(lm)),
            f"conjugation multiplicative #{k}",
        )
        lhs_h = superhermitian(kl)
        rhs_h = matmul(superhermitian(lm), superhermitian(km)).scale(sign)
        rec.expect(a14, lhs_h == rhs_h, f"sH product #{k} parities {pk}{pl}")
        rec.expect(
            a14,
            superhermitian(km) == supertranspose(conjugate_matrix(km)),
            f"sH order independence #{k}",
        )

        rec.expect(
            double,
            supertranspose(km) == _supertranspose_oracle(km)
            and supertranspose(supertranspose(km))
            == _supertranspose_oracle(_supertranspose_oracle(km)),
            f"oracle #{k}",
        )

        vec_parity = k % 2
        coords = tuple(
            rg.homogeneous_supernumber(rng, n_gen, (vec_parity + p) % 2, 2)
            for p in sig_b.parities
        )
        from .matrices import GradedVector

        vec = GradedVector(sig_b, coords)
        image = apply_to_vector(km, vec)
        want = (pk + vec_parity) % 2
        got = image.parity()
        rec.expect(
            parity_action,
            got in (want, 0) if all(z.is_zero() for z in image.coords) else got == want,
            f"vector parity #{k}: want {want} got {got}",
        )
        rec.expect(
            product_parity,
            kl.parity() in ((pk + pl) % 2, 0)
            if all(z.is_zero() for row in kl.entries for z in row)
            else kl.parity() == (pk + pl) % 2,
            f"product parity #{k}",
        )

    # block-form identity on 2x2 matrices with signature (even, odd)
    sig = ParitySignature.of(1, 1)
    for k in range(trials // 3):
        pk = k % 2
        m = rg.graded_matrix(rng, sig, sig, n_gen, pk)
        st = supertranspose(m)
        a, c = m.entries[0][0], m.entries[0][1]
        d, b = m.entries[1][0], m.entries[1][1]
        sign_d = CRat(-1 if (pk + 1) % 2 else 1)
        sign_c = CRat(-1 if pk % 2 else 1)
        ok = (
            st.entries[0][0] == a
            and st.entries[1][1] == b
            and st.entries[0][1] == d * sign_d
            and st.entries[1][0] == c * sign_c
        )
        rec.expect(blocks, ok, f"block form #{k} parity {pk}")

    report.elapsed = time.monotonic() - t0
    return report


# -- complexes ----------------------------------------------------------------


DEFAULT_MIXES: tuple[tuple[int, int], ...] = ((2, 0), (0, 2), (2, 2), (3, 1))


def _trial_set(rng: random.Random, coords: CoordinateSystem) -> TrialSet:
    max_deg = 3 if coords.nu else min(3, coords.n)
    forms = tuple(
        rg.form(rng, coords, rng.randint(0, max_deg)).poly for _ in range(3)
    )
    densities = tuple(
        rg.density(rng, coords, rng.randint(0, max_deg)).poly for _ in range(3)
    )
    functions = []
    for _ in range(4):
        parity = rng.randint(0, 1) if coords.nu else 0
        fn = rg.superfunction(rng, coords, parity=parity)
        if fn.is_zero():
            fn = GradedPoly.unit(coords.functions)
        functions.append(fn)
    fields = tuple(
        rg.vector_field(rng, coords, rng.randint(0, 1) if coords.nu else 0)
        for _ in range(4)
    )
    return TrialSet(forms, densities, tuple(functions), fields)


def run_complexes(
    trials: int = 200,
    seed: int = 0,
    mixes: Sequence[tuple[int, int]] = DEFAULT_MIXES,
    table_cases: int = 50,
) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("complexes", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    from .forms import op_d_form, op_divergence

    for n, nu in mixes:
        coords = CoordinateSystem(n, nu)
        d = op_d_form(coords)
        b = op_divergence(coords)
        max_deg = 3 if nu else min(3, n)

        dd = rec.check(f"({n},{nu}) dd = 0")
        bb = rec.check(f"({n},{nu}) bb = 0")
        for k in range(trials):
            w = rg.form(rng, coords, k % (max_deg + 1))
            rec.expect(dd, d(d(w.poly)).is_zero(), f"dd #{k}")
            u = rg.density(rng, coords, k % (max_deg + 1))
            rec.expect(bb, b(b(u.poly)).is_zero(), f"bb #{k}")

        wedge_comm = rec.check(f"({n},{nu}) wedge graded commutativity")
        for k in range(trials // 4):
            pa, pb = k % 2, (k // 2) % 2
            wa = rg.form(rng, coords, rng.randint(0, max_deg)).poly.parity_part(pa)
            wb = rg.form(rng, coords, rng.randint(0, max_deg)).poly.parity_part(pb)
            sign = CRat(-1 if pa * pb else 1)
            rec.expect(wedge_comm, wa * wb == (wb * wa) * sign, f"wedge #{k}")

        if nu:
            unbounded = rec.check(f"({n},{nu}) complex continues above degree nu")
            high = GradedPoly.aux_even(coords.forms, 1) ** (nu + 2)
            rec.expect(unbounded, not high.is_zero(), "dxi^~(nu+2) vanished")
            rec.expect(
                unbounded,
                not d(
                    GradedPoly.aux_even(coords.forms, 1) ** (nu + 1)
                    * coords.xi(1).with_carrier(coords.forms)
                ).is_zero(),
                "d of high-degree form vanished",
            )

        # operator identity table, aggregated over fresh trial sets
        rounds = max(1, math.ceil(table_cases / 3))
        totals: dict[str, list[int]] = {}
        for _ in range(rounds):
            for res in commutator_table(coords, _trial_set(rng, coords)):
                slot = totals.setdefault(res.name, [0, 0])
                slot[0] += res.cases
                slot[1] += res.failures
        for name, (cases, failures) in totals.items():
            entry = rec.check(f"({n},{nu}) {name}")
            entry.cases = cases
            if failures:
                entry.failures.append(f"{failures} failing cases")

        if nu:
            cross = rec.check(f"({n},{nu}) scalar-density integral matches mixed integral")
            bounds = tuple((0, 1) for _ in range(n))
            for k in range(max(5, trials // 10)):
                fn = rg.superfunction(rng, coords, terms=5)
                lhs = scalar_density_integral(fn, bounds)
                rhs = mixed_integral(function_to_mixed(fn), Domain(bounds))
                rec.expect(cross, lhs == rhs, f"cross-check #{k}")

    report.elapsed = time.monotonic() - t0
    return report


# -- metric layer --------------------------------------------------------------


def run_metric(trials: int = 10, seed: int = 0, dims: Sequence[int] = (2, 3)) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("metric", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    from .metric import (
        Metric,
        MetricError,
        beta_ascending,
        cg_inverse,
        correspondence_cg,
        hodge_star,
        hodge_star_inverse,
        metric_delta,
        pullback_density,
        pullback_form,
        pullback_metric,
        volume_density,
    )
    from .forms import SuperDensity, SuperForm

    def random_metric(d: int) -> Metric:
        while True:
            g = rg.symmetric_invertible_matrix(rng, d)
            for i in range(d):
                g[i][i] += 4
            try:
                return Metric.from_matrix(g)
            except MetricError:
                continue

    routes = rec.check("metric transpose: correspondence route == star route")
    dd0 = rec.check("double transpose vanishes")
    bb0 = rec.check("double ascent vanishes")
    trip = rec.check("correspondence round trip")
    vol = rec.check("volume density component squares to det g")
    for d in dims:
        coords = CoordinateSystem(d, 0)
        for k in range(trials):
            metric = random_metric(d)
            for p in range(0, d + 1):
                w = rg.form(rng, coords, p)
                d1 = metric_delta(metric, w, route="correspondence")
                d2 = metric_delta(metric, w, route="star")
                rec.expect(routes, d1 == d2, f"routes D={d} p={p} #{k}")
                rec.expect(
                    dd0,
                    metric_delta(metric, d1).is_zero() if d1.degree else True,
                    f"deltadelta D={d} p={p} #{k}",
                )
                dens = correspondence_cg(metric, w)
                rec.expect(
                    trip,
                    cg_inverse(metric, dens).plain(metric) == w,
                    f"round trip D={d} p={p} #{k}",
                )
                if p < d:
                    b1 = beta_ascending(metric, dens)
                    rec.expect(
                        bb0,
                        beta_ascending(metric, b1).value.is_zero(),
                        f"betabeta D={d} p={p} #{k}",
                    )
            v = volume_density(metric)
            want = SuperDensity.from_function(coords, 1).scale(CRat(metric.det))
            rec.expect(vol, v.component_squared(metric) == want, f"volume D={d} #{k}")

    star2 = rec.check("star examples in two flat dimensions")
    m2 = Metric.identity(2)
    c2 = m2.coords()
    dx1, dx2 = c2.dx(1), c2.dx(2)
    rec.expect(star2, hodge_star(m2, SuperForm(c2, dx1)).plain(m2) == SuperForm(c2, dx2), "star dx1")
    rec.expect(star2, hodge_star(m2, SuperForm(c2, dx2)).plain(m2) == SuperForm(c2, -dx1), "star dx2")
    rec.expect(
        star2,
        hodge_star_inverse(m2, hodge_star(m2, SuperForm(c2, dx1))).plain(m2) == SuperForm(c2, dx1),
        "star inverse round trip",
    )

    push = rec.check("pullback: pairing covariance and volume naturality")
    for k in range(trials):
        d = dims[k % len(dims)]
        coords = CoordinateSystem(d, 0)
        metric = random_metric(d)
        a = rg.invertible_rational_matrix(rng, d)
        from . import exactmat

        det_a = exactmat.det(exactmat.from_rows(a))
        p = k % (d + 1)
        w = rg.form(rng, coords, p)
        dens = rg.density(rng, coords, p)
        lhs = pairing(pullback_density(dens, a), pullback_form(w, a))
        rhs_raw = pairing(dens, w)
        # transport the scalar density by substitution and det factor
        fc = coords.functions
        images = [
            sum(
                (GradedPoly.coordinate(fc, c + 1) * exactmat.from_rows(a)[i][c] for c in range(d)),
                GradedPoly.zero(fc),
            )
            for i in range(d)
        ]
        transported = GradedPoly.zero(fc)
        for (x_exps, xi, ao, ae), cc in rhs_raw.terms.items():
            term = GradedPoly.scalar(fc, cc)
            for idx, e in x_exps:
                term = term * images[idx - 1] ** e
            transported = transported + term
        rec.expect(push, lhs == transported * det_a, f"pairing pullback #{k}")
        gbar = pullback_metric(metric, a)
        lhs_sq = volume_density(gbar).component_squared(gbar)
        rhs_sq = SuperDensity.from_function(coords, 1).scale(det_a * det_a * CRat(metric.det))
        rec.expect(push, lhs_sq == rhs_sq, f"volume naturality #{k}")

    report.elapsed = time.monotonic() - t0
    return report


# -- fock ------------------------------------------------------------------------


def run_fock(
    trials: int = 50,
    seed: int = 0,
    n_bose: int = 2,
    n_fermi: int = 2,
    max_occupation: int = 4,
) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("fock", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    from .fock import (
        REPRESENTATIONS,
        FockAlgebraSpec,
        FockState,
        apply,
        dual_product,
        inner_product,
        spanning_states,
        translate,
    )

    spec = FockAlgebraSpec(n_bose, n_fermi)
    b_ops = [("b", i) for i in range(1, n_bose + 1)]
    bp_ops = [("b+", i) for i in range(1, n_bose + 1)]
    f_ops = [("f", i) for i in range(1, n_fermi + 1)]
    fp_ops = [("f+", i) for i in range(1, n_fermi + 1)]

    def comm(o1, o2, s, anti=False):
        x = apply(o1, apply(o2, s))
        y = apply(o2, apply(o1, s))
        return x + y if anti else x - y

    for rep in REPRESENTATIONS:
        states = spanning_states(spec, rep, max_occupation)
        vac = FockState.vacuum(spec, rep)
        table = rec.check(f"{rep}: CCR/CAR table with cross-relations")
        rec.expect(
            table,
            all(apply(op, vac).is_zero() for op in b_ops + f_ops),
            "annihilators kill the vacuum",
        )
        for s in states:
            for i, bi in enumerate(b_ops):
                for j, bpj in enumerate(bp_ops):
                    want = s.scale(1 if i == j else 0)
                    rec.expect(
                        table,
                        (comm(bi, bpj, s) - want).is_zero(),
                        f"[b{i+1}, b+{j+1}] on state",
                    )
            for i, fi in enumerate(f_ops):
                for j, fpj in enumerate(fp_ops):
                    want = s.scale(1 if i == j else 0)
                    rec.expect(
                        table,
                        (comm(fi, fpj, s, anti=True) - want).is_zero(),
                        f"{{f{i+1}, f+{j+1}}} on state",
                    )
            for o1 in b_ops + bp_ops:
                for o2 in f_ops + fp_ops:
                    rec.expect(table, comm(o1, o2, s).is_zero(), f"cross {o1} {o2}")
            for pair_set, anti in ((b_ops, False), (bp_ops, False), (f_ops, True), (fp_ops, True)):
                for o1 in pair_set:
                    for o2 in pair_set:
                        rec.expect(table, comm(o1, o2, s, anti=anti).is_zero(), f"{o1} {o2}")

    inter = rec.check("translate intertwines every ladder operator")
    holo_states = spanning_states(spec, "holomorphic", max_occupation)
    for rep in ("form", "density"):
        for s in holo_states:
            for op in b_ops + bp_ops + f_ops + fp_ops:
                lhs = translate(apply(op, s), rep)
                rhs = apply(op, translate(s, rep))
                rec.expect(inter, (lhs - rhs).is_zero(), f"intertwine {rep} {op}")
            back = translate(translate(s, rep), "holomorphic")
            rec.expect(inter, (back - s).is_zero(), f"round trip {rep}")

    number = rec.check("number operators commute; fermionic ones are idempotent")
    for s in holo_states[: max(10, trials // 5)]:
        for i in range(1, n_bose + 1):
            for j in range(1, n_fermi + 1):
                ni = lambda t: apply(("b+", i), apply(("b", i), t))
                mj = lambda t: apply(("f+", j), apply(("f", j), t))
                rec.expect(number, (ni(mj(s)) - mj(ni(s))).is_zero(), "commute")
                rec.expect(number, (mj(mj(s)) - mj(s)).is_zero(), "idempotent")

    def random_state():
        out = FockState.vacuum(spec).scale(0)
        for _ in range(4):
            out = out + rng.choice(holo_states).scale(rg.crat(rng))
        return out

    adjoint = rec.check("creation and annihilation are mutually adjoint")
    cauchy = rec.check("Cauchy-Schwarz and positivity")
    for k in range(trials):
        f, g = random_state(), random_state()
        for op_pair in ((("b", 1), ("b+", 1)), (("f", 1), ("f+", 1))):
            down, up = op_pair
            rec.expect(
                adjoint,
                inner_product(f, apply(up, g)) == inner_product(apply(down, f), g),
                f"adjoint {up} #{k}",
            )
        nf, ng = inner_product(f, f), inner_product(g, g)
        fg = inner_product(f, g)
        rec.expect(cauchy, nf.im == 0 and nf.re >= 0, f"positivity #{k}")
        rec.expect(cauchy, fg.abs2() <= (nf * ng).re, f"cauchy-schwarz #{k}")

    degree = rec.check("dual product vanishes off matching degree")
    by_degree: dict[int, list] = {}
    for s in holo_states:
        occ = s.total_occupation()
        if occ and max(occ) <= 4:
            by_degree.setdefault(max(occ), []).append(s)
    for p, group_p in sorted(by_degree.items()):
        for q, group_q in sorted(by_degree.items()):
            if p == q:
                continue
            sd = translate(group_p[0], "density")
            wf = translate(group_q[len(group_q) // 2], "form")
            rec.expect(degree, dual_product(sd, wf) == CRat(0), f"degrees {p} vs {q}")

    bilinear = rec.check("dual product matches the bilinear occupation pairing")
    from math import factorial

    for k in range(trials // 2):
        f, g = random_state(), random_state()
        dp = dual_product(translate(f, "density"), translate(g, "form"))
        want = CRat(0)
        for mono, cf in f.poly.terms.items():
            cg = g.poly.terms.get(mono)
            if cg is None:
                continue
            weight = 1
            for _, e in mono[0]:
                weight *= factorial(e)
            want = want + cf * cg * weight
        rec.expect(bilinear, dp == want, f"bilinear #{k}")

    report.elapsed = time.monotonic() - t0
    return report


# -- clifford -----------------------------------------------------------------


def run_clifford(
    trials: int = 20,
    seed: int = 0,
    dims: Sequence[int] = (1, 2, 3, 4),
    metric_spec: str | Sequence[Sequence] | None = None,
) -> SuiteReport:
    t0 = time.monotonic()
    report = SuiteReport("clifford", seed, trials)
    rec = _Recorder(report)
    rng = random.Random(seed)

    from . import exactmat
    from .clifford import (
        CliffordContext,
        anticommutator_matrix,
        commutator_matrix,
        current,
        dirac_gamma_on_forms,
        dirac_operator,
        dirac_operator_gamma_route,
        gamma0,
        gamma_matrices,
        gamma_upper,
        gamma_upper_symbolic,
        identity_matrix,
        matrix_of,
        reversal,
    )

    def contexts_for(d: int) -> list[tuple[str, CliffordContext]]:
        if metric_spec == "identity":
            return [("identity", CliffordContext.identity(d))]
        if metric_spec == "minkowski":
            return [("minkowski", CliffordContext.minkowski(d))]
        if isinstance(metric_spec, (list, tuple)):
            return [("custom", CliffordContext.from_matrix(metric_spec))]
        out = [("identity", CliffordContext.identity(d))]
        if d == 4:
            out.append(("minkowski", CliffordContext.minkowski(d)))
        for k in range(trials):
            while True:
                g = rg.symmetric_invertible_matrix(rng, d)
                try:
                    out.append((f"random{k}", CliffordContext.from_matrix(g)))
                    break
                except ValueError:
                    continue
        return out

    relations = rec.check("anticommutators equal twice the inverse metric")
    commutant = rec.check("reversal-conjugated copy commutes and represents")
    involution = rec.check("reversal squares to the identity")
    dual_route = rec.check("matrix route equals generator-derivative route")
    for d in dims:
        size = 1 << d
        idm = identity_matrix(d)
        for label, ctx in contexts_for(d):
            gs = gamma_matrices(ctx)
            for a in range(d):
                for b in range(a, d):
                    want = exactmat.mscale(idm, ctx.g_inv[a][b] * 2)
                    rec.expect(
                        relations,
                        exactmat.mat_eq(anticommutator_matrix(gs[a], gs[b]), want),
                        f"D={d} {label} ({a+1},{b+1})",
                    )
            g0s = [matrix_of(gamma0(ctx, ctx.basis_vector(a)), d) for a in range(1, d + 1)]
            gls = gamma_matrices(ctx, upper=False)
            zero = exactmat.zeros(size, size)
            for a in range(d):
                for b in range(d):
                    rec.expect(
                        commutant,
                        exactmat.mat_eq(commutator_matrix(gls[a], g0s[b]), zero),
                        f"commutant D={d} {label} ({a+1},{b+1})",
                    )
                    if b >= a:
                        want0 = exactmat.mscale(idm, ctx.g[a][b] * 2)
                        rec.expect(
                            commutant,
                            exactmat.mat_eq(anticommutator_matrix(g0s[a], g0s[b]), want0),
                            f"copy relations D={d} {label} ({a+1},{b+1})",
                        )
            if d >= 2:
                nonscalar = any(
                    not exactmat.mat_eq(g0, exactmat.mscale(idm, g0[0][0])) for g0 in g0s
                )
                rec.expect(
                    commutant,
                    nonscalar,
                    f"commutant is non-scalar (reducibility witness) D={d} {label}",
                )
            for a in range(1, d + 1):
                rec.expect(
                    dual_route,
                    exactmat.mat_eq(
                        matrix_of(gamma_upper(ctx, a), d),
                        matrix_of(gamma_upper_symbolic(ctx, a), d),
                    ),
                    f"routes D={d} {label} a={a}",
                )
        for k in range(5):
            w = rg.supernumber(rng, d)
            rec.expect(involution, reversal(reversal(w)) == w, f"J^2 D={d} #{k}")

    counts = rec.check("independent current components count binomially")
    d = max(dims)
    ctx = CliffordContext.identity(d)
    total = 0
    for p in range(d + 1):
        comps = current(ctx, p)
        rec.expect(counts, len(comps) == math.comb(d, p), f"C({d},{p})")
        total += len(comps)
    rec.expect(counts, total == 1 << d, "sum of counts = 2^D")
    c2 = current(CliffordContext.identity(2), 2)
    g1m, g2m = gamma_matrices(CliffordContext.identity(2), upper=False)
    half = exactmat.mscale(
        exactmat.madd(exactmat.matmul(g1m, g2m), exactmat.mscale(exactmat.matmul(g2m, g1m), -1)),
        Fraction(1, 2),
    )
    rec.expect(counts, exactmat.mat_eq(c2[(1, 2)], half), "antisymmetrized pair at D=2")

    dirac = rec.check("d + transpose equals the gamma/Lie assembly on forms")
    from .metric import Metric

    for k in range(max(5, trials // 4)):
        dmet = 2 + (k % 2)
        while True:
            try:
                metric = Metric.from_matrix(
                    [
                        [v + (4 if i == j else 0) for j, v in enumerate(row)]
                        for i, row in enumerate(rg.symmetric_invertible_matrix(rng, dmet))
                    ]
                )
                break
            except Exception:
                continue
        coords = metric.coords()
        w = rg.form(rng, coords, k % (dmet + 1)).poly
        lhs = dirac_operator(metric)(w)
        rhs = dirac_operator_gamma_route(metric)(w)
        rec.expect(dirac, (lhs - rhs).is_zero(), f"dirac routes #{k}")
        for mu in range(1, dmet + 1):
            for nu_ in range(mu, dmet + 1):
                gm, gn = dirac_gamma_on_forms(metric, mu), dirac_gamma_on_forms(metric, nu_)
                dev = gm.anticommutator(gn)(w) - w * (metric.g_inv[mu - 1][nu_ - 1] * 2)
                rec.expect(dirac, dev.is_zero(), f"form anticommutator #{k} ({mu},{nu_})")

    report.elapsed = time.monotonic() - t0
    return report


# -- registry -------------------------------------------------------------------


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "grassmann": run_grassmann,
    "berezin": run_berezin,
    "linalg": run_linalg,
    "complexes": run_complexes,
    "metric": run_metric,
    "fock": run_fock,
    "clifford": run_clifford,
}


def run_all(trials: int = 50, seed: int = 0) -> list[SuiteReport]:
    reports = []
    reports.append(run_grassmann(trials=max(trials, 50), seed=seed))
    reports.append(run_berezin(trials=max(trials, 40), seed=seed + 1))
    reports.append(run_linalg(trials=max(trials, 40), seed=seed + 2))
    reports.append(run_complexes(trials=max(10, trials // 4), seed=seed + 3, table_cases=12))
    reports.append(run_metric(trials=max(2, trials // 15), seed=seed + 4))
    reports.append(run_fock(trials=max(10, trials // 4), seed=seed + 5, max_occupation=3))
    reports.append(run_clifford(trials=max(3, trials // 10), seed=seed + 6))
    return reports
