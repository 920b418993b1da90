"""Exterior calculus of forms and weight-one densities over mixed
coordinates (x^a, xi^alpha).

Forms are elements of the graded-commutative algebra generated by the
coordinates together with their differentials; dx_a is odd and dxi_alpha
is even, so bosonic differentials anticommute while fermionic ones
commute, and the ascending complex is unbounded once nu > 0.  Densities
live in the mirror algebra generated by contravariant slots with the
same parities, which is why the divergence obeys bb = 0 by the same
cancellation that gives dd = 0.

Operators are small wrappers carrying a parity tag so that graded
commutators are formed uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .berezin import MixedFunction
from .graded_poly import (
    Carrier,
    GradedPoly,
    Kind,
    EMPTY,
    density_carrier,
    form_carrier,
    function_carrier,
)
from .grassmann import GeneratorMismatch, Parity, indices_of
from .polynomials import Polynomial
from .scalars import CRat


@dataclass(frozen=True)
class CoordinateSystem:
    """A single patch with n bosonic and nu fermionic coordinates."""

    n: int
    nu: int

    @property
    def functions(self) -> Carrier:
        return function_carrier(self.n, self.nu)

    @property
    def forms(self) -> Carrier:
        return form_carrier(self.n, self.nu)

    @property
    def densities(self) -> Carrier:
        return density_carrier(self.n, self.nu)

    # generators, 1-based
    def x(self, a: int) -> GradedPoly:
        return GradedPoly.coordinate(self.functions, a)

    def xi(self, alpha: int) -> GradedPoly:
        return GradedPoly.odd_coordinate(self.functions, alpha)

    def dx(self, a: int) -> GradedPoly:
        return GradedPoly.aux_odd(self.forms, a)

    def dxi(self, alpha: int) -> GradedPoly:
        return GradedPoly.aux_even(self.forms, alpha)

    def one(self) -> GradedPoly:
        return GradedPoly.unit(self.functions)

    def coordinate_labels(self) -> list[str]:
        return [f"x{a}" for a in range(1, self.n + 1)] + [
            f"xi{al}" for al in range(1, self.nu + 1)
        ]


# -- wrappers ----------------------------------------------------------


def _as_function(coords: CoordinateSystem, f) -> GradedPoly:
    if isinstance(f, GradedPoly):
        if f.carrier.kind is not Kind.FUNCTION:
            f = f.coefficient_function()
        if (f.carrier.n, f.carrier.nu) != (coords.n, coords.nu):
            raise GeneratorMismatch("superfunction over a different patch")
        return f
    if isinstance(f, (int, Fraction, CRat, str)):
        return GradedPoly.scalar(coords.functions, f)
    raise TypeError(f"cannot treat {type(f).__name__} as a superfunction")


class SuperForm:
    """Degree-homogeneous exterior form with polynomial coefficients."""

    __slots__ = ("coords", "poly", "degree")

    def __init__(self, coords: CoordinateSystem, poly: GradedPoly):
        if poly.carrier != coords.forms:
            raise GeneratorMismatch("payload is not a form over these coordinates")
        degrees = poly.degrees()
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous degrees {sorted(degrees)}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", degrees.pop() if degrees else 0)

    def __setattr__(self, name, value):
        raise AttributeError("SuperForm is immutable")

    @staticmethod
    def from_function(coords: CoordinateSystem, f) -> "SuperForm":
        return SuperForm(coords, _as_function(coords, f).with_carrier(coords.forms))

    def parity(self) -> Parity:
        return self.poly.parity()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "SuperForm") -> "SuperForm":
        return SuperForm(self.coords, self.poly + other.poly)

    def __sub__(self, other: "SuperForm") -> "SuperForm":
        return SuperForm(self.coords, self.poly - other.poly)

    def __neg__(self):
        return SuperForm(self.coords, -self.poly)

    def scale(self, c) -> "SuperForm":
        return SuperForm(self.coords, self.poly * CRat.coerce(c))

    def __eq__(self, other):
        return (
            isinstance(other, SuperForm)
            and self.coords == other.coords
            and self.poly == other.poly
        )

    def components(self) -> dict[tuple[tuple[int, ...], tuple[int, ...]], GradedPoly]:
        """Canonical components keyed by (bosonic index set, fermionic
        multiset with multiplicity); values are superfunctions."""
        return _split_components(self.coords, self.poly)

    def __repr__(self):
        return f"SuperForm(deg {self.degree}: {self.poly!r})"


class SuperDensity:
    """Degree-homogeneous weight-one density (graded antisymmetric
    contravariant tensor) with polynomial coefficients."""

    __slots__ = ("coords", "poly", "degree")

    def __init__(self, coords: CoordinateSystem, poly: GradedPoly):
        if poly.carrier != coords.densities:
            raise GeneratorMismatch("payload is not a density over these coordinates")
        degrees = poly.degrees()
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous degrees {sorted(degrees)}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", degrees.pop() if degrees else 0)

    def __setattr__(self, name, value):
        raise AttributeError("SuperDensity is immutable")

    @staticmethod
    def from_function(coords: CoordinateSystem, f) -> "SuperDensity":
        return SuperDensity(coords, _as_function(coords, f).with_carrier(coords.densities))

    def parity(self) -> Parity:
        return self.poly.parity()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "SuperDensity") -> "SuperDensity":
        return SuperDensity(self.coords, self.poly + other.poly)

    def __sub__(self, other: "SuperDensity") -> "SuperDensity":
        return SuperDensity(self.coords, self.poly - other.poly)

    def __neg__(self):
        return SuperDensity(self.coords, -self.poly)

    def scale(self, c) -> "SuperDensity":
        return SuperDensity(self.coords, self.poly * CRat.coerce(c))

    def __eq__(self, other):
        return (
            isinstance(other, SuperDensity)
            and self.coords == other.coords
            and self.poly == other.poly
        )

    def components(self) -> dict[tuple[tuple[int, ...], tuple[int, ...]], GradedPoly]:
        return _split_components(self.coords, self.poly)

    def __repr__(self):
        return f"SuperDensity(deg {self.degree}: {self.poly!r})"


def _split_components(coords, poly) -> dict:
    out: dict[tuple[tuple[int, ...], tuple[int, ...]], GradedPoly] = {}
    fn = coords.functions
    for (x_exps, xi, ao, ae), c in poly.terms.items():
        fermi = tuple(i for i, e in ae for _ in range(e))
        key = (indices_of(ao), fermi)
        piece = GradedPoly(fn, {(x_exps, xi, 0, EMPTY): c}, _canonical=True)
        out[key] = out.get(key, GradedPoly.zero(fn)) + piece
    return out


@dataclass(frozen=True)
class SuperVectorField:
    """X = sum_A (component_A) d/dx^A, components stored basis-first.

    ``parity`` is validated: the component along an even (odd) coordinate
    must have parity equal (opposite) to the field's.
    """

    coords: CoordinateSystem
    bose: tuple[GradedPoly, ...]
    fermi: tuple[GradedPoly, ...]
    parity: int

    def __post_init__(self):
        if len(self.bose) != self.coords.n or len(self.fermi) != self.coords.nu:
            raise ValueError("component count mismatch")
        want_bose = Parity.EVEN if self.parity == 0 else Parity.ODD
        want_fermi = Parity.ODD if self.parity == 0 else Parity.EVEN
        for comp in self.bose:
            if not comp.is_zero() and comp.parity() is not want_bose:
                raise ValueError("bosonic component parity inconsistent with field parity")
        for comp in self.fermi:
            if not comp.is_zero() and comp.parity() is not want_fermi:
                raise ValueError("fermionic component parity inconsistent with field parity")

    @staticmethod
    def make(coords: CoordinateSystem, bose: Sequence, fermi: Sequence, parity: int) -> "SuperVectorField":
        return SuperVectorField(
            coords,
            tuple(_as_function(coords, b) for b in bose),
            tuple(_as_function(coords, f) for f in fermi),
            parity,
        )

    @staticmethod
    def coordinate_basis(coords: CoordinateSystem, label: tuple[str, int]) -> "SuperVectorField":
        """d/dx_a as ('x', a), d/dxi_alpha as ('xi', alpha)."""
        kind, idx = label
        zero = GradedPoly.zero(coords.functions)
        one = GradedPoly.unit(coords.functions)
        bose = [zero] * coords.n
        fermi = [zero] * coords.nu
        if kind == "x":
            bose[idx - 1] = one
            parity = 0
        elif kind == "xi":
            fermi[idx - 1] = one
            parity = 1
        else:
            raise ValueError(f"unknown coordinate kind {kind!r}")
        return SuperVectorField(coords, tuple(bose), tuple(fermi), parity)

    def upper_components(self) -> tuple[tuple[GradedPoly, ...], tuple[GradedPoly, ...]]:
        """Index-shifted components: the fermionic ones flip sign for an
        odd field."""
        if self.parity == 0:
            return self.bose, self.fermi
        return self.bose, tuple(-c for c in self.fermi)

    def apply(self, f: GradedPoly) -> GradedPoly:
        """Directional derivative on a superfunction."""
        f = _as_function(self.coords, f)
        out = GradedPoly.zero(self.coords.functions)
        for a, comp in enumerate(self.bose, start=1):
            if not comp.is_zero():
                out = out + comp * f.partial_x(a)
        for alpha, comp in enumerate(self.fermi, start=1):
            if not comp.is_zero():
                out = out + comp * f.partial_xi(alpha)
        return out

    def bracket(self, other: "SuperVectorField") -> "SuperVectorField":
        """Graded Lie bracket [X, Y] = XY - (-1)^{parities} YX."""
        sign = -1 if (self.parity * other.parity) & 1 else 1
        bose = tuple(
            self.apply(cy) - sign * other.apply(cx)
            for cx, cy in zip(self.bose, other.bose)
        )
        fermi = tuple(
            self.apply(cy) - sign * other.apply(cx)
            for cx, cy in zip(self.fermi, other.fermi)
        )
        return SuperVectorField(self.coords, bose, fermi, (self.parity + other.parity) % 2)

    def coordinate_divergence(self) -> GradedPoly:
        """sum_A d(component_A)/dx^A (used by the scalar-density checks)."""
        out = GradedPoly.zero(self.coords.functions)
        for a, comp in enumerate(self.bose, start=1):
            out = out + comp.partial_x(a)
        for alpha, comp in enumerate(self.fermi, start=1):
            out = out + comp.partial_xi(alpha)
        return out


# -- operators ----------------------------------------------------------


@dataclass(frozen=True)
class Operator:
    """Linear operator with a parity tag, so graded brackets compose."""

    parity: int
    fn: Callable[[GradedPoly], GradedPoly]
    name: str = ""

    def __call__(self, w: GradedPoly) -> GradedPoly:
        return self.fn(w)

    def compose(self, other: "Operator") -> "Operator":
        return Operator(
            (self.parity + other.parity) % 2,
            lambda w: self.fn(other.fn(w)),
            f"{self.name}*{other.name}",
        )

    def __add__(self, other: "Operator") -> "Operator":
        parity = self.parity if self.parity == other.parity else None
        return Operator(parity, lambda w: self.fn(w) + other.fn(w), f"{self.name}+{other.name}")

    def __neg__(self) -> "Operator":
        return Operator(self.parity, lambda w: -self.fn(w), f"-{self.name}")

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def graded_bracket(self, other: "Operator") -> "Operator":
        """[P, Q] = PQ - (-1)^{parity P * parity Q} QP."""
        sign = -1 if (self.parity * other.parity) & 1 else 1
        return Operator(
            (self.parity + other.parity) % 2,
            lambda w: self.fn(other.fn(w)) - sign * other.fn(self.fn(w)),
            f"[{self.name},{other.name}]",
        )

    def anticommutator(self, other: "Operator") -> "Operator":
        return Operator(
            (self.parity + other.parity) % 2,
            lambda w: self.fn(other.fn(w)) + other.fn(self.fn(w)),
            f"{{{self.name},{other.name}}}",
        )

    def commutator(self, other: "Operator") -> "Operator":
        return Operator(
            (self.parity + other.parity) % 2,
            lambda w: self.fn(other.fn(w)) - other.fn(self.fn(w)),
            f"[{self.name},{other.name}]",
        )


def _parity_of(f: GradedPoly) -> int:
    p = f.parity()
    if p is Parity.MIXED:
        raise ValueError("operator argument must have homogeneous parity")
    return p.value if p is not Parity.EVEN else 0


def zero_op(parity: int = 0) -> Operator:
    return Operator(parity, lambda w: GradedPoly.zero(w.carrier), "0")


def identity_op() -> Operator:
    return Operator(0, lambda w: w, "Id")


def scalar_op(c) -> Operator:
    c = CRat.coerce(c)
    return Operator(0, lambda w: w * c, f"{c}*Id")


# operators on the form algebra


def op_mult(coords: CoordinateSystem, f) -> Operator:
    f = _as_function(coords, f)
    lifted = f.with_carrier(coords.forms)
    return Operator(_parity_of(f), lambda w: lifted * w, "M")


def total_differential(coords: CoordinateSystem, f) -> GradedPoly:
    """dF = sum_A dx^A (dF/dx^A) as an element of the form algebra."""
    f = _as_function(coords, f)
    lifted = f.with_carrier(coords.forms)
    out = GradedPoly.zero(coords.forms)
    for a in range(1, coords.n + 1):
        out = out + coords.dx(a) * lifted.partial_x(a)
    for alpha in range(1, coords.nu + 1):
        out = out + coords.dxi(alpha) * lifted.partial_xi(alpha)
    return out


def op_e_form(coords: CoordinateSystem, f) -> Operator:
    """e(F): left wedge by dF; raises form degree by one."""
    df = total_differential(coords, f)
    return Operator((_parity_of(_as_function(coords, f)) + 1) % 2, lambda w: df * w, "e")


def op_d_form(coords: CoordinateSystem) -> Operator:
    """Exterior differential, an odd derivation with dd = 0."""

    def run(w: GradedPoly) -> GradedPoly:
        out = GradedPoly.zero(coords.forms)
        for a in range(1, coords.n + 1):
            out = out + coords.dx(a) * w.partial_x(a)
        for alpha in range(1, coords.nu + 1):
            out = out + coords.dxi(alpha) * w.partial_xi(alpha)
        return out

    return Operator(1, run, "d")


def op_i_form(x: SuperVectorField) -> Operator:
    """Contraction i(X): components act from the left on the derivative
    along the matching differential."""
    coords = x.coords
    comps = [
        (c.with_carrier(coords.forms), ("ao", a))
        for a, c in enumerate(x.bose, start=1)
        if not c.is_zero()
    ] + [
        (c.with_carrier(coords.forms), ("ae", al))
        for al, c in enumerate(x.fermi, start=1)
        if not c.is_zero()
    ]

    def run(w: GradedPoly) -> GradedPoly:
        out = GradedPoly.zero(coords.forms)
        for comp, (fam, idx) in comps:
            der = w.partial_aux_odd(idx) if fam == "ao" else w.partial_aux_even(idx)
            out = out + comp * der
        return out

    return Operator((x.parity + 1) % 2, run, "i")


def op_lie_form(x: SuperVectorField) -> Operator:
    """Lie derivative on forms as the graded bracket of i(X) and d."""
    op = op_i_form(x).graded_bracket(op_d_form(x.coords))
    return Operator(x.parity, op.fn, "L")


# operators on the density algebra


def op_mult_density(coords: CoordinateSystem, f) -> Operator:
    f = _as_function(coords, f)
    lifted = f.with_carrier(coords.densities)
    return Operator(_parity_of(f), lambda w: lifted * w, "M")


def op_divergence(coords: CoordinateSystem) -> Operator:
    """Divergence b = sum_A d/dx^A applied to the first slot; odd, bb = 0."""

    def run(w: GradedPoly) -> GradedPoly:
        out = GradedPoly.zero(coords.densities)
        for a in range(1, coords.n + 1):
            out = out + w.partial_aux_odd(a).partial_x(a)
        for alpha in range(1, coords.nu + 1):
            out = out + w.partial_aux_even(alpha).partial_xi(alpha)
        return out

    return Operator(1, run, "b")


def slot_element(x: SuperVectorField) -> GradedPoly:
    """The density-algebra element representing X: slots times components."""
    coords = x.coords
    out = GradedPoly.zero(coords.densities)
    for a, comp in enumerate(x.bose, start=1):
        if not comp.is_zero():
            out = out + GradedPoly.aux_odd(coords.densities, a) * comp.with_carrier(coords.densities)
    for alpha, comp in enumerate(x.fermi, start=1):
        if not comp.is_zero():
            out = out + GradedPoly.aux_even(coords.densities, alpha) * comp.with_carrier(coords.densities)
    return out


def op_i_density(x: SuperVectorField) -> Operator:
    """Insertion on densities: multiplication by the slot element, which
    performs the partial (anti)symmetrization automatically."""
    xhat = slot_element(x)
    return Operator((x.parity + 1) % 2, lambda w: xhat * w, "i")


def op_e_density(coords: CoordinateSystem, f) -> Operator:
    """e(F) on densities: contract the first slot with dF."""
    f = _as_function(coords, f)
    grads = [
        (f.partial_x(a).with_carrier(coords.densities), ("ao", a))
        for a in range(1, coords.n + 1)
    ] + [
        (f.partial_xi(alpha).with_carrier(coords.densities), ("ae", alpha))
        for alpha in range(1, coords.nu + 1)
    ]

    def run(w: GradedPoly) -> GradedPoly:
        out = GradedPoly.zero(coords.densities)
        for grad, (fam, idx) in grads:
            if grad.is_zero():
                continue
            der = w.partial_aux_odd(idx) if fam == "ao" else w.partial_aux_even(idx)
            out = out + grad * der
        return out

    return Operator((_parity_of(f) + 1) % 2, run, "e")


def op_lie_density(x: SuperVectorField) -> Operator:
    """Lie derivative on densities: the graded bracket of the divergence
    with the insertion, ordered so that coordinate fields transport
    components positively (L(d/dx^A) acts as d/dx^A).  For even fields
    this is the usual anticommutator i(X) nabla + nabla i(X)."""
    op = op_divergence(x.coords).graded_bracket(op_i_density(x))
    return Operator(x.parity, op.fn, "L")


def lie_density_classical(x: SuperVectorField) -> Operator:
    """Textbook component formula for the Lie derivative of a bosonic
    contravariant weight-one density: transport minus gradient insertion
    plus the divergence weight term.  Serves as an independent oracle for
    the bracket definition (purely bosonic fields and coordinates)."""
    coords = x.coords
    if coords.nu or x.parity:
        raise ValueError("classical oracle is for even fields on bosonic patches")

    def run(w: GradedPoly) -> GradedPoly:
        out = GradedPoly.zero(coords.densities)
        for a, comp in enumerate(x.bose, start=1):
            out = out + comp.with_carrier(coords.densities) * w.partial_x(a)
        for a in range(1, coords.n + 1):
            for b, comp in enumerate(x.bose, start=1):
                grad = comp.partial_x(a)
                if grad.is_zero():
                    continue
                replaced = GradedPoly.aux_odd(coords.densities, b) * w.partial_aux_odd(a)
                out = out - grad.with_carrier(coords.densities) * replaced
        out = out + x.coordinate_divergence().with_carrier(coords.densities) * w
        return out

    return Operator(0, run, "L_classical")


# -- public operations on wrappers ---------------------------------------


def wedge(a: SuperForm, b: SuperForm) -> SuperForm:
    if a.coords != b.coords:
        raise GeneratorMismatch("forms over different coordinate systems")
    return SuperForm(a.coords, a.poly * b.poly)


def exterior_d(w: SuperForm) -> SuperForm:
    return SuperForm(w.coords, op_d_form(w.coords)(w.poly))


def divergence(f: SuperDensity) -> SuperDensity:
    if f.degree < 1:
        raise ValueError("divergence needs density degree >= 1")
    return SuperDensity(f.coords, op_divergence(f.coords)(f.poly))


def contract_iX(x: SuperVectorField, w: SuperForm) -> SuperForm:
    if w.degree < 1:
        raise ValueError("contraction needs form degree >= 1")
    return SuperForm(w.coords, op_i_form(x)(w.poly))


def insert_iX(x: SuperVectorField, f: SuperDensity) -> SuperDensity:
    return SuperDensity(f.coords, op_i_density(x)(f.poly))


def lie_derivative(x: SuperVectorField, target):
    if isinstance(target, SuperForm):
        return SuperForm(target.coords, op_lie_form(x)(target.poly))
    if isinstance(target, SuperDensity):
        return SuperDensity(target.coords, op_lie_density(x)(target.poly))
    if isinstance(target, GradedPoly) and target.carrier.kind is Kind.FUNCTION:
        return x.apply(target)
    raise TypeError(f"cannot Lie-differentiate {type(target).__name__}")


def pairing(density: SuperDensity, form: SuperForm) -> GradedPoly:
    """Full contraction of matching-degree components; the result is a
    superfunction (a scalar density).  Degree mismatch gives zero.

    Matching canonical monomials contribute the product of their
    coefficient functions weighted by the factorials of the fermionic
    multiplicities (the 1/p! tensor normalization against p!/multiplicity
    orderings)."""
    if density.coords != form.coords:
        raise GeneratorMismatch("density and form over different coordinates")
    coords = density.coords
    out = GradedPoly.zero(coords.functions)
    if density.degree != form.degree:
        return out
    dens_parts = density.components()
    for key, fcomp in form.components().items():
        dcomp = dens_parts.get(key)
        if dcomp is None:
            continue
        weight = 1
        fermi = key[1]
        run = 1
        for i, idx in enumerate(fermi):
            run = run + 1 if i and fermi[i - 1] == idx else 1
            weight *= run
        out = out + dcomp * fcomp * weight
    return out


def scalar_density_integral(f: GradedPoly, bounds: Sequence[tuple]) -> CRat:
    """Integrate a scalar density F(x, xi): strip the Grassmann variables
    by the iterated left derivative d/dxi_nu ... d/dxi_1 (lowest index
    innermost), then integrate the remaining polynomial over the box."""
    if f.carrier.kind is not Kind.FUNCTION:
        f = f.coefficient_function()
    top = f
    for alpha in range(1, f.carrier.nu + 1):
        top = top.partial_xi(alpha)
    poly = function_to_polynomial(top)
    return poly.integrate_box(bounds)


def integrate_density(f, bounds: Sequence[tuple]) -> CRat:
    """Integration entry point: accepts a degree-zero SuperDensity or a
    bare superfunction."""
    if isinstance(f, SuperDensity):
        if f.degree != 0:
            raise ValueError("integration applies to scalar densities")
        return scalar_density_integral(f.poly.coefficient_function(), bounds)
    return scalar_density_integral(f, bounds)


# -- commutator table ------------------------------------------------------


@dataclass(frozen=True)
class TrialSet:
    """Randomized polynomial test elements for the operator identities."""

    forms: tuple[GradedPoly, ...]
    densities: tuple[GradedPoly, ...]
    functions: tuple[GradedPoly, ...]  # parity-homogeneous superfunctions
    fields: tuple[SuperVectorField, ...]


@dataclass(frozen=True)
class TableResult:
    name: str
    cases: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def commutator_table(coords: CoordinateSystem, trials: TrialSet) -> list[TableResult]:
    """Evaluate the graded operator identities of the exterior calculus on
    the supplied test elements; every deviation must be exactly zero.

    Identities whose naive extension fails off its stated scope are run
    on that scope only: the density-side [b, e(F)] = 0 needs an even F on
    mixed patches (the obstruction is the mixed second derivative of an
    odd F), and [e(F), i(X)] = M(XF) on densities is a bosonic-sector
    statement.  The Lie/e interchange carries the factor (-1)^{parity X}
    required by the graded Jacobi identity.
    """
    d = op_d_form(coords)
    b = op_divergence(coords)
    results: list[TableResult] = []

    def run(name: str, pairs_fn) -> None:
        cases = failures = 0
        for dev in pairs_fn():
            cases += 1
            if not dev.is_zero():
                failures += 1
        results.append(TableResult(name, cases, failures))

    functions = trials.functions
    fields = trials.fields
    forms_ = trials.forms
    densities_ = trials.densities
    even_functions = [f for f in functions if f.parity() is not Parity.ODD]

    def pair_iter(items):
        n = len(items)
        for i in range(n):
            yield items[i], items[(i + 1) % n]

    # forms
    run("forms: dd = 0", lambda: (d(d(w)) for w in forms_))
    run(
        "forms: [e(F), e(G)] = 0",
        lambda: (
            op_e_form(coords, f).graded_bracket(op_e_form(coords, g))(w)
            for (f, g) in pair_iter(functions)
            for w in forms_
        ),
    )
    run(
        "forms: [i(X), i(Y)] = 0",
        lambda: (
            op_i_form(x).graded_bracket(op_i_form(y))(w)
            for (x, y) in pair_iter(fields)
            for w in forms_
        ),
    )
    run(
        "forms: [i(X), e(F)] = M(XF)",
        lambda: (
            op_i_form(x).graded_bracket(op_e_form(coords, f))(w)
            - op_mult(coords, x.apply(f))(w)
            for x in fields
            for f in functions
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [d, e(F)] = 0",
        lambda: (op_d_form(coords).graded_bracket(op_e_form(coords, f))(w) for f in functions for w in forms_[:2]),
    )
    run(
        "forms: [i(X), d] = L(X)",
        lambda: (
            op_i_form(x).graded_bracket(d)(w) - op_lie_form(x)(w)
            for x in fields
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [d, L(X)] = 0",
        lambda: (d.graded_bracket(op_lie_form(x))(w) for x in fields for w in forms_[:2]),
    )
    run(
        "forms: [d, M(F)] = e(F)",
        lambda: (
            d.graded_bracket(op_mult(coords, f))(w) - op_e_form(coords, f)(w)
            for f in functions
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [L(X), L(Y)] = L([X, Y])",
        lambda: (
            op_lie_form(x).graded_bracket(op_lie_form(y))(w)
            - op_lie_form(x.bracket(y))(w)
            for (x, y) in pair_iter(fields)
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [L(X), e(F)] = (-1)^X e(XF)",
        lambda: (
            op_lie_form(x).graded_bracket(op_e_form(coords, f))(w)
            - op_e_form(coords, x.apply(f))(w) * CRat(-1 if x.parity else 1)
            for x in fields
            for f in functions[:2]
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [L(X), M(F)] = M(XF)",
        lambda: (
            op_lie_form(x).graded_bracket(op_mult(coords, f))(w)
            - op_mult(coords, x.apply(f))(w)
            for x in fields
            for f in functions[:2]
            for w in forms_[:2]
        ),
    )
    run(
        "forms: [L(X), i(Y)] = i([X, Y])",
        lambda: (
            op_lie_form(x).graded_bracket(op_i_form(y))(w)
            - op_i_form(x.bracket(y))(w)
            for (x, y) in pair_iter(fields)
            for w in forms_[:2]
        ),
    )

    def d_rep_devs():
        for w in forms_:
            acc = GradedPoly.zero(coords.forms)
            for a in range(1, coords.n + 1):
                xa = SuperVectorField.coordinate_basis(coords, ("x", a))
                acc = acc + op_e_form(coords, coords.x(a))(op_lie_form(xa)(w))
            for al in range(1, coords.nu + 1):
                xal = SuperVectorField.coordinate_basis(coords, ("xi", al))
                acc = acc + op_e_form(coords, coords.xi(al))(op_lie_form(xal)(w))
            yield acc - d(w)

    run("forms: d = sum e(x^A) L(d/dx^A)", d_rep_devs)

    def ladder_devs():
        for a in range(1, coords.n + 1):
            for k in range(1, coords.n + 1):
                pair = op_i_form(
                    SuperVectorField.coordinate_basis(coords, ("x", a))
                ).anticommutator(op_e_form(coords, coords.x(k)))
                for w in forms_[:3]:
                    yield pair(w) - w * CRat(1 if a == k else 0)
        for al in range(1, coords.nu + 1):
            for lam in range(1, coords.nu + 1):
                pair = op_i_form(
                    SuperVectorField.coordinate_basis(coords, ("xi", al))
                ).commutator(op_e_form(coords, coords.xi(lam)))
                for w in forms_[:3]:
                    yield pair(w) - w * CRat(1 if al == lam else 0)

    run("forms: ladder pairs {i(d_a), e(x^k)} = delta, [i(d_xi), e(xi)] = delta", ladder_devs)

    def contraction_leibniz_devs():
        odd_fields = [x for x in fields if x.parity == 1]
        for x in odd_fields:
            ix = op_i_form(x)
            for w in forms_[:2]:
                for v in forms_[:2]:
                    yield ix(w * v) - (ix(w) * v + w * ix(v))

    run("forms: i(odd X) is an even derivation over wedge", contraction_leibniz_devs)

    # densities
    run("densities: bb = 0", lambda: (b(b(u)) for u in densities_))
    run(
        "densities: [e(F), e(G)] = 0",
        lambda: (
            op_e_density(coords, f).graded_bracket(op_e_density(coords, g))(u)
            for (f, g) in pair_iter(functions)
            for u in densities_[:2]
        ),
    )
    run(
        "densities: [i(X), i(Y)] = 0",
        lambda: (
            op_i_density(x).graded_bracket(op_i_density(y))(u)
            for (x, y) in pair_iter(fields)
            for u in densities_[:2]
        ),
    )
    safe_e_args = functions if (coords.n == 0 or coords.nu == 0) else even_functions
    run(
        "densities: [b, e(F)] = 0",
        lambda: (
            b.graded_bracket(op_e_density(coords, f))(u)
            for f in safe_e_args
            for u in densities_[:2]
        ),
    )
    if coords.nu == 0:
        run(
            "densities: [e(F), i(X)]+ = M(XF) (bosonic)",
            lambda: (
                op_e_density(coords, f).graded_bracket(op_i_density(x))(u)
                - op_mult_density(coords, x.apply(f))(u)
                for f in functions
                for x in fields
                for u in densities_[:2]
            ),
        )
    run(
        "densities: [b, L(X)] = 0",
        lambda: (
            b.graded_bracket(op_lie_density(x))(u) for x in fields for u in densities_[:2]
        ),
    )

    def b_rep_devs():
        for u in densities_:
            acc = GradedPoly.zero(coords.densities)
            for a in range(1, coords.n + 1):
                xa = SuperVectorField.coordinate_basis(coords, ("x", a))
                acc = acc + op_e_density(coords, coords.x(a))(op_lie_density(xa)(u))
            for al in range(1, coords.nu + 1):
                xal = SuperVectorField.coordinate_basis(coords, ("xi", al))
                acc = acc + op_e_density(coords, coords.xi(al))(op_lie_density(xal)(u))
            yield acc - b(u)

    run("densities: b = sum e(x^A) L(d/dx^A)", b_rep_devs)

    def lie_transport_devs():
        for u in densities_[:3]:
            for a in range(1, coords.n + 1):
                xa = SuperVectorField.coordinate_basis(coords, ("x", a))
                yield op_lie_density(xa)(u) - u.partial_x(a)
            for al in range(1, coords.nu + 1):
                xal = SuperVectorField.coordinate_basis(coords, ("xi", al))
                yield op_lie_density(xal)(u) - u.partial_xi(al)

    run("densities: L(d/dx^A) acts as d/dx^A", lie_transport_devs)

    if coords.nu == 0:
        even_fields = [x for x in fields if x.parity == 0]
        run(
            "densities: bracket Lie = classical component formula (bosonic)",
            lambda: (
                op_lie_density(x)(u) - lie_density_classical(x)(u)
                for x in even_fields
                for u in densities_[:3]
            ),
        )

        def scalar_divergence_devs():
            for x in even_fields:
                for f in functions:
                    u = f.with_carrier(coords.densities)
                    lhs = b.anticommutator(op_i_density(x))(u)
                    acc = GradedPoly.zero(coords.densities)
                    for a in range(1, coords.n + 1):
                        acc = acc + (
                            x.bose[a - 1].with_carrier(coords.densities) * u
                        ).partial_x(a)
                    yield lhs - acc

        run("densities: [b, i(X)]+ = d_mu(X^mu .) on scalars (bosonic)", scalar_divergence_devs)

    return results


# -- conversions ----------------------------------------------------------


def function_to_mixed(f: GradedPoly) -> MixedFunction:
    """Superfunction -> the integration module's representation."""
    if f.carrier.kind is not Kind.FUNCTION:
        f = f.coefficient_function()
    n, nu = f.carrier.n, f.carrier.nu
    terms: dict[int, Polynomial] = {}
    for (x_exps, xi, _ao, _ae), c in f.terms.items():
        dense = [0] * n
        for idx, e in x_exps:
            dense[idx - 1] = e
        poly = terms.get(xi, Polynomial(n)) + Polynomial(n, {tuple(dense): c})
        if poly.is_zero():
            terms.pop(xi, None)
        else:
            terms[xi] = poly
    return MixedFunction(n, nu, terms, _canonical=True)


def mixed_to_function(f: MixedFunction) -> GradedPoly:
    carrier = function_carrier(f.n, f.nu)
    out: dict = {}
    for xi_mask, poly in f.terms.items():
        if not isinstance(poly, Polynomial):
            raise TypeError("only polynomial mixed functions convert")
        for exps, c in poly.terms.items():
            sparse = tuple((i + 1, e) for i, e in enumerate(exps) if e)
            out[(sparse, xi_mask, 0, EMPTY)] = c
    return GradedPoly(carrier, out)


def function_to_polynomial(f: GradedPoly) -> Polynomial:
    """Drop a xi-independent superfunction to a plain polynomial."""
    n = f.carrier.n
    terms = {}
    for (x_exps, xi, _ao, _ae), c in f.terms.items():
        if xi:
            raise ValueError("function still depends on odd coordinates")
        dense = [0] * n
        for idx, e in x_exps:
            dense[idx - 1] = e
        terms[tuple(dense)] = c
    return Polynomial(n, terms)


# -- JSON -----------------------------------------------------------------


def form_to_json(w: SuperForm) -> dict:
    from .berezin import to_json_mixed

    comps = []
    for (bose, fermi), coeff in sorted(w.components().items()):
        comps.append(
            {
                "bose_idx": list(bose),
                "fermi_idx": list(fermi),
                "poly": to_json_mixed(function_to_mixed(coeff))["terms"],
            }
        )
    return {"n": w.coords.n, "nu": w.coords.nu, "degree": w.degree, "components": comps}


def form_from_json(data) -> SuperForm:
    from .berezin import from_json_mixed

    coords = CoordinateSystem(int(data["n"]), int(data["nu"]))
    poly = GradedPoly.zero(coords.forms)
    for comp in data["components"]:
        coeff = mixed_to_function(
            from_json_mixed({"n": coords.n, "nu": coords.nu, "terms": comp["poly"]})
        ).with_carrier(coords.forms)
        blade = GradedPoly.unit(coords.forms)
        for a in comp["bose_idx"]:
            blade = blade * coords.dx(a)
        for alpha in comp["fermi_idx"]:
            blade = blade * coords.dxi(alpha)
        poly = poly + coeff * blade
    return SuperForm(coords, poly)
