"""Berezin integration and mixed integro-differential integration.

The Berezin integral over nu Grassmann variables is the iterated left
derivative d/dxi_nu ... d/dxi_1 (innermost first), i.e. extraction of the
top-monomial coefficient.  It is the unique operator annihilated by, and
annihilating, the Grassmann derivatives, which makes DI = ID = 0 the
defining pair of properties.

A mixed function F(x, xi) keeps, for every Grassmann multi-index, a
coefficient that is either an exact polynomial in the real variables or
an arbitrary callable (the quadrature path).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from . import quadrature
from .exactmat import det, from_rows
from .grassmann import GeneratorMismatch, Supernumber, indices_of, mask_of, merge_sign
from .polynomials import Polynomial, from_json_poly, to_json_poly
from .scalars import CRat

Coefficient = Union[Polynomial, Callable[..., float]]


class Normalization(enum.Enum):
    """Prefactor of the Berezin integral, kept symbolic for exactness."""

    ONE = 0
    SQRT_2PI_I = 1  # (2 pi i)^{1/2}
    INV_SQRT_2PI_I = -1  # (2 pi i)^{-1/2}


@dataclass(frozen=True)
class WeightedScalar:
    """An exact scalar times (2 pi i)^{half_power/2}."""

    coeff: CRat
    half_power: int = 0

    def __mul__(self, other: "WeightedScalar") -> "WeightedScalar":
        return WeightedScalar(self.coeff * other.coeff, self.half_power + other.half_power)

    def __complex__(self) -> complex:
        return complex(self.coeff) * complex(2j * math.pi) ** (self.half_power / 2)


@dataclass(frozen=True)
class Domain:
    """Box of integration for the real variables, plus a quadrature
    tolerance for black-box coefficients."""

    bounds: tuple[tuple, ...]
    tol: float = 1e-10

    @staticmethod
    def box(*bounds) -> "Domain":
        return Domain(tuple((lo, hi) for lo, hi in bounds))


# -- Grassmann derivative ------------------------------------------------


def _derive_mask(mask: int, mu: int) -> tuple[int, int] | None:
    """Left derivative of a monomial mask: (new mask, sign) or None."""
    bit = 1 << (mu - 1)
    if not mask & bit:
        return None
    below = mask & (bit - 1)
    sign = -1 if below.bit_count() & 1 else 1
    return mask & ~bit, sign


def grassmann_derivative(f, mu: int):
    """Left derivative d/dxi_mu: anticommute xi_mu to the front, drop it.

    Accepts a Supernumber or a MixedFunction and returns the same type.
    """
    if isinstance(f, Supernumber):
        if not 1 <= mu <= f.n:
            raise ValueError(f"generator index {mu} outside 1..{f.n}")
        out: dict[int, CRat] = {}
        for mask, c in f.terms.items():
            hit = _derive_mask(mask, mu)
            if hit is None:
                continue
            new_mask, sign = hit
            out[new_mask] = c if sign > 0 else -c
        return Supernumber(f.n, out, _canonical=True)
    if isinstance(f, MixedFunction):
        if not 1 <= mu <= f.nu:
            raise ValueError(f"generator index {mu} outside 1..{f.nu}")
        out_terms: dict[int, Coefficient] = {}
        for mask, coeff in f.terms.items():
            hit = _derive_mask(mask, mu)
            if hit is None:
                continue
            new_mask, sign = hit
            out_terms[new_mask] = coeff if sign > 0 else _negate(coeff)
        return MixedFunction(f.n, f.nu, out_terms, _canonical=True)
    raise TypeError(f"cannot differentiate {type(f).__name__}")


def _negate(coeff: Coefficient) -> Coefficient:
    if isinstance(coeff, Polynomial):
        return -coeff
    return lambda *xs, _c=coeff: -_c(*xs)


# -- Berezin integral ----------------------------------------------------


def berezin_integral(f, normalization: Normalization = Normalization.ONE):
    """Iterated left derivative d/dxi_nu ... d/dxi_1 applied to f.

    For a Supernumber this is the coefficient of the full monomial
    (a scalar); for a MixedFunction it is that coefficient as a function
    of the real variables.  A non-unit normalization wraps scalar results
    in :class:`WeightedScalar`.
    """
    if isinstance(f, Supernumber):
        result = f
        for mu in range(1, f.n + 1):
            result = grassmann_derivative(result, mu)
        value = result.body()
        if normalization is Normalization.ONE:
            return value
        return WeightedScalar(value, normalization.value)
    if isinstance(f, MixedFunction):
        result = f
        for mu in range(1, f.nu + 1):
            result = grassmann_derivative(result, mu)
        if normalization is not Normalization.ONE:
            raise TypeError("symbolic normalization applies to scalar results only")
        return result.terms.get(0, Polynomial(f.n))
    raise TypeError(f"cannot integrate {type(f).__name__}")


# -- mixed functions -----------------------------------------------------


class MixedFunction:
    """F(x, xi) = sum over Grassmann multi-indices of f_I(x) xi^I."""

    __slots__ = ("n", "nu", "terms")

    def __init__(self, n: int, nu: int, terms: Mapping[int, Coefficient] | None = None, _canonical=False):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "nu", nu)
        clean: dict[int, Coefficient] = {}
        if terms:
            for mask, coeff in terms.items():
                if mask < 0 or mask >= 1 << nu:
                    raise ValueError(f"multi-index {indices_of(mask)} exceeds {nu} generators")
                if isinstance(coeff, (int, Fraction, CRat)):
                    coeff = Polynomial.constant(n, coeff)
                if isinstance(coeff, Polynomial):
                    if coeff.n != n:
                        raise ValueError("coefficient polynomial has wrong variable count")
                    if not _canonical and coeff.is_zero():
                        continue
                clean[mask] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MixedFunction is immutable")

    @staticmethod
    def from_indices(n: int, nu: int, terms: Mapping[tuple[int, ...], Coefficient]) -> "MixedFunction":
        return MixedFunction(n, nu, {mask_of(idx, nu): c for idx, c in terms.items()})

    @staticmethod
    def from_supernumber(z: Supernumber, n: int = 0) -> "MixedFunction":
        return MixedFunction(n, z.n, {m: Polynomial.constant(n, c) for m, c in z.terms.items()})

    def is_polynomial(self) -> bool:
        return all(isinstance(c, Polynomial) for c in self.terms.values())

    def _check(self, other: "MixedFunction"):
        if (self.n, self.nu) != (other.n, other.nu):
            raise GeneratorMismatch("mixed functions over different spaces")

    def __add__(self, other: "MixedFunction") -> "MixedFunction":
        self._check(other)
        if not (self.is_polynomial() and other.is_polynomial()):
            raise TypeError("addition needs polynomial coefficients")
        terms: dict[int, Coefficient] = dict(self.terms)
        for mask, c in other.terms.items():
            s = terms.get(mask, Polynomial(self.n)) + c
            if s.is_zero():
                terms.pop(mask, None)
            else:
                terms[mask] = s
        return MixedFunction(self.n, self.nu, terms, _canonical=True)

    def __neg__(self):
        return MixedFunction(
            self.n, self.nu, {m: _negate(c) for m, c in self.terms.items()}, _canonical=True
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "MixedFunction") -> "MixedFunction":
        self._check(other)
        if not (self.is_polynomial() and other.is_polynomial()):
            raise TypeError("products need polynomial coefficients")
        out: dict[int, Polynomial] = {}
        for ma, pa in self.terms.items():
            for mb, pb in other.terms.items():
                if ma & mb:
                    continue
                m = ma | mb
                prod = pa * pb
                if merge_sign(ma, mb) < 0:
                    prod = -prod
                s = out.get(m, Polynomial(self.n)) + prod
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return MixedFunction(self.n, self.nu, out, _canonical=True)

    def __eq__(self, other):
        if not isinstance(other, MixedFunction):
            return NotImplemented
        if (self.n, self.nu) != (other.n, other.nu):
            return False
        if not (self.is_polynomial() and other.is_polynomial()):
            raise TypeError("equality is exact only for polynomial coefficients")
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("unhashable")

    def top_coefficient(self) -> Coefficient:
        full = (1 << self.nu) - 1
        return self.terms.get(full, Polynomial(self.n))

    def __repr__(self):
        bits = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), indices_of(m))):
            mono = "^".join(f"xi{i}" for i in indices_of(mask)) or "1"
            bits.append(f"({self.terms[mask]!r})*{mono}")
        return f"MixedFunction({self.n}|{self.nu}: " + (" + ".join(bits) or "0") + ")"


def tensor_product(f: MixedFunction, g: MixedFunction) -> MixedFunction:
    """F(x, xi) G(y, eta) as a function on the combined space; the second
    factor's Grassmann generators are relabelled after the first's, so no
    reordering signs arise."""
    if not (f.is_polynomial() and g.is_polynomial()):
        raise TypeError("tensor products need polynomial coefficients")
    n, nu = f.n + g.n, f.nu + g.nu
    out: dict[int, Polynomial] = {}
    for ma, pa in f.terms.items():
        for mb, pb in g.terms.items():
            mask = ma | (mb << f.nu)
            terms = {}
            for ea, ca in pa.terms.items():
                for eb, cb in pb.terms.items():
                    terms[ea + eb] = ca * cb
            poly = Polynomial(n, terms)
            s = out.get(mask, Polynomial(n)) + poly
            if s.is_zero():
                out.pop(mask, None)
            else:
                out[mask] = s
    return MixedFunction(n, nu, out, _canonical=True)


# -- change of variables -------------------------------------------------


def change_of_variables_check(f: Supernumber, a: Sequence[Sequence]) -> tuple[CRat, CRat]:
    """Both sides of the linear substitution rule for Berezin integrals.

    With theta = A zeta, returns (lhs, rhs) where

        lhs = d/dzeta_1 ... d/dzeta_nu applied to F(A zeta)
        rhs = det(A) * d/dtheta_1 ... d/dtheta_nu applied to F

    Derivative products are composed right-to-left (the highest-index
    derivative acts first) on both sides.
    """
    nu = f.n
    mat = from_rows(a)
    if len(mat) != nu or any(len(r) != nu for r in mat):
        raise ValueError(f"substitution matrix must be {nu} x {nu}")
    d = det(mat)
    if d.is_zero():
        raise ValueError("substitution matrix is singular")
    zetas = Supernumber.generators(nu)
    images = []
    for i in range(nu):
        img = Supernumber.zero(nu)
        for j in range(nu):
            img = img + zetas[j] * mat[i][j]
        images.append(img)
    composed = Supernumber.zero(nu)
    for mask, c in f.terms.items():
        term = Supernumber.scalar(nu, c)
        for idx in indices_of(mask):
            term = term * images[idx - 1]
        composed = composed + term

    def top_derivatives(g: Supernumber) -> CRat:
        for mu in range(g.n, 0, -1):  # operator product d_1 d_2 ... d_nu
            g = grassmann_derivative(g, mu)
        return g.body()

    return top_derivatives(composed), d * top_derivatives(f)


# -- mixed integration ---------------------------------------------------


def mixed_integral(f: MixedFunction, domain: Domain):
    """Berezin-integrate the Grassmann variables, then integrate the top
    coefficient over the real box.  Exact (CRat) for polynomial
    coefficients, floating point via quadrature for callables."""
    top = berezin_integral(f)
    if isinstance(top, Polynomial):
        return top.integrate_box(domain.bounds)
    if f.n != 1:
        raise NotImplementedError("quadrature path supports one real variable")
    (lo, hi), = domain.bounds
    return quadrature.integrate(top, float(lo), float(hi), tol=domain.tol)


def raised_components(d: MixedFunction) -> dict[int, Polynomial]:
    """Index raising with the alternating symbol: for an ordered index set
    I with ordered complement J, the raised component is the sign of the
    (J, I) shuffle times the stored J component.  This is the placement
    that makes the pairing below agree exactly with multiplication
    followed by mixed integration."""
    if not d.is_polynomial():
        raise TypeError("index raising needs polynomial coefficients")
    full = (1 << d.nu) - 1
    out: dict[int, Polynomial] = {}
    for mask_j, coeff in d.terms.items():
        mask_i = full & ~mask_j
        sign = merge_sign(mask_j, mask_i)
        out[mask_i] = coeff if sign > 0 else -coeff
    return out


def lambda_apply(d: MixedFunction, f: MixedFunction) -> Polynomial:
    """(Lambda F)(x, 0): contract the raised components of D against the
    left derivatives of F, lowest derivative index acting first."""
    d._check(f)
    if not f.is_polynomial():
        raise TypeError("Lambda operator needs polynomial coefficients")
    total = Polynomial(f.n)
    for mask_i, dcoeff in raised_components(d).items():
        g = f
        for idx in indices_of(mask_i):
            g = grassmann_derivative(g, idx)
        part = g.terms.get(0)
        if part is None:
            continue
        total = total + dcoeff * part
    return total


def density_pairing(d: MixedFunction, f: MixedFunction, domain: Domain):
    """Pair a scalar density D against F through the integro-differential
    operator route; equals mixed_integral(D * F, domain) exactly for
    polynomial data."""
    return lambda_apply(d, f).integrate_box(domain.bounds)


# -- JSON ----------------------------------------------------------------


def to_json_mixed(f: MixedFunction) -> dict:
    if not f.is_polynomial():
        raise TypeError("only polynomial mixed functions serialize")
    return {
        "n": f.n,
        "nu": f.nu,
        "terms": {
            ",".join(str(i) for i in indices_of(mask)): to_json_poly(coeff)
            for mask, coeff in sorted(f.terms.items())
        },
    }


def from_json_mixed(data: Mapping) -> MixedFunction:
    n, nu = int(data["n"]), int(data["nu"])
    terms: dict[int, Polynomial] = {}
    for key, poly in data["terms"].items():
        indices = tuple(int(tok) for tok in key.split(",")) if key else ()
        terms[mask_of(indices, nu)] = from_json_poly(poly, n)
    return MixedFunction(n, nu, terms)
