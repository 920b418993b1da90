"""Lifting analytic functions of one variable to superanalytic functions.

Given the derivatives of f at an (exact rational) base point, the value on
a supernumber z is the Taylor sum around the body, which terminates after
N steps because the soul is nilpotent:

    f(z) = sum_{k=0}^{N} f^(k)(body(z)) soul(z)^k / k!

Seeds supply symbolic derivatives, so the whole pipeline stays exact.
Transcendental function values at nonzero rational points (for example
exp(1)) are not rational; those seeds restrict their exact domain
accordingly rather than rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .grassmann import Parity, Supernumber
from .scalars import CRat


class SeedDomainError(ValueError):
    """Base point outside the seed's exact domain."""


@dataclass(frozen=True)
class AnalyticSeed:
    """Derivative table of an analytic function.

    ``derivative(k, base)`` must return the exact k-th derivative at
    ``base`` for every 0 <= k <= N that a caller needs; raising
    :class:`SeedDomainError` marks base points it cannot represent
    exactly.
    """

    name: str
    derivative: Callable[[int, CRat], CRat]

    def value(self, base: CRat) -> CRat:
        return self.derivative(0, base)


def _exp_derivative(k: int, base: CRat) -> CRat:
    if not base.is_zero():
        raise SeedDomainError("exp is exact only at base 0")
    return CRat(1)


def _exp_neg_derivative(k: int, base: CRat) -> CRat:
    if not base.is_zero():
        raise SeedDomainError("exp_neg is exact only at base 0")
    return CRat(-1) ** k


def _sin_derivative(k: int, base: CRat) -> CRat:
    if not base.is_zero():
        raise SeedDomainError("sin is exact only at base 0")
    return (CRat(0), CRat(1), CRat(0), CRat(-1))[k % 4]


def _cos_derivative(k: int, base: CRat) -> CRat:
    if not base.is_zero():
        raise SeedDomainError("cos is exact only at base 0")
    return (CRat(1), CRat(0), CRat(-1), CRat(0))[k % 4]


def _reciprocal_derivative(k: int, base: CRat) -> CRat:
    if base.is_zero():
        raise SeedDomainError("reciprocal undefined at 0")
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return (CRat(-1) ** k) * fact / (base ** (k + 1))


def polynomial_seed(coeffs: Sequence) -> AnalyticSeed:
    """Seed for c0 + c1 t + c2 t^2 + ...; exact at every base point."""
    cs = [CRat.coerce(Fraction(c) if isinstance(c, str) else c) for c in coeffs]

    def derivative(k: int, base: CRat) -> CRat:
        total = CRat(0)
        for m in range(k, len(cs)):
            falling = 1
            for j in range(m, m - k, -1):
                falling *= j
            total = total + cs[m] * falling * base ** (m - k)
        return total

    return AnalyticSeed(name="polynomial", derivative=derivative)


EXP = AnalyticSeed("exp", _exp_derivative)
EXP_NEG = AnalyticSeed("exp_neg", _exp_neg_derivative)
SIN = AnalyticSeed("sin", _sin_derivative)
COS = AnalyticSeed("cos", _cos_derivative)
RECIPROCAL = AnalyticSeed("reciprocal", _reciprocal_derivative)
IDENTITY = AnalyticSeed("identity", polynomial_seed([0, 1]).derivative)

_BUILTINS = {
    "exp": EXP,
    "exp_neg": EXP_NEG,
    "sin": SIN,
    "cos": COS,
    "reciprocal": RECIPROCAL,
    "identity": IDENTITY,
}


def seed_by_name(name: str) -> AnalyticSeed:
    """Look up a built-in seed; ``polynomial:c0,c1,...`` builds one."""
    if name in _BUILTINS:
        return _BUILTINS[name]
    if name.startswith("polynomial:"):
        return polynomial_seed(name.split(":", 1)[1].split(","))
    raise KeyError(f"unknown seed {name!r}; known: {sorted(_BUILTINS)} or polynomial:c0,c1,...")


def lift(seed: AnalyticSeed, z: Supernumber) -> Supernumber:
    """Superanalytic continuation of the seed, evaluated at z."""
    base = z.body()
    s = z.soul()
    out = Supernumber.scalar(z.n, seed.derivative(0, base))
    power = Supernumber.unit(z.n)
    factorial = 1
    for k in range(1, z.n + 1):
        power = power * s
        if power.is_zero():
            break
        factorial *= k
        out = out + power * (seed.derivative(k, base) / factorial)
    return out


def eval_superfunction(
    coeffs: dict[tuple[int, ...], Sequence[tuple[AnalyticSeed, int]]],
    even_args: Sequence[Supernumber],
    odd_args: Sequence[Supernumber],
) -> Supernumber:
    """Evaluate f(u, v) = sum_I [prod_k lift(seed_k, u_{j_k})] v^I.

    ``coeffs`` maps an odd multi-index I (tuple of 1-based positions into
    ``odd_args``, strictly increasing) to the factors of its coefficient:
    pairs of a seed and the even-argument index it is lifted at.  Even
    arguments must be even supernumbers and odd arguments odd ones.
    """
    if not even_args and not odd_args:
        raise ValueError("need at least one argument")
    n = (even_args[0] if even_args else odd_args[0]).n
    for u in even_args:
        if u.parity() not in (Parity.EVEN,):
            raise ValueError("even argument has odd or mixed terms")
        if u.n != n:
            raise ValueError("argument generator counts differ")
    for v in odd_args:
        if not v.is_zero() and v.parity() is not Parity.ODD:
            raise ValueError("odd argument has even or mixed terms")
        if v.n != n:
            raise ValueError("argument generator counts differ")
    total = Supernumber.zero(n)
    for index, factors in coeffs.items():
        term = Supernumber.unit(n)
        for seed, arg_pos in factors:
            term = term * lift(seed, even_args[arg_pos])
        for pos in index:
            term = term * odd_args[pos - 1]
        total = total + term
    return total
