"""Seeded random instance builders shared by the invariant suites and
the test suite.  Everything is driven by a caller-supplied
``random.Random`` so identical seeds give identical trials.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import CoordinateSystem, SuperDensity, SuperForm, SuperVectorField
from .graded_poly import GradedPoly
from .grassmann import Supernumber
from .matrices import GradedMatrix, ParitySignature
from .polynomials import Polynomial
from .berezin import MixedFunction
from .scalars import CRat


def rational(rng: random.Random, span: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def crat(rng: random.Random, span: int = 4, complex_ok: bool = True) -> CRat:
    re = rational(rng, span)
    im = rational(rng, span) if complex_ok and rng.random() < 0.4 else 0
    return CRat(re, im)


def supernumber(
    rng: random.Random,
    n: int,
    terms: int = 6,
    complex_ok: bool = True,
    ensure_body: bool = False,
) -> Supernumber:
    data: dict[int, CRat] = {}
    for _ in range(terms):
        mask = rng.randrange(1 << n)
        data[mask] = data.get(mask, CRat(0)) + crat(rng, complex_ok=complex_ok)
    if ensure_body:
        body = data.get(0, CRat(0))
        if body.is_zero():
            data[0] = CRat(rng.randint(1, 4), 0)
    return Supernumber(n, data)


def homogeneous_supernumber(rng: random.Random, n: int, parity: int, terms: int = 4) -> Supernumber:
    data: dict[int, CRat] = {}
    masks = [m for m in range(1 << n) if m.bit_count() % 2 == parity]
    for _ in range(terms):
        data[rng.choice(masks)] = crat(rng)
    return Supernumber(n, data)


def polynomial(rng: random.Random, n: int, max_degree: int = 2, terms: int = 3) -> Polynomial:
    data = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_degree) for _ in range(n))
        data[exps] = crat(rng, complex_ok=False)
    return Polynomial(n, data)


def mixed_function(
    rng: random.Random, n: int, nu: int, terms: int = 4, max_degree: int = 2
) -> MixedFunction:
    data: dict[int, Polynomial] = {}
    for _ in range(terms):
        mask = rng.randrange(1 << nu)
        poly = polynomial(rng, n, max_degree)
        data[mask] = data.get(mask, Polynomial(n)) + poly
    return MixedFunction(n, nu, {m: p for m, p in data.items() if not p.is_zero()})


def superfunction(
    rng: random.Random,
    coords: CoordinateSystem,
    terms: int = 4,
    max_degree: int = 2,
    parity: int | None = None,
) -> GradedPoly:
    fc = coords.functions
    out = GradedPoly.zero(fc)
    for _ in range(terms):
        t = GradedPoly.scalar(fc, crat(rng, complex_ok=False))
        for _ in range(rng.randint(0, max_degree)):
            if coords.n:
                t = t * GradedPoly.coordinate(fc, rng.randint(1, coords.n))
        if coords.nu:
            for _ in range(rng.randint(0, min(coords.nu, 2))):
                t = t * GradedPoly.odd_coordinate(fc, rng.randint(1, coords.nu))
        out = out + t
    if parity is not None:
        out = out.parity_part(parity)
        if out.is_zero() and parity == 0:
            out = GradedPoly.scalar(fc, rng.randint(1, 3))
        if out.is_zero() and parity == 1 and coords.nu:
            out = GradedPoly.odd_coordinate(fc, rng.randint(1, coords.nu))
    return out


def form(rng: random.Random, coords: CoordinateSystem, degree: int, blades: int = 3) -> SuperForm:
    acc = GradedPoly.zero(coords.forms)
    for _ in range(blades):
        blade = GradedPoly.unit(coords.forms)
        d = 0
        guard = 0
        while d < degree and guard < 30:
            guard += 1
            if coords.nu and (not coords.n or rng.random() < 0.5):
                blade = blade * coords.dxi(rng.randint(1, coords.nu))
                d += 1
            elif coords.n:
                new = blade * coords.dx(rng.randint(1, coords.n))
                if new.is_zero():
                    continue  # repeated bosonic differential
                blade = new
                d += 1
        if d < degree:
            continue
        acc = acc + superfunction(rng, coords).with_carrier(coords.forms) * blade
    return SuperForm(coords, acc.degree_part(degree))


def density(rng: random.Random, coords: CoordinateSystem, degree: int, blades: int = 3) -> SuperDensity:
    dc = coords.densities
    acc = GradedPoly.zero(dc)
    for _ in range(blades):
        blade = GradedPoly.unit(dc)
        d = 0
        guard = 0
        while d < degree and guard < 30:
            guard += 1
            if coords.nu and (not coords.n or rng.random() < 0.5):
                blade = blade * GradedPoly.aux_even(dc, rng.randint(1, coords.nu))
                d += 1
            elif coords.n:
                new = blade * GradedPoly.aux_odd(dc, rng.randint(1, coords.n))
                if new.is_zero():
                    continue
                blade = new
                d += 1
        if d < degree:
            continue
        acc = acc + superfunction(rng, coords).with_carrier(dc) * blade
    return SuperDensity(coords, acc.degree_part(degree))


def vector_field(rng: random.Random, coords: CoordinateSystem, parity: int) -> SuperVectorField:
    bose = tuple(superfunction(rng, coords, parity=parity) for _ in range(coords.n))
    fermi = tuple(superfunction(rng, coords, parity=(parity + 1) % 2) for _ in range(coords.nu))
    return SuperVectorField(coords, bose, fermi, parity)


def invertible_rational_matrix(rng: random.Random, size: int) -> list[list[Fraction]]:
    from . import exactmat

    while True:
        rows = [[rational(rng, 3, 2) for _ in range(size)] for _ in range(size)]
        if not exactmat.det(exactmat.from_rows(rows)).is_zero():
            return rows


def symmetric_invertible_matrix(rng: random.Random, size: int) -> list[list[Fraction]]:
    from . import exactmat

    while True:
        a = [[rational(rng, 3, 2) for _ in range(size)] for _ in range(size)]
        g = [[a[i][j] + a[j][i] for j in range(size)] for i in range(size)]
        if not exactmat.det(exactmat.from_rows(g)).is_zero():
            return g


def parity_signature(rng: random.Random, max_size: int = 4) -> ParitySignature:
    even = rng.randint(0, max_size - 1)
    odd = rng.randint(max(0, 1 - even), max_size - even)
    return ParitySignature.of(even, odd)


def graded_matrix(
    rng: random.Random,
    row_sig: ParitySignature,
    col_sig: ParitySignature,
    n_gen: int,
    parity: int,
    terms: int = 3,
) -> GradedMatrix:
    entries = []
    for pr in row_sig.parities:
        row = []
        for pc in col_sig.parities:
            want = (parity + pr + pc) % 2
            row.append(homogeneous_supernumber(rng, n_gen, want, terms))
        entries.append(row)
    return GradedMatrix(row_sig, col_sig, entries)


def homogeneous_entry_matrix(
    rng: random.Random, rows: int, cols: int, n_gen: int, entry_parity: int
) -> list[list[Supernumber]]:
    return [
        [homogeneous_supernumber(rng, n_gen, entry_parity, 3) for _ in range(cols)]
        for _ in range(rows)
    ]
