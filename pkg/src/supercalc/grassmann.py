"""Exact arithmetic in the Grassmann algebra Lambda_N and its complex
supernumbers.

A supernumber is stored as a sparse map from canonical generator
multi-indices to exact complex-rational coefficients.  Multi-indices are
held internally as bitmasks (bit k set = generator x_{k+1} present), kept
strictly increasing by construction; every reordering sign is absorbed
into the coefficient when a term is created.  This makes representation
unique, so equality tests are exact.
"""

from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import CRat

MultiIndex = tuple[int, ...]


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1
    MIXED = "mixed"


class Convention(enum.Enum):
    """Complex-conjugation convention for products of odd quantities.

    KOSZUL: (zw)* = z* w*.
    DEWITT: (zw)* = (-1)^{parity(z) parity(w)} z* w*, which reverses factor
    order and makes the product of two real odd supernumbers imaginary.
    """

    KOSZUL = "koszul"
    DEWITT = "dewitt"


DEFAULT_CONVENTION = Convention.KOSZUL


class GeneratorMismatch(ValueError):
    """Raised when operands live in Grassmann algebras of different rank."""


class NotInvertible(ZeroDivisionError):
    """Raised when a supernumber has zero body."""


def mask_of(indices: Iterable[int], n: int) -> int:
    """Bitmask of a strictly increasing multi-index with labels in 1..n."""
    mask = 0
    prev = 0
    for idx in indices:
        if not 1 <= idx <= n:
            raise ValueError(f"generator label {idx} outside 1..{n}")
        if idx <= prev:
            raise ValueError(f"multi-index {tuple(indices)} not strictly increasing")
        prev = idx
        mask |= 1 << (idx - 1)
    return mask


def indices_of(mask: int) -> MultiIndex:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def merge_sign(a: int, b: int) -> int:
    """Sign (+1/-1) of sorting the concatenation of two disjoint masks.

    Counts pairs (i in a, j in b) with i > j; each costs one transposition.
    """
    swaps = 0
    t = a >> 1
    while t:
        swaps += (t & b).bit_count()
        t >>= 1
    return -1 if swaps & 1 else 1


class Supernumber:
    """Element of Lambda_N over Q(i)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, CRat] | None = None, _canonical=False):
        if n < 0:
            raise ValueError("generator count must be >= 0")
        object.__setattr__(self, "n", n)
        if terms is None:
            clean: dict[int, CRat] = {}
        elif _canonical:
            clean = dict(terms)
        else:
            clean = {}
            limit = 1 << n
            for mask, coeff in terms.items():
                if mask >= limit or mask < 0:
                    raise ValueError(f"multi-index {indices_of(mask)} exceeds {n} generators")
                c = CRat.coerce(coeff)
                if not c.is_zero():
                    clean[mask] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Supernumber is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_indices(n: int, terms: Mapping[MultiIndex, object]) -> "Supernumber":
        return Supernumber(n, {mask_of(idx, n): CRat.coerce(c) for idx, c in terms.items()})

    @staticmethod
    def scalar(n: int, value) -> "Supernumber":
        return Supernumber(n, {0: CRat.coerce(value)})

    @staticmethod
    def unit(n: int) -> "Supernumber":
        return Supernumber.scalar(n, 1)

    @staticmethod
    def zero(n: int) -> "Supernumber":
        return Supernumber(n)

    @staticmethod
    def generator(n: int, index: int) -> "Supernumber":
        return Supernumber(n, {mask_of((index,), n): CRat(1)})

    @staticmethod
    def generators(n: int) -> list["Supernumber"]:
        return [Supernumber.generator(n, i) for i in range(1, n + 1)]

    # -- ring structure -----------------------------------------------

    def _check(self, other: "Supernumber") -> None:
        if self.n != other.n:
            raise GeneratorMismatch(f"operands over {self.n} vs {other.n} generators")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = Supernumber.scalar(self.n, other)
        if not isinstance(other, Supernumber):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mask, c in other.terms.items():
            s = terms.get(mask, CRat(0)) + c
            if s.is_zero():
                terms.pop(mask, None)
            else:
                terms[mask] = s
        return Supernumber(self.n, terms, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Supernumber(self.n, {m: -c for m, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Supernumber) else Supernumber.scalar(self.n, -CRat.coerce(other)))

    def __rsub__(self, other):
        return Supernumber.scalar(self.n, other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            c = CRat.coerce(other)
            if c.is_zero():
                return Supernumber.zero(self.n)
            return Supernumber(self.n, {m: v * c for m, v in self.terms.items()}, _canonical=True)
        if not isinstance(other, Supernumber):
            return NotImplemented
        self._check(other)
        out: dict[int, CRat] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue  # repeated generator
                m = ma | mb
                c = ca * cb
                if merge_sign(ma, mb) < 0:
                    c = -c
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return Supernumber(self.n, out, _canonical=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use inverse() for negative powers")
        out = Supernumber.unit(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = Supernumber.scalar(self.n, other)
        if not isinstance(other, Supernumber):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure maps -----------------------------------------------

    def coefficient(self, indices: MultiIndex) -> CRat:
        return self.terms.get(mask_of(indices, self.n), CRat(0))

    def body(self) -> CRat:
        return self.terms.get(0, CRat(0))

    def soul(self) -> "Supernumber":
        return Supernumber(self.n, {m: c for m, c in self.terms.items() if m}, _canonical=True)

    def even_part(self) -> "Supernumber":
        return Supernumber(
            self.n, {m: c for m, c in self.terms.items() if not m.bit_count() & 1}, _canonical=True
        )

    def odd_part(self) -> "Supernumber":
        return Supernumber(
            self.n, {m: c for m, c in self.terms.items() if m.bit_count() & 1}, _canonical=True
        )

    def parity(self) -> Parity:
        seen = {m.bit_count() & 1 for m in self.terms}
        if len(seen) > 1:
            return Parity.MIXED
        if not seen:
            return Parity.EVEN  # zero counts as even
        return Parity.ODD if seen.pop() else Parity.EVEN

    def inverse(self) -> "Supernumber":
        """Multiplicative inverse; the geometric series in the soul
        truncates exactly after N terms by nilpotency."""
        b = self.body()
        if b.is_zero():
            raise NotInvertible("supernumber has zero body")
        s = self.soul()
        out = Supernumber.zero(self.n)
        power = Supernumber.unit(self.n)
        for k in range(self.n + 1):
            coeff = (CRat(-1) ** k) / (b ** (k + 1))
            out = out + power * coeff
            if k < self.n:
                power = power * s
                if power.is_zero():
                    break
        return out

    def conjugate(self, convention: Convention = DEFAULT_CONVENTION) -> "Supernumber":
        """Complex conjugation.

        KOSZUL conjugates coefficients in place.  DEWITT additionally
        reverses each generator monomial, i.e. multiplies a degree-p term
        by (-1)^{p(p-1)/2}.
        """
        out: dict[int, CRat] = {}
        for m, c in self.terms.items():
            cc = c.conjugate()
            if convention is Convention.DEWITT:
                p = m.bit_count()
                if (p * (p - 1) // 2) & 1:
                    cc = -cc
            out[m] = cc
        return Supernumber(self.n, out, _canonical=True)

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    # -- rendering ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[MultiIndex, CRat]]:
        return [
            (indices_of(m), self.terms[m])
            for m in sorted(self.terms, key=lambda m: (m.bit_count(), indices_of(m)))
        ]

    def __repr__(self):
        return f"Supernumber({self.n}, {format_supernumber(self)!r})"

    def __str__(self):
        return format_supernumber(self)


# -- text and JSON serialization --------------------------------------


def format_supernumber(z: Supernumber) -> str:
    """Canonical text form like ``3 + 2*x1^x2`` (x_i are the generators)."""
    if z.is_zero():
        return "0"
    chunks = []
    for indices, coeff in z.sorted_terms():
        mono = "^".join(f"x{i}" for i in indices)
        if not indices:
            text = str(coeff)
        elif coeff == CRat(1):
            text = mono
        elif coeff == CRat(-1):
            text = f"-{mono}"
        else:
            c = str(coeff)
            if "+" in c[1:] or "-" in c[1:]:
                c = f"({c})"
            text = f"{c}*{mono}"
        chunks.append(text)
    out = chunks[0]
    for chunk in chunks[1:]:
        if chunk.startswith("-"):
            out += " - " + chunk[1:]
        else:
            out += " + " + chunk
    return out


def parse_supernumber(text: str, n: int) -> Supernumber:
    """Parse the canonical text form back into a supernumber."""
    from .exprlang import evaluate_supernumber_text

    return evaluate_supernumber_text(text, n)


def to_json_terms(z: Supernumber) -> dict[str, str]:
    """JSON term map {"": "3", "1,2": "2"}; lossless round trip."""
    return {
        ",".join(str(i) for i in indices): str(coeff) for indices, coeff in z.sorted_terms()
    }


def from_json_terms(data: Mapping[str, str], n: int) -> Supernumber:
    from .scalars import parse_crat

    terms: dict[MultiIndex, CRat] = {}
    for key, val in data.items():
        indices = tuple(int(tok) for tok in key.split(",")) if key else ()
        terms[indices] = parse_crat(val)
    return Supernumber.from_indices(n, terms)


def dumps(z: Supernumber) -> str:
    return json.dumps({"n": z.n, "terms": to_json_terms(z)}, sort_keys=True)


def loads(text: str) -> Supernumber:
    data = json.loads(text)
    return from_json_terms(data["terms"], data["n"])


# -- module-level operation aliases ------------------------------------


def mul(a: Supernumber, b: Supernumber) -> Supernumber:
    return a * b


def body(z: Supernumber) -> CRat:
    return z.body()


def soul(z: Supernumber) -> Supernumber:
    return z.soul()


def even_part(z: Supernumber) -> Supernumber:
    return z.even_part()


def odd_part(z: Supernumber) -> Supernumber:
    return z.odd_part()


def parity(z: Supernumber) -> Parity:
    return z.parity()


def inverse(z: Supernumber) -> Supernumber:
    return z.inverse()


def conjugate(z: Supernumber, convention: Convention = DEFAULT_CONVENTION) -> Supernumber:
    return z.conjugate(convention)
