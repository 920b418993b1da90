"""Graded vectors and matrices over supernumbers.

Row and column parities are explicit data (never inferred from entries,
since zero entries make inference ambiguous), with even indices listed
before odd ones.  A matrix has parity 0 (1) when every entry's parity
plus its row and column parities is even (odd); sums of the two kinds
carry no parity and must be split before taking a supertranspose.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .grassmann import Convention, GeneratorMismatch, Parity, Supernumber
from .scalars import CRat


class ParityError(ValueError):
    """Raised when an operation needs a parity the object does not have."""


class ParitySignature:
    """Sequence over {0, 1} with all even entries first."""

    __slots__ = ("parities",)

    def __init__(self, parities: Sequence[int]):
        ps = tuple(int(p) for p in parities)
        if any(p not in (0, 1) for p in ps):
            raise ValueError("parities must be 0 or 1")
        if any(a > b for a, b in zip(ps, ps[1:])):
            raise ValueError("even indices must be listed before odd ones")
        object.__setattr__(self, "parities", ps)

    def __setattr__(self, name, value):
        raise AttributeError("ParitySignature is immutable")

    @staticmethod
    def of(n_even: int, n_odd: int) -> "ParitySignature":
        return ParitySignature((0,) * n_even + (1,) * n_odd)

    def __len__(self):
        return len(self.parities)

    def __getitem__(self, i: int) -> int:
        return self.parities[i]

    def __eq__(self, other):
        return isinstance(other, ParitySignature) and self.parities == other.parities

    def __hash__(self):
        return hash(self.parities)

    def __repr__(self):
        return f"ParitySignature({list(self.parities)})"


def _entry_parity(z: Supernumber) -> Parity:
    return z.parity()


class GradedVector:
    """Coordinates together with a basis parity signature.

    Coordinates are stored in the basis-first convention (the components
    written to the right of the basis vectors); ``upper_components``
    applies the index-shift sign (-1)^{vector parity * index parity}.
    """

    __slots__ = ("sig", "coords")

    def __init__(self, sig: ParitySignature, coords: Sequence[Supernumber]):
        if len(coords) != len(sig):
            raise ValueError("coordinate/signature length mismatch")
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("GradedVector is immutable")

    def parity(self) -> int | None:
        """0, 1, or None when no parity can be assigned."""
        candidates = {0, 1}
        for p_basis, z in zip(self.sig.parities, self.coords):
            if z.is_zero():
                continue
            pz = z.parity()
            if pz is Parity.MIXED:
                return None
            candidates &= {(pz.value + p_basis) % 2}
            if not candidates:
                return None
        if len(candidates) == 1:
            return candidates.pop()
        return 0  # zero vector: call it even

    def upper_components(self) -> tuple[Supernumber, ...]:
        pv = self.parity()
        if pv is None:
            raise ParityError("index shift needs an assigned vector parity")
        return tuple(
            -z if (pv and p) else z for p, z in zip(self.sig.parities, self.coords)
        )

    def __eq__(self, other):
        return (
            isinstance(other, GradedVector)
            and self.sig == other.sig
            and self.coords == other.coords
        )

    def __repr__(self):
        return f"GradedVector({self.sig!r}, {[str(c) for c in self.coords]})"


class GradedMatrix:
    __slots__ = ("row_sig", "col_sig", "entries")

    def __init__(
        self,
        row_sig: ParitySignature,
        col_sig: ParitySignature,
        entries: Sequence[Sequence[Supernumber]],
    ):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != len(row_sig) or any(len(r) != len(col_sig) for r in rows):
            raise ValueError("entry shape does not match signatures")
        ns = {z.n for row in rows for z in row}
        if len(ns) > 1:
            raise GeneratorMismatch("entries over different Grassmann algebras")
        object.__setattr__(self, "row_sig", row_sig)
        object.__setattr__(self, "col_sig", col_sig)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("GradedMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_sig), len(self.col_sig)

    @staticmethod
    def identity(sig: ParitySignature, n_gen: int) -> "GradedMatrix":
        size = len(sig)
        return GradedMatrix(
            sig,
            sig,
            [
                [Supernumber.scalar(n_gen, 1 if i == j else 0) for j in range(size)]
                for i in range(size)
            ],
        )

    def parity(self) -> int | None:
        candidates = {0, 1}
        for i, pr in enumerate(self.row_sig.parities):
            for j, pc in enumerate(self.col_sig.parities):
                z = self.entries[i][j]
                if z.is_zero():
                    continue
                pz = z.parity()
                if pz is Parity.MIXED:
                    return None
                candidates &= {(pz.value + pr + pc) % 2}
                if not candidates:
                    return None
        if len(candidates) == 1:
            return candidates.pop()
        return 0  # zero matrix

    def parity_projection(self, target: int) -> "GradedMatrix":
        """Keep only the entry components contributing matrix parity
        ``target``; a mixed matrix is the sum of its two projections."""
        rows = []
        for i, pr in enumerate(self.row_sig.parities):
            row = []
            for j, pc in enumerate(self.col_sig.parities):
                z = self.entries[i][j]
                want_odd = (target + pr + pc) % 2
                row.append(z.odd_part() if want_odd else z.even_part())
            rows.append(row)
        return GradedMatrix(self.row_sig, self.col_sig, rows)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.row_sig == other.row_sig
            and self.col_sig == other.col_sig
            and self.entries == other.entries
        )

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.row_sig != other.row_sig or self.col_sig != other.col_sig:
            raise ValueError("signature mismatch")
        return GradedMatrix(
            self.row_sig,
            self.col_sig,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return GradedMatrix(
            self.row_sig, self.col_sig, [[-a for a in row] for row in self.entries]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedMatrix":
        c = CRat.coerce(Fraction(c) if isinstance(c, str) else c)
        return GradedMatrix(
            self.row_sig, self.col_sig, [[a * c for a in row] for row in self.entries]
        )

    def __repr__(self):
        return f"GradedMatrix({self.shape[0]}x{self.shape[1]})"


def matmul(k: GradedMatrix, m: GradedMatrix) -> GradedMatrix:
    """Entry-wise sums of supernumber products, K's entries on the left."""
    if k.col_sig != m.row_sig:
        raise ValueError("signature mismatch: K columns must match L rows")
    rows, inner, cols = len(k.row_sig), len(k.col_sig), len(m.col_sig)
    n_gen = k.entries[0][0].n if rows and inner else (m.entries[0][0].n if inner else 0)
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = Supernumber.zero(n_gen)
            for t in range(inner):
                acc = acc + k.entries[i][t] * m.entries[t][j]
            row.append(acc)
        out.append(row)
    return GradedMatrix(k.row_sig, m.col_sig, out)


def apply_to_vector(k: GradedMatrix, v: GradedVector) -> GradedVector:
    if k.col_sig != v.sig:
        raise ValueError("signature mismatch")
    n_gen = v.coords[0].n if v.coords else 0
    out = []
    for i in range(len(k.row_sig)):
        acc = Supernumber.zero(n_gen)
        for j, c in enumerate(v.coords):
            acc = acc + k.entries[i][j] * c
        out.append(acc)
    return GradedVector(k.row_sig, out)


def ordinary_transpose(k: GradedMatrix) -> GradedMatrix:
    return GradedMatrix(
        k.col_sig, k.row_sig, [list(col) for col in zip(*k.entries)]
    )


def supertranspose(k: GradedMatrix) -> GradedMatrix:
    """Graded transpose: entry (r, c) of the result is
    (-1)^{(pK + c')(r' + c')} times entry (c, r), where r' and c' are the
    parities of r in K's column signature and of c in K's row signature.
    Row and column signatures swap."""
    pk = k.parity()
    if pk is None:
        raise ParityError("supertranspose needs an assigned matrix parity")
    rows_out, cols_out = len(k.col_sig), len(k.row_sig)
    out = []
    for r in range(rows_out):
        pr = k.col_sig[r]
        row = []
        for c in range(cols_out):
            pc = k.row_sig[c]
            entry = k.entries[c][r]
            if ((pk + pc) * (pr + pc)) % 2:
                entry = -entry
            row.append(entry)
        out.append(row)
    return GradedMatrix(k.col_sig, k.row_sig, out)


def conjugate_matrix(k: GradedMatrix, convention: Convention = Convention.KOSZUL) -> GradedMatrix:
    return GradedMatrix(
        k.row_sig,
        k.col_sig,
        [[z.conjugate(convention) for z in row] for row in k.entries],
    )


def superhermitian(k: GradedMatrix, convention: Convention = Convention.KOSZUL) -> GradedMatrix:
    """Conjugate supertranspose; the two composition orders agree."""
    return conjugate_matrix(supertranspose(k), convention)


def to_json_matrix(k: GradedMatrix) -> dict:
    from .grassmann import to_json_terms

    n_gen = k.entries[0][0].n if k.entries and k.entries[0] else 0
    return {
        "row_parities": list(k.row_sig.parities),
        "col_parities": list(k.col_sig.parities),
        "n_generators": n_gen,
        "entries": [[to_json_terms(z) for z in row] for row in k.entries],
    }


def from_json_matrix(data: dict) -> GradedMatrix:
    from .grassmann import from_json_terms

    n_gen = int(data["n_generators"])
    entries = [
        [from_json_terms(cell, n_gen) for cell in row] for row in data["entries"]
    ]
    return GradedMatrix(
        ParitySignature(data["row_parities"]),
        ParitySignature(data["col_parities"]),
        entries,
    )
