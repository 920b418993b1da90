"""Supersymmetric Fock space realized three ways.

The same occupation-number content is written as

  holomorphic  polynomials in commuting z_i and anticommuting zeta_j,
               with annihilation = differentiation, creation =
               multiplication;
  form         exterior forms on a patch whose fermionic coordinates
               match the bosonic modes (their differentials commute) and
               whose bosonic coordinates match the fermionic modes
               (differentials anticommute):  b = i(d/dxi_i), b+ = e(xi_i),
               f = i(d/dx_j), f+ = e(x_j);
  density      contravariant densities on the same patch, where the
               creation/annihilation roles of e and i swap: b = e(xi_i),
               b+ = i(d/dxi_i), f = e(x_j), f+ = i(d/dx_j).

All three are payloads of the same graded kernel, so ``translate`` is a
structure-preserving relabelling of generators and intertwines every
ladder operator exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .forms import CoordinateSystem, SuperDensity, SuperForm, pairing
from .graded_poly import EMPTY, Carrier, GradedPoly, Kind
from .scalars import CRat

REPRESENTATIONS = ("holomorphic", "form", "density")


@dataclass(frozen=True)
class FockAlgebraSpec:
    """Mode counts for the commuting and anticommuting ladder pairs."""

    n_bose: int
    n_fermi: int

    def geometry(self) -> CoordinateSystem:
        # bosonic modes ride on fermionic coordinates (even differentials
        # and slots), fermionic modes on bosonic ones
        return CoordinateSystem(self.n_fermi, self.n_bose)

    def carrier(self, rep: str) -> Carrier:
        if rep == "holomorphic":
            return Carrier(self.n_bose, self.n_fermi, Kind.FUNCTION)
        if rep == "form":
            return self.geometry().forms
        if rep == "density":
            return self.geometry().densities
        raise ValueError(f"unknown representation {rep!r}")


class FockState:
    __slots__ = ("spec", "rep", "poly")

    def __init__(self, spec: FockAlgebraSpec, rep: str, poly: GradedPoly):
        if rep not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {rep!r}")
        if poly.carrier != spec.carrier(rep):
            raise ValueError("payload does not live in the representation carrier")
        if rep != "holomorphic":
            for (x_exps, xi, _ao, _ae) in poly.terms:
                if x_exps or xi:
                    raise ValueError("geometric states must have constant coefficients")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("FockState is immutable")

    @staticmethod
    def vacuum(spec: FockAlgebraSpec, rep: str = "holomorphic") -> "FockState":
        return FockState(spec, rep, GradedPoly.unit(spec.carrier(rep)))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "FockState") -> "FockState":
        if (self.spec, self.rep) != (other.spec, other.rep):
            raise ValueError("states live in different spaces")
        return FockState(self.spec, self.rep, self.poly + other.poly)

    def __sub__(self, other: "FockState") -> "FockState":
        if (self.spec, self.rep) != (other.spec, other.rep):
            raise ValueError("states live in different spaces")
        return FockState(self.spec, self.rep, self.poly - other.poly)

    def __neg__(self):
        return FockState(self.spec, self.rep, -self.poly)

    def scale(self, c) -> "FockState":
        return FockState(self.spec, self.rep, self.poly * CRat.coerce(c))

    def __eq__(self, other):
        return (
            isinstance(other, FockState)
            and self.spec == other.spec
            and self.rep == other.rep
            and self.poly == other.poly
        )

    def total_occupation(self) -> set[int]:
        if self.rep == "holomorphic":
            out = set()
            for (x_exps, xi, _ao, _ae) in self.poly.terms:
                out.add(sum(e for _, e in x_exps) + xi.bit_count())
            return out
        return self.poly.degrees()

    def __repr__(self):
        return f"FockState({self.rep}, {self.poly!r})"


class ModeError(IndexError):
    pass


def _check_mode(i: int, count: int, kind: str):
    if not 1 <= i <= count:
        raise ModeError(f"{kind} mode {i} outside 1..{count}")


def apply(op: tuple[str, int], s: FockState) -> FockState:
    """Apply a ladder operator, named ('b', i), ('b+', i), ('f', j) or
    ('f+', j) with 1-based mode indices."""
    name, i = op
    spec = s.spec
    if name.startswith("b"):
        _check_mode(i, spec.n_bose, "bosonic")
    else:
        _check_mode(i, spec.n_fermi, "fermionic")
    poly = s.poly
    carrier = poly.carrier
    if s.rep == "holomorphic":
        if name == "b":
            out = poly.partial_x(i)
        elif name == "b+":
            out = GradedPoly.coordinate(carrier, i) * poly
        elif name == "f":
            out = poly.partial_xi(i)
        elif name == "f+":
            out = GradedPoly.odd_coordinate(carrier, i) * poly
        else:
            raise ValueError(f"unknown ladder operator {name!r}")
    else:
        # geometric carriers: bosonic modes on even auxiliaries,
        # fermionic modes on odd ones; in the density representation the
        # annihilation/creation roles of contraction and multiplication
        # swap relative to forms, but the payload action is the same.
        if name == "b":
            out = poly.partial_aux_even(i)
        elif name == "b+":
            out = GradedPoly.aux_even(carrier, i) * poly
        elif name == "f":
            out = poly.partial_aux_odd(i)
        elif name == "f+":
            out = GradedPoly.aux_odd(carrier, i) * poly
        else:
            raise ValueError(f"unknown ladder operator {name!r}")
    return FockState(spec, s.rep, out)


def apply_word(word: Iterable[tuple[str, int]], s: FockState) -> FockState:
    for op in reversed(list(word)):
        s = apply(op, s)
    return s


def geometric_operator_name(rep: str, op: tuple[str, int]) -> str:
    """The differential-geometry realization of a ladder operator."""
    name, i = op
    if rep == "form":
        table = {"b": f"i(d/dxi{i})", "b+": f"e(xi{i})", "f": f"i(d/dx{i})", "f+": f"e(x{i})"}
    elif rep == "density":
        table = {"b": f"e(xi{i})", "b+": f"i(d/dxi{i})", "f": f"e(x{i})", "f+": f"i(d/dx{i})"}
    else:
        table = {"b": f"d/dz{i}", "b+": f"z{i}*", "f": f"d/dzeta{i}", "f+": f"zeta{i}*"}
    return table[name]


# -- translation between representations -----------------------------------


def translate(s: FockState, to: str) -> FockState:
    """Relabel monomials between representations.

    Holomorphic z-exponents become even-auxiliary (d xi / slot)
    exponents, zeta-monomials become odd-auxiliary ones; the geometric
    representations share a payload shape, so translation there is the
    identity on terms.  Coefficients never change: the relabelling maps
    odd generators in the same relative order.
    """
    if to not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {to!r}")
    if to == s.rep:
        return s
    target = s.spec.carrier(to)
    out: dict = {}
    if s.rep == "holomorphic":
        for (x_exps, xi, _ao, _ae), c in s.poly.terms.items():
            out[(EMPTY, 0, xi, x_exps)] = c
    elif to == "holomorphic":
        for (_x, _xi, ao, ae), c in s.poly.terms.items():
            out[(ae, ao, 0, EMPTY)] = c
    else:
        for mono, c in s.poly.terms.items():
            out[mono] = c
    return FockState(s.spec, to, GradedPoly(target, out, _canonical=True))


# -- inner and dual products -----------------------------------------------


def inner_product(f: FockState, g: FockState) -> CRat:
    """Holomorphic scalar product, realized combinatorially: monomials
    are orthogonal, a bosonic mode of occupation k contributes k!, and
    the first argument enters complex conjugated."""
    if f.rep != "holomorphic" or g.rep != "holomorphic":
        raise ValueError("inner product is defined on the holomorphic representation")
    if f.spec != g.spec:
        raise ValueError("states over different mode counts")
    total = CRat(0)
    for mono, cf in f.poly.terms.items():
        cg = g.poly.terms.get(mono)
        if cg is None:
            continue
        weight = 1
        for _, e in mono[0]:
            weight *= factorial(e)
        total = total + cf.conjugate() * cg * weight
    return total


def norm_squared(f: FockState) -> CRat:
    return inner_product(f, f)


def dual_product(density_state: FockState, form_state: FockState, volume: CRat | int = 1) -> CRat:
    """Pair a density state against a form state: contract matching
    components to a scalar density and integrate it against the
    configured volume normalization (default one over a unit box).
    Vanishes unless the degrees agree."""
    if density_state.rep != "density" or form_state.rep != "form":
        raise ValueError("dual product pairs a density state with a form state")
    if density_state.spec != form_state.spec:
        raise ValueError("states over different mode counts")
    coords = density_state.spec.geometry()
    degrees_d = density_state.poly.degrees() or {0}
    degrees_f = form_state.poly.degrees() or {0}
    total = CRat(0)
    for p in degrees_d & degrees_f:
        paired = pairing(
            SuperDensity(coords, density_state.poly.degree_part(p)),
            SuperForm(coords, form_state.poly.degree_part(p)),
        )
        for (x_exps, xi, _ao, _ae), c in paired.terms.items():
            if x_exps or xi:
                raise ValueError("pairing of constant states must be constant")
            total = total + c
    return total * CRat.coerce(volume)


# -- serialization -----------------------------------------------------------


def state_to_json(s: FockState) -> dict:
    """JSON with a representation tag; monomials are keyed by bosonic
    occupations and the fermionic index set of the holomorphic picture."""
    holo = translate(s, "holomorphic")
    terms = {}
    for (x_exps, xi, _ao, _ae), c in sorted(
        holo.poly.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])
    ):
        bose = ";".join(f"{i}:{e}" for i, e in x_exps)
        from .grassmann import indices_of

        fermi = ",".join(str(i) for i in indices_of(xi))
        terms[f"{bose}|{fermi}"] = str(c)
    return {
        "representation": s.rep,
        "n_bose": s.spec.n_bose,
        "n_fermi": s.spec.n_fermi,
        "terms": terms,
    }


def state_from_json(data: dict) -> FockState:
    from .grassmann import mask_of
    from .scalars import parse_crat

    spec = FockAlgebraSpec(int(data["n_bose"]), int(data["n_fermi"]))
    carrier = spec.carrier("holomorphic")
    terms = {}
    for key, val in data["terms"].items():
        bose_txt, _, fermi_txt = key.partition("|")
        x_exps = tuple(
            (int(i), int(e))
            for i, e in (pair.split(":") for pair in bose_txt.split(";") if pair)
        )
        fermi = tuple(int(tok) for tok in fermi_txt.split(",")) if fermi_txt else ()
        terms[(x_exps, mask_of(fermi, spec.n_fermi), 0, EMPTY)] = parse_crat(val)
    state = FockState(spec, "holomorphic", GradedPoly(carrier, terms))
    return translate(state, data["representation"])


# -- spanning sets -----------------------------------------------------------


def spanning_states(
    spec: FockAlgebraSpec, rep: str = "holomorphic", max_occupation: int = 4
) -> list[FockState]:
    """All monomial states with bosonic occupations <= max_occupation."""
    states: list[FockState] = []

    def bose_tuples(k: int):
        if k == 0:
            yield ()
            return
        for head in range(max_occupation + 1):
            for rest in bose_tuples(k - 1):
                yield (head,) + rest

    carrier = spec.carrier("holomorphic")
    for bose in bose_tuples(spec.n_bose):
        for fermi_mask in range(1 << spec.n_fermi):
            mono = (
                tuple((i + 1, e) for i, e in enumerate(bose) if e),
                fermi_mask,
                0,
                EMPTY,
            )
            state = FockState(spec, "holomorphic", GradedPoly(carrier, {mono: CRat(1)}))
            states.append(state if rep == "holomorphic" else translate(state, rep))
    return states
