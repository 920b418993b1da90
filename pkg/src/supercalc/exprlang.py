"""Tiny expression language for the command line.

Two evaluation contexts share one grammar:

* supernumber mode (no bosonic coordinates): identifiers ``x1..xN`` are
  the Grassmann generators, matching the text serialization; calls are
  ``berezin(e)``, ``lift[seed](e)``, ``inverse(e)``, ``body(e)``,
  ``soul(e)``, ``even(e)``, ``odd(e)``, ``conj(e)``, ``conj[dewitt](e)``.
* form mode (bosonic coordinates present): identifiers ``x<a>``,
  ``xi<alpha>``, ``dx<a>``, ``dxi<alpha>``; calls are ``d(w)``,
  ``e[f](w)``, ``i[x1](w)``, ``L[xi2](w)`` with coordinate names naming
  the basis vector fields.

``*`` and ``^`` both denote the graded product (the wedge); ``+``/``-``
and parentheses behave as usual, and numeric literals are exact
rationals with an optional trailing ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from .analytic import lift, seed_by_name
from .berezin import berezin_integral
from .forms import (
    CoordinateSystem,
    SuperVectorField,
    op_d_form,
    op_e_form,
    op_i_form,
    op_lie_form,
)
from .graded_poly import GradedPoly
from .grassmann import Convention, Supernumber
from .scalars import CRat, parse_crat


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()\[\],]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num"):
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


@dataclass
class _Parser:
    tokens: list[tuple[str, str, int]]
    pos: int = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("end", "", -1)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, at = self.next()
        if text != value:
            raise ExprError(f"expected {value!r}, found {text or 'end of input'!r}", at)


class Context:
    """Name resolution and function dispatch for one evaluation mode."""

    def __init__(self, n: int, nu: int, bindings: dict[str, object] | None = None):
        self.n = n
        self.nu = nu
        self.bindings = bindings or {}
        self.form_mode = n > 0
        self.coords = CoordinateSystem(n, nu) if self.form_mode else None

    # -- atoms ---------------------------------------------------------

    def scalar(self, c: CRat):
        if self.form_mode:
            return GradedPoly.scalar(self.coords.forms, 1) * c
        return Supernumber.scalar(self.nu, c)

    def identifier(self, name: str, at: int):
        if name in self.bindings:
            return self.bindings[name]
        if name == "i":
            return self.scalar(CRat(0, 1))
        if self.form_mode:
            for prefix, maker in (
                ("dxi", lambda k: self.coords.dxi(k)),
                ("dx", lambda k: self.coords.dx(k)),
                ("xi", lambda k: self.coords.xi(k).with_carrier(self.coords.forms)),
                ("x", lambda k: self.coords.x(k).with_carrier(self.coords.forms)),
            ):
                if name.startswith(prefix) and name[len(prefix):].isdigit():
                    k = int(name[len(prefix):])
                    limit = self.nu if "xi" in prefix else self.n
                    if not 1 <= k <= limit:
                        raise ExprError(f"{name}: index outside 1..{limit}", at)
                    return maker(k)
            raise ExprError(f"unknown identifier {name!r}", at)
        if name.startswith("x") and name[1:].isdigit():
            k = int(name[1:])
            if not 1 <= k <= self.nu:
                raise ExprError(f"{name}: generator index outside 1..{self.nu}", at)
            return Supernumber.generator(self.nu, k)
        raise ExprError(f"unknown identifier {name!r}", at)

    def field_by_name(self, name: str, at: int) -> SuperVectorField:
        if name.startswith("xi") and name[2:].isdigit():
            return SuperVectorField.coordinate_basis(self.coords, ("xi", int(name[2:])))
        if name.startswith("x") and name[1:].isdigit():
            return SuperVectorField.coordinate_basis(self.coords, ("x", int(name[1:])))
        raise ExprError(f"{name!r} does not name a coordinate direction", at)

    # -- calls -----------------------------------------------------------

    def call(self, name: str, param, args: list, at: int):
        if self.form_mode:
            return self._call_form(name, param, args, at)
        return self._call_super(name, param, args, at)

    def _call_super(self, name: str, param, args, at):
        if len(args) != 1:
            raise ExprError(f"{name} takes one argument", at)
        (arg,) = args
        if name == "berezin":
            return Supernumber.scalar(self.nu, berezin_integral(arg))
        if name == "lift":
            if param is None:
                raise ExprError("lift needs a seed, e.g. lift[exp](...)", at)
            try:
                seed = seed_by_name(param)
            except KeyError as exc:
                raise ExprError(str(exc), at) from None
            return lift(seed, arg)
        if name == "inverse":
            return arg.inverse()
        if name == "body":
            return Supernumber.scalar(self.nu, arg.body())
        if name == "soul":
            return arg.soul()
        if name == "even":
            return arg.even_part()
        if name == "odd":
            return arg.odd_part()
        if name == "conj":
            conv = Convention.DEWITT if param == "dewitt" else Convention.KOSZUL
            return arg.conjugate(conv)
        raise ExprError(f"unknown function {name!r}", at)

    def _call_form(self, name: str, param, args, at):
        if len(args) != 1:
            raise ExprError(f"{name} takes one argument", at)
        (arg,) = args
        if name == "d":
            return op_d_form(self.coords)(arg)
        if name == "e":
            if param is None:
                raise ExprError("e needs a function parameter: e[x1](w)", at)
            f = evaluate(param, self) if isinstance(param, str) else param
            return op_e_form(self.coords, f.coefficient_function())(arg)
        if name in ("i", "L"):
            if param is None:
                raise ExprError(f"{name} needs a coordinate direction: {name}[x1](w)", at)
            field = self.field_by_name(param, at)
            op = op_i_form(field) if name == "i" else op_lie_form(field)
            return op(arg)
        raise ExprError(f"unknown function {name!r}", at)


def _parse_expr(p: _Parser, ctx: Context):
    value = _parse_term(p, ctx)
    while p.peek()[1] in ("+", "-"):
        _, op, _ = p.next()
        rhs = _parse_term(p, ctx)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(p: _Parser, ctx: Context):
    value = _parse_factor(p, ctx)
    while p.peek()[1] in ("*", "^"):
        p.next()
        rhs = _parse_factor(p, ctx)
        value = value * rhs
    return value


def _parse_factor(p: _Parser, ctx: Context):
    kind, text, at = p.peek()
    if text == "-":
        p.next()
        return -_parse_factor(p, ctx)
    if text == "+":
        p.next()
        return _parse_factor(p, ctx)
    return _parse_atom(p, ctx)


def _parse_atom(p: _Parser, ctx: Context):
    kind, text, at = p.next()
    if kind == "num":
        return ctx.scalar(parse_crat(text))
    if text == "(":
        value = _parse_expr(p, ctx)
        p.expect(")")
        return value
    if kind == "name":
        nxt = p.peek()[1]
        if nxt in ("[", "("):
            param = None
            if nxt == "[":
                p.expect("[")
                pk, ptext, pat = p.next()
                chunks = [ptext]
                while p.peek()[1] not in ("]",):
                    chunks.append(p.next()[1])
                p.expect("]")
                param = "".join(chunks)
            p.expect("(")
            args = [_parse_expr(p, ctx)]
            while p.peek()[1] == ",":
                p.next()
                args.append(_parse_expr(p, ctx))
            p.expect(")")
            return ctx.call(text, param, args, at)
        return ctx.identifier(text, at)
    raise ExprError(f"unexpected token {text!r}", at)


def evaluate(text: str, ctx: Context):
    p = _Parser(tokenize(text))
    value = _parse_expr(p, ctx)
    if p.peek()[0] != "end":
        raise ExprError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return value


def evaluate_supernumber_text(text: str, nu: int) -> Supernumber:
    return evaluate(text, Context(0, nu))
