"""Telegraph problems described by a small JSON file.

Example::

    {
      "name": "decaying-mode",
      "alpha": 1.0,
      "beta": 1.0,
      "exact": "exp(-t) * sin(pi*x) * sin(pi*y)",
      "edges": {"x_lo": "neumann", "x_hi": "dirichlet",
                "y_lo": "dirichlet", "y_hi": {"kind": "neumann"}}
    }

Expressions use ``x``, ``y``, ``t``, ``pi``, the operators ``+ - * / ** ^``
and the functions ``sin cos sinh cosh exp log sqrt``. Any of ``f``, ``phi``,
``psi`` or an edge's ``data`` may be omitted when ``exact`` is given; the
missing pieces are then derived from the exact solution. Edge data are
functions of the edge coordinate (``y`` on x-edges, ``x`` on y-edges) and
``t``; Neumann data are ``u_x`` or ``u_y``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .boundary import DIRICHLET, NEUMANN, BoundarySpec, EdgeSpec
from .telegraph_rhs import TelegraphProblem

__all__ = ["ProblemFileError", "parse_expression", "problem_from_dict", "load_problem"]

X, Y, T = sp.symbols("x y t", real=True)

_FUNCS = {
    "sin": sp.sin,
    "cos": sp.cos,
    "sinh": sp.sinh,
    "cosh": sp.cosh,
    "exp": sp.exp,
    "log": sp.log,
    "sqrt": sp.sqrt,
}
_NAMES = {"x": X, "y": Y, "t": T, "pi": sp.pi, **_FUNCS}
_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*/^(),]))")

# edge -> (coordinate fixed on the edge, its value, free coordinate)
_EDGES = {
    "x_lo": (X, 0, Y),
    "x_hi": (X, 1, Y),
    "y_lo": (Y, 0, X),
    "y_hi": (Y, 1, X),
}


class ProblemFileError(ValueError):
    """The problem description is incomplete or uses unsupported syntax."""


def parse_expression(text, allowed=("x", "y", "t")) -> sp.Expr:
    """Parse ``text`` with the restricted grammar into a sympy expression.

    Every token is checked against the whitelist before sympy sees it, so
    attribute access, strings and unknown names are rejected outright.
    """
    if isinstance(text, (int, float)):
        return sp.Float(text) if isinstance(text, float) else sp.Integer(text)
    if not isinstance(text, str) or not text.strip():
        raise ProblemFileError(f"expected an expression string, got {text!r}")
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ProblemFileError(f"unexpected character {text[pos]!r} in {text!r}")
        name = m.group(2)
        if name is not None and name not in _NAMES:
            raise ProblemFileError(f"unknown name {name!r} in {text!r}")
        pos = m.end()
    try:
        expr = parse_expr(
            text,
            local_dict=dict(_NAMES),
            global_dict={"Integer": sp.Integer, "Float": sp.Float, "Rational": sp.Rational, "Symbol": sp.Symbol},
            transformations=standard_transformations + (convert_xor,),
        )
    except Exception as err:  # sympy raises a zoo of types for bad syntax
        raise ProblemFileError(f"cannot parse {text!r}: {err}") from None
    if not isinstance(expr, sp.Expr):
        raise ProblemFileError(f"{text!r} is not a scalar expression")
    extra = {s.name for s in expr.free_symbols} - set(allowed)
    if extra:
        raise ProblemFileError(f"{text!r} depends on {sorted(extra)}; allowed variables are {list(allowed)}")
    return expr


def _numeric(expr, args):
    fn = sp.lambdify(args, expr, modules="numpy")

    def call(*vals):
        return fn(*vals) + 0.0 * sum(vals)  # broadcast constants to the input shape

    return call


def _edge_entry(raw):
    if raw is None:
        return DIRICHLET, None
    if isinstance(raw, str):
        return raw.lower(), None
    if isinstance(raw, dict):
        return str(raw.get("kind", DIRICHLET)).lower(), raw.get("data")
    raise ProblemFileError(f"edge entry must be a kind string or an object, got {raw!r}")


def problem_from_dict(spec: dict) -> TelegraphProblem:
    """Build a :class:`TelegraphProblem` from a parsed problem description."""
    if not isinstance(spec, dict):
        raise ProblemFileError("problem description must be a JSON object")
    known = {"name", "alpha", "beta", "exact", "f", "phi", "psi", "edges"}
    unknown = set(spec) - known
    if unknown:
        raise ProblemFileError(f"unknown keys {sorted(unknown)}; expected a subset of {sorted(known)}")
    try:
        alpha = float(spec.get("alpha", 1.0))
        beta = float(spec.get("beta", 1.0))
    except (TypeError, ValueError):
        raise ProblemFileError("alpha and beta must be numbers") from None

    exact = parse_expression(spec["exact"]) if "exact" in spec else None

    def given_or_derived(key, allowed, derive):
        if key in spec:
            return parse_expression(spec[key], allowed=allowed)
        if exact is None:
            raise ProblemFileError(f"{key!r} is missing and there is no exact solution to derive it from")
        return derive()

    f = given_or_derived(
        "f",
        ("x", "y", "t"),
        lambda: sp.diff(exact, T, 2) + 2 * alpha * sp.diff(exact, T) + beta**2 * exact
        - sp.diff(exact, X, 2) - sp.diff(exact, Y, 2),
    )
    phi = given_or_derived("phi", ("x", "y"), lambda: exact.subs(T, 0))
    psi = given_or_derived("psi", ("x", "y"), lambda: sp.diff(exact, T).subs(T, 0))

    edges_raw = spec.get("edges", {})
    if not isinstance(edges_raw, dict) or set(edges_raw) - set(_EDGES):
        raise ProblemFileError(f"edges must map a subset of {list(_EDGES)} to kinds")
    edges = {}
    for key, (fixed, value, free) in _EDGES.items():
        kind, data = _edge_entry(edges_raw.get(key))
        if kind not in (DIRICHLET, NEUMANN):
            raise ProblemFileError(f"edge {key}: unknown kind {kind!r}")
        if data is None:
            if exact is None:
                raise ProblemFileError(f"edge {key} has no data and there is no exact solution")
            expr = exact if kind == DIRICHLET else sp.diff(exact, fixed)
            expr = expr.subs(fixed, value)
        else:
            expr = parse_expression(data, allowed=(free.name, "t"))
        edges[key] = EdgeSpec(kind, _numeric(expr, (free, T)))

    return TelegraphProblem(
        alpha=alpha,
        beta=beta,
        f=_numeric(f, (X, Y, T)),
        phi0=_numeric(phi, (X, Y)),
        psi0=_numeric(psi, (X, Y)),
        bc=BoundarySpec(**edges),
        exact=None if exact is None else _numeric(exact, (X, Y, T)),
        name=str(spec.get("name", "custom")),
    )


def load_problem(path) -> TelegraphProblem:
    path = Path(path)
    try:
        spec = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ProblemFileError(f"{path}: invalid JSON ({err})") from None
    return problem_from_dict(spec)
