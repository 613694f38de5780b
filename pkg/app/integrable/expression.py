"""Expression grammar for the h0 and g0 functions of the perturbed Hamiltonian.

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ("+" | "-") factor | atom ("**" factor)?
    atom   := number | "eta1".."etan" | "xi1".."xin" | "(" expr ")"

``etaj`` and ``xij`` stand for |eta_j|^2 and |xi_j|^2. Compiled expressions
take the 2n moduli (|eta_1|^2, ..., |eta_n|^2, |xi_1|^2, ..., |xi_n|^2).
"""

import re
from tokenize import TokenError
from typing import Callable, List

import numpy as np
import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.utilities.lambdify import lambdify

from app.exceptions import ExpressionError


ModuliFunction = Callable[[np.ndarray], float]

_ALLOWED_CHARACTERS = re.compile(r"^[A-Za-z0-9_\s.+\-*/()]+$")
_IDENTIFIER = re.compile(r"\b[A-Za-z_]\w*")
_ALLOWED_NODES = (sympy.Symbol, sympy.Number, sympy.Add, sympy.Mul, sympy.Pow)


def modulus_symbols(n: int) -> List[sympy.Symbol]:
    names = [f"eta{j}" for j in range(1, n + 1)] + [f"xi{j}" for j in range(1, n + 1)]
    return [sympy.Symbol(name, real=True) for name in names]


def _check_tree(expr: sympy.Expr, allowed: set):
    for node in sympy.preorder_traversal(expr):
        if not isinstance(node, _ALLOWED_NODES):
            raise ExpressionError(f"'{node.func.__name__}' is not part of the grammar")
        if isinstance(node, sympy.Symbol) and node not in allowed:
            raise ExpressionError(f"unknown symbol '{node}'")


def parse_expression(text: str, n: int) -> sympy.Expr:
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    if not _ALLOWED_CHARACTERS.match(text):
        raise ExpressionError(f"expression '{text}' contains characters outside the grammar")
    symbols = modulus_symbols(n)
    names = {str(s): s for s in symbols}
    unknown = sorted(set(_IDENTIFIER.findall(text)) - set(names))
    if unknown:
        raise ExpressionError(f"unknown names in '{text}': {', '.join(unknown)}")
    try:
        expr = parse_expr(
            text,
            local_dict=names,
            global_dict={
                "Integer": sympy.Integer,
                "Float": sympy.Float,
                "Rational": sympy.Rational,
                "Symbol": sympy.Symbol,
            },
            transformations=standard_transformations,
            evaluate=True,
        )
    except (SyntaxError, TypeError, ValueError, TokenError) as e:
        raise ExpressionError(f"cannot parse '{text}': {e}") from e
    if not isinstance(expr, sympy.Expr):
        raise ExpressionError(f"'{text}' is not an arithmetic expression")
    _check_tree(expr, set(symbols))
    return expr


def compile_expression(text: str, n: int) -> ModuliFunction:
    """Compile an h0/g0 expression into a function of the 2n moduli.

    Raises:
        ExpressionError: For anything outside the grammar.
    """
    symbols = modulus_symbols(n)
    expr = parse_expression(text, n)
    fn = lambdify(symbols, expr, modules="numpy")

    def evaluate(moduli: np.ndarray) -> float:
        return float(np.real(fn(*np.asarray(moduli, dtype=float))))

    return evaluate
