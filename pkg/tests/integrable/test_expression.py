import numpy as np
import pytest

from app.exceptions import ExpressionError
from app.integrable.expression import compile_expression, modulus_symbols, parse_expression


def test_evaluate_example():
    assert compile_expression("eta1 + 2*xi1", 1)([3.0, 4.0]) == pytest.approx(11.0)


@pytest.mark.parametrize(
    "text, moduli, expected",
    [
        ("eta1*xi2 - eta2", [2.0, 3.0, 5.0, 7.0], 11.0),
        ("(eta1 + eta2)**2 / 4", [1.0, 3.0, 0.0, 0.0], 4.0),
        ("-xi1 + 0.5", [0.0, 0.0, 2.0, 0.0], -1.5),
        ("0.25*(eta1*xi1)**(-0.5)", [4.0, 1.0, 1.0, 1.0], 0.125),
        ("3", [1.0, 1.0, 1.0, 1.0], 3.0),
    ],
)
def test_grammar(text, moduli, expected):
    assert compile_expression(text, 2)(np.array(moduli)) == pytest.approx(expected)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "   ",
        "eta3",
        "sin(eta1)",
        "eta1; import os",
        "__import__('os')",
        "eta1 +",
        "eta1 == xi1",
        "lambda: 1",
    ],
)
def test_rejects_outside_grammar(text):
    with pytest.raises(ExpressionError):
        compile_expression(text, 2)


def test_symbols_order():
    assert [str(s) for s in modulus_symbols(2)] == ["eta1", "eta2", "xi1", "xi2"]


def test_parse_is_symbolic():
    expr = parse_expression("eta1 + eta1", 1)
    assert str(expr) == "2*eta1"
