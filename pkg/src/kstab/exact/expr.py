"""Parse short formula strings such as ``3*(a+2)/(a^2+2*a-2)`` or ``(1+sqrt(21))/2``.

Only numbers, one variable, ``+ - * / ^`` and ``sqrt`` of a rational are accepted;
anything else is rejected rather than evaluated.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .numbers import QuadExt, Scalar, simplify
from .poly import RationalFn, UniPoly


class FormulaError(ValueError):
    pass


def _eval(node, var: str | None):
    if isinstance(node, ast.Expression):
        return _eval(node.body, var)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if var is not None and node.id == var:
            return RationalFn(UniPoly.x())
        raise FormulaError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        x = _eval(node.operand, var)
        return -x if isinstance(node.op, ast.USub) else x
    if isinstance(node, ast.BinOp):
        x, y = _eval(node.left, var), _eval(node.right, var)
        if isinstance(node.op, ast.Add):
            return x + y
        if isinstance(node.op, ast.Sub):
            return x - y
        if isinstance(node.op, ast.Mult):
            return x * y
        if isinstance(node.op, ast.Div):
            return x / y
        if isinstance(node.op, ast.Pow):
            if not (isinstance(y, Fraction) and y.denominator == 1 and y >= 0):
                raise FormulaError("exponents must be nonnegative integers")
            out = Fraction(1) if not isinstance(x, RationalFn) else RationalFn(1)
            for _ in range(int(y)):
                out = out * x
            return out
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        arg = _eval(node.args[0], var)
        if not isinstance(arg, Fraction):
            raise FormulaError("sqrt takes a rational constant")
        return QuadExt.sqrt(arg)
    raise FormulaError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _parse(text: str):
    try:
        return ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise FormulaError(f"cannot parse {text!r}") from exc


def parse_scalar(text: str) -> Scalar:
    """A rational or quadratic irrational such as ``5-sqrt(5)``."""
    v = _eval(_parse(str(text)), None)
    if isinstance(v, RationalFn):
        raise FormulaError("constant expected")
    return simplify(v)


def parse_rational_fn(text: str, var: str = "a") -> RationalFn:
    """A rational function of ``var`` with rational coefficients."""
    v = _eval(_parse(str(text)), var)
    if isinstance(v, QuadExt):
        v = simplify(v)
        if isinstance(v, QuadExt):
            raise FormulaError("irrational coefficient")
    return RationalFn._coerce(v)
