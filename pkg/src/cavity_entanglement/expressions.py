"""
Amplitude expressions such as ``1/sqrt(10)`` or ``sqrt(2/3)``.

The grammar admits decimal numbers, ``*``, ``/``, unary signs, parentheses and
``sqrt``. Anything else is rejected.
"""

import ast
import math
from typing import List

from .errors import DomainError

_BINARY = {
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _evaluate(node: ast.AST, text: str) -> float:
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, text)
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        value = _evaluate(node.operand, text)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        left, right = _evaluate(node.left, text), _evaluate(node.right, text)
        if isinstance(node.op, ast.Div) and right == 0:
            raise DomainError(f"division by zero in amplitude {text!r}")
        return _BINARY[type(node.op)](left, right)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
        arg = _evaluate(node.args[0], text)
        if arg < 0:
            raise DomainError(f"sqrt of a negative number in amplitude {text!r}")
        return math.sqrt(arg)
    raise DomainError(f"unsupported amplitude expression {text!r}")


def parse_amplitude(text: str) -> float:
    """Evaluate one amplitude expression."""
    source = text.strip()
    if not source:
        raise DomainError("empty amplitude")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse amplitude {text!r}") from exc
    value = _evaluate(tree, text)
    if not math.isfinite(value):
        raise DomainError(f"amplitude {text!r} is not finite")
    return value


def parse_amplitudes(text: str) -> List[float]:
    """Split a comma-separated list; commas inside parentheses are not separators."""
    items, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(current))
            current = []
        else:
            current.append(ch)
    items.append("".join(current))
    return [parse_amplitude(item) for item in items]
