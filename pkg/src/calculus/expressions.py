"""
Expression grammar for the user functions alpha(y) and f(y).

Grammar (whitespace insignificant):

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          right-associative
    atom   := number | name "(" args ")" | name | "(" expr ")"

Names are the variable `y`, the constants `pi` and `e`, and the one-argument
functions sin, cos, sinh, cosh, tanh, exp, log, sqrt, asinh, atan.
"""
import math
from dataclasses import dataclass, field

from pyparsing import (
    Forward,
    Group,
    Literal,
    Optional,
    ParseBaseException,
    Regex,
    Suppress,
    ZeroOrMore,
    one_of,
)

from src.calculus import dual
from src.calculus.dual import Dual
from src.errors import ExpressionEvaluationError, ExpressionSyntaxError

VARIABLE = "y"
CONSTANTS = {"pi": math.pi, "e": math.e}
ARITY = 1


# ==============================================================
# AST
# ==============================================================

@dataclass(frozen=True)
class Const:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    offset: int = field(default=0, compare=False)


# ==============================================================
# PARSER
# ==============================================================

def _fold_left(s, loc, toks):
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = BinOp(toks[i], node, toks[i + 1], offset=loc)
    return node


def _power(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    return BinOp("^", toks[0], toks[2], offset=loc)


def _build_grammar():
    lpar, rpar, comma = Suppress("("), Suppress(")"), Suppress(",")
    expr = Forward()
    unary = Forward()

    number = Regex(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
    number.set_parse_action(lambda s, loc, t: Const(float(t[0]), offset=loc))

    name = Regex(r"[A-Za-z_][A-Za-z_0-9]*")

    args = Group(Optional(expr + ZeroOrMore(comma - expr)))
    call = name + lpar - args - rpar
    call.set_parse_action(lambda s, loc, t: Call(t[0], tuple(t[1]), offset=loc))

    ident = name.copy()
    ident.set_parse_action(lambda s, loc, t: Var(t[0], offset=loc))

    atom = number | call | ident | (lpar - expr - rpar)

    power = atom + Optional(Literal("^") - unary)
    power.set_parse_action(_power)

    neg = Suppress("-") - unary
    neg.set_parse_action(lambda s, loc, t: Neg(t[0], offset=loc))
    unary <<= neg | power

    term = unary + ZeroOrMore(one_of("* /") - unary)
    term.set_parse_action(_fold_left)

    expr <<= term + ZeroOrMore(one_of("+ -") - term)
    expr.set_parse_action(_fold_left)
    return expr


_GRAMMAR = _build_grammar()


def _byte_offset(source, loc):
    return len(source[:loc].encode("utf-8"))


def _validate(node, source):
    """Checks the grammar cannot express"""
    if isinstance(node, Const):
        if not math.isfinite(node.value):
            raise ExpressionSyntaxError(
                "number literal overflows a double", _byte_offset(source, node.offset)
            )
    elif isinstance(node, Var):
        if node.name != VARIABLE and node.name not in CONSTANTS:
            raise ExpressionSyntaxError(
                f"unknown identifier '{node.name}'", _byte_offset(source, node.offset)
            )
    elif isinstance(node, Call):
        if node.name not in dual.FUNCTIONS:
            raise ExpressionSyntaxError(
                f"unknown function '{node.name}'", _byte_offset(source, node.offset)
            )
        if len(node.args) != ARITY:
            raise ExpressionSyntaxError(
                f"{node.name} expects {ARITY} argument, got {len(node.args)}",
                _byte_offset(source, node.offset),
            )
        for arg in node.args:
            _validate(arg, source)
    elif isinstance(node, Neg):
        _validate(node.operand, source)
    elif isinstance(node, BinOp):
        _validate(node.left, source)
        _validate(node.right, source)


def parse_expr(source):
    """Parse source text into an expression AST"""
    try:
        node = _GRAMMAR.parse_string(source, parse_all=True)[0]
    except ParseBaseException as e:
        raise ExpressionSyntaxError("syntax error", _byte_offset(source, e.loc)) from None
    _validate(node, source)
    return node


def to_source(node):
    """Fully parenthesized source text; parse_expr(to_source(ast)) == ast"""
    if isinstance(node, Const):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_source(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


# ==============================================================
# EVALUATION
# ==============================================================

_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "^": lambda a, b: a ** b,
}


def _eval(node, y):
    try:
        if isinstance(node, Const):
            return Dual(node.value)
        if isinstance(node, Var):
            return y if node.name == VARIABLE else Dual(CONSTANTS[node.name])
        if isinstance(node, Neg):
            result = -_eval(node.operand, y)
        elif isinstance(node, BinOp):
            result = _BINARY[node.op](_eval(node.left, y), _eval(node.right, y))
        elif isinstance(node, Call):
            result = dual.FUNCTIONS[node.name](_eval(node.args[0], y))
        else:
            raise TypeError(f"not an expression node: {node!r}")
    except ExpressionEvaluationError as e:
        if e.node is None:
            e.node = node
        raise
    except OverflowError as e:
        raise ExpressionEvaluationError(str(e), node) from e
    if not (math.isfinite(result.value) and math.isfinite(result.deriv)):
        raise ExpressionEvaluationError(
            f"non-finite value in {to_source(node)}", node
        )
    return result


def eval_dual(ast, y):
    """(g(y), g'(y)) by forward-mode dual numbers"""
    result = _eval(ast, Dual.variable(y))
    return result.value, result.deriv


class UserFunction:
    """A parsed one-variable function with its exact derivative"""

    def __init__(self, source):
        self.source = source
        self.ast = parse_expr(source)

    def __repr__(self):
        return f"UserFunction({self.source!r})"

    def __call__(self, y):
        return eval_dual(self.ast, y)[0]

    def derivative(self, y):
        return eval_dual(self.ast, y)[1]

    def dual(self, y):
        return eval_dual(self.ast, y)
