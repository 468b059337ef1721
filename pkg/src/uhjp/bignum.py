"""Exact integers that degrade to unevaluated expressions past a digit guard.

Plan lengths grow like towers of exponentials. Values within
``config.digit_guard()`` decimal digits stay plain ``int``; anything larger
becomes a :class:`Huge` expression DAG that can still be composed, compared
against ordinary integers and rendered, but never evaluated.
"""

from __future__ import annotations

import math

from uhjp import config
from uhjp.errors import OverflowBudget

NODE_LIMIT = 100_000
_LOG10_2 = math.log10(2)


class Huge:
    """An integer too large to hold exactly; always exceeds every ``int`` plan value."""

    __slots__ = ("op", "args", "size", "_key")

    def __init__(self, op, *args):
        self.op = op
        self.args = args
        self.size = 1 + sum(a.size for a in args if isinstance(a, Huge))
        if self.size > NODE_LIMIT:
            raise OverflowBudget("symbolic plan expression exceeds the node guard")
        self._key = (op,) + tuple(a._key if isinstance(a, Huge) else a for a in args)

    def __eq__(self, other):
        return isinstance(other, Huge) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    # Huge values are created only past the digit guard, so they dominate ints.
    def __gt__(self, other):
        if isinstance(other, Huge):
            return NotImplemented
        return True

    def __ge__(self, other):
        return self.__gt__(other)

    def __lt__(self, other):
        if isinstance(other, Huge):
            return NotImplemented
        return False

    def __le__(self, other):
        return self.__lt__(other)

    def __repr__(self):
        return f"Huge({render(self)})"

    def __str__(self):
        return render(self)


def digits(a: int) -> int:
    """Exact count of decimal digits of |a|."""
    a = abs(a)
    if a < 10:
        return 1
    k = int((a.bit_length() - 1) * _LOG10_2) + 1
    return k + 1 if a >= 10**k else k


def is_huge(a) -> bool:
    return isinstance(a, Huge)


def exceeds(a, limit) -> bool:
    return isinstance(a, Huge) or a > limit


def add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    return Huge("+", a, b)


def mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a == 0 or b == 0:
            return 0
        if digits(a) + digits(b) <= config.digit_guard():
            return a * b
    elif a == 1:
        return b
    elif b == 1:
        return a
    return Huge("*", a, b)


def power(a, b):
    """a ** b for a >= 1, b >= 0."""
    if isinstance(a, int) and a <= 1:
        return a
    if isinstance(b, int):
        if b == 0:
            return 1
        if b == 1:
            return a
        if isinstance(a, int) and b.bit_length() < 64:
            if b * math.log10(a) <= config.digit_guard():
                return a**b
    return Huge("^", a, b)


def call(name, *args):
    """An opaque function application, for recursions too deep to unroll."""
    return Huge(name, *args)


def render(a, depth=4) -> str:
    if isinstance(a, int):
        d = digits(a)
        return str(a) if d <= 40 else f"<{d}-digit integer>"
    if depth == 0:
        return "…"
    parts = [render(x, depth - 1) for x in a.args]
    if a.op == "^":
        return f"{_paren(a.args[0], parts[0])}^({parts[1]})"
    if a.op in ("+", "*"):
        return f"({parts[0]} {a.op} {parts[1]})"
    return f"{a.op}(" + ", ".join(parts) + ")"


def _paren(x, s):
    return s if isinstance(x, int) else f"({s})"


def to_json(a):
    """JSON form: exact decimal when held exactly, otherwise the expression."""
    if isinstance(a, int):
        if digits(a) <= 1000:
            return {"exact": True, "value": str(a), "digits": digits(a)}
        return {"exact": True, "value": None, "digits": digits(a)}
    return {"exact": False, "expr": render(a, depth=6)}
