"""The tower bound T and the Ramsey lemma behind the cyclic step.

``ramsey_step`` follows the inductive proof literally: pigeonhole on
singletons for p = 2, and for larger p the powerset coloring of
(p-2)-subsets, a recursive call, and extension by the smallest witness.
Subsets are sorted tuples of 1-based positions.
"""

from __future__ import annotations

from functools import lru_cache

from uhjp import bignum
from uhjp.errors import NotFound, OverflowBudget, PreconditionViolated


def t_function(n: int, r, *, symbolic=False):
    """T(1,r) = 1, T(2,r) = r+1, T(n+1,r) = T(n, 2^r).

    With ``symbolic=True`` values beyond the digit guard come back as
    :class:`~uhjp.bignum.Huge`; otherwise they raise ``OverflowBudget``.
    """
    if n < 1 or (isinstance(r, int) and r < 1):
        raise ValueError("T is defined for n >= 1 and r >= 1")
    if n == 1:
        return 1
    x = r
    for _ in range(n - 2):
        x = bignum.power(2, x)
    out = bignum.add(x, 1)
    if bignum.is_huge(out) and not symbolic:
        raise OverflowBudget(f"T({n}, {bignum.render(r)}) exceeds the digit guard")
    return out


def ramsey_step(n: int, p: int, coloring, r=None, *, allow_short=False):
    """Find P ⊆ [n], |P| = p, whose two (p-1)-subsets P minus min and P minus max share a color.

    ``coloring`` maps sorted (p-1)-tuples of positions to hashable colors.
    When ``r`` is given, ``n >= T(p, r)`` guarantees success; a shorter ``n``
    raises PreconditionViolated unless ``allow_short`` is set, in which case
    the search runs anyway and may raise NotFound.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if r is not None and not allow_short:
        bound = t_function(p, r, symbolic=True)
        if bignum.exceeds(bound, n):
            raise PreconditionViolated(f"n = {n} < T({p}, {bignum.render(r)}) = {bignum.render(bound)}")
    return _search(n, p, lru_cache(maxsize=None)(coloring))


def _search(n, p, c):
    if p == 2:
        seen = {}
        for j in range(1, n + 1):
            col = c((j,))
            if col in seen:
                return (seen[col], j)
            seen[col] = j
        raise NotFound(f"no repeated color among {n} singletons")

    @lru_cache(maxsize=None)
    def c_prime(B):
        return frozenset(c(B + (x,)) for x in range(B[-1] + 1, n + 1))

    P = _search(n, p - 1, c_prime)
    target = c(P)
    tail = P[1:]
    for x in range(P[-1] + 1, n + 1):
        if c(tail + (x,)) == target:
            return P + (x,)
    raise NotFound("extension step found no witness")
