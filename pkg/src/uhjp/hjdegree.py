"""HJ-degrees of subnormal series with cyclic factors.

Two independent computations are always made and must agree: the closed
product over factors, and the step recursion ``d_i = d_{i-1}^p_i * p_i^(p_i-1)``
that tracks the degree through each extension.
"""

from __future__ import annotations

from dataclasses import dataclass

from uhjp.groups import FiniteGroup, SubnormalCyclicSeries, all_subnormal_cyclic_series


@dataclass(frozen=True)
class HJDegree:
    value: int
    factor_orders: tuple
    per_step: tuple
    series: SubnormalCyclicSeries | None = None

    def to_json(self):
        return {
            "value": str(self.value),
            "factor_orders": list(self.factor_orders),
            "per_step": [str(d) for d in self.per_step],
        }


def product_formula(orders) -> int:
    orders = list(orders)
    total = 1
    for i, p in enumerate(orders):
        tail = 1
        for q in orders[i + 1:]:
            tail *= q
        total *= p ** ((p - 1) * tail)
    return total


def step_degrees(orders) -> tuple:
    """d_0 = 1, d_i = d_{i-1}^p_i * p_i^(p_i - 1)."""
    ds = [1]
    for p in orders:
        ds.append(ds[-1] ** p * p ** (p - 1))
    return tuple(ds)


def hj_degree(series) -> HJDegree:
    """HJ-degree of a series (or of a bare list of factor orders)."""
    if isinstance(series, SubnormalCyclicSeries):
        orders, src = series.factor_orders, series
    else:
        orders, src = tuple(int(p) for p in series), None
    if any(p < 1 for p in orders):
        raise ValueError("factor orders must be positive")
    closed = product_formula(orders)
    steps = step_degrees(orders)
    if steps[-1] != closed:
        raise AssertionError(f"HJ-degree formulas disagree: {closed} vs {steps[-1]}")
    return HJDegree(closed, tuple(orders), steps, src)


def all_hj_degrees(G: FiniteGroup):
    """HJ-degree of every cyclic-factor series of G, in enumeration order.

    Returns a list of ``(series, HJDegree)`` and a dict mapping each value
    reached by more than one series to the factor-order tuples producing it.
    """
    rows = [(s, hj_degree(s)) for s in all_subnormal_cyclic_series(G)]
    by_value = {}
    for s, d in rows:
        by_value.setdefault(d.value, []).append(s.factor_orders)
    duplicates = {v: orders for v, orders in by_value.items() if len(orders) > 1}
    return rows, duplicates
