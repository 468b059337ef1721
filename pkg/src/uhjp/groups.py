"""Finite groups as Cayley tables, their actions, subgroups and series.

Elements are dense indices ``0..order-1`` with the identity at index 0.
Multiplication follows composition of maps: ``mul[a][b]`` is "apply b, then
a", so a left action satisfies ``act[h][act[g][x]] == act[mul[h][g]][x]``.
All checks are exhaustive; the groups handled here are small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from uhjp import config
from uhjp.errors import (
    InvalidAction,
    InvalidHomomorphism,
    InvalidSeries,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    NotSolvable,
    SizeLimitExceeded,
)

MAX_SYMMETRIC_DEGREE = 8


def _check_table_size(order):
    if order * order > config.dense_budget():
        raise SizeLimitExceeded(
            f"a Cayley table of order {order} needs {order * order} entries "
            f"(budget {config.dense_budget()})"
        )


def _validate_table(mul):
    """Return (identity, inverses) or raise NotAGroup."""
    n = len(mul)
    if n == 0:
        raise NotAGroup("not-square", "empty table")
    if any(len(row) != n for row in mul):
        raise NotAGroup("not-square", "rows have different lengths")
    M = np.asarray(mul, dtype=np.int64)
    if M.min() < 0 or M.max() >= n:
        raise NotAGroup("not-closed", "entry outside [0, order)")
    ar = np.arange(n)
    ids = [e for e in range(n) if (M[e] == ar).all() and (M[:, e] == ar).all()]
    if not ids:
        raise NotAGroup("no-identity")
    e = ids[0]
    # associativity: M[M[a,b],c] == M[a,M[b,c]], chunked over a
    step = max(1, 2_000_000 // (n * n))
    for lo in range(0, n, step):
        left = M[M[lo:lo + step]]
        right = M[lo:lo + step][:, M]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise NotAGroup("not-associative", f"({lo + a}*{b})*{c} != {lo + a}*({b}*{c})")
    inv = []
    for x in range(n):
        hits = np.flatnonzero(M[x] == e)
        if len(hits) == 0 or M[hits[0], x] != e:
            raise NotAGroup("missing-inverse", f"element {x}")
        inv.append(int(hits[0]))
    return e, tuple(inv)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group with identity at index 0.

    Use :func:`from_cayley` for tables whose identity sits elsewhere.
    """

    mul: tuple
    labels: tuple | None = None
    order: int = field(init=False)
    identity: int = field(init=False)
    inv: tuple = field(init=False)

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        _check_table_size(len(mul))
        e, inv = _validate_table(mul)
        if e != 0:
            raise NotAGroup("no-identity", f"identity found at index {e}, expected 0; use from_cayley")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "order", len(mul))
        object.__setattr__(self, "identity", 0)
        object.__setattr__(self, "inv", inv)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(mul):
                raise ValueError("one label per element required")
            object.__setattr__(self, "labels", labels)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def label(self, g):
        return self.labels[g] if self.labels else str(g)

    def elements(self):
        return range(self.order)

    def power(self, g, k):
        out = self.identity
        for _ in range(k % self.element_order(g)):
            out = self.mul[out][g]
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    def commutator(self, a, b):
        """a^-1 b^-1 a b."""
        m = self.mul
        return m[m[m[self.inv[a]][self.inv[b]]][a]][b]

    @cached_property
    def is_abelian(self):
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))


def from_cayley(table, labels=None) -> FiniteGroup:
    """Validate an arbitrary Cayley table and relabel so the identity is 0."""
    try:
        rows = [list(row) for row in table]
    except TypeError:
        raise NotAGroup("not-square", "table must be a list of rows") from None
    _check_table_size(len(rows))
    e, _ = _validate_table(rows)
    if e == 0:
        return FiniteGroup(rows, labels)
    # swap indices 0 and e
    perm = list(range(len(rows)))
    perm[0], perm[e] = e, 0
    new = [[perm[rows[perm[a]][perm[b]]] for b in range(len(rows))] for a in range(len(rows))]
    new_labels = None
    if labels is not None:
        new_labels = [labels[perm[i]] for i in range(len(rows))]
    return FiniteGroup(new, new_labels)


# ---------------------------------------------------------------------------
# actions, homomorphisms, relations


@dataclass(frozen=True, eq=False)
class GroupAction:
    group: FiniteGroup
    set_size: int
    act: tuple

    def __post_init__(self):
        G = self.group
        act = tuple(tuple(int(v) for v in row) for row in self.act)
        object.__setattr__(self, "act", act)
        n = self.set_size
        if n < 1:
            raise InvalidAction("set_size must be positive")
        if len(act) != G.order or any(len(row) != n for row in act):
            raise InvalidAction("act must be an order x set_size table")
        if any(not 0 <= v < n for row in act for v in row):
            raise InvalidAction("act has entries outside the set")
        if act[G.identity] != tuple(range(n)):
            raise InvalidAction("identity does not act trivially")
        A = np.asarray(act)
        M = np.asarray(G.mul)
        # act[h][act[g][x]] == act[mul[h][g]][x]
        step = max(1, 2_000_000 // (G.order * n))
        for lo in range(0, G.order, step):
            lhs = A[lo:lo + step][:, A]  # [h, g, x] -> A[h, A[g, x]]
            rhs = A[M[lo:lo + step]]  # [h, g, x] -> A[M[h, g], x]
            if not np.array_equal(lhs, rhs):
                raise InvalidAction("compatibility h(gx) = (hg)x fails")

    def __eq__(self, other):
        return isinstance(other, GroupAction) and self.group == other.group and self.act == other.act

    def __hash__(self):
        return hash(self.act)

    def __repr__(self):
        return f"GroupAction(order={self.group.order}, set_size={self.set_size})"

    def orbit(self, x, H=None):
        H = range(self.group.order) if H is None else H
        return sorted({self.act[h][x] for h in H})

    def orbit_count(self, H=None):
        return orbits_of(self, H).class_count

    @property
    def is_transitive(self):
        return self.orbit_count() == 1


def regular_action(G: FiniteGroup) -> GroupAction:
    """G acting on itself by left multiplication."""
    return GroupAction(G, G.order, G.mul)


def restrict_action(action: GroupAction, embedding: "GroupHomomorphism") -> GroupAction:
    """Pull an action back along an injective homomorphism into its group."""
    if embedding.dst != action.group:
        raise InvalidAction("embedding must land in the acting group")
    return GroupAction(embedding.src, action.set_size, [action.act[embedding.map[h]] for h in embedding.src.elements()])


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    src: FiniteGroup
    dst: FiniteGroup
    map: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.src.order or any(not 0 <= v < self.dst.order for v in m):
            raise InvalidHomomorphism("map must send each source element to a target element")
        if m[self.src.identity] != self.dst.identity:
            raise InvalidHomomorphism("identity not preserved")
        ms, md = self.src.mul, self.dst.mul
        for a in self.src.elements():
            for b in self.src.elements():
                if m[ms[a][b]] != md[m[a]][m[b]]:
                    raise InvalidHomomorphism(f"map(a*b) != map(a)*map(b) at a={a}, b={b}")

    def __call__(self, g):
        return self.map[g]

    def kernel(self):
        return tuple(g for g in self.src.elements() if self.map[g] == self.dst.identity)

    def image(self):
        return tuple(sorted(set(self.map)))

    @property
    def is_surjective(self):
        return len(set(self.map)) == self.dst.order

    @property
    def is_injective(self):
        return len(set(self.map)) == self.src.order

    def then(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """Composite ``other ∘ self``."""
        return GroupHomomorphism(self.src, other.dst, [other.map[v] for v in self.map])


def identity_hom(G: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(G, G, range(G.order))


@dataclass(frozen=True)
class EquivalenceRelation:
    """A partition of ``range(set_size)`` in canonical first-appearance form."""

    set_size: int
    class_id: tuple
    class_count: int = field(init=False)

    def __post_init__(self):
        ids = list(self.class_id)
        if len(ids) != self.set_size:
            raise ValueError("class_id needs one entry per point")
        renum = {}
        canon = tuple(renum.setdefault(c, len(renum)) for c in ids)
        object.__setattr__(self, "class_id", canon)
        object.__setattr__(self, "class_count", len(renum))

    @classmethod
    def total(cls, n):
        return cls(n, [0] * n)

    @classmethod
    def identity(cls, n):
        return cls(n, range(n))

    @classmethod
    def from_classes(cls, n, classes):
        ids = [None] * n
        for k, block in enumerate(classes):
            for x in block:
                if ids[x] is not None:
                    raise ValueError(f"point {x} appears in two classes")
                ids[x] = k
        # unmentioned points become singletons
        nxt = len(classes)
        for x in range(n):
            if ids[x] is None:
                ids[x] = nxt
                nxt += 1
        return cls(n, ids)

    def classes(self):
        out = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_id):
            out[c].append(x)
        return out

    def related(self, a, b):
        return self.class_id[a] == self.class_id[b]


# ---------------------------------------------------------------------------
# constructions


def _cycle_label(perm):
    seen, cycles = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def _group_from_perms(perms):
    """Group and action from a composition-closed list of permutations.

    Elements are indexed in lexicographic order of one-line notation, which
    puts the identity first.
    """
    perms = sorted(set(tuple(p) for p in perms))
    m = len(perms)
    _check_table_size(m)
    degree = len(perms[0])
    P = np.asarray(perms, dtype=np.int64)
    if not (P[0] == np.arange(degree)).all():
        raise NotAGroup("no-identity", "permutation set lacks the identity")
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    codes = P @ weights
    comp = P[:, P]  # [a, b, i] -> P[a, P[b, i]]  i.e. a∘b
    idx = np.searchsorted(codes, comp @ weights)
    idx = np.clip(idx, 0, m - 1)
    if not np.array_equal(codes[idx], comp @ weights):
        raise NotAGroup("not-closed", "permutation set not closed under composition")
    G = FiniteGroup(idx.tolist(), [_cycle_label(p) for p in perms])
    return G, GroupAction(G, degree, perms)


def permutation_group(generators, degree=None):
    """Closure of permutation generators (0-based one-line tuples)."""
    gens = [tuple(g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
        if len(seen) ** 2 > config.dense_budget():
            raise SizeLimitExceeded("generated permutation group too large")
    return _group_from_perms(seen)


def standard_group(kind: str, n: int) -> FiniteGroup:
    """The cyclic group C_n or the symmetric group S_n."""
    return standard_action(kind, n).group


def standard_action(kind: str, n: int) -> GroupAction:
    """C_n acting on itself, or S_n acting naturally on ``range(n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "cyclic":
        _check_table_size(n)
        labels = ["e", "t"] + [f"t^{i}" for i in range(2, n)]
        G = FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], labels[:n])
        return regular_action(G)
    if kind == "symmetric":
        if n > MAX_SYMMETRIC_DEGREE:
            raise SizeLimitExceeded(f"S_{n} exceeds the degree guard {MAX_SYMMETRIC_DEGREE}")
        order = 1
        for i in range(2, n + 1):
            order *= i
        _check_table_size(order)
        return _group_from_perms(itertools.permutations(range(n)))[1]
    raise ValueError(f"unknown group kind {kind!r}")


def dihedral_group(n: int) -> GroupAction:
    """Symmetries of the regular n-gon, acting on its vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], n)[1]


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index ``g * |H| + h``."""
    _check_table_size(G.order * H.order)
    nH = H.order
    mul = [
        [G.mul[a // nH][b // nH] * nH + H.mul[a % nH][b % nH] for b in range(G.order * nH)]
        for a in range(G.order * nH)
    ]
    labels = [f"({G.label(a)},{H.label(b)})" for a in range(G.order) for b in range(nH)]
    return FiniteGroup(mul, labels)


# ---------------------------------------------------------------------------
# subgroups


def generate(G: FiniteGroup, gens) -> frozenset:
    """Subgroup generated by ``gens``."""
    elems = {G.identity}
    frontier = [G.identity]
    gens = list(set(gens))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def is_subgroup(G: FiniteGroup, S) -> bool:
    S = set(S)
    if G.identity not in S or any(not 0 <= s < G.order for s in S):
        return False
    return all(G.mul[a][b] in S for a in S for b in S)


def check_subgroup(G, S) -> tuple:
    S = tuple(sorted(set(S)))
    if not S or not is_subgroup(G, S):
        raise NotASubgroup(f"{list(S)} is not a subgroup")
    return S


def is_normal(G: FiniteGroup, H, within=None) -> bool:
    """Whether H is normalized by every element of ``within`` (default G)."""
    H = set(H)
    within = G.elements() if within is None else within
    return all(G.conj(g, h) in H for g in within for h in H)


def subgroup(G: FiniteGroup, elems):
    """Subgroup as a standalone group plus its inclusion homomorphism.

    Subgroup elements are re-indexed in increasing order of their index in G.
    """
    S = check_subgroup(G, elems)
    pos = {g: i for i, g in enumerate(S)}
    mul = [[pos[G.mul[a][b]] for b in S] for a in S]
    labels = [G.label(g) for g in S] if G.labels else None
    Hg = FiniteGroup(mul, labels)
    return Hg, GroupHomomorphism(Hg, G, S)


def commutator_subgroup(G: FiniteGroup, A=None) -> frozenset:
    A = list(G.elements()) if A is None else list(A)
    return generate(G, {G.commutator(a, b) for a in A for b in A})


def derived_series(G: FiniteGroup):
    series = [frozenset(G.elements())]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: FiniteGroup):
    """Return ``(solvable, derived_series)``; series entries are sorted tuples."""
    series = derived_series(G)
    return len(series[-1]) == 1, [tuple(sorted(s)) for s in series]


@dataclass(frozen=True, eq=False)
class SubnormalCyclicSeries:
    """{e} = G_0 ◁ G_1 ◁ ... ◁ G_n = G with cyclic factors.

    ``factor_generators[i]`` is an element of G_{i+1} whose coset generates
    G_{i+1}/G_i (the list is 0-based over the n factors).
    """

    group: FiniteGroup
    subgroups: tuple
    factor_orders: tuple
    factor_generators: tuple

    def __post_init__(self):
        G = self.group
        subs = tuple(tuple(sorted(set(s))) for s in self.subgroups)
        object.__setattr__(self, "subgroups", subs)
        object.__setattr__(self, "factor_orders", tuple(self.factor_orders))
        object.__setattr__(self, "factor_generators", tuple(self.factor_generators))
        if subs[0] != (G.identity,):
            raise InvalidSeries("series must start at the trivial subgroup")
        if subs[-1] != tuple(G.elements()):
            raise InvalidSeries("series must end at the whole group")
        n = len(subs) - 1
        if len(self.factor_orders) != n or len(self.factor_generators) != n:
            raise InvalidSeries("one factor order and generator per step")
        prod = 1
        for i in range(n):
            lo, hi = subs[i], subs[i + 1]
            if not is_subgroup(G, hi) or not set(lo) < set(hi):
                raise InvalidSeries(f"step {i + 1} is not a proper subgroup inclusion")
            if not is_normal(G, lo, within=hi):
                raise InvalidSeries(f"G_{i} is not normal in G_{i + 1}")
            p = len(hi) // len(lo)
            if len(hi) % len(lo) or p != self.factor_orders[i]:
                raise InvalidSeries(f"factor order mismatch at step {i + 1}")
            t = self.factor_generators[i]
            if t not in hi or generate(G, set(lo) | {t}) != frozenset(hi):
                raise InvalidSeries(f"generator {t} does not generate G_{i + 1}/G_{i}")
            prod *= p
        if prod != G.order:
            raise InvalidSeries("factor orders do not multiply to |G|")

    def __repr__(self):
        return f"SubnormalCyclicSeries(orders={self.factor_orders})"

    def __len__(self):
        return len(self.factor_orders)


def series_from_chain(G: FiniteGroup, chain) -> SubnormalCyclicSeries:
    """Build a series from an explicit ascending chain of subgroups."""
    chain = [tuple(sorted(set(s))) for s in chain]
    orders, gens = [], []
    for lo, hi in zip(chain, chain[1:]):
        if len(hi) % len(lo):
            raise InvalidSeries("chain orders do not divide")
        orders.append(len(hi) // len(lo))
        target = frozenset(hi)
        gen = next((t for t in hi if generate(G, set(lo) | {t}) == target), None)
        if gen is None:
            raise InvalidSeries(f"factor {len(orders)} is not cyclic")
        gens.append(gen)
    return SubnormalCyclicSeries(G, chain, orders, gens)


def subnormal_cyclic_series(G: FiniteGroup) -> SubnormalCyclicSeries:
    """Deterministic refinement of the derived series into cyclic steps.

    Between consecutive derived terms A ◁ B (B/A abelian) the smallest-index
    element of B outside the current subgroup is adjoined until B is reached.
    """
    solvable, derived = is_solvable(G)
    if not solvable:
        raise NotSolvable(f"group of order {G.order} is not solvable")
    chain, gens = [frozenset([G.identity])], []
    for B in reversed(derived[:-1]):
        while chain[-1] != frozenset(B):
            t = next(g for g in B if g not in chain[-1])
            chain.append(generate(G, chain[-1] | {t}))
            gens.append(t)
    orders = [len(hi) // len(lo) for lo, hi in zip(chain, chain[1:])]
    return SubnormalCyclicSeries(G, chain, orders, gens)


def all_subnormal_cyclic_series(G: FiniteGroup):
    """Every subnormal series of G with cyclic factors (small groups only)."""
    whole = frozenset(G.elements())
    cache = {}

    def extend(H):
        if H == whole:
            return [[H]]
        if H in cache:
            return cache[H]
        out = []
        nexts = set()
        for g in G.elements():
            if g in H:
                continue
            K = generate(G, H | {g})
            if K not in nexts and is_normal(G, H, within=K):
                nexts.add(K)
        for K in sorted(nexts, key=lambda s: (len(s), sorted(s))):
            for tail in extend(K):
                out.append([H] + tail)
        cache[H] = out
        return out

    return [series_from_chain(G, chain) for chain in extend(frozenset([G.identity]))]


def quotient(G: FiniteGroup, H):
    """G/H with cosets indexed by their smallest member, plus the projection."""
    H = check_subgroup(G, H)
    if not is_normal(G, H):
        raise NotNormal(f"{list(H)} is not normal")
    coset_of = [None] * G.order
    reps = []
    for g in G.elements():
        if coset_of[g] is None:
            k = len(reps)
            reps.append(g)
            for h in H:
                coset_of[G.mul[g][h]] = k
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    labels = [G.label(g) + ("" if len(H) == 1 else "H") for g in reps] if G.labels else None
    Q = FiniteGroup(mul, labels)
    return Q, GroupHomomorphism(G, Q, coset_of)


def orbits_of(action: GroupAction, H=None) -> EquivalenceRelation:
    """The orbit relation of a subgroup H (default: the whole group)."""
    G = action.group
    H = tuple(G.elements()) if H is None else check_subgroup(G, H)
    ids = [None] * action.set_size
    k = 0
    for x in range(action.set_size):
        if ids[x] is None:
            for h in H:
                ids[action.act[h][x]] = k
            k += 1
    return EquivalenceRelation(action.set_size, ids)


def transversal_section(G: FiniteGroup, H):
    """Map each g to h_g where g = τ_i h_g over left coset representatives.

    Returns ``(phi, reps)``: ``phi[g]`` is the element h_g of H (as an index
    of G) and ``reps`` lists τ_0 = e, τ_1, ... with each further
    representative the smallest element not yet covered.
    """
    H = check_subgroup(G, H)
    phi = [None] * G.order
    reps = []
    for g in G.elements():
        if phi[g] is None:
            reps.append(g)
            for h in H:
                phi[G.mul[g][h]] = h
    return tuple(phi), tuple(reps)
