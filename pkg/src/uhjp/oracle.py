"""Brute-force ground truth for tiny instances.

Everything here works by direct enumeration and shares no code path with
the extraction combinators beyond word substitution, so it can be used to
check them.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from uhjp import bignum, config
from uhjp.coloring import ColoringOracle, table_oracle
from uhjp.errors import InvalidDegree, LengthMismatch
from uhjp.groups import EquivalenceRelation, FiniteGroup, GroupAction, regular_action
from uhjp.words import ConstantWord, Run, VariableWord, format_word, substitute, var

# ---------------------------------------------------------------------------
# verification


@dataclass
class ClassReport:
    members: tuple
    colors: tuple
    words: tuple = field(repr=False, default=())

    @property
    def monochromatic(self):
        return len(set(self.colors)) <= 1

    def to_json(self, dense_limit=64):
        out = {"members": list(self.members), "colors": [_color_json(c) for c in self.colors],
               "monochromatic": self.monochromatic}
        if self.words:
            out["words"] = [_word_ref(w, dense_limit) for w in self.words]
        return out


@dataclass
class VerifyReport:
    ok: bool
    classes: list

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "classes": [c.to_json() for c in self.classes]}


def _color_json(c):
    if isinstance(c, int):
        return c
    return repr(c)


def _word_ref(W, dense_limit):
    if W.length <= dense_limit:
        return list(W.symbols())
    return {"length": str(W.length), "prefix": format_word(W, limit=16)}


def verify_witness(W: VariableWord, coloring: ColoringOracle, relation: EquivalenceRelation,
                   action: GroupAction, *, include_singletons=True) -> VerifyReport:
    """Check that every relation class substitutes to a single color.

    Singleton classes are trivially monochromatic; with
    ``include_singletons=False`` they are skipped without querying.
    """
    if W.length != coloring.length:
        raise LengthMismatch(f"word length {W.length} != coloring length {bignum.render(coloring.length)}")
    if relation.set_size != action.set_size:
        raise LengthMismatch("relation and action live on different sets")
    reports = []
    for members in relation.classes():
        if len(members) == 1 and not include_singletons:
            continue
        words = tuple(substitute(W, x, action) for x in members)
        colors = tuple(coloring(w) for w in words)
        reports.append(ClassReport(tuple(members), colors, words))
    return VerifyReport(all(c.monochromatic for c in reports), reports)


# ---------------------------------------------------------------------------
# uniform words


def count_uniform_words(h: int, alphabet_size: int, d: int, N: int) -> int:
    if h < 1 or d % h:
        raise InvalidDegree(f"|H| = {h} does not divide d = {d}")
    if d > N:
        return 0
    k = d // h
    return math.factorial(N) // (math.factorial(k) ** h * math.factorial(N - d)) * alphabet_size ** (N - d)


def _arrangements(counts):
    """Distinct sequences using ``counts[j]`` copies of slot j, in lex slot order."""
    total = sum(counts)
    seq = [0] * total

    def rec(pos):
        if pos == total:
            yield tuple(seq)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                seq[pos] = j
                yield from rec(pos + 1)
                counts[j] += 1

    yield from rec(0)


def enumerate_uniform_words(H, alphabet_size: int, d: int, N: int):
    """Every uniform H-variable word of degree d and length N.

    Variable placements come in lexicographic order of position patterns
    (letter slot before ``v_h`` for h in the order given); within a
    placement the letters run through ``X^(N-d)`` lexicographically.
    """
    H = list(H)
    if not H or d % len(H):
        raise InvalidDegree(f"|H| = {len(H)} does not divide d = {d}")
    if d == 0:
        raise InvalidDegree("degree must be positive")
    if d > N:
        return
    k = d // len(H)
    syms = [None] + [var(h) for h in H]
    for pattern in _arrangements([N - d] + [k] * len(H)):
        free = [i for i, s in enumerate(pattern) if s == 0]
        base = [syms[s] if s else 0 for s in pattern]
        for letters in itertools.product(range(alphabet_size), repeat=len(free)):
            for i, x in zip(free, letters):
                base[i] = x
            yield VariableWord(alphabet_size, Run(base), H)


# ---------------------------------------------------------------------------
# exhaustive checks


@dataclass
class SearchReport:
    verdict: str  # holds | fails | unknown
    N: int
    d: int
    r: int
    counterexample: tuple | None = None
    counterexample_index: int | None = None
    minimal_witness: VariableWord | None = None
    colorings_checked: int = 0
    total_colorings: int = 0
    candidates: int = 0
    wall_budget_hit: bool = False
    reverified: bool = False

    def to_json(self):
        return {
            "verdict": self.verdict,
            "N": self.N,
            "d": self.d,
            "r": self.r,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "counterexample_index": None if self.counterexample_index is None else str(self.counterexample_index),
            "minimal_witness": list(self.minimal_witness.symbols()) if self.minimal_witness is not None else None,
            "colorings_checked": self.colorings_checked,
            "total_colorings": str(self.total_colorings),
            "candidates": self.candidates,
            "wall_budget_hit": self.wall_budget_hit,
            "reverified": self.reverified,
        }


def _setup(target, relation, variables):
    if isinstance(target, FiniteGroup):
        target = regular_action(target)
    if relation is None:
        relation = EquivalenceRelation.total(target.set_size)
    if variables is None:
        variables = list(target.group.elements())
    return target, relation, list(variables)


def _domain_index(word, m):
    idx = 0
    for s in word:
        idx = idx * m + s
    return idx


def _candidate_classes(action, relation, d, N, variables):
    """For each candidate word, its non-singleton classes as lists of domain indices."""
    m = action.set_size
    out, words = [], []
    groups = [c for c in relation.classes() if len(c) > 1]
    for W in enumerate_uniform_words(variables, m, d, N):
        classes = []
        for members in groups:
            classes.append(tuple(_domain_index(substitute(W, x, action).symbols(), m) for x in members))
        words.append(W)
        out.append(tuple(classes))
    return words, out


def _digits(index, r, M):
    out = [0] * M
    for i in range(M - 1, -1, -1):
        index, out[i] = divmod(index, r)
    return out


def _scan(args):
    """Check colorings ``start..stop-1``; return (first failing index, checked, alive)."""
    start, stop, r, M, cands, track_alive = args
    table = _digits(start, r, M)
    alive = set(range(len(cands))) if track_alive else set()
    checked = 0
    for idx in range(start, stop):
        checked += 1
        found = False
        dead = []
        for j, classes in enumerate(cands):
            good = all(len({table[i] for i in cls}) == 1 for cls in classes)
            if good:
                found = True
                if not alive:
                    break
            elif j in alive:
                dead.append(j)
        alive.difference_update(dead)
        if not found:
            return idx, checked, alive
        # increment the base-r numeral
        i = M - 1
        while i >= 0:
            table[i] += 1
            if table[i] < r:
                break
            table[i] = 0
            i -= 1
    return None, checked, alive


def uhjp_check(target, relation=None, d=1, r=2, N=1, budget=None, *, variables=None, jobs=1,
               sample=None, seed=0) -> SearchReport:
    """Decide by enumeration whether every r-coloring of X^N has a witness.

    Colorings are base-r numerals over X^N in lexicographic order (first
    coordinate most significant). A failing verdict returns the least
    counterexample and re-checks it through :func:`verify_witness`. With
    ``sample`` set, that many seeded random colorings are tried instead and a
    clean pass yields ``unknown``.
    """
    action, relation, variables = _setup(target, relation, variables)
    budget = config.DEFAULT_ENUMERATION_BUDGET if budget is None else budget
    m = action.set_size
    M = m**N
    total = r**M if M <= 64 else bignum.power(r, M)
    words, cands = _candidate_classes(action, relation, d, N, variables)
    rep = SearchReport("unknown", N, d, r, total_colorings=total, candidates=len(words))
    if not words:
        rep.verdict, rep.counterexample, rep.counterexample_index = "fails", tuple([0] * M), 0
        rep.colorings_checked = 1
        rep.reverified = True
        return rep

    if sample is not None:
        rng = random.Random(seed)
        for k in range(sample):
            table = [rng.randrange(r) for _ in range(M)]
            idx = _lex_value(table, r)
            bad, _, _ = _scan((idx, idx + 1, r, M, cands, False))
            rep.colorings_checked = k + 1
            if bad is not None:
                rep.verdict = "fails"
                rep.counterexample, rep.counterexample_index = tuple(table), idx
                rep.reverified = _reverify(tuple(table), words, action, relation, N, r)
                return rep
        return rep

    limit = min(total, budget) if isinstance(total, int) else budget
    if jobs > 1 and limit > 1:
        step = -(-limit // (jobs * 4))
        chunks = [(s, min(limit, s + step), r, M, cands, True) for s in range(0, limit, step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan, chunks))
        bads = [b for b, _, _ in results if b is not None]
        bad = min(bads) if bads else None
        # count colorings up to and including the first failure, as a serial scan would
        checked = limit if bad is None else bad + 1
        alive = set(range(len(cands)))
        for b, _, a in results:
            alive &= a
    else:
        bad, checked, alive = _scan((0, limit, r, M, cands, True))
    rep.colorings_checked = checked
    if bad is not None:
        table = tuple(_digits(bad, r, M))
        rep.verdict, rep.counterexample, rep.counterexample_index = "fails", table, bad
        rep.reverified = _reverify(table, words, action, relation, N, r)
        return rep
    if limit == total:
        rep.verdict = "holds"
        if alive:
            rep.minimal_witness = words[min(alive)]
    else:
        rep.wall_budget_hit = True
    return rep


def _lex_value(table, r):
    idx = 0
    for c in table:
        idx = idx * r + c
    return idx


def _reverify(table, words, action, relation, N, r):
    """Independently confirm that no candidate word survives the coloring."""
    oracle = table_oracle(table, N, action.set_size, r)
    return not any(verify_witness(W, oracle, relation, action).ok for W in words)


@dataclass
class MinimalNReport:
    value: int | None
    verdict: str  # found | none | unknown
    reports: list
    wall_budget_hit: bool = False
    largest_decided: int | None = None

    def to_json(self):
        return {
            "value": self.value,
            "verdict": self.verdict,
            "wall_budget_hit": self.wall_budget_hit,
            "largest_decided": self.largest_decided,
            "reports": [r.to_json() for r in self.reports],
        }


def minimal_N_search(target, relation=None, d=1, r=2, N_max=1, budget=None, **kw) -> MinimalNReport:
    """Least N <= N_max at which :func:`uhjp_check` holds."""
    reports, decided = [], None
    for N in range(max(1, d), N_max + 1):
        rep = uhjp_check(target, relation, d, r, N, budget, **kw)
        reports.append(rep)
        if rep.verdict == "holds":
            return MinimalNReport(N, "found", reports, False, N)
        if rep.verdict == "unknown":
            return MinimalNReport(None, "unknown", reports, rep.wall_budget_hit, decided)
        decided = N
    return MinimalNReport(None, "none", reports, False, decided)


def search_witness(target, relation, d, N, coloring: ColoringOracle, variables=None):
    """First uniform word (enumeration order) whose classes are monochromatic."""
    action, relation, variables = _setup(target, relation, variables)
    for W in enumerate_uniform_words(variables, action.set_size, d, N):
        if verify_witness(W, coloring, relation, action, include_singletons=False).ok:
            return W
    return None


def all_table_colorings(length, alphabet_size, r):
    """Iterate every r-coloring of X^N as an oracle, in numeral order."""
    M = alphabet_size**length
    for table in itertools.product(range(r), repeat=M):
        yield table_oracle(table, length, alphabet_size, r)


def constant_word(letters, alphabet_size):
    return ConstantWord.of(letters, alphabet_size)
