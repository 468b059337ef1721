"""Witness extraction combinators.

Each :class:`Extractor` fixes a context ``(action, variables, relation,
degree)`` and promises: given r and an r-coloring of ``X^plan(r)``, return a
uniform word of that degree over those variables whose relation classes are
monochromatic. ``run`` checks all of this on every call rather than trusting
the construction.

Combinators build larger extractors from smaller ones:

* :class:`KrizBase` / :class:`KrizStep`: cyclic groups of prime-free order p,
  one relation class ``{e, τ, ..., τ^k}`` at a time.
* :func:`shelah_sequence`: the product-coloring lemma that produces a list of
  words whose concatenated substitutions behave coordinatewise.
* :class:`SingleOrbitLift` / :class:`OrbitStep`: from a group to an action,
  one orbit at a time.
* :class:`ExtensionCompose`: from a normal subgroup and its cyclic quotient to
  the whole group.
* :class:`GroupTransfer`: to subgroups and quotients.

Plans are exact integers while they fit the digit guard and symbolic
:class:`~uhjp.bignum.Huge` values beyond it; extraction refuses to start when
the plan exceeds the dense budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from uhjp import bignum, config
from uhjp.coloring import ColoringOracle, derived, from_spec
from uhjp.errors import (
    AlphabetMismatch,
    LengthMismatch,
    NotAValidSection,
    NotFound,
    OverflowBudget,
    WellDefinednessViolation,
    WitnessError,
)
from uhjp.groups import (
    EquivalenceRelation,
    FiniteGroup,
    GroupAction,
    GroupHomomorphism,
    SubnormalCyclicSeries,
    check_subgroup,
    identity_hom,
    is_normal,
    orbits_of,
    quotient,
    regular_action,
    standard_action,
    standard_group,
    subgroup,
    subnormal_cyclic_series,
    transversal_section,
)
from uhjp.errors import NotNormal
from uhjp.hjdegree import hj_degree
from uhjp.oracle import verify_witness
from uhjp.ramsey import ramsey_step, t_function
from uhjp.words import Run, VariableWord, analyze, concat, relabel, shift, substitute, var

SHELAH_UNROLL = 256


# ---------------------------------------------------------------------------
# results and plans


@dataclass
class ExtractionResult:
    witness: VariableWord
    certificate: list
    query_count: int
    name: str = ""
    degree: int = 0

    def to_json(self, letter_labels=None, var_labels=None):
        from uhjp.words import format_word

        W = self.witness
        return {
            "extractor": self.name,
            "length": str(W.length),
            "degree": self.degree,
            "uniform": W.is_uniform,
            "witness": W.to_json(),
            "pretty": format_word(W, letter_labels, var_labels, limit=200),
            "certificate": [c.to_json() for c in self.certificate],
            "query_count": self.query_count,
        }


@dataclass
class PlanStage:
    stage: str
    values: dict
    dense: bool = True

    def to_json(self):
        out = {"stage": self.stage, "dense": self.dense}
        for k, v in self.values.items():
            out[k] = bignum.to_json(v) if isinstance(v, (int, bignum.Huge)) and not isinstance(v, bool) else v
        return out


@dataclass
class TowerPlan:
    name: str
    r: object
    degree: int
    length: object
    stages: list = field(default_factory=list)

    @property
    def feasible(self):
        return (not bignum.exceeds(self.length, config.dense_budget())) and all(s.dense for s in self.stages)

    def to_json(self):
        return {
            "extractor": self.name,
            "r": bignum.to_json(self.r),
            "degree": str(self.degree),
            "length": bignum.to_json(self.length),
            "feasible": self.feasible,
            "dense_budget": config.dense_budget(),
            "stages": [s.to_json() for s in self.stages],
        }


def _record(trace, stage, dense=True, **values):
    if trace is not None:
        trace.append(PlanStage(stage, values, dense))


# ---------------------------------------------------------------------------
# base class


class Extractor:
    """Common driver; subclasses provide ``_plan`` and ``_extract``."""

    name = "extractor"

    def __init__(self, action: GroupAction, variables, relation: EquivalenceRelation, degree: int):
        self.action = action
        self.variables = tuple(sorted(variables))
        self.relation = relation
        self.degree = degree

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    def __repr__(self):
        return f"{type(self).__name__}(|X|={self.action.set_size}, d={self.degree})"

    def plan(self, r, trace=None):
        return self._plan(r, trace)

    def plan_report(self, r) -> TowerPlan:
        trace = []
        N = self.plan(r, trace)
        _record(trace, f"{self.name}: total", dense=not bignum.exceeds(N, config.dense_budget()), N=N)
        return TowerPlan(self.name, r, self.degree, N, trace)

    def oracle(self, r, spec) -> ColoringOracle:
        """A base oracle of the right length for a coloring spec."""
        N = self._dense_length(r)
        return from_spec(spec, N, self.action.set_size, r)

    def _dense_length(self, r):
        N = self.plan(r)
        if bignum.exceeds(N, config.dense_budget()):
            raise OverflowBudget(f"{self.name}: plan length {bignum.render(N)} at r={bignum.render(r)} exceeds dense budget {config.dense_budget()}")
        return N

    def run(self, r, oracle: ColoringOracle) -> ExtractionResult:
        N = self._dense_length(r)
        if oracle.length != N:
            raise LengthMismatch(f"{self.name}: oracle length {bignum.render(oracle.length)} != plan {N}")
        if oracle.alphabet_size != self.action.set_size:
            raise AlphabetMismatch(f"{self.name}: oracle alphabet {oracle.alphabet_size} != {self.action.set_size}")
        q0 = oracle.queries
        W = self._extract(r, oracle)
        self._check_member(W, N)
        report = verify_witness(W, oracle, self.relation, self.action, include_singletons=False)
        if not report.ok:
            raise WitnessError(f"{self.name}: witness is not monochromatic on every class")
        return ExtractionResult(W, report.classes, oracle.queries - q0, self.name, self.degree)

    def _check_member(self, W, N):
        if not isinstance(W, VariableWord):
            raise WitnessError(f"{self.name}: produced a word without variables")
        st = analyze(W)
        if st.length != N or W.alphabet_size != self.action.set_size:
            raise WitnessError(f"{self.name}: witness length {st.length}, expected {N}")
        if not st.uniform or st.degree != self.degree:
            raise WitnessError(f"{self.name}: witness degree {st.degree} (uniform={st.uniform}), expected {self.degree}")
        if W.var_group != self.variables:
            raise WitnessError(f"{self.name}: witness variables {W.var_group} != {self.variables}")

    def _plan(self, r, trace):
        raise NotImplementedError

    def _extract(self, r, oracle):
        raise NotImplementedError


def cyclic_relation(p, k):
    """E_k on C_p: {e, τ, ..., τ^k} is one class, other points singletons."""
    return EquivalenceRelation.from_classes(p, [list(range(k + 1))])


# ---------------------------------------------------------------------------
# trivial, stubs, brute force


class TrivialExtractor(Extractor):
    """W = (v_e) for the identity relation."""

    name = "trivial"

    def __init__(self, action: GroupAction | None = None):
        action = action or regular_action(standard_group("cyclic", 1))
        super().__init__(action, [action.group.identity], EquivalenceRelation.identity(action.set_size), 1)

    def _plan(self, r, trace):
        _record(trace, "trivial", N=1)
        return 1

    def _extract(self, r, oracle):
        return VariableWord(self.action.set_size, Run([var(self.group.identity)]))


class StubExtractor(Extractor):
    """Contract-partial stand-in for tests of the combinators.

    Always returns ``letter`` repeated ``length - degree`` times followed by
    the variables cycled in increasing order. It is a valid witness only for
    colorings that cannot tell the substitutions apart, e.g. constant
    colorings, letter histograms for regular actions, and coordinate
    projections onto a letter position.
    """

    name = "stub"

    def __init__(self, action, variables, relation, degree, length=None, letter=0):
        super().__init__(action, variables, relation, degree)
        if degree % len(self.variables):
            raise ValueError("degree must be a multiple of the number of variables")
        self.length = degree if length is None else length
        if self.length < degree:
            raise ValueError("length must be at least the degree")
        self.letter = letter

    def _plan(self, r, trace):
        _record(trace, "stub", N=self.length)
        return self.length

    def _extract(self, r, oracle):
        body = [self.letter] * (self.length - self.degree)
        vs = [var(h) for h in self.variables]
        body += [vs[i % len(vs)] for i in range(self.degree)]
        return VariableWord(self.action.set_size, Run(body), self.variables)


class BruteForceExtractor(Extractor):
    """Exhaustive search at a fixed length; correct whenever that length suffices."""

    name = "brute-force"

    def __init__(self, action, variables, relation, degree, length):
        super().__init__(action, variables, relation, degree)
        self.length = length

    def _plan(self, r, trace):
        N = self.length(r) if callable(self.length) else self.length
        _record(trace, "brute-force", N=N)
        return N

    def _extract(self, r, oracle):
        from uhjp.oracle import enumerate_uniform_words

        for W in enumerate_uniform_words(self.variables, self.action.set_size, self.degree, oracle.length):
            if verify_witness(W, oracle, self.relation, self.action, include_singletons=False).ok:
                return W
        raise NotFound(f"no uniform word of degree {self.degree} at length {oracle.length}")


# ---------------------------------------------------------------------------
# the product lemma


def shelah_length(inner: Extractor, n, r, trace=None):
    """N(1,r) = f(r); N(k+1,r) = N(k, r^m) + f(r^(m^N(k, r^m))) with m = |X|."""
    m = inner.action.set_size
    if bignum.is_huge(n) or n > SHELAH_UNROLL:
        N = bignum.call("N", n, r)
        _record(trace, "shelah", dense=False, n=n, r=r, N=N, note="recursion too deep to unroll")
        return N
    budget = config.dense_budget()
    rs = [r]
    for _ in range(n - 1):
        rs.append(bignum.power(rs[-1], m))
    val = inner.plan(rs[n - 1], trace)
    _record(trace, "shelah level 1", dense=True, r=rs[n - 1], N=val)
    for level in range(2, n + 1):
        rr = rs[n - level]
        N1 = val
        width = bignum.power(m, N1)
        colors = bignum.power(rr, width)
        N2 = inner.plan(colors, trace)
        val = bignum.add(N1, N2)
        _record(trace, f"shelah level {level}", dense=not bignum.exceeds(width, budget),
                r=rr, N1=N1, prefix_words=width, inner_colors=colors, N2=N2, N=val)
        if bignum.is_huge(val) and level < n:
            val = bignum.call("N", n, r)
            _record(trace, "shelah", dense=False, n=n, r=r, N=val,
                    note=f"levels {level + 1}..{n} left symbolic")
            break
    return val


def shelah_sequence(inner: Extractor, n, r, oracle: ColoringOracle):
    """Words W_1..W_n whose concatenated substitutions color coordinatewise.

    For any points x_i related under the inner relation to x'_i, the words
    ``W_1(x_1)...W_n(x_n)`` and ``W_1(x'_1)...W_n(x'_n)`` get one color.
    """
    N = shelah_length(inner, n, r)
    if oracle.length != N:
        raise LengthMismatch(f"oracle length {bignum.render(oracle.length)} != N({n}, {bignum.render(r)}) = {bignum.render(N)}")
    return _shelah(inner, n, r, oracle)


def _shelah(inner, n, r, c):
    m = inner.action.set_size
    act = inner.action
    if n == 1:
        return [inner.run(r, c).witness]
    r_up = bignum.power(r, m)
    N1 = shelah_length(inner, n - 1, r_up)
    width = bignum.power(m, N1)
    colors2 = bignum.power(r, width)
    N2 = c.length - N1
    if colors2 == 1:
        prefixes = []  # single color: the suffix coloring is never evaluated
    elif bignum.exceeds(width, config.dense_budget()):
        raise OverflowBudget(f"product lemma needs all {bignum.render(width)} prefixes of length {bignum.render(N1)}")
    else:
        prefixes = list(itertools.product(range(m), repeat=N1))

    def c2(y):
        return tuple(c(x + y) for x in prefixes)

    W = inner.run(colors2, derived(c2, N2, m, colors2, "suffix")).witness
    tails = [substitute(W, z, act).symbols() for z in range(m)]

    def c1(x):
        return tuple(c(x + t) for t in tails)

    return _shelah(inner, n - 1, r_up, derived(c1, N1, m, r_up, "prefix")) + [W]


def _assemble(words, template, action, name):
    """Concatenate blocks: ``("sub", x)`` gives W_i(x), ``("shift", g)`` gives W_i^g."""
    parts = []
    for W, (kind, g) in zip(words, template):
        if kind == "sub":
            parts.append(substitute(W, g, action))
        else:
            S = shift(W, g, action.group)
            # coherence: S(x) must equal W(g x)
            x0 = 0
            if S.length <= 4096 and substitute(S, x0, action) != substitute(W, action.act[g][x0], action):
                raise WitnessError(f"{name}: shift/substitute incoherent in block")
            parts.append(S)
    return concat(parts)


# ---------------------------------------------------------------------------
# cyclic groups


class KrizBase(Extractor):
    """Degree p for C_p with the class {e, τ}, from one Ramsey step."""

    name = "kriz-base"

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be at least 2")
        self.p = p
        super().__init__(standard_action("cyclic", p), range(p), cyclic_relation(p, 1), p)

    def _plan(self, r, trace):
        N = t_function(self.p, r, symbolic=True)
        _record(trace, f"kriz-base p={self.p}", dense=not bignum.exceeds(N, config.dense_budget()), r=r, T=N)
        return N

    def _extract(self, r, oracle):
        N, p = oracle.length, self.p

        def colour(B):
            w = [0] * N
            for q, i in enumerate(B, 1):
                w[i - 1] = q
            return oracle(tuple(w))

        P = ramsey_step(N, p, colour, r)
        body = [0] * N
        for q, i in enumerate(P):
            body[i - 1] = var(q)
        return VariableWord(p, Run(body))


class KrizStep(Extractor):
    """From the class {e..τ^k} at degree p^k to {e..τ^(k+1)} at degree p^(k+1).

    ``blocks`` fixes the number of product-lemma blocks instead of
    T(p, r^(k+1)); with it the Ramsey step may fail on adversarial colorings,
    which is useful only for structural tests with stub inners.
    """

    name = "kriz-step"

    def __init__(self, p: int, k: int, inner: Extractor, blocks=None):
        if not 1 <= k <= p - 2:
            raise ValueError("k must satisfy 1 <= k <= p - 2")
        C = standard_action("cyclic", p)
        if inner.action != C or inner.variables != tuple(range(p)):
            raise ValueError("inner must act regularly on C_p with all variables")
        if inner.relation != cyclic_relation(p, k):
            raise ValueError(f"inner must witness the class {{e..τ^{k}}}")
        self.p, self.k, self.inner, self.blocks = p, k, inner, blocks
        super().__init__(C, range(p), cyclic_relation(p, k + 1), inner.degree * p)
        self.name = f"kriz-step k={k}"

    def n_blocks(self, r):
        if self.blocks is not None:
            return self.blocks
        return t_function(self.p, bignum.power(r, self.k + 1), symbolic=True)

    def _plan(self, r, trace):
        n = self.n_blocks(r)
        _record(trace, f"kriz-step p={self.p} k={self.k}", dense=not bignum.exceeds(n, config.dense_budget()),
                r=r, colors=bignum.power(r, self.k + 1), n=n)
        return shelah_length(self.inner, n, r, trace)

    def _extract(self, r, oracle):
        p, k = self.p, self.k
        n = self.n_blocks(r)
        words = _shelah(self.inner, n, r, oracle)
        subs = [[substitute(W, g, self.action).symbols() for g in range(p)] for W in words]

        def colour(B):
            pos = {i: q for q, i in enumerate(B, 1)}
            out = []
            for j in range(k + 1):
                w = ()
                for i in range(n):
                    q = pos.get(i + 1)
                    w += subs[i][(q + j) % p if q else 0]
                out.append(oracle(w))
            return tuple(out)

        P = ramsey_step(n, p, colour, bignum.power(r, k + 1), allow_short=self.blocks is not None)
        where = {i: q for q, i in enumerate(P, 1)}
        template = [("shift", where[i + 1] - 1) if i + 1 in where else ("sub", 0) for i in range(n)]
        return _assemble(words, template, self.action, self.name)


def cyclic_extractor(p: int) -> Extractor:
    """Degree p^(p-1) for C_p with the total relation (trivial for p = 1)."""
    if p == 1:
        return TrivialExtractor()
    ex = KrizBase(p)
    for k in range(1, p - 1):
        ex = KrizStep(p, k, ex)
    return ex


# ---------------------------------------------------------------------------
# from groups to actions


class SingleOrbitLift(Extractor):
    """Lift a group extractor to the orbit of y, via an embedding into the acting group."""

    name = "orbit-lift"

    def __init__(self, inner: Extractor, action: GroupAction, y: int, embedding: GroupHomomorphism | None = None):
        Hg = inner.group
        if inner.action != regular_action(Hg) or inner.variables != tuple(Hg.elements()):
            raise ValueError("inner must be a regular-action extractor over all of its group")
        if inner.relation.class_count != 1:
            raise ValueError("inner must witness the total relation")
        if embedding is None:
            if Hg != action.group:
                raise ValueError("an embedding is needed when groups differ")
            embedding = identity_hom(Hg)
        if embedding.src != Hg or embedding.dst != action.group or not embedding.is_injective:
            raise ValueError("embedding must be an injective homomorphism into the acting group")
        self.inner, self.y, self.embedding = inner, y, embedding
        iota = embedding.map
        orbit = sorted({action.act[iota[h]][y] for h in Hg.elements()})
        rel = EquivalenceRelation.from_classes(action.set_size, [orbit])
        super().__init__(action, [iota[h] for h in Hg.elements()], rel, inner.degree)
        self.orbit = orbit

    def _plan(self, r, trace):
        return self.inner.plan(r, trace)

    def _extract(self, r, oracle):
        act, iota, y = self.action.act, self.embedding.map, self.y
        points = [act[iota[h]][y] for h in self.inner.group.elements()]

        def cH(hs):
            return oracle(tuple(points[h] for h in hs))

        lifted = derived(cH, oracle.length, self.inner.action.set_size, r, "orbit-pullback")
        WH = self.inner.run(r, lifted).witness
        return relabel(WH, self.action.set_size, letters=points, variables=iota)


class OrbitStep(Extractor):
    """Add one more orbit to a multi-orbit lift; degree multiplies by the single lift's."""

    name = "orbit-step"

    def __init__(self, prev: Extractor, single: SingleOrbitLift):
        if prev.action != single.action or prev.variables != single.variables:
            raise ValueError("both parts must share the action and variables")
        classes = [c for c in prev.relation.classes() if len(c) > 1]
        if any(set(c) & set(single.orbit) for c in classes):
            raise ValueError("orbits must be disjoint")
        rel = EquivalenceRelation.from_classes(prev.action.set_size, classes + [single.orbit])
        self.prev, self.single = prev, single
        super().__init__(prev.action, prev.variables, rel, prev.degree * single.degree)

    def _plan(self, r, trace):
        n = self.prev.plan(r, trace)
        _record(trace, "orbit-step", dense=not bignum.exceeds(n, config.dense_budget()), r=r, n=n)
        return shelah_length(self.single, n, r, trace)

    def _extract(self, r, oracle):
        n = self.prev.plan(r)
        words = _shelah(self.single, n, r, oracle)
        m = self.action.set_size
        subs = [[substitute(W, x, self.action).symbols() for x in range(m)] for W in words]

        def cprime(xs):
            w = ()
            for i, x in enumerate(xs):
                w += subs[i][x]
            return oracle(w)

        Wp = self.prev.run(r, derived(cprime, n, m, r, "orbit-step")).witness
        return _assemble(words, _template(Wp), self.action, self.name)


def _template(W):
    out = []
    for s in W.symbols():
        out.append(("sub", s) if s >= 0 else ("shift", ~s))
    return out


def orbit_lift(inner: Extractor, action: GroupAction, embedding: GroupHomomorphism | None = None) -> Extractor:
    """Extractor for ``action`` whose classes are the orbits of the embedded group.

    Orbits are taken in order of their smallest point; the degree is
    ``inner.degree ** (number of orbits)``.
    """
    iota = embedding.map if embedding is not None else range(action.group.order)
    image = sorted(set(iota))
    rel = orbits_of(action, image)
    reps = [members[0] for members in rel.classes()]
    ex = SingleOrbitLift(inner, action, reps[0], embedding)
    for y in reps[1:]:
        ex = OrbitStep(ex, SingleOrbitLift(inner, action, y, embedding))
    return ex


# ---------------------------------------------------------------------------
# extensions


class ExtensionCompose(Extractor):
    """Combine a coset-relation extractor on G with a total extractor on G/H."""

    name = "extension"

    def __init__(self, inner: Extractor, outer: Extractor, projection: GroupHomomorphism, section):
        G = projection.src
        K = projection.dst
        if inner.action != regular_action(G):
            raise NotAValidSection("inner must act regularly on the source group")
        if outer.action != regular_action(K) or outer.variables != tuple(K.elements()) or outer.relation.class_count != 1:
            raise NotAValidSection("outer must be a total-relation extractor on the target group")
        if not projection.is_surjective:
            raise NotAValidSection("projection must be surjective")
        if tuple(projection.kernel()) != inner.variables:
            raise NotAValidSection("kernel of the projection differs from the inner variables")
        fibres = EquivalenceRelation(G.order, projection.map)
        if fibres != inner.relation:
            raise NotAValidSection("inner relation is not the coset relation of the kernel")
        section = tuple(section)
        if len(section) != K.order or any(projection.map[g] != k for k, g in enumerate(section)):
            raise NotAValidSection("section must pick a preimage of every quotient element")
        self.inner, self.outer, self.projection, self.section = inner, outer, projection, section
        kernel = projection.kernel()
        self.probe = kernel[1] if len(kernel) > 1 else None
        super().__init__(inner.action, G.elements(), EquivalenceRelation.total(G.order), inner.degree * outer.degree)

    def _plan(self, r, trace):
        n = self.outer.plan(r, trace)
        _record(trace, "extension", dense=not bignum.exceeds(n, config.dense_budget()), r=r, n=n)
        return shelah_length(self.inner, n, r, trace)

    def _extract(self, r, oracle):
        n = self.outer.plan(r)
        G = self.group
        words = _shelah(self.inner, n, r, oracle)
        subs = [[substitute(W, g, self.action).symbols() for g in range(G.order)] for W in words]
        sec, h = self.section, self.probe

        def cK(ks):
            w = ()
            for i, k in enumerate(ks):
                w += subs[i][sec[k]]
            col = oracle(w)
            if h is not None:
                alt = ()
                for i, k in enumerate(ks):
                    alt += subs[i][G.mul[h][sec[k]]]
                if oracle(alt) != col:
                    raise WellDefinednessViolation("quotient coloring depends on the chosen preimage")
            return col

        WK = self.outer.run(r, derived(cK, n, len(sec), r, "quotient")).witness
        template = [("sub", sec[s]) if s >= 0 else ("shift", sec[~s]) for s in WK.symbols()]
        return _assemble(words, template, self.action, self.name)


def extension_compose(inner, outer, projection, section) -> ExtensionCompose:
    return ExtensionCompose(inner, outer, projection, section)


# ---------------------------------------------------------------------------
# subgroups and quotients


class GroupTransfer(Extractor):
    """An extractor for a subgroup (via a transversal) or quotient (via projection)."""

    name = "transfer"

    def __init__(self, inner: Extractor, H, mode: str = "subgroup"):
        G = inner.group
        if inner.action != regular_action(G) or inner.variables != tuple(G.elements()) or inner.relation.class_count != 1:
            raise ValueError("inner must be a total-relation extractor on a regular action")
        H = check_subgroup(G, H)
        if mode == "subgroup":
            target, _ = subgroup(G, H)
            phi, _ = transversal_section(G, H)
            pos = {g: i for i, g in enumerate(H)}
            mp = [pos[phi[g]] for g in G.elements()]
        elif mode == "quotient":
            if not is_normal(G, H):
                raise NotNormal(f"{list(H)} is not normal")
            target, proj = quotient(G, H)
            mp = list(proj.map)
        else:
            raise ValueError("mode must be 'subgroup' or 'quotient'")
        self.inner, self.mode, self.map = inner, mode, mp
        super().__init__(regular_action(target), target.elements(), EquivalenceRelation.total(target.order), inner.degree)
        self.name = f"transfer-{mode}"

    def _plan(self, r, trace):
        return self.inner.plan(r, trace)

    def _extract(self, r, oracle):
        mp = self.map

        def lifted(gs):
            return oracle(tuple(mp[g] for g in gs))

        Wt = self.inner.run(r, derived(lifted, oracle.length, self.inner.action.set_size, r, "transfer")).witness
        return relabel(Wt, self.action.set_size, letters=mp, variables=mp)


def group_transfer(inner, H, mode="subgroup") -> GroupTransfer:
    return GroupTransfer(inner, H, mode)


# ---------------------------------------------------------------------------
# solvable groups


def solvable_extractor(G: FiniteGroup, series: SubnormalCyclicSeries | None = None) -> Extractor:
    """Fold a cyclic-factor series into one extractor of the HJ-degree."""
    series = series or subnormal_cyclic_series(G)
    if series.group != G:
        raise ValueError("series belongs to a different group")
    prev_grp, prev_emb = subgroup(G, series.subgroups[0])
    ex = TrivialExtractor(regular_action(prev_grp))
    for i, p in enumerate(series.factor_orders):
        lo, hi = series.subgroups[i], series.subgroups[i + 1]
        Gi, emb_i = subgroup(G, hi)
        pos = {g: j for j, g in enumerate(hi)}
        # ι: previous stage group -> Gi
        iota = GroupHomomorphism(prev_grp, Gi, [pos[prev_emb.map[h]] for h in prev_grp.elements()])
        lifted = orbit_lift(ex, regular_action(Gi), iota)
        t = pos[series.factor_generators[i]]
        low = {pos[g] for g in lo}
        proj = [None] * Gi.order
        section, tj = [], Gi.identity
        for j in range(p):
            section.append(tj)
            for h in low:
                proj[Gi.mul[tj][h]] = j
            tj = Gi.mul[t][tj]
        Cp = standard_group("cyclic", p)
        pi = GroupHomomorphism(Gi, Cp, proj)
        ex = ExtensionCompose(lifted, cyclic_extractor(p), pi, section)
        prev_grp, prev_emb = Gi, emb_i
    expected = hj_degree(series).value
    if ex.degree != expected:
        raise AssertionError(f"folded degree {ex.degree} != HJ-degree {expected}")
    # the fold ends on the subgroup G itself, re-indexed identically
    ex.name = "solvable"
    return ex


def solvable_extract(G, series, r, oracle) -> ExtractionResult:
    return solvable_extractor(G, series).run(r, oracle)


def action_extractor(G: FiniteGroup, action: GroupAction, series=None) -> Extractor:
    if action.group != G:
        raise ValueError("action is for a different group")
    ex = orbit_lift(solvable_extractor(G, series), action)
    ex.name = "action"
    return ex


def action_extract(G, action, series, r, oracle) -> ExtractionResult:
    return action_extractor(G, action, series).run(r, oracle)


def plan_length(extractor: Extractor, r) -> TowerPlan:
    """Full length trace; never touches a coloring."""
    return extractor.plan_report(r)
