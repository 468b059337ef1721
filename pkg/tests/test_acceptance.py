"""Acceptance suite: one test (or group of tests) per criterion.

Run with ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary, or ``python tests/test_acceptance.py``.
"""

import io
import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from uhjp import bignum
from uhjp.cli import run as cli_run
from uhjp.coloring import table_oracle
from uhjp.errors import OverflowBudget
from uhjp.euclid import (
    cor17_embed,
    dilation_check,
    equilateral_triangle,
    float_triangle,
    scaled_coloring,
    segment,
    symmetry_group,
)
from uhjp.extract import (
    ExtensionCompose,
    GroupTransfer,
    KrizBase,
    KrizStep,
    StubExtractor,
    cyclic_extractor,
    cyclic_relation,
    orbit_lift,
    plan_length,
    shelah_length,
    shelah_sequence,
    solvable_extractor,
)
from uhjp.groups import (
    EquivalenceRelation,
    GroupAction,
    GroupHomomorphism,
    all_subnormal_cyclic_series,
    check_subgroup,
    direct_product,
    regular_action,
    series_from_chain,
    standard_action,
    standard_group,
    subgroup,
    subnormal_cyclic_series,
    transversal_section,
)
from uhjp.hjdegree import hj_degree
from uhjp.oracle import minimal_N_search, uhjp_check, verify_witness
from uhjp.ramsey import ramsey_step, t_function
from uhjp.words import Run, VariableWord, analyze, make_word, shift, substitute, var

criterion = pytest.mark.criterion


# ---------------------------------------------------------------------------
# 1


@criterion(1, "HJ-degree arithmetic")
def test_hj_degree_arithmetic():
    t0 = time.perf_counter()
    S3, S4, C6 = (standard_group(k, n) for k, n in (("symmetric", 3), ("symmetric", 4), ("cyclic", 6)))
    assert hj_degree(subnormal_cyclic_series(S3)).value == 162
    assert hj_degree(subnormal_cyclic_series(S4)).value == 2**19 * 3**4 == 42467328
    assert {hj_degree(s).value for s in all_subnormal_cyclic_series(C6)} == {7776, 72, 162}
    for n in range(1, 13):
        Cn = standard_group("cyclic", n)
        one_step = series_from_chain(Cn, [[0], list(range(n))]) if n > 1 else None
        value = hj_degree(one_step).value if one_step else hj_degree([]).value
        assert value == n ** (n - 1)
    assert time.perf_counter() - t0 < 1.0


# ---------------------------------------------------------------------------
# 2


@criterion(2, "substitution fidelity")
def test_substitution_fidelity():
    S3 = standard_action("symmetric", 3)
    tau, tau2 = 3, 4  # (1 2 3) and (1 3 2)
    assert S3.group.labels[tau] == "(1 2 3)" and S3.group.labels[tau2] == "(1 3 2)"
    # points 1, 2, 3 are indices 0, 1, 2
    W = VariableWord(3, Run([var(0), 0, 1, var(tau2), var(tau)]))
    got = {x + 1: tuple(s + 1 for s in substitute(W, x, S3).symbols()) for x in range(3)}
    assert got == {1: (1, 1, 2, 3, 2), 2: (2, 1, 2, 1, 3), 3: (3, 1, 2, 2, 1)}
    st = analyze(W)
    assert st.degree == 3 and st.uniform


# ---------------------------------------------------------------------------
# 3


def _small_actions():
    acts = [standard_action("cyclic", n) for n in range(1, 7)]
    acts.append(standard_action("symmetric", 3))
    acts.append(regular_action(standard_group("symmetric", 3)))
    acts.append(regular_action(direct_product(standard_group("cyclic", 2), standard_group("cyclic", 2))))
    return acts


@criterion(3, "shift identity suite")
def test_shift_identity_suite():
    rng = random.Random(0)
    acts = _small_actions()
    failures = 0
    for _ in range(10_000):
        A = rng.choice(acts)
        G, m = A.group, A.set_size
        n = rng.randint(1, 12)
        syms = [var(rng.randrange(G.order)) if rng.random() < 0.5 else rng.randrange(m) for _ in range(n)]
        syms[rng.randrange(n)] = var(rng.randrange(G.order))
        W = VariableWord(m, Run(syms))
        tau, x = rng.randrange(G.order), rng.randrange(m)
        if substitute(shift(W, tau, G), x, A) != substitute(W, A.act[tau][x], A):
            failures += 1
    assert failures == 0


# ---------------------------------------------------------------------------
# 4


@criterion(4, "Ramsey step exhaustive")
def test_ramsey_step_exhaustive():
    t0 = time.perf_counter()
    assert t_function(3, 2) == 5
    pairs = list(itertools.combinations(range(1, 6), 2))
    assert len(pairs) == 10
    count = 0
    for bits in itertools.product(range(2), repeat=10):
        col = dict(zip(pairs, bits))
        P = ramsey_step(5, 3, lambda B: col[B], 2)
        assert len(P) == 3 and list(P) == sorted(set(P)) and 1 <= P[0] and P[-1] <= 5
        assert col[P[1:]] == col[P[:-1]]
        count += 1
    assert count == 1024
    assert time.perf_counter() - t0 < 5.0


# ---------------------------------------------------------------------------
# 5


@criterion(5, "end-to-end extraction for C_2")
def test_end_to_end_c2():
    t0 = time.perf_counter()
    C2 = standard_group("cyclic", 2)
    ex = solvable_extractor(C2)
    assert ex.degree == 2 and ex.plan(2) == 3 and ex.plan(3) == 4
    total = EquivalenceRelation.total(2)
    action = regular_action(C2)
    for table in itertools.product(range(2), repeat=8):
        oracle = table_oracle(table, 3, 2, 2)
        res = ex.run(2, oracle)
        assert verify_witness(res.witness, table_oracle(table, 3, 2, 2), total, action).ok
    for seed in range(1000):
        res = ex.run(3, ex.oracle(3, {"kind": "random", "seed": seed}))
        check = ex.oracle(3, {"kind": "random", "seed": seed})
        assert verify_witness(res.witness, check, total, action).ok
        assert analyze(res.witness).degree == 2 and res.witness.length == 4
    assert time.perf_counter() - t0 < 30.0


# ---------------------------------------------------------------------------
# 6


@criterion(6, "oracle ground truth")
def test_oracle_ground_truth():
    t0 = time.perf_counter()
    C2 = standard_group("cyclic", 2)
    rep2 = uhjp_check(C2, None, 2, 2, 2)
    assert rep2.verdict == "fails" and rep2.reverified
    ce = rep2.counterexample
    # domain order: (e,e), (e,g), (g,e), (g,g)
    assert ce[1] != ce[2]
    rep3 = uhjp_check(C2, None, 2, 2, 3)
    assert rep3.verdict == "holds" and rep3.colorings_checked == 256
    assert minimal_N_search(C2, None, 2, 2, 4).value == 3
    assert time.perf_counter() - t0 < 10.0


# ---------------------------------------------------------------------------
# 7


@criterion(7, "cyclic step for C_3 at k=1, and the full plan")
def test_c3_first_step():
    t0 = time.perf_counter()
    kb = KrizBase(3)
    assert kb.plan(2) == 5 == t_function(3, 2)
    E1 = cyclic_relation(3, 1)
    C3 = kb.action
    for seed in range(1000):
        res = kb.run(2, kb.oracle(2, {"kind": "random", "seed": seed}))
        check = kb.oracle(2, {"kind": "random", "seed": seed})
        rep = verify_witness(res.witness, check, E1, C3)
        assert rep.ok and any(c.members == (0, 1) for c in rep.classes)
        assert analyze(res.witness).degree == 3 and analyze(res.witness).uniform
    assert time.perf_counter() - t0 < 60.0


@criterion(7, "cyclic step for C_3 at k=1, and the full plan")
def test_c3_full_plan_reported_not_run():
    ex = cyclic_extractor(3)
    assert ex.degree == 9
    plan = plan_length(ex, 2)
    assert not plan.feasible
    assert any(s.values.get("n") == 17 for s in plan.stages)
    assert bignum.is_huge(plan.length)
    assert not plan.stages[-1].dense
    with pytest.raises(OverflowBudget):
        ex.oracle(2, {"kind": "constant", "color": 0})


# ---------------------------------------------------------------------------
# 8

STUB_SPECS = [{"kind": "constant", "color": 1}, {"kind": "histogram"}]


def _law_check(ex, expected_degree, r, spec):
    res = ex.run(r, ex.oracle(r, spec))
    st = analyze(res.witness)
    assert ex.degree == expected_degree
    assert st.degree == expected_degree and st.uniform
    assert st.length == ex.plan(r)
    return res


@criterion(8, "degree-law structural suite")
@pytest.mark.parametrize("spec", STUB_SPECS)
def test_degree_law_kriz_step(spec):
    C3 = standard_action("cyclic", 3)
    inner = StubExtractor(C3, range(3), cyclic_relation(3, 1), 3)
    ex = KrizStep(3, 1, inner, blocks=3)
    res = _law_check(ex, 3 * inner.degree, 3, spec)
    # blocks shifted by e, τ, τ^2 in order when P = {1, 2, 3}
    assert [s for s in res.witness.symbols()] == [var(h) for h in (0, 1, 2, 1, 2, 0, 2, 0, 1)]


@criterion(8, "degree-law structural suite")
def test_degree_law_shelah_sequence():
    point = GroupAction(standard_group("cyclic", 1), 1, [[0]])
    inner = StubExtractor(point, [0], EquivalenceRelation.total(1), 1, 1)
    for n in range(1, 6):
        assert shelah_length(inner, n, 2) == n
        oracle = from_len(n, 1, 2)
        words = shelah_sequence(inner, n, 2, oracle)
        assert len(words) == n and all(w.symbols() == (var(0),) for w in words)
    C2 = standard_action("cyclic", 2)
    inner2 = StubExtractor(C2, range(2), EquivalenceRelation.total(2), 2)
    words = shelah_sequence(inner2, 3, 2, from_len(6, 2, 2))
    assert sum(w.length for w in words) == 6
    assert all(analyze(w).degree == 2 and analyze(w).uniform for w in words)


def from_len(N, m, r):
    from uhjp.coloring import from_spec

    return from_spec({"kind": "histogram"}, N, m, r)


@criterion(8, "degree-law structural suite")
@pytest.mark.parametrize("spec", STUB_SPECS)
def test_degree_law_orbit_lift(spec):
    C2 = standard_group("cyclic", 2)
    two_pairs = GroupAction(C2, 4, [[0, 1, 2, 3], [1, 0, 3, 2]])
    inner = StubExtractor(regular_action(C2), range(2), EquivalenceRelation.total(2), 2)
    ex = orbit_lift(inner, two_pairs)
    _law_check(ex, inner.degree**2, 2, spec)
    single = orbit_lift(inner, regular_action(C2))
    _law_check(single, inner.degree, 2, spec)


@criterion(8, "degree-law structural suite")
@pytest.mark.parametrize("spec", STUB_SPECS)
def test_degree_law_extension_compose(spec):
    C4, C2 = standard_group("cyclic", 4), standard_group("cyclic", 2)
    H, emb = subgroup(C4, [0, 2])
    stub_h = StubExtractor(regular_action(H), range(2), EquivalenceRelation.total(2), 2)
    inner = orbit_lift(stub_h, regular_action(C4), emb)
    outer = StubExtractor(regular_action(C2), range(2), EquivalenceRelation.total(2), 2)
    pi = GroupHomomorphism(C4, C2, [0, 1, 0, 1])
    ex = ExtensionCompose(inner, outer, pi, [0, 1])
    assert inner.degree == 4
    _law_check(ex, inner.degree * outer.degree, 2, spec)


@criterion(8, "degree-law structural suite")
@pytest.mark.parametrize("spec", STUB_SPECS)
def test_degree_law_group_transfer(spec):
    S3 = standard_group("symmetric", 3)
    inner = StubExtractor(regular_action(S3), range(6), EquivalenceRelation.total(6), 162, 170)
    for H, mode in (([0, 3, 4], "subgroup"), ([0, 3, 4], "quotient"), (list(range(6)), "subgroup")):
        ex = GroupTransfer(inner, H, mode)
        _law_check(ex, inner.degree, 2, spec)


# ---------------------------------------------------------------------------
# 9


@criterion(9, "dilation identity")
def test_dilation_identity():
    X = segment()
    _, a = symmetry_group(X)
    rep = dilation_check(make_word(["v0", "v1", 0], 2), X, a)
    assert rep.ok and rep.degree == 2 and rep.max_residual == 0 and isinstance(rep.max_residual, Fraction)

    T = equilateral_triangle()
    G, a = symmetry_group(T)
    rot = [g for g in G.elements() if G.element_order(g) != 2]
    W = make_word([f"v{rot[0]}", 1, f"v{rot[1]}", 2, f"v{rot[2]}"], 3)
    rep = dilation_check(W, T, a)
    assert rep.ok and rep.degree == 3 and rep.max_residual == 0

    F = float_triangle()
    Gf, af = symmetry_group(F)
    assert Gf.order == 6
    rotf = [g for g in Gf.elements() if Gf.element_order(g) != 2]
    Wf = make_word([f"v{rotf[0]}", 0, f"v{rotf[1]}", f"v{rotf[2]}"], 3)
    rep = dilation_check(Wf, F, af)
    assert rep.ok and rep.max_residual <= 1e-9


# ---------------------------------------------------------------------------
# 10


@criterion(10, "scaled isometric embedding of the segment")
def test_segment_embedding():
    t0 = time.perf_counter()
    X = segment()
    for seed in range(100):
        cert = cor17_embed(X, 2, scaled_coloring({"kind": "random", "seed": seed}, 2))
        assert cert.length == 3 and cert.degree == 2 and cert.orbits == 1
        assert cert.lam_sq == Fraction(1, 2) and cert.lam_sq * cert.hj_degree**cert.orbits == 1
        assert cert.isometric and cert.monochromatic
    assert time.perf_counter() - t0 < 30.0


# ---------------------------------------------------------------------------
# 11

TRANSVERSAL_CASES = [("symmetric", 3, [0, 3, 4]), ("cyclic", 4, [0, 2]), ("symmetric", 4, None)]


@criterion(11, "transversal properties")
@pytest.mark.parametrize("kind,n,H", TRANSVERSAL_CASES)
def test_transversal_properties(kind, n, H):
    t0 = time.perf_counter()
    G = standard_group(kind, n)
    if H is None:  # A_4: the even permutations
        from uhjp.groups import commutator_subgroup

        H = sorted(commutator_subgroup(G))
        assert len(H) == 12
    H = check_subgroup(G, H)
    phi, reps = transversal_section(G, H)
    assert set(phi) == set(H)
    assert all(phi[h] == h for h in H)
    for g in G.elements():
        for h in H:
            assert phi[G.mul[g][h]] == G.mul[phi[g]][h]
    index = G.order // len(H)
    assert len(reps) == index
    assert all(sum(1 for g in G.elements() if phi[g] == h) == index for h in H)
    assert time.perf_counter() - t0 < 1.0


# ---------------------------------------------------------------------------
# 12

ACCEPTANCE_COMMANDS = [
    ["hj-degree", "--group", '{"kind":"symmetric","n":3}'],
    ["hj-degree", "--group", '{"kind":"symmetric","n":4}'],
    ["hj-degree", "--group", '{"kind":"cyclic","n":6}', "--all"],
    ["extract", "--group", '{"kind":"cyclic","n":2}', "--colors", "2", "--coloring", '{"kind":"coordinate","index":1}'],
    ["extract", "--group", '{"kind":"cyclic","n":2}', "--colors", "3", "--coloring", '{"kind":"random"}', "--seed", "7"],
    ["extract", "--group", '{"kind":"cyclic","n":3}', "--extractor", "kriz-base", "--colors", "2", "--coloring", '{"kind":"random"}', "--seed", "3"],
    ["verify", "--group", '{"kind":"cyclic","n":2}', "--colors", "2", "--word",
     '{"alphabet":2,"vars":[0,1],"body":[{"letter":0},{"var":0},{"var":1}]}', "--coloring", '{"kind":"coordinate","index":1}'],
    ["search-min-n", "--group", '{"kind":"cyclic","n":2}', "--degree", "2", "--colors", "2", "--max", "4"],
    ["plan", "--group", '{"kind":"cyclic","n":3}', "--colors", "2"],
    ["euclid", "--points", '{"dim":1,"points":[[0],[1]]}', "--mode", "embed", "--colors", "2", "--seed", "5"],
    ["euclid", "--points", '{"dim":3,"points":[[1,0,0],[0,1,0],[0,0,1]]}', "--mode", "symmetry"],
]


def _cli_bytes(argv):
    buf = io.StringIO()
    code = cli_run(argv, out=buf)
    return code, buf.getvalue().encode()


@criterion(12, "determinism")
@pytest.mark.parametrize("argv", ACCEPTANCE_COMMANDS, ids=lambda a: a[0] + ":" + "-".join(x[:12] for x in a[1:3]))
def test_determinism_in_process(argv):
    a, b = _cli_bytes(argv), _cli_bytes(argv)
    assert a == b
    assert a[0] == 0


@criterion(12, "determinism")
def test_determinism_across_processes():
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        chunk = []
        for argv in ACCEPTANCE_COMMANDS:
            p = subprocess.run([sys.executable, "-m", "uhjp.cli", *argv], capture_output=True, env=env, check=False)
            chunk.append((p.returncode, p.stdout))
        outs.append(chunk)
    assert outs[0] == outs[1]
    assert all(code == 0 for code, _ in outs[0])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
