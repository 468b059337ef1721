from concurrent.futures import ThreadPoolExecutor

import pytest

from uhjp.coloring import ColoringOracle, derived, from_spec, table_oracle
from uhjp.errors import AlphabetMismatch, IndexOutOfRange, InvalidWord, LengthMismatch
from uhjp.words import ConstantWord, Rep, Run, VariableWord, var


def test_table_lex_order():
    # words of length 2 over {0,1}: 00, 01, 10, 11
    c = table_oracle([0, 1, 1, 0], 2, 2, 2)
    assert [c(w) for w in [(0, 0), (0, 1), (1, 0), (1, 1)]] == [0, 1, 1, 0]
    with pytest.raises(LengthMismatch):
        table_oracle([0, 1, 1], 2, 2, 2)


def test_coordinate_histogram_constant():
    c = from_spec({"kind": "coordinate", "index": 2}, 3, 3, 2)
    assert c((0, 2, 1)) == 0 and c((0, 1, 1)) == 1
    h = from_spec({"kind": "histogram", "mod": 3}, 3, 3, 3)
    assert h((2, 2, 1)) == 2
    k = from_spec({"kind": "constant", "color": 1}, 3, 3, 2)
    assert k((1, 1, 1)) == 1
    with pytest.raises(IndexOutOfRange):
        from_spec({"kind": "coordinate", "index": 4}, 3, 3, 2)
    with pytest.raises(ValueError):
        from_spec({"kind": "histogram", "mod": 5}, 3, 3, 2)
    with pytest.raises(ValueError):
        from_spec({"kind": "bogus"}, 3, 3, 2)


def test_random_is_seeded_and_in_range():
    a = from_spec({"kind": "random", "seed": 7}, 4, 3, 5)
    b = from_spec({"kind": "random", "seed": 7}, 4, 3, 5)
    words = [(i % 3, i // 3 % 3, 0, 1) for i in range(9)]
    assert [a(w) for w in words] == [b(w) for w in words]
    assert all(0 <= a(w) < 5 for w in words)
    other = from_spec({"kind": "random", "seed": 8}, 4, 3, 5)
    assert [a(w) for w in words] != [other(w) for w in words]


def test_memo_and_counters():
    calls = []
    c = ColoringOracle(2, 2, 2, lambda w: calls.append(w) or 0)
    for _ in range(3):
        c((0, 1))
    assert c.queries == 3 and c.evaluations == 1 and len(calls) == 1


def test_range_and_shape_checks():
    with pytest.raises(IndexOutOfRange):
        ColoringOracle(1, 2, 2, lambda w: 5)((0,))
    c = from_spec({"kind": "constant"}, 2, 2, 2)
    with pytest.raises(LengthMismatch):
        c((0,))
    with pytest.raises(AlphabetMismatch):
        c(ConstantWord.of([0, 0], 3))
    with pytest.raises(InvalidWord):
        c(VariableWord(2, Run([var(0), 1])))


def test_long_word_uses_tree_path():
    n = 10**30
    W = ConstantWord(3, Rep(n, Run([1, 2])))
    c = from_spec({"kind": "coordinate", "index": 2}, 2 * n, 3, 3)
    assert c(W) == 2
    h = from_spec({"kind": "histogram"}, 2 * n, 3, 3)
    assert h(W) == (3 * n) % 3


def test_derived_single_color_never_evaluates():
    def boom(w):
        raise AssertionError("evaluated")

    d = derived(boom, 3, 2, 1)
    assert d((0, 1, 0)) == 0


def test_concurrent_reads_share_memo():
    c = from_spec({"kind": "random", "seed": 1}, 3, 2, 4)
    words = [((i >> 2) & 1, (i >> 1) & 1, i & 1) for i in range(8)] * 50
    with ThreadPoolExecutor(8) as pool:
        cols = list(pool.map(c, words))
    assert cols == [c(w) for w in words]
    assert c.evaluations == 8


def test_fingerprint_tracks_spec():
    a = from_spec({"kind": "random", "seed": 1}, 3, 2, 4)
    b = from_spec({"kind": "random", "seed": 1}, 3, 2, 4)
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != from_spec({"kind": "random", "seed": 2}, 3, 2, 4).fingerprint()
