"""Lazy, memoized colorings of X^N.

A :class:`ColoringOracle` answers color queries for constant words of a fixed
length. Base oracles come from JSON-style specs; derived oracles wrap a
Python function built from another oracle and are what the extraction
combinators pass to their inner extractors.
"""

from __future__ import annotations

import hashlib
import threading

from uhjp import bignum, config
from uhjp.errors import AlphabetMismatch, IndexOutOfRange, InvalidWord, LengthMismatch
from uhjp.words import ConstantWord, Word

KINDS = ("table", "coordinate", "histogram", "random", "constant")


class ColoringOracle:
    """Total map from length-N words over ``range(alphabet_size)`` to colors.

    ``fn`` receives a dense tuple of letters. ``tree_fn``, if given, receives
    a :class:`ConstantWord` and is used when a word is too long to
    materialize. ``colors`` may be a :class:`~uhjp.bignum.Huge` for derived
    colorings whose colors are whole evaluation vectors; in that case colors
    are arbitrary hashables and no range check is made.
    """

    def __init__(self, length, alphabet_size, colors, fn, *, tree_fn=None, spec=None, check_range=True):
        self.length = length
        self.alphabet_size = int(alphabet_size)
        self.colors = colors
        self._fn = fn
        self._tree_fn = tree_fn
        self.spec = spec if spec is not None else {"kind": "derived"}
        self._check = check_range and isinstance(colors, int)
        self._memo = {}
        self._lock = threading.Lock()
        self.queries = 0
        self.evaluations = 0

    def __repr__(self):
        return f"ColoringOracle(N={bignum.render(self.length)}, |X|={self.alphabet_size}, r={bignum.render(self.colors)}, {self.spec})"

    def fingerprint(self) -> str:
        return bignum.render(self.length) + "|" + str(self.alphabet_size) + "|" + repr(sorted(self.spec.items()))

    def _key(self, word):
        if isinstance(word, Word):
            if word.alphabet_size != self.alphabet_size:
                raise AlphabetMismatch(f"word over {word.alphabet_size} letters, oracle over {self.alphabet_size}")
            if word.length != self.length:
                raise LengthMismatch(f"word length {word.length} != oracle length {bignum.render(self.length)}")
            if getattr(word, "var_group", ()):
                raise InvalidWord("colorings apply to constant words only")
            if word.length > config.dense_budget() and self._tree_fn is not None:
                return None
            return word.symbols()
        key = tuple(word)
        if len(key) != self.length:
            raise LengthMismatch(f"word length {len(key)} != oracle length {bignum.render(self.length)}")
        return key

    def __call__(self, word):
        key = self._key(word)
        if key is None:
            with self._lock:
                self.queries += 1
                self.evaluations += 1
            return self._tree_fn(word)
        with self._lock:
            self.queries += 1
            if key in self._memo:
                return self._memo[key]
        col = self._fn(key)
        if self._check and not (isinstance(col, int) and 0 <= col < self.colors):
            raise IndexOutOfRange(f"color {col!r} outside [0, {self.colors})")
        with self._lock:
            self._memo[key] = col
            self.evaluations += 1
        return col


def derived(fn, length, alphabet_size, colors, name="derived"):
    """Wrap ``fn`` as an oracle; with a single color it never evaluates ``fn``."""
    if colors == 1:
        return ColoringOracle(length, alphabet_size, 1, lambda w: 0, spec={"kind": "derived", "name": name, "constant": True})
    return ColoringOracle(length, alphabet_size, colors, fn, spec={"kind": "derived", "name": name}, check_range=False)


def _lex_index(word, m):
    idx = 0
    for s in word:
        idx = idx * m + s
    return idx


def _random_color(seed, word, r):
    h = hashlib.blake2b(digest_size=16)
    h.update(str(int(seed)).encode())
    h.update(b":")
    h.update(",".join(map(str, word)).encode())
    return int.from_bytes(h.digest(), "big") % r


def from_spec(spec: dict, length: int, alphabet_size: int, colors: int) -> ColoringOracle:
    """Build a base oracle from a coloring spec dict.

    Colors are ``0 .. colors-1``. ``coordinate`` colors a word by its
    ``index``-th letter (1-based) reduced mod ``colors``; ``histogram``
    colors by the sum of letters mod ``mod``.
    """
    kind = spec.get("kind")
    if kind not in KINDS:
        raise ValueError(f"unknown coloring kind {kind!r}; expected one of {KINDS}")
    if colors < 1:
        raise ValueError("need at least one color")
    m, N = alphabet_size, length
    tree_fn = None
    if kind == "table":
        table = [int(c) for c in spec["colors"]]
        if bignum.exceeds(bignum.power(m, N), len(table)) or len(table) != m**N:
            raise LengthMismatch(f"table has {len(table)} entries, expected {m}^{N}")

        def fn(w):
            return table[_lex_index(w, m)]
    elif kind == "coordinate":
        i = int(spec["index"])
        if not 1 <= i <= N:
            raise IndexOutOfRange(f"coordinate {i} outside [1, {N}]")

        def fn(w):
            return w[i - 1] % colors

        def tree_fn(W):
            return W.symbol_at(i - 1) % colors
    elif kind == "histogram":
        mod = int(spec.get("mod", colors))
        if not 1 <= mod <= colors:
            raise ValueError(f"histogram mod {mod} must lie in [1, {colors}]")

        def fn(w):
            return sum(w) % mod

        def tree_fn(W):
            return sum(x * k for x, k in W.letter_counts.items()) % mod
    elif kind == "random":
        seed = int(spec.get("seed", 0))

        def fn(w):
            return _random_color(seed, w, colors)
    else:
        c = int(spec.get("color", 0))

        def fn(w):
            return c

        def tree_fn(W):
            return c
    return ColoringOracle(N, m, colors, fn, tree_fn=tree_fn, spec=dict(spec))


def table_oracle(table, length, alphabet_size, colors) -> ColoringOracle:
    return from_spec({"kind": "table", "colors": list(table)}, length, alphabet_size, colors)


def as_word(letters, alphabet_size) -> ConstantWord:
    return ConstantWord.of(letters, alphabet_size)
