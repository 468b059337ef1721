"""Constant and variable words stored as concatenation trees.

A symbol is an ``int``: letters are ``x >= 0`` and the variable ``v_h`` is
``~h`` (that is ``-h - 1``). Bodies are immutable trees of four node kinds:

* ``Run``  a literal tuple of symbols,
* ``Cat``  an ordered concatenation of child nodes (shared, never copied),
* ``Rep``  a child repeated ``count`` times,
* ``Map``  a child viewed through a symbol relabelling table.

Substitution, shifting and every alphabet change used by the extractors are
symbol relabellings, so they cost O(1) regardless of word length. Lengths
and symbol counts are exact Python integers cached on each node.
"""

from __future__ import annotations

import bisect
import itertools
from collections import Counter, namedtuple

from uhjp import config
from uhjp.errors import AlphabetMismatch, IndexOutOfRange, InvalidWord, LengthBudget


def var(h: int) -> int:
    return ~h


def is_var(s: int) -> bool:
    return s < 0


def var_index(s: int) -> int:
    return ~s


# ---------------------------------------------------------------------------
# nodes


class Node:
    __slots__ = ("length", "counts")


class Run(Node):
    __slots__ = ("symbols",)

    def __init__(self, symbols):
        self.symbols = tuple(symbols)
        self.length = len(self.symbols)
        self.counts = dict(Counter(self.symbols))


class Cat(Node):
    __slots__ = ("children", "offsets")

    def __init__(self, children):
        self.children = tuple(children)
        offsets, total = [], 0
        counts = Counter()
        for c in self.children:
            offsets.append(total)
            total += c.length
            counts.update(c.counts)
        self.offsets = offsets
        self.length = total
        self.counts = dict(counts)


class Rep(Node):
    __slots__ = ("count", "child")

    def __init__(self, count, child):
        if count < 1:
            raise ValueError("repeat count must be positive")
        self.count = count
        self.child = child
        self.length = count * child.length
        self.counts = {s: k * count for s, k in child.counts.items()}


class Map(Node):
    __slots__ = ("child", "table")

    def __init__(self, child, table):
        self.child = child
        self.table = table
        counts = Counter()
        for s, k in child.counts.items():
            counts[table.get(s, s)] += k
        self.length = child.length
        self.counts = dict(counts)


_EAGER_MAP_LIMIT = 64


def _compose(inner, outer):
    """Table for applying ``inner`` then ``outer``."""
    out = {k: outer.get(v, v) for k, v in inner.items()}
    for k, v in outer.items():
        out.setdefault(k, v)
    return {k: v for k, v in out.items() if k != v}


def mapped(node: Node, table: dict) -> Node:
    table = {k: v for k, v in table.items() if k != v and k in node.counts}
    if not table:
        return node
    if isinstance(node, Map):
        return mapped(node.child, _compose(node.table, table))
    if isinstance(node, Run) and node.length <= _EAGER_MAP_LIMIT:
        return Run(table.get(s, s) for s in node.symbols)
    return Map(node, table)


def _emit(node, table, out):
    if isinstance(node, Run):
        if table:
            get = table.get
            out.extend(get(s, s) for s in node.symbols)
        else:
            out.extend(node.symbols)
    elif isinstance(node, Cat):
        for c in node.children:
            _emit(c, table, out)
    elif isinstance(node, Rep):
        chunk = []
        _emit(node.child, table, chunk)
        out.extend(chunk * node.count)
    else:
        _emit(node.child, _compose(node.table, table) if table else node.table, out)


def _iter(node, table):
    """Lazy symbol stream (used for traversal audits on long words)."""
    if isinstance(node, Run):
        for s in node.symbols:
            yield table.get(s, s)
    elif isinstance(node, Cat):
        for c in node.children:
            yield from _iter(c, table)
    elif isinstance(node, Rep):
        for _ in range(node.count):
            yield from _iter(node.child, table)
    else:
        yield from _iter(node.child, _compose(node.table, table))


def _symbol_at(node, i):
    table = {}
    while True:
        if isinstance(node, Run):
            s = node.symbols[i]
            return table.get(s, s)
        if isinstance(node, Cat):
            k = bisect.bisect_right(node.offsets, i) - 1
            i -= node.offsets[k]
            node = node.children[k]
        elif isinstance(node, Rep):
            i %= node.child.length
            node = node.child
        else:
            table = _compose(node.table, table)
            node = node.child


def _to_items(node, table):
    """JSON body items; ``Rep`` nodes survive as repeat blocks."""
    if isinstance(node, Run):
        out = []
        for s in node.symbols:
            s = table.get(s, s)
            out.append({"var": var_index(s)} if is_var(s) else {"letter": s})
        return out
    if isinstance(node, Cat):
        return [item for c in node.children for item in _to_items(c, table)]
    if isinstance(node, Rep):
        return [{"repeat": node.count, "of": _to_items(node.child, table)}]
    return _to_items(node.child, _compose(node.table, table))


# ---------------------------------------------------------------------------
# words


WordStats = namedtuple("WordStats", "length degree uniform var_counts")


class Word:
    """Common base; use :class:`ConstantWord` or :class:`VariableWord`."""

    __slots__ = ("alphabet_size", "body")

    def __init__(self, alphabet_size, body):
        self.alphabet_size = int(alphabet_size)
        self.body = body
        bad = [s for s in body.counts if s >= self.alphabet_size]
        if bad:
            raise IndexOutOfRange(f"letter {bad[0]} outside alphabet of size {self.alphabet_size}")

    @property
    def length(self) -> int:
        return self.body.length

    @property
    def letter_counts(self):
        return {s: k for s, k in self.body.counts.items() if s >= 0}

    def symbols(self, budget=None) -> tuple:
        """Dense tuple of symbols, refusing beyond the dense budget."""
        limit = config.dense_budget() if budget is None else budget
        if self.length > limit:
            raise LengthBudget(f"word of length {self.length} exceeds dense budget {limit}")
        out = []
        _emit(self.body, {}, out)
        return tuple(out)

    def iter_symbols(self):
        return _iter(self.body, {})

    def symbol_at(self, i: int) -> int:
        """Symbol at 0-based position ``i``."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return _symbol_at(self.body, i)

    def __eq__(self, other):
        if type(self) is not type(other) or self.alphabet_size != other.alphabet_size:
            return False
        if self.length != other.length or self.body.counts != other.body.counts:
            return False
        if self.body is other.body:
            return True
        return self.symbols() == other.symbols()

    def __hash__(self):
        return hash((type(self).__name__, self.alphabet_size, self.length))

    def __repr__(self):
        return f"{type(self).__name__}({format_word(self, limit=40)})"

    def to_json(self):
        vars_ = list(getattr(self, "var_group", ()))
        return {"alphabet": self.alphabet_size, "vars": vars_, "body": _to_items(self.body, {})}


class ConstantWord(Word):
    __slots__ = ()

    def __init__(self, alphabet_size, body):
        super().__init__(alphabet_size, body)
        if any(is_var(s) for s in body.counts):
            raise InvalidWord("constant word contains a variable")

    @classmethod
    def of(cls, letters, alphabet_size):
        return cls(alphabet_size, Run(int(x) for x in letters))


class VariableWord(Word):
    """An H-variable word: every ``v_h`` with h in ``var_group`` occurs."""

    __slots__ = ("var_group",)

    def __init__(self, alphabet_size, body, var_group=None):
        super().__init__(alphabet_size, body)
        present = sorted(var_index(s) for s in body.counts if is_var(s))
        if var_group is None:
            var_group = present
        self.var_group = tuple(sorted(set(var_group)))
        if not self.var_group:
            raise InvalidWord("a variable word needs at least one variable")
        if list(self.var_group) != present:
            missing = sorted(set(self.var_group) - set(present))
            extra = sorted(set(present) - set(self.var_group))
            raise InvalidWord(f"variables missing {missing}, undeclared {extra}")

    @property
    def var_counts(self):
        return {h: self.body.counts[var(h)] for h in self.var_group}

    @property
    def degree(self) -> int:
        return sum(self.var_counts.values())

    @property
    def is_uniform(self) -> bool:
        return len(set(self.var_counts.values())) == 1

    def __eq__(self, other):
        return super().__eq__(other) and self.var_group == other.var_group

    __hash__ = Word.__hash__


def _wrap(alphabet_size, body):
    if any(is_var(s) for s in body.counts):
        return VariableWord(alphabet_size, body)
    return ConstantWord(alphabet_size, body)


def make_word(items, alphabet_size):
    """Build a word from ints (letters) and ``"v<h>"`` strings (variables)."""
    syms = []
    for it in items:
        if isinstance(it, str):
            if not it.startswith("v"):
                raise InvalidWord(f"bad symbol {it!r}")
            syms.append(var(int(it[1:])))
        else:
            syms.append(int(it))
    return _wrap(alphabet_size, Run(syms))


def from_symbols(symbols, alphabet_size):
    return _wrap(alphabet_size, Run(symbols))


# ---------------------------------------------------------------------------
# operations


def substitute(W: Word, x: int, action) -> ConstantWord:
    """W(x): each ``v_h`` becomes the point ``h x``; letters stay."""
    if W.alphabet_size != action.set_size:
        raise AlphabetMismatch(f"word alphabet {W.alphabet_size} vs action on {action.set_size} points")
    if not 0 <= x < action.set_size:
        raise IndexOutOfRange(f"point {x} outside [0, {action.set_size})")
    hs = getattr(W, "var_group", ())
    if hs and hs[-1] >= action.group.order:
        raise IndexOutOfRange("variable index outside the acting group")
    table = {var(h): action.act[h][x] for h in hs}
    return ConstantWord(W.alphabet_size, mapped(W.body, table))


def shift(W: VariableWord, tau: int, group) -> VariableWord:
    """W^τ: each ``v_h`` becomes ``v_{hτ}``; letters stay."""
    if not 0 <= tau < group.order or W.var_group[-1] >= group.order:
        raise IndexOutOfRange("shift element or variable outside the group")
    table = {var(h): var(group.mul[h][tau]) for h in W.var_group}
    return VariableWord(W.alphabet_size, mapped(W.body, table))


def relabel(W: Word, alphabet_size, letters=None, variables=None) -> Word:
    """Rewrite letters through ``letters`` and variables through ``variables``.

    ``variables`` maps a variable index either to a new variable index or,
    via ``("letter", x)``, to a letter.
    """
    table = {}
    if letters is not None:
        for x in W.letter_counts:
            table[x] = letters[x]
    if variables is not None:
        for h in getattr(W, "var_group", ()):
            tgt = variables[h]
            if isinstance(tgt, tuple):
                table[var(h)] = tgt[1]
            else:
                table[var(h)] = var(tgt)
    return _wrap(alphabet_size, mapped(W.body, table))


def concat(parts):
    """Concatenate words sharing an alphabet; bodies are reused, not copied."""
    parts = list(parts)
    if not parts:
        raise InvalidWord("cannot concatenate an empty list")
    if len(parts) == 1:
        return parts[0]
    k = parts[0].alphabet_size
    if any(p.alphabet_size != k for p in parts):
        raise AlphabetMismatch("parts have different alphabets")
    return _wrap(k, Cat(p.body for p in parts))


def repeat(W: Word, count: int) -> Word:
    if count == 1:
        return W
    return _wrap(W.alphabet_size, Rep(count, W.body))


def analyze(W: Word) -> WordStats:
    counts = dict(getattr(W, "var_counts", {}))
    degree = sum(counts.values())
    uniform = bool(counts) and len(set(counts.values())) == 1
    return WordStats(W.length, degree, uniform, counts)


def traverse_counts(W: Word) -> dict:
    """Symbol histogram by walking every position (cache audit)."""
    return dict(Counter(W.iter_symbols()))


def format_word(W: Word, letter_labels=None, var_labels=None, limit=None) -> str:
    def show(s):
        if is_var(s):
            h = var_index(s)
            return "v_" + (var_labels[h] if var_labels else str(h))
        return letter_labels[s] if letter_labels else str(s)

    n = W.length if limit is None else min(W.length, limit)
    syms = [show(s) for s in itertools.islice(W.iter_symbols(), n)]
    tail = f", ... ({W.length} symbols)" if n < W.length else ""
    return "(" + ", ".join(syms) + tail + ")"


def _items_to_node(items, alphabet_size):
    run, nodes = [], []

    def flush():
        if run:
            nodes.append(Run(run))
            run.clear()

    for it in items:
        if "letter" in it:
            run.append(int(it["letter"]))
        elif "var" in it:
            run.append(var(int(it["var"])))
        elif "repeat" in it:
            flush()
            nodes.append(Rep(int(it["repeat"]), _items_to_node(it["of"], alphabet_size)))
        else:
            raise InvalidWord(f"unrecognised body item {it!r}")
    flush()
    if not nodes:
        raise InvalidWord("empty word body")
    return nodes[0] if len(nodes) == 1 else Cat(nodes)


def word_from_json(doc) -> Word:
    k = int(doc["alphabet"])
    body = _items_to_node(doc["body"], k)
    if doc.get("vars"):
        return VariableWord(k, body, doc["vars"])
    return _wrap(k, body)
