"""Finite point sets in Euclidean space.

Symmetry groups by permutation search, the dilation identity
``|W(x) - W(x')|^2 = d |x - x'|^2`` for uniform words, and the scaled
isometric embedding of X into a power of itself that inherits a
monochromatic orbit structure from an extracted word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from uhjp import bignum, config
from uhjp.coloring import ColoringOracle, _random_color
from uhjp.errors import DegenerateSet, InvalidDegree, SizeLimitExceeded
from uhjp.extract import action_extractor
from uhjp.groups import (
    GroupAction,
    check_subgroup,
    permutation_group,
    restrict_action,
    subgroup,
    subnormal_cyclic_series,
)
from uhjp.hjdegree import hj_degree
from uhjp.words import VariableWord, substitute

MAX_POINTS = 10
DEFAULT_TOLERANCE = 1e-9


def _num(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    return float(v)


@dataclass(frozen=True)
class PointSet:
    """Distinct points, exact when every coordinate is rational."""

    points: tuple
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        pts = tuple(tuple(_num(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise DegenerateSet("empty point set")
        if len({len(p) for p in pts}) != 1:
            raise DegenerateSet("points have different dimensions")
        for i in range(len(pts)):
            for j in range(i):
                if self.equal(self.sqdist(i, j), 0):
                    raise DegenerateSet(f"points {j} and {i} coincide")

    @classmethod
    def parse(cls, doc):
        pts = doc["points"]
        dim = doc.get("dim")
        if dim is not None and any(len(p) != dim for p in pts):
            raise DegenerateSet(f"expected {dim} coordinates per point")
        return cls(tuple(tuple(p) for p in pts), float(doc.get("tolerance", DEFAULT_TOLERANCE)))

    @property
    def exact(self):
        return all(isinstance(c, Fraction) for p in self.points for c in p)

    @property
    def dim(self):
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def sqdist(self, i, j):
        return sum((a - b) ** 2 for a, b in zip(self.points[i], self.points[j]))

    def equal(self, a, b):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a == b
        return abs(a - b) <= self.tolerance


def segment():
    return PointSet(((0,), (1,)))


def equilateral_triangle():
    """Exact: the standard basis of R^3 (side length sqrt 2)."""
    return PointSet(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def float_triangle():
    h = math.sqrt(3) / 2
    return PointSet(((0.0, 0.0), (1.0, 0.0), (0.5, h)))


# ---------------------------------------------------------------------------
# symmetry


def symmetry_group(X: PointSet):
    """All distance-preserving permutations, as a group with its action on X."""
    n = len(X)
    if n > MAX_POINTS:
        raise SizeLimitExceeded(f"{n} points exceeds the guard of {MAX_POINTS}")
    D = [[X.sqdist(i, j) for j in range(n)] for i in range(n)]

    def profile(i):
        return sorted(D[i])

    profiles = [profile(i) for i in range(n)]
    same = [[_close_lists(profiles[i], profiles[j], X) for j in range(n)] for i in range(n)]
    perms, img, used = [], [None] * n, [False] * n

    def extend(i):
        if i == n:
            perms.append(tuple(img))
            return
        for j in range(n):
            if used[j] or not same[i][j]:
                continue
            if all(X.equal(D[i][k], D[j][img[k]]) for k in range(i)):
                img[i], used[j] = j, True
                extend(i + 1)
                used[j] = False

    extend(0)
    G, action = permutation_group(perms, n)
    return G, action


def _close_lists(a, b, X):
    return all(X.equal(u, v) for u, v in zip(a, b))


# ---------------------------------------------------------------------------
# dilation


@dataclass
class DilationReport:
    ok: bool
    degree: int
    max_residual: object
    pairs: int

    def to_json(self):
        return {"ok": self.ok, "degree": self.degree, "max_residual": str(self.max_residual), "pairs": self.pairs}


def _word_sqdist(A, B, X):
    return sum(X.sqdist(a, b) for a, b in zip(A, B) if a != b)


def dilation_check(W, X: PointSet, action: GroupAction) -> DilationReport:
    """Compare |W(x) - W(x')|^2 with d |x - x'|^2 over all pairs.

    Words within the dense budget are substituted and summed coordinate by
    coordinate; longer words are summed per variable from the symbol counts.
    """
    if not isinstance(W, VariableWord):
        raise InvalidDegree("the identity needs a word with at least one variable")
    if action.set_size != len(X) or W.alphabet_size != len(X):
        raise InvalidDegree("word, action and point set must share the alphabet")
    d = W.degree
    n = len(X)
    # float mode compares relative to the size of the squared distances involved
    ok = True
    dense = W.length <= config.dense_budget()
    if dense:
        images = [substitute(W, x, action).symbols() for x in range(n)]
    worst, pairs = Fraction(0) if X.exact else 0.0, 0
    for i in range(n):
        for j in range(i):
            if dense:
                lhs = _word_sqdist(images[i], images[j], X)
            else:
                lhs = sum(k * X.sqdist(action.act[h][i], action.act[h][j]) for h, k in W.var_counts.items())
            rhs = d * X.sqdist(i, j)
            res = abs(lhs - rhs)
            worst = max(worst, res)
            if not X.exact:
                ok &= res <= X.tolerance * max(1.0, abs(rhs))
            pairs += 1
    if X.exact:
        ok = worst == 0
    return DilationReport(ok, d, worst, pairs)


# ---------------------------------------------------------------------------
# scaled embedding


@dataclass(frozen=True)
class ScaledVector:
    """The point λ·v of R^(nN) with λ kept as its exact square."""

    lam_sq: Fraction
    coords: tuple

    def key(self, digits=9):
        cs = tuple(c if isinstance(c, Fraction) else round(c, digits) for c in self.coords)
        return f"{self.lam_sq}|" + ",".join(str(c) for c in cs)


def scaled_coloring(spec, r):
    """A coloring of scaled vectors: ``random`` hashes the exact point, ``constant`` ignores it."""
    kind = spec.get("kind", "random")
    if kind == "constant":
        c = int(spec.get("color", 0))
        return lambda v: c
    if kind == "random":
        seed = int(spec.get("seed", 0))
        return lambda v: _random_color(seed, (v.key(),), r)
    raise ValueError(f"unsupported scaled coloring {kind!r}")


def _flatten(X, word_syms):
    out = []
    for s in word_syms:
        out.extend(X.points[s])
    return tuple(out)


def _lambda_text(D):
    root = math.isqrt(D)
    if root * root == D:
        return f"1/{root}"
    return f"{D}^(-1/2)"


@dataclass
class EmbeddingCertificate:
    degree: int
    orbits: int
    hj_degree: int
    lam_sq: Fraction
    lam: str
    length: object
    witness: VariableWord | None = None
    images: list | None = None
    isometric: bool | None = None
    orbit_colors: list | None = None
    monochromatic: bool | None = None

    def to_json(self):
        return {
            "hj_degree": str(self.hj_degree),
            "orbits": self.orbits,
            "word_degree": str(self.degree),
            "lambda": self.lam,
            "lambda_squared": str(self.lam_sq),
            "scaling_identity": self.lam_sq * self.degree == 1,
            "length": bignum.to_json(self.length),
            "witness": self.witness.to_json() if self.witness is not None else None,
            "images": [list(map(str, im)) for im in self.images] if self.images else None,
            "isometric": self.isometric,
            "orbit_colors": self.orbit_colors,
            "monochromatic": self.monochromatic,
        }


def cor17_embed(X: PointSet, r, coloring=None, *, elements=None, series=None, plan_only=False):
    """Isometric f: X -> λX^N with every orbit {f(gx)} monochromatic.

    ``coloring`` maps a :class:`ScaledVector` to a color in ``range(r)``.
    ``elements`` picks a subgroup of the symmetry group (default all of it).
    With ``plan_only`` only the degree, the scale and the length are reported.
    """
    G, action = symmetry_group(X)
    if elements is not None:
        H = check_subgroup(G, elements)
        Hg, emb = subgroup(G, H)
        G, action = Hg, restrict_action(action, emb)
    ex = action_extractor(G, action, series)
    p = ex.relation.class_count
    d = hj_degree(series or subnormal_cyclic_series(G)).value
    D = ex.degree
    if D != d**p:
        raise AssertionError("word degree must be the HJ-degree to the number of orbits")
    lam_sq = Fraction(1, D)
    assert lam_sq * d**p == 1
    length = ex.plan(r)
    cert = EmbeddingCertificate(D, p, d, lam_sq, _lambda_text(D), length)
    if plan_only:
        return cert
    if coloring is None:
        raise ValueError("a coloring is needed unless plan_only is set")

    def c_lam(word):
        return coloring(ScaledVector(lam_sq, _flatten(X, word)))

    N = ex._dense_length(r)
    oracle = ColoringOracle(N, len(X), r, c_lam, spec={"kind": "scaled-pullback"})
    W = ex.run(r, oracle).witness
    images = [substitute(W, x, action).symbols() for x in range(len(X))]
    f = [ScaledVector(lam_sq, _flatten(X, im)) for im in images]
    iso = True
    for i in range(len(X)):
        for j in range(i):
            lhs = lam_sq * _word_sqdist(images[i], images[j], X)
            iso &= X.equal(lhs, X.sqdist(i, j))
    orbit_colors, mono = [], True
    for members in ex.relation.classes():
        cols = [coloring(f[x]) for x in members]
        orbit_colors.append({"members": members, "colors": cols})
        mono &= len(set(cols)) == 1
    cert.witness, cert.isometric, cert.orbit_colors, cert.monochromatic = W, bool(iso), orbit_colors, mono
    cert.images = [f_x.coords for f_x in f]
    return cert
