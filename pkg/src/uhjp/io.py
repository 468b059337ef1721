"""JSON documents for groups, actions, words, colorings and point sets.

Every loader accepts either inline JSON text or a path to a JSON file.
"""

from __future__ import annotations

import json
import os

from uhjp.coloring import KINDS
from uhjp.errors import InvalidAction, UHJPError
from uhjp.euclid import PointSet
from uhjp.groups import (
    FiniteGroup,
    GroupAction,
    dihedral_group,
    from_cayley,
    permutation_group,
    regular_action,
    series_from_chain,
    standard_action,
)
from uhjp.words import word_from_json


class BadDocument(UHJPError):
    """Malformed JSON input."""


def load(text_or_path):
    if isinstance(text_or_path, (dict, list)):
        return text_or_path
    s = text_or_path.strip()
    if not s.startswith(("{", "[")) and os.path.exists(s):
        with open(s) as fh:
            s = fh.read()
    try:
        return json.loads(s)
    except json.JSONDecodeError as e:
        raise BadDocument(f"invalid JSON: {e}") from None


def parse_action(doc) -> GroupAction:
    """A group document (acting on itself or naturally) or an explicit action."""
    doc = load(doc)
    if "act" in doc:
        G = parse_group(doc["group"])
        n = int(doc["set_size"])
        return GroupAction(G, n, doc["act"])
    kind = doc.get("kind")
    if kind in ("cyclic", "symmetric"):
        return standard_action(kind, int(doc["n"]))
    if kind == "dihedral":
        return dihedral_group(int(doc["n"]))
    if kind == "permutation":
        return permutation_group(doc["generators"], doc.get("degree"))[1]
    if kind == "cayley":
        return regular_action(from_cayley(doc["table"], doc.get("labels")))
    raise BadDocument(f"unknown group kind {kind!r}")


def parse_group(doc) -> FiniteGroup:
    return parse_action(doc).group


def parse_series(G, doc):
    if doc is None:
        return None
    chain = load(doc)
    if not isinstance(chain, list):
        raise BadDocument("a series is a list of subgroups (sorted index arrays)")
    return series_from_chain(G, chain)


def parse_word(doc):
    try:
        return word_from_json(load(doc))
    except (KeyError, TypeError, ValueError) as e:
        raise BadDocument(f"bad word document: {e}") from None


def parse_coloring(doc, seed=None) -> dict:
    spec = dict(load(doc))
    if spec.get("kind") not in KINDS:
        raise BadDocument(f"coloring kind must be one of {KINDS}")
    if spec["kind"] == "random" and "seed" not in spec:
        spec["seed"] = 0 if seed is None else seed
    return spec


def parse_pointset(doc) -> PointSet:
    try:
        return PointSet.parse(load(doc))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise BadDocument(f"bad point set: {e}") from None


def check_action_group(action: GroupAction, G: FiniteGroup):
    if action.group != G:
        raise InvalidAction("action is for a different group")
