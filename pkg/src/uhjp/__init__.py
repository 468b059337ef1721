"""Uniform Hales-Jewett witnesses for finite solvable groups."""

from uhjp.groups import (
    EquivalenceRelation,
    FiniteGroup,
    GroupAction,
    GroupHomomorphism,
    SubnormalCyclicSeries,
    from_cayley,
    is_solvable,
    orbits_of,
    quotient,
    regular_action,
    standard_group,
    subnormal_cyclic_series,
    transversal_section,
)
from uhjp.coloring import ColoringOracle, from_spec
from uhjp.euclid import PointSet, cor17_embed, dilation_check, symmetry_group
from uhjp.extract import (
    action_extract,
    action_extractor,
    cyclic_extractor,
    plan_length,
    solvable_extract,
    solvable_extractor,
)
from uhjp.hjdegree import hj_degree
from uhjp.oracle import enumerate_uniform_words, minimal_N_search, uhjp_check, verify_witness
from uhjp.ramsey import ramsey_step, t_function
from uhjp.words import ConstantWord, VariableWord, analyze, concat, shift, substitute

__version__ = "0.1.0"

__all__ = [
    "action_extract",
    "action_extractor",
    "analyze",
    "ColoringOracle",
    "concat",
    "ConstantWord",
    "cor17_embed",
    "cyclic_extractor",
    "dilation_check",
    "enumerate_uniform_words",
    "EquivalenceRelation",
    "FiniteGroup",
    "from_cayley",
    "from_spec",
    "GroupAction",
    "GroupHomomorphism",
    "hj_degree",
    "is_solvable",
    "minimal_N_search",
    "orbits_of",
    "plan_length",
    "PointSet",
    "quotient",
    "ramsey_step",
    "regular_action",
    "shift",
    "solvable_extract",
    "solvable_extractor",
    "standard_group",
    "subnormal_cyclic_series",
    "SubnormalCyclicSeries",
    "substitute",
    "symmetry_group",
    "t_function",
    "transversal_section",
    "uhjp_check",
    "VariableWord",
    "verify_witness",
]
