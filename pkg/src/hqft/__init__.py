"""Homotopical state sums on labeled triangulated surfaces and a small
cobordism-word evaluator, built from a semisimple algebra with a central
group action."""

from .cobordlang import closed_genus_word, evaluate_word, parse, typecheck
from .errors import HQFTError, NumericalError
from .frobenius import Algebra, GAction, make_action, make_algebra, trivial_action
from .group import FiniteAbelianGroup, GroupElement, make_group
from .statesum import evaluate, evaluate_bruteforce, plan_contraction
from .surface import LabeledSurface, make_surface

__version__ = "0.1.0"

__all__ = [
    "Algebra", "FiniteAbelianGroup", "GAction", "GroupElement", "HQFTError", "LabeledSurface",
    "NumericalError", "closed_genus_word", "evaluate", "evaluate_bruteforce", "evaluate_word",
    "make_action", "make_algebra", "make_group", "make_surface", "parse", "plan_contraction",
    "trivial_action", "typecheck",
]
