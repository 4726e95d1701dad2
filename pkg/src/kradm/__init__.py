"""Admissible sets in extended affine Weyl groups, with verification tooling.

The layers, bottom up: `rootsys` holds root data and cocharacter lattices,
`affine` the group elements with length, Bruhat order, and covers,
`admissible` the downward-closed posets and their stratum graphs, and
`verifier` the checks plus the sweep runner the `kradm` CLI drives.
"""

from .admissible import (
    AdmissiblePoset,
    CapExceededError,
    DecompositionError,
    StrataGraph,
    build_admissible,
)
from .affine import (
    AffineElt,
    Reflection,
    bruhat_leq,
    element_from_obj,
    element_from_word,
    element_to_obj,
    finite_elt,
    identity_elt,
    left_descents,
    length,
    length_by_separation,
    lower_covers,
    omega_label,
    omega_representative,
    reduced_word,
    reflection_elt,
    simple_affine,
    translation_elt,
)
from .rootsys import FiniteWeylElt, RootSystem, build_root_system
from .verifier import (
    CheckResult,
    SweepEntry,
    default_sweep,
    run_checks,
    run_sweep,
    sweep_exit_code,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePoset",
    "AffineElt",
    "CapExceededError",
    "CheckResult",
    "DecompositionError",
    "FiniteWeylElt",
    "Reflection",
    "RootSystem",
    "StrataGraph",
    "SweepEntry",
    "bruhat_leq",
    "build_admissible",
    "build_root_system",
    "default_sweep",
    "element_from_obj",
    "element_from_word",
    "element_to_obj",
    "finite_elt",
    "identity_elt",
    "left_descents",
    "length",
    "length_by_separation",
    "lower_covers",
    "omega_label",
    "omega_representative",
    "reduced_word",
    "reflection_elt",
    "run_checks",
    "run_sweep",
    "simple_affine",
    "sweep_exit_code",
    "translation_elt",
    "__version__",
]
