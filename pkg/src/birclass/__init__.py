"""Classification of special birational transformations of small-dimensional varieties.

Submodules:

* :mod:`birclass.invariants` exact numerical invariants of a base locus
* :mod:`birclass.candidates` constraint enumeration over integer tuples
* :mod:`birclass.classify` adjunction-theoretic case analysis and row validation;
  call ``birclass.classify.classify(family)`` to run one family
* :mod:`birclass.fourfolds` divisor labels on cubic fourfolds
* :mod:`birclass.cli` the ``birclass`` command
"""
from __future__ import annotations

__version__ = "0.1.0"

from .candidates import CandidateSet, enumerate_base_set, preliminary_classification  # noqa: E402
from .classify import validate_row, validate_table  # noqa: E402
from .fourfolds import kuznetsov_admissible  # noqa: E402
from .invariants import Profile, cubic_multidegree, delta_invariant  # noqa: E402

__all__ = [
    "__version__",
    "CandidateSet",
    "Profile",
    "cubic_multidegree",
    "delta_invariant",
    "enumerate_base_set",
    "kuznetsov_admissible",
    "preliminary_classification",
    "validate_row",
    "validate_table",
]
