"""Nomura algebras, Jones pairs, spin models and the constructions between them."""

from .core import DEFAULT_TOL, Check, Report, Tolerance, is_type_ii
from .errors import SpinlabError
from .jones import (
    FourWeightSpinModel,
    JonesPair,
    check_jones_pair,
    check_one_sided,
    from_four_weight,
    spin_index,
    to_four_weight,
)
from .nomura import NomuraData, SchemeData, duality_map, nomura_algebra, scheme_from_space, type_ii_nomura
from .spin import SpinModel, cyclic_spin_model, hadamard_spin_model, potts, spin_model_pair, verify_spin_model

__all__ = [
    "DEFAULT_TOL",
    "Check",
    "FourWeightSpinModel",
    "JonesPair",
    "NomuraData",
    "Report",
    "SchemeData",
    "SpinModel",
    "SpinlabError",
    "Tolerance",
    "check_jones_pair",
    "check_one_sided",
    "cyclic_spin_model",
    "duality_map",
    "from_four_weight",
    "hadamard_spin_model",
    "is_type_ii",
    "nomura_algebra",
    "potts",
    "scheme_from_space",
    "spin_index",
    "spin_model_pair",
    "to_four_weight",
    "type_ii_nomura",
    "verify_spin_model",
]
