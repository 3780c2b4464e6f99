"""Exact homotopy transfer of A-infinity structures across contractions."""
from __future__ import annotations

from .ainfty import (
    AInfinityMorphism,
    AInfinityStructure,
    b_form,
    bar_differential,
    check_morphism,
    desuspend_multilinear,
    from_dga,
    massey_triple,
    stasheff_defect,
    suspend_multilinear,
)
from .bar import BarContext, BarMap, compose_bar, is_coalgebra_morphism, is_coderivation, lift_coderivation, lift_morphism
from .factory import SimplicialComplexDescription, cochain_dga, gaussian_contraction, massey_instance, random_suite
from .fields import GF, QQ, ExactField
from .graded import (
    BigradedSpace,
    Complex,
    GradedMap,
    compose,
    is_closed,
    map_differential,
    suspend,
    tensor_map,
    tensor_space,
)
from .homology import Homology, homology_basis
from .perturbation import (
    Contraction,
    SDRDatum,
    TransferResult,
    bar_homotopy,
    check_sdr,
    naturality_check,
    repair_to_contraction,
    transfer,
)

__version__ = "0.1.0"
