"""Explicit non-free tensors: constructions, moment maps, Kempf-Ness flows,
and machine-checkable non-freeness certificates."""

__version__ = "0.1.0"

from .certify import (
    NonFreenessReport,
    ObstructionWitness,
    StabilizerBlocks,
    certify_family,
    certify_named,
    stabilizer_blocks,
    two_column_obstruction,
)
from .construct import (
    FamilyTensor,
    WMatrix,
    build_W,
    build_family_tensor,
    s0_tensor,
    wmatrix_membership,
)
from .family import FamilyData, family_data, gamma_support, halfspace_check
from .flow import FlowResult, NessCertificate, flow, ness_minimality
from .moment import (
    HermTriple,
    WeylPoint,
    diagonal_part,
    infinitesimal_action,
    moment_map,
    spec_point,
)
from .named import ness_form_t2, ness_form_t5, tensor_t2, tensor_t5
from .polytope import HalfspaceCert, HullRefutation, hull_refute, inner_points, outer_halfspace
from .reduction import ReductionResult, extract_Wa, reduce_to_s0
from .supports import FreeSupportWitness, downward_closure, is_free_support, sjamaar_inner_points
from .tensor import (
    GroupTriple,
    SupportSet,
    Tensor3,
    UnitaryTriple,
    apply,
    flattening,
    inner,
    norm,
    support,
)

__all__ = [name for name in dir() if not name.startswith("_")]
