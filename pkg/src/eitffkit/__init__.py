"""Equi-isoclinic tight fusion frames from antipodal covers of complete graphs
and complex symmetric conference matrices."""

from .conference import (
    ConferenceMatrix,
    ctr,
    et_taoui_to_signature,
    mathon_conference,
    signature_to_conference,
    verify_conference,
)
from .drackn import (
    DracknAdjacency,
    DracknParams,
    block_group_closure,
    conference_to_drackn,
    mathon_drackn,
    verify_drackn,
)
from .eitff import (
    EitffParams,
    FusionFrame,
    SignatureMatrix,
    check_eitff,
    expected_params,
    factor_gram,
    gram_from_signature,
    verify_signature,
)
from .finite_field import FieldSpec, field_build
from .representations import (
    DihedralElement,
    RepSelection,
    identify_dihedral,
    irrep_matrix,
    lift_deleted_permutation,
    lift_dihedral,
)

__version__ = "0.1.0"
