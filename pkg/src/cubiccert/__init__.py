"""Machine-checkable certificates and exact geometric verification for
almost-diagonal cubic hypersurfaces."""

from .certs import (
    Certificate,
    Statement,
    certificate_from_json,
    certificate_to_json,
    certify_form,
    certify_uct,
    conclude_a0_trivial,
    derive_unirationality,
    enumerate_types,
    validate_certificate,
)
from .forms import (
    BlockDecomposition,
    CubicForm,
    SmoothnessVerdict,
    TypeSignature,
    block_smoothness,
    decompose_blocks,
    form_smoothness,
    make_type,
    parse_form,
    type_signature,
)
from .poly import GF, QQ, Polynomial
from .resultants import macaulay_resultant_q3, sylvester_resultant

__all__ = [
    "Certificate",
    "Statement",
    "certificate_from_json",
    "certificate_to_json",
    "certify_form",
    "certify_uct",
    "conclude_a0_trivial",
    "derive_unirationality",
    "enumerate_types",
    "validate_certificate",
    "BlockDecomposition",
    "CubicForm",
    "SmoothnessVerdict",
    "TypeSignature",
    "block_smoothness",
    "decompose_blocks",
    "form_smoothness",
    "make_type",
    "parse_form",
    "type_signature",
    "GF",
    "QQ",
    "Polynomial",
    "macaulay_resultant_q3",
    "sylvester_resultant",
]

__version__ = "0.1.0"
