"""quatpairs: exact computation with pairs of Hermitian forms over quaternion algebras.

Submodules mirror the mathematical layers: exact_algebra (base fields and
etale extensions), quaternion (the algebra B and its splitting),
hermitian_pairs (the representation, Pfaffian, invariants), representatives
(explicit orbit representatives and transporters), census (finite-field
orbit counting), norm_params (fiber parameter sets), reducible (the
parabolic reduction of split-type loci), cli (JSON command line).
"""

from .exact_algebra import (
    EtaleAlgebra,
    PrimeField,
    Rationals,
    conjugates,
    etale_make,
    norm_trace,
    roots_in_base,
    splitting_data,
)
from .hermitian_pairs import (
    BinaryForm,
    GroupElement,
    HermitianPair,
    QuatMatrix,
    act,
    character_chi,
    discriminant,
    form_of_pair,
    invariant_p,
    is_hermitian,
    is_semistable,
    iota,
    pfaffian,
    reduced_norm_matrix,
    splitting_type,
)
from .quaternion import Quaternion, QuaternionAlgebra, conj, invert, reduced_norm, reduced_trace, split_embed

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "EtaleAlgebra",
    "GroupElement",
    "HermitianPair",
    "PrimeField",
    "QuatMatrix",
    "Quaternion",
    "QuaternionAlgebra",
    "Rationals",
    "act",
    "character_chi",
    "conj",
    "conjugates",
    "discriminant",
    "etale_make",
    "form_of_pair",
    "invariant_p",
    "invert",
    "iota",
    "is_hermitian",
    "is_semistable",
    "norm_trace",
    "pfaffian",
    "reduced_norm",
    "reduced_norm_matrix",
    "reduced_trace",
    "roots_in_base",
    "split_embed",
    "splitting_data",
    "splitting_type",
]
