"""Digital low-discrepancy sequences, their structural checks, and
bounded-remainder experiments for anchored boxes."""

from .brs import (
    DeltaProfile,
    Expansion,
    GammaSpec,
    cond_check,
    delta,
    delta_profile,
    in_box,
    star_discrepancy_exact,
)
from .digital import (
    DigitalConfig,
    DigitalSequence,
    DualBasis,
    ExplicitMatrix,
    IdentityMatrix,
    NiederreiterMatrix,
    digital_point,
    dual_space,
    niederreiter_matrices,
    overall_matrix,
)
from .digits import DEFAULT_PRECISION, DigitString, PointSet
from .field import GF, FieldElement, FieldError, FieldSpec, parse_field
from .polyring import LaurentTail, Poly, is_irreducible, laurent_expand, parse_poly, poly_gcd
from .radinv import (
    CantorBase,
    ConfigurationError,
    HaltonTypeSequence,
    HellekalekSequence,
    PlaceList,
    TezukaSequence,
    cantor_inverse,
    halton_type_point,
    hellekalek_point,
    tezuka_point,
    vdc,
)
from .verify import (
    CertificationError,
    ElementaryInterval,
    NetReport,
    admissibility,
    digit_shift,
    digit_unshift,
    exact_t_value,
    is_d_admissible,
    is_d_admissible_net,
    is_net,
    norm_b,
    norm_b_int,
    weak_admissibility,
)

__version__ = "0.1.0"
