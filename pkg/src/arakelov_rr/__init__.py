"""Exact dimensions and Euler characteristics over the absolute base.

Degrees are measured in log2 units throughout.  The headline identity,
checked on every evaluation: h0 - h1 equals the primed ceiling of the
degree plus one.
"""

from .circle_h1 import (
    CircleCertificate,
    certify_family,
    circle_distance,
    circle_point,
    covering_radius,
    dim_h1,
    f_generators,
    is_generating,
    lower_bound_cardinality,
    min_separation,
    subset_sums,
)
from .divisor import (
    ArakelovDivisor,
    DegreeValue,
    EulerCharacteristic,
    ScanReport,
    StepFunctionSeries,
    ceil_prime,
    euler_characteristic,
    figure_data,
    rr_scan,
    series_to_csv,
    series_to_json,
    series_to_svg,
)
from .errors import (
    DomainError,
    FormulaViolation,
    LevelMismatchError,
    OutOfRangeError,
    PrecisionError,
    SizeCapError,
)
from .gamma import (
    BASEPOINT,
    EMPTY_SUM,
    PointedMap,
    PointedVector,
    SubsetSpec,
    member_fast_symmetric,
    member_norm,
    member_subfunctor,
    pushforward,
    smash_action,
    sum_witness,
    vector,
)
from .interval_h0 import (
    GeneratingCertificate,
    MinSearchResult,
    SearchOptions,
    TABULATED_SETS,
    covers,
    dim_h0,
    explicit_generating_set,
    first_unrealizable,
    floor_pow2,
    generates,
    is_admissible,
    lower_bound_size,
    min_generating_set,
    realize,
)
from .negabinary import (
    BijectionReport,
    DeltaInterval,
    NegabinaryWord,
    decode,
    delta_interval,
    encode,
    j_value,
    j_value_closed_form,
    verify_bijection,
)

__version__ = "0.1.0"

__all__ = [
    "ArakelovDivisor",
    "BASEPOINT",
    "BijectionReport",
    "CircleCertificate",
    "DegreeValue",
    "DeltaInterval",
    "DomainError",
    "EMPTY_SUM",
    "EulerCharacteristic",
    "FormulaViolation",
    "GeneratingCertificate",
    "LevelMismatchError",
    "MinSearchResult",
    "NegabinaryWord",
    "OutOfRangeError",
    "PointedMap",
    "PointedVector",
    "PrecisionError",
    "ScanReport",
    "SearchOptions",
    "SizeCapError",
    "StepFunctionSeries",
    "SubsetSpec",
    "TABULATED_SETS",
    "ceil_prime",
    "certify_family",
    "circle_distance",
    "circle_point",
    "covering_radius",
    "covers",
    "decode",
    "delta_interval",
    "dim_h0",
    "dim_h1",
    "encode",
    "euler_characteristic",
    "explicit_generating_set",
    "f_generators",
    "figure_data",
    "first_unrealizable",
    "floor_pow2",
    "generates",
    "is_admissible",
    "is_generating",
    "j_value",
    "j_value_closed_form",
    "lower_bound_cardinality",
    "lower_bound_size",
    "member_fast_symmetric",
    "member_norm",
    "member_subfunctor",
    "min_generating_set",
    "min_separation",
    "pushforward",
    "realize",
    "rr_scan",
    "series_to_csv",
    "series_to_json",
    "series_to_svg",
    "smash_action",
    "subset_sums",
    "sum_witness",
    "vector",
    "verify_bijection",
    "__version__",
]
