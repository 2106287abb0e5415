"""ffec: exact arithmetic for elliptic curves over rational function fields.

Heights and divisors over F_q(T), Kodaira reduction data and conductors,
the height inequality for admissible curves, Tate q-expansions and
uniformization, torsion and Weil pairings over residue fields, and
mod-l image surveys against the det-constrained matrix groups.
"""

__version__ = "0.1.0"

from .curve import CurveInvariants, WeierstrassCurve, curve_from_j
from .errors import ParseError, PrecisionError, PreconditionError, ResourceCapError
from .funfield import (
    Divisor,
    FieldContext,
    Place,
    RationalFunction,
    cyclotomic_splitting_degree,
    height,
    is_pth_power,
    principal_divisor,
    valuation,
    zero_pole_split,
)
from .localred import (
    GlobalCurveData,
    LocalReductionData,
    check_height_conjecture,
    enumerate_good_twists,
    global_data,
    local_reduction,
    sweep,
    verify_case_table,
)

__all__ = [
    "CurveInvariants",
    "Divisor",
    "FieldContext",
    "GlobalCurveData",
    "LocalReductionData",
    "ParseError",
    "Place",
    "PrecisionError",
    "PreconditionError",
    "RationalFunction",
    "ResourceCapError",
    "WeierstrassCurve",
    "check_height_conjecture",
    "curve_from_j",
    "cyclotomic_splitting_degree",
    "enumerate_good_twists",
    "global_data",
    "height",
    "is_pth_power",
    "local_reduction",
    "principal_divisor",
    "sweep",
    "valuation",
    "verify_case_table",
    "zero_pole_split",
]
