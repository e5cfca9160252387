"""Interval exchanges, their suspensions, and horocycle lifts of lines."""

__version__ = "0.1.0"

from .errors import ERROR_CODES, HorolifError  # noqa: E402
from .iet import Connection, Iet, detect_connections, epsilon_n, epsilon_n_alt, evaluate, evaluate_inverse, orbit  # noqa: E402
from .numbers import Golden, parse_scalar, parse_vector  # noqa: E402
from .pairing import (  # noqa: E402
    PositivityConfig,
    cone_contains,
    heights,
    is_positive_pair,
    null_space,
    q_matrix,
    universal_direction,
)
from .perm import Permutation, is_admissible, is_irreducible, singularity_data  # noqa: E402
from .surface import TranslationSurface, phi, rel_deform, suspend  # noqa: E402

__all__ = [
    "ERROR_CODES",
    "Connection",
    "Golden",
    "HorolifError",
    "Iet",
    "Permutation",
    "PositivityConfig",
    "TranslationSurface",
    "cone_contains",
    "detect_connections",
    "epsilon_n",
    "epsilon_n_alt",
    "evaluate",
    "evaluate_inverse",
    "heights",
    "is_admissible",
    "is_irreducible",
    "is_positive_pair",
    "null_space",
    "orbit",
    "parse_scalar",
    "parse_vector",
    "phi",
    "q_matrix",
    "rel_deform",
    "singularity_data",
    "suspend",
    "universal_direction",
]
