"""Coherent matrix towers: local spectra, continuous functional calculus and
Gelfand data of locally bounded operators, plus a grid model of function
algebras such as ``C(R)``."""

from .character import (
    AlgebraElement,
    Character,
    enumerate_characters,
    factor_level,
    gelfand,
    gelfand_by_diagonalization,
    kernel_contains,
    local_isometry_check,
)
from .errors import TowerError
from .funcalc import (
    LocalSpectrum,
    apply_function,
    check_spectral_mapping,
    classify,
    local_spectrum,
    polynomial_calculus,
)
from .function_algebra import (
    GridFunction,
    IntervalChain,
    evaluation_character,
    noncontinuity_witness,
    quotient_equal,
    seminorm_p,
)
from .functions import FunctionSpec, Term
from .tower import (
    IndexChain,
    OperatorTower,
    SeminormVector,
    add,
    adjoint,
    compose,
    diagonal_tower,
    identity_tower,
    is_normal,
    number_matrix_tower,
    restrict,
    scale,
    seminorms,
    validate_tower,
    zero_tower,
)

__version__ = "0.1.0"
