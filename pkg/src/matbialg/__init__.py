"""matbialg: an exact symbolic engine for the 2x2 matrix bialgebras cut out
by 4x4 R-matrices, their dual bialgebras, duality pairings, antipode
(in)feasibility certificates, and low-dimensional representation theory.

All arithmetic is exact over Q(i)(q); nothing in the package is numerical.
"""

from .scalars import QI, PoleError, Scalar, scalar
from .reps import (
    IrrepDescriptor,
    ModuleRep,
    UnsupportedModuleError,
    WeightError,
    decompose,
    weight_module,
)
from .induced import (
    InducedModule,
    PowerElem,
    act_left,
    act_right,
    antipode,
    hat_pair,
    induce,
    induced_report,
    sl2_generators,
)

__all__ = [
    "QI", "PoleError", "Scalar", "scalar",
    "IrrepDescriptor", "ModuleRep", "UnsupportedModuleError", "WeightError",
    "decompose", "weight_module",
    "InducedModule", "PowerElem", "act_left", "act_right", "antipode",
    "hat_pair", "induce", "induced_report", "sl2_generators",
]

__version__ = "0.1.0"
