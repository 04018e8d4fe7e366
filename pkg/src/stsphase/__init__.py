"""Analysis of translation- and scale-symmetric stabilizer Hamiltonians."""

from .errors import AnalysisError, InputError, StsError
from .lattice import GeneratorTemplate, LatticeSpec, Model
from .pauli import PauliOperator, SupportSet
from .stabilizer import StabilizerGroup, build

__all__ = [
    "AnalysisError",
    "GeneratorTemplate",
    "InputError",
    "LatticeSpec",
    "Model",
    "PauliOperator",
    "StabilizerGroup",
    "StsError",
    "SupportSet",
    "build",
]

__version__ = "0.1.0"
