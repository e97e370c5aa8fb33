"""Certify post-selection hardness of quantum gate sets via dense subgroups of SL(2, C)."""

__version__ = "0.1.0"

from .circuit import Circuit, Gate, GateSet, Placement, assemble_unitary, circuit  # noqa: E402
from .criterion import CriterionReport, Verdict, density_pipeline  # noqa: E402
from .gadget import Gadget, GeneratorSet, build_generator_set, compute_action  # noqa: E402
from .linalg import DEFAULT_TOL, Tolerance  # noqa: E402

__all__ = [
    "Circuit", "Gate", "GateSet", "Placement", "assemble_unitary", "circuit",
    "CriterionReport", "Verdict", "density_pipeline",
    "Gadget", "GeneratorSet", "build_generator_set", "compute_action",
    "DEFAULT_TOL", "Tolerance", "__version__",
]
