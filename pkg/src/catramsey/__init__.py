"""catramsey: a workbench for Ramsey arrow relations on finite categories."""

from .core import FiniteCategory, CategoryError, validate, product
from .generators import UniverseSpec, generate, forgetful_LO_to_Inj, object_of_size
from .arrows import ArrowQuery, ArrowVerdict, check_arrow, check_arrow_dual

__version__ = "0.1.0"

__all__ = [
    "FiniteCategory",
    "CategoryError",
    "validate",
    "product",
    "UniverseSpec",
    "generate",
    "forgetful_LO_to_Inj",
    "object_of_size",
    "ArrowQuery",
    "ArrowVerdict",
    "check_arrow",
    "check_arrow_dual",
    "__version__",
]
