"""Reference elements, quadrature and scalar FE spaces."""

from .basis import ElementKind, local_nodes, reference_basis, tabulate
from .quadrature import QuadratureRule, quadrature_rule
from .space import FeSpace, Field, QuadratureData, eval_field, interpolate

__all__ = [
    "ElementKind",
    "FeSpace",
    "Field",
    "QuadratureData",
    "QuadratureRule",
    "eval_field",
    "interpolate",
    "local_nodes",
    "quadrature_rule",
    "reference_basis",
    "tabulate",
]
