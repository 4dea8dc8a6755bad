"""Exact Eilenberg-Watts calculus for finite-dimensional algebras and Hopf algebras."""

from .linalg import GF, QQ, Field, Matrix, kernel_basis, solve_linear
from .algebra import (
    Algebra, algebra_morphism, base_field, cyclic_group_algebra, group_algebra, matrix_algebra,
    opposite, tensor_algebra, truncated_polynomial, upper_triangular,
)
from .modules import (
    Bimodule, ModuleMorphism, coregular_bimodule, dual_module, hom_basis, hom_space,
    left_module, module_iso_exists, regular_bimodule, right_module, tensor_over_algebra,
)
from .functors import LexRep, RexRep, ew_translate, nakayama_reps
from .frobenius import classify
from .hopf import HopfAlgebra, modular_data, sweedler, taft_algebra
from .limits import FiniteDiagram, coend_weighted, end_weighted, verify_peter_weyl

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "Matrix", "kernel_basis", "solve_linear",
    "Algebra", "algebra_morphism", "base_field", "cyclic_group_algebra", "group_algebra",
    "matrix_algebra", "opposite", "tensor_algebra", "truncated_polynomial", "upper_triangular",
    "Bimodule", "ModuleMorphism", "coregular_bimodule", "dual_module", "hom_basis", "hom_space",
    "left_module", "module_iso_exists", "regular_bimodule", "right_module", "tensor_over_algebra",
    "LexRep", "RexRep", "ew_translate", "nakayama_reps", "classify",
    "HopfAlgebra", "modular_data", "sweedler", "taft_algebra",
    "FiniteDiagram", "coend_weighted", "end_weighted", "verify_peter_weyl",
]
