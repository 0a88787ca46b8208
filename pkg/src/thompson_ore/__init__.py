"""Thompson's monoid, its monoid ring, and exact solvers for a u = b v."""

from .monoid import (BudgetExhausted, CatalanSet, CatalanSetMinus, Explicit, MonomialParseError,
                     ParameterError, catalan, catalan_triangle, enumerate_set, format_monomial,
                     left_quotient, multiply, normalize, parse_monomial, right_lcm, top_cells)
from .fields import IndeterminateField, PrimeField, Rationals, certify, parse_field
from .ring import Polynomial, format_poly, parse_poly, poly_mul
from .linalg import SparseMatrix, eliminate, nullspace, rank
from .ore import (ReduceBudget, SolutionReport, build_system, ore_reduce, solve_linear_system,
                  solve_pair, verify_solution)
from .constructions import (DegenerateCoefficientsError, basic_solution, degree_one_solution,
                            qk_system_solution, solution_family)

__version__ = "0.1.0"
