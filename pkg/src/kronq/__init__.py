"""Exact computations in the quantum cluster algebra of the Kronecker quiver."""
from .qlaurent import GrCountPoly, LaurentQ, bracket_binomial, gauss_binomial, subst_w
from .qtorus import NotDivisible, TorusElem, minimal_terms, t_bar, t_leftdiv, t_mul, t_rightdiv
from .cluster import min_exp_xvar, xdelta, xvar_closed, xvar_rec
from .bases import (
    BasisExpansion,
    Diag,
    Mono,
    NotInAlgebra,
    NotInImage,
    Unit,
    basis_element,
    cheb_elem,
    expand_in_basis,
    is_positive,
    realize,
)
from .quivergr import cc_element, gr_poly, kronecker_module, subrep_count, szanto_count
from .seeds import CompatiblePair, QuantumSeed, initial_seed, mutate
from .expr import ExprSyntaxError, eval_expr, parse_expr
from .verify import UnknownSuite, VerifyReport, run_verify

__version__ = "0.1.0"
