"""Partial actions of ordered abelian groups on finite sets and intervals.

The main entry points are re-exported here; see README.md for a tour.
"""

__version__ = "0.1.0"

from .actions import ActionSystem, check_axioms, check_properties
from .catalog import builtin_system
from .conjugacy import chain_profile, decide_conjugacy, ideal_invariants
from .crossed import (CrossedPoly, analytic_matrix_realize, is_analytic,
                      l_norm, phi, phi_inv, poly_adjoint, poly_mul)
from .errors import (MalformedInput, PartialActError, PreconditionError,
                     ValidationError)
from .extension import (ExtensionResult, ExtensionWitness, extend_group,
                        extend_total_order)
from .gaussian import GQ
from .groupoid import (GroupoidFunction, build_groupoid, conv_adjoint,
                       conv_mul, cstar_norm, i_norm, matrix_realize)
from .groups import Zd, rational_line
from .towers import (build_tower, check_intertwine, induced_embedding,
                     toroidal_verify)

__all__ = [
    "ActionSystem", "CrossedPoly", "ExtensionResult", "ExtensionWitness",
    "GQ", "GroupoidFunction", "MalformedInput", "PartialActError",
    "PreconditionError", "ValidationError", "Zd", "analytic_matrix_realize",
    "build_groupoid", "build_tower", "builtin_system", "chain_profile",
    "check_axioms", "check_intertwine", "check_properties", "conv_adjoint",
    "conv_mul", "cstar_norm", "decide_conjugacy", "extend_group",
    "extend_total_order", "i_norm", "ideal_invariants", "induced_embedding",
    "is_analytic", "l_norm", "matrix_realize", "phi", "phi_inv",
    "poly_adjoint", "poly_mul", "rational_line", "toroidal_verify",
]
