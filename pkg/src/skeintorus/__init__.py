"""Exact skein-algebra computations inside localized quantum tori.

The package is organised in layers:

- ``exactalg``: Laurent polynomials, normal-form fractions, cyclotomic scalars.
- ``qtorus``: the noncommutative localized quantum torus and its automorphisms.
- ``sausage``: the chain-of-handles pants decomposition, its dual graph,
  parity lattices and the catalogue of generator curves.
- ``embed``: the curve images, the Dehn-twist calculus on them, and the
  symbolic identity suites S1..S11.
- ``repbuild``: irreducible root-of-unity representations with prescribed
  classical shadow, shadow-trace formulas, commutants and intertwiners.
- ``cli``: expression parser and the ``skein-torus`` command line front end.
"""

from .exactalg import (
    VarContext, LPoly, Frac, CycloField, Cyclo,
    frac_equal, shift_substitute, specialize_cyclotomic,
    u_poly, quantum_int, cyclotomic_polynomial, parse_cyclo_scalar,
    poly_arith, frac_arith,
    ContextMismatch, InversionError, SpecializationError,
)
from .qtorus import (
    QTElem, qt_mul, qt_add, commutator_A, automorphism_tau_c, a0_membership,
    RoleError,
)
from .sausage import (
    SausageGraph, CurveId, build_graph, lambda_member, generator_sets,
    curve_catalogue,
)
from .embed import (
    SigmaTable, SuiteReport, IdentityResult, sigma_generator, twist_image,
    scaled_twist, sigma_tau_aux, run_identity_suite, fracdehn_check,
    expand_support_check, suite_ids, suite_supported, ConfigError,
)
from .repbuild import (
    Rep, CMatrix, RepSpace, genericity_check, build_rep, eval_element,
    chebyshev_T, classical_shadow, shadow_scalar, verify_cshadow,
    irreducibility_commutant, find_intertwiner, gauge_shift,
    MembershipError, GenericityError, ReducibleError,
)
from .cli import parse_expression, ParseError, main

__version__ = "0.1.0"
