"""Exact computer algebra for the Casas-Alvero problem over finite fields:
Hasse derivatives, resultants, counterexample searches, the elimination
cascade, and the degree-6 quadrinomial family.
"""

from .arith import (ExtField, FieldDescriptor, IntegerRing, PrimeField,
                    Rationals, binom_mod_p, find_irreducible, frobenius_root,
                    is_prime, kummer_carries, v_p, INFINITY)
from .casas import (CAInstance, CAVerdict, CascadeStep, CascadeTrace,
                    ClosureHit, CoverageVerdict, MReport, NormalizedForm,
                    QuadClosureReport, SearchHit, SearchOptions, SearchReport,
                    check_ca, elimination_cascade, exhaustive_search,
                    family_counterexample, field_roots,
                    identically_zero_resultants, irreducible_factors,
                    normalize, poly_roots, quad_closure_scan, quad_poly,
                    quad_scan, theorem_coverage, verify_m, verify_quad_point,
                    M_FACTORIZATION, GIANT_PRIME, GIANT_QUAD_A, GIANT_QUAD_B)
from .errors import (BudgetExceededError, DomainError, NormalizationError,
                     PolyParseError, UnsupportedFieldError)
from .multipoly import (MultiPoly, PolyRing, WeightedOrder, buchberger_is_gb,
                        generic_poly, generic_resultant, weighted_degree)
from .unipoly import (GcdProfile, UniPoly, descend, format_poly, gcd,
                      gcd_profile, hasse_derivative, is_linear_power,
                      parse_poly, resultant, resultant_prs, sylvester_matrix,
                      taylor_shift)

__version__ = "0.1.0"
