"""Exact-arithmetic classification toolkit for symplectic Monge-Ampere equations.

Equations F(u_ij) = 0 built from minors of the Hessian are hyperplane
sections of the Plucker-embedded Lagrangian Grassmannian; this package
mechanizes their classification: linearisability and integrability tests,
stabilizer subalgebras, effective-form invariants, the quartic-pair normal
form pipeline, and Lax-pair verification, all over exact rationals.
"""

from .grassmann import (
    LagrangePoint,
    MAEquation,
    MinorBasis,
    decompose,
    equation_from_json,
    equation_to_json,
    meets_all_sublagrangians,
    minor_basis,
    osculating_containment,
    partial_legendre,
    plucker_eval,
    singular_locus_quadratic,
    translate,
)
from .integrability import (
    Fingerprint,
    Linearisability,
    QuarticPair,
    ReductionSample,
    Verdict,
    classify_quartic_pair,
    ef_coordinates,
    identify_equation,
    integrable_4d,
    linearisable_3d,
    travelling_wave_reduce,
)
from .forms import ExteriorForm, b_omega_lambda, effective_lift, pullback_to_equation
from .laxpair import LaxField, commutator, reduce_6d_lax, sample_on_variety, verify_lax
from .liesp import LieSubalgebra, is_reductive, nondegenerate, symmetry_algebra
from .parse import parse_equation, parse_lax_field
from .quartic import BinaryQuartic, multiplicity_pattern, quartic_invariants

__version__ = "0.1.0"

__all__ = [
    "BinaryQuartic",
    "ExteriorForm",
    "Fingerprint",
    "LagrangePoint",
    "LaxField",
    "LieSubalgebra",
    "Linearisability",
    "MAEquation",
    "MinorBasis",
    "QuarticPair",
    "ReductionSample",
    "Verdict",
    "b_omega_lambda",
    "classify_quartic_pair",
    "commutator",
    "decompose",
    "ef_coordinates",
    "effective_lift",
    "equation_from_json",
    "equation_to_json",
    "identify_equation",
    "integrable_4d",
    "is_reductive",
    "linearisable_3d",
    "meets_all_sublagrangians",
    "minor_basis",
    "multiplicity_pattern",
    "nondegenerate",
    "osculating_containment",
    "parse_equation",
    "parse_lax_field",
    "partial_legendre",
    "plucker_eval",
    "pullback_to_equation",
    "quartic_invariants",
    "reduce_6d_lax",
    "sample_on_variety",
    "singular_locus_quadratic",
    "symmetry_algebra",
    "translate",
    "travelling_wave_reduce",
    "verify_lax",
]
