"""Exact computations around the Cantor wavelet transfer operator.

Rationals are exchanged as ``fractions.Fraction``. Laurent polynomials are
dicts mapping exponents to coefficients (a Fraction, or a ``(re, im)`` pair
for complex values) or strings such as ``"1 + 1/2 z^-2"``. Cell functions
are dicts with ``level``, ``half_scale`` and ``coeffs``.
"""

from fractions import Fraction

from ._cantorwave import (
    Filter,
    build_sequence,
    cascade,
    cascade_divergence,
    cascade_divergence_transfer,
    correlation,
    energy_growth,
    ergodicity_diagnostic,
    fixed_point_residual,
    inner,
    iterate_to_invariant,
    max_growth_steps,
    mra_project,
    mu_infinity_integral,
    parse_laurent,
    qmf_check,
    refinement_nullspace,
    sample_path,
    transfer_apply,
    transition_weights,
    tree_expectation,
    weighted_energy,
)


def cell(level, offset, coefficient=1):
    """The indicator of the triadic cell (C + offset) / 3**level, scaled."""
    return {"level": level, "half_scale": 0, "coeffs": {offset: Fraction(coefficient)}}


__all__ = [
    "Filter",
    "build_sequence",
    "cascade",
    "cascade_divergence",
    "cascade_divergence_transfer",
    "cell",
    "correlation",
    "energy_growth",
    "ergodicity_diagnostic",
    "fixed_point_residual",
    "inner",
    "iterate_to_invariant",
    "max_growth_steps",
    "mra_project",
    "mu_infinity_integral",
    "parse_laurent",
    "qmf_check",
    "refinement_nullspace",
    "sample_path",
    "transfer_apply",
    "transition_weights",
    "tree_expectation",
    "weighted_energy",
]
