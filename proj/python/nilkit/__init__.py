"""Exact computation in finitely generated nilpotent groups."""

from fractions import Fraction

from . import _nilkit
from ._nilkit import (
    Group,
    InconsistentTrace,
    InvalidInput,
    InvalidParameter,
    MalformedCommutator,
    MissingAssignment,
    NilkitError,
    OutOfRange,
    PreconditionViolation,
    ResourceLimit,
    SyntaxError,
    UnsupportedBackend,
    abelian_rank,
    acceptance_suites,
    basic_commutators,
    burnside_basis,
    check_chain,
    collect,
    collected_exponents,
    frattini,
    invariant_factors,
    lower_central_series,
    minimal_witness,
    power_set,
    product_set,
    progression,
    run_acceptance,
    witt_count,
)


def doubling_constant(group, a):
    """|A^2| / |A| as a Fraction."""
    num, den = _nilkit.doubling_constant(group, a)
    return Fraction(num, den)


__all__ = [name for name in dir() if not name.startswith("_") and name != "Fraction"]
