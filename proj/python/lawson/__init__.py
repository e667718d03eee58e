"""Certified computations for the Lawson surfaces xi_{1,g}.

Values are returned as :class:`Disc` objects: an exact center together with
an upper bound for the distance to the true value.
"""

from ._lawson import (
    Disc,
    LawsonError,
    alpha3_exact,
    alphas,
    area_table,
    genus2_bound,
    ift_genus,
    mzv,
    mzv_closed_form,
    omega,
    optimize_genus2,
    run_cli,
    willmore_coefficients,
)

__all__ = [
    "Disc",
    "LawsonError",
    "alpha3_exact",
    "alphas",
    "area_table",
    "genus2_bound",
    "ift_genus",
    "mzv",
    "mzv_closed_form",
    "omega",
    "optimize_genus2",
    "run_cli",
    "willmore_coefficients",
]

__version__ = "0.1.0"
