"""High-precision recurrence coefficients of semi-classical q-orthogonal polynomials.

Numbers cross the boundary as decimal strings so no precision is lost; use
``as_floats`` for quick plotting.
"""

from ._qorth import (
    DegenerateK2,
    QorthError,
    ValidationError,
    moments,
    phi21,
    potential,
    qpoch_inf,
    recurrence,
    run,
    verify,
)

__all__ = [
    "DegenerateK2",
    "QorthError",
    "ValidationError",
    "as_floats",
    "moments",
    "phi21",
    "potential",
    "qpoch_inf",
    "recurrence",
    "run",
    "verify",
]


def as_floats(values):
    return [float(v) for v in values]
