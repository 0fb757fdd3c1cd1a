"""Hermite-Hadamard inequality checks for (h-(alpha,m))-convex functions."""

from ._hhc import (  # noqa: F401
    ConvergenceError,
    DomainError,
    Error,
    Expression,
    ParseError,
    PreconditionError,
    UsageError,
    __version__,
    beta,
    bound,
    check_membership,
    integrate,
    kernel_moment,
    mean,
    mean_chain,
    proposition,
    quad,
    run_cli,
)
