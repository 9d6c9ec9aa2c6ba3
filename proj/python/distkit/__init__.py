"""Probability distributions, fitting, mixtures and density estimation."""

from ._distkit import (
    Distribution,
    DistkitError,
    distribution,
    em,
    fit,
    fit_mvnormal,
    from_json,
    histogram,
    kde,
    mixture,
)

__all__ = [
    "Distribution",
    "DistkitError",
    "distribution",
    "em",
    "fit",
    "fit_mvnormal",
    "from_json",
    "histogram",
    "kde",
    "mixture",
]
