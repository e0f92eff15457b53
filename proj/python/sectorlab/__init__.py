"""Weighted geometric means and operator entropies of accretive matrices."""

import json

from ._core import (
    SectorlabError,
    arithmetic_mean,
    drury_mean,
    geometric_mean,
    harmonic_mean,
    property_ids,
    quadrature_rule,
    relative_entropy,
    tsallis_entropy,
    tsallis_from_mean,
)

__all__ = [
    "SectorlabError",
    "arithmetic_mean",
    "drury_mean",
    "geometric_mean",
    "harmonic_mean",
    "property_ids",
    "quadrature_rule",
    "relative_entropy",
    "tsallis_entropy",
    "tsallis_from_mean",
    "verify",
]


def verify(dim=3, trials=200, seed=0, angle=0.4, lambdas=(0.1, 0.5, 0.9), only=(), threads=1):
    """Run the property checks; returns the report document as a dict.

    angle is a fraction of pi/2.
    """
    from ._core import verify_json

    return json.loads(verify_json(dim, trials, seed, angle, list(lambdas), list(only), threads))
