"""The 13 measure families and the matrix wrappers they produce.

A family maps a graph and a normalized parameter p in [0, 1] to either a
node proximity matrix (kernel) or a node distance matrix.  The family name
determines the kind and how p is rescaled to the family's native parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricInput, MalformedDistance, NegativeDistance, NotFound

PROXIMITY = "proximity"
DISTANCE = "distance"

# Scaling rules from normalized p to the native parameter:
#   spectral: t = p * (1 - eps) / rho(A), the admissible walk interval
#   ratio:    t = c * p / (1 - p), inverse of t / (t + c)
#   identity: the parameter is used as-is (convex combination weight)
SPECTRAL = "spectral"
RATIO = "ratio"
IDENTITY = "identity"


@dataclass(frozen=True)
class MeasureFamily:
    name: str
    kind: str
    scaling: str


FAMILIES: dict[str, MeasureFamily] = {
    f.name: f
    for f in (
        MeasureFamily("pWalk", PROXIMITY, SPECTRAL),
        MeasureFamily("Walk", PROXIMITY, SPECTRAL),
        MeasureFamily("For", PROXIMITY, RATIO),
        MeasureFamily("logFor", PROXIMITY, RATIO),
        MeasureFamily("Comm", PROXIMITY, RATIO),
        MeasureFamily("logComm", PROXIMITY, RATIO),
        MeasureFamily("Heat", PROXIMITY, RATIO),
        MeasureFamily("logHeat", PROXIMITY, RATIO),
        MeasureFamily("SCT", PROXIMITY, RATIO),
        MeasureFamily("SCCT", PROXIMITY, RATIO),
        MeasureFamily("RSP", DISTANCE, RATIO),
        MeasureFamily("FE", DISTANCE, RATIO),
        MeasureFamily("SP-CT", DISTANCE, IDENTITY),
    )
}

FAMILY_NAMES = tuple(FAMILIES)


def family(name: str) -> MeasureFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise NotFound(f"unknown measure family: {name!r}") from None


@dataclass(frozen=True, eq=False)
class ProximityMatrix:
    """Symmetric node-similarity matrix produced by a proximity family."""

    matrix: np.ndarray
    family: str
    parameter: float | None = None

    @property
    def kind(self) -> str:
        return PROXIMITY


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric zero-diagonal nonnegative node-distance matrix."""

    matrix: np.ndarray
    family: str
    parameter: float | None = None

    @property
    def kind(self) -> str:
        return DISTANCE


def proximity_matrix(matrix: np.ndarray, family: str, parameter: float | None = None,
                     tol: float = 1e-8) -> ProximityMatrix:
    """Wrap a kernel matrix, enforcing symmetry within ``tol``."""
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise AsymmetricInput(f"kernel matrix must be square, got shape {m.shape}")
    if not np.allclose(m, m.T, rtol=0.0, atol=tol, equal_nan=True):
        raise AsymmetricInput(f"{family} kernel asymmetric beyond {tol:g}")
    sym = (m + m.T) / 2.0
    sym.setflags(write=False)
    return ProximityMatrix(sym, family, parameter)


def distance_matrix(matrix: np.ndarray, family: str, parameter: float | None = None,
                    sym_tol: float = 1e-8, neg_tol: float = -1e-10) -> DistanceMatrix:
    """Wrap a distance matrix: symmetrize, zero the diagonal, clamp tiny negatives.

    Entries below ``neg_tol`` raise :class:`NegativeDistance`; entries in
    [neg_tol, 0) are clamped to 0.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MalformedDistance(f"distance matrix must be square, got shape {m.shape}")
    if not np.allclose(m, m.T, rtol=0.0, atol=sym_tol, equal_nan=True):
        raise MalformedDistance(f"{family} distance asymmetric beyond {sym_tol:g}")
    diag = np.abs(np.diagonal(m))
    if diag.size and diag.max() > sym_tol:
        raise MalformedDistance(f"{family} distance has nonzero diagonal ({diag.max():g})")
    sym = (m + m.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    low = sym.min() if sym.size else 0.0
    if low < neg_tol:
        i, j = np.unravel_index(int(np.argmin(sym)), sym.shape)
        raise NegativeDistance(f"{family} distance ({i},{j}) = {low:g} below {neg_tol:g}")
    np.clip(sym, 0.0, None, out=sym)
    sym.setflags(write=False)
    return DistanceMatrix(sym, family, parameter)
