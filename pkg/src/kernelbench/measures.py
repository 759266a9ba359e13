"""Kernel and distance constructions for the 13 measure families.

Plain kernels: random-walk resolvent (I - tA)^-1, regularized Laplacian
(I + tL)^-1, communicability exp(tA), heat exp(-tL).  Logarithmic variants
take the elementwise ln of a strictly positive kernel.  Commute-time and
corrected commute-time kernels feed an elementwise sigmoid (SCT, SCCT).
Randomized-shortest-path and free-energy dissimilarities share one solver
pipeline, and SP-CT blends shortest-path with resistance distances.

:class:`FamilyEvaluator` caches the per-graph spectral work (eigensystems,
pseudoinverse, shortest paths) so sweeping a parameter grid only pays for
the per-parameter recombination.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import (
    DegenerateKernel,
    Disconnected,
    NonPositiveEntry,
    NumericalOverflow,
    ParameterOutOfRange,
    ZeroDegree,
)
from .families import (
    DISTANCE,
    IDENTITY,
    RATIO,
    SPECTRAL,
    DistanceMatrix,
    ProximityMatrix,
    distance_matrix,
    family,
    proximity_matrix,
)
from .graph import Graph, is_connected, laplacian, shortest_path_matrix
from .spectral import SymmetricEigen, solve_linear, spectral_apply, sym_eigen

# Walk kernels stay this fraction inside the open interval (0, 1/rho).
WALK_MARGIN = 1e-4

# exp(x) overflows float64 just above x = 709.
EXP_MAX = 700.0

_LOG_NAMES = {"pWalk": "Walk", "For": "logFor", "Comm": "logComm", "Heat": "logHeat"}


def _spectral_radius(eigen: SymmetricEigen) -> float:
    values = eigen.values
    if values.size == 0:
        return 0.0
    return float(max(abs(values[0]), abs(values[-1])))


def _require_positive(t: float, name: str) -> None:
    if not (t > 0.0):
        raise ParameterOutOfRange(f"{name} needs t > 0, got {t!r}")


def _pwalk_from_eigen(eigen: SymmetricEigen, t: float) -> ProximityMatrix:
    rho = _spectral_radius(eigen)
    if t <= 0.0 or (rho > 0.0 and t >= 1.0 / rho):
        raise ParameterOutOfRange(f"pWalk needs 0 < t < 1/rho = {1.0 / rho if rho else np.inf:g}")
    return proximity_matrix(spectral_apply(eigen, 1.0 / (1.0 - t * eigen.values)), "pWalk", t)


def _forest_from_eigen(eigen: SymmetricEigen, t: float) -> ProximityMatrix:
    _require_positive(t, "For")
    return proximity_matrix(spectral_apply(eigen, 1.0 / (1.0 + t * eigen.values)), "For", t)


def _comm_from_eigen(eigen: SymmetricEigen, t: float) -> ProximityMatrix:
    _require_positive(t, "Comm")
    top = t * float(eigen.values[-1]) if eigen.values.size else 0.0
    if top > EXP_MAX:
        raise NumericalOverflow(f"exp({top:g}) exceeds float64 range")
    return proximity_matrix(spectral_apply(eigen, np.exp(t * eigen.values)), "Comm", t)


def _heat_from_eigen(eigen: SymmetricEigen, t: float) -> ProximityMatrix:
    _require_positive(t, "Heat")
    return proximity_matrix(spectral_apply(eigen, np.exp(-t * eigen.values)), "Heat", t)


def _log_comm_from_eigen(eigen: SymmetricEigen, t: float) -> ProximityMatrix:
    # ln exp(tA) computed in a shifted domain so large t cannot overflow:
    # exp(tA) = e^shift * Q exp(t Lambda - shift) Q^T with shift = t lambda_max.
    _require_positive(t, "logComm")
    shift = t * float(eigen.values[-1]) if eigen.values.size else 0.0
    scaled = spectral_apply(eigen, np.exp(t * eigen.values - shift))
    low = scaled.min() if scaled.size else 1.0
    if low <= 0.0:
        i, j = np.unravel_index(int(np.argmin(scaled)), scaled.shape)
        raise NonPositiveEntry(f"logComm entry ({i},{j}) = {low:g} * e^{shift:g} is not positive")
    return proximity_matrix(np.log(scaled) + shift, "logComm", t)


def log_kernel(kernel: ProximityMatrix) -> ProximityMatrix:
    """Elementwise natural log of a strictly positive kernel."""
    m = kernel.matrix
    low = m.min() if m.size else 1.0
    if low <= 0.0:
        i, j = np.unravel_index(int(np.argmin(m)), m.shape)
        raise NonPositiveEntry(f"{kernel.family} entry ({i},{j}) = {low:g} is not positive")
    name = _LOG_NAMES.get(kernel.family, f"log{kernel.family}")
    return proximity_matrix(np.log(m), name, kernel.parameter)


def _stable_sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _sigmoid_kernel(base: np.ndarray, sigma: float, t: float, name: str) -> ProximityMatrix:
    _require_positive(t, name)
    if not (sigma > 0.0):
        raise DegenerateKernel(f"{name}: base kernel is constant (sigma = {sigma:g})")
    return proximity_matrix(_stable_sigmoid(t * base / sigma), name, t)


class FamilyEvaluator:
    """Evaluates measure families on one graph, caching shared spectral state.

    Parameters
    ----------
    g : Graph
        Connected graph to evaluate on.
    constants : dict, optional
        Per-family scaling constants c for the t = c*p/(1-p) map; default 1.
    """

    def __init__(self, g: Graph, constants: dict[str, float] | None = None):
        if not is_connected(g):
            raise Disconnected("measure families need a connected graph")
        self.graph = g
        self.constants = dict(constants or {})

    # -- cached per-graph state ------------------------------------------

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.graph.adjacency.sum(axis=1)

    @cached_property
    def adjacency_eigen(self) -> SymmetricEigen:
        return sym_eigen(self.graph.adjacency)

    @cached_property
    def laplacian_eigen(self) -> SymmetricEigen:
        return sym_eigen(laplacian(self.graph))

    @cached_property
    def spectral_radius(self) -> float:
        return _spectral_radius(self.adjacency_eigen)

    @cached_property
    def lap_pinv(self) -> np.ndarray:
        eigen = self.laplacian_eigen
        values = eigen.values
        n = values.shape[0]
        cutoff = n * float(values[-1]) * 1e-12 if n else 0.0
        near_zero = values <= cutoff
        if int(near_zero.sum()) != 1:
            raise Disconnected("Laplacian pseudoinverse found multiple zero modes")
        inverted = np.where(near_zero, 0.0, 1.0 / np.where(near_zero, 1.0, values))
        return spectral_apply(eigen, inverted)

    @cached_property
    def ct_sigma(self) -> float:
        return float(self.lap_pinv.std())

    @cached_property
    def cct_base(self) -> np.ndarray:
        a = self.graph.adjacency
        d = self.degrees
        if np.any(d <= 0.0):
            raise ZeroDegree("corrected commute time needs all degrees positive")
        volume = float(d.sum())
        inv_sqrt = 1.0 / np.sqrt(d)
        m = (a - np.outer(d, d) / volume) * np.outer(inv_sqrt, inv_sqrt)
        core = m @ solve_linear(np.eye(len(d)) - m, m)
        scaled = core * np.outer(inv_sqrt, inv_sqrt)
        row_mean = scaled.mean(axis=1)
        centered = scaled - row_mean[:, None] - row_mean[None, :] + scaled.mean()
        return (centered + centered.T) / 2.0

    @cached_property
    def cct_sigma(self) -> float:
        return float(self.cct_base.std())

    @cached_property
    def sp_matrix(self) -> np.ndarray:
        return shortest_path_matrix(self.graph).matrix

    @cached_property
    def resistance_matrix(self) -> np.ndarray:
        lp = self.lap_pinv
        diag = np.diagonal(lp)
        r = diag[:, None] + diag[None, :] - 2.0 * lp
        np.fill_diagonal(r, 0.0)
        return np.clip((r + r.T) / 2.0, 0.0, None)

    @cached_property
    def edge_costs(self) -> np.ndarray:
        # Traversal cost on edge support only: 1/w for weighted edges,
        # 1 for unit weights, 0 elsewhere (never read off-support).
        a = self.graph.adjacency
        return np.where(a > 0.0, 1.0 / np.where(a > 0.0, a, 1.0), 0.0)

    # -- family dispatch ---------------------------------------------------

    def raw_parameter(self, name: str, p: float) -> float:
        """Map a normalized parameter p in [0, 1] to the family's native one."""
        fam = family(name)
        if not (0.0 <= p <= 1.0) or not np.isfinite(p):
            raise ParameterOutOfRange(f"normalized parameter must be in [0, 1], got {p!r}")
        if fam.scaling == SPECTRAL:
            if p == 0.0:
                raise ParameterOutOfRange(f"{name}: p = 0 leaves the open interval (0, 1/rho)")
            rho = self.spectral_radius
            return p * (1.0 - WALK_MARGIN) / rho if rho > 0.0 else p
        if fam.scaling == RATIO:
            if p == 0.0 or p == 1.0:
                raise ParameterOutOfRange(f"{name}: p on the open interval (0, 1) only")
            return self.constants.get(name, 1.0) * p / (1.0 - p)
        return p

    def matrix(self, name: str, p: float) -> ProximityMatrix | DistanceMatrix:
        """Evaluate family ``name`` at normalized parameter ``p``."""
        fam = family(name)
        t = self.raw_parameter(name, p)
        if name == "pWalk":
            return _pwalk_from_eigen(self.adjacency_eigen, t)
        if name == "Walk":
            return log_kernel(_pwalk_from_eigen(self.adjacency_eigen, t))
        if name == "For":
            return _forest_from_eigen(self.laplacian_eigen, t)
        if name == "logFor":
            return log_kernel(_forest_from_eigen(self.laplacian_eigen, t))
        if name == "Comm":
            return _comm_from_eigen(self.adjacency_eigen, t)
        if name == "logComm":
            return _log_comm_from_eigen(self.adjacency_eigen, t)
        if name == "Heat":
            return _heat_from_eigen(self.laplacian_eigen, t)
        if name == "logHeat":
            return log_kernel(_heat_from_eigen(self.laplacian_eigen, t))
        if name == "SCT":
            return _sigmoid_kernel(self.lap_pinv, self.ct_sigma, t, "SCT")
        if name == "SCCT":
            return _sigmoid_kernel(self.cct_base, self.cct_sigma, t, "SCCT")
        if name in ("RSP", "FE"):
            return self._rsp_fe(t, name)
        if name == "SP-CT":
            blend = (1.0 - p) * self.sp_matrix + p * self.resistance_matrix
            return distance_matrix(blend, "SP-CT", p)
        raise AssertionError(f"unhandled family {fam.name}")  # pragma: no cover

    def _rsp_fe(self, beta: float, variant: str) -> DistanceMatrix:
        _require_positive(beta, variant)
        d = self.degrees
        if np.any(d <= 0.0):
            raise ZeroDegree(f"{variant} needs all degrees positive")
        a = self.graph.adjacency
        n = a.shape[0]
        p_ref = a / d[:, None]
        costs = self.edge_costs
        w = p_ref * np.exp(-beta * costs)
        w[a == 0.0] = 0.0
        z = solve_linear(np.eye(n) - w, np.eye(n))
        low = z.min() if z.size else 1.0
        if low <= 0.0:
            raise NonPositiveEntry(
                f"{variant}: fundamental matrix entry {low:g} is not positive "
                "(beta too small or too large for this graph)"
            )
        if variant == "RSP":
            s = (z @ (costs * w) @ z) / z
            cbar = s - np.diagonal(s)[None, :]
            delta = (cbar + cbar.T) / 2.0
        else:
            zh = z / np.diagonal(z)[None, :]
            phi = -np.log(zh) / beta
            delta = (phi + phi.T) / 2.0
        np.fill_diagonal(delta, 0.0)
        return distance_matrix(delta, variant, beta)


# -- one-shot spec operations -------------------------------------------------

def pwalk_kernel(g: Graph, t: float) -> ProximityMatrix:
    """Random-walk resolvent kernel (I - tA)^-1, 0 < t < 1/rho(A)."""
    return _pwalk_from_eigen(sym_eigen(g.adjacency), t)


def forest_kernel(g: Graph, t: float) -> ProximityMatrix:
    """Regularized Laplacian kernel (I + tL)^-1, t > 0; rows sum to 1."""
    return _forest_from_eigen(sym_eigen(laplacian(g)), t)


def comm_kernel(g: Graph, t: float) -> ProximityMatrix:
    """Communicability kernel exp(tA), t > 0."""
    return _comm_from_eigen(sym_eigen(g.adjacency), t)


def heat_kernel(g: Graph, t: float) -> ProximityMatrix:
    """Heat kernel exp(-tL), t > 0; rows sum to 1."""
    return _heat_from_eigen(sym_eigen(laplacian(g)), t)


def ct_kernel(g: Graph) -> ProximityMatrix:
    """Commute-time kernel: pseudoinverse of the Laplacian."""
    return proximity_matrix(FamilyEvaluator(g).lap_pinv, "CT")


def resistance_distance(g: Graph) -> DistanceMatrix:
    """Effective resistance r_ij = L+_ii + L+_jj - 2 L+_ij (a metric)."""
    return distance_matrix(FamilyEvaluator(g).resistance_matrix, "resistance")


def spct_distance(g: Graph, lam: float) -> DistanceMatrix:
    """Convex blend (1-lam) * shortest-path + lam * resistance distances."""
    if not (0.0 <= lam <= 1.0):
        raise ParameterOutOfRange(f"SP-CT needs lambda in [0, 1], got {lam!r}")
    return FamilyEvaluator(g).matrix("SP-CT", lam)


def sct_scct_kernel(g: Graph, t: float, corrected: bool) -> ProximityMatrix:
    """Sigmoid (corrected) commute-time kernel: 1/(1 + exp(-t k_ij / sigma)).

    sigma is the standard deviation over all N^2 entries of the base kernel.
    """
    ev = FamilyEvaluator(g)
    if corrected:
        return _sigmoid_kernel(ev.cct_base, ev.cct_sigma, t, "SCCT")
    return _sigmoid_kernel(ev.lap_pinv, ev.ct_sigma, t, "SCT")


def rsp_fe_distance(g: Graph, beta: float, variant: str) -> DistanceMatrix:
    """Randomized-shortest-path or free-energy dissimilarity at inverse
    temperature beta > 0."""
    if variant not in ("RSP", "FE"):
        raise ParameterOutOfRange(f"variant must be RSP or FE, got {variant!r}")
    return FamilyEvaluator(g)._rsp_fe(beta, variant)


def family_matrix(g: Graph, name: str, p: float,
                  constants: dict[str, float] | None = None):
    """Evaluate one family at normalized parameter p on a connected graph."""
    return FamilyEvaluator(g, constants).matrix(name, p)
