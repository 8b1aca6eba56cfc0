"""Rayleigh-quotient upper bounds with two one-well trial families.

GaussianTrial  psi = e^{-alpha x^2}          (wrong e^{-c x^2} tail)
ExpSqrtTrial   psi = e^{-alpha sqrt(beta^2 + x^2)}  (correct e^{-c|x|} tail)

The kinetic term uses the |psi'|^2 form, which is variationally safe for
the kinked-but-continuous second family, and both derivatives are known
in closed form. Minimization is a derivative-free simplex over
log-parameters from a fixed ladder of starts, so results are
deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize as _nm_minimize

from .errors import NonNormalizable, OptimizerStalled
from .potential import Potential
from .quadrature import QuadratureGrid, build_grid, integrate

_NORM_FLOOR = 1e-280


@dataclass(frozen=True)
class GaussianTrial:
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError("alpha must be positive")

    def psi_squared(self, x):
        return np.exp(-2.0 * self.alpha * x * x)

    def kinetic_density(self, x):
        # |psi'|^2 = 4 alpha^2 x^2 psi^2
        return 4.0 * self.alpha**2 * x * x * self.psi_squared(x)

    def extent(self) -> float:
        """Radius beyond which psi^2 is below ~1e-17 of its peak."""
        return math.sqrt(20.0 / self.alpha)


@dataclass(frozen=True)
class ExpSqrtTrial:
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError("alpha must be positive")
        if not (self.beta >= 0.0):
            raise ValueError("beta must be nonnegative")

    def psi_squared(self, x):
        r = np.sqrt(self.beta**2 + x * x)
        # factor out the value at x=0 to keep the exponent well scaled
        return np.exp(-2.0 * self.alpha * (r - self.beta))

    def kinetic_density(self, x):
        # |psi'|^2 = alpha^2 x^2 / (beta^2 + x^2) psi^2
        r2 = self.beta**2 + x * x
        r2 = np.where(r2 == 0.0, 1.0, r2)
        return self.alpha**2 * x * x / r2 * self.psi_squared(x)

    def extent(self) -> float:
        return 20.0 / self.alpha + self.beta


_FAMILIES = {
    "gaussian": GaussianTrial,
    "expsqrt": ExpSqrtTrial,
    GaussianTrial: GaussianTrial,
    ExpSqrtTrial: ExpSqrtTrial,
}


def rayleigh_quotient(tf, p: Potential, g: QuadratureGrid) -> float:
    """(<psi'|psi'> + int V psi^2) / <psi|psi> on the grid.

    Raises:
        NonNormalizable: the norm underflows on the grid (domain too
            small or parameters too extreme).
    """
    x = g.nodes
    psi2 = tf.psi_squared(x)
    norm = integrate(g, psi2)
    if not (norm > _NORM_FLOOR):
        raise NonNormalizable(
            f"trial norm {norm:g} underflows on the grid (L={g.L:g})"
        )
    kinetic = integrate(g, tf.kinetic_density(x))
    potential_term = integrate(g, np.asarray(p.evaluate(x)) * psi2)
    return (kinetic + potential_term) / norm


@lru_cache(maxsize=32)
def _eval_grid(L: float, q: int) -> QuadratureGrid:
    P = min(4096, max(64, int(4.0 * L)))
    return build_grid(L, P, q)


def _grid_for(tf, p: Potential, g: QuadratureGrid) -> QuadratureGrid:
    """The caller's grid, enlarged when the trial extends past it.

    Weak coupling pushes the optimal parameters toward wide trial
    functions; truncating them would silently break the upper-bound
    property, so the evaluation domain follows the trial.
    """
    need = tf.extent()
    if need <= g.L:
        return g
    L = float(2.0 ** math.ceil(math.log2(need)))
    return _eval_grid(L, g.q)


_ALPHA_LADDER = (0.05, 0.2, 1.0, 5.0)
_BETA_LADDER = (0.2, 1.0, 5.0)


def minimize(tf_kind, p: Potential, g: QuadratureGrid):
    """Minimize the Rayleigh quotient over one trial family.

    Nelder-Mead over log-parameters, restarted from a fixed ladder of
    initial points; the best restart wins, ties broken by lexicographic
    parameters. Deterministic by construction.

    Returns:
        (trial instance at the optimum, energy).

    Raises:
        OptimizerStalled: no restart produced a usable minimum.
    """
    family = _FAMILIES.get(tf_kind)
    if family is None:
        raise ValueError(f"unknown trial family {tf_kind!r}")

    def objective(logparams):
        params = np.exp(logparams)
        if family is GaussianTrial:
            tf = GaussianTrial(float(params[0]))
        else:
            tf = ExpSqrtTrial(float(params[0]), float(params[1]))
        try:
            return rayleigh_quotient(tf, p, _grid_for(tf, p, g))
        except NonNormalizable:
            return 0.0  # flat ceiling; any bound state beats it

    if family is GaussianTrial:
        starts = [[math.log(a)] for a in _ALPHA_LADDER]
    else:
        starts = [
            [math.log(a), math.log(b)]
            for a in _ALPHA_LADDER
            for b in _BETA_LADDER
        ]
    best = None
    for x0 in starts:
        res = _nm_minimize(
            objective,
            np.asarray(x0),
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 400},
        )
        if not np.isfinite(res.fun):
            continue
        params = tuple(float(v) for v in np.exp(res.x))
        key = (res.fun, params)
        if best is None or key < best:
            best = key
    if best is None:
        raise OptimizerStalled("all simplex restarts failed to produce a value")
    value, params = best
    tf = GaussianTrial(*params) if family is GaussianTrial else ExpSqrtTrial(*params)
    return tf, float(value)


__all__ = [
    "GaussianTrial",
    "ExpSqrtTrial",
    "rayleigh_quotient",
    "minimize",
]
