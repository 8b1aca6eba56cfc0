"""Short-range attractive 1D potentials V(x) = -s*shape(x).

The strength s is factored out so that it can serve as the expansion
parameter of the weak-coupling series; shape(x) is nonnegative, even for
the built-in families, and decays fast enough that all moment and chain
integrals used elsewhere converge.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TailNotDecayed

#: candidate truncation radii probed by support_radius
_RADIUS_LADDER = (5.0, 10.0, 20.0, 40.0)


@dataclass(frozen=True)
class Potential:
    """A strength-factored attractive well.

    Args:
        kind: one of "square_well", "poschl_teller", "gaussian", "tabulated".
        s: nonnegative strength; V(x) = -s*shape(x).
        a: halfwidth of the square well (ignored by other kinds).
        sample_x: strictly increasing abscissas (tabulated kind only).
        sample_shape: nonnegative shape samples aligned with sample_x.
    """

    kind: str
    s: float
    a: float = 1.0
    sample_x: tuple = field(default_factory=tuple)
    sample_shape: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in ("square_well", "poschl_teller", "gaussian", "tabulated"):
            raise ValueError(f"unknown potential kind: {self.kind!r}")
        if not (self.s >= 0.0):
            raise ValueError("strength s must be nonnegative")
        if self.kind == "square_well" and not (self.a > 0.0):
            raise ValueError("square well halfwidth must be positive")
        if self.kind == "tabulated":
            xs = np.asarray(self.sample_x, dtype=float)
            vs = np.asarray(self.sample_shape, dtype=float)
            if xs.ndim != 1 or xs.size < 2 or xs.shape != vs.shape:
                raise ValueError("tabulated potential needs >= 2 aligned samples")
            if not np.all(np.diff(xs) > 0):
                raise ValueError("tabulated abscissas must be strictly increasing")
            if np.any(vs < 0):
                raise ValueError("tabulated shape samples must be nonnegative")

    # ---- construction helpers -------------------------------------------

    @staticmethod
    def square_well(s: float, a: float = 1.0) -> "Potential":
        return Potential("square_well", s, a=a)

    @staticmethod
    def poschl_teller(s: float) -> "Potential":
        return Potential("poschl_teller", s)

    @staticmethod
    def gaussian(s: float) -> "Potential":
        return Potential("gaussian", s)

    @staticmethod
    def tabulated(sample_x, sample_values, s: float = 1.0) -> "Potential":
        """Build from (x, V) samples with V <= 0; shape = -V."""
        vs = np.asarray(sample_values, dtype=float)
        if np.any(vs > 0):
            raise ValueError("tabulated potential values must be <= 0")
        return Potential(
            "tabulated",
            s,
            sample_x=tuple(np.asarray(sample_x, dtype=float)),
            sample_shape=tuple(-vs),
        )

    # ---- evaluation ------------------------------------------------------

    def shape(self, x):
        """Dimensionless well profile, >= 0, peak ~1 for built-in kinds."""
        x = np.asarray(x, dtype=float)
        if self.kind == "square_well":
            return np.where(np.abs(x) <= self.a, 1.0, 0.0)
        if self.kind == "poschl_teller":
            # sech^2 written via e^{-2|x|} so large |x| underflows to 0
            # instead of overflowing cosh
            t = np.exp(-2.0 * np.abs(x))
            return 4.0 * t / (1.0 + t) ** 2
        if self.kind == "gaussian":
            return np.exp(-x * x)
        xs = np.asarray(self.sample_x)
        vs = np.asarray(self.sample_shape)
        return np.interp(x, xs, vs, left=0.0, right=0.0)

    def evaluate(self, x):
        """V(x) = -s*shape(x); scalar in, scalar out; arrays pass through."""
        v = -self.s * self.shape(x)
        if np.isscalar(x) or np.ndim(x) == 0:
            return float(v)
        return v

    def shape_max(self) -> float:
        """Peak of the shape function (attained at x=0 for built-ins)."""
        if self.kind == "tabulated":
            return float(np.max(self.sample_shape)) if self.sample_shape else 0.0
        return 1.0

    def is_even(self) -> bool:
        return self.kind != "tabulated"

    def support_radius(self, eps_tail: float = 1e-12) -> float:
        """Smallest ladder radius where the shape has decayed below eps_tail.

        Relative to the peak value. Tabulated potentials are compactly
        supported by construction and return their outermost abscissa.
        """
        if not (0.0 < eps_tail < 1.0):
            raise ValueError("eps_tail must lie in (0, 1)")
        if self.kind == "tabulated":
            return float(max(abs(self.sample_x[0]), abs(self.sample_x[-1])))
        peak = self.shape_max()
        for radius in _RADIUS_LADDER:
            if float(self.shape(radius)) / peak < eps_tail:
                return radius
        raise TailNotDecayed(
            f"shape of kind {self.kind!r} has not decayed below {eps_tail:g} "
            f"within radius {_RADIUS_LADDER[-1]:g}"
        )


__all__ = ["Potential"]
