"""Smooth monotone maps and finite-difference conformality checks.

Smooth automorphisms use the same null-coordinate convention as the exact
layer: ``F(x, t) = ((phi(u) + psi(v)) / 2, (phi(u) - psi(v)) / 2)`` for the
proper kind, with ``u = x + t`` and ``v = x - t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .flatcone import DirectionMismatch, Kind

ETA = np.diag([1.0, -1.0])  # (x, t) ordering
# relative noise level of a Richardson-extrapolated difference at unit scale
NOISE_FLOOR = 1e-9


class NoConvergence(RuntimeError):
    pass


class DegenerateJacobian(ValueError):
    pass


@dataclass(frozen=True)
class SmoothMonotoneMap:
    """``affine``: ``a x + b``;  ``cubicplus``: ``a (x - b)^3 + c0 (x - b) + d``."""

    family: str
    a: float
    b: float = 0.0
    c0: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        if self.family == "affine":
            if self.a == 0:
                raise ValueError("affine map needs a != 0")
        elif self.family == "cubicplus":
            if not (self.a > 0 and self.c0 >= 0):
                raise ValueError("cubicplus needs a > 0 and c0 >= 0")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def increasing(self) -> bool:
        return self.family == "cubicplus" or self.a > 0

    def __call__(self, x):
        if self.family == "affine":
            return self.a * x + self.b
        s = x - self.b
        return self.a * s**3 + self.c0 * s + self.d

    def deriv(self, x):
        if self.family == "affine":
            return self.a + 0.0 * x
        s = x - self.b
        return 3 * self.a * s**2 + self.c0


def Affine(a, b=0.0) -> SmoothMonotoneMap:
    return SmoothMonotoneMap("affine", float(a), float(b))


def CubicPlus(a, b=0.0, c0=0.0, d=0.0) -> SmoothMonotoneMap:
    return SmoothMonotoneMap("cubicplus", float(a), float(b), float(c0), float(d))


def sm_eval_deriv(f: SmoothMonotoneMap, x: float) -> tuple[float, float]:
    return f(x), f.deriv(x)


def sm_inverse(f: SmoothMonotoneMap, y: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Bracketed bisection for ``f(x) = y``; ``tol`` bounds both residual and bracket."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sign = 1.0 if f.increasing else -1.0
    g = lambda x: sign * (f(x) - y)  # noqa: E731
    lo, hi = -1.0, 1.0
    while g(lo) > 0:
        lo *= 2
        if lo < -1e300:
            raise NoConvergence("could not bracket the root from below")
    while g(hi) < 0:
        hi *= 2
        if hi > 1e300:
            raise NoConvergence("could not bracket the root from above")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r = g(mid)
        # flat spots (the cube at 0) need the bracket to shrink, not just |r|
        if (abs(r) <= tol and hi - lo <= tol * max(1.0, abs(mid))) or mid in (lo, hi):
            return mid
        if r < 0:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(f"bisection did not reach |f(x) - y| <= {tol} in {max_iter} steps")


@dataclass(frozen=True)
class SmoothAutomorphism:
    kind: Kind
    phi: SmoothMonotoneMap
    psi: SmoothMonotoneMap

    def __post_init__(self):
        if self.phi.increasing != self.psi.increasing:
            raise DirectionMismatch("phi' psi' > 0 fails: one map increases, the other decreases")
        if self.phi.increasing != (self.kind is Kind.PROPER):
            raise DirectionMismatch(f"{self.kind.value} kind does not match the map directions")

    def __call__(self, x, t):
        u, v = x + t, x - t
        if self.kind is Kind.PROPER:
            U, V = self.phi(u), self.psi(v)
        else:
            U, V = self.phi(v), self.psi(u)
        return np.array([(U + V) / 2, (U - V) / 2])

    def inverse(self, X, T, tol: float = 1e-300):
        U, V = X + T, X - T
        a, b = sm_inverse(self.phi, U, tol), sm_inverse(self.psi, V, tol)
        if self.kind is Kind.PROPER:
            u, v = a, b
        else:
            v, u = a, b
        return np.array([(u + v) / 2, (u - v) / 2])


def _central(F, p, h):
    x, t = p
    dx = (np.asarray(F(x + h, t)) - np.asarray(F(x - h, t))) / (2 * h)
    dt = (np.asarray(F(x, t + h)) - np.asarray(F(x, t - h))) / (2 * h)
    return np.column_stack([dx, dt])


def jacobian(F, p, h: float = 1e-4) -> np.ndarray:
    """``[[X_x, X_t], [T_x, T_t]]`` by central differences plus one Richardson step."""
    if h <= 0:
        raise ValueError("h must be positive")
    return (4 * _central(F, p, h / 2) - _central(F, p, h)) / 3


@dataclass(frozen=True)
class ConformalReport:
    lam: float
    defect: float
    null_preserved: bool

    def verdict(self, tol: float = 1e-6) -> str:
        return "conformal" if self.defect < tol and self.lam > 0 and self.null_preserved else "not_conformal"

    def to_json(self, tol: float = 1e-6) -> dict:
        return {"lambda": self.lam, "defect": self.defect,
                "null_preserved": self.null_preserved, "verdict": self.verdict(tol)}


def conformal_defect(F, p, h: float = 1e-4) -> ConformalReport:
    """Compare ``J^T eta J`` with ``lambda eta`` at ``p``."""
    J = jacobian(F, p, h)
    if abs(np.linalg.det(J)) < 1e-300:
        raise DegenerateJacobian(f"Jacobian is singular at {tuple(p)}")
    G = J.T @ ETA @ J
    lam = 0.5 * (G[0, 0] / ETA[0, 0] + G[1, 1] / ETA[1, 1])
    defect = float(np.max(np.abs(G - lam * ETA)) / abs(lam)) if lam else float("inf")
    scale = abs(lam) * 2
    floor = max(defect, NOISE_FLOOR)
    null_ok = all(abs(w @ ETA @ w) <= floor * scale for w in (J @ [1.0, 1.0], J @ [1.0, -1.0]))
    return ConformalReport(float(lam), defect, bool(null_ok))


def wave_residual(F, p, h: float = 1e-3) -> np.ndarray:
    """``X_tt - X_xx`` and ``T_tt - T_xx`` by five-point second differences."""
    x, t = p

    def second(shift):
        c = (-1, 16, -30, 16, -1)
        return sum(w * np.asarray(F(*shift(k * h))) for w, k in zip(c, (-2, -1, 0, 1, 2))) / (12 * h * h)

    return second(lambda s: (x, t + s)) - second(lambda s: (x + s, t))


def inverse_diagonal_slope(F: SmoothAutomorphism, h: float = 1e-10, at=(0.0, 0.0)) -> float:
    """Central-difference ``dX/dx`` of ``F^-1`` along the x-axis at ``at``."""
    x, t = at
    X0, T0 = F(x, t)
    plus = F.inverse(X0 + h, T0)
    minus = F.inverse(X0 - h, T0)
    return float((plus[0] - minus[0]) / (2 * h))


# -- JSON -------------------------------------------------------------------

def smooth_to_json(f: SmoothMonotoneMap) -> dict:
    if f.family == "affine":
        return {"family": "affine", "a": f.a, "b": f.b}
    return {"family": "cubicplus", "a": f.a, "b": f.b, "c0": f.c0, "d": f.d}


def smooth_from_json(obj: dict) -> SmoothMonotoneMap:
    fam = obj["family"]
    keys = ("a", "b") if fam == "affine" else ("a", "b", "c0", "d")
    return SmoothMonotoneMap(fam, *(float(obj.get(k, 0.0)) for k in keys))


def smooth_auto_to_json(F: SmoothAutomorphism) -> dict:
    return {"kind": F.kind.value, "phi": smooth_to_json(F.phi), "psi": smooth_to_json(F.psi)}


def smooth_auto_from_json(obj: dict) -> SmoothAutomorphism:
    return SmoothAutomorphism(Kind(obj["kind"]), smooth_from_json(obj["phi"]), smooth_from_json(obj["psi"]))
