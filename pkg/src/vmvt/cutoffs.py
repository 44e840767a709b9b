"""Smooth bump, periodic cutoff, its Fourier transform and the kernel G.

The bump is fixed once and for all:

    phi(x) = exp(1/3 - 1/(4 - x^2))   for |x| < 2,   0 otherwise.

It is even, supported on [-2,2], and >= 1 on [-1,1] with equality exactly at
x = +-1 (since 1/3 - 1/(4-1) = 0).  The 1-periodic cutoff of width scale
N^{-A} is

    Psi_A(beta; N) = sum_j phi((beta + j) / N^{-A}),

and the y-averaged kernel is

    G(t, a) = N^{-1} sum_{y=1}^{N} Psi_{u-eps}(t - degree * y * a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .phases import eval_K

PHI_SUPPORT = 2.0
# number of uniform nodes on [-2,2] for the spectrally-exact nodal transform;
# aliasing error involves phi_hat at frequency ~ NODES/4, i.e. far below 1e-16
_NODES = 4096


def phi(x):
    """The fixed smooth bump; accepts scalars or arrays."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    inside = np.abs(x) < PHI_SUPPORT
    xi = x[inside]
    out[inside] = np.exp(1.0 / 3.0 - 1.0 / (4.0 - xi * xi))
    if out.ndim == 0:
        return float(out)
    return out


PHI_AT_ZERO = math.exp(1.0 / 12.0)  # phi(0) = exp(1/3 - 1/4)


@dataclass(frozen=True)
class CutoffConfig:
    """Scale parameters shared by the cutoff-based kernels."""

    A: float
    N: int
    eps: float = 0.05

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError("A must be > 0")
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if not 0 < self.eps < 0.5:
            raise ValueError("eps must lie in (0, 1/2)")


def psi(A: float, beta, N: int) -> float:
    """Periodic cutoff Psi_A(beta; N) = sum_j phi((beta + j) * N^A).

    Only the j with |beta + j| <= 2 N^{-A} contribute; 1-periodic in beta.
    """
    if A <= 0:
        raise ValueError("A must be > 0")
    if N < 2:
        raise ValueError("N must be >= 2")
    width = float(N) ** (-A)
    b = float(beta)
    b -= math.floor(b)  # reduce to [0,1)
    total = 0.0
    # per period at most the two integers nearest beta can matter unless the
    # support 2*width exceeds 1/2, in which case widen the j range
    reach = int(math.ceil(2.0 * width)) + 1
    for j in range(-reach, reach + 1):
        t = (b + j) / width
        if abs(t) < PHI_SUPPORT:
            total += math.exp(1.0 / 3.0 - 1.0 / (4.0 - t * t))
    return total


def _nodal_grid():
    # midpoint nodes on [-2, 2]
    h = 2.0 * PHI_SUPPORT / _NODES
    x = -PHI_SUPPORT + h * (np.arange(_NODES) + 0.5)
    return x, h


_GRID_X, _GRID_H = _nodal_grid()
_GRID_PHI = phi(_GRID_X)


def phi_hat_nodal(xi) -> np.ndarray:
    """hat(phi)(xi) = int phi(x) e(-x xi) dx via the periodized midpoint rule.

    phi is smooth with all derivatives vanishing at the support endpoints, so
    the midpoint rule on [-2,2] is spectrally accurate; with 4096 nodes the
    aliasing error is far below double precision for |xi| <= ~500.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    # phi even => transform real and even
    out = np.empty_like(xi)
    chunk = 256
    for i in range(0, len(xi), chunk):
        xs = xi[i:i + chunk]
        out[i:i + chunk] = _GRID_H * (
            np.cos(2.0 * math.pi * np.outer(xs, _GRID_X)) @ _GRID_PHI
        )
    return out


def phi_hat_quad(xi: float, epsabs: float = 1e-13) -> float:
    """Reference evaluation by adaptive quadrature (QAWO oscillatory rule)."""
    xi = float(xi)
    if xi == 0.0:
        val, _ = integrate.quad(phi, -PHI_SUPPORT, PHI_SUPPORT,
                                epsabs=epsabs, limit=400)
        return val
    val, _ = integrate.quad(phi, -PHI_SUPPORT, PHI_SUPPORT,
                            weight="cos", wvar=2.0 * math.pi * abs(xi),
                            epsabs=epsabs, limit=400)
    return val


@dataclass
class PhiHatTable:
    """Cubic-interpolated table of hat(phi) for bulk queries.

    Covers |xi| <= xi_max; beyond that the transform has decayed below
    1e-11 * hat(phi)(0) (decay is exp(-2 sqrt(xi))) and is treated as 0.
    """

    xi_max: float = 130.0
    step: float = 1e-3
    _grid: np.ndarray = field(init=False, repr=False)
    _vals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._grid = np.arange(0.0, self.xi_max + self.step, self.step)
        self._vals = phi_hat_nodal(self._grid)

    def __call__(self, xi) -> np.ndarray:
        xi = np.abs(np.atleast_1d(np.asarray(xi, dtype=np.float64)))
        out = np.zeros_like(xi)
        inside = xi <= self.xi_max
        # cubic (Catmull-Rom style via np.interp would be linear; use local
        # 4-point Lagrange on the uniform grid)
        xs = xi[inside]
        t = xs / self.step
        i1 = np.clip(t.astype(np.int64), 1, len(self._grid) - 3)
        f = t - i1
        vm1 = self._vals[i1 - 1]
        v0 = self._vals[i1]
        v1 = self._vals[i1 + 1]
        v2 = self._vals[i1 + 2]
        out[inside] = (
            vm1 * (-f * (f - 1) * (f - 2) / 6)
            + v0 * ((f + 1) * (f - 1) * (f - 2) / 2)
            + v1 * (-(f + 1) * f * (f - 2) / 2)
            + v2 * ((f + 1) * f * (f - 1) / 6)
        )
        return out


_DEFAULT_TABLE: PhiHatTable | None = None


def default_phi_hat_table() -> PhiHatTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = PhiHatTable()
    return _DEFAULT_TABLE


def phi_hat(xi: float) -> float:
    """Scalar hat(phi)(xi); nodal rule, agrees with adaptive quadrature ~1e-12."""
    return float(phi_hat_nodal(float(xi))[0])


def psi_fourier(A: float, beta: float, N: int, cutoff: float = 120.0) -> float:
    """Poisson-summation evaluation of Psi_A, truncated where hat(phi) dies.

    Psi_A(beta) = N^{-A} sum_j hat(phi)(j / N^A) e(beta j); terms with
    |j / N^A| > cutoff are dropped.  hat(phi) decays like exp(-2 sqrt(xi)),
    so cutoff 120 keeps the truncation error near 1e-11.
    """
    scale = float(N) ** A
    jmax = int(math.floor(cutoff * scale))
    j = np.arange(-jmax, jmax + 1)
    w = phi_hat_nodal(j / scale)
    return float((w * np.cos(2.0 * math.pi * beta * j)).sum() / scale)


def g_exact(alpha_dm1: float, alpha_d: float, cfg: CutoffConfig, u: float,
            degree: int = 3) -> float:
    """Kernel G = N^{-1} sum_{y<=N} Psi_{u-eps}(alpha_{d-1} - d y alpha_d)."""
    if u <= 0:
        raise ValueError("u must be > 0")
    A = u - cfg.eps
    if A <= 0:
        raise ValueError("u - eps must be > 0")
    N = cfg.N
    total = 0.0
    for y in range(1, N + 1):
        total += psi(A, alpha_dm1 - degree * y * alpha_d, N)
    return total / N


def g_fourier(alpha_dm1: float, alpha_d: float, cfg: CutoffConfig, u: float,
              degree: int = 3, cutoff: float = 120.0) -> float:
    """Fourier-side evaluation of G (Poisson summation cross-check).

    G = N^{-u-1+eps} sum_j hat(phi)(j / N^{u-eps}) e(alpha_{d-1} j) K(-d j alpha_d)
    with the j-sum truncated where hat(phi) has decayed.
    """
    N = cfg.N
    A = u - cfg.eps
    scale = float(N) ** A
    jmax = int(math.floor(cutoff * scale))
    j = np.arange(-jmax, jmax + 1)
    w = phi_hat_nodal(j / scale)
    acc = 0.0 + 0.0j
    for jj, wj in zip(j, w):
        if abs(wj) < 1e-15:
            continue
        kern = eval_K((-degree * jj * alpha_d) % 1.0, N)
        acc += wj * complex(math.cos(2 * math.pi * alpha_dm1 * jj),
                            math.sin(2 * math.pi * alpha_dm1 * jj)) * kern
    return float(acc.real) * float(N) ** (-u - 1 + cfg.eps)


def g_bound(alpha_d: float, u: float, N: int, eps: float,
            degree: int = 3) -> float:
    """Majorant N^{-u-1+eps} sum_{|j|<=N^u} |sum_{y<=N} e(d y j alpha_d)|.

    The inner sum is K(d j alpha_d), evaluated by the closed form.
    """
    if u <= 0:
        raise ValueError("u must be > 0")
    jmax = int(math.floor(float(N) ** u))
    total = 0.0
    for j in range(-jmax, jmax + 1):
        theta = (degree * j * alpha_d) % 1.0
        total += abs(eval_K(theta, N))
    return float(N) ** (-u - 1 + eps) * total
