"""Restricted-box moments of Weyl sums.

I_{p,d}(u;N) is the p-th moment of |f_d(alpha;N)| over the unit cube with one
coefficient axis shrunk to [0, N^{-u}).  Even moments reduce exactly to a
kernel-weighted frequency profile; arbitrary real p > 0 is estimated by
Monte-Carlo; tiny N admits a direct tensor-grid quadrature oracle.

The module also evaluates the smooth-weighted companion counts S_{2s}(u) and
U_{2s}(u) (variables in [1, 2N], weights from the periodized bump) exactly
through the joint two-frequency profile.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .counting import SystemSpec, joint_profile, profile
from .cutoffs import default_phi_hat_table
from .errors import BudgetError
from .phases import eval_f_many

QUAD_BUDGET = 10**9
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MomentSpec:
    """One moment computation: which box, which power, which method."""

    d: int
    p: float
    u: float
    N: int
    restricted_power: int = -1  # -1 means d-1, the I_{p,d} default
    method: str = "exact_even"

    def __post_init__(self):
        if self.restricted_power == -1:
            object.__setattr__(self, "restricted_power", self.d - 1)
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if not 0 < self.u <= self.d - 1:
            raise ValueError("u must lie in (0, d-1]")
        if self.p <= 0:
            raise ValueError("p must be positive")
        if not 1 <= self.restricted_power <= self.d:
            raise ValueError("restricted_power outside 1..d")
        if self.method not in ("exact_even", "monte_carlo", "quadrature"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "exact_even" and not self._even_s():
            raise ValueError("exact_even requires p = 2s even")

    def _even_s(self) -> bool:
        return self.p == int(self.p) and int(self.p) % 2 == 0

    @property
    def s(self) -> int:
        if not self._even_s():
            raise ValueError(f"p = {self.p} is not an even integer")
        return int(self.p) // 2


@dataclass(frozen=True)
class BoxKernel:
    """K_u(b) = integral of e(beta b) for beta in [0, N^-u), b integer."""

    u: float
    N: int

    @property
    def width(self) -> float:
        return float(self.N) ** (-self.u)

    def __call__(self, b: int) -> complex:
        if b == 0:
            return complex(self.width, 0.0)
        z = _TWO_PI * b * self.width
        return (complex(math.cos(z), math.sin(z)) - 1.0) / (2j * math.pi * b)

    def many(self, bs: np.ndarray) -> np.ndarray:
        bs = np.asarray(bs, dtype=np.float64)
        z = _TWO_PI * bs * self.width
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (np.exp(1j * z) - 1.0) / (2j * np.pi * bs)
        out[bs == 0] = self.width
        return out


@dataclass
class MomentResult:
    value: float
    stderr: float
    imag_residual: float
    method: str
    sample_count: int = 0
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)


def moment_exact_even(spec: MomentSpec) -> MomentResult:
    """I_{2s,d}(u;N) = sum_b r(b) K_u(b), r the restricted-axis profile.

    Expanding |f|^{2s} and integrating the full-period axes kills every
    frequency except the restricted one, whose box factor integrates to K_u.
    """
    t0 = time.perf_counter()
    s = spec.s
    rp = spec.restricted_power
    zero = frozenset(range(1, spec.d + 1)) - {rp}
    prof = profile(SystemSpec(d=spec.d, s=s, N=spec.N,
                              zero_powers=zero, profile_power=rp))
    bs, rs = prof.as_arrays()
    kern = BoxKernel(spec.u, spec.N)
    total = complex(np.sum(rs * kern.many(bs)))
    return MomentResult(value=total.real, stderr=0.0,
                        imag_residual=abs(total.imag), method="exact_even",
                        elapsed=time.perf_counter() - t0,
                        detail={"profile_support": len(bs)})


def _box_points(spec: MomentSpec, unit: np.ndarray) -> np.ndarray:
    """Map unit-cube points (rows, coeffs a_d..a_1) into the moment box."""
    pts = np.array(unit, dtype=np.float64)
    pts[:, spec.d - spec.restricted_power] *= float(spec.N) ** (-spec.u)
    return pts


def moment_mc(spec: MomentSpec, samples: int, seed: int) -> MomentResult:
    """Median-of-means Monte-Carlo estimate of I_{p,d}(u;N).

    Points are a pure function of (seed, sample index): sample i reads words
    i*d .. i*d+d-1 of the Philox counter stream keyed by seed, so any worker
    split reproduces the serial result.  32 buckets tame the heavy tail of
    |f|^p near rational points.
    """
    if samples < 1000:
        raise ValueError("need samples >= 1000")
    t0 = time.perf_counter()
    k = 32
    samples -= samples % k  # equal buckets
    rng = np.random.Generator(np.random.Philox(key=seed))
    pts = _box_points(spec, rng.random((samples, spec.d)))
    vals = np.abs(eval_f_many(pts, spec.N)) ** spec.p
    measure = float(spec.N) ** (-spec.u)
    bucket_means = vals.reshape(k, -1).mean(axis=1)
    est = measure * float(np.median(bucket_means))
    stderr = measure * float(np.std(bucket_means, ddof=1)) / math.sqrt(k)
    return MomentResult(value=est, stderr=stderr, imag_residual=0.0,
                        method="monte_carlo", sample_count=samples,
                        elapsed=time.perf_counter() - t0)


def _quad_value(spec: MomentSpec, m_restricted: int) -> float:
    """Midpoint tensor-grid quadrature; full axes sampled above bandwidth."""
    s_eff = spec.p / 2.0
    axes = []
    for idx in range(spec.d):
        power = spec.d - idx
        if power == spec.restricted_power:
            axes.append((np.arange(m_restricted) + 0.5) / m_restricted
                        * float(spec.N) ** (-spec.u))
        else:
            m = int(math.ceil(8 * s_eff * spec.N ** power))
            axes.append((np.arange(m) + 0.5) / m)
    size = math.prod(len(a) for a in axes)
    if spec.d * size > QUAD_BUDGET:
        raise BudgetError(f"quadrature grid {size:.3g} points over budget")
    shape = tuple(len(a) for a in axes)
    F = np.zeros(shape, dtype=np.complex128)
    for n in range(1, spec.N + 1):
        term = np.ones((1,) * spec.d, dtype=np.complex128)
        for idx, ax in enumerate(axes):
            power = spec.d - idx
            vec = np.exp(2j * np.pi * ax * n ** power)
            sh = [1] * spec.d
            sh[idx] = len(ax)
            term = term * vec.reshape(sh)
        F = F + term
    measure = float(spec.N) ** (-spec.u)
    return measure * float(np.mean(np.abs(F) ** spec.p))


def moment_quadrature(spec: MomentSpec, resolution: int = 8) -> MomentResult:
    """Quadrature oracle for tiny N: double the restricted axis to 1e-7."""
    t0 = time.perf_counter()
    s_eff = spec.p / 2.0
    rp = spec.restricted_power
    m = max(resolution,
            int(math.ceil(8 * s_eff * spec.N ** rp
                          * float(spec.N) ** (-spec.u))) + 1)
    prev = _quad_value(spec, m)
    for _ in range(24):
        m *= 2
        cur = _quad_value(spec, m)
        if abs(cur - prev) <= 1e-7 * max(abs(cur), 1e-300):
            return MomentResult(value=cur, stderr=0.0, imag_residual=0.0,
                                method="quadrature", sample_count=m,
                                elapsed=time.perf_counter() - t0)
        prev = cur
    raise BudgetError("restricted-axis quadrature did not converge")


def compute_moment(spec: MomentSpec, samples: int = 200000,
                   seed: int = 0) -> MomentResult:
    if spec.method == "exact_even":
        return moment_exact_even(spec)
    if spec.method == "monte_carlo":
        return moment_mc(spec, samples, seed)
    return moment_quadrature(spec)


# ---------------------------------------------------------------------------
# smooth-weighted companion counts (variables in [1, 2N])
# ---------------------------------------------------------------------------

def _joint(d: int, s: int, N: int) -> dict:
    if not ((d == 2 and s <= 3) or (d == 3 and s <= 2)):
        raise BudgetError(f"joint profile out of budget at d={d}, s={s}")
    zero = frozenset(range(1, d - 1))
    spec = SystemSpec(d=d, s=s, N=N, zero_powers=zero, upper=2 * N)
    return joint_profile(spec, (d - 1, d))


def weighted_count_S(d: int, s: int, N: int, u: float) -> float:
    """S_{2s}(u): the moment of |f(.;2N)|^{2s} against sum_y Psi_u shifts.

    Orthogonality leaves tuples with sigma_i = 0 (i <= d-2) and
    sigma_d = -d y sigma_{d-1}; each contributes
    N^{-u} phihat(-sigma_{d-1}/N^u).
    """
    table = default_phi_hat_table()
    r2 = _joint(d, s, N)
    scale = float(N) ** (-u)
    total = 0.0
    for (b1, b2), r in r2.items():
        if b1 == 0:
            if b2 == 0:
                total += N * r * table(0.0)
            continue
        if b2 % (d * b1) == 0:
            y = -b2 // (d * b1)
            if 1 <= y <= N:
                total += r * table(-b1 * scale)
    return float(scale * np.asarray(total).reshape(-1)[0])


def weighted_count_U(d: int, s: int, N: int, u: float, eps: float) -> float:
    """U_{2s}(u): the doubly-smoothed count behind the arc analysis.

    Same tuple support as S; weights phihat(sigma_d/N^{u+1}) from the shift
    cutoff and phihat(-sigma_{d-1}/N^{u-eps}) from the averaged cutoff, with
    prefactor N^{-2u-2+eps}.
    """
    table = default_phi_hat_table()
    r2 = _joint(d, s, N)
    inv_upe = float(N) ** (-(u - eps))
    inv_up1 = float(N) ** (-(u + 1.0))
    total = 0.0
    for (b1, b2), r in r2.items():
        if b1 == 0:
            if b2 == 0:
                total += N * r * table(0.0) ** 2
            continue
        if b2 % (d * b1) == 0:
            y = -b2 // (d * b1)
            if 1 <= y <= N:
                total += (r * table(b2 * inv_up1) * table(-b1 * inv_upe))
    return float(float(N) ** (-2.0 * u - 2.0 + eps)
                 * np.asarray(total).reshape(-1)[0])


def weighted_count_T(d: int, s: int, N: int, u: float, eps: float) -> float:
    """T_{2s}(u;eps) = N * U_{2s}(u)."""
    return N * weighted_count_U(d, s, N, u, eps)
