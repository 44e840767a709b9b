"""Weyl sums, shifted coefficient vectors and the Dirichlet kernel.

The central object is the degree-d exponential sum

    f(alpha; N) = sum_{n=1}^{N} e(a_d n^d + ... + a_1 n),   e(x) = exp(2*pi*i*x),

together with the binomial shift n -> n - y of the polynomial phase and the
geometric kernel K(gamma) = sum_{z<=N} e(gamma z).

Phase arithmetic is exact: every float coefficient is a binary rational, so
a_i * n^i mod 1 is computed with integer arithmetic over a common power-of-two
denominator.  The only rounding happens in the final exp() call, which keeps
the per-term phase error at the 1e-16 level even when n^d ~ 2^80.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

TWO_PI = 2.0 * math.pi

# below this, the closed form of K is ill-conditioned and we sum directly
_K_SIN_CUTOFF = 1e-8


@dataclass(frozen=True)
class PhaseVector:
    """Coefficients (a_d, a_{d-1}, ..., a_1) of a polynomial phase, degree >= 2.

    Each coefficient is interpreted modulo 1.  Entries may be floats or exact
    rationals (fractions.Fraction); rational inputs flow through the shift
    machinery exactly.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be >= 2 (need at least two coefficients)")
        for c in coeffs:
            if not isinstance(c, Rational) and not math.isfinite(c):
                raise ValueError(f"nonfinite coefficient {c!r}")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def ascending(self) -> tuple:
        """Coefficients ordered (a_1, ..., a_d)."""
        return tuple(reversed(self.coeffs))


@dataclass(frozen=True)
class ShiftedCoefficients:
    """Result of the substitution n -> n - y in a polynomial phase.

    c holds (c_d, ..., c_1, c_0) with
        c_i = sum_{l=i}^{d} binom(l, i) (-y)^{l-i} a_l,   a_0 = 0.
    The map (a_d..a_1) -> (c_d..c_1) is unipotent lower-triangular, so its
    determinant is 1.
    """

    base: PhaseVector
    y: int
    c: tuple

    @property
    def phase(self) -> PhaseVector:
        """The shifted phase vector (c_d, ..., c_1); c_0 is dropped."""
        return PhaseVector(self.c[:-1])

    @property
    def c0(self):
        return self.c[-1]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


def _scaled_numerators(coeffs_desc, gamma=None):
    """Common denominator D and integer numerators m_i with a_i = m_i / D.

    coeffs_desc is (a_d, ..., a_1); gamma, when given, is folded into the
    linear coefficient.  All floats convert exactly.
    """
    fracs = [_as_fraction(c) for c in coeffs_desc]
    if gamma is not None:
        fracs[-1] = fracs[-1] + _as_fraction(gamma)
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    nums = [f.numerator * (den // f.denominator) for f in fracs]
    return nums, den


def _phase_fracs(coeffs_desc, N, gamma=None):
    """Exact fractional parts of the phase polynomial at n = 1..N."""
    nums, den = _scaled_numerators(coeffs_desc, gamma)
    out = np.empty(N, dtype=np.float64)
    for n in range(1, N + 1):
        acc = 0
        for m in nums:
            acc = acc * n + m
        out[n - 1] = ((acc * n) % den) / den
    return out


def _as_phase(alpha) -> PhaseVector:
    return alpha if isinstance(alpha, PhaseVector) else PhaseVector(tuple(alpha))


def eval_f(alpha, N: int, gamma: float | None = None) -> complex:
    """Weyl sum sum_{n<=N} e(a_d n^d + ... + a_1 n [+ gamma*n])."""
    alpha = _as_phase(alpha)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if gamma is not None and not math.isfinite(gamma):
        raise ValueError("nonfinite gamma")
    fr = _phase_fracs(alpha.coeffs, N, gamma)
    ang = TWO_PI * fr
    return complex(np.sum(np.cos(ang)), np.sum(np.sin(ang)))


def eval_f_many(alphas: np.ndarray, N: int) -> np.ndarray:
    """Weyl sums for many coefficient rows at once (float fast path).

    alphas has shape (m, d), row = (a_d, ..., a_1).  Valid whenever the
    products a_i * n^i stay well inside double range (N^d < 2^48), which keeps
    the summed error below ~1e-8; otherwise falls back to the exact per-row
    path.
    """
    alphas = np.asarray(alphas, dtype=np.float64)
    m, d = alphas.shape
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if float(N) ** d < 2.0**48:
        n = np.arange(1, N + 1, dtype=np.float64)
        # pow_table[i, n-1] = n^(d-i), matching the (a_d..a_1) row order
        pow_table = np.vstack([n ** (d - i) for i in range(d)])
        ph = alphas @ pow_table
        ph -= np.floor(ph)
        return np.exp(2j * math.pi * ph).sum(axis=1)
    return np.array([eval_f(PhaseVector(tuple(row)), N) for row in alphas])


def _dirichlet_direct(gamma: float, N: int) -> complex:
    """Direct summation of K in extended precision (near-integer fallback)."""
    g = np.longdouble(gamma)
    z = np.arange(1, N + 1, dtype=np.longdouble)
    ph = np.mod(g * z, np.longdouble(1.0))
    ang = (2.0 * np.longdouble(np.pi)) * ph
    return complex(float(np.cos(ang).sum()), float(np.sin(ang).sum()))


def eval_K(gamma: float, N: int) -> complex:
    """Dirichlet kernel K(gamma) = sum_{z=1}^{N} e(gamma z).

    Closed form e(gamma (N+1)/2) sin(pi N gamma) / sin(pi gamma) away from
    integers; exact argument reduction keeps it accurate for large N*gamma.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not math.isfinite(gamma):
        raise ValueError("nonfinite gamma")
    g = gamma - math.floor(gamma)
    if g == 0.0:
        return complex(N, 0.0)
    if abs(math.sin(math.pi * g)) < _K_SIN_CUTOFF:
        return _dirichlet_direct(g, N)
    fg = Fraction(g)
    num, den = fg.numerator, fg.denominator
    # N*g mod 2 and g*(N+1)/2 mod 1, both reduced in exact integer arithmetic
    ng_mod2 = (num * N) % (2 * den) / den
    half_mod1 = (num * (N + 1)) % (2 * den) / (2 * den)
    ratio = math.sin(math.pi * ng_mod2) / math.sin(math.pi * g)
    ang = TWO_PI * half_mod1
    return complex(math.cos(ang) * ratio, math.sin(ang) * ratio)


def shift_coeffs(alpha, y: int) -> ShiftedCoefficients:
    """Coefficients of Omega(n - y) where Omega is the phase polynomial.

    Binomial weights are exact Python integers; with rational alpha the c_i
    are exact rationals.
    """
    alpha = _as_phase(alpha)
    if y < 1:
        raise ValueError(f"shift y must be >= 1, got {y}")
    d = alpha.degree
    asc = tuple(_as_fraction(x) for x in alpha.ascending())  # (a_1, ..., a_d)

    def a(l):
        return asc[l - 1] if l >= 1 else Fraction(0)

    c = []
    for i in range(d, -1, -1):
        ci = 0
        for l in range(max(i, 1), d + 1):
            w = math.comb(l, i) * (-y) ** (l - i)
            ci = ci + w * a(l)
        c.append(ci)
    return ShiftedCoefficients(base=alpha, y=y, c=tuple(c))


def shift_jacobian_determinant(d: int, y: int) -> Fraction:
    """Exact determinant of the d x d matrix dc_i/da_l (expected: 1)."""
    m = [[Fraction(math.comb(l, i) * (-y) ** (l - i)) if l >= i else Fraction(0)
          for l in range(1, d + 1)] for i in range(1, d + 1)]
    # fraction-free-ish Gaussian elimination over Fractions
    det = Fraction(1)
    n = d
    for k in range(n):
        piv = None
        for r in range(k, n):
            if m[r][k] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] * inv
            if f:
                for cc in range(k, n):
                    m[r][cc] -= f * m[k][cc]
    return det


def verify_shift_identity(alpha, y: int, N: int) -> float:
    """Max deviation of the two shift-of-variables identities.

    Checks, with exact phase reduction on both sides,
      (a) Omega(n - y) = sum_i c_i n^i as phases mod 1, n = 1..N+y;
      (b) sum_{y < n <= N+y} e(Omega(n - y)) = f(alpha; N).
    """
    alpha = _as_phase(alpha)
    if not 1 <= y <= N:
        raise ValueError("need 1 <= y <= N")
    sc = shift_coeffs(alpha, y)
    d = alpha.degree

    # side A: Omega evaluated at n - y (shift the index range so the
    # argument runs over 1..N when n runs over y+1..N+y)
    fr_base = _phase_fracs(alpha.coeffs, N + y)  # Omega(m), m = 1..N+y

    # side B: the shifted polynomial sum_i c_i n^i at n = 1..N+y
    nums, den = _scaled_numerators(sc.c[:-1])
    c0 = _as_fraction(sc.c0)
    worst = 0.0
    for n in range(1, N + y + 1):
        acc = 0
        for m in nums:
            acc = acc * n + m
        fr_shift = Fraction((acc * n) % den, den) + c0
        fr_shift -= math.floor(fr_shift)
        m_idx = n - y
        if 1 <= m_idx <= N + y:
            lhs = fr_base[m_idx - 1]
            diff = abs(lhs - float(fr_shift))
            diff = min(diff, 1.0 - diff)  # circle distance
            worst = max(worst, diff)

    # reindexed sum check
    ang = TWO_PI * np.array(
        [float((Fraction((_horner(nums, n) * n) % den, den) + c0) % 1)
         for n in range(y + 1, N + y + 1)]
    )
    reindexed = complex(np.sum(np.cos(ang)), np.sum(np.sin(ang)))
    direct = eval_f(alpha, N)
    worst = max(worst, abs(reindexed - direct))
    return worst


def _horner(nums, n):
    acc = 0
    for m in nums:
        acc = acc * n + m
    return acc
