"""Hardy-Littlewood dissection: major arcs, minor-arc membership, measures.

For scale N and box parameter u the major arcs are the neighbourhoods

    M(q, a) = { alpha in [0,1) : |alpha - a/q| <= W / q },   W = N^{f(u)} / N^{1+u},

over coprime 0 <= a <= q <= Q = floor(N^{f(u)}), with the piecewise exponent
f(u) = u for 0 < u <= 1 and f(u) = 1 for 1 <= u.  Arcs at 0/1 and 1/1 are the
same arc on the circle and are identified.  Overlap between arcs is measured
and reported, never assumed absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetError

ARC_COUNT_BUDGET = 5_000_000


def f_exponent(u: float, d: int = 3) -> float:
    """The dissection exponent: u on (0,1], then constant 1 up to d-1."""
    if not 0 < u <= d - 1:
        raise ValueError(f"u must lie in (0, {d - 1}], got {u}")
    return u if u <= 1.0 else 1.0


@dataclass(frozen=True)
class RationalApprox:
    """A reduced fraction a/q with 0 <= a <= q, gcd(a, q) = 1."""

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.a <= self.q:
            raise ValueError(f"bad rational {self.a}/{self.q}")
        if math.gcd(self.a, self.q) != 1:
            raise ValueError(f"{self.a}/{self.q} not reduced")

    @property
    def value(self) -> float:
        return self.a / self.q


@dataclass(frozen=True)
class Classification:
    """Outcome of the major/minor test for a single frequency."""

    major: bool
    witness: RationalApprox | None = None


def rational_approx(alpha: float, Q: int) -> RationalApprox:
    """Best rational approximation with denominator <= Q.

    Returns the continued-fraction convergent a/q, q <= Q, minimising
    |q alpha - a|; it satisfies |alpha - a/q| <= 1/(q (Q+1)).
    """
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0,1)")
    if Q < 1:
        raise ValueError("Q must be >= 1")
    x = Fraction(alpha)
    # continued fraction expansion of the exact binary rational
    p_prev, q_prev = 1, 0
    p_cur, q_cur = math.floor(x), 1
    frac = x - math.floor(x)
    while q_cur <= Q and frac != 0:
        frac = 1 / frac
        a_k = math.floor(frac)
        frac -= a_k
        p_nxt = a_k * p_cur + p_prev
        q_nxt = a_k * q_cur + q_prev
        if q_nxt > Q:
            # best-of-second-kind is the last full convergent within range
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_nxt, q_nxt
    a, q = p_cur, q_cur
    g = math.gcd(abs(a), q)
    return RationalApprox(a // g, q // g)


def arc_width(N: int, u: float, d: int = 3) -> float:
    return float(N) ** f_exponent(u, d) / float(N) ** (1.0 + u)


def classify(alpha_d: float, N: int, u: float, d: int = 3) -> Classification:
    """Major/minor test by scanning q = 1..Q with early exit.

    Major iff some q <= Q has |q alpha - a| <= W for integer a; the smallest
    witnessing q is automatically in lowest terms with its a.
    """
    fu = f_exponent(u, d)
    Q = int(math.floor(float(N) ** fu))
    W = arc_width(N, u, d)
    x = alpha_d % 1.0
    for q in range(1, Q + 1):
        a = round(q * x)
        if abs(q * x - a) <= W:
            return Classification(major=True, witness=RationalApprox(int(a), q))
    return Classification(major=False)


@dataclass(frozen=True)
class ArcDissection:
    """All major arcs for (N, u) with exact union and overlap measures."""

    N: int
    u: float
    d: int
    Q: int
    width: float
    arcs: tuple  # ((RationalApprox, (lo, hi)), ...) raw, before merging
    merged: tuple  # disjoint (lo, hi) intervals covering the union, in [0,1)
    total_measure: float
    overlap_measure: float

    def contains(self, alpha) -> bool | np.ndarray:
        """Union membership; scalar or vectorised over an array of alphas."""
        x = np.asarray(alpha, dtype=np.float64) % 1.0
        lows = np.array([lo for lo, _ in self.merged])
        highs = np.array([hi for _, hi in self.merged])
        i = np.searchsorted(lows, x, side="right") - 1
        ok = (i >= 0) & (x <= highs[np.clip(i, 0, len(highs) - 1)])
        if ok.ndim == 0:
            return bool(ok)
        return ok


def build_dissection(N: int, u: float, d: int = 3) -> ArcDissection:
    """Enumerate every arc, merge intervals on the circle, report measures."""
    fu = f_exponent(u, d)
    Qf = float(N) ** fu
    if Qf > 1e5:
        raise BudgetError(f"N^f(u) = {Qf:.3g} exceeds the 1e5 dissection bound")
    Q = int(math.floor(Qf))
    W = arc_width(N, u, d)

    n_arcs = sum(1 if q == 1 else _totient(q) for q in range(1, Q + 1))
    if n_arcs > ARC_COUNT_BUDGET:
        raise BudgetError(f"{n_arcs} arcs exceed the {ARC_COUNT_BUDGET} budget")

    arcs = []
    pieces = []  # intervals inside [0,1), wraparound split
    raw_total = 0.0
    for q in range(1, Q + 1):
        hw = W / q
        residues = [0] if q == 1 else [a for a in range(1, q) if math.gcd(a, q) == 1]
        for a in residues:
            c = a / q
            lo, hi = c - hw, c + hw
            arcs.append((RationalApprox(a, q), (lo, hi)))
            raw_total += hi - lo
            if lo < 0.0:
                pieces.append((0.0, hi))
                pieces.append((lo + 1.0, 1.0))
            elif hi > 1.0:
                pieces.append((lo, 1.0))
                pieces.append((0.0, hi - 1.0))
            else:
                pieces.append((lo, hi))

    pieces.sort()
    merged = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    union = sum(hi - lo for lo, hi in merged)
    overlap = max(raw_total - union, 0.0)

    return ArcDissection(N=N, u=u, d=d, Q=Q, width=W, arcs=tuple(arcs),
                         merged=tuple(merged), total_measure=union,
                         overlap_measure=overlap)


def _totient(q: int) -> int:
    n, result, p = q, q, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def disjointness_guaranteed(N: int, u: float, d: int = 3) -> bool:
    """Sufficient condition for pairwise-disjoint arcs: 4 N^{2f(u)} <= N^{1+u}."""
    return 4.0 * float(N) ** (2.0 * f_exponent(u, d)) <= float(N) ** (1.0 + u)
