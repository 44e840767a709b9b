"""Exact counting of Vinogradov-type power-sum systems.

A system is described by a SystemSpec: 2s variables in [1, U] (U = N by
default, 2N for the shifted-range variants), exact constraints

    sigma_i(n) = n_1^i + ... + n_s^i - n_{s+1}^i - ... - n_{2s}^i = 0

for i in zero_powers, optionally one windowed constraint |sigma_{i0}| <= H,
and optionally a histogrammed power whose exact frequency profile r(b) is
returned.

Two engines are provided.  count_brute enumerates all 2s-tuples (the oracle).
count_mitm / profile enumerate s-tuples once, pack their power-sum vectors
into mixed-radix int64 keys, aggregate with a sort, and combine groups:
squared group sizes for pure zero constraints, windowed prefix-sum pair
counting for |sigma| <= H, and a sparse-matrix autocorrelation for profiles.
All counts are exact integers; grouping is sort-based, so serial runs and any
future partitioned runs produce identical results.
"""

from __future__ import annotations

import io
import struct
import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import BudgetError

BRUTE_BUDGET = 10**8
MITM_BUDGET = 5 * 10**8
PACK_LIMIT = 2**62  # packed keys must stay below this (int64 with headroom)

PROFILE_MAGIC = b"VMVTPROF"
PROFILE_VERSION = 1


@dataclass(frozen=True)
class SystemSpec:
    """Description of one power-sum system.

    window is a (power, H) pair meaning |sigma_{power}| <= H.  upper overrides
    the variable range [1, upper]; None means [1, N].
    """

    d: int
    s: int
    N: int
    zero_powers: frozenset = frozenset()
    profile_power: int | None = None
    window: tuple | None = None
    upper: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "zero_powers", frozenset(self.zero_powers))
        if self.window is not None:
            object.__setattr__(self, "window",
                               (int(self.window[0]), int(self.window[1])))
        if self.d < 1 or self.s < 1 or self.N < 1:
            raise ValueError("d, s, N must be positive")
        used = set(self.zero_powers)
        for p in used:
            if not 1 <= p <= self.d:
                raise ValueError(f"zero power {p} outside 1..{self.d}")
        for p in (self.profile_power, self.window[0] if self.window else None):
            if p is None:
                continue
            if not 1 <= p <= self.d:
                raise ValueError(f"power {p} outside 1..{self.d}")
            if p in used:
                raise ValueError(f"power {p} used twice")
            used.add(p)
        if self.window is not None and self.window[1] < 0:
            raise ValueError("window half-width must be >= 0")

    @property
    def range_upper(self) -> int:
        return self.N if self.upper is None else self.upper


@dataclass(frozen=True)
class CountResult:
    count: int
    elapsed: float
    method: str


@dataclass
class FrequencyProfile:
    """Sparse exact histogram b -> r(b) of one power sum."""

    counts: dict
    spec: SystemSpec

    def total(self) -> int:
        return sum(self.counts.values())

    def is_symmetric(self) -> bool:
        return all(self.counts.get(-b, 0) == c for b, c in self.counts.items())

    def as_arrays(self):
        bs = np.array(sorted(self.counts), dtype=np.int64)
        rs = np.array([self.counts[int(b)] for b in bs], dtype=np.float64)
        return bs, rs


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _signed_sigma_rest(upper: int, s: int, power: int) -> np.ndarray:
    """sigma_power over variables 2..2s (variable 1 excluded), all tuples."""
    n = np.arange(1, upper + 1, dtype=np.int64)
    pw = n ** power
    out = np.zeros(1, dtype=np.int64)
    for j in range(1, 2 * s):
        contrib = pw if j < s else -pw
        out = (out[:, None] + contrib[None, :]).ravel()
    return out


def count_brute(spec: SystemSpec) -> CountResult:
    """Exact count by full enumeration of all 2s-tuples."""
    t0 = time.perf_counter()
    U, s = spec.range_upper, spec.s
    if U ** (2 * s) > BRUTE_BUDGET:
        raise BudgetError(
            f"brute force needs {U ** (2 * s):.3g} tuples > {BRUTE_BUDGET:.0e}")
    if not spec.zero_powers and spec.window is None:
        return CountResult(U ** (2 * s), time.perf_counter() - t0, "brute")
    powers = sorted(spec.zero_powers | ({spec.window[0]} if spec.window else set()))
    rest = {p: _signed_sigma_rest(U, s, p) for p in powers}
    total = 0
    for v in range(1, U + 1):
        mask = np.ones(len(rest[powers[0]]), dtype=bool)
        for p in spec.zero_powers:
            mask &= rest[p] + v ** p == 0
        if spec.window is not None:
            p, H = spec.window
            mask &= np.abs(rest[p] + v ** p) <= H
        total += int(np.count_nonzero(mask))
    return CountResult(count=total, elapsed=time.perf_counter() - t0, method="brute")


def profile_brute(spec: SystemSpec) -> FrequencyProfile:
    """Exact histogram of sigma_{profile_power} by full enumeration."""
    if spec.profile_power is None:
        raise ValueError("spec has no profile_power")
    U, s = spec.range_upper, spec.s
    if U ** (2 * s) > BRUTE_BUDGET:
        raise BudgetError("brute profile over budget")
    i0 = spec.profile_power
    rest = {p: _signed_sigma_rest(U, s, p)
            for p in sorted(spec.zero_powers | {i0})}
    counts: dict = {}
    for v in range(1, U + 1):
        mask = np.ones(len(rest[i0]), dtype=bool)
        for p in spec.zero_powers:
            mask &= rest[p] + v ** p == 0
        vals = rest[i0][mask] + v ** i0
        for b, c in zip(*np.unique(vals, return_counts=True)):
            counts[int(b)] = counts.get(int(b), 0) + int(c)
    return FrequencyProfile(counts=counts, spec=spec)


# ---------------------------------------------------------------------------
# meet-in-the-middle engine
# ---------------------------------------------------------------------------

def _check_mitm_budget(spec: SystemSpec):
    U, s = spec.range_upper, spec.s
    half = U ** s
    if half > MITM_BUDGET:
        raise BudgetError(
            f"meet-in-the-middle needs {half:.3g} half-tuples > {MITM_BUDGET:.0e} "
            f"(~{half * 8 / 2**30:.1f} GiB per working array)")


def _pack_plan(upper: int, s: int, fields: list):
    """Mixed-radix strides for the power fields; fields[0] most significant.

    Each per-half power sum sigma_p lies in [s, s*upper^p]; field p gets span
    s*upper^p + 1.  An explicit span override is allowed via (power, span)
    entries.  Returns (powers, strides, spans, top).
    """
    powers = [f[0] if isinstance(f, tuple) else f for f in fields]
    spans = [f[1] if isinstance(f, tuple) else s * upper ** f + 1
             for f in fields]
    strides = [1] * len(fields)
    for i in range(len(fields) - 2, -1, -1):
        strides[i] = strides[i + 1] * spans[i + 1]
    top = sum(s * upper ** p * m for p, m in zip(powers, strides))
    if top >= PACK_LIMIT:
        raise BudgetError(f"packed keys need {top.bit_length()} bits > 62")
    return powers, strides, spans, top


def _packed_half_sums(upper: int, s: int, powers: list, strides: list) -> np.ndarray:
    """sum over s-tuples of q(n) = sum_p stride_p * n^p, all tuples, int64."""
    n = np.arange(1, upper + 1, dtype=np.int64)
    q = np.zeros(upper, dtype=np.int64)
    for p, m in zip(powers, strides):
        q += m * n ** p
    out = q.copy()
    for _ in range(s - 1):
        out = (out[:, None] + q[None, :]).ravel()
    return out


def _unique_half_sums(spec: SystemSpec, fields: list):
    """Distinct packed power-sum vectors over s-tuples with multiplicities."""
    _check_mitm_budget(spec)
    U, s = spec.range_upper, spec.s
    powers, strides, spans, _ = _pack_plan(U, s, fields)
    packed = _packed_half_sums(U, s, powers, strides)
    uniq, cnt = np.unique(packed, return_counts=True)
    return uniq, cnt.astype(np.int64), strides, spans


def _key_ranks(keys: np.ndarray) -> np.ndarray:
    """Dense 0-based ranks of a sorted key array."""
    rank = np.empty(len(keys), dtype=np.int64)
    rank[0] = 0
    np.cumsum(keys[1:] != keys[:-1], out=rank[1:])
    return rank


def count_mitm(spec: SystemSpec) -> CountResult:
    """Exact count via half-tuple enumeration and group combination."""
    t0 = time.perf_counter()
    U, s = spec.range_upper, spec.s
    zfields = sorted(spec.zero_powers, reverse=True)

    if spec.window is None:
        if not zfields:
            _check_mitm_budget(spec)
            total = U ** (2 * s)
        else:
            _, cnt, _, _ = _unique_half_sums(spec, zfields)
            if float(U) ** (2 * s) < float(2**62):
                total = int(np.dot(cnt, cnt))
            else:
                total = sum(int(c) * int(c) for c in cnt)
    else:
        wpow, H = spec.window
        uniq, cnt, strides, spans = _unique_half_sums(spec, zfields + [wpow])
        vr = spans[-1]
        val = uniq % vr
        rank = _key_ranks(uniq // vr) if zfields else np.zeros(len(uniq), np.int64)
        sep = int(val.max() - val.min()) + 2 * (H + 1)
        if (int(rank[-1]) + 1) * sep >= PACK_LIMIT:
            raise BudgetError("window keying exceeds 62-bit packing")
        w = rank * sep + val  # sorted; consecutive groups H-separated
        pre = np.concatenate(([0], np.cumsum(cnt)))
        hi = np.searchsorted(w, w + H, side="right")
        lo = np.searchsorted(w, w - H, side="left")
        total = int(np.sum(cnt * (pre[hi] - pre[lo]), dtype=np.int64))
    return CountResult(count=total, elapsed=time.perf_counter() - t0, method="mitm")


def profile(spec: SystemSpec) -> FrequencyProfile:
    """Exact histogram of sigma_{profile_power} over the zero-constrained set.

    Aggregated per-key autocorrelation via the sparse product C^T C, where
    C[key, value] counts half-tuples.
    """
    if spec.profile_power is None:
        raise ValueError("spec has no profile_power")
    zfields = sorted(spec.zero_powers, reverse=True)
    uniq, cnt, _, spans = _unique_half_sums(spec, zfields + [spec.profile_power])
    vr = spans[-1]
    val = uniq % vr
    rows = _key_ranks(uniq // vr) if zfields else np.zeros(len(uniq), np.int64)
    vmin = int(val.min())
    cols = val - vmin
    vspan = int(cols.max()) + 1
    C = sparse.csr_matrix((cnt, (rows, cols)),
                          shape=(int(rows[-1]) + 1, vspan))
    M = (C.T @ C).tocoo()
    r = np.zeros(2 * vspan - 1, dtype=np.int64)
    np.add.at(r, (M.col.astype(np.int64) - M.row.astype(np.int64)) + vspan - 1,
              M.data)
    counts = {int(b) - (vspan - 1): int(c) for b, c in enumerate(r) if c != 0}
    return FrequencyProfile(counts=counts, spec=spec)


def joint_profile(spec: SystemSpec, pair: tuple) -> dict:
    """Exact joint histogram {(b1, b2): count} of two power sums.

    Counts 2s-tuples with sigma_i = 0 for i in zero_powers and
    (sigma_{p1}, sigma_{p2}) = (b1, b2), where pair = (p1, p2).
    """
    p1, p2 = pair
    U, s = spec.range_upper, spec.s
    zfields = sorted(spec.zero_powers, reverse=True)
    uniq, cnt, _, spans = _unique_half_sums(spec, zfields + [p1, p2])
    blockmod = spans[-2] * spans[-1]
    val = uniq % blockmod
    rows = _key_ranks(uniq // blockmod) if zfields else np.zeros(len(uniq), np.int64)
    v1 = val // spans[-1]
    v2 = val % spans[-1]
    c1 = v1 - int(v1.min())
    c2 = v2 - int(v2.min())
    s2 = int(c2.max()) + 1
    radix2 = 2 * s2 - 1  # difference-safe column radix for the low field
    cols = c1 * radix2 + c2
    C = sparse.csr_matrix((cnt, (rows, cols)),
                          shape=(int(rows[-1]) + 1, (int(c1.max()) + 1) * radix2))
    M = (C.T @ C).tocoo()
    diff = M.col.astype(np.int64) - M.row.astype(np.int64)
    half = s2 - 1
    b2 = ((diff + half) % radix2) - half
    b1 = (diff - b2) // radix2
    out: dict = {}
    for bb1, bb2, c in zip(b1, b2, M.data):
        k = (int(bb1), int(bb2))
        out[k] = out.get(k, 0) + int(c)
    return out


# ---------------------------------------------------------------------------
# binary profile dump
# ---------------------------------------------------------------------------

def dump_profile(prof: FrequencyProfile, fh):
    """Little-endian dump: magic, version byte, u64 n, then (i64 b, u64 r)."""
    fh.write(PROFILE_MAGIC)
    fh.write(struct.pack("<B", PROFILE_VERSION))
    items = sorted(prof.counts.items())
    fh.write(struct.pack("<Q", len(items)))
    for b, c in items:
        fh.write(struct.pack("<qQ", b, c))


def load_profile(fh) -> dict:
    """Read back a dumped profile as a {b: count} dict."""
    magic = fh.read(len(PROFILE_MAGIC))
    if magic != PROFILE_MAGIC:
        raise ValueError("not a vmvt profile dump (bad magic)")
    (version,) = struct.unpack("<B", fh.read(1))
    if version != PROFILE_VERSION:
        raise ValueError(f"unsupported profile version {version}")
    (n,) = struct.unpack("<Q", fh.read(8))
    counts = {}
    for _ in range(n):
        b, c = struct.unpack("<qQ", fh.read(16))
        counts[b] = c
    return counts
