import io
import itertools

import numpy as np
import pytest

from vmvt.counting import (CountResult, FrequencyProfile, SystemSpec,
                           count_brute, count_mitm, dump_profile, joint_profile,
                           load_profile, profile, profile_brute)
from vmvt.errors import BudgetError

# nested enumeration of 4^10 tuples, frozen
FROZEN_WINDOWED_N4 = 31504


class TestSystemSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SystemSpec(d=3, s=2, N=4, zero_powers={4})
        with pytest.raises(ValueError):
            SystemSpec(d=3, s=2, N=4, zero_powers={2}, profile_power=2)
        with pytest.raises(ValueError):
            SystemSpec(d=3, s=2, N=4, window=(2, -1))
        with pytest.raises(ValueError):
            SystemSpec(d=0, s=2, N=4)

    def test_range_upper(self):
        assert SystemSpec(d=2, s=1, N=5).range_upper == 5
        assert SystemSpec(d=2, s=1, N=5, upper=10).range_upper == 10


class TestBrute:
    def test_full_diagonal(self):
        for N in (3, 7):
            spec = SystemSpec(d=3, s=1, N=N, zero_powers={1, 2, 3})
            assert count_brute(spec).count == N

    def test_closed_form_small(self):
        spec = SystemSpec(d=2, s=2, N=5, zero_powers={1, 2})
        assert count_brute(spec).count == 45

    def test_frozen_windowed(self):
        spec = SystemSpec(d=3, s=5, N=4, zero_powers={1, 3}, window=(2, 4))
        assert count_brute(spec).count == FROZEN_WINDOWED_N4

    def test_no_constraints(self):
        spec = SystemSpec(d=2, s=2, N=3)
        assert count_brute(spec).count == 3**4

    def test_budget(self):
        with pytest.raises(BudgetError):
            count_brute(SystemSpec(d=2, s=3, N=100))


class TestMitm:
    def test_oracle_suite(self):
        cases = (
            [SystemSpec(d=2, s=2, N=n, zero_powers={1, 2}) for n in range(1, 9)]
            + [SystemSpec(d=2, s=3, N=n, zero_powers={1, 2}) for n in range(1, 7)]
            + [SystemSpec(d=3, s=2, N=n, zero_powers={1, 3}) for n in range(1, 9)]
            + [SystemSpec(d=3, s=5, N=4, zero_powers={1, 3}, window=(2, 4))]
        )
        for spec in cases:
            assert count_mitm(spec).count == count_brute(spec).count

    def test_windowed_variants(self):
        cases = [
            SystemSpec(d=3, s=2, N=5, zero_powers={1}, window=(2, 4)),
            SystemSpec(d=3, s=2, N=5, window=(3, 10)),
            SystemSpec(d=2, s=2, N=6, window=(1, 0)),
        ]
        for spec in cases:
            assert count_mitm(spec).count == count_brute(spec).count

    def test_closed_form_large(self):
        spec = SystemSpec(d=2, s=2, N=64, zero_powers={1, 2})
        assert count_mitm(spec).count == 2 * 64**2 - 64 == 8128

    def test_windowed_quintic_instance(self):
        spec = SystemSpec(d=3, s=5, N=20, zero_powers={1, 3}, window=(2, 20))
        assert count_mitm(spec).count >= 20**5

    def test_diagonal_lower_bound(self):
        for spec in (SystemSpec(d=3, s=2, N=7, zero_powers={1, 2, 3}),
                     SystemSpec(d=2, s=3, N=5, zero_powers={1, 2})):
            assert count_mitm(spec).count >= spec.N ** spec.s

    def test_window_monotone_in_H(self):
        prev = -1
        for H in (0, 2, 5, 20, 100):
            spec = SystemSpec(d=3, s=2, N=6, zero_powers={1}, window=(2, H))
            c = count_mitm(spec).count
            assert c >= prev
            prev = c

    def test_budget(self):
        with pytest.raises(BudgetError):
            count_mitm(SystemSpec(d=3, s=5, N=100, zero_powers={1, 3}))


class TestProfile:
    def test_forced_diagonal(self):
        spec = SystemSpec(d=2, s=1, N=9, zero_powers={2}, profile_power=1)
        prof = profile(spec)
        assert prof.counts == {0: 9}

    def test_matches_brute(self):
        spec = SystemSpec(d=3, s=2, N=8, zero_powers={1, 3}, profile_power=2)
        assert profile(spec).counts == profile_brute(spec).counts

    def test_no_zero_powers(self):
        spec = SystemSpec(d=2, s=2, N=6, profile_power=1)
        assert profile(spec).counts == profile_brute(spec).counts

    def test_symmetry_and_mass(self):
        for spec in (SystemSpec(d=3, s=2, N=8, zero_powers={1, 3},
                                profile_power=2),
                     SystemSpec(d=2, s=3, N=5, zero_powers={2},
                                profile_power=1)):
            prof = profile(spec)
            assert prof.is_symmetric()
            mass_spec = SystemSpec(d=spec.d, s=spec.s, N=spec.N,
                                   zero_powers=spec.zero_powers)
            assert prof.total() == count_mitm(mass_spec).count

    def test_requires_profile_power(self):
        with pytest.raises(ValueError):
            profile(SystemSpec(d=2, s=2, N=4))


def _joint_brute(spec, pair):
    U, s = spec.range_upper, spec.s
    out = {}
    for t in itertools.product(range(1, U + 1), repeat=2 * s):
        sig = lambda p: (sum(x**p for x in t[:s])
                         - sum(x**p for x in t[s:]))
        if any(sig(p) != 0 for p in spec.zero_powers):
            continue
        k = (sig(pair[0]), sig(pair[1]))
        out[k] = out.get(k, 0) + 1
    return out


class TestJointProfile:
    def test_with_zero_constraint(self):
        spec = SystemSpec(d=3, s=1, N=3, zero_powers={1}, upper=6)
        assert joint_profile(spec, (2, 3)) == _joint_brute(spec, (2, 3))

    def test_without_zero_constraint(self):
        spec = SystemSpec(d=2, s=2, N=3, upper=6)
        assert joint_profile(spec, (1, 2)) == _joint_brute(spec, (1, 2))

    def test_total_mass(self):
        spec = SystemSpec(d=3, s=2, N=4, zero_powers={1})
        jp = joint_profile(spec, (2, 3))
        base = SystemSpec(d=3, s=2, N=4, zero_powers={1})
        assert sum(jp.values()) == count_mitm(base).count


class TestDump:
    def test_roundtrip(self):
        spec = SystemSpec(d=3, s=2, N=8, zero_powers={1, 3}, profile_power=2)
        prof = profile(spec)
        buf = io.BytesIO()
        dump_profile(prof, buf)
        buf.seek(0)
        assert load_profile(buf) == prof.counts

    def test_bad_magic(self):
        with pytest.raises(ValueError):
            load_profile(io.BytesIO(b"NOTAPROF" + b"\x01" + b"\x00" * 8))

    def test_bad_version(self):
        buf = io.BytesIO()
        dump_profile(FrequencyProfile({0: 1}, None), buf)
        raw = bytearray(buf.getvalue())
        raw[8] = 99
        with pytest.raises(ValueError):
            load_profile(io.BytesIO(bytes(raw)))
