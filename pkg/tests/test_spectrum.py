import math

import numpy as np
import pytest

from squarewell import (
    ConvergenceError,
    DomainError,
    Parity,
    SpectrumRequest,
    UnitSystem,
    WellSpec,
    count_bound_states,
    isw_state,
    solve_all,
)
from squarewell.spectrum import brackets


def scan_roots(well, step=math.pi / 2000):
    """Sign changes of tan-free matching functions found by a plain grid scan.

    Works in d on (0, gamma a / 2); returns sorted (d_lo, d_hi, parity).
    """
    d_max = 0.5 * well.gamma * well.a
    ds = np.arange(step, d_max, step)
    ds = np.append(ds, d_max * (1 - 1e-12))
    beta = 2 * ds / well.a
    alpha = np.sqrt(np.maximum(well.gamma**2 - beta**2, 0.0))
    out = []
    for parity, f in (
        (Parity.EVEN, beta * np.sin(ds) - alpha * np.cos(ds)),
        (Parity.ODD, alpha * np.sin(ds) + beta * np.cos(ds)),
    ):
        for i in np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0]:
            out.append((ds[i], ds[i + 1], parity))
    return sorted(out, key=lambda r: r[0])


WELLS = [
    WellSpec(10.0, 2.0),
    WellSpec(1.0, 2.0),
    WellSpec(0.05, 1.0),
    WellSpec(50.0, 2.0),
    WellSpec(37.3, 3.1),
    WellSpec(10.0, 2.0, UnitSystem(mass=1.0)),
    WellSpec(4.0, 1.7, UnitSystem(mass=2.0, hbar=0.6)),
]


@pytest.mark.parametrize("well", WELLS, ids=lambda w: f"v0={w.v0},a={w.a},m={w.units.mass}")
def test_spectrum_matches_brute_force_scan(well):
    scanned = scan_roots(well)
    states = solve_all(well)
    assert len(states) == len(scanned) == count_bound_states(well)
    for st, (lo, hi, parity) in zip(states, scanned):
        assert st.parity is parity
        assert lo <= st.d <= hi


def test_reference_eigenvalues(states):
    assert states[0].beta == pytest.approx(1.1862, abs=5e-4)
    assert states[1].beta == pytest.approx(2.3185, abs=5e-4)
    assert len(states) == 3
    third = states[2]
    assert third.parity is Parity.EVEN
    assert math.pi < third.d <= 0.5 * third.gamma * third.well.a


def test_heavier_mass_count():
    # gamma a / pi = 2 sqrt(20) / pi ~ 2.85
    assert count_bound_states(WellSpec(10.0, 2.0, UnitSystem(mass=1.0))) == 3


def test_ordering_and_alternation(states):
    for prev, cur in zip(states, states[1:]):
        assert cur.energy > prev.energy
        assert cur.parity is not prev.parity


def test_brackets_partition_half_periods(well):
    for k, (parity, lo, hi) in enumerate(brackets(well)):
        assert parity is Parity.for_index(k)
        assert lo == pytest.approx(k * math.pi / 2)
        assert hi <= 0.5 * well.gamma * well.a + 1e-15


def test_every_level_deepens_monotonically():
    v0s = np.linspace(1.0, 50.0, 60)
    betas = [[s.beta for s in solve_all(WellSpec(float(v), 2.0))] for v in v0s]
    for k in range(max(map(len, betas))):
        seq = [b[k] for b in betas if len(b) > k]
        assert all(x < y for x, y in zip(seq, seq[1:]))


def test_ground_state_approaches_infinite_well():
    errs = [abs(solve_all(WellSpec(v, 2.0))[0].beta - math.pi / 2) for v in (1e2, 1e4, 1e6)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] / (math.pi / 2) < 1e-2


def test_shallow_well_has_single_even_state():
    states = solve_all(WellSpec(1e-6, 2.0))
    assert len(states) == 1
    assert states[0].parity is Parity.EVEN
    assert 0 < states[0].energy < 1e-6


def test_threshold_state_is_flagged():
    # gamma a / pi = 2 exactly: the third state sits at the continuum edge
    v0 = (math.pi) ** 2
    states = solve_all(WellSpec(v0, 2.0))
    assert len(states) == 3
    assert states[-1].at_threshold
    assert states[-1].energy < v0
    assert not states[0].at_threshold


def test_bisection_budget_exhausted(well):
    with pytest.raises(ConvergenceError):
        solve_all(SpectrumRequest(well, max_iter=3))


def test_spectrum_request_validation(well):
    with pytest.raises(DomainError):
        SpectrumRequest(well, tol_root=0.0)
    with pytest.raises(DomainError):
        SpectrumRequest(well, max_iter=0)


def test_solve_all_accepts_request(well, states):
    assert solve_all(SpectrumRequest(well)) == states


def test_isw_state_values():
    st = isw_state(1, 2.0)
    assert st.beta_n == pytest.approx(math.pi / 2, rel=1e-15)
    assert st.energy == pytest.approx(math.pi**2 / 4, rel=1e-15)
    assert st.parity is Parity.EVEN
    st2 = isw_state(2, 2.0)
    assert st2.beta_n == pytest.approx(math.pi, rel=1e-15)
    assert st2.parity is Parity.ODD
    heavy = isw_state(1, 1.0, UnitSystem(mass=2.0, hbar=0.5))
    assert heavy.energy == pytest.approx(0.25 * math.pi**2 / 4.0, rel=1e-15)


@pytest.mark.parametrize("n,a", [(0, 1.0), (-1, 1.0), (1, 0.0), (1, -2.0)])
def test_isw_state_rejects(n, a):
    with pytest.raises(DomainError):
        isw_state(n, a)
