"""Acceptance criteria 1-12.

Each test records one PASS/FAIL line (printed immediately and repeated in the
terminal summary).  Run ``pytest tests/test_acceptance.py -s`` to watch them
as they happen.
"""

import math
from contextlib import contextmanager

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from squarewell import (
    Parity,
    WellSpec,
    intensity,
    isw_state,
    p2_expectation,
    p4_expectation,
    phi,
    phi_in_out,
    psi,
    solve_all,
)
from squarewell.cli import main
from squarewell.momentum import isw_intensity, isw_singular_intensity, singular_limit
from squarewell.numerics.transforms import MomentRequest, fourier_oracle, isw_moment, momentum_moment
from squarewell.position import psi_derivative
from squarewell.verify import integral_equation_residual


@contextmanager
def criterion(key, desc):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        ACCEPTANCE_RESULTS[key] = (desc, False, info["detail"])
        print(f"\nFAIL  {key}  {desc}  ({info['detail']})")
        raise
    ACCEPTANCE_RESULTS[key] = (desc, True, info["detail"])
    print(f"\nPASS  {key}  {desc}  ({info['detail']})")


def test_ac01_eigenvalues(states):
    with criterion("AC01", "eigenvalues beta0, beta1 and state count") as c:
        c["detail"] = f"beta0={states[0].beta:.6f} beta1={states[1].beta:.6f} count={len(states)}"
        assert abs(states[0].beta - 1.1862) < 5e-4
        assert abs(states[1].beta - 2.3185) < 5e-4
        assert len(states) == 3


def test_ac02_analytic_vs_oracle(states):
    with criterion("AC02", "closed-form phi vs quadrature transform, 201 points") as c:
        ps = np.linspace(-30.0, 30.0, 201)
        worst = []
        for st in states[:2]:
            oracle = np.array([fourier_oracle(st, p) for p in ps])
            worst.append(float(np.max(np.abs(phi(st, ps) - oracle))))
        c["detail"] = "max dev " + ", ".join(f"{w:.1e}" for w in worst)
        assert max(worst) < 1e-8


def test_ac03_parseval(states):
    with criterion("AC03", "Parseval over [-100, 100]") as c:
        devs = [abs(momentum_moment(MomentRequest(st, 0, 100.0)).value - 1.0) for st in states[:2]]
        c["detail"] = "deficit " + ", ".join(f"{d:.1e}" for d in devs)
        assert max(devs) < 1e-4


def test_ac04_cross_p2():
    with criterion("AC04", "<p^2> closed form vs momentum moment, 10 wells") as c:
        worst, checked = 0.0, 0
        for v0 in np.linspace(2.0, 50.0, 10):
            for st in solve_all(WellSpec(float(v0), 2.0))[:2]:
                res = momentum_moment(MomentRequest(st, 2, 100.0))
                closed = p2_expectation(st)
                worst = max(worst, abs(closed - res.value) / closed)
                checked += 1
        c["detail"] = f"{checked} states, worst rel {worst:.1e}"
        assert worst < 1e-3


def test_ac05_cross_p4(states):
    with criterion("AC05", "<p^4> closed form vs moment with tail, P=100/200/400") as c:
        parts = []
        for st in states[:2]:
            closed = p4_expectation(st)
            errs = [
                abs(closed - momentum_moment(MomentRequest(st, 4, P, include_tail_estimate=True)).total) / closed
                for P in (100.0, 200.0, 400.0)
            ]
            parts.append(errs)
        c["detail"] = "; ".join(" ".join(f"{e:.1e}" for e in errs) for errs in parts)
        for errs in parts:
            assert errs[0] < 2e-2
            assert errs[0] > errs[1] > errs[2]


def _mp_limit_sequence(st, ks, dps=50):
    """g(z)/(z^2 - beta^2) at z = beta(1 +- 10^-k) with beta refined in mpmath."""
    with mpmath.workdps(dps):
        gam = mpmath.sqrt(2 * mpmath.mpf(st.units.mass) * st.well.v0) / st.units.hbar
        a = mpmath.mpf(st.well.a)
        h = a / 2

        def alpha_of(beta):
            return mpmath.sqrt(gam**2 - beta**2)

        def match(beta):
            al, dd = alpha_of(beta), beta * h
            if st.parity is Parity.EVEN:
                return beta * mpmath.sin(dd) - al * mpmath.cos(dd)
            return al * mpmath.sin(dd) + beta * mpmath.cos(dd)

        beta = mpmath.findroot(match, mpmath.mpf(st.beta), tol=mpmath.mpf(10) ** (-dps + 5))
        al = alpha_of(beta)

        def g(z):
            if st.parity is Parity.EVEN:
                return -al * mpmath.cos(z * h) + z * mpmath.sin(z * h)
            return al * mpmath.sin(z * h) + z * mpmath.cos(z * h)

        seqs = {}
        for sign in (1, -1):
            vals = []
            for k in ks:
                z = beta * (1 + sign * mpmath.mpf(10) ** (-k))
                vals.append(float(g(z) / (z * z - beta * beta)))
            seqs[sign] = vals
        return seqs


def test_ac06_removable_singularity(states):
    with criterion("AC06", "limit sequence converges; implemented limit matches (+2d cos d form)") as c:
        details = []
        for st in states[:2]:
            seqs = _mp_limit_sequence(st, range(3, 9))
            for vals in seqs.values():
                diffs = np.abs(np.diff(vals))
                ratios = diffs[:-1] / diffs[1:]
                assert np.all((ratios > 8.0) & (ratios < 12.5)), ratios
            converged = 0.5 * (seqs[1][-1] + seqs[-1][-1])
            got = singular_limit(st)
            assert abs(got - converged) < 1e-6
            alpha, beta, d, a = st.alpha, st.beta, st.d, st.well.a
            if st.parity is Parity.EVEN:
                plus = ((alpha * a + 2) * math.sin(d) + 2 * d * math.cos(d)) / (4 * beta)
                minus = ((alpha * a + 2) * math.sin(d) - 2 * d * math.cos(d)) / (4 * beta)
                assert abs(plus - converged) < 1e-6
                assert abs(minus - converged) > 1e-2
                details.append(f"even limit {converged:.6f}, minus-sign form {minus:.6f}")
            else:
                printed = ((alpha * a + 2) * math.cos(d) - 2 * d * math.sin(d)) / (4 * beta)
                assert abs(printed - converged) < 1e-6
                details.append(f"odd limit {converged:.6f} matches")
        c["detail"] = "; ".join(details)


def _envelope_slope(intensity_fn, period, lo=30.0, hi=100.0):
    """Log-log slope of per-period maxima of I over [lo, hi]."""
    ps, peaks = [], []
    edges = np.arange(lo, hi + 1e-12, period)
    for left, right in zip(edges[:-1], edges[1:]):
        grid = np.linspace(left, right, 801)
        vals = intensity_fn(grid)
        j = int(np.argmax(vals))
        ps.append(grid[j])
        peaks.append(vals[j])
    return float(np.polyfit(np.log(ps), np.log(peaks), 1)[0])


def test_ac07_tail_exponents(ground):
    with criterion("AC07", "sup-envelope slopes over [30, 100]") as c:
        fsw = _envelope_slope(lambda p: intensity(ground, p), 2 * math.pi / ground.well.a)
        isw1 = isw_state(1, 2.0)
        isw = _envelope_slope(lambda p: isw_intensity(isw1, p), 2 * math.pi / isw1.a)
        c["detail"] = f"FSW {fsw:.3f}, ISW {isw:.3f}"
        assert abs(fsw + 6.0) < 0.1
        assert abs(isw + 4.0) < 0.1


def test_ac08_isw_singularity():
    with criterion("AC08", "ISW I(n pi hbar/a) = a/(4 pi hbar)") as c:
        worst = 0.0
        a = 2.0
        exact = a / (4 * math.pi)
        for n in (1, 2, 3):
            st = isw_state(n, a)
            p0 = st.units.hbar * st.beta_n
            assert isw_intensity(st, p0) == pytest.approx(exact, rel=1e-14, abs=0)
            assert isw_singular_intensity(st) == exact
            # direct 0/0 quotient, no limit branch
            f = np.cos if n % 2 else np.sin
            norm2 = 4 * a * n**2 * math.pi
            for k in range(3, 8):
                for p in (p0 * (1 + 10.0**-k), p0 * (1 - 10.0**-k)):
                    naive = norm2 * f(p * a / 2) ** 2 / (a**4 * (st.beta_n**2 - p**2) ** 2)
                    last = abs(naive - exact)
            worst = max(worst, last)
        c["detail"] = f"deviation at 1e-7 offset {worst:.1e}"
        assert worst < 1e-6


def test_ac09_isw_p4_divergence():
    with criterion("AC09", "ISW <p^4> grows linearly in P") as c:
        st = isw_state(1, 2.0)
        Ps = np.array([50.0, 100.0, 200.0])
        vals = np.array([isw_moment(st, 4, P).value for P in Ps])
        b, a0 = np.polyfit(Ps, vals, 1)
        fit = a0 + b * Ps
        r2 = 1 - np.sum((vals - fit) ** 2) / np.sum((vals - vals.mean()) ** 2)
        c["detail"] = f"slope {b:.4f}, R^2 {r2:.6f}"
        assert b > 0
        assert r2 > 0.99


def test_ac10_isw_limit():
    with criterion("AC10", "finite well approaches the infinite well") as c:
        ladder = [1e2, 1e4, 1e6]
        gaps, betas, p4s = [], [], []
        for v0 in ladder:
            st = solve_all(WellSpec(v0, 2.0))[0]
            p2 = p2_expectation(st)
            gaps.append(abs(p2 - st.beta**2) / p2)
            betas.append(st.beta)
            p4s.append(p4_expectation(st))
        slope = float(np.polyfit(np.log(ladder), np.log(p4s), 1)[0])
        beta_err = abs(betas[-1] * 2.0 / math.pi - 1)
        c["detail"] = f"gaps {[f'{g:.1e}' for g in gaps]}, beta err {beta_err:.1e}, p4 exponent {slope:.3f}"
        assert gaps[0] > gaps[1] > gaps[2]
        assert beta_err < 1e-2
        assert abs(slope - 0.5) < 0.05


def test_ac11_integral_equation(states):
    with criterion("AC11", "momentum-space integral equation residual") as c:
        vals = [integral_equation_residual(st).value for st in states[:2]]
        c["detail"] = "residual " + ", ".join(f"{v:.1e}" for v in vals)
        assert max(vals) < 1e-3


def test_ac12_properties(states, capsys):
    with criterion("AC12", "continuity, parity, phi_in+phi_out, <p^4> >= <p^2>^2, CLI determinism") as c:
        h = states[0].well.half_width
        ps = np.linspace(-40.0, 40.0, 4001)
        for st in states:
            for edge in (-h, h):
                eps = 1e-12
                for f in (psi, psi_derivative):
                    inside = f(st, edge - math.copysign(eps, edge))
                    outside = f(st, edge + math.copysign(eps, edge))
                    assert abs(inside - outside) < 1e-9 * max(1.0, abs(f(st, 0.0)), abs(inside))
            fwd, back = phi(st, ps), phi(st, -ps)
            sign = st.parity.sign
            assert np.max(np.abs(fwd - sign * back)) < 1e-14
            if st.parity is Parity.EVEN:
                assert np.max(np.abs(fwd.imag)) == 0
            else:
                assert np.max(np.abs(fwd.real)) == 0
            assert np.array_equal(intensity(st, ps), intensity(st, -ps))
            away = ps[np.abs(np.abs(ps) - st.beta) > 1e-3 * st.beta]
            inner, outer = phi_in_out(st, away)
            ref = phi(st, away)
            scale = np.maximum(np.abs(inner), np.abs(ref))
            scale = np.where(scale > 0, scale, 1.0)
            assert np.max(np.abs(inner + outer - ref) / scale) < 1e-10
            assert p4_expectation(st) >= p2_expectation(st) ** 2
        outputs = []
        for _ in range(2):
            for argv in (["spectrum"], ["figure", "--which", "fig3", "--samples", "101", "--format", "json"]):
                assert main(argv, environ={}) == 0
            outputs.append(capsys.readouterr().out.encode())
        assert outputs[0] == outputs[1]
        c["detail"] = f"{len(states)} states, CLI output {len(outputs[0])} bytes identical"
