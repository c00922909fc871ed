"""Acceptance checks, shared by ``gapshift verify`` and the test suite.

Every check returns a :class:`CheckResult`; tolerances are fixed here.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

from .core import ShiftParams
from .enumeration import (arrangements_P, bicolored_count, count_brute, count_series,
                          entropy_estimate, gap_placements_Q, truncated_count_RL)
from .language import is_admissible
from .measures import (BernoulliMeasure, empirical_block_entropy, mutual_singularity_witness,
                       sample_path)
from .mixing import minimal_mixing_gap, random_pairs
from .pressure import (ExtendedPotential, Potential, base_pressure, equilibrium_states_report,
                       partition_function, required_tau, variation_profile)

LOG2 = math.log(2)

ORACLE_PARAMS = [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2)]
DEMO_VALUES = (0.0, -0.05, -0.1)


@dataclass
class CheckResult:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self, timing: bool = True) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f" ({self.seconds:.1f}s)" if timing else ""
        return f"[{mark}] {self.id:2d} {self.name}: {self.detail}{tail}"

    def as_dict(self, timing: bool = True) -> dict:
        d = {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def demo_potential() -> Potential:
    return Potential.from_symbol_values(DEMO_VALUES)


def markov_potential() -> Potential:
    """Range-2 potential on the 3-shift with a wide pressure margin."""
    return Potential.from_function(3, 2, lambda w: -0.04 * (w[0] - 1) - 0.03 * abs(w[0] - w[1]))


def check_oracle_equivalence(max_n: int = 10) -> CheckResult:
    bad = []
    for nu, tau, L in ORACLE_PARAMS:
        params = ShiftParams.make(nu, tau, L)
        dp = count_series(max_n, params).total
        for n in range(max_n + 1):
            b = count_brute(n, params)
            if b != dp[n]:
                bad.append((nu, tau, L, n, dp[n], b))
    return CheckResult(1, "oracle equivalence", not bad,
                       f"count_dp == brute force for n <= {max_n} at {ORACLE_PARAMS}"
                       if not bad else f"mismatches {bad[:3]}")


def _compositions_brute(ell, k):
    """Count ordered k-tuples of positive parts summing to ell by explicit listing."""
    def rec(rest, parts):
        if parts == 0:
            return 1 if rest == 0 else 0
        return sum(rec(rest - x, parts - 1) for x in range(1, rest + 1))
    return rec(ell, k)


def _placements_brute(k, m):
    """Count ways to drop m zeros into k+1 slots by explicit listing."""
    def rec(rest, slots):
        if slots == 1:
            return 1
        return sum(rec(rest - x, slots - 1) for x in range(rest + 1))
    return rec(m, k + 1)


def check_combinatorial_formulas() -> CheckResult:
    bad = []
    for ell in range(1, 9):
        for k in range(1, ell + 1):
            if arrangements_P(k, ell) != _compositions_brute(ell, k):
                bad.append(("P", k, ell))
    for k in range(1, 9):
        for m in range(0, 9):
            if gap_placements_Q(k, m) != _placements_brute(k, m):
                bad.append(("Q", k, m))
    return CheckResult(2, "combinatorial formulas", not bad,
                       "P(k,l)=C(l-1,k-1), Q(k,m)=C(m+k,k) match enumeration" if not bad else str(bad[:5]))


def check_entropy_lower_bound(max_n: int = 12) -> CheckResult:
    bad = []
    for nu, tau, L in ORACLE_PARAMS + [(2, 1, 1), (3, "1/2", 4)]:
        params = ShiftParams.make(nu, tau, L)
        counts = count_series(max_n, params).total
        for n in range(max_n + 1):
            floor = L * nu ** n if n else 1
            ok = counts[n] >= floor
            if L >= 2 and n >= 1:
                ok = counts[n] > floor
            if not ok:
                bad.append((nu, tau, L, n))
    return CheckResult(3, "entropy lower bound", not bad,
                       f"|W_n| >= L nu^n (strict for L>=2) for n <= {max_n}" if not bad else str(bad[:5]))


def check_entropy_convergence(n: int = 500) -> CheckResult:
    rows = []
    ok = True
    for nu, tau, L in [(2, 2, 2), (2, 3, 3)]:
        est = entropy_estimate(n, ShiftParams.make(nu, tau, L))
        inside = LOG2 <= est.rate <= LOG2 + 0.05
        ok &= inside
        rows.append(f"(nu,tau,L)=({nu},{tau},{L}) rate-log2={est.rate - LOG2:.5f}")
    return CheckResult(4, "entropy convergence", ok, f"n={n}: " + "; ".join(rows))


def check_bicolored_growth() -> CheckResult:
    params = ShiftParams.make(2, 2, 2)
    bound = max(LOG2, math.log(3 * params.nu) / (float(params.tau) + 1))
    series = count_series(400, params)
    rows, ok = [], True
    for n in (100, 200, 400):
        rate = math.log(series.multi[n]) / n
        lim = bound + 5 * math.log(n) / n
        ok &= rate <= lim
        rows.append(f"n={n} {rate:.4f}<={lim:.4f}")
    assert series.multi[100] == bicolored_count(100, params)
    return CheckResult(5, "bicolored growth bound", ok, ", ".join(rows))


def check_mixing(count: int = 100, seed: int = 2024) -> CheckResult:
    params = ShiftParams.make(2, 1, 2)
    worst = -math.inf
    bad = []
    for eta, omega in random_pairs(count, params, seed=seed, max_len=6):
        res = minimal_mixing_gap(eta, omega, params)
        limit = math.ceil((params.tau + 1) * (len(eta) + 2 + len(omega)))
        for gap, w in res.certificates.items():
            if (not is_admissible(w, params) or w[:len(eta)] != eta
                    or w[len(eta) + gap:] != omega or len(w) != len(eta) + gap + len(omega)):
                bad.append(("certificate", eta, omega, gap))
        if set(res.certificates) != set(range(res.n_min, res.horizon + 1)):
            bad.append(("coverage", eta, omega))
        if res.n_min > limit:
            bad.append(("bound", eta, omega, res.n_min, limit))
        worst = max(worst, res.n_min - limit)
    return CheckResult(6, "topological mixing", not bad,
                       f"{count} pairs, max(N_min - bound) = {worst}" if not bad else str(bad[:3]))


def check_max_entropy_measures(length: int = 100_000) -> CheckResult:
    ok = True
    rows = []
    params3 = ShiftParams.make(2, 3, 3)
    for m1, m2 in itertools.combinations([BernoulliMeasure(params3, j) for j in (1, 2, 3)], 2):
        ok &= mutual_singularity_witness(m1, m2).disjoint
    for nu in (2, 3):
        params = ShiftParams.make(nu, 2, 2)
        for color in (1, 2):
            path = sample_path(BernoulliMeasure(params, color), length, seed=17 * nu + color)
            ok &= is_admissible(path, params)
            for k in (1, 3, 5):
                h = empirical_block_entropy(path, k)
                err = abs(h - math.log(nu))
                ok &= err <= 0.05
                rows.append(err)
    return CheckResult(7, "maximal-entropy measures", ok,
                       f"supports disjoint, samples admissible, max |h_k - log nu| = {max(rows):.2e}")


def check_base_pressure() -> CheckResult:
    p0 = base_pressure(Potential.constant(3))
    f = demo_potential()
    p1 = base_pressure(f)
    exact = math.log(1 + math.exp(-0.05) + math.exp(-0.1))
    e0, e1 = abs(p0 - math.log(3)), abs(p1 - exact)
    margin = p1 > f.sup + LOG2
    ok = e0 <= 1e-12 and e1 <= 1e-12 and margin
    return CheckResult(8, "base pressure", ok,
                       f"|P(0)-log3|={e0:.1e}, |P(f)-exact|={e1:.1e}, P(f)-sup f={p1 - f.sup:.4f} > log2")


def check_pressure_on_sigma(n: int = 400) -> CheckResult:
    f = demo_potential()
    params = ShiftParams.make(3, "3/2", 2)
    star = required_tau(f, 3)
    rep = partition_function(n, f, params)
    P = rep.base_pressure
    bound = f.sup + max(LOG2, math.log(9) / (float(params.tau) + 1)) + 5 * math.log(n) / n
    ok = (params.tau >= star and P <= rep.rate <= P + 0.05
          and rep.strata_rel_error <= 1e-9 and rep.multi_rate <= bound)
    return CheckResult(9, "pressure on the coloured shift", ok,
                       f"tau*={float(star):.6f}, rate-P={rep.rate - P:.5f}, "
                       f"strata err={rep.strata_rel_error:.1e}, multi {rep.multi_rate:.4f}<={bound:.4f}")


def check_extension_regularity(pairs: int = 10_000, seed: int = 7) -> CheckResult:
    rows = []
    ok = True
    for f, params in [(markov_potential(), ShiftParams.make(3, "3/2", 2)),
                      (demo_potential(), ShiftParams.make(3, 1, 3))]:
        radius_max = f.range + 1
        # `pairs` window pairs in total at the radii n >= range
        var = variation_profile(ExtendedPotential(f, params), radius_max,
                                pairs_per_radius=pairs // 2, seed=seed)
        ok &= all(v == 0.0 for v in var[f.range:])
        rows.append(f"r={f.range}: var={['%.3g' % v for v in var]}")
    return CheckResult(10, "extension regularity", ok, "; ".join(rows))


def check_multi_state_reports() -> CheckResult:
    ok = True
    rows = []
    for f in (demo_potential(), markov_potential()):
        for L, tau in ((2, "3/2"), (3, 2)):
            params = ShiftParams.make(3, tau, L)
            rep = equilibrium_states_report(f, params)
            pressures = {s.pressure for s in rep.states}
            ok &= len(rep.states) == L and len(pressures) == 1
            ok &= len(rep.singular_pairs) == L * (L - 1) // 2
            for s in rep.states:
                ok &= abs(s.entropy + s.integral - s.pressure) <= 1e-9
            rows.append(f"r={f.range},L={L}")
    inf = equilibrium_states_report(demo_potential(), ShiftParams.make(3, 2, 2), infinite=True)
    ok &= inf.truncated_monotone
    vals = [truncated_count_RL(12, L, ShiftParams.make(3, 2, 2)) for L in range(1, 5)]
    ok &= all(a <= b for a, b in zip(vals, vals[1:]))
    return CheckResult(11, "multiple equilibrium states", ok,
                       f"reports {rows} agree; h+int f=P; R_L(12) monotone in L")


CHECKS: list[Callable[[], CheckResult]] = [
    check_oracle_equivalence,
    check_combinatorial_formulas,
    check_entropy_lower_bound,
    check_entropy_convergence,
    check_bicolored_growth,
    check_mixing,
    check_max_entropy_measures,
    check_base_pressure,
    check_pressure_on_sigma,
    check_extension_regularity,
    check_multi_state_reports,
]


def run_check(fn: Callable[[], CheckResult]) -> CheckResult:
    t = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # reported as a failure, not raised
        res = CheckResult(CHECKS.index(fn) + 1, fn.__name__, False, f"error: {exc!r}")
    res.seconds = time.perf_counter() - t
    return res
