"""Potentials, their extension to the coloured shift, and pressure.

A :class:`Potential` is a locally constant function on the base full
nu-shift over ``{1..nu}``: ``f(x) = values[x_0 .. x_{r-1}]``. Its extension
``g`` to the coloured shift

* equals ``sup f`` where the centre symbol is 0;
* otherwise reads the longest colour-constant window ``x_{-m}..x_m`` around
  the centre, completes it to a monochromatic point with the colour's
  smallest symbol, maps it to colour 1 and evaluates ``f``.

So ``g`` depends on coordinates within ``r - 1`` of the centre. Along the
zero-padded point of a word, every coloured block contributes a weight
that depends only on its contents, which keeps partition functions inside
the block-composition DP of :mod:`gapshift.enumeration`.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import ShiftParams, Word, format_fraction, rational_upper_bound
from .enumeration import block_dp, color_walks, truncated_count_RL
from .language import WordSampler, is_admissible
from .measures import MarkovMeasure, mutual_singularity_witness

LOG2 = math.log(2)


class PreconditionError(ValueError):
    """A hypothesis needed for multiple equilibrium states fails."""


@dataclass(frozen=True)
class Potential:
    nu: int
    range: int
    values: dict

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("range must be >= 1")
        expected = set(itertools.product(range(1, self.nu + 1), repeat=self.range))
        if set(self.values) != expected:
            raise ValueError(f"potential table must have exactly {self.nu ** self.range} "
                             f"entries over words of length {self.range}")

    @classmethod
    def from_symbol_values(cls, vals: Sequence[float]) -> "Potential":
        """Range-1 potential with ``f(i) = vals[i-1]``."""
        return cls(len(vals), 1, {(i + 1,): float(v) for i, v in enumerate(vals)})

    @classmethod
    def constant(cls, nu: int, c: float = 0.0, r: int = 1) -> "Potential":
        words = itertools.product(range(1, nu + 1), repeat=r)
        return cls(nu, r, {w: float(c) for w in words})

    @classmethod
    def from_function(cls, nu: int, r: int, fn) -> "Potential":
        words = itertools.product(range(1, nu + 1), repeat=r)
        return cls(nu, r, {w: float(fn(w)) for w in words})

    def __call__(self, word: Sequence[int]) -> float:
        return self.values[tuple(word[: self.range])]

    @property
    def sup(self) -> float:
        return max(self.values.values())

    @property
    def inf(self) -> float:
        return min(self.values.values())

    def holder_constant(self, theta: float) -> float:
        """C with var_n f <= C theta^n for all n (theta in (0, 1))."""
        return 2 * (self.sup - self.inf) * theta ** (-self.range)

    def lift(self, r: int) -> "Potential":
        """Same function viewed as a range-``r`` potential (r >= range)."""
        if r < self.range:
            raise ValueError("cannot lower the range")
        return Potential.from_function(self.nu, r, lambda w: self.values[w[: self.range]])

    def to_dict(self) -> dict:
        return {"range": self.range,
                "values": {" ".join(map(str, w)): v for w, v in sorted(self.values.items())}}

    @classmethod
    def from_dict(cls, d: dict, nu: Optional[int] = None) -> "Potential":
        r = int(d["range"])
        vals = {}
        for key, v in d["values"].items():
            key = key.strip()
            word = tuple(int(t) for t in key.split()) if " " in key or r == 1 else tuple(int(ch) for ch in key)
            vals[word] = float(v)
        if nu is None:
            nu = max(max(w) for w in vals)
        return cls(nu, r, vals)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def load(cls, path, nu: Optional[int] = None) -> "Potential":
        return cls.from_dict(json.loads(Path(path).read_text()), nu=nu)


# ---------------------------------------------------------------------------
# Base pressure


@dataclass
class SpectralRadius:
    rho: float
    lower: float
    upper: float
    iterations: int
    vector: np.ndarray


def transfer_matrix(f: Potential) -> np.ndarray:
    """Matrix on (r-1)-words: ``M[u, v] = exp f(u + v[-1])`` when v = u[1:] + v[-1]."""
    nu, r = f.nu, f.range
    if r == 1:
        return np.array([[math.fsum(math.exp(v) for v in f.values.values())]])
    states = list(itertools.product(range(1, nu + 1), repeat=r - 1))
    index = {s: i for i, s in enumerate(states)}
    M = np.zeros((len(states), len(states)))
    for w, v in f.values.items():
        M[index[w[:-1]], index[w[1:]]] = math.exp(v)
    return M


def perron_root(M: np.ndarray, rtol: float = 1e-12, max_iter: int = 1_000_000) -> SpectralRadius:
    """Spectral radius of a primitive nonnegative matrix by power iteration.

    Collatz-Wielandt: ``min_i (Mx)_i/x_i <= rho <= max_i (Mx)_i/x_i`` for x > 0;
    iteration stops once the bracket is within ``rtol``.
    """
    n = M.shape[0]
    x = np.ones(n) / n
    lo, hi = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = M @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        x = y / y.sum()
        if hi - lo <= rtol * lo:
            break
    else:
        raise RuntimeError(f"power iteration did not converge (bracket {lo}, {hi})")
    return SpectralRadius(rho=0.5 * (lo + hi), lower=lo, upper=hi, iterations=it, vector=x)


def base_pressure_bracket(f: Potential) -> SpectralRadius:
    return perron_root(transfer_matrix(f))


def base_pressure(f: Potential) -> float:
    """Pressure of ``f`` on the full nu-shift."""
    if f.range == 1:
        m = f.sup
        return m + math.log(math.fsum(math.exp(v - m) for v in f.values.values()))
    return math.log(base_pressure_bracket(f).rho)


def required_tau(f: Potential, c: int, precision: Fraction = Fraction(1, 10**6)) -> Fraction:
    """Rational upper bound of ``log(c*nu)/(P(f) - sup f) - 1``."""
    margin = base_pressure(f) - f.sup
    if margin <= 0:
        raise PreconditionError(
            f"P(f) - sup f = {margin:.6g} <= 0: threshold log({c}nu)/(P(f) - sup f) - 1 undefined")
    return rational_upper_bound(math.log(c * f.nu) / margin - 1, precision)


def chain_constant(num_colors: Optional[int]) -> int:
    """3 for two colours, 5 for three or more (None: infinitely many)."""
    return 3 if num_colors is not None and num_colors <= 2 else 5


# ---------------------------------------------------------------------------
# Extension to the coloured shift


@dataclass(frozen=True)
class ExtendedPotential:
    base: Potential
    params: ShiftParams

    def __post_init__(self):
        if self.base.nu != self.params.nu:
            raise ValueError("potential and shift disagree on nu")

    @property
    def sup(self) -> float:
        return self.base.sup

    @property
    def pressure_margin(self) -> float:
        return base_pressure(self.base) - self.base.sup

    @property
    def margin_ok(self) -> bool:
        """``P(f) > sup f + log 2``."""
        return self.pressure_margin > LOG2

    def __call__(self, window: Sequence[int], center: Optional[int] = None) -> float:
        return evaluate_g(window, self.base, self.params, center=center)


def evaluate_g(window: Sequence[int], f: Potential, params: ShiftParams,
               center: Optional[int] = None, check: bool = True) -> float:
    """Value of the extended potential at the point whose centre is ``window[center]``."""
    w = params.validate(window)
    if center is None:
        if len(w) % 2 == 0:
            raise ValueError("odd-length window required when no centre is given")
        center = len(w) // 2
    radius = min(center, len(w) - 1 - center)
    if radius < f.range:
        raise ValueError(f"window radius {radius} smaller than potential range {f.range}")
    if check and not is_admissible(w, params):
        raise ValueError("window is not admissible")
    x0 = w[center]
    if x0 == 0:
        return f.sup
    c = params.color(x0)
    m = 0
    while m < radius and params.color(w[center - m - 1]) == c and params.color(w[center + m + 1]) == c:
        m += 1
    shift = (c - 1) * params.nu
    y = tuple(w[center + d] - shift if d <= m else 1 for d in range(f.range))
    return f.values[y]


def block_weights(f: Potential, max_len: int, scale: float = 1.0) -> list[float]:
    """``B[a] = scale^-a * sum over blocks of length a of exp(sum of g along the block)``.

    Index 0 is unused. For r = 1 this is ``(sum_i e^{f(i)} / scale)^a``.
    """
    nu, r = f.nu, f.range
    out = [0.0] * (max_len + 1)
    if r == 1:
        s = math.fsum(math.exp(v) for v in f.values.values()) / scale
        for a in range(1, max_len + 1):
            out[a] = s ** a
        return out
    expf = {}
    for a in range(1, max_len + 1):
        # ends[j]: offsets t whose term is fixed once symbol j is read
        ends: dict[int, list[tuple[int, int]]] = {}
        for t in range(a):
            m = min(t, a - 1 - t)
            ends.setdefault(t + min(m, r - 1), []).append((t, m))
        layer: dict[tuple, float] = {(): 1.0}
        for j in range(a):
            nxt: dict[tuple, float] = {}
            terms = ends.get(j, [])
            for hist, wt in layer.items():
                for s in range(1, nu + 1):
                    h = hist + (s,)
                    # h holds symbols j-len(h)+1 .. j
                    base = j - len(h) + 1
                    tot = 0.0
                    for t, m in terms:
                        key = tuple(h[t - base + d] if d <= m else 1 for d in range(r))
                        tot += f.values[key]
                    e = expf.get(tot)
                    if e is None:
                        e = expf[tot] = math.exp(tot)
                    key_h = h[-(r - 1):] if r > 1 else ()
                    nxt[key_h] = nxt.get(key_h, 0.0) + wt * e / scale
            layer = nxt
        out[a] = math.fsum(layer.values())
    return out


def block_weight_brute(f: Potential, a: int) -> float:
    """Oracle for :func:`block_weights`: enumerate blocks, sum exp of g over the padded point."""
    params = ShiftParams.make(f.nu, 0, 1)
    pad = (0,) * (f.range + 1)
    total = 0.0
    for block in itertools.product(range(1, f.nu + 1), repeat=a):
        x = pad + block + pad
        s = math.fsum(evaluate_g(x, f, params, center=len(pad) + t, check=False) for t in range(a))
        total += math.exp(s)
    return total


# ---------------------------------------------------------------------------
# Partition functions


@dataclass
class PressureReport:
    n: int
    log_Z: float
    rate: float
    base_pressure: float
    sup_f: float
    tau_star: Fraction
    tau_ok: bool
    margin_ok: bool
    log_Z_star: float
    log_Z_single: float
    log_Z_multi: float
    log_zero_term: float
    strata_rel_error: float
    num_colors: int

    @property
    def multi_rate(self) -> float:
        return self.log_Z_multi / self.n if self.n else float("nan")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "log_Z": self.log_Z,
            "rate": self.rate,
            "base_pressure": self.base_pressure,
            "sup_f": self.sup_f,
            "tau_star": format_fraction(self.tau_star),
            "tau_ok": self.tau_ok,
            "margin_ok": self.margin_ok,
            "star_rate": self.log_Z_star / self.n if self.n else None,
            "single_rate_per_color": self.log_Z_single / self.n if self.n else None,
            "multi_rate": self.multi_rate,
            "strata_rel_error": self.strata_rel_error,
        }


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def partition_series(max_n: int, f: Potential, params: ShiftParams) -> list[PressureReport]:
    """Pressure reports for every n in ``1..max_n`` from one weighted DP pass.

    Weights are divided by ``exp(P(f))`` per symbol to stay in float range;
    logs are shifted back afterwards.
    """
    if f.nu != params.nu:
        raise ValueError("potential and shift disagree on nu")
    P = base_pressure(f)
    rho = math.exp(P)
    zw = math.exp(f.sup - P)
    B = block_weights(f, max_n, scale=rho)
    series = block_dp(max_n, params, lambda a: B[a], zero_weight=zw, zero=0.0)
    c = chain_constant(params.num_colors)
    tau_star = required_tau(f, c) if P > f.sup else Fraction(-1)
    tau_ok = P > f.sup and params.tau >= tau_star
    margin_ok = P - f.sup > LOG2
    L = params.num_colors
    reports = []
    single = [0.0] * (max_n + 1)
    for n in range(1, max_n + 1):
        # one colour, optional zeros at both ends: sum over block length a and placement
        single[n] = math.fsum((n - a + 1) * zw ** (n - a) * B[a] for a in range(1, n + 1))
    independent = partition_totals_automaton(max_n, params, B, zw)
    for n in range(1, max_n + 1):
        total = series.total[n]
        parts = L * single[n] + series.multi[n] + series.zeros[n]
        rel = abs(independent[n] - parts) / independent[n]
        shift = n * P
        reports.append(PressureReport(
            n=n,
            log_Z=shift + _log(total),
            rate=(shift + _log(total)) / n,
            base_pressure=P,
            sup_f=f.sup,
            tau_star=tau_star,
            tau_ok=tau_ok,
            margin_ok=margin_ok,
            log_Z_star=shift + _log(B[n]),
            log_Z_single=shift + _log(single[n]),
            log_Z_multi=shift + _log(series.multi[n]),
            log_zero_term=shift + _log(series.zeros[n]),
            strata_rel_error=rel,
            num_colors=L,
        ))
    return reports


def partition_totals_automaton(max_n: int, params: ShiftParams, B: Sequence[float],
                               zero_weight: float) -> list[float]:
    """Weighted totals by a forward pass over gap-automaton states.

    Independent of :func:`block_dp`: block states carry the cap on their
    length set by the preceding zero-run, and a block's weight ``B[a]`` is
    applied when it closes. Used for the strata identity.
    """
    N, L = max_n, params.num_colors
    a_idx = np.arange(N + 1)
    # cap on the next block after a block of length a and z zeros
    caps = np.zeros((N + 1, N + 1), dtype=np.int64)
    for a in range(1, N + 1):
        for z in range(1, N + 1):
            m = params.max_next_block(a, z)
            caps[a, z] = N if m is None else max(0, min(m, N))
    Bv = np.asarray(B[: N + 1], dtype=float)
    lead = 1.0  # all-zero prefix so far
    blk = np.zeros((L, N + 1, N + 1))  # [colour, length, cap]
    gap = np.zeros((L, N + 1, N + 1))  # [colour, last block length, zeros]
    totals = [1.0]
    for _ in range(N):
        nb = np.zeros_like(blk)
        ng = np.zeros_like(gap)
        # extend a block when its cap allows
        ok = a_idx[None, 1:, None] <= a_idx[None, None, :]
        nb[:, 1:, :] = np.where(ok, blk[:, :-1, :], 0.0)
        # close a block with a zero
        closed = np.einsum("cak,a->ca", blk, Bv)
        ng[:, :, 1] = closed * zero_weight
        ng[:, :, 2:] = gap[:, :, 1:-1] * zero_weight
        # start a block from the lead or after a gap
        nb[:, 1, N] += lead
        valid = caps >= 1
        for c in range(L):
            for c2 in (c - 1, c + 1):
                if 0 <= c2 < L:
                    np.add.at(nb[c2, 1], caps[valid], gap[c][valid])
        lead *= zero_weight
        blk, gap = nb, ng
        totals.append(lead + float(np.einsum("cak,a->", blk, Bv)) + float(gap.sum()))
    return totals


def partition_function(n: int, f: Potential, params: ShiftParams) -> PressureReport:
    """``Z_n = sum over admissible n-words of exp(ergodic sum of g on the zero-padded point)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return partition_series(n, f, params)[-1]


def partition_function_brute(n: int, f: Potential, params: ShiftParams) -> float:
    """Oracle: enumerate admissible words and evaluate g position by position."""
    from .enumeration import enumerate_brute

    pad = (0,) * (f.range + 1)
    total = 0.0
    for word in enumerate_brute(n, params):
        x = pad + word + pad
        s = math.fsum(evaluate_g(x, f, params, center=len(pad) + i, check=False) for i in range(n))
        total += math.exp(s)
    return total


# ---------------------------------------------------------------------------
# Equilibrium states


def gibbs_measure(f: Potential, params: ShiftParams, color: int) -> MarkovMeasure:
    """Equilibrium state of ``f`` on the colour-``color`` full shift (range <= 2)."""
    nu = f.nu
    if f.range == 1:
        w = np.array([math.exp(f.values[(i,)]) for i in range(1, nu + 1)])
        p = w / w.sum()
        return MarkovMeasure(params, color, np.tile(p, (nu, 1)), p)
    if f.range == 2:
        M = transfer_matrix(f)
        right = perron_root(M)
        left = perron_root(M.T)
        rho = right.rho
        v, u = right.vector, left.vector
        P = M * v[None, :] / (rho * v[:, None])
        P = P / P.sum(axis=1, keepdims=True)
        pi = u * v
        pi = pi / pi.sum()
        return MarkovMeasure(params, color, P, pi)
    raise NotImplementedError("explicit Gibbs states are provided for range <= 2 only")


def gibbs_integral(f: Potential, mu: MarkovMeasure) -> float:
    """Integral of f against a Gibbs Markov measure."""
    nu = f.nu
    if f.range == 1:
        return float(sum(mu.stationary[i] * f.values[(i + 1,)] for i in range(nu)))
    return float(sum(mu.stationary[i] * mu.transition[i, j] * f.values[(i + 1, j + 1)]
                     for i in range(nu) for j in range(nu)))


@dataclass
class EquilibriumState:
    color: int
    pressure: float
    measure: Optional[MarkovMeasure]
    entropy: Optional[float]
    integral: Optional[float]

    @property
    def support(self) -> list[int]:
        return sorted(self.measure.support) if self.measure is not None else []

    def as_dict(self) -> dict:
        d = {"color": self.color, "pressure": self.pressure, "support": self.support}
        if self.measure is not None:
            d["entropy"] = self.entropy
            d["integral"] = self.integral
            d["stationary"] = [float(x) for x in self.measure.stationary]
            d["transition"] = [[float(x) for x in row] for row in self.measure.transition]
        return d


@dataclass
class EquilibriumReport:
    states: list[EquilibriumState]
    base_pressure: float
    sup_f: float
    tau: Fraction
    tau_star_proof: Fraction
    tau_star_statement: Fraction
    singular_pairs: list[tuple[int, int]]
    infinite: bool = False
    truncated_counts: dict[int, int] = field(default_factory=dict)

    @property
    def truncated_monotone(self) -> bool:
        vals = [self.truncated_counts[k] for k in sorted(self.truncated_counts)]
        return all(a <= b for a, b in zip(vals, vals[1:]))

    def as_dict(self) -> dict:
        d = {
            "base_pressure": self.base_pressure,
            "sup_f": self.sup_f,
            "tau": format_fraction(self.tau),
            "tau_star_proof": format_fraction(self.tau_star_proof),
            "tau_star_statement": format_fraction(self.tau_star_statement),
            "states": [s.as_dict() for s in self.states],
            "singular_pairs": [list(p) for p in self.singular_pairs],
            "infinite": self.infinite,
        }
        if self.infinite:
            d["family"] = {
                "index": "j = 1, 2, ...",
                "measure": "Gibbs state of f moved to colour j by s -> s + (j-1)*nu",
                "pressure": self.base_pressure,
                "truncated_counts": {str(k): str(v) for k, v in sorted(self.truncated_counts.items())},
                "truncated_monotone": self.truncated_monotone,
            }
        return d


def equilibrium_states_report(f: Potential, params: ShiftParams, infinite: bool = False,
                              truncation_n: int = 12, truncation_L: int = 6,
                              shown_colors: int = 3) -> EquilibriumReport:
    """Equilibrium states of the extension of ``f``, one per embedded full shift.

    Raises :class:`PreconditionError` naming the first failed hypothesis.
    """
    P = base_pressure(f)
    sup = f.sup
    if P - sup <= LOG2:
        raise PreconditionError(f"P(f) > sup f + log 2 fails: {P:.12g} <= {sup + LOG2:.12g}")
    c = chain_constant(None if infinite else params.num_colors)
    tau_star = required_tau(f, c)
    if params.tau < tau_star:
        raise PreconditionError(
            f"tau >= log({c}nu)/(P(f) - sup f) - 1 fails: {params.tau} < {float(tau_star):.6f}")
    if infinite:
        ent = rational_upper_bound(math.log(5) / math.log(params.nu))
        if params.tau < ent:
            raise PreconditionError(
                f"tau >= log 5/log nu fails: {params.tau} < {float(ent):.6f}")
    tau_statement = required_tau(f, 4)

    n_colors = shown_colors if infinite else params.num_colors
    shown = params.with_colors(max(n_colors, 1))
    states = []
    for j in range(1, n_colors + 1):
        if f.range <= 2:
            mu = gibbs_measure(f, shown, j)
            states.append(EquilibriumState(j, P, mu, mu.entropy, gibbs_integral(f, mu)))
        else:
            states.append(EquilibriumState(j, P, None, None, None))
    pairs = []
    for s1, s2 in itertools.combinations(states, 2):
        if s1.measure is not None:
            mutual_singularity_witness(s1.measure, s2.measure)
            pairs.append((s1.color, s2.color))
        else:
            if not set(shown.color_symbols(s1.color)) & set(shown.color_symbols(s2.color)):
                pairs.append((s1.color, s2.color))
    counts = {}
    if infinite:
        counts = {L: truncated_count_RL(truncation_n, L, params) for L in range(1, truncation_L + 1)}
    return EquilibriumReport(states=states, base_pressure=P, sup_f=sup, tau=params.tau,
                             tau_star_proof=tau_star, tau_star_statement=tau_statement,
                             singular_pairs=pairs, infinite=infinite, truncated_counts=counts)


# ---------------------------------------------------------------------------
# Regularity of g


def variation_profile(ext: ExtendedPotential, radius_max: int, pairs_per_radius: int = 2_500,
                      seed: int = 0) -> list[float]:
    """``var_n = max |g(x) - g(y)|`` over sampled admissible windows agreeing on ``|i| < n``.

    Windows have radius ``radius_max + 1``; ``x`` is uniform among admissible
    windows and ``y`` uniform among admissible windows sharing x's core.
    """
    f, params = ext.base, ext.params
    if radius_max < f.range:
        raise ValueError("radius_max must be >= the potential range")
    R = radius_max + 1
    sampler = WordSampler(params, 2 * R + 1)
    rng = np.random.default_rng(seed)
    out = []
    for n in range(radius_max + 1):
        worst = 0.0
        for _ in range(pairs_per_radius):
            x = sampler.sample(rng)
            core = {i: x[i] for i in range(R - n + 1, R + n)}
            y = sampler.sample(rng, fixed=core)
            d = abs(evaluate_g(x, f, params, check=False) - evaluate_g(y, f, params, check=False))
            worst = max(worst, d)
        out.append(worst)
    return out


def thresholds(nu: int, f: Optional[Potential] = None) -> dict:
    """Gap-factor thresholds as rational upper bounds and decimals."""
    out = {
        "log3/lognu": math.log(3) / math.log(nu),
        "log5/lognu": math.log(5) / math.log(nu),
    }
    out["log3/lognu_rational"] = rational_upper_bound(out["log3/lognu"])
    out["log5/lognu_rational"] = rational_upper_bound(out["log5/lognu"])
    if f is not None:
        for c in (3, 4, 5):
            try:
                out[f"required_tau_c{c}"] = required_tau(f, c)
            except PreconditionError:
                out[f"required_tau_c{c}"] = None
    return out

