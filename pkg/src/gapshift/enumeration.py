"""Word counting and entropy estimates.

Counting routes, each independent of the others:

``enumerate_brute`` / ``count_brute``
    filter words (or colour patterns) through :func:`is_admissible`.
``count_automaton``
    symbol-by-symbol dynamic program over :class:`GapAutomaton` states,
    optionally stratified by (coloured symbols, blocks). Cubic-ish, for small n.
``count_dp`` / ``block_dp``
    block-composition convolution. Tau = p/q splits the required gap into
    ``A(a) + A(b) + carry(r(a), r(b))`` with ``A(a) = floor(p*a/q)`` and
    ``r(a) = p*a mod q``, which makes the sum over the previous block length
    a prefix-sum lookup per residue class: O(n^2 * L^2 * q) overall.
``closed_form_count``
    sums ``walks * nu**ell * Q(k, slack)`` over explicit compositions.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import mpmath

from .core import ShiftParams, Word
from .language import GapAutomaton, is_admissible

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class CountTable:
    """Exact word counts by length, optionally split by (ell, k)."""

    params: ShiftParams
    counts: dict[int, int]
    strata: Optional[dict[int, dict[tuple[int, int], int]]] = None

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def rows(self):
        for n in sorted(self.counts):
            yield n, self.counts[n]


@dataclass
class EntropyEstimate:
    n: int
    log_count: mpmath.mpf
    rate: float
    lower_bound: float
    upper_bound_expression: float
    entropy_bound: float = field(default=0.0)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "log_count": float(self.log_count),
            "rate": self.rate,
            "lower_bound": self.lower_bound,
            "bicolored_rate_bound": self.upper_bound_expression,
            "entropy_bound": self.entropy_bound,
        }


# ---------------------------------------------------------------------------
# Brute force


def enumerate_brute(n: int, params: ShiftParams, budget: int = DEFAULT_BUDGET,
                    prune: bool = True) -> list[Word]:
    """Admissible words of length ``n`` in lexicographic order.

    With ``prune`` the search extends only admissible prefixes (the language
    is factor-closed); otherwise every word in the alphabet is filtered.
    ``budget`` caps the number of candidate filterings.
    """
    if not prune:
        total = params.alphabet_size ** n
        if total > budget:
            raise BudgetExceeded(
                f"{params.alphabet_size}^{n} = {total} candidate words exceeds budget {budget}")
        return [w for w in itertools.product(range(params.alphabet_size), repeat=n)
                if is_admissible(w, params)]
    layer: list[Word] = [()]
    used = 0
    for _ in range(n):
        used += len(layer) * params.alphabet_size
        if used > budget:
            raise BudgetExceeded(f"more than {budget} candidate filterings needed for n={n}")
        layer = [w + (s,) for w in layer for s in range(params.alphabet_size)
                 if is_admissible(w + (s,), params)]
    return layer


def count_brute(n: int, params: ShiftParams, budget: int = DEFAULT_BUDGET) -> int:
    """Exhaustive count over colour patterns, each weighted by ``nu ** (#coloured)``.

    Admissibility depends only on which colour each position carries, so
    filtering the ``(L+1)^n`` patterns is an exact brute force.
    """
    total = (params.num_colors + 1) ** n
    if total > budget:
        raise BudgetExceeded(f"{params.num_colors + 1}^{n} = {total} patterns exceeds budget {budget}")
    reps = [0] + [params.smallest_symbol(c) for c in range(1, params.num_colors + 1)]
    count = 0
    for pattern in itertools.product(range(params.num_colors + 1), repeat=n):
        if is_admissible(tuple(reps[c] for c in pattern), params):
            count += params.nu ** sum(1 for c in pattern if c)
    return count


# ---------------------------------------------------------------------------
# Combinatorial pieces


def arrangements_P(k: int, ell: int) -> int:
    """Ways to split ``ell`` coloured symbols into ``k`` non-empty consecutive blocks."""
    if k < 1 or k > ell:
        raise ValueError(f"need 1 <= k <= ell, got k={k}, ell={ell}")
    return math.comb(ell - 1, k - 1)


def gap_placements_Q(k: int, m: int) -> int:
    """Ways to put ``m`` zeros into the k+1 slots around ``k`` blocks."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    return math.comb(m + k, k)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts < 1 or total < parts:
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` non-negative integers summing to ``total``."""
    for c in compositions(total + parts, parts):
        yield tuple(x - 1 for x in c)


def color_walks(k: int, num_colors: int) -> int:
    """Colour sequences of ``k`` blocks where consecutive colours differ by one."""
    if k < 1:
        return 0
    ways = [1] * num_colors
    for _ in range(k - 1):
        ways = [(ways[i - 1] if i > 0 else 0) + (ways[i + 1] if i + 1 < num_colors else 0)
                for i in range(num_colors)]
    return sum(ways)


# ---------------------------------------------------------------------------
# Automaton DP


def count_automaton(n: int, params: ShiftParams, stratify: bool = False):
    """Count length-``n`` words by running :class:`GapAutomaton` on symbol classes.

    With ``stratify`` returns ``{(ell, k): count}`` where ``ell`` is the number of
    coloured symbols and ``k`` the number of blocks.
    """
    auto = GapAutomaton(params, zero_cap=max(n, 1))
    nu = params.nu
    layer: dict = {(auto.start, 0, 0): 1}
    for _ in range(n):
        nxt: dict = defaultdict(int)
        for (state, ell, k), cnt in layer.items():
            for letter in auto.letters():
                new = auto.step(state, letter)
                if new is None:
                    continue
                if letter == 0:
                    nxt[(new, ell, k)] += cnt
                else:
                    opens = state[0] != "B"
                    key = (new, ell + 1, k + 1) if opens else (new, ell + 1, k)
                    nxt[key] += cnt * nu
        if not stratify:
            # (ell, k) only matter for stratification; fold them away
            folded: dict = defaultdict(int)
            for (state, _, _), cnt in nxt.items():
                folded[(state, 0, 0)] += cnt
            nxt = folded
        layer = nxt
    if not stratify:
        return sum(layer.values())
    strata: dict = defaultdict(int)
    for (_, ell, k), cnt in layer.items():
        strata[(ell, k)] += cnt
    return dict(strata)


# ---------------------------------------------------------------------------
# Block-composition DP


@dataclass
class BlockSeries:
    """Per-length totals produced by :func:`block_dp`.

    ``single[n]`` counts words with exactly one block, ``multi[n]`` with two or
    more, ``zeros[n]`` the all-zero word. ``total = zeros + single + multi``.
    """

    total: list
    single: list
    multi: list
    zeros: list


def block_dp(max_n: int, params: ShiftParams, block_weight: Callable[[int], object],
             zero_weight=1, zero=0) -> BlockSeries:
    """Weighted sum over admissible words of every length ``0..max_n``.

    A word's weight is ``zero_weight ** (#zeros)`` times the product of
    ``block_weight(a)`` over its blocks; block weights may not depend on colour.
    Works with ints (exact counts) or floats.
    """
    N = max_n
    L = params.num_colors
    p, q = params.tau.numerator, params.tau.denominator
    tau_zero = params.tau == 0

    A = [0] * (N + 1)
    R = [0] * (N + 1)
    for a in range(1, N + 1):
        A[a], R[a] = divmod(p * a, q)

    def carry(ra: int, rb: int) -> int:
        if tau_zero:
            return 1
        return -(-(ra + rb) // q)

    Bw = [zero] + [block_weight(a) for a in range(1, N + 1)]
    zpow = [1]
    for _ in range(max(N, A[N]) + 2):
        zpow.append(zpow[-1] * zero_weight)

    adj = [[c for c in range(L) if abs(c - c2) == 1] for c2 in range(L)]
    # E[e][c][a]: words of length e ending with a complete block (c, a)
    E1 = [[[zero] * (e + 1) for _ in range(L)] for e in range(N + 1)]
    E2 = [[[zero] * (e + 1) for _ in range(L)] for e in range(N + 1)]
    # T[t][c][r] = sum over a with r(a)=r, e' <= t - A(a) of E[e'][c][a] * z^(t - e');
    # the gap zeros between two blocks are weighted on lookup
    T = [[[zero] * q for _ in range(L)] for _ in range(N + 1)]
    zA = [zpow[A[a]] for a in range(N + 1)]
    zcarry = [zpow[carry(r1, r2)] for r1 in range(q) for r2 in range(q)]

    acc_single = [zero] * (N + 1)
    acc_multi = [zero] * (N + 1)

    for e in range(1, N + 1):
        for c in range(L):
            row1 = E1[e][c]
            for a in range(1, e + 1):
                row1[a] = zpow[e - a] * Bw[a]
        for c2 in range(L):
            row2 = E2[e][c2]
            for b in range(1, e + 1):
                base = e - b - A[b]
                rb = R[b]
                s = zero
                for c in adj[c2]:
                    for r in range(q):
                        t = base - carry(r, rb)
                        if t >= 0:
                            s = s + T[t][c][r] * zcarry[r * q + rb]
                if s:
                    row2[b] = Bw[b] * zA[b] * s
        for c in range(L):
            Tc = T[e][c]
            prev = T[e - 1][c]
            for r in range(q):
                Tc[r] = prev[r] * zero_weight
            for a in range(1, e + 1):
                e_src = e - A[a]
                if e_src < a:
                    continue
                val = E1[e_src][c][a] + E2[e_src][c][a]
                if val:
                    Tc[R[a]] = Tc[R[a]] + val * zA[a]
        f1 = zero
        f2 = zero
        for c in range(L):
            for a in range(1, e + 1):
                f1 = f1 + E1[e][c][a]
                f2 = f2 + E2[e][c][a]
        acc_single[e] = acc_single[e - 1] * zero_weight + f1
        acc_multi[e] = acc_multi[e - 1] * zero_weight + f2

    zeros = zpow[: N + 1]
    total = [zeros[n] + acc_single[n] + acc_multi[n] for n in range(N + 1)]
    return BlockSeries(total=total, single=acc_single, multi=acc_multi, zeros=zeros)


def count_series(max_n: int, params: ShiftParams) -> BlockSeries:
    """Exact counts for all lengths ``0..max_n``."""
    nu = params.nu
    return block_dp(max_n, params, lambda a: nu ** a)


def count_dp(n: int, params: ShiftParams) -> int:
    """Exact number of admissible words of length ``n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return count_series(n, params).total[n]


def bicolored_count(n: int, params: ShiftParams) -> int:
    """Admissible length-``n`` words using at least two colours."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return count_series(n, params).multi[n]


def one_color_count(n: int, params: ShiftParams) -> int:
    """Words with a single coloured block, framed by optional zeros (closed form)."""
    return params.num_colors * sum((n - a + 1) * params.nu ** a for a in range(1, n + 1))


def count_table(max_n: int, params: ShiftParams, stratify: bool = False) -> CountTable:
    series = count_series(max_n, params)
    counts = {n: series.total[n] for n in range(max_n + 1)}
    strata = None
    if stratify:
        strata = {n: count_automaton(n, params, stratify=True) for n in range(max_n + 1)}
    return CountTable(params=params, counts=counts, strata=strata)


# ---------------------------------------------------------------------------
# Closed-form route


def closed_form_strata(n: int, params: ShiftParams) -> dict[tuple[int, int], int]:
    """Counts by (ell, k) from explicit compositions and zero placements."""
    nu, L = params.nu, params.num_colors
    out: dict[tuple[int, int], int] = {(0, 0): 1}
    for ell in range(1, n + 1):
        for k in range(1, ell + 1):
            walks = color_walks(k, L)
            if walks == 0:
                continue
            placements = 0
            seen = 0
            for comp in compositions(ell, k):
                seen += 1
                forced = sum(params.required_gap(x, y) for x, y in zip(comp, comp[1:]))
                slack = n - ell - forced
                if slack >= 0:
                    placements += gap_placements_Q(k, slack)
            assert seen == arrangements_P(k, ell)
            if placements:
                out[(ell, k)] = walks * nu ** ell * placements
    return out


def closed_form_count(n: int, params: ShiftParams) -> int:
    return sum(closed_form_strata(n, params).values())


# ---------------------------------------------------------------------------
# Truncations of the infinite-colour shift


def truncated_count_RL(n: int, L_trunc: int, params: ShiftParams,
                       first_coordinate: bool = False, budget: int = 10**7) -> int:
    """Length-``n`` words of the chain shift restricted to colours ``1..L_trunc``.

    ``first_coordinate=True`` instead counts words of the infinite-colour
    shift whose first symbol is at most ``L_trunc * nu``. A length-n word
    can climb at most n colours, so brute force over ``L_trunc + n`` colours
    is exact; it is only feasible for tiny n.
    """
    if L_trunc < 1:
        raise ValueError("L_trunc must be >= 1")
    if not first_coordinate:
        return count_dp(n, params.with_colors(L_trunc))
    if n == 0:
        return 1
    wide = params.with_colors(L_trunc + n)
    top = L_trunc * params.nu
    return sum(1 for w in enumerate_brute(n, wide, budget=budget) if w[0] <= top)


# ---------------------------------------------------------------------------
# Entropy


def bicolored_rate_bound(params: ShiftParams) -> float:
    """Asymptotic growth-rate bound ``max(log 2, log(c*nu)/(tau+1))`` on multi-colour words."""
    c = 3 if params.num_colors <= 2 else 5
    return max(math.log(2), math.log(c * params.nu) / (float(params.tau) + 1))


def log_int(x: int, dps: int = 30) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.log(mpmath.mpf(x))


def entropy_estimate(n: int, params: ShiftParams, count: Optional[int] = None) -> EntropyEstimate:
    if n < 1:
        raise ValueError("n must be >= 1")
    if count is None:
        count = count_dp(n, params)
    lc = log_int(count)
    bound = bicolored_rate_bound(params)
    return EntropyEstimate(
        n=n,
        log_count=lc,
        rate=float(lc / n),
        lower_bound=math.log(params.nu),
        upper_bound_expression=bound,
        entropy_bound=max(math.log(params.nu), bound),
    )


def entropy_series(ns: Sequence[int], params: ShiftParams) -> list[EntropyEstimate]:
    series = count_series(max(ns), params)
    return [entropy_estimate(n, params, count=series.total[n]) for n in ns]
