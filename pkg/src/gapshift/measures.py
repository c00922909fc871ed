"""Invariant measures carried by the embedded full shifts.

Each colour class ``j`` spans a full nu-shift inside the subshift. The
uniform Bernoulli measure on it has entropy ``log nu`` and therefore
maximal entropy once the gap factor is large enough; measures on distinct
colours live on disjoint symbol sets, which certifies mutual singularity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import ShiftParams, Word


class ShortPathError(ValueError):
    pass


@dataclass(frozen=True)
class BernoulliMeasure:
    """i.i.d. measure, uniform on the symbols of one colour."""

    params: ShiftParams
    color: int

    def __post_init__(self):
        if not 1 <= self.color <= self.params.num_colors:
            raise ValueError(f"colour {self.color} outside 1..{self.params.num_colors}")

    @property
    def weights(self) -> tuple[Fraction, ...]:
        nu = self.params.nu
        support = set(self.support)
        return tuple(Fraction(1, nu) if s in support else Fraction(0)
                     for s in range(self.params.alphabet_size))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.params.color_symbols(self.color))

    @property
    def entropy(self) -> float:
        return math.log(self.params.nu)

    def sample(self, n: int, rng: np.random.Generator) -> Word:
        symbols = np.asarray(self.params.color_symbols(self.color))
        return tuple(int(s) for s in rng.choice(symbols, size=n))


@dataclass(frozen=True)
class MarkovMeasure:
    """Stationary Markov chain on the symbols of one colour.

    ``transition[i, j]`` is the probability of symbol ``offset + j`` after
    ``offset + i``; ``stationary`` is its invariant row vector.
    """

    params: ShiftParams
    color: int
    transition: np.ndarray
    stationary: np.ndarray

    @property
    def offset(self) -> int:
        return (self.color - 1) * self.params.nu + 1

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.params.color_symbols(self.color))

    @property
    def entropy(self) -> float:
        P, pi = self.transition, self.stationary
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(P > 0, P * np.log(P), 0.0)
        return float(-(pi @ terms.sum(axis=1)))

    def sample(self, n: int, rng: np.random.Generator) -> Word:
        if n == 0:
            return ()
        nu = self.params.nu
        out = np.empty(n, dtype=np.int64)
        u = rng.random(n)
        cdf = np.cumsum(self.transition, axis=1)
        cur = int(np.searchsorted(np.cumsum(self.stationary), u[0], side="right"))
        cur = min(cur, nu - 1)
        out[0] = cur
        for t in range(1, n):
            cur = min(int(np.searchsorted(cdf[cur], u[t], side="right")), nu - 1)
            out[t] = cur
        return tuple(int(s) + self.offset for s in out)


@dataclass(frozen=True)
class Mixture:
    """Convex combination of invariant measures (not ergodic).

    A sample path picks a component once and then follows it.
    """

    components: tuple
    weights: tuple[float, ...]

    def sample(self, n: int, rng: np.random.Generator) -> Word:
        idx = rng.choice(len(self.components), p=np.asarray(self.weights, dtype=float))
        return self.components[int(idx)].sample(n, rng)


def sample_path(measure, length: int, seed: int) -> Word:
    """Deterministic seeded sample of ``length`` symbols."""
    if length < 0:
        raise ValueError("length must be >= 0")
    return measure.sample(length, np.random.default_rng(seed))


def block_counts(path: Sequence[int], k: int) -> Counter:
    """Counts of overlapping length-``k`` blocks."""
    arr = np.asarray(path, dtype=np.int64)
    if k < 1 or len(arr) < k:
        return Counter()
    base = int(arr.max()) + 1 if len(arr) else 1
    codes = np.zeros(len(arr) - k + 1, dtype=object if base ** k > 2**62 else np.int64)
    for i in range(k):
        codes = codes * base + arr[i:len(arr) - k + 1 + i]
    uniq, cnt = np.unique(codes, return_counts=True)
    out = Counter()
    for code, c in zip(uniq.tolist(), cnt.tolist()):
        block = []
        for _ in range(k):
            code, d = divmod(code, base)
            block.append(d)
        out[tuple(reversed(block))] = c
    return out


def empirical_block_entropy(path: Sequence[int], k: int) -> float:
    """Plug-in Shannon entropy of overlapping k-blocks, divided by k (nats)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(path) < 100 * k:
        raise ShortPathError(f"path of length {len(path)} too short for k={k} (need {100 * k})")
    counts = np.fromiter(block_counts(path, k).values(), dtype=float)
    p = counts / counts.sum()
    return float(-(p * np.log(p)).sum() / k)


@dataclass(frozen=True)
class SingularityWitness:
    support_1: frozenset[int]
    support_2: frozenset[int]

    @property
    def disjoint(self) -> bool:
        return not (self.support_1 & self.support_2)

    def as_dict(self) -> dict:
        return {"support_1": sorted(self.support_1), "support_2": sorted(self.support_2),
                "disjoint": self.disjoint}


def mutual_singularity_witness(m1, m2) -> SingularityWitness:
    """Disjoint symbol supports of two single-colour measures.

    Each measure gives full mass to paths over its own symbols, so disjoint
    supports make them mutually singular.
    """
    if m1.color == m2.color:
        raise ValueError("measures share a colour; no singularity witness")
    w = SingularityWitness(m1.support, m2.support)
    assert w.disjoint
    return w


def maximal_entropy_measures(params: ShiftParams) -> list[BernoulliMeasure]:
    return [BernoulliMeasure(params, j) for j in range(1, params.num_colors + 1)]


def uniform_full_alphabet_sample(params: ShiftParams, length: int, seed: Optional[int] = None) -> Word:
    """i.i.d. uniform symbols over the whole alphabet (sanity input, not invariant for the shift)."""
    rng = np.random.default_rng(seed)
    return tuple(int(s) for s in rng.integers(0, params.alphabet_size, size=length))
