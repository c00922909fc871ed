"""Constructive topological-mixing checks.

For words ``eta`` and ``omega`` and a fill length ``gap`` we look for an
admissible word ``eta + fill + omega``. The search tries the explicit
constructions first (all zeros, then ``0^kappa eps 0^lambda`` with a single
symbol ``eps``) and falls back to an exact reachability search over
:class:`GapAutomaton` states, which finds a fill whenever one exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import ShiftParams, Word
from .language import GapAutomaton, is_admissible, sample_admissible


class InadmissibleInput(ValueError):
    pass


class MixingFailure(RuntimeError):
    """No mixing gap was found below the horizon."""


def _end_colors(eta: Word, omega: Word, params: ShiftParams):
    left = next((params.color(s) for s in reversed(eta) if s), None)
    right = next((params.color(s) for s in omega if s), None)
    return left, right


def _automaton_fill(eta: Word, omega: Word, gap: int, params: ShiftParams) -> Optional[Word]:
    total = len(eta) + gap + len(omega)
    auto = GapAutomaton(params, zero_cap=max(total, 1))
    state = auto.run(eta)
    if state is None:
        return None
    layers = [{state: None}]
    for _ in range(gap):
        nxt: dict = {}
        for st in layers[-1]:
            for letter in auto.letters():
                new = auto.step(st, letter)
                if new is not None and new not in nxt:
                    nxt[new] = (st, letter)
        if not nxt:
            return None
        layers.append(nxt)
    for end in layers[-1]:
        st = end
        for s in omega:
            st = auto.step(st, params.color(s))
            if st is None:
                break
        if st is None:
            continue
        letters = []
        cur = end
        for depth in range(gap, 0, -1):
            prev, letter = layers[depth][cur]
            letters.append(letter)
            cur = prev
        letters.reverse()
        return tuple(0 if c == 0 else params.smallest_symbol(c) for c in letters)
    return None


def connecting_word(eta: Sequence[int], omega: Sequence[int], gap: int,
                    params: ShiftParams) -> Optional[Word]:
    """Admissible word ``eta + fill + omega`` with ``len(fill) == gap``, or None."""
    eta = params.validate(eta)
    omega = params.validate(omega)
    if not is_admissible(eta, params) or not is_admissible(omega, params):
        raise InadmissibleInput("eta and omega must both be admissible")
    if gap < 0:
        raise ValueError("gap must be >= 0")

    cand = eta + (0,) * gap + omega
    if is_admissible(cand, params):
        return cand

    left, right = _end_colors(eta, omega, params)
    colors = range(1, params.num_colors + 1)
    preferred = [c for c in colors
                 if (left is None or params.adjacent(c, left))
                 and (right is None or params.adjacent(c, right))]
    for c in preferred:
        eps = params.smallest_symbol(c)
        for kappa in range(gap):
            cand = eta + (0,) * kappa + (eps,) + (0,) * (gap - kappa - 1) + omega
            if is_admissible(cand, params):
                return cand

    fill = _automaton_fill(eta, omega, gap, params)
    if fill is None:
        return None
    cand = eta + fill + omega
    assert is_admissible(cand, params)
    return cand


def construction_bound(eta: Sequence[int], omega: Sequence[int], params: ShiftParams) -> int:
    """Length after which the explicit construction always connects eta to omega.

    Opposite adjacent colours: ``ceil((1+tau)(|eta|+|omega|))``. Same colour:
    ``ceil((1+tau)(|eta|+2+|omega|))`` with a one-symbol bridge. Colours
    further apart on the chain (L >= 3) use a staircase of one-symbol
    bridges, one per intermediate colour; the value is ``|eta| + |omega|``
    plus the staircase fill length.
    """
    eta, omega = tuple(eta), tuple(omega)
    tau = params.tau
    a, b = len(eta), len(omega)
    left, right = _end_colors(eta, omega, params)
    if left is None or right is None or params.adjacent(left, right):
        return math.ceil((1 + tau) * (a + b))
    if left == right:
        return math.ceil((1 + tau) * (a + 2 + b))
    steps = abs(left - right)
    lengths = [max(a, 1)] + [1] * (steps - 1) + [max(b, 1)]
    fill = sum(params.required_gap(x, y) for x, y in zip(lengths, lengths[1:])) + steps - 1
    return a + b + fill


@dataclass
class MixingResult:
    n_min: int
    construction_bound: int
    horizon: int
    certificates: dict[int, Word] = field(default_factory=dict)
    eta: Word = ()
    omega: Word = ()

    @property
    def within_bound(self) -> bool:
        return self.n_min <= self.construction_bound

    @property
    def offset_min(self) -> int:
        """Smallest shift between the two cylinders (``|eta| + n_min``)."""
        return len(self.eta) + self.n_min

    def as_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "construction_bound": self.construction_bound,
            "horizon": self.horizon,
            "within_bound": self.within_bound,
            "certificates": {str(g): " ".join(map(str, w)) for g, w in sorted(self.certificates.items())},
        }


def minimal_mixing_gap(eta: Sequence[int], omega: Sequence[int], params: ShiftParams,
                       horizon: Optional[int] = None) -> MixingResult:
    """Least N such that every gap in ``[N, horizon]`` admits a connecting word."""
    eta = params.validate(eta)
    omega = params.validate(omega)
    bound = construction_bound(eta, omega, params)
    if horizon is None:
        horizon = bound + 30
    if horizon < bound:
        raise ValueError(f"horizon {horizon} is below the bound {bound}")
    certs: dict[int, Word] = {}
    n_min = 0
    for gap in range(horizon, -1, -1):
        w = connecting_word(eta, omega, gap, params)
        if w is None:
            n_min = gap + 1
            break
        certs[gap] = w
    if n_min > horizon:
        raise MixingFailure(f"no connection at gap {horizon} for eta={eta}, omega={omega}")
    return MixingResult(n_min=n_min, construction_bound=bound, horizon=horizon,
                        certificates=certs, eta=eta, omega=omega)


def random_pairs(count: int, params: ShiftParams, seed: int, max_len: int = 6,
                 min_len: int = 1) -> list[tuple[Word, Word]]:
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        la, lb = rng.integers(min_len, max_len + 1, size=2)
        pairs.append((sample_admissible(int(la), params, rng),
                      sample_admissible(int(lb), params, rng)))
    return pairs
