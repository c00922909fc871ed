"""Factor-language membership for the zero-gap subshift.

Three independent deciders live here:

* :func:`is_admissible` reads the block decomposition of a word;
* :class:`GapAutomaton` scans symbols left to right (used for counting and
  for the mixing search);
* :func:`admissible_extension_exists` checks finitely supported points
  ``...000 x w y 000...`` directly against the block/gap rule with
  :class:`~fractions.Fraction` arithmetic. It is the brute-force oracle.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .core import BlockDecomposition, ColorBlock, ShiftParams, Word, ZeroRun, decompose


def is_admissible(word: Sequence[int], params: ShiftParams) -> bool:
    """True iff ``word`` occurs in some point of the subshift.

    Local rule: differently coloured symbols are never adjacent, and every
    interior zero-run joins blocks of adjacent colours and is at least
    ``required_gap(a, b)`` long, ``a`` and ``b`` being the visible block
    lengths. Leading and trailing zero-runs are free.
    """
    return decomposition_admissible(decompose(word, params), params)


def decomposition_admissible(dec: BlockDecomposition, params: ShiftParams) -> bool:
    segs = dec.segments
    for i, seg in enumerate(segs):
        if isinstance(seg, ColorBlock):
            if i + 1 < len(segs) and isinstance(segs[i + 1], ColorBlock):
                return False
            continue
        if i == 0 or i == len(segs) - 1:
            continue
        left, right = segs[i - 1], segs[i + 1]
        if not params.adjacent(left.color, right.color):
            return False
        if seg.length < params.required_gap(left.length, right.length):
            return False
    return True


def shift(word: Sequence[int], k: int = 1) -> Word:
    """Drop the first ``k`` symbols (the shift map on finite words)."""
    return tuple(word[k:])


def cylinder_contains(word: Sequence[int], pattern: Sequence[int], offset: int) -> bool:
    """Whether ``word`` lies in the cylinder fixing ``pattern`` at ``offset``."""
    if offset < 0 or offset + len(pattern) > len(word):
        return False
    return tuple(word[offset:offset + len(pattern)]) == tuple(pattern)


# ---------------------------------------------------------------------------
# Oracle: finitely supported points checked against the block/gap rule


def finite_point_admissible(core: Sequence[int], params: ShiftParams) -> bool:
    """Check the point ``...0 0 core 0 0...`` against the defining rule.

    Every maximal coloured run of such a point is a complete block, so the
    rule can be applied with true block lengths.
    """
    nu, tau = params.nu, params.tau
    blocks = []  # (color, start, end)
    for i, s in enumerate(core):
        if s < 0 or s > params.max_symbol:
            raise ValueError(f"symbol {s} outside alphabet")
        if s == 0:
            continue
        c = (s + nu - 1) // nu
        if blocks and blocks[-1][2] == i:
            if blocks[-1][0] != c:
                return False
            blocks[-1][2] = i + 1
        else:
            blocks.append([c, i, i + 1])
    for (c1, s1, e1), (c2, s2, e2) in zip(blocks, blocks[1:]):
        gap = s2 - e1
        if abs(c1 - c2) != 1:
            return False
        if Fraction(gap) < tau * ((e1 - s1) + (e2 - s2)):
            return False
    return True


def admissible_extension_exists(word: Sequence[int], left_pad: int, right_pad: int,
                                params: ShiftParams) -> bool:
    """True iff ``word`` extends by ``left_pad``/``right_pad`` symbols to a legal point core.

    Exhaustive over ``(L*nu + 1) ** (left_pad + right_pad)`` extensions.
    """
    w = params.validate(word)
    alphabet = range(params.alphabet_size)
    for left in itertools.product(alphabet, repeat=left_pad):
        for right in itertools.product(alphabet, repeat=right_pad):
            if finite_point_admissible(left + w + right, params):
                return True
    return False


# ---------------------------------------------------------------------------
# Streaming automaton

LEAD = ("L",)


class GapAutomaton:
    """Left-to-right scanner for the factor language.

    States::

        ("L",)              only zeros read so far
        ("B", c, a, cap)    inside a block of colour c, length a so far;
                            cap bounds its final length (None: unbounded)
        ("G", c, a, z)      z zeros after a completed block (c, a)

    Input letters are symbol classes: ``0`` for the neutral symbol and a
    colour index ``c >= 1`` for any of the ``nu`` symbols of that colour.
    Every live state is accepting. ``zero_cap`` clamps z; with
    ``zero_cap >= n`` the clamp never changes the language on words of length n.
    """

    def __init__(self, params: ShiftParams, zero_cap: Optional[int] = None):
        self.params = params
        self.zero_cap = zero_cap

    @property
    def start(self):
        return LEAD

    def letters(self) -> range:
        return range(0, self.params.num_colors + 1)

    def step(self, state, letter: int):
        kind = state[0]
        if kind == "L":
            return LEAD if letter == 0 else ("B", letter, 1, None)
        if kind == "B":
            _, c, a, cap = state
            if letter == 0:
                return ("G", c, a, 1)
            if letter != c:
                return None
            if cap is not None and a + 1 > cap:
                return None
            return ("B", c, a + 1, cap)
        _, c, a, z = state
        if letter == 0:
            z += 1
            if self.zero_cap is not None:
                z = min(z, self.zero_cap)
            return ("G", c, a, z)
        if not self.params.adjacent(c, letter):
            return None
        cap = self.params.max_next_block(a, z)
        if cap is not None and cap < 1:
            return None
        return ("B", letter, 1, cap)

    def run(self, word: Sequence[int]):
        """Final state after reading ``word`` or ``None`` if it dies."""
        state = self.start
        for s in word:
            state = self.step(state, self.params.color(s))
            if state is None:
                return None
        return state

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(self.params.validate(word)) is not None


class WordSampler:
    """Uniform sampler of admissible words of one length.

    Completion counts are computed over automaton states by backward
    recursion, then symbols are drawn forward. Positions may be pinned to
    given symbols; the unconstrained count table is cached.
    """

    def __init__(self, params: ShiftParams, length: int):
        self.params = params
        self.length = length
        self.auto = GapAutomaton(params, zero_cap=max(length, 1))
        self._free = [(0, 1)] + [(c, params.nu) for c in range(1, params.num_colors + 1)]
        self._trans: dict = {}
        layers = [{self.auto.start}]
        for _ in range(length):
            nxt = set()
            for st in layers[-1]:
                for letter, _ in self._free:
                    new = self._step(st, letter)
                    if new is not None:
                        nxt.add(new)
            layers.append(nxt)
        self._layers = layers
        self._free_counts = self._counts({})

    def _step(self, st, letter):
        key = (st, letter)
        try:
            return self._trans[key]
        except KeyError:
            new = self._trans[key] = self.auto.step(st, letter)
            return new

    def _options(self, j, fixed):
        if j in fixed:
            return [(self.params.color(fixed[j]), 1)]
        return self._free

    def _counts(self, fixed):
        n = self.length
        counts = [None] * (n + 1)
        counts[n] = dict.fromkeys(self._layers[n], 1)
        for j in range(n - 1, -1, -1):
            nxt = counts[j + 1]
            row = {}
            opts = self._options(j, fixed)
            for st in self._layers[j]:
                total = 0
                for letter, mult in opts:
                    new = self._step(st, letter)
                    if new is not None:
                        c = nxt.get(new)
                        if c:
                            total += mult * c
                if total:
                    row[st] = total
            counts[j] = row
        return counts

    def sample(self, rng, fixed: Optional[dict[int, int]] = None) -> Word:
        params = self.params
        fixed = {} if fixed is None else dict(fixed)
        for pos, sym in fixed.items():
            if not 0 <= pos < self.length:
                raise ValueError(f"fixed position {pos} outside 0..{self.length - 1}")
            params.validate((sym,))
        counts = self._counts(fixed) if fixed else self._free_counts
        st = self.auto.start
        if not counts[0].get(st):
            raise ValueError("no admissible word satisfies the fixed positions")
        rnd = random.Random(int(rng.integers(2**63)))
        out = []
        for j in range(self.length):
            pick = rnd.randrange(counts[j][st])
            nxt = counts[j + 1]
            for letter, mult in self._options(j, fixed):
                new = self._step(st, letter)
                if new is None:
                    continue
                w = mult * nxt.get(new, 0)
                if pick < w:
                    break
                pick -= w
            if j in fixed:
                out.append(fixed[j])
            elif letter == 0:
                out.append(0)
            else:
                out.append(params.smallest_symbol(letter) + rnd.randrange(params.nu))
            st = new
        return tuple(out)


def sample_admissible(length: int, params: ShiftParams, rng,
                      fixed: Optional[dict[int, int]] = None) -> Word:
    """Uniformly random admissible word of ``length``, with ``fixed`` positions pinned.

    ``rng`` is a numpy Generator.
    """
    return WordSampler(params, length).sample(rng, fixed)


def iter_words(n: int, params: ShiftParams) -> Iterator[Word]:
    """All words of length ``n`` over the alphabet, lexicographic."""
    return itertools.product(range(params.alphabet_size), repeat=n)


__all__ = [
    "is_admissible",
    "decomposition_admissible",
    "admissible_extension_exists",
    "finite_point_admissible",
    "GapAutomaton",
    "shift",
    "cylinder_contains",
    "iter_words",
    "sample_admissible",
    "WordSampler",
    "ZeroRun",
    "ColorBlock",
]
