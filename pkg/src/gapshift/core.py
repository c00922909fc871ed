"""Shared parameter and word types for the zero-gap subshift family.

Symbols are non-negative integers. ``0`` is the neutral (gap) symbol and a
coloured symbol ``s`` in ``1..L*nu`` has colour ``ceil(s / nu)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Word = tuple[int, ...]

RationalLike = Union[Fraction, int, str]


class InvalidSymbolError(ValueError):
    """A word contains a symbol outside ``0..L*nu``."""


@dataclass(frozen=True)
class ShiftParams:
    """Parameters (nu, tau, L) of the subshift.

    ``tau`` is kept as an exact, reduced :class:`fractions.Fraction`.
    """

    nu: int
    tau: Fraction
    num_colors: int = 2

    def __post_init__(self):
        if not isinstance(self.nu, int) or self.nu < 2:
            raise ValueError(f"nu must be an integer >= 2, got {self.nu!r}")
        if not isinstance(self.num_colors, int) or self.num_colors < 1:
            raise ValueError(f"num_colors must be an integer >= 1, got {self.num_colors!r}")
        tau = as_fraction(self.tau)
        if tau < 0:
            raise ValueError(f"tau must be >= 0, got {tau}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def make(cls, nu: int, tau: RationalLike, num_colors: int = 2) -> "ShiftParams":
        return cls(nu, as_fraction(tau), num_colors)

    @property
    def alphabet_size(self) -> int:
        return self.num_colors * self.nu + 1

    @property
    def max_symbol(self) -> int:
        return self.num_colors * self.nu

    def color(self, symbol: int) -> int:
        """Colour index of ``symbol`` (0 for the neutral symbol)."""
        if symbol == 0:
            return 0
        return (symbol - 1) // self.nu + 1

    def color_symbols(self, color: int) -> range:
        return range((color - 1) * self.nu + 1, color * self.nu + 1)

    def smallest_symbol(self, color: int) -> int:
        return (color - 1) * self.nu + 1

    def adjacent(self, c1: int, c2: int) -> bool:
        """Colours joined by an edge of the colour chain."""
        return abs(c1 - c2) == 1

    def required_gap(self, a: int, b: int) -> int:
        """Least zero-run length allowed between blocks of lengths ``a`` and ``b``.

        Smallest integer ``lam >= 1`` with ``lam >= tau*(a+b)``, computed on
        the exact rational.
        """
        if a < 1 or b < 1:
            raise ValueError("block lengths must be >= 1")
        p, q = self.tau.numerator, self.tau.denominator
        return max(1, -((-p * (a + b)) // q))

    def max_next_block(self, a: int, zeros: int) -> int | None:
        """Largest ``b`` with ``required_gap(a, b) <= zeros``.

        ``None`` means unbounded (tau == 0). May be < 1, meaning no block fits.
        """
        if zeros < 1:
            return 0
        if self.tau == 0:
            return None
        p, q = self.tau.numerator, self.tau.denominator
        return (zeros * q) // p - a

    def validate(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        top = self.max_symbol
        for s in w:
            if not isinstance(s, int) or s < 0 or s > top:
                raise InvalidSymbolError(f"symbol {s!r} outside alphabet 0..{top}")
        return w

    def with_colors(self, num_colors: int) -> "ShiftParams":
        return ShiftParams(self.nu, self.tau, num_colors)

    def with_tau(self, tau: RationalLike) -> "ShiftParams":
        return ShiftParams(self.nu, as_fraction(tau), self.num_colors)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        return {"nu": self.nu, "tau": format_fraction(self.tau), "colors": self.num_colors}

    @classmethod
    def from_json(cls, text: str) -> "ShiftParams":
        d = json.loads(text)
        return cls(int(d["nu"]), as_fraction(d["tau"]), int(d.get("colors", 2)))


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # floats are accepted only when they are exactly representable decimals
        return Fraction(str(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def rational_upper_bound(value, precision: Fraction = Fraction(1, 10**6), slack: float = 1e-12) -> Fraction:
    """Rational ``k * precision`` with ``k`` minimal such that it is >= ``value + slack``.

    ``slack`` absorbs floating-point error in ``value`` so the result stays an
    upper bound of the real quantity ``value`` approximates.
    """
    precision = as_fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    v = Fraction(float(value)) + Fraction(slack * max(1.0, abs(float(value))))
    k = math.ceil(v / precision)
    return k * precision


# ---------------------------------------------------------------------------
# Words and block decompositions


@dataclass(frozen=True)
class ZeroRun:
    length: int


@dataclass(frozen=True)
class ColorBlock:
    color: int
    length: int


Segment = Union[ZeroRun, ColorBlock]


@dataclass(frozen=True)
class BlockDecomposition:
    segments: tuple[Segment, ...]

    def __len__(self):
        return len(self.segments)

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segments)

    @property
    def blocks(self) -> list[ColorBlock]:
        return [s for s in self.segments if isinstance(s, ColorBlock)]

    def reconstruct(self, params: ShiftParams) -> Word:
        """Canonical word realising this decomposition (smallest symbol per colour)."""
        out: list[int] = []
        for seg in self.segments:
            if isinstance(seg, ZeroRun):
                out.extend([0] * seg.length)
            else:
                out.extend([params.smallest_symbol(seg.color)] * seg.length)
        return tuple(out)

    def to_list(self) -> list[dict]:
        res = []
        for seg in self.segments:
            if isinstance(seg, ZeroRun):
                res.append({"kind": "zeros", "length": seg.length})
            else:
                res.append({"kind": "block", "color": seg.color, "length": seg.length})
        return res


def decompose(word: Sequence[int], params: ShiftParams) -> BlockDecomposition:
    """Split ``word`` into maximal zero-runs and maximal single-colour blocks."""
    w = params.validate(word)
    segs: list[Segment] = []
    i, n = 0, len(w)
    while i < n:
        c = params.color(w[i])
        j = i + 1
        while j < n and params.color(w[j]) == c:
            j += 1
        segs.append(ZeroRun(j - i) if c == 0 else ColorBlock(c, j - i))
        i = j
    return BlockDecomposition(tuple(segs))


def parse_word(text: str) -> Word:
    """Parse a whitespace-separated list of decimal symbols."""
    return tuple(int(tok) for tok in text.split())


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(s) for s in word)
