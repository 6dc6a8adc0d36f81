"""Domain types and exact fractional-power detection.

Letters are integer indices 1..k.  A factor w[s:e] is a power of period j
when w[t] == w[t-j] for every t in [s+j, e); its exponent is the rational
(e-s)/j.  Every exponent comparison below is an integer cross
multiplication; detection never touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Threshold",
    "Word",
    "ViolationWitness",
    "min_violation_length",
    "find_violation",
    "extension_ok",
]


@dataclass(frozen=True)
class Threshold:
    """An exponent bound beta = num/den (> 1) with a strictness flag.

    strict=False forbids factors of exponent >= beta (beta-free reading);
    strict=True forbids only exponents strictly above beta (the beta-plus
    reading, which admits a strictly larger language).
    """

    num: int
    den: int = 1
    strict: bool = False

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError(f"threshold must be a positive rational, got {self.num}/{self.den}")
        g = math.gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)
        if self.num <= self.den:
            raise ValueError(f"threshold must exceed 1, got {self.num}/{self.den}")

    @classmethod
    def dejean(cls, n: int, strict: bool = False) -> "Threshold":
        """The repetition bound n/(n-1)."""
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        return cls(n, n - 1, strict)

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> "Threshold":
        """Parse 'p' or 'p/q'; a trailing '+' sets the strict flag."""
        s = text.strip()
        if s.endswith("+"):
            strict = True
            s = s[:-1]
        try:
            if "/" in s:
                p, _, q = s.partition("/")
                return cls(int(p), int(q), strict)
            return cls(int(s), 1, strict)
        except ValueError as exc:
            raise ValueError(f"cannot parse threshold {text!r}: {exc}") from None

    def forbids(self, length: int, period: int) -> bool:
        """Whether a power of this length and period is a violation."""
        if length <= period:
            return False
        lhs = length * self.den
        rhs = period * self.num
        return lhs > rhs if self.strict else lhs >= rhs

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def order_key(self) -> tuple[Fraction, int]:
        """Sort key for the extended order: beta sits immediately below beta-plus."""
        return (Fraction(self.num, self.den), 1 if self.strict else 0)

    def __str__(self) -> str:
        base = str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        return base + "+" if self.strict else base


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters over the alphabet {1..k}."""

    letters: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("alphabet size must be positive")
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if not 1 <= a <= self.k:
                raise ValueError(f"letter {a} outside alphabet 1..{self.k}")

    @classmethod
    def from_text(cls, text: str, k: int = 26) -> "Word":
        """Map ASCII letters a..z (case-insensitive) to indices 1..26."""
        letters = []
        for ch in text.lower():
            if not "a" <= ch <= "z":
                raise ValueError(f"not an ASCII letter: {ch!r}")
            letters.append(ord(ch) - ord("a") + 1)
        return cls(tuple(letters), k)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]


@dataclass(frozen=True)
class ViolationWitness:
    """A located forbidden power: word[start : start+length] has the given period."""

    start: int
    period: int
    length: int
    exponent: Fraction

    def __post_init__(self):
        if self.start < 0 or self.period < 1 or self.length <= self.period:
            raise ValueError("witness must describe a power of exponent > 1")
        if self.exponent != Fraction(self.length, self.period):
            raise ValueError("exponent must equal length/period")

    @property
    def tail_length(self) -> int:
        """Length of what remains after erasing the first period."""
        return self.length - self.period


def min_violation_length(period: int, t: Threshold) -> int:
    """Smallest length ell > period at which a power of this period violates t.

    Non-strict: least ell with ell/period >= num/den, i.e. ceil(period*num/den).
    Strict: least ell with ell/period > num/den, i.e. floor(period*num/den) + 1.
    Both exceed period because num > den; both are nondecreasing in period.
    """
    if period < 1:
        raise ValueError("period must be positive")
    if t.strict:
        return period * t.num // t.den + 1
    return -((-period * t.num) // t.den)


def _scan_violation(letters, t: Threshold, tail_max: int | None = None):
    """First forbidden power by end index, ties by smallest period.

    Per (end, period) only the minimal-length window is tested: a longer
    forbidden suffix with the same period contains the minimal one, so the
    minimal window is periodic whenever any violating window is.  Returns
    (start, period, length) or None.  With tail_max set, periods whose
    minimal window has a tail longer than tail_max are exempt (and so are
    all longer windows at that period, whose tails are longer still).
    """
    n = len(letters)
    for end in range(2, n + 1):
        for j in range(1, end):
            m = min_violation_length(j, t)
            if m > end:
                break
            if tail_max is not None and m - j > tail_max:
                continue
            s = end - m
            if letters[end - 1] == letters[end - 1 - j] and letters[s + j:end] == letters[s:end - j]:
                return s, j, m
    return None


def find_violation(word: Word, t: Threshold) -> ViolationWitness | None:
    """Earliest-ending forbidden power of word under t, or None if t-free.

    Deterministic: smallest end index wins, ties broken by smallest period,
    and the reported length is the minimal violating length at that period.
    """
    hit = _scan_violation(word.letters, t)
    if hit is None:
        return None
    start, period, length = hit
    return ViolationWitness(start=start, period=period, length=length,
                            exponent=Fraction(length, period))


def _extension_ok(letters, t: Threshold, tail_max: int | None = None) -> bool:
    """Suffix-only freeness check; valid when letters[:-1] is known free."""
    end = len(letters)
    for j in range(1, end):
        m = min_violation_length(j, t)
        if m > end:
            break
        if tail_max is not None and m - j > tail_max:
            continue
        if letters[end - 1] == letters[end - 1 - j] and letters[end - m + j:end] == letters[end - m:end - j]:
            return False
    return True


def extension_ok(word: Word, t: Threshold) -> bool:
    """Whether a word whose one-shorter prefix is t-free is itself t-free.

    Any violation created by appending a single letter to a free prefix must
    end at the new last letter, so it suffices to test, per period j, the
    minimal forbidden window ending there.  Behavior is unspecified when the
    prefix invariant does not hold.
    """
    return _extension_ok(word.letters, t)
