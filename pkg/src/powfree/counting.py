"""Exact counting of threshold-free words, by three interchangeable engines.

naive        filters every word of every length through the detector; it is
             the test oracle and refuses work beyond its budget.
incremental  depth-first extension of free words, one letter at a time,
             rejecting on the minimal suffix window per period.
canonical    depth-first over canonical patterns (first occurrences of
             distinct letters appear in increasing order); a pattern with d
             distinct letters stands for perm(k, d) concrete words, which is
             sound because freeness is invariant under letter renaming.  Its
             state space does not depend on k, so it is the default for
             large alphabets.

All counts are Python ints, hence exact at any size.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .errors import BudgetExceededError
from .words import Threshold, _scan_violation, min_violation_length

__all__ = [
    "METHODS",
    "DEFAULT_NAIVE_BUDGET",
    "CountSeries",
    "count_free",
    "count_tail_restricted",
]

METHODS = ("naive", "incremental", "canonical")
DEFAULT_NAIVE_BUDGET = 10**8

# Depth at which the search tree is split into per-prefix subtree tasks.
_SPLIT_DEPTH = 4
# Below this length a parallel pool costs more than it saves.
_MIN_PARALLEL_LENGTH = 8


@dataclass(frozen=True)
class CountSeries:
    """Exact counts C_0..C_L of threshold-free words for fixed (k, threshold).

    tail_max, when set, marks the tail-restricted language: only forbidden
    powers whose tail is at most tail_max letters are excluded.
    """

    k: int
    threshold: Threshold
    counts: tuple[int, ...]
    method: str
    tail_max: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.k < 1:
            raise ValueError("alphabet size must be positive")
        object.__setattr__(self, "counts", tuple(self.counts))
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1

    def prefix(self, max_length: int) -> "CountSeries":
        if max_length > self.max_length:
            raise ValueError("series too short for requested prefix")
        return replace(self, counts=self.counts[:max_length + 1])

    def ratios(self) -> tuple[Fraction, ...]:
        """Consecutive ratios C_{i+1}/C_i, stopping at the first zero count."""
        out = []
        for i in range(len(self.counts) - 1):
            if self.counts[i] == 0:
                break
            out.append(Fraction(self.counts[i + 1], self.counts[i]))
        return tuple(out)

    def digest(self) -> str:
        """Hex digest identifying the exact count data (method-independent)."""
        t = self.threshold
        key = f"{self.k}|{t.num}/{t.den}|{int(t.strict)}|{self.tail_max}|"
        key += ",".join(str(c) for c in self.counts)
        return hashlib.sha256(key.encode()).hexdigest()

    def to_record(self) -> dict:
        t = self.threshold
        return {
            "k": self.k,
            "num": t.num,
            "den": t.den,
            "strict": t.strict,
            "tail_max": self.tail_max,
            "method": self.method,
            "counts": [str(c) for c in self.counts],
        }

    @classmethod
    def from_record(cls, record: dict) -> "CountSeries":
        counts = tuple(int(c) for c in record["counts"])
        if any(str(c) != s for c, s in zip(counts, record["counts"])):
            raise ValueError("counts are not canonical decimal strings")
        tail_max = record["tail_max"]
        return cls(
            k=int(record["k"]),
            threshold=Threshold(int(record["num"]), int(record["den"]), bool(record["strict"])),
            counts=counts,
            method=str(record["method"]),
            tail_max=None if tail_max is None else int(tail_max),
        )


def _window_checks(t: Threshold, max_length: int, tail_max: int | None):
    """(period, window) pairs, window = minimal forbidden length at that period.

    Ordered by window ascending (windows are nondecreasing in the period), so
    extension checks can stop at the first window longer than the word.
    """
    pairs = []
    j = 1
    while True:
        m = min_violation_length(j, t)
        if m > max_length:
            break
        if tail_max is None or m - j <= tail_max:
            pairs.append((j, m))
        j += 1
    return pairs


def _ok(w, ln, pairs) -> bool:
    for j, m in pairs:
        if m > ln:
            break
        if w[ln - 1] == w[ln - 1 - j] and w[ln - m + j:ln] == w[ln - m:ln - j]:
            return False
    return True


def _dfs_words(k, pairs, max_length, counts, w):
    ln = len(w) + 1
    for a in range(1, k + 1):
        w.append(a)
        if _ok(w, ln, pairs):
            counts[ln] += 1
            if ln < max_length:
                _dfs_words(k, pairs, max_length, counts, w)
        w.pop()


def _dfs_words_frontier(k, pairs, split, max_length, counts, w, out):
    ln = len(w) + 1
    for a in range(1, k + 1):
        w.append(a)
        if _ok(w, ln, pairs):
            counts[ln] += 1
            if ln == split:
                out.append(tuple(w))
            elif ln < max_length:
                _dfs_words_frontier(k, pairs, split, max_length, counts, w, out)
        w.pop()


def _dfs_patterns(k, pairs, max_length, counts, w, distinct, weight):
    ln = len(w) + 1
    for a in range(1, min(distinct + 1, k) + 1):
        w.append(a)
        if _ok(w, ln, pairs):
            if a > distinct:
                wt = weight * (k - distinct)
                d = distinct + 1
            else:
                wt = weight
                d = distinct
            counts[ln] += wt
            if ln < max_length:
                _dfs_patterns(k, pairs, max_length, counts, w, d, wt)
        w.pop()


def _dfs_patterns_frontier(k, pairs, split, max_length, counts, w, distinct, weight, out):
    ln = len(w) + 1
    for a in range(1, min(distinct + 1, k) + 1):
        w.append(a)
        if _ok(w, ln, pairs):
            if a > distinct:
                wt = weight * (k - distinct)
                d = distinct + 1
            else:
                wt = weight
                d = distinct
            counts[ln] += wt
            if ln == split:
                out.append(tuple(w))
            elif ln < max_length:
                _dfs_patterns_frontier(k, pairs, split, max_length, counts, w, d, wt, out)
        w.pop()


def _perm(k: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= k - i
    return out


def _subtree_counts(args):
    """Count completions of a chunk of frontier prefixes (worker task)."""
    method, k, num, den, strict, tail_max, max_length, prefixes = args
    t = Threshold(num, den, strict)
    pairs = _window_checks(t, max_length, tail_max)
    counts = [0] * (max_length + 1)
    for pref in prefixes:
        w = list(pref)
        if method == "incremental":
            _dfs_words(k, pairs, max_length, counts, w)
        else:
            d = max(pref)
            _dfs_patterns(k, pairs, max_length, counts, w, d, _perm(k, d))
    return counts


def _count_naive(k, t, max_length, tail_max, budget):
    if k ** max_length > budget:
        raise BudgetExceededError(
            f"naive engine: k**max_length = {k}**{max_length} exceeds the work budget "
            f"{budget}; use the incremental or canonical engine",
            parameter="max-len",
        )
    counts = [0] * (max_length + 1)
    counts[0] = 1
    for i in range(1, max_length + 1):
        counts[i] = sum(
            1 for w in product(range(1, k + 1), repeat=i)
            if _scan_violation(w, t, tail_max) is None
        )
    return counts


def _count_tree(method, k, t, max_length, tail_max, workers):
    pairs = _window_checks(t, max_length, tail_max)
    counts = [0] * (max_length + 1)
    counts[0] = 1
    if max_length == 0:
        return counts

    parallel = workers > 1 and max_length >= _MIN_PARALLEL_LENGTH
    if not parallel:
        if method == "incremental":
            _dfs_words(k, pairs, max_length, counts, [])
        else:
            _dfs_patterns(k, pairs, max_length, counts, [], 0, 1)
        return counts

    split = min(_SPLIT_DEPTH, max_length - 1)
    frontier: list[tuple[int, ...]] = []
    if method == "incremental":
        _dfs_words_frontier(k, pairs, split, max_length, counts, [], frontier)
    else:
        _dfs_patterns_frontier(k, pairs, split, max_length, counts, [], 0, 1, frontier)
    chunks = [frontier[i::workers] for i in range(workers)]
    chunks = [c for c in chunks if c]
    if not chunks:
        return counts
    tasks = [
        (method, k, t.num, t.den, t.strict, tail_max, max_length, chunk)
        for chunk in chunks
    ]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        for sub in pool.map(_subtree_counts, tasks):
            for i in range(split + 1, max_length + 1):
                counts[i] += sub[i]
    return counts


def _count(k, t, max_length, tail_max, method, workers, budget):
    if k < 1:
        raise ValueError("alphabet size must be positive")
    if max_length < 0:
        raise ValueError("max_length must be nonnegative")
    if tail_max is not None and tail_max < 1:
        raise ValueError("tail_max must be positive")
    if method is None:
        method = "canonical" if k > 6 else "incremental"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "naive":
        counts = _count_naive(k, t, max_length, tail_max, budget)
    else:
        counts = _count_tree(method, k, t, max_length, tail_max, workers)
    return CountSeries(k=k, threshold=t, counts=tuple(counts), method=method, tail_max=tail_max)


def count_free(k: int, t: Threshold, max_length: int, method: str | None = None,
               *, workers: int = 1, budget: int = DEFAULT_NAIVE_BUDGET) -> CountSeries:
    """Exact number of t-free words of each length 0..max_length over {1..k}."""
    return _count(k, t, max_length, None, method, workers, budget)


def count_tail_restricted(k: int, t: Threshold, tail_max: int, max_length: int,
                          method: str | None = None, *, workers: int = 1,
                          budget: int = DEFAULT_NAIVE_BUDGET) -> CountSeries:
    """Count words avoiding only the forbidden powers whose tail is short.

    A word is rejected iff some factor is a forbidden power under t whose
    tail (length minus period) is at most tail_max.  Forbidden powers with
    longer tails are permitted, so the language contains the t-free one.
    """
    return _count(k, t, max_length, tail_max, method, workers, budget)
