"""Growth-rate estimation, the extension-census audit, and exploratory reports.

The audit replays, exhaustively at small scale, the counting argument behind
the certificates: among one-letter extensions of free words, those that leave
the language are classified by the period of the minimal forbidden window
ending at the new letter, and each class is dominated by the number of free
words at the index the window's tail rewinds to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bounds import BoundCertificate, closed_form_root, rational_witness
from .bounds import asymptotic_target
from .counting import DEFAULT_NAIVE_BUDGET, CountSeries, count_free, count_tail_restricted
from .errors import BudgetExceededError, LemmaViolationError
from .words import Threshold, _scan_violation, min_violation_length

__all__ = [
    "GrowthEstimate",
    "growth_estimate",
    "FjAuditRow",
    "FjAudit",
    "fj_audit",
    "suffix_determination_check",
    "ReportRow",
    "REPORT_COLUMNS",
    "conjecture_report",
]


@dataclass(frozen=True)
class GrowthEstimate:
    """A bracket around the growth rate of a counted language.

    upper is min over i of C_i**(1/i), a true upper bound for factorial
    languages by submultiplicativity; lower is the certified witness when
    one is supplied, otherwise the smallest observed count ratio.
    """

    k: int
    threshold: Threshold
    lower: Fraction
    upper: float
    ratios: tuple[Fraction, ...]


def growth_estimate(series: CountSeries, cert: BoundCertificate | None = None) -> GrowthEstimate:
    if len(series.counts) < 3:
        raise ValueError("series too short: need counts up to length 2 at least")
    upper = math.inf
    for i in range(1, len(series.counts)):
        c = series.counts[i]
        root = 0.0 if c == 0 else math.exp(math.log(c) / i)
        upper = min(upper, root)
    ratios = series.ratios()
    if cert is not None:
        lower = cert.x_witness
    elif ratios:
        lower = min(ratios)
    else:
        lower = Fraction(0)
    return GrowthEstimate(k=series.k, threshold=series.threshold,
                          lower=lower, upper=upper, ratios=ratios)


@dataclass(frozen=True)
class FjAuditRow:
    period: int
    count: int  # rejected extensions whose minimal forbidden window has this period
    bound: int  # free words at the index the window's tail rewinds to


@dataclass(frozen=True)
class FjAudit:
    k: int
    n: int
    strict: bool
    i: int
    rows: tuple[FjAuditRow, ...]
    f_total: int  # directly enumerated rejected extensions
    c_i: int
    c_next: int


def _rejected_extensions(k: int, t: Threshold, i: int, budget: int):
    """All words of length i+1 with a free length-i prefix that are not free."""
    if k ** (i + 1) > budget:
        raise BudgetExceededError(
            f"audit is exhaustive: k**(i+1) = {k}**{i + 1} exceeds the work budget {budget}",
            parameter="len")
    out = []
    for w in product(range(1, k + 1), repeat=i + 1):
        if _scan_violation(w[:i], t) is None and _scan_violation(w, t) is not None:
            out.append(w)
    return out


def _windows(t: Threshold, end: int):
    """(period, window, tail) triples with window <= end, ascending period."""
    out = []
    j = 1
    while True:
        m = min_violation_length(j, t)
        if m > end:
            break
        out.append((j, m, m - j))
        j += 1
    return out


def fj_audit(k: int, n: int, strict: bool, i: int,
             budget: int = DEFAULT_NAIVE_BUDGET) -> FjAudit:
    """Exhaustive census of rejected one-letter extensions, by window period.

    Counts, for each period j, the rejected extensions whose minimal
    forbidden window of period j ends at the last letter, and pairs each
    count with the free-word count it must not exceed.  Raises
    LemmaViolationError if any per-period bound fails, if the per-period
    counts do not cover all rejected extensions, or if the rejected total
    does not balance k*C_i - C_{i+1} exactly.
    """
    t = Threshold.dejean(n, strict)
    series = count_free(k, t, i + 1, method="incremental")
    counts = series.counts
    rejected = _rejected_extensions(k, t, i, budget)
    f_total = len(rejected)
    if k * counts[i] - counts[i + 1] != f_total:
        raise LemmaViolationError(
            f"extension balance failed: k*C_{i} - C_{i + 1} = "
            f"{k * counts[i] - counts[i + 1]} but {f_total} rejected extensions found")
    end = i + 1
    rows = []
    covered = 0
    for j, m, tail in _windows(t, end):
        cnt = sum(
            1 for w in rejected
            if w[end - 1] == w[end - 1 - j] and w[end - m + j:] == w[end - m:end - j]
        )
        bound = counts[end - tail]
        if cnt > bound:
            raise LemmaViolationError(
                f"period-{j} census {cnt} exceeds its bound C_{end - tail} = {bound} "
                f"(k={k}, n={n}, strict={strict}, i={i})")
        rows.append(FjAuditRow(period=j, count=cnt, bound=bound))
        covered += cnt
    if covered < f_total:
        raise LemmaViolationError(
            f"period census covers {covered} < {f_total} rejected extensions")
    return FjAudit(k=k, n=n, strict=strict, i=i, rows=tuple(rows),
                   f_total=f_total, c_i=counts[i], c_next=counts[i + 1])


def suffix_determination_check(k: int, n: int, strict: bool, i: int,
                               budget: int = DEFAULT_NAIVE_BUDGET) -> bool:
    """Verify rejected extensions are recoverable from their shortened prefixes.

    For every rejected extension and every period j whose minimal window
    ends at the last letter, drop the window's tail and regenerate it by
    copying letters from one period back; the rebuilt word must equal the
    original.  This is the injection that makes the per-period census at
    most the free-word count at the shortened length.
    """
    t = Threshold.dejean(n, strict)
    end = i + 1
    for w in _rejected_extensions(k, t, i, budget):
        for j, m, tail in _windows(t, end):
            if w[end - 1] == w[end - 1 - j] and w[end - m + j:] == w[end - m:end - j]:
                rebuilt = list(w[:end - tail])
                for pos in range(end - tail, end):
                    rebuilt.append(rebuilt[pos - j])
                if tuple(rebuilt) != w:
                    return False
    return True


@dataclass(frozen=True)
class ReportRow:
    k: int
    n: int
    root: float | None
    root_plus: float | None
    target: float
    target_plus: float
    witness: Fraction | None
    witness_plus: Fraction | None
    big_jump: float | None         # root_plus - root, conjectured ~ 1
    small_variation: float | None  # root(k, n) - root_plus(k, n+1), conjectured ~ 1/k
    resid_times_k2: float | None   # (root - target) * k^2, bounded if the expansion holds
    resid_plus_times_k2: float | None
    alpha_ratio: float | None        # last count ratio of the full language
    alpha_prime_ratio: float | None  # same for the tail-restricted language


REPORT_COLUMNS = (
    "k", "n", "root", "root_plus", "target", "target_plus",
    "witness", "witness_plus", "big_jump", "small_variation",
    "resid_times_k2", "resid_plus_times_k2", "alpha_ratio", "alpha_prime_ratio",
)


def _last_ratio(series: CountSeries) -> float | None:
    if series.counts[-2] == 0:
        return None
    return series.counts[-1] / series.counts[-2]


def conjecture_report(n_values, k_values, max_length: int = 8, tail_max: int = 2,
                      *, workers: int = 1) -> list[ReportRow]:
    """Exploratory side-by-side of certified bounds, targets, and enumerations.

    No pass/fail semantics: the tabulated differences and scaled residuals
    are desk-scale probes of asymptotic statements, meant to be read, not
    asserted.
    """
    if max_length < 2:
        raise ValueError("max_length must be at least 2")
    rows = []
    for n in sorted(set(n_values)):
        for k in sorted(set(k_values)):
            root = closed_form_root(k, n, False)
            root_plus = closed_form_root(k, n, True)
            witness = rational_witness(k, n, False) if root is not None else None
            witness_plus = rational_witness(k, n, True) if root_plus is not None else None
            target = asymptotic_target(k, n, False)
            target_plus = asymptotic_target(k, n, True)
            root_plus_next = closed_form_root(k, n + 1, True)
            t = Threshold.dejean(n)
            series = count_free(k, t, max_length, "canonical", workers=workers)
            series_prime = count_tail_restricted(k, t, tail_max, max_length,
                                                 "canonical", workers=workers)
            rows.append(ReportRow(
                k=k, n=n, root=root, root_plus=root_plus,
                target=target, target_plus=target_plus,
                witness=witness, witness_plus=witness_plus,
                big_jump=None if root is None or root_plus is None else root_plus - root,
                small_variation=None if root is None or root_plus_next is None
                else root - root_plus_next,
                resid_times_k2=None if root is None else (root - target) * k * k,
                resid_plus_times_k2=None if root_plus is None
                else (root_plus - target_plus) * k * k,
                alpha_ratio=_last_ratio(series),
                alpha_prime_ratio=_last_ratio(series_prime),
            ))
    return rows
