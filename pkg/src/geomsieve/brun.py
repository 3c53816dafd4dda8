"""Sign-alternation checks for Mobius partial sums and their sequence
counterpart.

Everything here is exact: sequences must consist of ints or Fractions,
and all comparisons are integer/rational comparisons.  Two routes prove
the same fact and the tests hold them together: verify_brun() truncates
Mobius sums rank by rank on a geometric lattice, while
alternating_partial_sums_check() works on any non-negative unimodal
sequence with vanishing alternating sum (which the absolute Whitney
numbers of such a lattice are).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BrunViolation,
    HypothesisViolated,
    NegativeEntry,
    NotGeometric,
)

__all__ = [
    "is_unimodal",
    "is_log_concave",
    "alternating_partial_sums_check",
    "verify_brun",
    "BrunReport",
]


def _check_entries(seq):
    if len(seq) == 0:
        raise ValueError("empty sequence")
    for i, v in enumerate(seq):
        if not isinstance(v, (int, Fraction)):
            raise TypeError(
                f"entry {i} is {type(v).__name__}; use int or Fraction")


def is_unimodal(seq):
    """(True, peak) with the smallest valid peak index, or (False, None).

    Entries must be non-negative (NegativeEntry otherwise).
    """
    seq = list(seq)
    _check_entries(seq)
    for i, v in enumerate(seq):
        if v < 0:
            raise NegativeEntry(f"entry {i} is negative")
    last = len(seq) - 1
    i1 = 0
    while i1 < last and seq[i1] <= seq[i1 + 1]:
        i1 += 1
    i2 = last
    while i2 > 0 and seq[i2 - 1] >= seq[i2]:
        i2 -= 1
    if i2 <= i1:
        return True, i2
    return False, None


def is_log_concave(seq):
    """(True, None) or (False, k) at the first k with a_k^2 < a_{k-1} a_{k+1}.

    Entries must be non-negative (NegativeEntry otherwise).
    """
    seq = list(seq)
    _check_entries(seq)
    for i, v in enumerate(seq):
        if v < 0:
            raise NegativeEntry(f"entry {i} is negative")
    for k in range(1, len(seq) - 1):
        if seq[k] * seq[k] < seq[k - 1] * seq[k + 1]:
            return False, k
    return True, None


def alternating_partial_sums_check(seq):
    """Partial sums t_k = sum_{i<=k} (-1)^i a_i for a non-negative
    unimodal sequence with t_last = 0.

    All three hypotheses are verified (HypothesisViolated otherwise).
    Returns the tuple of partial sums after asserting that every even
    cutoff gives t_k >= 0 and every odd cutoff t_k <= 0; a failure
    there would contradict a proven fact, so it raises BrunViolation.
    """
    seq = list(seq)
    _check_entries(seq)
    for i, v in enumerate(seq):
        if v < 0:
            raise HypothesisViolated("non-negative", i)
    try:
        ok, _peak = is_unimodal(seq)
    except NegativeEntry:  # pragma: no cover - filtered above
        ok = False
    if not ok:
        raise HypothesisViolated("unimodal", tuple(seq))
    partial = []
    t = 0
    for i, v in enumerate(seq):
        t += v if i % 2 == 0 else -v
        partial.append(t)
    if partial[-1] != 0:
        raise HypothesisViolated("zero-alternating-sum", partial[-1])
    for k, t in enumerate(partial):
        if k % 2 == 0 and t < 0:
            raise BrunViolation(f"even cutoff {k} gives {t} < 0")
        if k % 2 == 1 and t > 0:
            raise BrunViolation(f"odd cutoff {k} gives {t} > 0")
    return tuple(partial)


@dataclass(frozen=True)
class BrunReport:
    """Verified truncation data for one geometric lattice."""

    whitney_first: tuple
    partial_sums: tuple


def verify_brun(lat):
    """Check that rank-truncated Mobius sums alternate in sign.

    For a geometric lattice the sum of mu(bottom, y) over rank(y) <= k
    is >= 0 for even k and <= 0 for odd k, vanishing at the top rank.
    Raises NotGeometric for non-geometric input and BrunViolation if a
    sign check fails (the latter cannot happen for correct code).
    """
    chk = lat.is_geometric()
    if not chk:
        raise NotGeometric(f"{chk.failure} (witness {chk.witness})")
    w = lat.whitney_first()
    partial = []
    t = 0
    for k, wk in enumerate(w):
        t += wk
        partial.append(t)
        if k % 2 == 0 and t < 0:
            raise BrunViolation(f"even cutoff {k} gives {t} < 0")
        if k % 2 == 1 and t > 0:
            raise BrunViolation(f"odd cutoff {k} gives {t} > 0")
    if lat.top_rank >= 1 and partial[-1] != 0:
        raise BrunViolation("Mobius sums over the whole lattice must vanish")
    return BrunReport(whitney_first=w, partial_sums=tuple(partial))
