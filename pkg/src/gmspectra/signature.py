r"""Combinatorics of zero-order tuples.

A tuple ``mu = (m_1, ..., m_n)`` of non-negative integers with even sum
determines a genus ``g = (sum(mu) + 2) / 2``, the level ``ell = lcm(m_i + 1)``
and per-branch scaling weights ``a_i = ell / (m_i + 1)``.  Everything in this
module is derived from that data alone: ceiling ladders ``l_{lam,i} =
ceil(lam / a_i)``, their summation identity, parity counts, and exhaustive
enumeration of tuples of fixed genus.
"""

from dataclasses import dataclass
from itertools import count
from math import gcd, lcm


@dataclass(frozen=True)
class Signature:
    """Zero-order tuple with its derived scaling data.

    Orders are stored non-increasing; use :func:`derive` to build one.
    """

    orders: tuple
    genus: int
    ell: int
    weights_a: tuple

    @property
    def n(self):
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    def __str__(self):
        return "(" + ",".join(str(m) for m in self.orders) + ")"


def derive(orders) -> Signature:
    """Build a :class:`Signature` from a sequence of zero orders.

    Orders are sorted non-increasing.  Raises ``ValueError`` on an empty
    tuple, a negative entry, or an odd total.
    """
    orders = tuple(sorted(orders, reverse=True))
    if not orders:
        raise ValueError("signature must have at least one entry")
    if any(m < 0 for m in orders):
        raise ValueError("zero orders must be non-negative")
    total = sum(orders)
    if total % 2:
        raise ValueError("sum of zero orders must be even")
    g = total // 2 + 1
    ell = lcm(*(m + 1 for m in orders))
    a = tuple(ell // (m + 1) for m in orders)
    return Signature(orders=orders, genus=g, ell=ell, weights_a=a)


def ladder(sig: Signature, lam: int):
    """Tuple ``(ceil(lam/a_1), ..., ceil(lam/a_n))`` for ``lam >= 0``."""
    if lam < 0:
        raise ValueError("ladder level must be non-negative")
    return tuple(-(-lam // a) for a in sig.weights_a)


def ladder_sum_identity(sig: Signature, i: int) -> int:
    """Sum of ladder values of branch ``i`` over one full period.

    Returns ``sum(l_{lam,i} for lam in 1..ell)``, which equals
    ``(m_i + 2) * ell / 2``.
    """
    a = sig.weights_a[i]
    return sum(-(-lam // a) for lam in range(1, sig.ell + 1))


def parity_count(k1: int, k2: int) -> int:
    """Number of even values of ``ceil(lam/k2) + ceil(lam/k1)``, ``1 <= lam <= k1*k2``.

    Requires coprime ``k1 > k2 >= 1``.  Equals ``(k1*k2 + 1) / 2`` when both
    are odd and ``k1*k2 / 2`` when exactly one is odd.
    """
    if k1 <= k2 or k2 < 1:
        raise ValueError("need k1 > k2 >= 1")
    if gcd(k1, k2) != 1:
        raise ValueError("k1 and k2 must be coprime")
    return sum(
        1
        for lam in range(1, k1 * k2 + 1)
        if (-(-lam // k2) - (-lam // k1)) % 2 == 0
    )


def n_plus(sig: Signature, lam_lo: int, lam_hi: int) -> int:
    """Count levels ``lam in [lam_lo, lam_hi]`` with ``sum_i (l_{lam,i} - 1)`` even."""
    if lam_lo > lam_hi:
        return 0
    n = sig.n
    total = 0
    for lam in range(lam_lo, lam_hi + 1):
        if (sum(ladder(sig, lam)) - n) % 2 == 0:
            total += 1
    return total


def _partitions(total, max_part, max_len):
    # non-increasing tuples of positive integers
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_len - 1):
            yield (first,) + rest


def enumerate_signatures(g: int, n_max: int, zeros_allowed: bool = False):
    """All non-increasing order tuples of genus ``g`` with at most ``n_max`` entries.

    Zero entries are appended (in every count that fits) only when
    ``zeros_allowed``.  Output is sorted lexicographically descending.
    """
    if g < 1 or n_max < 1:
        raise ValueError("need g >= 1 and n_max >= 1")
    total = 2 * g - 2
    out = []
    for part in _partitions(total, total if total else 1, n_max):
        if not part and not zeros_allowed:
            # genus one has no zero-free signatures
            continue
        out.append(part)
        if zeros_allowed:
            for k in count(1):
                if len(part) + k > n_max:
                    break
                out.append(part + (0,) * k)
    out = [t for t in out if t]
    out.sort(reverse=True)
    return [derive(t) for t in out]
