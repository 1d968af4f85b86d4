"""Partitions, strict partitions, and the shift/complement combinatorics.

Conventions that matter here:

* A StrictPartition is a strictly decreasing tuple of integers >= 0 and a
  trailing 0 part is significant: (2, 0) != (2,).  The Fock-space basis
  needs this distinction (the number of parts is the particle number).
* A Partition is weakly decreasing with explicit length, so trailing
  zeros are kept as written.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional, Sequence, Tuple

StrictPartition = Tuple[int, ...]
Partition = Tuple[int, ...]


def is_partition(parts: Sequence[int]) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)) and (
        not parts or parts[-1] >= 0
    )


def is_strict(parts: Sequence[int]) -> bool:
    return all(parts[i] > parts[i + 1] for i in range(len(parts) - 1)) and (
        not parts or parts[-1] >= 0
    )


def check_strict(parts: Sequence[int]) -> StrictPartition:
    parts = tuple(parts)
    if not is_strict(parts):
        raise ValueError(f"not a strict partition: {parts}")
    return parts


def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts}")
    return parts


def size(parts: Sequence[int]) -> int:
    return sum(parts)


def rho(length: int) -> StrictPartition:
    """The staircase (length-1, ..., 1, 0)."""
    return tuple(range(length - 1, -1, -1))


def rho_plus(length: int) -> StrictPartition:
    """The shifted staircase (length, ..., 2, 1)."""
    return tuple(range(length, 0, -1))


def rho_shift(parts: Sequence[int], direction: str):
    """Add or subtract the staircase of the partition's own length.

    * plus:  partition -> strict partition (always valid),
    * minus: strict partition -> partition, requires lambda_i >= l - i.
    """
    parts = tuple(parts)
    l = len(parts)
    if direction == "plus":
        out = tuple(p + (l - 1 - i) for i, p in enumerate(parts))
        return check_strict(out)
    if direction == "minus":
        check_strict(parts)
        out = tuple(p - (l - 1 - i) for i, p in enumerate(parts))
        if not is_partition(out) or (out and out[-1] < 0):
            raise ValueError(f"{parts} is not rho-shiftable downwards")
        return out
    raise ValueError(f"direction must be plus or minus, got {direction!r}")


def conjugate(parts: Sequence[int], length: Optional[int] = None) -> Partition:
    """Conjugate partition; pad with trailing zeros to `length` if given."""
    parts = check_partition(parts)
    width = parts[0] if parts else 0
    out = [sum(1 for p in parts if p >= i) for i in range(1, width + 1)]
    if length is not None:
        if length < len(out):
            raise ValueError(f"length {length} too small for conjugate of {parts}")
        out += [0] * (length - len(out))
    return tuple(out)


def complement_reverse(parts: Sequence[int], m: int) -> StrictPartition:
    """Reverse a strict partition in [0, m] and swap parts with non-parts.

    Returns rho_{m+1} set-minus {m - lambda_i}.
    """
    parts = check_strict(parts)
    if parts and m < parts[0]:
        raise ValueError(f"m={m} is smaller than the largest part of {parts}")
    removed = {m - p for p in parts}
    return tuple(k for k in range(m, -1, -1) if k not in removed)


def interleaves(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff lambda_i >= mu_i >= lambda_{i+1} for all i (equal lengths)."""
    lam = check_strict(lam)
    mu = check_strict(mu)
    if len(lam) != len(mu):
        raise ValueError(f"length mismatch: {lam} vs {mu}")
    for i in range(len(lam)):
        if mu[i] > lam[i]:
            return False
        if i + 1 < len(lam) and mu[i] < lam[i + 1]:
            return False
    return True


def enumerate_strict(
    max_part: int,
    length: Optional[int] = None,
    max_length: Optional[int] = None,
    max_size: Optional[int] = None,
) -> list:
    """All strict partitions with parts in [0, max_part].

    These are exactly the subsets of {0, ..., max_part} listed in
    decreasing order, so there are 2^(max_part+1) of them.  Order is
    deterministic: by size, then lexicographic on the parts tuple.
    """
    out = []
    if max_part < -1:
        raise ValueError("max_part must be >= -1")
    universe = list(range(max_part, -1, -1))
    for r in range(len(universe) + 1):
        if length is not None and r != length:
            continue
        if max_length is not None and r > max_length:
            continue
        for combo in itertools.combinations(universe, r):
            if max_size is not None and sum(combo) > max_size:
                continue
            out.append(combo)
    out.sort(key=lambda p: (sum(p), p))
    return out


def partitions_of(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Ordinary partitions of n (weakly decreasing, positive parts)."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def z_lambda(parts: Sequence[int]) -> Fraction:
    """z_lambda = prod_i i^{m_i} m_i! over part multiplicities."""
    check_partition(parts)
    mult: dict = {}
    for p in parts:
        if p > 0:
            mult[p] = mult.get(p, 0) + 1
    z = 1
    for i, m in mult.items():
        z *= i ** m * factorial(m)
    return Fraction(z)


def pad(parts: Sequence[int], length: int) -> Partition:
    """Pad a partition with trailing zeros to the given length."""
    parts = tuple(parts)
    if length < len(parts):
        if any(p != 0 for p in parts[length:]):
            raise ValueError(f"cannot shrink {parts} to length {length}")
        return parts[:length]
    return parts + (0,) * (length - len(parts))


def contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff the diagram of mu fits inside lambda (after padding)."""
    n = max(len(lam), len(mu))
    lam = pad(lam, n)
    mu = pad(mu, n)
    return all(lam[i] >= mu[i] for i in range(n))
