"""Partitions into distinct parts, Q(n)."""

from __future__ import annotations

import math


def _pentagonal(n: int) -> list:
    """Partition numbers p(0..n) by Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p


_TABLE: tuple = (1,)


def distinct_partition_table(n: int) -> tuple:
    """Q(0..N) for some N >= n, using prod(1 + x^k) = P(x) * prod(1 - x^(2k))."""
    global _TABLE
    if n < len(_TABLE):
        return _TABLE
    n = max(n, 2 * len(_TABLE))
    p = _pentagonal(n)
    q = [0] * (n + 1)
    for k in range(n + 1):
        total, j = p[k], 1
        while True:
            g1 = j * (3 * j - 1)
            if g1 > k:
                break
            sign = -1 if j % 2 else 1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1)
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        q[k] = total
    _TABLE = tuple(q)
    return _TABLE


def count_distinct_partitions(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return distinct_partition_table(n)[n]  # the table may be longer than n + 1


def distinct_partitions_dp(n: int) -> list:
    """Q(0..n) by expanding prod(1 + x^k) term by term; quadratic, meant for cross-checks."""
    q = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(n, part - 1, -1):
            q[total] += q[total - part]
    return q


def distinct_partition_bound(n: int) -> float:
    return math.pi * math.sqrt(n / 3)


def bound_holds(n: int) -> bool:
    """log Q(n) <= pi sqrt(n/3)."""
    q = count_distinct_partitions(n)
    return math.log(q) <= distinct_partition_bound(n)
