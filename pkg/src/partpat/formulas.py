"""Closed forms and recurrences that cross-check the counting engine.

Every generating-function statement is realized as its coefficient
recurrence; nothing symbolic.  All results are confined to 64-bit range:
a value that would exceed 2**63 - 1 raises CountOverflowError instead of
being returned, so long runs degrade into clean errors rather than
silently wrapping (counts are compared against C-side accumulators).
"""

from functools import lru_cache
from math import comb

__all__ = [
    "CountOverflowError",
    "bell",
    "stirling2",
    "catalan",
    "count_blocksize_lt",
    "count_blocks_lt",
    "lift",
    "lift_vector",
    "lift_inverse",
    "lift_inverse_vector",
    "t_closed",
    "t_rec",
    "block_pattern_counts",
]

U63 = 2**63 - 1


class CountOverflowError(OverflowError):
    """A count left the 64-bit range instead of wrapping."""


def _checked(value, what):
    if value > U63:
        raise CountOverflowError("%s exceeds 64-bit range" % what)
    return value


@lru_cache(maxsize=None)
def bell(n):
    """Number of partitions of [n], via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return _checked(row[0], "bell(%d)" % n)


@lru_cache(maxsize=None)
def stirling2(n, m):
    """Partitions of [n] with exactly m blocks."""
    if n < 0 or m < 0:
        raise ValueError("arguments must be nonnegative")
    if n == 0 or m == 0:
        return 1 if n == m else 0
    if m > n:
        return 0
    return _checked(stirling2(n - 1, m - 1) + m * stirling2(n - 1, m),
                    "stirling2(%d,%d)" % (n, m))


def catalan(n):
    """The n-th Catalan number."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _checked(comb(2 * n, n) // (n + 1), "catalan(%d)" % n)


@lru_cache(maxsize=None)
def count_blocksize_lt(k, n):
    """Partitions of [n] whose every block is smaller than k.

    Recurrence over the block of the largest element: choose j more
    members for it, j at most k - 2.  These are exactly the partitions
    avoiding the constant pattern of k ones; k = 3 gives the involution
    numbers 1, 1, 2, 4, 10, 26, ...
    """
    if k < 1:
        raise ValueError("k must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    total = 0
    for j in range(min(k - 1, n)):
        total += comb(n - 1, j) * count_blocksize_lt(k, n - 1 - j)
    return _checked(total, "count_blocksize_lt(%d,%d)" % (k, n))


def count_blocks_lt(k, n):
    """Partitions of [n] with fewer than k blocks: sum of Stirling numbers.

    Equals the number of partitions avoiding the strictly increasing
    pattern 12...k.
    """
    if k < 1:
        raise ValueError("k must be positive")
    total = sum(stirling2(n, i) for i in range(k))
    return _checked(total, "count_blocks_lt(%d,%d)" % (k, n))


def lift(tau_counts, n):
    """Binomial convolution sending avoider counts of tau to those of
    the pattern 1(tau+1).

    count(n) = sum over i < n of C(n-1, i) * tau_counts[i]: removing the
    first block leaves a smaller avoider of tau, and the block can be
    any subset of [n] containing 1.  ``tau_counts[i]`` must hold the
    count at size i for every i < n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(tau_counts) < n:
        raise ValueError("need counts through n-1")
    total = sum(comb(n - 1, i) * tau_counts[i] for i in range(n))
    return _checked(total, "lift(%d)" % n)


def lift_vector(tau_counts, upto):
    """Vector form of :func:`lift`: entries 0..upto, index 0 fixed at 1."""
    return [1] + [lift(tau_counts, n) for n in range(1, upto + 1)]


def lift_inverse(sigma_counts, n):
    """Invert :func:`lift`: recover the tau count at n - 1 from the
    sigma counts through n.

    Alternating binomial sum; a negative intermediate total is fine but
    a negative result signals inputs that did not come from a lift.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(sigma_counts) < n + 1:
        raise ValueError("need counts through n")
    total = sum((-1) ** i * comb(n - 1, i) * sigma_counts[n - i]
                for i in range(n))
    if total < 0:
        raise ValueError("inverse produced a negative count")
    return _checked(total, "lift_inverse(%d)" % n)


def lift_inverse_vector(sigma_counts):
    """Recover the full tau vector (one entry shorter) from sigma's."""
    upto = len(sigma_counts) - 1
    return [1] + [lift_inverse(sigma_counts, n) for n in range(1, upto)]


@lru_cache(maxsize=None)
def t_rec(n, k):
    """Count of 123-avoiding sequences of rank n ending in k, by the
    recurrence t(n, k) = sum of t(n-1, j) for j from k-1 to n-1."""
    if k < 1 or k > n:
        return 0
    if n == 1:
        return 1 if k == 1 else 0
    return _checked(sum(t_rec(n - 1, j) for j in range(k - 1, n)),
                    "t_rec(%d,%d)" % (n, k))


def t_closed(n, k):
    """Closed form (k/n) * C(2n-k-1, n-1); exact integer division."""
    if k < 1 or k > n:
        return 0
    num = k * comb(2 * n - k - 1, n - 1)
    q, r = divmod(num, n)
    if r:
        raise ArithmeticError("t(%d,%d) is not an integer?" % (n, k))
    return _checked(q, "t_closed(%d,%d)" % (n, k))


def block_pattern_counts(m, n):
    """Avoider counts for the pattern 1 followed by m twos, from the
    generating-function route: the lift of the all-blocks-smaller-than-m
    sequence.  Cross-checked against direct enumeration in the tests."""
    if m < 1:
        raise ValueError("m must be positive")
    if n == 0:
        return 1
    base = [count_blocksize_lt(m, i) for i in range(n)]
    return lift(base, n)
