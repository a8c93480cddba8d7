"""Order-isomorphic subsequence containment, plus the leveled variants.

A sequence contains a pattern if it has a subsequence order-isomorphic to
it: equal entries match equal pattern symbols and smaller entries match
smaller symbols.  The matcher backtracks over pattern positions carrying
a partial symbol-to-value assignment; patterns here never exceed seven
symbols, so nothing heavier is warranted.

Leveled containment pins selected pattern symbols to a fixed value k of
the host partition; it drives the level-by-level bijection chains in
:mod:`partpat.bijections`.
"""

from .seqcore import validate_partition

__all__ = [
    "contains",
    "find_occurrence",
    "avoids",
    "contains_at_level",
    "is_124_pattern",
    "is_134_pattern",
    "contains_124_at_level",
    "contains_134_at_level",
]


def find_occurrence(hay, pat):
    """First occurrence of pat in hay, or None.

    Returns the leftmost-lexicographic tuple of 1-based positions among
    all witnessing subsequences.  The empty pattern occurs everywhere,
    with the empty witness.
    """
    n, L = len(hay), len(pat)
    if L == 0:
        return ()
    if L > n:
        return None
    # vals[a] = hay value assigned to pattern symbol a (0 = unassigned)
    t = max(pat)
    vals = [0] * (t + 1)
    positions = []

    def consistent(a, v):
        if vals[a]:
            return vals[a] == v
        for b in range(1, t + 1):
            u = vals[b]
            if u and ((b < a) != (u < v) or u == v):
                return False
        return True

    def match(j, start):
        if j == L:
            return True
        a = pat[j]
        for q in range(start, n - (L - j) + 1):
            v = hay[q]
            if consistent(a, v):
                old = vals[a]
                vals[a] = v
                positions.append(q + 1)
                if match(j + 1, q + 1):
                    return True
                positions.pop()
                vals[a] = old
        return False

    if match(0, 0):
        return tuple(positions)
    return None


def contains(hay, pat):
    """True iff hay has a subsequence order-isomorphic to pat."""
    return find_occurrence(hay, pat) is not None


def avoids(hay, pat):
    return find_occurrence(hay, pat) is None


def _greedy(hay, word):
    """Fixed-value (not order-isomorphic) subsequence test."""
    j = 0
    for v in hay:
        if j < len(word) and v == word[j]:
            j += 1
    return j == len(word)


def contains_at_level(p, sigma, k):
    """Containment of a {1,2,3}-pattern at level k of a partition.

    True iff there are symbols l < k < h of p and a subsequence over
    {l, k, h} order-isomorphic to sigma with 1 -> l, 2 -> k, 3 -> h.
    Level 1 (no smaller symbol) and levels at or above the number of
    blocks (no larger symbol) can never contain anything.
    """
    if not sigma or any(s not in (1, 2, 3) for s in sigma):
        raise ValueError("sigma must be a nonempty pattern over {1,2,3}")
    if not p:
        return False
    m = max(p)
    for low in range(1, k):
        for high in range(k + 1, m + 1):
            word = tuple({1: low, 2: k, 3: high}[s] for s in sigma)
            if _greedy(p, word):
                return True
    return False


def is_124_pattern(tau):
    """Well-formedness of the 123-prefixed patterns with symbols {1,2,4}.

    The suffix after the 123 prefix must contain exactly one 1, exactly
    one 4, twos elsewhere, and the 4 may be neither the first nor the
    last symbol of the suffix.
    """
    if len(tau) < 5 or tau[:3] != (1, 2, 3):
        return False
    s = tau[3:]
    if s.count(1) != 1 or s.count(4) != 1:
        return False
    if any(x not in (1, 2, 4) for x in s):
        return False
    if s[0] == 4 or s[-1] == 4:
        return False
    return True


def is_134_pattern(tau):
    """Like is_124_pattern but with threes in the suffix and the rule
    that the 1 may not be the last symbol of the suffix."""
    if len(tau) < 5 or tau[:3] != (1, 2, 3):
        return False
    s = tau[3:]
    if s.count(1) != 1 or s.count(4) != 1:
        return False
    if any(x not in (1, 3, 4) for x in s):
        return False
    if s[-1] == 1:
        return False
    return True


def _contains_pinned(p, tau, k, pinned_symbol):
    """Containment of tau with its pinned symbol forced to value k.

    The four distinct symbols of tau map to values a < b < c < d of p
    with the value for pinned_symbol equal to k; all other symbol values
    are quantified over.
    """
    if not p:
        return False
    m = max(p)
    symbols = sorted(set(tau))

    # choose increasing values for tau's symbols with the pin respected
    def assign(idx, low):
        if idx == len(symbols):
            word = tuple(mapping[s] for s in tau)
            return _greedy(p, word)
        s = symbols[idx]
        if s == pinned_symbol:
            if k <= low:
                return False
            mapping[s] = k
            return assign(idx + 1, k)
        hi = m - (len(symbols) - idx - 1)
        for v in range(low + 1, hi + 1):
            if pinned_symbol in symbols[idx + 1:] and v >= k:
                break
            mapping[s] = v
            if assign(idx + 1, v):
                return True
        return False

    mapping = {}
    return assign(0, 0)


def contains_124_at_level(p, tau, k):
    """Leveled containment with the symbol 2 of tau pinned to value k."""
    if not is_124_pattern(tau):
        raise ValueError("not a valid 1-2-4 pattern: %r" % (tau,))
    if not validate_partition(p):
        raise ValueError("host must be a partition")
    return _contains_pinned(p, tau, k, pinned_symbol=2)


def contains_134_at_level(p, tau, k):
    """Leveled containment with the symbol 3 of tau pinned to value k."""
    if not is_134_pattern(tau):
        raise ValueError("not a valid 1-3-4 pattern: %r" % (tau,))
    if not validate_partition(p):
        raise ValueError("host must be a partition")
    return _contains_pinned(p, tau, k, pinned_symbol=3)
