"""Pure-Python counting kernel.

Counts restricted growth strings of a given length that avoid a fixed
pattern, by depth-first generation with prune-on-containment: a prefix
that already contains the pattern is never extended.  Soundness of the
prune rests on monotonicity (containment survives extension), so it
suffices to test, after appending a symbol, whether some occurrence ends
exactly at the new position.

This module mirrors the compiled kernel in ``_kernel.pyx``; the two are
interchangeable and cross-checked in the test suite.
"""

BACKEND = "python"


def _creates_occurrence(s, i, pat, patmax, vals):
    """Does s[0..i] contain pat by an occurrence ending exactly at i?

    Assumes s[0..i-1] avoids pat.  ``vals`` is scratch of len patmax+1.
    """
    L = len(pat)
    if i + 1 < L:
        return False
    for b in range(patmax + 1):
        vals[b] = 0
    vals[pat[L - 1]] = s[i]

    def down(j, limit):
        if j < 0:
            return True
        a = pat[j]
        va = vals[a]
        for q in range(limit - 1, j - 1, -1):
            v = s[q]
            if va:
                if v == va and down(j - 1, q):
                    return True
            else:
                ok = True
                for b in range(1, patmax + 1):
                    u = vals[b]
                    if u and ((b < a) != (u < v) or u == v):
                        ok = False
                        break
                if ok:
                    vals[a] = v
                    if down(j - 1, q):
                        vals[a] = 0
                        return True
                    vals[a] = 0
        return False

    return down(L - 2, i)


def _start(pattern, n, prefix):
    """Validate inputs, place the prefix, and report early exits.

    Returns (s, start, mx) or None when no completion can avoid the
    pattern (prefix already contains it) -- the caller counts zero.
    """
    pat = tuple(pattern)
    if len(prefix) > n:
        raise ValueError("prefix longer than n")
    s = [0] * max(n, 1)
    vals = [0] * (max(pat) + 1 if pat else 1)
    mx = 0
    for i, v in enumerate(prefix):
        if not (1 <= v <= mx + 1):
            raise ValueError("prefix is not a restricted growth string")
        s[i] = v
        if pat and _creates_occurrence(s, i, pat, max(pat), vals):
            return None
        if v > mx:
            mx = v
    return s, len(prefix), mx


def count(pattern, n, prefix=()):
    """Number of partitions of [n] avoiding ``pattern``, refined to those
    whose sequence starts with ``prefix``."""
    pat = tuple(pattern)
    if not pat:
        return 0
    started = _start(pat, n, prefix)
    if started is None:
        return 0
    s, start, mx0 = started
    patmax = max(pat)
    vals = [0] * (patmax + 1)
    total = 0

    def rec(i, mx):
        nonlocal total
        if i == n:
            total += 1
            return
        for v in range(1, mx + 2):
            s[i] = v
            if not _creates_occurrence(s, i, pat, patmax, vals):
                rec(i + 1, mx if v <= mx else v)

    rec(start, mx0)
    return total


def count_by_blocks(pattern, n, prefix=()):
    """Avoider counts refined by block count: dict m -> count."""
    pat = tuple(pattern)
    if not pat:
        return {}
    started = _start(pat, n, prefix)
    if started is None:
        return {}
    s, start, mx0 = started
    patmax = max(pat)
    vals = [0] * (patmax + 1)
    counts = {}

    def rec(i, mx):
        if i == n:
            counts[mx] = counts.get(mx, 0) + 1
            return
        for v in range(1, mx + 2):
            s[i] = v
            if not _creates_occurrence(s, i, pat, patmax, vals):
                rec(i + 1, mx if v <= mx else v)

    rec(start, mx0)
    return counts
