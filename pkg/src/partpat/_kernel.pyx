# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernel.

Same contract as ``_kernel_py``: depth-first generation of restricted
growth strings with prune-on-containment.  Strings are capped at 64
symbols and symbols at 255, far beyond what 64-bit counts allow anyway.
"""

from libc.string cimport memset

BACKEND = "cython"

DEF MAXN = 64
DEF MAXPAT = 16

cdef struct State:
    unsigned char s[MAXN]
    unsigned char pat[MAXPAT]
    unsigned char vals[MAXPAT + 1]
    int patlen
    int patmax
    int n


cdef bint _down(State *st, int j, int limit) noexcept:
    """Backward matcher: can pat[0..j] be embedded left of ``limit``?"""
    cdef int q, b, v, va, a
    cdef bint ok
    if j < 0:
        return True
    a = st.pat[j]
    va = st.vals[a]
    for q in range(limit - 1, j - 1, -1):
        v = st.s[q]
        if va:
            if v == va and _down(st, j - 1, q):
                return True
        else:
            ok = True
            for b in range(1, st.patmax + 1):
                if st.vals[b]:
                    if (b < a) != (st.vals[b] < v) or st.vals[b] == v:
                        ok = False
                        break
            if ok:
                st.vals[a] = v
                if _down(st, j - 1, q):
                    st.vals[a] = 0
                    return True
                st.vals[a] = 0
    return False


cdef bint _creates_occurrence(State *st, int i) noexcept:
    """Does s[0..i] contain the pattern by an occurrence ending at i?"""
    cdef int L = st.patlen
    if i + 1 < L:
        return False
    memset(st.vals, 0, (st.patmax + 1) * sizeof(unsigned char))
    st.vals[st.pat[L - 1]] = st.s[i]
    return _down(st, L - 2, i)


cdef unsigned long long _count(State *st, int i, int mx) noexcept:
    cdef unsigned long long total = 0
    cdef int v
    if i == st.n:
        return 1
    for v in range(1, mx + 2):
        st.s[i] = v
        if not _creates_occurrence(st, i):
            total += _count(st, i + 1, mx if v <= mx else v)
    return total


cdef void _count_blocks(State *st, int i, int mx,
                        unsigned long long *out) noexcept:
    cdef int v
    if i == st.n:
        out[mx] += 1
        return
    for v in range(1, mx + 2):
        st.s[i] = v
        if not _creates_occurrence(st, i):
            _count_blocks(st, i + 1, mx if v <= mx else v, out)


cdef int _setup(State *st, pattern, int n, prefix) except -1:
    """Load pattern and prefix; returns the prefix max, or -2 if the
    prefix already contains the pattern."""
    cdef int i, v, mx
    if n > MAXN:
        raise ValueError("length capped at %d symbols" % MAXN)
    if len(pattern) > MAXPAT:
        raise ValueError("patterns capped at %d symbols" % MAXPAT)
    if len(prefix) > n:
        raise ValueError("prefix longer than n")
    st.patlen = len(pattern)
    st.patmax = 0
    for i in range(st.patlen):
        v = pattern[i]
        if v < 1 or v > MAXPAT:
            raise ValueError("bad pattern symbol")
        st.pat[i] = v
        if v > st.patmax:
            st.patmax = v
    st.n = n
    mx = 0
    for i in range(len(prefix)):
        v = prefix[i]
        if v < 1 or v > mx + 1:
            raise ValueError("prefix is not a restricted growth string")
        st.s[i] = v
        if st.patlen and _creates_occurrence(st, i):
            return -2
        if v > mx:
            mx = v
    return mx


def count(pattern, n, prefix=()):
    """Number of partitions of [n] avoiding ``pattern``, refined to those
    whose sequence starts with ``prefix``."""
    cdef State st
    cdef int mx
    if len(pattern) == 0:
        return 0
    mx = _setup(&st, tuple(pattern), n, tuple(prefix))
    if mx == -2:
        return 0
    return _count(&st, len(prefix), mx)


def count_by_blocks(pattern, n, prefix=()):
    """Avoider counts refined by block count: dict m -> count."""
    cdef State st
    cdef int mx, m
    cdef unsigned long long out[MAXN + 1]
    if len(pattern) == 0:
        return {}
    mx = _setup(&st, tuple(pattern), n, tuple(prefix))
    if mx == -2:
        return {}
    memset(out, 0, sizeof(out))
    _count_blocks(&st, len(prefix), mx, out)
    return {m: out[m] for m in range(MAXN + 1) if out[m]}
