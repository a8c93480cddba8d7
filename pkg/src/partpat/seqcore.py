"""Core sequence types and transforms for set partitions.

A partition of [n] = {1, ..., n} with blocks B_1, ..., B_m (ordered by
their minima) is encoded as the integer sequence s_1 ... s_n with s_i = j
iff i lies in B_j.  Such sequences are exactly the restricted growth
strings: every value of [m] occurs, and the first occurrence of i precedes
the first occurrence of j whenever i < j.  Everything in this package
works on these sequences, represented as plain tuples of ints.

Text form: digits concatenated while the largest symbol is at most 9
(e.g. "12112"), comma-separated decimal otherwise ("1,2,11,3").  Parsing
accepts both.
"""

from dataclasses import dataclass

__all__ = [
    "parse_seq",
    "format_seq",
    "is_symbol_seq",
    "validate_partition",
    "iterate_partitions",
    "rgs_prefixes",
    "blocks_of",
    "remove_first_block",
    "KSeq",
    "is_k_sequence",
    "to_k_sequence",
    "from_k_sequence",
    "reverse_complement",
]

MAX_LENGTH = 64  # symbols fit in a byte in the compiled kernel


def parse_seq(text):
    """Parse a sequence from compact digit form or comma-separated form."""
    text = text.strip()
    if text == "":
        return ()
    if "," in text:
        try:
            seq = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError("bad sequence literal: %r" % text)
    else:
        if not text.isdigit():
            raise ValueError("bad sequence literal: %r" % text)
        seq = tuple(int(ch) for ch in text)
    if not is_symbol_seq(seq):
        raise ValueError("not a sequence of positive integers: %r" % text)
    return seq


def format_seq(seq):
    """Emit compact digit form when the largest symbol is below 10."""
    if not seq:
        return ""
    if max(seq) <= 9:
        return "".join(str(s) for s in seq)
    return ",".join(str(s) for s in seq)


def is_symbol_seq(seq):
    """True iff seq is a finite sequence of positive integers."""
    return all(isinstance(s, int) and s >= 1 for s in seq)


def validate_partition(seq):
    """True iff seq is the canonical sequence of a set partition.

    That is: seq is a restricted growth string.  Equivalent formulation:
    s_1 = 1 (when nonempty) and every s_i is at most 1 + max of the prefix
    before it.  The empty sequence encodes the empty partition.
    """
    mx = 0
    for s in seq:
        if not isinstance(s, int) or s < 1 or s > mx + 1:
            return False
        if s == mx + 1:
            mx += 1
    return True


def assert_partition(seq):
    if not validate_partition(seq):
        raise ValueError("not a canonical partition sequence: %r" % (seq,))


def iterate_partitions(n):
    """Yield all partitions of [n] in lexicographic order of their sequences.

    Uses the restricted-growth successor step rather than recursion, so a
    stream can be restarted from any prefix.  Yields Bell(n) tuples; for
    n = 0 the single empty partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    seq = [1] * n
    # prefix maxima: mx[i] = max(seq[:i+1])
    mx = [1] * n
    while True:
        yield tuple(seq)
        # find rightmost position (never 0) that can be incremented
        i = n - 1
        while i > 0 and seq[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        seq[i] += 1
        mx[i] = max(mx[i - 1], seq[i])
        for j in range(i + 1, n):
            seq[j] = 1
            mx[j] = mx[i]


def rgs_prefixes(depth):
    """All restricted-growth prefixes of the given length, in lex order.

    These are the canonical sequences of partitions of [depth]; the name
    reflects their role as shard roots for parallel counting.
    """
    return list(iterate_partitions(depth))


def blocks_of(seq):
    """Blocks as lists of 1-based positions, ordered by their minima.

    For 1231242 the blocks are [1,4], [2,5,7], [3], [6].
    """
    assert_partition(seq)
    m = max(seq) if seq else 0
    blocks = [[] for _ in range(m)]
    for pos, s in enumerate(seq, start=1):
        blocks[s - 1].append(pos)
    return blocks


def remove_first_block(seq):
    """Erase every occurrence of 1 and decrease the other symbols by one.

    This removes the first block of the partition; the result is again a
    canonical sequence (empty when the input used only the symbol 1).
    """
    assert_partition(seq)
    return tuple(s - 1 for s in seq if s > 1)


@dataclass(frozen=True)
class KSeq:
    """A sequence in mixed canonical form, at level k.

    The blocks below level k are numbered by first element, the blocks
    from k upward by last element: first occurrences f_1 < ... < f_{k-1}
    are increasing against everything above them, and last occurrences
    l_k < l_{k+1} < ... < l_m are increasing.  Level m gives back the
    ordinary canonical sequence.
    """

    seq: tuple
    m: int
    k: int

    def __post_init__(self):
        if not (1 <= self.k <= self.m):
            raise ValueError("level k=%d out of range for m=%d" % (self.k, self.m))
        if not is_k_sequence(self.seq, self.k):
            raise ValueError("sequence %r violates the level-%d invariant"
                             % (self.seq, self.k))
        if (max(self.seq) if self.seq else 0) != self.m:
            raise ValueError("m=%d does not match the sequence" % self.m)


def _first_last(seq):
    first, last = {}, {}
    for pos, s in enumerate(seq):
        last[s] = pos
        if s not in first:
            first[s] = pos
    return first, last


def is_k_sequence(seq, k):
    """True iff seq is in level-k mixed canonical form.

    Requires every symbol of [max] to occur; checks the two ordering
    conditions (first occurrences below k, last occurrences from k up).
    """
    if not seq:
        return k == 1
    m = max(seq)
    if not is_symbol_seq(seq):
        return False
    first, last = _first_last(seq)
    if len(first) != m:
        return False
    for i in range(1, k):
        for j in range(i + 1, m + 1):
            if first[i] > first[j]:
                return False
    for i in range(k, m + 1):
        for j in range(i + 1, m + 1):
            if last[i] > last[j]:
                return False
    return True


def to_k_sequence(seq, k):
    """Renumber a partition into its unique level-k form.

    Blocks below k keep their numbers; blocks k..m are renumbered in
    increasing order of their largest element.  Block structure is
    preserved: positions share a symbol afterwards iff they did before.
    """
    assert_partition(seq)
    m = max(seq) if seq else 0
    if not (1 <= k <= m):
        raise ValueError("level k=%d out of range for m=%d" % (k, m))
    _, last = _first_last(seq)
    tail_blocks = sorted(range(k, m + 1), key=lambda b: last[b])
    relabel = {b: b for b in range(1, k)}
    for new, old in enumerate(tail_blocks, start=k):
        relabel[old] = new
    return KSeq(tuple(relabel[s] for s in seq), m, k)


def from_k_sequence(ks):
    """Renumber a level-k sequence by first occurrence, back to canonical."""
    seq = ks.seq if isinstance(ks, KSeq) else ks
    relabel = {}
    for s in seq:
        if s not in relabel:
            relabel[s] = len(relabel) + 1
    return tuple(relabel[s] for s in seq)


def reverse_complement(seq, m):
    """Reverse the sequence and replace each symbol i by m + 1 - i.

    An involution on sequences over [m]; it exchanges the level-k and
    level-(m-k+1) mixed canonical forms.
    """
    if any(s > m for s in seq):
        raise ValueError("symbol exceeds alphabet size %d" % m)
    return tuple(m + 1 - s for s in reversed(seq))
