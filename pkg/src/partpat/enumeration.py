"""High-throughput counting of pattern-avoiding partitions.

The workhorse is a depth-first walk over restricted growth strings that
never extends a prefix already containing the forbidden pattern (see the
kernel modules).  On top of that sit count tables, block-count
refinements, equivalence-class discovery and witness search.

Counting can be sharded: the generation tree is split at a fixed prefix
depth and the shards are summed in a fixed order, so results are
identical whether shards run serially or on a process pool.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import kernel
from .formulas import CountOverflowError, bell
from .seqcore import format_seq, iterate_partitions, rgs_prefixes, validate_partition

__all__ = [
    "count_avoiders",
    "count_avoiders_by_blocks",
    "CountTable",
    "count_table",
    "ClassReport",
    "classify",
    "witness",
]

SHARD_DEPTH = 4

# Counts are bounded by bell(n); bell(25) still fits in 64 bits, bell(26)
# does not, so 25 is the largest size the counting API accepts.
MAX_N = 25


def _check_inputs(pattern, n):
    if not validate_partition(pattern) or len(pattern) == 0:
        raise ValueError("pattern must be a nonempty canonical sequence: %r"
                         % (pattern,))
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_N:
        raise CountOverflowError(
            "counts for n=%d may exceed 64-bit range (max n=%d)" % (n, MAX_N))


def _shard_count(args):
    pattern, n, prefix = args
    return kernel.count(pattern, n, prefix)


def _shard_count_blocks(args):
    pattern, n, prefix = args
    return kernel.count_by_blocks(pattern, n, prefix)


def _shards(pattern, n):
    depth = min(SHARD_DEPTH, n)
    return [(pattern, n, prefix) for prefix in rgs_prefixes(depth)]


def count_avoiders(pattern, n, threads=1):
    """Number of partitions of [n] avoiding the given pattern."""
    pattern = tuple(pattern)
    _check_inputs(pattern, n)
    if threads <= 1:
        return kernel.count(pattern, n)
    jobs = _shards(pattern, n)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_shard_count, jobs))


def count_avoiders_by_blocks(pattern, n, threads=1):
    """Avoider counts refined by number of blocks, as a dict m -> count."""
    pattern = tuple(pattern)
    _check_inputs(pattern, n)
    if threads <= 1:
        return dict(sorted(kernel.count_by_blocks(pattern, n).items()))
    jobs = _shards(pattern, n)
    merged = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_shard_count_blocks, jobs):
            for m, c in part.items():
                merged[m] = merged.get(m, 0) + c
    return dict(sorted(merged.items()))


@dataclass
class CountTable:
    """Avoider counts for one pattern over a range of sizes.

    ``entries`` maps n to the count; ``refined`` optionally maps (n, m)
    to the count among partitions with m blocks.
    """

    pattern: tuple
    entries: dict = field(default_factory=dict)
    refined: dict = field(default_factory=dict)

    def check(self):
        for n, c in self.entries.items():
            if c > bell(n):
                raise ValueError("count exceeds bell(%d)" % n)
            ms = {m: c2 for (nn, m), c2 in self.refined.items() if nn == n}
            if ms and sum(ms.values()) != c:
                raise ValueError("block refinement inconsistent at n=%d" % n)
        return self

    def to_csv(self):
        lines = ["pattern,n,count"]
        for n in sorted(self.entries):
            lines.append("%s,%d,%d" % (format_seq(self.pattern), n,
                                       self.entries[n]))
        return "\n".join(lines) + "\n"

    def to_csv_by_blocks(self):
        lines = ["pattern,n,m,count"]
        for (n, m) in sorted(self.refined):
            lines.append("%s,%d,%d,%d" % (format_seq(self.pattern), n, m,
                                          self.refined[(n, m)]))
        return "\n".join(lines) + "\n"

    def to_json_obj(self):
        obj = {
            "pattern": format_seq(self.pattern),
            "counts": {str(n): self.entries[n] for n in sorted(self.entries)},
        }
        if self.refined:
            obj["by_blocks"] = {
                "%d,%d" % key: self.refined[key] for key in sorted(self.refined)
            }
        return obj


def count_table(pattern, sizes, by_blocks=False, threads=1, cache=None):
    """Build a CountTable over the given sizes, consulting ``cache`` if
    one is supplied (see :mod:`partpat.cache`)."""
    pattern = tuple(pattern)
    table = CountTable(pattern)
    for n in sizes:
        if by_blocks:
            refined = None if cache is None else cache.get_blocks(pattern, n)
            if refined is None:
                refined = count_avoiders_by_blocks(pattern, n, threads=threads)
                if cache is not None:
                    cache.put_blocks(pattern, n, refined)
            for m, c in refined.items():
                table.refined[(n, m)] = c
            table.entries[n] = sum(refined.values())
            if cache is not None:
                cache.put(pattern, n, table.entries[n])
        else:
            c = None if cache is None else cache.get(pattern, n)
            if c is None:
                c = count_avoiders(pattern, n, threads=threads)
                if cache is not None:
                    cache.put(pattern, n, c)
            table.entries[n] = c
    return table.check()


@dataclass
class ClassReport:
    """Patterns of one size grouped by their count vectors.

    Equality of vectors is only checked up to ``horizon``; the report
    never claims more than that.
    """

    size: int
    horizon: int
    classes: list  # of (vector tuple, list of patterns)

    @property
    def class_count(self):
        return len(self.classes)

    def to_csv(self):
        lines = ["class,pattern,n,count"]
        ns = list(range(self.size + 1, self.horizon + 1))
        for idx, (vector, members) in enumerate(self.classes, start=1):
            for pat in members:
                for n, c in zip(ns, vector):
                    lines.append("%d,%s,%d,%d" % (idx, format_seq(pat), n, c))
        return "\n".join(lines) + "\n"

    def to_json_obj(self):
        return {
            "size": self.size,
            "horizon": self.horizon,
            "note": "classes are equal up to the horizon only",
            "classes": [
                {"patterns": [format_seq(p) for p in members],
                 "counts": list(vector)}
                for vector, members in self.classes
            ],
        }


def classify(size, horizon=None, threads=1, progress=None):
    """Group all patterns of the given size by their count vectors.

    Vectors run over n = size+1 .. horizon (counts below that are the
    same for every pattern of the size).  Classes are sorted by vector,
    members in lexicographic order; the grouping is deterministic.
    """
    if size < 1:
        raise ValueError("size must be positive")
    if horizon is None:
        horizon = size + 5
    if horizon < size:
        raise ValueError("horizon below pattern size")
    groups = {}
    for pat in iterate_partitions(size):
        vector = tuple(count_avoiders(pat, n, threads=threads)
                       for n in range(size + 1, horizon + 1))
        groups.setdefault(vector, []).append(pat)
        if progress is not None:
            progress(pat, vector)
    classes = sorted(groups.items(), key=lambda kv: (kv[0], kv[1][0]))
    return ClassReport(size=size, horizon=horizon, classes=classes)


def witness(p1, p2, max_n, threads=1):
    """Least n at most max_n where the avoider counts of p1 and p2
    differ, or None if they agree on the whole range."""
    p1, p2 = tuple(p1), tuple(p2)
    for n in range(1, max_n + 1):
        if count_avoiders(p1, n, threads=threads) != \
                count_avoiders(p2, n, threads=threads):
            return n
    return None


def counts_csv(tables):
    """Concatenate several CountTables into one CSV body."""
    lines = ["pattern,n,count"]
    for t in tables:
        for n in sorted(t.entries):
            lines.append("%s,%d,%d" % (format_seq(t.pattern), n, t.entries[n]))
    return "\n".join(lines) + "\n"


def to_json(obj):
    """Deterministic JSON emission used by the CLI."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
