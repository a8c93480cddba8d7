"""Ferrers shapes, stack polyominoes, and their 0-1 fillings.

Shapes are stored as column height vectors, left to right; rows are
numbered bottom to top and rows are right-justified, so a Ferrers shape
has weakly increasing heights and a stack polyomino a unimodal profile.
A filling assigns 0/1 to each cell; semi-standard means exactly one 1
per column, sparse at most one.

The module provides pattern containment for fillings, exhaustive filling
counts with prune-on-containment, shape-equivalence scans, the cyclic
column shift, the correspondence between partitions and fillings, and
the ordered-graph view of a filling.
"""

from dataclasses import dataclass
from itertools import combinations

from .formulas import CountOverflowError, U63
from .seqcore import assert_partition

__all__ = [
    "Shape",
    "Filling",
    "Matrix01",
    "matrix_of",
    "identity_matrix",
    "anti_identity_matrix",
    "filling_contains",
    "count_fillings",
    "ferrers_shapes",
    "stack_shapes",
    "ferrers_equiv_upto",
    "stack_equiv_upto",
    "filshift",
    "partition_to_filling",
    "filling_to_partition",
    "is_t_falling",
    "OrderedGraph",
    "filling_to_ordered_graph",
    "graph_contains",
    "G1_PATTERN",
    "G2_PATTERN",
]


def _is_unimodal(heights):
    rising = True
    for a, b in zip(heights, heights[1:]):
        if rising:
            if b < a:
                rising = False
        elif b > a:
            return False
    return True


@dataclass(frozen=True)
class Shape:
    """A column-convex diagram given by its column heights."""

    heights: tuple
    kind: str = "stack"

    def __post_init__(self):
        if any(not isinstance(h, int) or h < 1 for h in self.heights):
            raise ValueError("column heights must be positive")
        if self.kind == "ferrers":
            if any(a > b for a, b in zip(self.heights, self.heights[1:])):
                raise ValueError("Ferrers shape needs weakly increasing heights")
        elif self.kind == "stack":
            if not _is_unimodal(self.heights):
                raise ValueError("stack polyomino needs a unimodal profile")
        else:
            raise ValueError("kind must be 'ferrers' or 'stack'")

    @classmethod
    def ferrers(cls, heights):
        return cls(tuple(heights), "ferrers")

    @classmethod
    def stack(cls, heights):
        return cls(tuple(heights), "stack")

    @property
    def columns(self):
        return len(self.heights)

    @property
    def rows(self):
        return max(self.heights) if self.heights else 0

    def has_cell(self, row, col):
        return 1 <= col <= self.columns and 1 <= row <= self.heights[col - 1]


@dataclass(frozen=True)
class Filling:
    """A 0-1 filling: the set of 1-cells (row, col) of a shape."""

    shape: Shape
    ones: frozenset

    def __post_init__(self):
        for (row, col) in self.ones:
            if not self.shape.has_cell(row, col):
                raise ValueError("1-cell (%d,%d) outside shape" % (row, col))

    @classmethod
    def from_column_rows(cls, shape, rows):
        """Build from a per-column list of 1-rows, 0 meaning empty."""
        if len(rows) != shape.columns:
            raise ValueError("need one row entry per column")
        ones = frozenset((r, c + 1) for c, r in enumerate(rows) if r)
        return cls(shape, ones)

    def column_rows(self):
        """Per-column row of the 1-cell, 0 for empty columns."""
        out = [0] * self.shape.columns
        for (row, col) in self.ones:
            if out[col - 1]:
                raise ValueError("column %d has several 1-cells" % col)
            out[col - 1] = row
        return out

    @property
    def is_sparse(self):
        seen = set()
        for (_, col) in self.ones:
            if col in seen:
                return False
            seen.add(col)
        return True

    @property
    def is_semi_standard(self):
        return self.is_sparse and len(self.ones) == self.shape.columns

    def row_ones(self, row):
        return sorted(col for (r, col) in self.ones if r == row)


@dataclass(frozen=True)
class Matrix01:
    """A rectangular 0-1 matrix, rows numbered bottom to top."""

    rows: int
    cols: int
    ones: frozenset

    def __post_init__(self):
        for (row, col) in self.ones:
            if not (1 <= row <= self.rows and 1 <= col <= self.cols):
                raise ValueError("entry outside the matrix")

    def column_one_rows(self, col):
        return sorted(r for (r, c) in self.ones if c == col)


def matrix_of(seq, k):
    """The k-row matrix with the 1 of column j in row seq[j]."""
    seq = tuple(seq)
    if seq and k < max(seq):
        raise ValueError("k must cover the largest symbol")
    return Matrix01(k, len(seq),
                    frozenset((s, j + 1) for j, s in enumerate(seq)))


def identity_matrix(k):
    return Matrix01(k, k, frozenset((i, i) for i in range(1, k + 1)))


def anti_identity_matrix(k):
    return Matrix01(k, k, frozenset((i, k + 1 - i) for i in range(1, k + 1)))


def _pattern_columns(M):
    """Per-column lists of pattern 1-rows, as 0-based column order."""
    return [M.column_one_rows(c) for c in range(1, M.cols + 1)]


def _feasible(heights, col_rows, rows_sel, pat_col_rows, j):
    """Can shape column j (0-based) play a pattern column whose 1-rows
    (indices into rows_sel) are pat_col_rows, under row choice rows_sel?"""
    if heights[j] < rows_sel[-1]:
        return False
    for a in pat_col_rows:
        if col_rows[j] != rows_sel[a - 1]:
            return False
    return True


def _contains_with_rows(heights, col_rows, pat_cols, rows_sel, last_col=None):
    """Greedy left-to-right column embedding for a fixed row selection.

    When last_col is given, the final pattern column must land exactly
    there (used by the prune during enumeration).
    """
    ncols = len(col_rows) if last_col is None else last_col
    j = 0
    for l, pat_rows in enumerate(pat_cols):
        final = last_col is not None and l == len(pat_cols) - 1
        if final:
            return _feasible(heights, col_rows, rows_sel, pat_rows, last_col)
        while j < ncols and not _feasible(heights, col_rows, rows_sel,
                                          pat_rows, j):
            j += 1
        if j == ncols:
            return False
        j += 1
    return True


def _contains_cols(heights, col_rows, M, last_col=None):
    nrows = max(heights) if heights else 0
    if M.rows > nrows or M.cols > len(col_rows):
        return False
    pat_cols = _pattern_columns(M)
    for rows_sel in combinations(range(1, nrows + 1), M.rows):
        if _contains_with_rows(heights, col_rows, pat_cols, rows_sel,
                               last_col):
            return True
    return False


def filling_contains(F, M):
    """Containment of the matrix M in the filling F.

    True iff there are rows i_1 < ... and columns j_1 < ... whose every
    intersection lies inside the shape, with each 1 of M sitting on a
    1-cell of F.  The rows of M map to the chosen rows bottom-up.
    """
    if M.rows == 0 or M.cols == 0:
        return True
    heights = list(F.shape.heights)
    grid = {}
    col_rows = [0] * F.shape.columns
    for (row, col) in F.ones:
        grid.setdefault(col, set()).add(row)
    # general crutch: the greedy embedding assumes at most one 1 per
    # column of F; fall back to a direct search otherwise
    if all(len(v) == 1 for v in grid.values()):
        for col, v in grid.items():
            col_rows[col - 1] = next(iter(v))
        return _contains_cols(heights, col_rows, M)
    return _contains_general(F, M)


def _contains_general(F, M):
    heights = F.shape.heights
    pat_cols = _pattern_columns(M)
    cells = F.ones
    for rows_sel in combinations(range(1, F.shape.rows + 1), M.rows):
        def feasible(l, j):
            if heights[j - 1] < rows_sel[-1]:
                return False
            return all((rows_sel[a - 1], j) in cells for a in pat_cols[l])

        j = 1
        ok = True
        for l in range(M.cols):
            while j <= F.shape.columns and not feasible(l, j):
                j += 1
            if j > F.shape.columns:
                ok = False
                break
            j += 1
        if ok:
            return True
    return False


def count_fillings(shape, avoid, mode="semi-standard"):
    """Count fillings of the shape avoiding the given matrix.

    Depth-first over columns with prune-on-containment: a column choice
    that completes an occurrence of the pattern is not extended.  The
    empty shape has exactly one filling.
    """
    if mode not in ("semi-standard", "sparse"):
        raise ValueError("mode must be 'semi-standard' or 'sparse'")
    heights = list(shape.heights)
    ncols = len(heights)
    col_rows = [0] * ncols
    total = 0

    def creates(j):
        return _contains_cols(heights, col_rows, avoid, last_col=j)

    def rec(j):
        nonlocal total
        if j == ncols:
            total += 1
            if total > U63:
                raise CountOverflowError("filling count exceeds 64-bit range")
            return
        start = 0 if mode == "sparse" else 1
        for r in range(start, heights[j] + 1):
            col_rows[j] = r
            if not creates(j):
                rec(j + 1)
        col_rows[j] = 0

    rec(0)
    return total


def ferrers_shapes(max_cols, max_rows):
    """All Ferrers shapes within the bounds, ordered by column count and
    lexicographic heights."""
    def grow(prefix, cols):
        if cols == 0:
            yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 1
        for h in range(lo, max_rows + 1):
            prefix.append(h)
            yield from grow(prefix, cols - 1)
            prefix.pop()

    for ncols in range(1, max_cols + 1):
        for heights in grow([], ncols):
            yield Shape.ferrers(heights)


def ferrers_shapes_exact(rows, cols):
    """Ferrers shapes with exactly the given numbers of rows and columns."""
    for shape in ferrers_shapes(cols, rows):
        if shape.columns == cols and shape.rows == rows:
            yield shape


def stack_shapes(max_cols, max_rows):
    """All stack polyominoes within the bounds."""
    from itertools import product
    for ncols in range(1, max_cols + 1):
        for heights in product(range(1, max_rows + 1), repeat=ncols):
            if _is_unimodal(heights):
                yield Shape.stack(heights)


def _equiv_upto(shapes, A, B, mode):
    for shape in shapes:
        ca = count_fillings(shape, A, mode)
        cb = count_fillings(shape, B, mode)
        if ca != cb:
            return False, shape
    return True, None


def ferrers_equiv_upto(A, B, max_cols, max_rows, mode="semi-standard"):
    """Compare avoider counts of A and B over every Ferrers shape within
    bounds; returns (True, None) or (False, first violating shape)."""
    return _equiv_upto(ferrers_shapes(max_cols, max_rows), A, B, mode)


def stack_equiv_upto(A, B, max_cols, max_rows, mode="semi-standard"):
    """Same as ferrers_equiv_upto but over stack polyominoes."""
    return _equiv_upto(stack_shapes(max_cols, max_rows), A, B, mode)


def filshift(F):
    """Cyclic downward shift within every column: the value in the top
    cell moves to row 1, every other value moves up one row.

    On sparse fillings this acts column by column, so zero columns stay
    zero.  Carries fillings avoiding M(S, k) to fillings avoiding
    M(S+1, k) for sequences S over [k-1].
    """
    if not F.is_sparse:
        raise ValueError("filshift is defined for sparse fillings")
    heights = F.shape.heights
    ones = set()
    for (row, col) in F.ones:
        h = heights[col - 1]
        ones.add((1 if row == h else row + 1, col))
    return Filling(F.shape, frozenset(ones))


def partition_to_filling(p, tail=None, k=None):
    """Extract the green-cell filling of a partition.

    The cells of row i strictly right of the first occurrence of i form
    a Ferrers diagram; dropping the columns without a 1-cell leaves a
    semi-standard filling with n - m columns and at most m rows.  When
    ``tail`` and ``k`` are given the partition must avoid 12..k followed
    by the tail, which makes the output avoid matrix_of(tail, k).
    """
    assert_partition(p)
    if tail is not None:
        from .containment import contains
        sigma = tuple(range(1, k + 1)) + tuple(tail)
        if contains(p, sigma):
            raise ValueError("partition does not avoid the pattern")
    first = {}
    for pos, s in enumerate(p, start=1):
        first.setdefault(s, pos)
    heights = []
    rows = []
    firsts = sorted(first.values())
    for pos, s in enumerate(p, start=1):
        if first[s] == pos:
            continue
        height = sum(1 for f in firsts if f < pos)
        heights.append(height)
        rows.append(s)
    shape = Shape.ferrers(heights)
    return Filling.from_column_rows(shape, rows)


def filling_to_partition(F, m):
    """Rebuild the partition from its green filling and block count.

    Inserts the m - 1 zero columns (the one of height i goes right after
    the rightmost column of height at most i), crowns each with a new
    1-cell, prepends the first-block cell, and reads the sequence off.
    """
    if not F.is_semi_standard:
        raise ValueError("need a semi-standard filling")
    if F.shape.rows > m:
        raise ValueError("filling has more than m rows")
    if F.shape.kind != "ferrers":
        raise ValueError("need a Ferrers shape")
    cols = [(h, r) for h, r in zip(F.shape.heights, F.column_rows())]
    for i in range(2, m + 1):
        pos = 0
        for idx, (h, _) in enumerate(cols):
            if h <= i - 1:
                pos = idx + 1
        cols.insert(pos, (i - 1, i))
    seq = tuple([1] + [r for (_, r) in cols])
    assert_partition(seq)
    return seq


def is_t_falling(F, t):
    """First t rows each nonempty with strictly left-moving leftmost
    1-cells as the row index grows."""
    if t < 1:
        raise ValueError("t must be positive")
    if t > F.shape.rows:
        return False
    prev = None
    for row in range(1, t + 1):
        ones = F.row_ones(row)
        if not ones:
            return False
        leftmost = ones[0]
        if prev is not None and leftmost >= prev:
            return False
        prev = leftmost
    return True


@dataclass(frozen=True)
class OrderedGraph:
    """A graph on linearly ordered vertices of two kinds.

    ``word`` is the left-to-right vertex sequence over {'L', 'R'};
    ``edges`` holds pairs of vertex positions (0-based into the word).
    """

    word: str
    edges: frozenset


def filling_to_ordered_graph(F):
    """Left vertices for rows, right vertices for columns, interleaved
    by the shape boundary; one edge per 1-cell."""
    if F.shape.kind != "ferrers":
        raise ValueError("the ordered-graph view needs a Ferrers shape")
    heights = F.shape.heights
    nrows = F.shape.rows
    start_col = {}
    for row in range(1, nrows + 1):
        for col in range(1, F.shape.columns + 1):
            if heights[col - 1] >= row:
                start_col[row] = col
                break
    word = []
    left_pos = {}
    right_pos = {}
    for col in range(1, F.shape.columns + 1):
        for row in range(1, nrows + 1):
            if start_col.get(row) == col:
                left_pos[row] = len(word)
                word.append("L")
        right_pos[col] = len(word)
        word.append("R")
    edges = frozenset((left_pos[row], right_pos[col]) for (row, col) in F.ones)
    return OrderedGraph("".join(word), edges)


# The forbidden subgraphs matching the 2-row patterns with columns 112
# and 212: two left vertices, three right vertices.
G1_PATTERN = OrderedGraph("LLRRR", frozenset({(0, 2), (0, 3), (1, 4)}))
G2_PATTERN = OrderedGraph("LLRRR", frozenset({(0, 3), (1, 2), (1, 4)}))


def graph_contains(G, H):
    """Ordered-subgraph containment: an order- and type-preserving
    vertex embedding carrying every edge of H to an edge of G."""
    gpos = list(range(len(G.word)))
    for sel in combinations(gpos, len(H.word)):
        if any(G.word[v] != H.word[i] for i, v in enumerate(sel)):
            continue
        if all((sel[a], sel[b]) in G.edges for (a, b) in H.edges):
            return True
    return False
