"""Pattern-avoiding set partitions.

Set partitions are carried as restricted growth strings (tuples of
ints); the package counts pattern avoiders exactly, discovers
equivalence classes empirically, realizes the known bijections between
avoidance classes as invertible maps, and mirrors the partition world
into 0-1 fillings of Ferrers shapes and stack polyominoes.
"""

from .containment import avoids, contains, find_occurrence
from .enumeration import (ClassReport, CountTable, classify, count_avoiders,
                          count_avoiders_by_blocks, count_table, witness)
from .formulas import (CountOverflowError, bell, catalan, count_blocks_lt,
                       count_blocksize_lt, lift, lift_inverse, stirling2,
                       t_closed, t_rec)
from .kernel import BACKEND as KERNEL_BACKEND
from .seqcore import (blocks_of, format_seq, iterate_partitions, parse_seq,
                      remove_first_block, validate_partition)

__version__ = "0.1.0"

__all__ = [
    "avoids",
    "contains",
    "find_occurrence",
    "ClassReport",
    "CountTable",
    "classify",
    "count_avoiders",
    "count_avoiders_by_blocks",
    "count_table",
    "witness",
    "CountOverflowError",
    "bell",
    "catalan",
    "count_blocks_lt",
    "count_blocksize_lt",
    "lift",
    "lift_inverse",
    "stirling2",
    "t_closed",
    "t_rec",
    "KERNEL_BACKEND",
    "blocks_of",
    "format_seq",
    "iterate_partitions",
    "parse_seq",
    "remove_first_block",
    "validate_partition",
    "__version__",
]
