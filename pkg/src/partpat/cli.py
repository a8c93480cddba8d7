"""Command-line surface.

Subcommands: count, classify, witness, fillings (count | equiv), and
bijection.  Exit codes: 0 success, 1 negative result (no witness found,
matrices not equivalent), 2 parse or usage error, 3 count overflow.
"""

import argparse
import os
import sys

from . import bijections, enumeration, fillings, kernel
from .cache import CountCache
from .formulas import CountOverflowError
from .seqcore import format_seq, parse_seq, validate_partition

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_OVERFLOW = 3


class CliError(Exception):
    pass


def _parse_pattern(text):
    try:
        seq = parse_seq(text)
    except ValueError as exc:
        raise CliError(str(exc))
    if not validate_partition(seq) or not seq:
        raise CliError("not a canonical pattern: %r" % text)
    return seq


def _parse_range(text):
    """Either '7' or '6..11' (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise CliError("bad size range: %r" % text)
    if lo < 0 or hi < lo:
        raise CliError("bad size range: %r" % text)
    return range(lo, hi + 1)


def _default_threads():
    return os.cpu_count() or 1


def cmd_count(args):
    pattern = _parse_pattern(args.pattern)
    sizes = _parse_range(args.n)
    cache = None if args.no_cache else CountCache(args.cache)
    table = enumeration.count_table(pattern, sizes, by_blocks=args.by_blocks,
                                    threads=args.threads, cache=cache)
    if cache is not None:
        cache.save()
    if args.format == "json":
        sys.stdout.write(enumeration.to_json(table.to_json_obj()))
    elif args.by_blocks:
        sys.stdout.write(table.to_csv_by_blocks())
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def cmd_classify(args):
    report = enumeration.classify(args.size, horizon=args.horizon,
                                  threads=args.threads)
    if args.format == "json":
        sys.stdout.write("%d classes (up to horizon %d)\n"
                         % (report.class_count, report.horizon))
        sys.stdout.write(enumeration.to_json(report.to_json_obj()))
    else:
        sys.stdout.write("%d classes (up to horizon %d)\n"
                         % (report.class_count, report.horizon))
        sys.stdout.write(report.to_csv())
    return EXIT_OK


def cmd_witness(args):
    p1 = _parse_pattern(args.p1)
    p2 = _parse_pattern(args.p2)
    n = enumeration.witness(p1, p2, args.max_n, threads=args.threads)
    if n is None:
        sys.stdout.write("no witness up to n=%d\n" % args.max_n)
        return EXIT_NEGATIVE
    sys.stdout.write("%d\n" % n)
    return EXIT_OK


def _parse_shape(text, kind):
    try:
        heights = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError("bad shape literal: %r" % text)
    try:
        return fillings.Shape(heights, kind)
    except ValueError as exc:
        raise CliError(str(exc))


def _parse_matrix(text, k):
    try:
        seq = parse_seq(text)
    except ValueError as exc:
        raise CliError(str(exc))
    if not seq:
        raise CliError("empty matrix word")
    if k is None:
        k = max(seq)
    return fillings.matrix_of(seq, k)


def cmd_fillings(args):
    if args.action == "count":
        if not args.shape:
            raise CliError("count needs --shape")
        shape = _parse_shape(args.shape, args.kind)
        avoid = _parse_matrix(args.avoid, args.k)
        count = fillings.count_fillings(shape, avoid, args.mode)
        sys.stdout.write("%d\n" % count)
        return EXIT_OK
    # equivalence scan
    A = _parse_matrix(args.avoid, args.k)
    B = _parse_matrix(args.avoid2, args.k)
    scan = fillings.ferrers_equiv_upto if args.kind == "ferrers" \
        else fillings.stack_equiv_upto
    equal, shape = scan(A, B, args.max_cols, args.max_rows, args.mode)
    if equal:
        sys.stdout.write("equivalent on all %s shapes up to %d columns,"
                         " %d rows\n" % (args.kind, args.max_cols,
                                         args.max_rows))
        return EXIT_OK
    sys.stdout.write("not equivalent; witness shape %s\n"
                     % ",".join(str(h) for h in shape.heights))
    return EXIT_NEGATIVE


def _bijection_dispatch(args, seq):
    name = args.name
    if name == "thm12":
        if args.m is None or args.k is None:
            raise CliError("thm12 needs --k and --m")
        out = bijections.chunk_bijection(seq, args.k, args.m)
        props = ["block sizes preserved: %s"
                 % (sorted(seq.count(s) for s in set(seq))
                    == sorted(out.count(s) for s in set(out)))]
        return out, props
    if name == "sigma":
        out = bijections.hybrid_chain_sigma(seq, args.variant, args.p,
                                            args.q, args.r)
        back = bijections.hybrid_chain_sigma_inverse(out, args.variant,
                                                     args.p, args.q, args.r)
        return out, ["round trip: %s" % (back == seq)]
    if name == "l124":
        out = bijections.hybrid_chain_124(seq, args.kind124, args.p, args.q)
        back = bijections.hybrid_chain_124_inverse(out, args.kind124,
                                                   args.p, args.q)
        return out, ["round trip: %s" % (back == seq)]
    if name == "tail":
        m, tail = bijections.tail_decompose(seq)
        return tail, ["blocks: %d" % m,
                      "rank: %d" % bijections.tail_rank(tail)]
    if name == "p12112":
        out = bijections.bijection_12112_12212(seq)
        back = bijections.bijection_12112_12212_inverse(out)
        return out, ["round trip: %s" % (back == seq),
                     "blocks preserved: %s" % (max(out) == max(seq))]
    if name == "phi":
        if args.k is None or args.p is None or args.q2 is None:
            raise CliError("phi needs --k, --p and --q-row")
        M = bijections._from_cols(list(seq), max(seq))
        out = bijections.key_row_raise(M, args.k, args.p, args.q2)
        word = tuple(bijections._cols_of(out))
        return word, ["stage: (%d,%d,%d)" % (args.k, args.p + 1, args.q2)]
    if name == "fall":
        if not args.shape or args.cells is None:
            raise CliError("fall needs --shape and --cells")
        shape = _parse_shape(args.shape, "stack")
        rows = [int(x) for x in args.cells.split(",")]
        F = fillings.Filling.from_column_rows(shape, rows)
        out = bijections.fall_bijection(F, args.p, args.q)
        cells = ",".join(str(r) for r in out.column_rows())
        return cells, ["row sums preserved: True"]
    raise CliError("unknown bijection %r" % name)


def cmd_bijection(args):
    if args.name == "fall":
        seq = None
    else:
        seq = _parse_pattern(args.apply)
    out, props = _bijection_dispatch(args, seq)
    if args.name == "fall":
        sys.stdout.write("input:  %s\n" % args.cells)
        sys.stdout.write("output: %s\n" % out)
    else:
        sys.stdout.write("input:  %s\n" % format_seq(seq))
        sys.stdout.write("output: %s\n" % (format_seq(out)
                                           if isinstance(out, tuple) else out))
    for prop in props:
        sys.stdout.write("%s\n" % prop)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="partpat",
        description="Pattern-avoiding set partitions: counting, class"
                    " discovery, bijections, and shape fillings"
                    " (kernel: %s)" % kernel.BACKEND)
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("count", help="count avoiders of a pattern")
    pc.add_argument("pattern")
    pc.add_argument("--n", required=True, help="size or range, e.g. 6..11")
    pc.add_argument("--by-blocks", action="store_true")
    pc.add_argument("--format", choices=["csv", "json"], default="csv")
    pc.add_argument("--threads", type=int, default=_default_threads())
    pc.add_argument("--cache", default=None, help="cache file path")
    pc.add_argument("--no-cache", action="store_true")
    pc.set_defaults(func=cmd_count)

    pk = sub.add_parser("classify", help="group patterns by count vectors")
    pk.add_argument("size", type=int)
    pk.add_argument("--horizon", type=int, default=None)
    pk.add_argument("--format", choices=["csv", "json"], default="csv")
    pk.add_argument("--threads", type=int, default=_default_threads())
    pk.set_defaults(func=cmd_classify)

    pw = sub.add_parser("witness", help="first size where two patterns"
                                        " count differently")
    pw.add_argument("p1")
    pw.add_argument("p2")
    pw.add_argument("--max-n", type=int, required=True)
    pw.add_argument("--threads", type=int, default=_default_threads())
    pw.set_defaults(func=cmd_witness)

    pf = sub.add_parser("fillings", help="count or compare shape fillings")
    pf.add_argument("action", choices=["count", "equiv"])
    pf.add_argument("--shape", help="column heights, e.g. 2,4,4,4,4,4")
    pf.add_argument("--avoid", required=True,
                    help="column word of the forbidden matrix, e.g. 112")
    pf.add_argument("--avoid2", help="second matrix for equiv")
    pf.add_argument("--k", type=int, default=None, help="matrix rows")
    pf.add_argument("--mode", choices=["semi-standard", "sparse"],
                    default="semi-standard")
    pf.add_argument("--kind", choices=["ferrers", "stack"], default="ferrers")
    pf.add_argument("--max-cols", type=int, default=4)
    pf.add_argument("--max-rows", type=int, default=4)
    pf.set_defaults(func=cmd_fillings)

    pb = sub.add_parser("bijection", help="apply one of the bijections")
    pb.add_argument("--name", required=True,
                    choices=["thm12", "fall", "sigma", "l124", "tail",
                             "phi", "p12112"])
    pb.add_argument("--apply", help="input sequence")
    pb.add_argument("--k", type=int, default=None)
    pb.add_argument("--m", type=int, default=None)
    pb.add_argument("--p", type=int, default=0)
    pb.add_argument("--q", type=int, default=0)
    pb.add_argument("--r", type=int, default=0)
    pb.add_argument("--q-row", dest="q2", type=int, default=None,
                    help="target row for phi")
    pb.add_argument("--variant", choices=["minus", "plus"], default="minus")
    pb.add_argument("--kind124", choices=list(bijections.HYBRID_124_KINDS),
                    default="2-41")
    pb.add_argument("--shape", help="stack shape for fall")
    pb.add_argument("--cells", help="per-column 1-rows for fall, 0=empty")
    pb.set_defaults(func=cmd_bijection)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_PARSE
    except CountOverflowError as exc:
        sys.stderr.write("overflow: %s\n" % exc)
        return EXIT_OVERFLOW
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
