"""Command-line front end.

Match lines look like ``[(0,1,3),(0,3,4)]``: one ``(word, begin, end)``
triple per direction, word ids 0-based in input order, positions 1-based and
inclusive.  Lines are sorted.  Statistics are one JSON object per line.

Exit status: 0 on success (also for an empty match set), 2 for unreadable
or malformed input, 3 when a size guard or time budget is exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from . import io
from .benchmarks import FAMILIES, BenchSpec, generate
from .engine import TrialStats, hpm_naive
from .exceptions import AutomatonError, BudgetExceeded, FormatError, GuardError
from .oracle import brute_force_match_set, naa_from_cnf, sat_brute_force
from .projection import MODES, filter_irrelevant, hpm_fjs_proj, hpm_proj, projections
from .skipping import compute_skip_tables, format_skip_tables, hpm_fjs
from .validation import ALGORITHMS, check_words

ENGINES = ("naive", "fjs", "proj", "fjs-proj")
BENCH_FIELDS = ("family", "k", "length", "count", "engine", "reps", "status", "elapsed",
                "trials", "skipped_qs", "skipped_kmp", "pruned_by_projection", "matches")


def run_engine(naa, words, algorithm, *, queue_mode="filtered", tail_bound=False,
               prune=True, workers=1, deadline=None):
    if algorithm == "naive":
        return hpm_naive(naa, words, prune=prune, n_jobs=workers, deadline=deadline)
    if algorithm == "fjs":
        return hpm_fjs(naa, words, tail_bound=tail_bound, prune=prune, n_jobs=workers,
                       deadline=deadline)
    if algorithm == "proj":
        return hpm_proj(naa, words, mode=queue_mode, prune=prune, n_jobs=workers,
                        deadline=deadline)
    if algorithm == "fjs-proj":
        return hpm_fjs_proj(naa, words, mode=queue_mode, tail_bound=tail_bound, prune=prune,
                            n_jobs=workers, deadline=deadline)
    if algorithm == "oracle":
        t0 = time.perf_counter()
        matches = brute_force_match_set(naa, words)
        return matches, TrialStats(algorithm="oracle", matches=len(matches),
                                   elapsed=time.perf_counter() - t0)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _load_inputs(args):
    naa = io.load_naa(args.naa)
    words = []
    for path in args.words:
        words.extend(io.load_words(path))
    return naa, check_words(words)


def _stats_line(stats, timing=False) -> str:
    record = stats.as_dict()
    record["nonempty"] = stats.matches > 0
    if not timing:
        # Keeps the output byte-reproducible.
        del record["elapsed"]
    return json.dumps(record)


def cmd_match(args, out):
    naa, words = _load_inputs(args)
    matches, stats = run_engine(naa, words, args.algorithm, queue_mode=args.queue_mode,
                                tail_bound=args.tail_bound, prune=not args.no_prune,
                                workers=args.workers)
    text = ""
    if args.output in ("matches", "both"):
        text += io.format_matches(matches)
    if args.output in ("stats", "both"):
        text += _stats_line(stats, args.timing) + "\n"
    out.write(text)
    return 0


def cmd_oracle(args, out):
    if args.cnf:
        cnf = io.load_dimacs(args.cnf)
        sat = sat_brute_force(cnf)
        record = {"satisfiable": sat}
        if args.check_reduction:
            naa, words = naa_from_cnf(cnf)
            found = bool(hpm_naive(naa, words)[0])
            record.update(match_set_nonempty=found, agree=found == sat)
        out.write(json.dumps(record) + "\n")
        return 0
    if not args.naa or not args.words:
        raise FormatError("oracle needs --naa and --words, or --cnf")
    args.algorithm = "oracle"
    args.queue_mode, args.tail_bound, args.no_prune, args.workers = "filtered", False, False, 1
    return cmd_match(args, out)


def cmd_gen(args, out):
    spec = BenchSpec(args.family, k=args.k, word_len=args.len, word_count=args.count,
                     seed=args.seed)
    naa, words = generate(spec)
    io.dump_naa(naa, args.naa_out)
    io.dump_words(words, args.words_out)
    out.write(json.dumps({"family": spec.family, "k": naa.k, "states": naa.n_states,
                          "words": len(words), "naa": args.naa_out,
                          "words_file": args.words_out}) + "\n")
    return 0


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _engine_list(text):
    names = [x.strip() for x in text.split(",") if x.strip()]
    for name in names:
        if name not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown engine {name!r}")
    return names


def bench_rows(family, ks, lengths, counts, engines, reps=1, seed=0, timeout=None,
               queue_mode="filtered", tail_bound=False):
    """Yield one result dict per (k, length, count, engine).

    Each engine runs ``reps`` times on the same input; ``elapsed`` is the
    mean, counters come from the last run (they do not vary).
    """
    for k, length, count in itertools.product(ks, lengths, counts):
        spec = BenchSpec(family, k=k, word_len=length, word_count=count, seed=seed)
        naa, words = generate(spec)
        for engine in engines:
            row = {"family": family, "k": naa.k, "length": length, "count": count,
                   "engine": engine, "reps": reps}
            times = []
            try:
                for _ in range(reps):
                    deadline = time.perf_counter() + timeout if timeout is not None else None
                    _, stats = run_engine(naa, words, engine, queue_mode=queue_mode,
                                          tail_bound=tail_bound, deadline=deadline)
                    times.append(stats.elapsed)
            except (BudgetExceeded, GuardError) as exc:
                row["status"] = "timeout" if isinstance(exc, BudgetExceeded) else "guard"
            else:
                row.update(status="ok", elapsed=sum(times) / len(times), trials=stats.trials,
                           skipped_qs=stats.skipped_qs, skipped_kmp=stats.skipped_kmp,
                           pruned_by_projection=stats.pruned_by_projection,
                           matches=stats.matches)
            yield row


def cmd_bench(args, out):
    out.write("\t".join(BENCH_FIELDS) + "\n")
    for row in bench_rows(args.family, args.k, args.len, args.count, args.engines,
                          reps=args.reps, seed=args.seed, timeout=args.timeout,
                          queue_mode=args.queue_mode, tail_bound=args.tail_bound):
        cells = []
        for f in BENCH_FIELDS:
            v = row.get(f, "")
            cells.append(f"{v:.6f}" if isinstance(v, float) else str(v))
        out.write("\t".join(cells) + "\n")
        out.flush()
    return 0


def cmd_dump_skip_tables(args, out):
    naa = io.load_naa(args.naa)
    out.write(format_skip_tables(naa, compute_skip_tables(naa)))
    return 0


def cmd_dump_filtered(args, out):
    naa, words = _load_inputs(args)
    lines = []
    for m, dfa in enumerate(projections(naa), start=1):
        for w_id, word in enumerate(words):
            lines.append(f"x{m} {w_id} {filter_irrelevant(dfa, word, w_id).render()}\n")
    out.write("".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperpm", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p, required=True):
        p.add_argument("--naa", required=required, help="NAA file (JSON)")
        p.add_argument("--words", action="append", required=required, default=None,
                       help="word file, one word per line; repeatable")

    def engine_opts(p):
        p.add_argument("--queue-mode", choices=MODES, default="filtered")
        p.add_argument("--tail-bound", action="store_true",
                       help="skip starts too close to the end for a shortest match")

    p = sub.add_parser("match", help="compute the match set")
    inputs(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="fjs-proj")
    p.add_argument("--output", choices=("matches", "stats", "both"), default="matches")
    engine_opts(p)
    p.add_argument("--no-prune", action="store_true", help="keep configurations that cannot move")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in stats")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("oracle", help="brute-force match set, or SAT check of a CNF")
    inputs(p, required=False)
    p.add_argument("--output", choices=("matches", "stats", "both"), default="matches")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in stats")
    p.add_argument("--cnf", help="DIMACS file; prints satisfiability")
    p.add_argument("--check-reduction", action="store_true",
                   help="with --cnf, also match the reduced instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a benchmark NAA and word file")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--len", type=int, default=100)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--naa-out", required=True)
    p.add_argument("--words-out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run engines over a parameter sweep")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=_int_list, default=[2], help="comma-separated")
    p.add_argument("--len", type=_int_list, default=[100], help="comma-separated")
    p.add_argument("--count", type=_int_list, default=[1], help="comma-separated")
    p.add_argument("--engines", type=_engine_list, default=list(ENGINES))
    p.add_argument("--reps", type=int, default=1, help="runs per cell; elapsed is the mean")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=None, help="seconds per cell")
    engine_opts(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dump-skip-tables", help="print skip values")
    p.add_argument("--naa", required=True)
    p.set_defaults(func=cmd_dump_skip_tables)

    p = sub.add_parser("dump-filtered", help="print per-direction masks (_ = irrelevant)")
    inputs(p)
    p.set_defaults(func=cmd_dump_filtered)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (FormatError, AutomatonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GuardError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
