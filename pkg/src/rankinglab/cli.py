"""Command-line harness.

Subcommands:

* ``run FILE`` prints the computed matching and its size.
* ``exact FILE`` prints one CSV row with the exact expected size and ratio.
* ``mc FILE`` prints one CSV row with a seeded Monte Carlo estimate.
* ``check [FILE]`` runs a named property suite, randomized or on the file.
* ``bound`` prints the guaranteed ratio at a given size.
* ``gamma`` prints the exact worst ratio of the hard family at size n.
* ``gen`` writes generated instance files.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
The default seed comes from the RANKINGLAB_SEED environment variable when
set, otherwise 271828.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .engine import BipartiteInstance, Permutation, online_match
from .fileformat import (
    InstanceFormatError,
    fingerprint,
    parse_instance,
    serialize_instance,
)
from .generators import gamma_min_ratio, gen_gamma_family, gen_perfect, gen_random
from .graph import max_card_matching
from .probability import (
    CapExceeded,
    LIMIT_RATIO,
    check_theorem6,
    competitive_bound,
    competitive_bound_exact,
    mc_expected_size,
)
from .reporting import CSV_HEADER, fmt_cell, row_line
from .suites import SUITES


def _default_seed() -> int:
    return int(os.environ.get("RANKINGLAB_SEED", "271828"))


def _load(path: str):
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _oriented(inst, e):
    (u,) = e & inst.arrival.members
    (v,) = e & inst.ranking.members
    return u, v


def cmd_run(args) -> int:
    inst = _load(args.file)
    m = online_match(inst)
    pairs = [_oriented(inst, e) for e in m]
    for u, v in sorted(pairs, key=lambda uv: inst.arrival.index(uv[0])):
        print(f"matched {u} {v}")
    print(f"size {len(m)}")
    return 0


def cmd_exact(args) -> int:
    inst = _load(args.file)
    t0 = time.perf_counter()
    verdict = check_theorem6(inst, args.cap)
    ms = (time.perf_counter() - t0) * 1000.0
    print(CSV_HEADER)
    print(
        row_line(
            {
                "instance_id": fingerprint(inst),
                "n": verdict.n,
                "mode": "exact",
                "expected_size": verdict.expected,
                "ratio": verdict.ratio,
                "bound": verdict.bound,
                "verdict": "pass" if verdict.holds else "fail",
                "seed": "",
                "runtime_ms": ms,
            }
        )
    )
    return 0 if verdict.holds else 1


def cmd_mc(args) -> int:
    inst = _load(args.file)
    t0 = time.perf_counter()
    est = mc_expected_size(inst, args.samples, args.seed)
    n = len(max_card_matching(inst.graph))
    ms = (time.perf_counter() - t0) * 1000.0
    ratio = est.mean / n if n else None
    bound = competitive_bound(n) if n else None
    verdict = "pass" if (ratio is None or ratio >= bound) else "fail"
    print(CSV_HEADER)
    print(
        row_line(
            {
                "instance_id": fingerprint(inst),
                "n": n,
                "mode": "mc",
                "expected_size": est.mean,
                "ratio": ratio,
                "bound": bound,
                "verdict": verdict,
                "seed": est.seed,
                "runtime_ms": ms,
            }
        )
    )
    print(f"# stddev {fmt_cell(est.stddev)} over {est.samples} samples", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    if args.random and args.file:
        print("error: give a file or --random, not both", file=sys.stderr)
        return 2
    inst = _load(args.file) if args.file else None
    suite = SUITES[args.suite]
    result = suite(args.count, args.seed, inst=inst, max_side=args.max_side)
    if args.out is not None:
        rows = result.notes.get("rows")
        if rows is None:
            print(
                f"error: suite {args.suite!r} produces no CSV rows", file=sys.stderr
            )
            return 2
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(row_line(row) + "\n")
    print(f"suite {result.name}: {result.cases} cases, {len(result.failures)} failures")
    for key, value in sorted(result.notes.items()):
        if key != "rows":
            print(f"note {key} = {value}")
    for f in result.failures:
        print(f"FAIL: {f.description}")
        if f.instance_text:
            print("--- failing instance ---")
            sys.stdout.write(f.instance_text)
            print("--- end ---")
    return 0 if result.passed else 1


def cmd_bound(args) -> int:
    if args.exact:
        print(fmt_cell(competitive_bound_exact(args.n)))
    else:
        print(fmt_cell(competitive_bound(args.n)))
    if args.limit_gap:
        print(f"limit_gap {fmt_cell(abs(competitive_bound(args.n) - LIMIT_RATIO))}")
    return 0


def cmd_gamma(args) -> int:
    print(fmt_cell(gamma_min_ratio(args.n)))
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        inst = gen_random(args.offline, args.online, args.edge_prob, args.seed)
        text = serialize_instance(inst)
    elif args.kind == "perfect":
        inst, planted = gen_perfect(args.n, args.extra, args.seed)
        pairs = sorted(_oriented(inst, e) for e in planted)
        lines = ["# planted perfect matching:"]
        lines += [f"# pair {u} {v}" for u, v in pairs]
        text = "\n".join(lines) + "\n" + serialize_instance(inst)
    else:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        count = 0
        for idx, (g, arrivals) in enumerate(gen_gamma_family(args.n)):
            offline = sorted({v for e in g for v in e if v.startswith("o")},
                             key=lambda s: int(s[1:]))
            inst = BipartiteInstance(g, Permutation(offline), arrivals[0])
            (out_dir / f"g{idx:04d}.obm").write_text(
                serialize_instance(inst), encoding="utf-8"
            )
            count += 1
        print(f"wrote {count} instances to {out_dir}")
        return 0
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rankinglab",
        description="Laboratory for the rank-greedy online bipartite matcher.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run", help="print the matching computed on an instance file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("exact", help="exact expected size and ratio as a CSV row")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int, default=8, help="enumeration cap (default 8)")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("mc", help="Monte Carlo expected size as a CSV row")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("check", help="run a property suite")
    sp.add_argument("file", nargs="?", help="check this instance instead of random ones")
    sp.add_argument(
        "--random",
        action="store_true",
        help="draw random instances (the default when no file is given)",
    )
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--max-side", type=int, default=8)
    sp.add_argument("--out", help="write CSV rows here (ratio suites only)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("bound", help="guaranteed ratio at size n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--exact", action="store_true", help="print an exact rational")
    sp.add_argument(
        "--limit-gap", action="store_true", help="also print the distance to 1 - 1/e"
    )
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("gamma", help="exact worst ratio of the hard family")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("gen", help="generate instance files")
    gsub = sp.add_subparsers(dest="kind", required=True)

    gp = gsub.add_parser("random", help="independent random edges")
    gp.add_argument("--offline", type=int, required=True)
    gp.add_argument("--online", type=int, required=True)
    gp.add_argument("--edge-prob", type=float, required=True)
    gp.add_argument("--seed", type=int, default=_default_seed())
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)

    gp = gsub.add_parser("perfect", help="planted perfect matching plus extras")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--extra", type=float, default=0.3, help="extra edge probability")
    gp.add_argument("--seed", type=int, default=_default_seed())
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)

    gp = gsub.add_parser("gamma", help="every hard-family graph at size n")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--out-dir", required=True)
    gp.set_defaults(func=cmd_gen)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (
        InstanceFormatError,
        CapExceeded,
        ValueError,
        KeyError,
        IndexError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
