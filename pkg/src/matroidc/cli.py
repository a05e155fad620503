"""Command-line driver: dimension tables, homology, verification suites.

Exit codes: 0 success, 1 verification failure, 2 source or coverage error,
3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from io import StringIO

from . import complexes, hopf
from .complexes import ComplexSpec, DifferentialKind, parse_kind
from .enumerate import EnumeratorSource, enumerate_all, load_source, write_mtrd
from .errors import (
    DegreeTooLarge,
    InvalidSpec,
    MatroidError,
    ParseError,
    PropertyNotDualityStable,
    SourceIncomplete,
)
from .linalg import RankPolicy, default_primes, write_matrix_market

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SOURCE = 2
EXIT_PARSE = 3


def _add_common(p, kind=False, max_n=True):
    p.add_argument("--spec", default="all", help="comma-joined property tags")
    if kind:
        p.add_argument(
            "--kind",
            default="del",
            help="differential: del, clp, con, lp, del-tot, con-tot",
        )
    if max_n:
        p.add_argument("--max-n", type=int, default=7, dest="max_n")
    p.add_argument("--source", default=None, help="census file (MTRD or F2DB)")
    p.add_argument("--format", default="csv", choices=("csv", "json", "mm"))
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="force exact ranks")
    p.add_argument("--primes", type=int, default=3, help="modular prime count")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matroidc",
        description="matroid deletion/contraction complexes over Q",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="chain dimensions per bidegree")
    _add_common(p)

    p = sub.add_parser("homology", help="Betti table of a complex")
    _add_common(p, kind=True)
    p.add_argument(
        "--bidegree",
        default=None,
        help="single bidegree 'n,r' (ground-set size, rank)",
    )

    p = sub.add_parser("verify", help="structural identity suites")
    p.add_argument(
        "--suite",
        required=True,
        choices=("square", "anticommute", "hopf", "homotopy", "duality", "freealg"),
    )
    _add_common(p)

    p = sub.add_parser("enumerate", help="write isomorphism-class reps as MTRD")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("export-matrix", help="differential matrix as Matrix Market")
    _add_common(p, kind=True, max_n=False)
    p.set_defaults(format="mm")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("ingest-check", help="validate a census file")
    p.add_argument("--source", required=True)
    p.add_argument("--out", default=None)
    return ap


def _get_source(args):
    if getattr(args, "source", None):
        return load_source(args.source)
    return EnumeratorSource()


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _policy(args) -> RankPolicy:
    return RankPolicy(exact=args.exact, primes=default_primes(max(args.primes, 1)))


def _table_format(args) -> str:
    if args.format == "mm":
        raise InvalidSpec("mm format is only for export-matrix")
    return args.format


def cmd_dims(args) -> int:
    spec = ComplexSpec.parse(args.spec)
    source = _get_source(args)
    fmt = _table_format(args)
    rows = complexes.dims_table(spec, args.max_n, source)
    if fmt == "json":
        text = json.dumps(
            [{"n": n, "r": r, "dim": d} for n, r, d in rows], indent=0
        ) + "\n"
    else:
        text = "n,r,dim\n" + "".join(f"{n},{r},{d}\n" for n, r, d in rows)
    _emit(args, text)
    return EXIT_OK


def cmd_homology(args) -> int:
    spec = ComplexSpec.parse(args.spec)
    kind = parse_kind(args.kind)
    source = _get_source(args)
    policy = _policy(args)
    if args.bidegree:
        try:
            n, r = (int(t) for t in args.bidegree.split(","))
        except ValueError:
            raise InvalidSpec(f"bad --bidegree {args.bidegree!r}, want 'n,r'")
        table = complexes.betti_at_bidegree(spec, kind, n, r, source, policy)
    else:
        table = complexes.homology_table(
            spec, kind, args.max_n, source, policy, threads=args.threads
        )
    if _table_format(args) == "json":
        text = json.dumps(
            [
                {
                    "spec": row.spec, "kind": row.kind, "n": row.n, "r": row.r,
                    "dim": row.dim, "rank_out": row.rank_out,
                    "rank_in": row.rank_in, "betti": row.betti,
                    "certified": row.certified,
                }
                for row in table
            ],
            indent=0,
        ) + "\n"
    else:
        text = table.to_csv()
    _emit(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = ComplexSpec.parse(args.spec)
    source = _get_source(args)
    max_n = args.max_n
    K = DifferentialKind
    rep = complexes.Report([])
    if args.suite == "square":
        for kind in K:
            rep.extend(complexes.verify_square_zero(kind, max_n, spec, source))
    elif args.suite == "anticommute":
        for a, b in ((K.DEL, K.CLP), (K.LP, K.CON), (K.DEL, K.CON), (K.LP, K.CLP)):
            rep.extend(complexes.verify_anticommute(a, b, max_n, spec, source))
    elif args.suite == "hopf":
        rep.extend(hopf.verify_unit_counit(max_n, source))
        rep.extend(hopf.verify_associativity(max_n, source))
        rep.extend(hopf.verify_graded_commutativity(max_n, source))
        rep.extend(hopf.verify_coassociativity(max_n, source))
        rep.extend(hopf.verify_bialgebra(max_n, source))
        for kind in K:
            rep.extend(hopf.verify_leibniz(kind, max_n, source))
        for kind in (K.DEL, K.CLP):
            rep.extend(hopf.verify_coderivation(kind, "right", max_n, source))
        for kind in (K.CON, K.LP):
            rep.extend(hopf.verify_coderivation(kind, "left", max_n, source))
    elif args.suite == "homotopy":
        for kind, gen in (
            (K.DEL, "loop"),
            (K.DEL_TOT, "loop"),
            (K.CON, "coloop"),
            (K.CON_TOT, "coloop"),
            (K.LP, "loop"),
            (K.CLP, "coloop"),
        ):
            rep.extend(hopf.verify_homotopy(kind, max_n, source, gen))
    elif args.suite == "duality":
        rep.extend(complexes.verify_duality(max_n, spec, source))
    elif args.suite == "freealg":
        rep.extend(hopf.connected_dim_check(max_n, source))
    _emit(args, rep.text())
    return EXIT_OK if rep.ok else EXIT_VERIFY_FAILED


def cmd_enumerate(args) -> int:
    reps = enumerate_all(args.n)
    write_mtrd(args.out, reps, coverage=[args.n])
    return EXIT_OK


def cmd_export_matrix(args) -> int:
    if args.format not in ("mm",):
        raise InvalidSpec("export-matrix writes Matrix Market; use --format mm")
    spec = ComplexSpec.parse(args.spec)
    kind = parse_kind(args.kind)
    source = _get_source(args)
    mat = complexes.differential_matrix(kind, args.n, spec, source)
    buf = StringIO()
    write_matrix_market(mat, buf)
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_ingest_check(args) -> int:
    source = load_source(args.source)
    lines = [f"source: {source!r}"]
    total = 0
    for n in sorted(k for k in range(0, 17) if source.covers(k)):
        reps = source.representatives(n)
        total += len(reps)
        lines.append(f"degree {n}: {len(reps)} classes")
    tags = ",".join(sorted(source.tags())) or "(none)"
    lines.append(f"property tags: {tags}")
    lines.append(f"total: {total} classes")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {
    "dims": cmd_dims,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "export-matrix": cmd_export_matrix,
    "ingest-check": cmd_ingest_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SourceIncomplete, DegreeTooLarge) as exc:
        print(f"source error: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    except (InvalidSpec, PropertyNotDualityStable) as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_SOURCE
    except MatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
