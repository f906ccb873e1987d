"""``covsat`` command line: generate, verify, families and bounds.

Exit codes: 0 all claims pass, 1 a claim fails, 2 usage or input error,
3 some claims skipped because a cap was hit (and none failed).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _kernels
from .bounds import compare
from .codes import ParityCheckMatrix
from .constructions import (ConstructionError, QMRecipe, construction_s_matrix, direct_sum,
                            family_codimension_tR, plane_saturating_set, qm1, qm2,
                            triangle_double_blocking)
from .gf import FieldError, gf
from .io import FormatError, emit, read_matrix
from .pg import GeometryError, baer_embed
from .report import parse_claim, verify
from .syndromes import DEFAULT_MAX_SYNDROMES, CapExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SKIP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _out(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _set_matrix(S) -> ParityCheckMatrix:
    return ParityCheckMatrix(S.ctx, S.coords, S.label)


def _gen(args) -> int:
    kind = args.kind
    if kind == "s":
        H = construction_s_matrix(args.rho, gf(args.q))
    elif kind in ("qm1", "qm2"):
        seed = read_matrix(args.seed)
        if args.ell is not None:
            if args.R is None:
                raise UsageError("--ell needs --R")
            rec = QMRecipe(seed, args.m, args.R, args.ell, kind, args.w, "given")
        else:
            rec = QMRecipe.measured(seed, args.m, kind, args.w, max_syndromes=args.max_syndromes)
        H = qm1(rec) if kind == "qm1" else qm2(rec)
    elif kind == "plane-sat":
        H = _set_matrix(plane_saturating_set(gf(args.q)))
    elif kind == "triangle":
        S = triangle_double_blocking(gf(args.q))
        if args.embed:
            S = baer_embed(S, gf(args.embed))
            S.label = f"triangle q={args.q} embedded in q={args.embed}"
        H = _set_matrix(S)
    elif kind == "direct-sum":
        H = direct_sum(read_matrix(args.first), read_matrix(args.second))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown generator {kind}")
    _out(emit(H), args.output)
    return EXIT_OK


def _verify(args) -> int:
    H = read_matrix(args.matrix)
    claims = dict(parse_claim(c) for c in args.claim or [])
    rep = verify(H, claims, max_syndromes=args.max_syndromes, max_d=args.max_d,
                 local_opt=not args.skip_local_opt, minimal=args.minimal)
    text = rep.to_json(args.timing) if args.format == "json" else rep.to_text(args.timing)
    _out(text + "\n", args.output)
    return rep.exit_code


def _family(args) -> int:
    fam = family_codimension_tR(args.q, args.R, args.t, args.w)
    report = compare(args.q, fam.r, args.R, fam.n)
    if args.output:
        _out(emit(fam.matrix(max_syndromes=args.max_syndromes)), args.output)
    if args.format == "json":
        body = {"q": args.q, "R": args.R, "t": args.t, "n": fam.n, "r": fam.r,
                "case": fam.case, "provenance": fam.provenance(),
                "steps": [s.__dict__ for s in fam.steps], "bounds": report.as_dict()}
        sys.stdout.write(json.dumps(body, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"family q={args.q} R={args.R} t={args.t}: n={fam.n} r={fam.r}\n")
        sys.stdout.write(f"  {fam.provenance()}\n")
        sys.stdout.write(report.to_text() + "\n")
    if report.meets_new_bound is False:
        return EXIT_FAIL
    return EXIT_OK


def _bounds(args) -> int:
    rows = []
    for q in args.q:
        for R in args.R:
            if args.r:
                rs = args.r
            else:
                rs = [t * R for t in args.t] + ([t * R + R // 2 for t in args.t] if R % 2 == 0 else [])
            for r in rs:
                rows.append(compare(q, r, R, None))
    if args.format == "json":
        sys.stdout.write(json.dumps([x.as_dict() for x in rows], indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(x.to_text() for x in rows) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covsat", description=__doc__.splitlines()[0])
    p.add_argument("--workers", type=int, default=None, help="threads for the compiled searches")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a matrix file")
    gsub = g.add_subparsers(dest="kind", required=True)
    s = gsub.add_parser("s", help="construction S (line plus ovals)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--rho", type=int, required=True)
    for kind in ("qm1", "qm2"):
        qm = gsub.add_parser(kind, help=f"{kind.upper()} lifting of a seed matrix")
        qm.add_argument("--seed", required=True)
        qm.add_argument("--m", type=int, required=True)
        qm.add_argument("--R", type=int, default=None, help="seed covering radius (with --ell)")
        qm.add_argument("--ell", type=int, default=None, help="take the seed's ell as given")
        qm.add_argument("--w", choices=("literal", "reduced"), default="literal")
        qm.add_argument("--max-syndromes", type=int, default=DEFAULT_MAX_SYNDROMES)
    ps = gsub.add_parser("plane-sat", help="the (3 sqrt(q) - 1)-point 1-saturating plane set")
    ps.add_argument("--q", type=int, required=True)
    tr = gsub.add_parser("triangle", help="triangle double blocking set of PG(2,q)")
    tr.add_argument("--q", type=int, required=True)
    tr.add_argument("--embed", type=int, default=None, help="Baer-embed into PG(2, EMBED)")
    ds = gsub.add_parser("direct-sum", help="block-diagonal sum of two matrix files")
    ds.add_argument("first")
    ds.add_argument("second")
    for sp in (s, *[gsub.choices[k] for k in ("qm1", "qm2")], ps, tr, ds):
        sp.add_argument("-o", "--output", default=None)

    v = sub.add_parser("verify", help="measure a matrix file and check claims")
    v.add_argument("matrix")
    v.add_argument("--claim", action="append", metavar="KEY=VALUE")
    v.add_argument("--max-syndromes", type=int, default=DEFAULT_MAX_SYNDROMES)
    v.add_argument("--max-d", type=int, default=4)
    v.add_argument("--skip-local-opt", action="store_true")
    v.add_argument("--minimal", action="store_true", help="also check minimality of the point set")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--timing", action="store_true", help="include the runtime (breaks byte-determinism)")
    v.add_argument("-o", "--output", default=None)

    f = sub.add_parser("family", help="fixed-radius family member with r = tR")
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--R", type=int, required=True)
    f.add_argument("--t", type=int, required=True)
    f.add_argument("--w", choices=("literal", "reduced"), default="literal")
    f.add_argument("--max-syndromes", type=int, default=DEFAULT_MAX_SYNDROMES)
    f.add_argument("--format", choices=("text", "json"), default="text")
    f.add_argument("-o", "--output", default=None, help="also write the matrix")

    b = sub.add_parser("bounds", help="evaluate the length-function bounds")
    b.add_argument("--q", type=int, nargs="+", required=True)
    b.add_argument("--R", type=int, nargs="+", required=True)
    grp = b.add_mutually_exclusive_group(required=True)
    grp.add_argument("--t", type=int, nargs="+")
    grp.add_argument("--r", type=int, nargs="+")
    b.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _kernels.set_workers(args.workers)
    handlers = {"gen": _gen, "verify": _verify, "family": _family, "bounds": _bounds}
    try:
        return handlers[args.command](args)
    except (UsageError, ConstructionError, FieldError, FormatError, GeometryError,
            CapExceeded, ValueError, OSError) as exc:
        sys.stderr.write(f"covsat: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
