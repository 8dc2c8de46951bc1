"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 unsupported order or
invalid parameters, 3 construction failed, 4 search budget exhausted,
64 usage error. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds, catalog, constructions, cyclic, design as dc, pooling, textio
from .errors import (
    ConstructionFailed,
    DesignError,
    FormatError,
    NotATDesign,
    PreconditionViolated,
    SearchBudgetExceeded,
    UnsupportedOrder,
)
from .exact_cover import DEFAULT_BUDGET

EXIT_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_CONSTRUCTION = 3
EXIT_BUDGET = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(text)


def _param_line(d: dc.Design, t: int) -> str:
    sizes = ",".join(str(s) for s in sorted(d.block_sizes()))
    return f"steiner t={t} v={d.v} sizes={sizes} b={d.b}"


def _load_design(path: str):
    return textio.read_design(Path(path).read_text(encoding="ascii"))


# construct -------------------------------------------------------------------

def cmd_construct(args) -> int:
    family = "catalog" if args.family == "known" else args.family
    req = constructions.FamilyRequest(
        family, q=args.q, e=args.e, p=args.p, k=args.k, v=args.v, a=args.a, f=args.f, name=args.name
    )
    base = constructions.build_base(req, args.budget)
    if args.family == "rdf-chain" or args.extend:
        d = constructions.one_point_extension(base.design, base.subdesign, base.t)
        res = None
    else:
        d, res = base.design, base.resolution
    (k,) = sorted(base.design.block_sizes())
    defect = dc.steiner_defect(d, base.t, k)
    if defect:  # pragma: no cover
        raise ConstructionFailed(defect)
    _emit(textio.write_design(d, res), args.out)
    print(_param_line(d, base.t), file=sys.stdout if args.out else sys.stderr)
    return 0


# verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    d, res = _load_design(args.design)
    ok = True
    try:
        prof = dc.verify_t_design(d, args.t)
        sizes = " ".join(f"{s}:{n}" for s, n in prof.block_sizes.items())
        r = "-" if prof.r is None else prof.r
        print(f"t-design t={prof.t} v={d.v} lambda={prof.lam} b={prof.b} r={r} sizes={sizes}")
    except NotATDesign as exc:
        print(f"t-design: FAIL witness={' '.join(map(str, exc.witness))} count={exc.count} "
              f"expected={exc.expected}")
        ok = False
    for check in args.check or []:
        if check == "steiner":
            k = args.k if args.k is not None else min(d.block_sizes())
            why = dc.steiner_defect(d, args.t, k)
            passed = why is None
        elif res is None:
            why, passed = "design file carries no resolution", False
        elif check == "resolution":
            why = dc.resolution_defect(d, res)
            passed = why is None
        else:
            why = dc.resolution_defect(d, res)
            orbits = None if why else dc.resolution_class_orbits(d, res)
            passed = orbits is not None
            if passed:
                why = "class orbits " + ",".join(str(len(o)) for o in orbits)
            elif not why:
                why = "i -> i+1 does not permute the classes"
        print(f"check {check}: {'pass' if passed else 'FAIL'}" + (f" ({why})" if why else ""))
        ok &= passed
    return 0 if ok else EXIT_FAIL


# extend ----------------------------------------------------------------------

def cmd_extend(args) -> int:
    d, res = _load_design(args.design)
    t = args.t
    if t == 2 and res is not None and args.subdesign is None:
        sub = res.classes[args.cls]
    elif t == 1:
        sub = [args.cls]
    else:
        sub = dc.find_subdesign(d, t - 1, 1, args.budget)
        if sub is None:
            raise ConstructionFailed(f"no Steiner {t - 1}-subdesign exists")
    if args.subdesign is not None:
        sub = args.subdesign
    out = constructions.one_point_extension(d, sub, t)
    _emit(textio.write_design(out), args.out)
    print(_param_line(out, t), file=sys.stdout if args.out else sys.stderr)
    return 0


# bound -----------------------------------------------------------------------

def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_bound(args) -> int:
    if args.expected:
        if None in (args.v, args.u, args.p):
            raise PreconditionViolated("--expected needs --v, --u and --p")
        val = bounds.expected_unresolved_lower_bound(args.v, args.u, args.p)
        print(f"expected_unresolved_lower_bound v={args.v} u={args.u} p={args.p!r} value={val!r}")
        return 0
    if args.design:
        d, _ = _load_design(args.design)
        rep = bounds.average_covering_size(d, args.t)
        print(f"average={_frac(rep.average_size)} g={_frac(rep.bound)} b={rep.family_size} "
              f"equality={'yes' if rep.meets_bound else 'no'}")
        return 0
    if None in (args.v, args.t, args.T):
        raise PreconditionViolated("give --v --t --T, --design, or --expected")
    w = bounds.g_t(args.v, args.t, args.T)
    print(f"k={w.k} alpha={_frac(w.alpha)} g={_frac(w.g)}")
    return 0


# simulate --------------------------------------------------------------------

def _pools_for(args) -> pooling.PoolingMatrix:
    if args.pools:
        return textio.read_pools(Path(args.pools).read_text(encoding="ascii"))
    if not args.design:
        raise PreconditionViolated("give --design or --pools")
    d, res = _load_design(args.design)
    if args.mode == "transpose":
        return pooling.pools_from_design_transpose(d)
    if res is not None:
        return pooling.pools_from_class(d, res, args.cls)
    try:
        return pooling.pools_from_partition(d)
    except PreconditionViolated:
        return pooling.star_partition(d)


def cmd_simulate(args) -> int:
    H = _pools_for(args)
    if args.write_pools:
        Path(args.write_pools).write_text(textio.write_pools(H), encoding="ascii", newline="\n")
    rep = pooling.simulate(H, args.p, args.trials, args.seed)
    _emit(rep.to_text(), args.out)
    cmp = pooling.compare_to_bound(rep)
    verdict = "VIOLATION" if cmp.violated else "ok"
    print(f"comparison mean={cmp.simulated_mean!r} bound={cmp.bound!r} stderr={cmp.stderr!r} "
          f"verdict={verdict}", file=sys.stdout if args.out else sys.stderr)
    return EXIT_FAIL if rep.violations or cmp.violated else 0


# catalog ---------------------------------------------------------------------

def check_rdf_table(k: int, max_p: int, budget: int | None = DEFAULT_BUDGET) -> list[str]:
    """Differences between search, closed-form predicate and the table below max_p."""
    table = {p for p in catalog.catalog_rdf_primes(k) if p < max_p}
    predicate = {5: cyclic.rdf_condition_k5, 7: cyclic.rdf_condition_k7}.get(k)
    problems = []
    for p in range(2, max_p):
        if p % (k * (k - 1)) != 1 or not cyclic.is_prime(p):
            continue
        found = cyclic.find_rdf(p, k, budget) is not None
        if found != (p in table):
            problems.append(f"p={p}: search={'yes' if found else 'no'} table={'yes' if p in table else 'no'}")
        if predicate is not None and predicate(p) != found:
            problems.append(f"p={p}: predicate={'yes' if predicate(p) else 'no'} search={'yes' if found else 'no'}")
    return problems


def cmd_catalog(args) -> int:
    if args.rdf is not None:
        print(" ".join(map(str, catalog.catalog_rdf_primes(args.rdf))))
    elif args.rbibd_exceptions is not None:
        print(" ".join(map(str, catalog.catalog_rbibd_exceptions(args.rbibd_exceptions))))
    elif args.check_rdf:
        if args.k is None:
            raise PreconditionViolated("--check-rdf needs --k")
        problems = check_rdf_table(args.k, args.max, args.budget)
        for line in problems:
            print(line)
        if problems:
            return EXIT_FAIL
        print("match")
    elif args.find_rdf:
        if args.k is None or args.p is None:
            raise PreconditionViolated("--find-rdf needs --k and --p")
        fam = cyclic.find_rdf(args.p, args.k, args.budget)
        if fam is None:
            print(f"no RDF({args.p},{args.k},1) exists", file=sys.stderr)
            return EXIT_UNSUPPORTED
        _emit(textio.write_cdf(fam), args.out)
    elif args.sha256:
        print(catalog.catalog_sha256())
    else:
        sys.stdout.write(catalog.catalog_text())
    return 0


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="steinerpool", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")

    c = sub.add_parser("construct", help="build a design from a family")
    c.add_argument("--family", required=True,
                   choices=["affine", "kirkman", "rdf-chain", "boolean-sqs", "known"])
    for flag in ("q", "e", "p", "k", "v", "a", "f"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--name", choices=["example1", "example2", "table1", "kts15"])
    c.add_argument("--extend", action="store_true", help="apply the one-point extension")
    c.add_argument("--out")
    budget(c)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check design properties")
    v.add_argument("design")
    v.add_argument("--t", type=int, default=2)
    v.add_argument("--k", type=int, help="smaller block size for the steiner check")
    v.add_argument("--check", action="append",
                   choices=["resolution", "cyclic-resolvable", "steiner"])
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extend", help="add a point to a subdesign's blocks")
    e.add_argument("design")
    e.add_argument("--t", type=int, default=2)
    e.add_argument("--class", dest="cls", type=int, default=0,
                   help="resolution class (t=2) or block index (t=1)")
    e.add_argument("--subdesign", type=int, nargs="+", help="explicit block indices")
    e.add_argument("--out")
    budget(e)
    e.set_defaults(func=cmd_extend)

    b = sub.add_parser("bound", help="evaluate the average-covering bound")
    b.add_argument("--v", type=int)
    b.add_argument("--t", type=int, default=2)
    b.add_argument("--T", type=int)
    b.add_argument("--design")
    b.add_argument("--expected", action="store_true")
    b.add_argument("--u", type=int)
    b.add_argument("--p", type=float)
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("simulate", help="Monte Carlo two-stage testing")
    s.add_argument("--design")
    s.add_argument("--mode", choices=["dorfman", "transpose"], default="dorfman")
    s.add_argument("--class", dest="cls", type=int, default=0)
    s.add_argument("--pools")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--write-pools")
    s.set_defaults(func=cmd_simulate)

    g = sub.add_parser("catalog", help="print or re-derive the existence tables")
    g.add_argument("--rdf", type=int, choices=[5, 7, 9])
    g.add_argument("--rbibd-exceptions", type=int, choices=[5, 8])
    g.add_argument("--check-rdf", action="store_true")
    g.add_argument("--find-rdf", action="store_true")
    g.add_argument("--sha256", action="store_true")
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--max", type=int, default=1000)
    g.add_argument("--out")
    budget(g)
    g.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConstructionFailed as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (UnsupportedOrder, PreconditionViolated, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
