"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 closed form unavailable without ``--truncate``, 4 invariant generators
unavailable without ``--compute-invariants``.  Data goes to stdout (or
``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, omega
from .constants import (
    NotTabulatedError,
    bigraded_dimensions,
    builtin_invariants,
    invariant_generators,
    kernel_dimensions,
    lift_generators,
    module_generators,
    pi_map,
)
from .metabelian import lie_from_wreath
from .parsing import ParseError, parse_polynomial
from .polyarith import format_rational
from .weitzenbock import Derivation, parse_partition

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CLOSED_FORM = 3
EXIT_NO_INVARIANTS = 4


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _partition(text: str) -> tuple:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _derivation(args) -> Derivation:
    return Derivation.from_partition(args.partition)


def _max_degree(args, d: int) -> int:
    return args.max_degree if args.max_degree is not None else corpus.default_max_degree(d)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _table(header: list, rows: list) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _series_text(coeffs: list, n: int) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
        c_txt = format_rational(c)
        body = mono if c_txt == "1" and k else (c_txt if k == 0 else f"{c_txt}*{mono}")
        parts.append(body)
    return (" + ".join(parts) or "0") + f" + O(z^{n + 1})"


# ---------------------------------------------------------------------------
# subcommands


def cmd_hilbert(args) -> str:
    delta = _derivation(args)
    n = _max_degree(args, delta.arity)
    h = omega.constants_series(args.partition, args.space)
    doc = {"partition": list(args.partition), "space": args.space, "max_degree": n}
    closed = None
    if args.closed_form:
        try:
            closed, method = omega.multiplicity_series(h)
            doc["method"] = method
        except (omega.OmegaReductionError, ValueError) as exc:
            if not args.truncate:
                raise CommandError(f"closed form failed: {exc}; rerun with --truncate for a truncated series",
                                   EXIT_CLOSED_FORM) from None
            print(f"closed form failed ({exc}); truncated at {n}", file=sys.stderr)
    series = omega.multiplicity_series_truncated(h, n)
    graded = [int(c) for c in omega.specialize(series)]
    doc["graded"] = graded
    doc["truncated_at"] = n
    if closed is not None:
        doc["graded_closed_form"] = omega.specialize(closed).format(["z"])
        if args.bigraded:
            doc["bigraded_closed_form"] = closed.format(list(omega.TZ_NAMES))
    if args.bigraded:
        doc["bigraded"] = omega.format_series_json(series)
    if args.json:
        return _dump(doc)
    out = [f"delta({','.join(map(str, args.partition))}), space {args.space}\n"]
    if closed is not None:
        out.append(f"graded closed form: {doc['graded_closed_form']}\n")
        if args.bigraded:
            out.append(f"bigraded closed form: {doc['bigraded_closed_form']}\n")
    out.append(f"graded series (truncated at {n}): {_series_text(graded, n)}\n")
    if args.bigraded:
        rows = [(t["z"], t["t1"], t["t2"], t["coeff"]) for t in doc["bigraded"]]
        out.append(f"bigraded multiplicities (truncated at {n}):\n")
        out.append(_table(["n", "l1", "l2", "dim"], rows))
    return "".join(out)


def cmd_kernel_dims(args) -> str:
    delta = _derivation(args)
    n = _max_degree(args, delta.arity)
    dims = kernel_dimensions(delta, args.space, n)
    doc = {"partition": list(args.partition), "space": args.space, "max_degree": n,
           "dimensions": dims}
    if args.bigraded:
        big = bigraded_dimensions(delta, args.space, n)
        doc["bigraded"] = [{"t1": a, "t2": b, "z": k, "dim": m}
                           for (a, b, k), m in sorted(big.items(), key=lambda t: (t[0][2], t[0]))]
    if args.json:
        return _dump(doc)
    out = _table(["degree", "dim"], list(enumerate(dims, start=1)))
    if args.bigraded:
        out += "\n" + _table(["n", "l1", "l2", "dim"], [(r["z"], r["t1"], r["t2"], r["dim"]) for r in doc["bigraded"]])
    return out


def _algebra_generators(partition: tuple, n: int, compute: bool) -> list:
    try:
        return builtin_invariants(partition)
    except NotTabulatedError as exc:
        if not compute:
            raise CommandError(f"{exc}; pass --compute-invariants to compute them up to degree {n}",
                               EXIT_NO_INVARIANTS) from None
        print(f"invariant generators computed, certified to degree {n}", file=sys.stderr)
        return invariant_generators(Derivation.from_partition(partition), n)


def cmd_generators(args) -> str:
    delta = _derivation(args)
    n = _max_degree(args, delta.arity)
    if n < 2:
        raise CommandError("generators need --max-degree of at least 2", EXIT_USAGE)
    algebra = _algebra_generators(args.partition, n, args.compute_invariants)
    if args.lift:
        if args.partition[-1] != 0 or len(args.partition) < 2:
            raise CommandError("--lift needs a partition ending in a 0 cell after a nonempty prefix", EXIT_USAGE)
        base = args.partition[:-1]
        base_delta = Derivation.from_partition(base)
        base_alg = _algebra_generators(base, n, args.compute_invariants)
        base_set = module_generators(base_delta, base_alg, n, relations=False)
        lifted = lift_generators(delta, [g.element for g in base_set.module], base_alg)
        gens = module_generators(delta, algebra, n, module=[lie_from_wreath(u) for u in lifted])
    else:
        gens = module_generators(delta, algebra, n)
    doc = gens.to_json()
    doc["certified_degree"] = n
    if args.json:
        return _dump(doc)
    out = [f"{delta}: generators certified through degree {n}\n", "algebra generators:\n"]
    out += [f"  f{i} = {f.format()}\n" for i, f in enumerate(gens.algebra, start=1)]
    out.append("module generators:\n")
    out += [f"  c{i} = {g.element.format()}   bidegree {g.bidegree}\n" for i, g in enumerate(gens.module, start=1)]
    out.append(f"relations ({len(gens.relations)}):\n")
    out += [f"  {r.label}: {r.format()}\n" for r in gens.relations]
    return "".join(out)


def cmd_verify(args) -> str:
    try:
        checks = corpus.verify(args.example, omega_check=not args.skip_omega)
    except corpus.UnknownExampleError as exc:
        raise CommandError(str(exc.args[0]), EXIT_USAGE) from None
    failed = [c for c in checks if not c.passed]
    if args.json:
        text = _dump({"example": args.example, "passed": not failed, "checks": [c.to_json() for c in checks]})
    else:
        text = "".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail and not c.passed else "")
                       + "\n" for c in checks)
        text += f"{len(checks) - len(failed)}/{len(checks)} checks passed\n"
    if failed:
        _emit(text, args.out)
        raise CommandError(f"check failed: {failed[0].name}", EXIT_CHECK_FAILED)
    return text


def cmd_pi(args) -> str:
    try:
        p = parse_polynomial(args.polynomial, args.dim - 1)
    except ParseError as exc:
        raise CommandError(str(exc), EXIT_USAGE) from None
    try:
        u = pi_map(p, args.dim)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_USAGE) from None
    e = lie_from_wreath(u)
    if args.json:
        return _dump({"polynomial": p.format(), "d": args.dim, "image": e.to_json()})
    return e.format() + "\n"


def cmd_corpus(args) -> str:
    if args.action == "rebuild":
        paths = corpus.rebuild(args.out_dir)
        return "".join(f"wrote {p}\n" for p in paths)
    stale = [ex for ex in corpus.catalog.EXAMPLE_IDS if corpus.load(ex) != corpus.build(ex)]
    if stale:
        raise CommandError(f"shipped corpus differs from rebuilt for: {', '.join(stale)}", EXIT_CHECK_FAILED)
    return "corpus up to date\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wdk", description="Constants of Weitzenböck derivations "
                                     "on free metabelian Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, partition=True, space=True):
        if partition:
            p.add_argument("--partition", type=_partition, required=True, help="Jordan cell sizes minus one, e.g. 3,1")
            p.add_argument("--max-degree", type=_positive, default=None,
                           help="degree bound N (default 8 for d <= 5, 6 otherwise)")
        if space:
            p.add_argument("--space", choices=["poly", "commutator", "lie"], default="lie")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    p = sub.add_parser("hilbert", help="Hilbert series of the constants")
    common(p)
    p.add_argument("--bigraded", action="store_true")
    p.add_argument("--closed-form", action="store_true", help="compute a closed form by the Omega calculus")
    p.add_argument("--truncate", action="store_true", help="fall back to a truncated series if the closed form fails")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("kernel-dims", help="dimensions of the kernel by exact nullspaces")
    common(p)
    p.add_argument("--bigraded", action="store_true")
    p.set_defaults(func=cmd_kernel_dims)

    p = sub.add_parser("generators", help="module generators and relations")
    common(p, space=False)
    p.add_argument("--lift", action="store_true", help="lift generators along the trailing 1x1 cell")
    p.add_argument("--compute-invariants", action="store_true",
                   help="compute invariant generators when no tabulated list exists")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("verify", help="check a reference example against the corpus")
    p.add_argument("--example", required=True, help="one of " + ", ".join(corpus.catalog.EXAMPLE_IDS))
    p.add_argument("--skip-omega", action="store_true", help="skip the closed-form Omega checks (3.4 only)")
    common(p, partition=False, space=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pi", help="image of a polynomial in x1..x_{d-1} under pi")
    p.add_argument("polynomial")
    p.add_argument("--dim", type=_positive, required=True, help="target number of variables d")
    common(p, partition=False, space=False)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("corpus", help="maintain the golden corpus")
    p.add_argument("action", choices=["rebuild", "check"])
    p.add_argument("--out-dir", default=None, help="directory for rebuilt files (default: shipped location)")
    p.set_defaults(func=cmd_corpus, json=False, out=None)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except CommandError as exc:
        print(f"wdk: {exc}", file=sys.stderr)
        return exc.code
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
