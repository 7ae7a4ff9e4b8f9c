"""Command-line front end.

Exit codes: 0 CP (or success for commands that do not judge CP),
1 not CP, 2 input error, 3 numerical failure.
"""
import argparse
import sys
from typing import List, Optional

from . import __version__, zoo
from ._kernel import BACKEND
from .analysis import CpReport, Tolerances, _analyze, kraus_from_choi, remix_kraus
from .channels import KrausSet, apply_kraus, apply_superop
from .errors import CpcheckError, NotCp, NumericalFailure
from .linalg import DEFAULT_TOL
from .specfile import SpecError, dump_spec, dumps, encode_matrix, parse_matrix_file, parse_spec, spec_for

EXIT_CP = 0
EXIT_NOT_CP = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read file ({exc.strerror})", path) from None


def _load_spec(path: str):
    return parse_spec(_read(path), path)


def _tolerances(args) -> Tolerances:
    if not args.tol > 0:
        raise SpecError(f"--tol must be positive, got {args.tol}", "--tol")
    return Tolerances.uniform(args.tol)


def build_report(report: CpReport, tol: Tolerances, kraus: Optional[KrausSet] = None, source: Optional[dict] = None) -> dict:
    doc = report.as_dict()
    eigenvalues = doc.pop("eigenvalues")
    if eigenvalues is not None:
        doc["eigenvalues"] = eigenvalues
    if kraus is not None:
        doc["kraus"] = [encode_matrix(m) for m in kraus.matrices]
    doc["tolerances"] = {"herm_tol": tol.herm_tol, "psd_tol": tol.psd_tol, "rank_tol": tol.rank_tol}
    doc["tool_version"] = __version__
    if source:
        doc["input"] = source
    return doc


def _fmt(x: Optional[float]) -> str:
    return "n/a" if x is None else f"{x:.12g}"


def format_report(report: CpReport, tol: Tolerances) -> str:
    yes = {True: "yes", False: "no", None: "n/a"}
    lines = [
        f"hermiticity defect:       {report.hermiticity_defect:.3e} ({yes[report.is_hermitian]})",
        f"eigenvalue range:         [{_fmt(report.min_eigenvalue)}, {_fmt(report.max_eigenvalue)}]",
    ]
    if report.eigenvalues is not None:
        lines.append("eigenvalues:              " + ", ".join(f"{w:.12g}" for w in report.eigenvalues))
    lines += [
        f"zero-diagonal consistent: {yes[report.zero_diag_consistent]}",
        f"positive semidefinite:    {yes[report.is_psd]}",
        f"rank:                     {report.rank}",
    ]
    if report.trace_preserving is not None:
        lines.append(f"trace preserving:         {yes[report.trace_preserving]}")
    lines += [
        f"tolerance (relative):     {tol.psd_tol:g}",
        f"completely positive:      {yes[report.is_cp]}",
    ]
    return "\n".join(lines)


def cmd_check(args) -> int:
    spec = _load_spec(args.input)
    tol = _tolerances(args)
    given = spec.channel if isinstance(spec.channel, KrausSet) else None
    report, eig = _analyze(spec.choi(), tol, given)
    if args.json:
        kraus = kraus_from_choi(spec.choi(), tol) if report.is_cp and report.rank > 0 else None
        source = {"path": args.input, "repr": spec.repr, "dim": spec.dim}
        print(dumps(build_report(report, tol, kraus, source)))
    else:
        print(f"input: {args.input} (repr {spec.repr}, N={spec.dim})")
        print(format_report(report, tol))
    return EXIT_CP if report.is_cp else EXIT_NOT_CP


def cmd_kraus(args) -> int:
    spec = _load_spec(args.input)
    tol = _tolerances(args)
    kraus = kraus_from_choi(spec.choi(), tol)
    print(dump_spec(spec_for(kraus, {"source": args.input})))
    return EXIT_CP


def cmd_remix(args) -> int:
    spec = _load_spec(args.input)
    tol = _tolerances(args)
    u = parse_matrix_file(_read(args.unitary), args.unitary)
    kraus = spec.channel if isinstance(spec.channel, KrausSet) else kraus_from_choi(spec.choi(), tol)
    mixed = remix_kraus(kraus, u, args.tol)
    print(dump_spec(spec_for(mixed, {"source": args.input, "unitary": args.unitary})))
    return EXIT_CP


def cmd_apply(args) -> int:
    spec = _load_spec(args.channel)
    x = parse_matrix_file(_read(args.state), args.state)
    if isinstance(spec.channel, KrausSet):
        y = apply_kraus(spec.channel, x)
    else:
        y = apply_superop(spec.superop(), x)
    print(dumps({"dim": spec.dim, "matrix": encode_matrix(y)}))
    return EXIT_CP


def _parse_params(items: List[str]) -> dict:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise SpecError(f"parameter {item!r} is not of the form name=value", "zoo")
        params[key] = value
    return params


def cmd_zoo(args) -> int:
    params = _parse_params(args.params)
    if args.seed is not None:
        params["seed"] = args.seed
    try:
        entry = zoo.make(args.name, **params)
    except KeyError:
        raise SpecError(f"unknown zoo channel {args.name!r}; available:\n{zoo.usage()}", "zoo") from None
    except CpcheckError as exc:
        raise SpecError(f"{exc}\nusage:\n{zoo.usage()}", "zoo") from None
    meta = {"zoo": entry.name, "parameters": entry.parameters}
    print(dump_spec(spec_for(entry.channel, meta)))
    return EXIT_CP


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpcheck", description="Complete-positivity checks and Kraus decompositions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance (default %(default)g)")
        return p

    p = with_tol(sub.add_parser("check", help="decide complete positivity"))
    p.add_argument("input", help="channel spec file ('-' for stdin)")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_check)

    p = with_tol(sub.add_parser("kraus", help="emit a minimal Kraus set"))
    p.add_argument("input")
    p.set_defaults(func=cmd_kraus)

    p = with_tol(sub.add_parser("remix", help="remix a Kraus set by a unitary"))
    p.add_argument("input")
    p.add_argument("--unitary", required=True, help="matrix file holding the unitary")
    p.set_defaults(func=cmd_remix)

    p = sub.add_parser("apply", help="apply a channel to a matrix")
    p.add_argument("channel")
    p.add_argument("--state", required=True, help="matrix file holding the input")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("zoo", help="emit a named channel as a superop spec", epilog="channels:\n" + zoo.usage(),
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("name")
    p.add_argument("params", nargs="*", metavar="name=value")
    p.add_argument("--seed", type=int, default=None, help="seed for random channels")
    p.set_defaults(func=cmd_zoo)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotCp as exc:
        print(f"not completely positive: {exc}", file=sys.stderr)
        return EXIT_NOT_CP
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SpecError as exc:
        print(f"error: {exc.anchored()}", file=sys.stderr)
        return EXIT_INPUT
    except (CpcheckError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
