"""Command-line front end: ``toric-ech <subcommand> ...``.

Exit status: 0 for the positive outcome of a subcommand (noncontractible,
obstruction found, ball found, cylinders ruled out), 1 for the negative one,
2 for inconclusive, and sysexits-style codes above that for errors.  Output is
buffered and written once; on any error nothing reaches stdout.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .curves import (
    CurveHomologyData,
    Range,
    UniquenessVerdict,
    adjunction_delta,
    automatic_transversality,
    fredholm_index,
    two_cylinder_uniqueness,
)
from .domains import ConvexToricDomain, ToricError, as_rational, check_ball_sandwich
from .ech import (
    capacities,
    ech_index,
    enumerate_scored_generators,
    generator_action,
    lattice_count,
)
from .obstructions import (
    CertificateReport,
    Verdict,
    breaking_analysis,
    embedding_obstruction,
    noncontractibility_certificate,
)
from .orbits import e, enumerate_orbit_families
from .schema import (
    SchemaError,
    domain_to_json,
    dumps,
    end_from_json,
    generator_from_json,
    generator_to_json,
    load_domain,
    load_json,
    orbit_set_to_json,
)
from .svg import render_plot

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_IOERR = 64, 65, 66, 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "inconclusive" here
        raise UsageError(f"{self.prog}: {message}")


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ToricError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


class Output:
    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        if not self.as_json:
            self.lines.append(line)

    def json(self, payload) -> None:
        if self.as_json:
            self.lines.append(dumps(payload).rstrip("\n"))

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines)


# subcommands ---------------------------------------------------------------

def cmd_capacities(args, out: Output) -> int:
    dom = load_domain(args.domain)
    seq = capacities(dom, args.k)
    out.json({"domain": domain_to_json(dom), "capacities": [str(v) for v in seq.values],
              **({"witnesses": [generator_to_json(w) for w in seq.witnesses]} if args.witness else {})})
    out.text(" ".join(str(v) for v in seq.values))
    if args.witness:
        for k, (v, w) in enumerate(zip(seq.values, seq.witnesses)):
            out.text(f"c_{k} = {v}  via {w}")
    return EXIT_POSITIVE


def cmd_orbits(args, out: Output) -> int:
    dom = load_domain(args.domain)
    fams = enumerate_orbit_families(dom, args.action) if args.action > 0 else []
    out.json({"domain": domain_to_json(dom), "bound": str(args.action),
              "orbits": [{"p": f.label.p, "q": f.label.q, "kind": f.label.kind.value,
                          "action": str(f.action)} for f in fams]})
    for fam in fams:
        out.text(f"{str(fam.label):<12} {fam.action}")
    return EXIT_POSITIVE


def cmd_generators(args, out: Output) -> int:
    dom = load_domain(args.domain)
    found = enumerate_scored_generators(dom, args.budget, all_e=args.all_e)
    out.json({"domain": domain_to_json(dom), "budget": str(args.budget),
              "generators": [{"edges": generator_to_json(s.generator)["edges"],
                              "orbit_set": orbit_set_to_json(s.generator.to_orbit_set()),
                              "action": str(s.action), "index": s.index} for s in found]})
    for s in found:
        out.text(f"A={s.action}  I={s.index}  {s.generator}")
    return EXIT_POSITIVE


def cmd_index(args, out: Output) -> int:
    gen = generator_from_json(load_json(args.generator))
    dom = load_domain(args.domain)
    idx, count, act = ech_index(gen), lattice_count(gen), generator_action(gen, dom)
    out.json({"generator": generator_to_json(gen), "orbit_set": orbit_set_to_json(gen.to_orbit_set()),
              "lattice_count": count, "index": idx, "action": str(act)})
    out.text(f"{gen}: L={count} I={idx} A={act}")
    return EXIT_POSITIVE


def cmd_check_embed(args, out: Output) -> int:
    src, dst = load_domain(args.source), load_domain(args.target)
    k = embedding_obstruction(src, dst, args.k)
    out.json({"source": domain_to_json(src), "target": domain_to_json(dst), "k_max": args.k,
              "obstructed": k is not None, "k": k})
    out.text(f"obstructed at k={k}" if k is not None else f"no obstruction up to k={args.k}")
    return EXIT_POSITIVE if k is not None else EXIT_NEGATIVE


_VERDICT_TEXT = {
    Verdict.NONCONTRACTIBLE: "NONCONTRACTIBLE",
    Verdict.CONTRACTIBLE_BY_BALL_SANDWICH: "CONTRACTIBLE (ball sandwich)",
    Verdict.INCONCLUSIVE: "INCONCLUSIVE",
}
_VERDICT_EXIT = {
    Verdict.NONCONTRACTIBLE: EXIT_POSITIVE,
    Verdict.CONTRACTIBLE_BY_BALL_SANDWICH: EXIT_NEGATIVE,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _certificate_lines(report: CertificateReport) -> list[str]:
    lines = [_VERDICT_TEXT[report.verdict]]
    lines.append(f"  nested: {'yes' if report.nested else 'no'}")
    for ch in report.checks:
        mark = "ok  " if ch.passed else "FAIL"
        lines.append(f"  [{mark}] {ch.name}: {ch.left} {ch.relation} {ch.right}")
    if report.ball_interval is not None:
        lines.append(f"  ball radii: [{report.ball_interval.lo}, {report.ball_interval.hi}]")
    return lines


def cmd_certify_loop(args, out: Output) -> int:
    report = noncontractibility_certificate(load_domain(args.inner), load_domain(args.outer))
    out.json(report)
    for line in _certificate_lines(report):
        out.text(line)
    return _VERDICT_EXIT[report.verdict]


def cmd_check_ball(args, out: Output) -> int:
    inner, outer = load_domain(args.inner), load_domain(args.outer)
    interval = check_ball_sandwich(inner, outer)
    out.json({"inner": domain_to_json(inner), "outer": domain_to_json(outer),
              "ball_interval": None if interval is None else [str(interval.lo), str(interval.hi)]})
    if interval is None:
        out.text("no ball fits between the domains")
        return EXIT_NEGATIVE
    out.text(f"ball radii: [{interval.lo}, {interval.hi}]")
    return EXIT_POSITIVE


def cmd_breaking(args, out: Output) -> int:
    report = breaking_analysis(load_domain(args.inner), load_domain(args.outer))
    out.json(report)
    lo, hi = report.window
    out.text(f"window: [{lo}, {hi}]")
    out.text("survivors: " + (", ".join(str(s) for s in report.survivors) or "none"))
    out.text(f"hypothesis held: {'yes' if report.hypothesis_held else 'no'}")
    for cand in report.candidates:
        out.text(f"  {str(cand.orbit_set):<24} A={cand.action}  I={cand.index}  {cand.status.value}")
    for note in report.notes + report.consistency_failures:
        out.text(f"note: {note}")
    only_e01 = [str(s) for s in report.survivors] == [str(e(0, 1))]
    return EXIT_POSITIVE if report.hypothesis_held and only_e01 else EXIT_INCONCLUSIVE


def _writhe_from_json(value, where: str):
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, dict):
        lo, hi = value.get("lo"), value.get("hi")
        if all(v is None or (isinstance(v, int) and not isinstance(v, bool)) for v in (lo, hi)):
            return Range(lo, hi)
    raise SchemaError(f"{where}: writhe must be an integer or {{\"lo\": .., \"hi\": ..}}")


def _int_in(obj: dict, key: str, where: str, default: Optional[int] = None) -> int:
    value = obj.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}.{key}: expected an integer")
    return value


def cmd_curve_check(args, out: Output) -> int:
    config = load_json(args.config)
    if not isinstance(config, dict) or not config.keys() & {"fredholm", "adjunction", "uniqueness"}:
        raise SchemaError("curve config needs a \"fredholm\", \"adjunction\" or \"uniqueness\" section")
    result: dict = {}
    status = EXIT_POSITIVE
    if "fredholm" in config:
        sec = config["fredholm"]
        if not isinstance(sec, dict) or not isinstance(sec.get("ends", []), list):
            raise SchemaError("fredholm: expected an object with an \"ends\" list")
        ends = [end_from_json(ed, f"fredholm.ends[{i}]") for i, ed in enumerate(sec.get("ends", []))]
        ind = fredholm_index(_int_in(sec, "chi", "fredholm", 0), _int_in(sec, "c_tau", "fredholm", 0), ends)
        genus, h_plus = _int_in(sec, "genus", "fredholm", 0), _int_in(sec, "h_plus", "fredholm", 0)
        transversal = automatic_transversality(genus, h_plus, ind)
        result["fredholm"] = {"index": ind, "automatic_transversality": transversal}
        out.text(f"ind = {ind}")
        out.text(f"automatic transversality (2g-2+h+ = {2 * genus - 2 + h_plus} < ind): "
                 f"{'yes' if transversal else 'no'}")
    if "adjunction" in config:
        sec = config["adjunction"]
        if not isinstance(sec, dict) or "writhe" not in sec:
            raise SchemaError("adjunction: expected an object with a \"writhe\"")
        data = CurveHomologyData(_int_in(sec, "chi", "adjunction", 0), _int_in(sec, "c_tau", "adjunction", 0),
                                 _int_in(sec, "Q_tau", "adjunction", 0),
                                 _writhe_from_json(sec["writhe"], "adjunction.writhe"))
        delta = adjunction_delta(data)
        result["adjunction"] = {"delta": delta}
        if isinstance(delta, Range):
            out.text(f"delta in [{'-inf' if delta.lo is None else delta.lo}, "
                     f"{'inf' if delta.hi is None else delta.hi}]")
        else:
            out.text(f"delta = {delta}")
    if "uniqueness" in config:
        sec = config["uniqueness"]
        if not isinstance(sec, dict):
            raise SchemaError("uniqueness: expected an object")
        res = two_cylinder_uniqueness(_int_in(sec, "cz_top", "uniqueness", 1),
                                      _int_in(sec, "cz_bottom", "uniqueness", 1))
        result["uniqueness"] = {"verdict": res.verdict, "trace": res.trace}
        for step in res.trace:
            out.text(f"  {step.quantity} {step.relation} {step.value}")
        out.text(res.verdict.value)
        status = EXIT_POSITIVE if res.verdict is UniquenessVerdict.IMPOSSIBLE else EXIT_NEGATIVE
    out.json(result)
    return status


def cmd_plot(args, out: Output) -> int:
    if not args.domains:
        raise UsageError("plot: at least one domain file is required")
    domains: list[ConvexToricDomain] = [load_domain(p) for p in args.domains]
    seqs = [capacities(d, args.capacities).values for d in domains] if args.capacities else []
    svg = render_plot(domains, seqs)
    if args.svg is None:
        out.lines.append(svg.rstrip("\n"))
        return EXIT_POSITIVE
    try:
        Path(args.svg).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise _WriteError(f"{args.svg}: {exc.strerror or exc}") from None
    out.json({"svg": str(args.svg), "domains": [domain_to_json(d) for d in domains]})
    out.text(f"wrote {args.svg}")
    return EXIT_POSITIVE


class _WriteError(Exception):
    pass


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print nothing; report only through the exit status")

    parser = _Parser(prog="toric-ech", parents=[common],
                     description="ECH capacities and loop certificates for convex toric domains.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("capacities", cmd_capacities, "print ECH capacities c_0 .. c_K")
    p.add_argument("domain")
    p.add_argument("--k", type=_nonneg_int, default=10)
    p.add_argument("--witness", action="store_true", help="also print a minimizing generator")

    p = add("orbits", cmd_orbits, "list embedded Reeb orbits up to an action bound")
    p.add_argument("domain")
    p.add_argument("--action", type=_rational_arg, required=True)

    p = add("generators", cmd_generators, "list convex generators up to an action budget")
    p.add_argument("domain")
    p.add_argument("--budget", type=_rational_arg, required=True)
    p.add_argument("--all-e", action="store_true", help="only generators without h labels")

    p = add("index", cmd_index, "ECH index and action of a generator")
    p.add_argument("generator")
    p.add_argument("domain")

    p = add("check-embed", cmd_check_embed, "look for a capacity obstruction to source -> target")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--k", type=_nonneg_int, default=20)

    p = add("certify-loop", cmd_certify_loop, "decide the loop certificate for inner in outer")
    p.add_argument("inner")
    p.add_argument("outer")

    p = add("check-ball", cmd_check_ball, "look for a ball between inner and outer")
    p.add_argument("inner")
    p.add_argument("outer")

    p = add("breaking", cmd_breaking, "orbit sets through which the cylinders could break")
    p.add_argument("inner")
    p.add_argument("outer")

    p = add("curve-check", cmd_curve_check, "index, adjunction and uniqueness arithmetic")
    p.add_argument("config")

    p = add("plot", cmd_plot, "render profiles (and capacity staircases) as SVG")
    p.add_argument("domains", nargs="*")
    p.add_argument("--capacities", type=_nonneg_int, default=0, metavar="K")
    p.add_argument("--svg", default=None, metavar="OUT")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    as_json, quiet = getattr(args, "json", False), getattr(args, "quiet", False)
    out = Output(as_json)
    try:
        status = args.func(args, out)
    except UsageError as exc:
        print(f"toric-ech: {exc}", file=sys.stderr)
        return EX_USAGE
    except SchemaError as exc:
        print(f"toric-ech: {exc}", file=sys.stderr)
        return EX_USAGE
    except ToricError as exc:
        print(f"toric-ech: invalid data: {exc}", file=sys.stderr)
        return EX_DATAERR
    except FileNotFoundError as exc:
        print(f"toric-ech: {exc.filename}: no such file", file=sys.stderr)
        return EX_NOINPUT
    except _WriteError as exc:
        print(f"toric-ech: cannot write {exc}", file=sys.stderr)
        return EX_IOERR
    except OSError as exc:
        print(f"toric-ech: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EX_IOERR
    if not quiet:
        sys.stdout.write(out.render())
        sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
