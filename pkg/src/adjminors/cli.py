"""Command line interface: ``adjminors <command> <config> ...``.

Configurations and tables are read from ``@path``, ``fixture:NAME``, ``-``
(stdin) or the literal argument.  In a literal ASCII grid '/' may stand for
a line break, so ``'##/.#'`` is a two-row grid.

Default caps come from ``ADJMINORS_CAPS``, e.g.
``ADJMINORS_CAPS="admissible=50000,degree=20,saturation=30,nodes=20000"``;
``--cap`` on a command overrides the relevant one.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Callable, TextIO

from . import __version__
from .classify import has_quadratic_gb, is_prime, radical_verdict
from .errors import AdjMinorsError, ParseError, UsageError
from .fiber import (
    DEFAULT_NODE_CAP,
    Table,
    bfs_fiber,
    connected,
    format_table,
    margins,
    parse_table,
    random_walk,
    table_document,
    table_from_document,
)
from .fixtures import Fixture, load_fixture
from .grid import (
    Cell,
    Configuration,
    ShapeKind,
    classify_shape,
    connected_components,
    detect_motifs,
    is_chessboard,
    is_special,
    parse_configuration,
    to_ascii,
    to_document,
)
from .groebner import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_SATURATION_CAP,
    Binomial,
    VariableRanking,
    configuration_ideal,
    default_ranking,
    format_binomial,
    member,
    parse_binomial,
    reduced_basis,
    saturate,
)
from .primes import (
    COMPLEMENT,
    DEFAULT_ADMISSIBLE_CAP,
    REGION_MODES,
    all_components,
    component_document,
    format_component,
    minimal_primes,
)

CAPS_ENV = "ADJMINORS_CAPS"
DEFAULT_CAPS = {
    "admissible": DEFAULT_ADMISSIBLE_CAP,
    "degree": DEFAULT_DEGREE_CAP,
    "saturation": DEFAULT_SATURATION_CAP,
    "nodes": DEFAULT_NODE_CAP,
}


def read_caps(environ=None) -> dict[str, int]:
    environ = os.environ if environ is None else environ
    caps = dict(DEFAULT_CAPS)
    raw = environ.get(CAPS_ENV, "").strip()
    if not raw:
        return caps
    for item in raw.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in caps:
            raise ParseError(f"{CAPS_ENV}: cannot read {item!r}; known caps are {', '.join(caps)}")
        try:
            caps[key] = int(value)
        except ValueError:
            raise ParseError(f"{CAPS_ENV}: {key} must be an integer") from None
    return caps


@dataclass
class Input:
    config: Configuration
    fixture: Fixture | None = None

    @property
    def labels(self) -> dict[str, Cell] | None:
        return self.fixture.labels if self.fixture and self.fixture.labels else None

    @property
    def names(self) -> dict[Cell, str] | None:
        return self.fixture.names if self.fixture and self.fixture.labels else None


def _read_source(arg: str, stdin: TextIO) -> str:
    if arg == "-":
        return stdin.read()
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


def load_input(arg: str | None, fixture: str | None, stdin: TextIO) -> Input:
    if fixture is not None:
        if arg is not None:
            raise ParseError("give either a configuration or --fixture, not both")
        arg = "fixture:" + fixture
    if arg is None:
        raise ParseError("no configuration given")
    if arg.startswith("fixture:"):
        try:
            fx = load_fixture(arg[len("fixture:"):])
        except KeyError as exc:
            raise ParseError(exc.args[0]) from None
        return Input(fx.config, fx)
    text = _read_source(arg, stdin)
    if not arg.startswith("@") and arg != "-" and not text.lstrip().startswith("{"):
        text = text.replace("/", "\n")
    return Input(parse_configuration(text))


def load_table(arg: str, stdin: TextIO) -> Table:
    return parse_table(_read_source(arg, stdin))


# -- report builders -------------------------------------------------------------


def _cell(c: Cell) -> list[int]:
    return [c.row, c.col]


def _binomial_text(b: Binomial, inp: Input) -> str:
    return format_binomial(b, inp.names)


def _classify(args, inp: Input, caps) -> dict:
    config = inp.config
    comps = []
    for comp in connected_components(config):
        shape = classify_shape(comp)
        comps.append(
            {
                "anchors": [_cell(a) for a in comp.anchors],
                "shape": shape.kind.value,
                "ordering": [_cell(a) for a in shape.ordering] if shape.kind is not ShapeKind.OTHER else [],
                "endpoints": [[_cell(p), _cell(q)] for p, q in shape.endpoints],
            }
        )
    prime = is_prime(config)
    cert = has_quadratic_gb(config)
    verdict = radical_verdict(config)
    return {
        "configuration": to_document(config),
        "components": comps,
        "chessboard": is_chessboard(config),
        "special": is_special(config),
        "motifs": [
            {"kind": m.kind.value, "placement": [_cell(a) for a in m.placement]}
            for m in sorted(detect_motifs(config))
        ],
        "prime": prime.prime,
        "prime_reason": prime.reason,
        "prime_evidence": {
            "edge_pair": [_cell(a) for a in prime.edge_pair] if prime.edge_pair else None,
            "four_cycle": [_cell(a) for a in prime.four_cycle] if prime.four_cycle else None,
        },
        "quadratic_gb": cert is not None,
        "quadratic_certificate": None
        if cert is None
        else {
            "marking": [[a.row, a.col, c.value] for a, c in cert.marking.items()],
            "ranking": [_cell(v) for v in cert.ranking.order],
            "verified": cert.verified,
        },
        "radical": verdict.status.value,
        "radical_reason": verdict.reason,
        "radical_witness": None if verdict.witness is None else _binomial_text(verdict.witness, inp),
    }


def _pretty_classify(report: dict, inp: Input) -> str:
    lines = [to_ascii(inp.config) or "(empty configuration)", ""]
    for k, comp in enumerate(report["components"], start=1):
        lines.append(f"component {k}: {len(comp['anchors'])} boxes, {comp['shape']}")
    lines.append(f"chessboard: {report['chessboard']}  special: {report['special']}")
    if report["motifs"]:
        lines.append("motifs: " + ", ".join(m["kind"] for m in report["motifs"]))
    lines.append(f"prime: {report['prime']} ({report['prime_reason']})")
    lines.append(f"quadratic Gröbner basis: {report['quadratic_gb']}")
    lines.append(f"radical: {report['radical']} ({report['radical_reason']})")
    if report["radical_witness"]:
        lines.append(f"witness: {report['radical_witness']}")
    return "\n".join(lines)


def _components_report(comps, inp: Input) -> dict:
    return {
        "configuration": to_document(inp.config),
        "count": len(comps),
        "components": [
            dict(component_document(p), text=format_component(p, inp.names)) for p in comps
        ],
    }


def _pretty_components(report: dict, inp: Input) -> str:
    lines = [f"{report['count']} components"]
    lines.extend("  " + c["text"] for c in report["components"])
    return "\n".join(lines)


def _primes(args, inp: Input, caps) -> dict:
    cap = args.cap if args.cap is not None else caps["admissible"]
    if args.all:
        comps = all_components(inp.config, cap, args.region)
    else:
        comps = minimal_primes(inp.config, cap, args.region)
    return _components_report(comps, inp)


def _decompose(args, inp: Input, caps) -> dict:
    cap = args.cap if args.cap is not None else caps["admissible"]
    return _components_report(minimal_primes(inp.config, cap, args.region), inp)


def _parse_ranking(text: str, inp: Input) -> VariableRanking:
    text = text.strip()
    if text.startswith("["):
        try:
            cells = [Cell(*p) for p in json.loads(text)]
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"ranking must be a list of [row, col] pairs: {exc}") from None
    elif inp.labels and all(ch in inp.labels for ch in text):
        cells = [inp.labels[ch] for ch in text]
    else:
        raise ParseError("ranking must be a JSON list of [row, col] pairs or a string of fixture labels")
    if sorted(cells) != sorted(inp.config.vertex_set) or len(set(cells)) != len(cells):
        raise ParseError("ranking must list every vertex of the configuration exactly once")
    return VariableRanking(tuple(cells))


def _basis_report(elements, ranking: VariableRanking, inp: Input) -> dict:
    return {
        "configuration": to_document(inp.config),
        "ranking": [_cell(v) for v in ranking.order],
        "count": len(elements),
        "elements": [_binomial_text(b, inp) for b in elements],
    }


def _pretty_basis(report: dict, inp: Input) -> str:
    return "\n".join([f"{report['count']} elements"] + ["  " + e for e in report["elements"]])


def _gb(args, inp: Input, caps) -> dict:
    ranking = _parse_ranking(args.ranking, inp) if args.ranking else default_ranking(inp.config.vertex_set)
    cap = args.cap if args.cap is not None else caps["degree"]
    basis = reduced_basis(configuration_ideal(inp.config), ranking, cap)
    return _basis_report(basis.elements, ranking, inp)


def _saturate(args, inp: Input, caps) -> dict:
    cap = args.cap if args.cap is not None else caps["saturation"]
    ranking = default_ranking(inp.config.vertex_set)
    gens = saturate(configuration_ideal(inp.config), cap, ranking=ranking)
    return _basis_report(gens, ranking, inp)


def _member(args, inp: Input, caps) -> dict:
    f = parse_binomial(args.binomial, inp.labels)
    variables = set(inp.config.vertex_set) | f.variables()
    ranking = default_ranking(variables)
    cap = args.cap if args.cap is not None else caps["degree"]
    basis = reduced_basis(configuration_ideal(inp.config), ranking, cap)
    return {
        "configuration": to_document(inp.config),
        "binomial": _binomial_text(f, inp),
        "member": member(f, basis),
    }


def _connect(args, inp: Input, caps, stdin) -> dict:
    t1, t2 = load_table(args.table_a, stdin), load_table(args.table_b, stdin)
    cap = args.cap if args.cap is not None else caps["nodes"]
    verdict = connected(t1, t2, inp.config, args.oracle, cap, caps["admissible"], args.region)
    return {
        "configuration": to_document(inp.config),
        "status": verdict.status.value,
        "evidence": verdict.evidence,
        "component": None if verdict.component is None else component_document(verdict.component),
        "component_text": None if verdict.component is None else format_component(verdict.component, inp.names),
        "explored": verdict.explored,
    }


def _fiber(args, inp: Input, caps, stdin) -> dict:
    table = load_table(args.table, stdin)
    cap = args.cap if args.cap is not None else caps["nodes"]
    tables = sorted(bfs_fiber(inp.config, table, cap), key=lambda t: t.entries)
    return {
        "configuration": to_document(inp.config),
        "count": len(tables),
        "tables": [table_document(t) for t in tables],
    }


def _pretty_fiber(report: dict, inp: Input) -> str:
    blocks = [f"{report['count']} tables"]
    for doc in report["tables"]:
        blocks.append(format_table(table_from_document(doc), inp.config))
    return "\n\n".join(blocks)


def _walk(args, inp: Input, caps, stdin) -> dict:
    table = load_table(args.table, stdin)
    final = random_walk(inp.config, table, args.steps, args.seed)
    assert margins(final, inp.config) == margins(table, inp.config)
    return {
        "configuration": to_document(inp.config),
        "steps": args.steps,
        "seed": args.seed,
        "table": table_document(final),
    }


def _pretty_walk(report: dict, inp: Input) -> str:
    return format_table(table_from_document(report["table"]), inp.config)


def _pretty_connect(report: dict, inp: Input) -> str:
    lines = [f"{report['status']}: {report['evidence']}"]
    if report["component_text"]:
        lines.append(f"failing component: {report['component_text']}")
    if report["explored"] is not None:
        lines.append(f"tables explored: {report['explored']}")
    return "\n".join(lines)


def _pretty_generic(report: dict, inp: Input) -> str:
    return "\n".join(f"{k}: {v}" for k, v in sorted(report.items()) if k != "configuration")


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="adjminors",
        description="Ideals of adjacent 2-minors: classification, minimal primes, "
        "Gröbner bases and contingency-table fibers.",
        epilog=f"Default caps can be set with {CAPS_ENV}=admissible=N,degree=N,saturation=N,nodes=N.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.add_argument("config", nargs="?", help="@file, fixture:NAME, - for stdin, or an inline grid/document")
        p.add_argument("--fixture", metavar="NAME", help="use a bundled fixture as the configuration")
        p.add_argument("--format", choices=("structured", "pretty"), default="structured")
        p.add_argument("--timing", action="store_true", help="print the elapsed time to stderr")
        return p

    def region(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--region",
            choices=REGION_MODES,
            default=COMPLEMENT,
            help="inner minors over V(C) minus W (complement) or over the boxes avoiding W (subconfig)",
        )

    command("classify", "components, shapes, primality, quadratic GB and radicality")
    p = command("primes", "minimal prime components (or all with --all)")
    p.add_argument("--all", action="store_true", help="list every admissible component")
    p.add_argument("--cap", type=int, help="admissible-set cap")
    region(p)
    p = command("decompose", "irredundant decomposition of the radical (special configurations)")
    p.add_argument("--cap", type=int, help="admissible-set cap")
    region(p)
    p = command("gb", "reduced lex Gröbner basis of I(C)")
    p.add_argument("--ranking", help="variable order, largest first: JSON [[r,c],...] or fixture letters")
    p.add_argument("--cap", type=int, help="degree cap")
    p = command("member", "is a binomial in I(C)?")
    p.add_argument("binomial", help='e.g. "x[1,1]*x[2,2]-x[1,2]*x[2,1]", or letters with a fixture')
    p.add_argument("--cap", type=int, help="degree cap")
    p = command("saturate", "generators of I(C) saturated at the product of all variables")
    p.add_argument("--cap", type=int, help="degree cap")
    p = command("connect", "are two tables connected by adjacent moves?")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.add_argument("--oracle", action="store_true", help="settle Unknown answers by fiber search")
    p.add_argument("--cap", type=int, help="node cap for the fiber search")
    region(p)
    p = command("fiber", "all tables reachable from a table")
    p.add_argument("table")
    p.add_argument("--cap", type=int, help="node cap")
    p = command("walk", "random walk of adjacent moves")
    p.add_argument("table")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    return parser


_HANDLERS: dict[str, tuple[Callable, Callable]] = {
    "classify": (_classify, _pretty_classify),
    "primes": (_primes, _pretty_components),
    "decompose": (_decompose, _pretty_components),
    "gb": (_gb, _pretty_basis),
    "member": (_member, _pretty_generic),
    "saturate": (_saturate, _pretty_basis),
    "connect": (_connect, _pretty_connect),
    "fiber": (_fiber, _pretty_fiber),
    "walk": (_walk, _pretty_walk),
}
_NEEDS_STDIN = {"connect", "fiber", "walk"}


def main(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"{exc.tag}: {exc}", file=stderr)
        return exc.exit_code
    start = time.perf_counter()
    try:
        caps = read_caps()
        inp = load_input(args.config, args.fixture, stdin)
        build, pretty = _HANDLERS[args.command]
        report = build(args, inp, caps, stdin) if args.command in _NEEDS_STDIN else build(args, inp, caps)
    except AdjMinorsError as exc:
        print(f"{exc.tag}: {exc}", file=stderr)
        return exc.exit_code
    if args.format == "pretty":
        print(pretty(report, inp), file=stdout)
    else:
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False), file=stdout)
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=stderr)
    return 0


def run_command(argv, stdin_text: str = "") -> tuple[int, str, str]:
    """Run one command in-process and capture (exit code, stdout, stderr)."""
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    # argparse writes usage errors and --help straight to sys.stdout/sys.stderr
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv, io.StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
