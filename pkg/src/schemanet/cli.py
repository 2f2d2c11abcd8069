"""
Command-line interface for schemanet.

Provides commands for validating knowledge bases, grounding them into
networks, answering queries and running command scripts.

Exit codes: 0 on success, 1 on a domain error (diagnostics, cycles, unknown
nodes, impossible evidence), 2 on I/O or usage errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import API_HOST, API_PORT, LOG_LEVEL
from .errors import InvalidKnowledgeBase, ParseError, SchemaNetError
from .grounding import to_dot, write_dot
from .knowledge import validate_kb
from .models import QueryResult, Severity
from .parsing import parse_kb
from .session import Session, describe, load_kb, load_script, parse_bool, parse_members

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Malformed command-line value."""


def _session(args) -> Session:
    session = Session(load_kb(args.kb), oracle=getattr(args, "oracle", False))
    for entry in args.member or []:
        try:
            type_name, constants = parse_members(entry)
            session.add_members(type_name, constants)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return session


def _print_result(result: QueryResult, evidence: dict[str, bool], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({
            "query": result.query,
            "p_true": result.p_true,
            "evidence_probability": result.evidence_probability,
        }))
    else:
        print(describe(result, evidence))


def cmd_validate(args) -> int:
    """Check a knowledge base and print its diagnostics."""
    parsed = parse_kb(Path(args.kb).read_bytes())
    for diagnostic in parsed.diagnostics:
        print(f"{args.kb}:{diagnostic}")
    if parsed.kb is None:
        return EXIT_DOMAIN

    diagnostics = validate_kb(parsed.kb)
    for diagnostic in diagnostics:
        print(f"{args.kb}: {diagnostic}")
    if diagnostics:
        return EXIT_DOMAIN

    kb = parsed.kb
    print(f"ok: {len(kb.schemata)} schemata, {len(kb.types)} types, {len(kb.priors)} priors")
    return EXIT_OK


def cmd_ground(args) -> int:
    """Ground a knowledge base and report the network size."""
    net = _session(args).net
    print(f"{len(net)} nodes, {len(net.arcs())} arcs")
    if args.dot == "-":
        sys.stdout.write(to_dot(net))
    elif args.dot:
        write_dot(net, Path(args.dot))
    return EXIT_OK


def cmd_query(args) -> int:
    """Answer posterior queries under the given evidence."""
    session = _session(args)
    for entry in args.observe or []:
        name, sep, value = entry.rpartition("=")
        if not sep or not name.strip():
            raise UsageError(f"expected atom=true|false but got '{entry}'")
        try:
            session.observe(name, parse_bool(value))
        except ValueError as e:
            raise UsageError(str(e)) from None

    for name in args.query:
        _print_result(session.query(name), session.evidence, args.format)
    return EXIT_OK


def cmd_run(args) -> int:
    """Execute a script of member / observe / query commands."""
    script = load_script(args.kb, args.script)
    session = Session(load_kb(script.kb_path), oracle=args.oracle)
    for command in script.commands:
        result = session.apply(command)
        if result is not None:
            _print_result(result, session.evidence, args.format)
    return EXIT_OK


def cmd_serve(args) -> int:
    """Start the HTTP API."""
    import uvicorn

    uvicorn.run("schemanet.api.app:app", host=args.host, port=args.port)
    return EXIT_OK


def _report(error: SchemaNetError) -> None:
    if isinstance(error, (ParseError, InvalidKnowledgeBase)):
        for diagnostic in error.diagnostics:
            severity = getattr(diagnostic, "severity", Severity.ERROR)
            if severity == Severity.ERROR:
                print(f"error: {diagnostic}", file=sys.stderr)
        return
    print(f"error: {error}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schemanet",
        description="Compile probabilistic schemata into Bayesian networks and query them",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # Validate command
    validate_parser = subparsers.add_parser("validate", help="Check a knowledge base")
    validate_parser.add_argument("kb", help="Knowledge base (.skb)")
    validate_parser.set_defaults(func=cmd_validate)

    # Ground command
    ground_parser = subparsers.add_parser("ground", help="Build the ground network")
    ground_parser.add_argument("kb", help="Knowledge base (.skb)")
    ground_parser.add_argument("--member", action="append", metavar="TYPE=C1,C2", help="Run-time members")
    ground_parser.add_argument("--dot", metavar="FILE", help="Write Graphviz DOT ('-' for stdout)")
    ground_parser.set_defaults(func=cmd_ground)

    # Query command
    query_parser = subparsers.add_parser("query", help="Answer posterior queries")
    query_parser.add_argument("kb", help="Knowledge base (.skb)")
    query_parser.add_argument("--member", action="append", metavar="TYPE=C1,C2", help="Run-time members")
    query_parser.add_argument("--observe", action="append", metavar="ATOM=BOOL", help="Evidence")
    query_parser.add_argument("--query", action="append", required=True, metavar="ATOM", help="Query node")
    query_parser.add_argument("--format", choices=["plain", "json"], default="plain", help="Output format")
    query_parser.add_argument("--oracle", action="store_true", help="Use joint enumeration")
    query_parser.set_defaults(func=cmd_query)

    # Run command
    run_parser = subparsers.add_parser("run", help="Execute a command script")
    run_parser.add_argument("kb", help="Knowledge base (.skb)")
    run_parser.add_argument("script", help="Script of member / observe / query commands")
    run_parser.add_argument("--format", choices=["plain", "json"], default="plain", help="Output format")
    run_parser.add_argument("--oracle", action="store_true", help="Use joint enumeration")
    run_parser.set_defaults(func=cmd_run)

    # Serve command
    serve_parser = subparsers.add_parser("serve", help="Start the HTTP API")
    serve_parser.add_argument("--host", default=API_HOST)
    serve_parser.add_argument("--port", type=int, default=API_PORT)
    serve_parser.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaNetError as e:
        _report(e)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
