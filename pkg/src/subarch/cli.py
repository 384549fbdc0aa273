"""Command-line client for the service.

Every subcommand speaks HTTP to the service layer: against a remote server
when --server is given, otherwise against an in-process instance of the app
(no socket involved). Results print as canonical JSON with --json, otherwise
as short human-readable summaries. Exit codes: 0 success, 1 usage error,
2 validation error, 3 resource or time limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import httpx

from . import __version__
from .architecture import resolve_definition
from .errors import SubarchError, UsageError, ValidationError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3

_CODE_TO_EXIT = {"usage": EXIT_USAGE, "validation": EXIT_VALIDATION, "resource": EXIT_RESOURCE}


class CommandError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    # In-process transport: the CLI works standalone, no server required.
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app)


class Session:
    """One architecture handle's lifetime around a single CLI command."""

    def __init__(self, client: httpx.Client):
        self.client = client
        self.handle: Optional[str] = None

    def request(self, method: str, path: str, **kwargs) -> httpx.Response:
        try:
            response = self.client.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            raise CommandError(f"cannot reach service: {exc}", EXIT_USAGE)
        if response.status_code >= 400:
            try:
                detail = response.json()["detail"]
                code, message = detail["code"], detail["message"]
            except Exception:
                code, message = "usage", response.text.strip()
            raise CommandError(message, _CODE_TO_EXIT.get(code, EXIT_USAGE))
        return response

    def open_architecture(self, spec: str) -> dict:
        try:
            definition = resolve_definition(spec)
        except ValidationError as exc:
            raise CommandError(str(exc), EXIT_VALIDATION)
        info = self.request("POST", "/architectures", json={"definition": definition}).json()
        self.handle = info["handle"]
        return info

    def close(self) -> None:
        if self.handle is not None:
            try:
                self.client.request("DELETE", f"/architectures/{self.handle}")
            except httpx.HTTPError:
                pass
            self.handle = None


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_dot(session: Session, path: str, highlights: list[list[int]]) -> None:
    """One DOT graph per highlighted member; a single plain graph when none."""
    parts = []
    if not highlights:
        highlights = [[]]
    for marked in highlights:
        query = {"highlight": ",".join(str(v) for v in marked)} if marked else {}
        parts.append(
            session.request(
                "GET", f"/architectures/{session.handle}/dot", params=query
            ).text
        )
    Path(path).write_text("\n".join(parts), encoding="utf-8")


def _parse_sizes(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise CommandError(f"cannot parse size list {text!r}", EXIT_USAGE)


def _parse_vertices(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise CommandError(f"cannot parse vertex list {text!r}", EXIT_USAGE)


def cmd_devices(args, session: Session) -> None:
    payload = session.request("GET", "/devices").json()
    if args.json:
        _emit_json(payload)
    else:
        for name in payload["devices"]:
            print(name)


def cmd_census(args, session: Session) -> None:
    session.open_architecture(args.arch)
    payload = session.request(
        "GET", f"/architectures/{session.handle}/census", params={"jobs": args.jobs}
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        print(f"{payload['name']} ({payload['num_qubits']} qubits)")
        for row in payload["rows"]:
            print(f"  size {row['size']:3d}: {row['connected']:8d} connected, {row['classes']:6d} classes")
        print(f"  total: {payload['connected']} connected, {payload['non_isomorphic']} non-isomorphic")
    if args.dot:
        _write_dot(session, args.dot, [])


def cmd_enumerate(args, session: Session) -> None:
    session.open_architecture(args.arch)
    payload = session.request(
        "GET",
        f"/architectures/{session.handle}/subarchitectures",
        params={"size": args.size, "classes": args.classes, "jobs": args.jobs},
    ).json()
    if args.json:
        _emit_json(payload)
    elif args.classes:
        for entry, mult in zip(payload["classes"], payload["multiplicities"]):
            print(f"{entry['vertices']} x{mult}")
    else:
        for subset in payload["subsets"]:
            print(",".join(str(v) for v in subset))
    if args.dot:
        members = payload["classes"] if args.classes else []
        _write_dot(session, args.dot, [m["vertices"] for m in members])


def cmd_candidates(args, session: Session) -> None:
    session.open_architecture(args.arch)
    payload = session.request(
        "GET",
        f"/architectures/{session.handle}/candidates",
        params={"size": args.size, "jobs": args.jobs},
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        print(f"{len(payload['members'])} candidates for {args.size}-qubit circuits")
        for m in payload["members"]:
            print(f"  {m['size']:3d} qubits: {','.join(str(v) for v in m['vertices'])}")
    if args.dot:
        _write_dot(session, args.dot, [m["vertices"] for m in payload["members"]])


def cmd_optimal(args, session: Session) -> None:
    session.open_architecture(args.arch)
    payload = session.request(
        "GET",
        f"/architectures/{session.handle}/optimal",
        params={"size": args.size, "jobs": args.jobs},
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        print(
            f"{len(payload['members'])} optimal candidates "
            f"({payload['member_qubits']} qubits) for {args.size}-qubit circuits"
        )
        for m in payload["members"]:
            print(f"  {','.join(str(v) for v in m['vertices'])}")
    if args.dot:
        _write_dot(session, args.dot, [m["vertices"] for m in payload["members"]])


def cmd_cover(args, session: Session) -> None:
    session.open_architecture(args.arch)
    body = {"size": args.size, "max_elements": args.max, "jobs": args.jobs}
    if args.time_limit is not None:
        body["time_limit"] = args.time_limit
    payload = session.request(
        "POST", f"/architectures/{session.handle}/cover", json=body
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        print(f"covering with {len(payload['members'])} members, sizes {payload['member_sizes']}")
        for m in payload["members"]:
            print(f"  {m['size']:3d} qubits: {','.join(str(v) for v in m['vertices'])}")
    if args.dot:
        _write_dot(session, args.dot, [m["vertices"] for m in payload["members"]])


def cmd_oracle(args, session: Session) -> None:
    session.open_architecture(args.arch)
    try:
        circuit_text = Path(args.circuit).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read circuit file: {exc}", EXIT_VALIDATION)
    body: dict = {"circuit": circuit_text}
    if args.budget is not None:
        body["budget"] = args.budget
    payload = session.request(
        "POST", f"/architectures/{session.handle}/oracle", json=body
    ).json()
    if args.json:
        _emit_json(payload)
    elif payload["exact"]:
        print(f"optimal swaps: {payload['swap_count']}")
    else:
        print(f"optimal swaps: >= {payload['swap_count']}")
    if args.dot:
        _write_dot(session, args.dot, [])


def cmd_witness(args, session: Session) -> None:
    session.open_architecture(args.arch)
    body: dict = {
        "sub1": _parse_vertices(args.sub1),
        "sub2": _parse_vertices(args.sub2),
    }
    if args.reps is not None:
        body["reps"] = args.reps
    payload = session.request(
        "POST", f"/architectures/{session.handle}/witness", json=body
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        relation = "<" if payload["strict"] else ">="
        print(
            f"host {payload['host_swaps']} {relation} "
            f"min(sub1 {payload['sub1_swaps']}, sub2 {payload['sub2_swaps']}) "
            f"at {payload['repetitions']} repetitions"
        )
    if args.dot:
        _write_dot(session, args.dot, [body["sub1"], body["sub2"]])


def cmd_compare(args, session: Session) -> None:
    session.open_architecture(args.arch)
    try:
        other = resolve_definition(args.other)
    except ValidationError as exc:
        raise CommandError(str(exc), EXIT_VALIDATION)
    body = {
        "other": {"definition": other},
        "size": args.size,
        "gate_budget": args.budget,
        "mode": args.mode,
        "samples": args.samples,
        "seed": args.seed,
    }
    payload = session.request(
        "POST", f"/architectures/{session.handle}/compare", json=body
    ).json()
    if args.json:
        _emit_json(payload)
    else:
        label = "proved" if payload["proved"] else "sampled evidence"
        print(f"{payload['verdict']} ({label}, {payload['circuits_checked']} circuits)")


def cmd_precompute(args, session: Session) -> None:
    session.open_architecture(args.arch)
    body = {
        "sizes": _parse_sizes(args.sizes),
        "cover_limits": _parse_sizes(args.cover) if args.cover else [],
        "jobs": args.jobs,
    }
    if args.time_limit is not None:
        body["time_limit"] = args.time_limit
    document = session.request(
        "POST", f"/architectures/{session.handle}/library", json=body
    ).json()
    Path(args.out).write_text(
        json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    summary = {
        "written": args.out,
        "sizes": sorted(int(k) for k in document["entries"]),
        "architecture": document["architecture"]["name"],
        "content_hash": document["architecture"]["content_hash"],
    }
    if args.json:
        _emit_json(summary)
    else:
        print(f"library for {summary['architecture']} written to {args.out}")


def cmd_serve(args, _session: Session) -> None:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subarch", description=__doc__)
    parser.add_argument("--version", action="version", version=f"subarch {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON on stdout")
    common.add_argument("--dot", metavar="FILE", help="write DOT rendering(s) to FILE")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (sampled modes only)")
    common.add_argument("--time-limit", type=float, default=None, help="wall-clock budget in seconds")
    common.add_argument("--server", default=None, help="remote service URL (default: in-process)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("devices", parents=[common], help="list bundled device names")
    p.set_defaults(func=cmd_devices)

    p = sub.add_parser("census", parents=[common], help="connected-subgraph and class counts")
    p.add_argument("arch", help="architecture file or bundled device name")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("enumerate", parents=[common], help="connected subarchitectures of one size")
    p.add_argument("arch")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--classes", action="store_true", help="group by isomorphism class")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("candidates", parents=[common], help="mapping candidates for a circuit size")
    p.add_argument("arch")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("optimal", parents=[common], help="smallest subarchitectures containing all candidates")
    p.add_argument("arch")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("cover", parents=[common], help="bounded greedy covering of the candidates")
    p.add_argument("arch")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--max", type=int, required=True, help="maximum number of covering members")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("oracle", parents=[common], help="exact minimum swap count for a circuit")
    p.add_argument("arch")
    p.add_argument("--circuit", required=True, help="circuit file (text format)")
    p.add_argument("--budget", type=int, default=None, help="stop once the optimum is proven >= budget")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("witness", parents=[common], help="two-subarchitecture advantage check")
    p.add_argument("arch")
    p.add_argument("--sub1", required=True, help="comma-separated vertex list")
    p.add_argument("--sub2", required=True, help="comma-separated vertex list")
    p.add_argument("--reps", type=int, default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("compare", parents=[common], help="swap-optimality comparison over an ensemble")
    p.add_argument("arch")
    p.add_argument("other")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("precompute", parents=[common], help="persist a candidate library")
    p.add_argument("arch")
    p.add_argument("--sizes", required=True, help="a..b range or comma-separated list")
    p.add_argument("--cover", default=None, help="covering bounds to include (comma-separated)")
    p.add_argument("--out", required=True, help="library file to write")
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "serve":
        cmd_serve(args, None)  # pragma: no cover - blocks forever
        return EXIT_OK
    try:
        client = _client(args.server)
    except Exception as exc:
        sys.stderr.write(f"subarch: {exc}\n")
        return EXIT_USAGE
    session = Session(client)
    try:
        args.func(args, session)
        return EXIT_OK
    except CommandError as exc:
        sys.stderr.write(f"subarch: {exc}\n")
        return exc.exit_code
    except SubarchError as exc:
        code = EXIT_USAGE if isinstance(exc, UsageError) else EXIT_VALIDATION
        sys.stderr.write(f"subarch: {exc}\n")
        return code
    finally:
        session.close()
        client.close()


if __name__ == "__main__":
    sys.exit(main())
