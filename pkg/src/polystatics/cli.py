"""Command line front end: check, analyze, solve and serve.

Exit codes mirror the error taxonomy so scripts can branch on failures:
0 success, 1 unexpected, 2 malformed/invalid input, 3 empty or fully
determinate system (ZeroDof/EmptySystem/ZeroSolution), 4 infeasible linear
program, 5 dimension mismatch.

``solve`` writes a dual document: the HTTP solve response plus an echo of
the primal input document under ``"primal"``.  ``load_dual_document``
rebuilds the in-memory diagram from such a file, so written results can be
re-verified against their primal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .complex import CellComplex, complex_to_document, parse_complex, validate
from .dual import DualDiagram, DualFace
from .equilibrium import analyze, assemble
from .errors import MalformedDocument, PolystaticsError
from .service import SolveRequest, create_app, solve_payload
from .topology import IncidenceSet


def _load(path: str) -> CellComplex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc}") from exc
    return parse_complex(text)


def _vector(text: str | None, length: int, name: str) -> np.ndarray | None:
    """Parse a comma-separated vector; a single value broadcasts."""
    if text is None:
        return None
    try:
        vals = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise MalformedDocument(f"--{name} is not a numeric vector: {exc}") from exc
    if len(vals) == 1 and length > 1:
        vals = vals * length
    return np.asarray(vals, dtype=float)


def dual_document(payload: dict[str, Any], primal_doc: dict[str, Any]) -> dict[str, Any]:
    out = dict(payload)
    out["primal"] = primal_doc
    return out


def load_dual_document(doc: str | dict[str, Any]) -> tuple[CellComplex, DualDiagram]:
    """Parse a written dual document back into (primal, diagram)."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    cx = parse_complex(doc["primal"])
    d = doc["dual"]
    q = np.asarray(doc["q"], dtype=float)
    return cx, DualDiagram(
        vertices=np.asarray(d["vertices"], dtype=float),
        cell_ids=tuple(d["cell_ids"]),
        edges=tuple((e[0], e[1], e[2]) for e in d["edges"]),
        edge_vectors=np.asarray(d["edge_vectors"], dtype=float),
        faces=tuple(
            DualFace(
                primal_edge=f["primal_edge"],
                fan_faces=tuple(f["fan_faces"]),
                vertex_cycle=tuple(f["vertex_cycle"]),
            )
            for f in d["faces"]
        ),
        q=q,
        anchor_cell=d["anchor_cell"],
        anchor_point=np.asarray(d["anchor_point"], dtype=float),
        formal_cell_count=len(doc["primal"]["vertices"]),
    )


def cmd_check(args: argparse.Namespace) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        _emit_error(MalformedDocument(f"cannot read {args.path}: {exc}"), args.json)
        return MalformedDocument.exit_code
    try:
        cx = parse_complex(text, check=False)
    except PolystaticsError as exc:
        _emit_error(exc, args.json)
        return exc.exit_code
    report = validate(cx, tol=args.tol)
    passed = report.passed and not cx.defects
    if args.json:
        print(
            json.dumps(
                {
                    "passed": passed,
                    "defects": list(cx.defects),
                    "checks": [
                        {
                            "name": c.name,
                            "passed": c.passed,
                            "details": list(c.details),
                        }
                        for c in report.checks
                    ],
                },
                indent=2,
            )
        )
    else:
        for line in report.lines():
            print(line)
        print("result:", "ok" if passed else "FAILED")
    return 0 if passed else 2


def cmd_analyze(args: argparse.Namespace) -> int:
    cx = _load(args.path)
    sys_ = assemble(cx)
    ana = analyze(sys_, rank_tol=args.rank_tol)
    v, e, f, c = cx.counts
    wv, we, wf, wc = cx.system_counts
    if args.json:
        print(
            json.dumps(
                {
                    "counts": {"v": v, "e": e, "f": f, "c": c},
                    "working_counts": {"v": wv, "e": we, "f": wf, "c": wc},
                    "rank": ana.rank,
                    "dof": ana.dof,
                    "independent_faces": list(ana.independent_faces),
                    "independent_face_ids": list(ana.independent_face_ids),
                    "singular_values": list(ana.singular_values),
                    "collapses_to_point": ana.zero_only,
                },
                indent=2,
            )
        )
    else:
        print(f"stored counts   v={v} e={e} f={f} c={c}")
        print(f"working counts  v={wv} e'={we} f'={wf} c'={wc}")
        print(f"equilibrium matrix: {sys_.A.shape[0]}x{sys_.A.shape[1]}")
        for line in ana.lines():
            print(line)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    cx = _load(args.path)
    inc = IncidenceSet.from_complex(cx)
    sys_ = assemble(cx, inc)
    f = sys_.A.shape[1]
    req = SolveRequest(
        method=args.method,
        xi=_as_list(_vector(args.xi, f, "xi")),
        zeta=_as_list(_vector(args.zeta, sys_.dof, "zeta")),
        anchor_cell=args.anchor,
        anchor_point=tuple(args.anchor_point),
        **{"lambda": _as_list(_vector(args.lam, f, "lambda"))},
    )
    payload = solve_payload(cx, inc, sys_, req)
    doc = dual_document(payload, complex_to_document(cx))
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(
            f"wrote dual ({payload['status']}): q in "
            f"[{min(payload['q']):.6g}, {max(payload['q']):.6g}] -> {args.out}"
        )
    else:
        print(text)
    return 0


def _as_list(v: np.ndarray | None) -> list[float] | None:
    return None if v is None else [float(x) for x in v]


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    cx = _load(args.path)
    app = create_app(cx, static_dir=_viewer_dir(args.viewer))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _viewer_dir(explicit: str | None) -> Path | None:
    candidates = []
    if explicit:
        candidates.append(Path(explicit))
    if os.environ.get("POLYSTATICS_VIEWER"):
        candidates.append(Path(os.environ["POLYSTATICS_VIEWER"]))
    candidates.append(Path.cwd() / "frontend" / "dist")
    candidates.append(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    for c in candidates:
        if (c / "index.html").exists():
            return c
    return None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polystatics",
        description="Reciprocal polyhedral diagrams from polyhedral cell "
        "complexes: validation, rank analysis, equilibrium solving and an "
        "interactive service.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate an input document")
    c.add_argument("path")
    c.add_argument("--tol", type=float, default=1e-9, help="planarity tolerance")
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_check)

    a = sub.add_parser("analyze", help="counts, rank and degrees of freedom")
    a.add_argument("path")
    a.add_argument("--rank-tol", type=float, default=1e-10)
    a.add_argument("--json", action="store_true")
    a.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("solve", help="solve for q and construct the dual")
    s.add_argument("path")
    s.add_argument("--method", choices=("mpi", "rref", "lp"), required=True)
    s.add_argument("--xi", help="seed vector for mpi, comma separated")
    s.add_argument("--zeta", help="independent edge lengths for rref")
    s.add_argument("--lambda", dest="lam", help="objective weights for lp")
    s.add_argument("--anchor", type=int, default=None, help="anchor cell id")
    s.add_argument(
        "--anchor-point", type=float, nargs=3, default=(0.0, 0.0, 0.0)
    )
    s.add_argument("-o", "--out", help="output path (stdout when omitted)")
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("serve", help="run the HTTP service and viewer")
    v.add_argument("path")
    v.add_argument("--port", type=int, default=8720)
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--viewer", help="directory with the built viewer bundle")
    v.set_defaults(fn=cmd_serve)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PolystaticsError as exc:
        _emit_error(exc, getattr(args, "json", False))
        return exc.exit_code


def _emit_error(exc: PolystaticsError, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": exc.code, "detail": str(exc)}), file=sys.stderr)
    else:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
