"""Command-line front end: tables, JSON reports, the verification sweep and path rendering.

Exit status is 0 on success, 1 when a computed invariant fails (a JSON
witness is printed) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sqlite3
import sys
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Optional, Sequence

from . import bgg, cellmod, geometry, rewrite
from .combinatorics import (
    AlgebraConfig,
    Bipartition,
    enumerate_bipartitions,
    enumerate_std,
    initial_tableau,
    steps_residues,
    tableau_degree,
)
from .exactla import rank

SCHEMA = 1


class InvariantFailure(Exception):
    """A check failed; ``witness`` is reported as JSON."""

    def __init__(self, witness: dict):
        super().__init__(witness.get("check", "invariant failure"))
        self.witness = witness


# -- persistent memo store ------------------------------------------------------


class SqliteStore:
    """Single-file memo store keyed by a hash of the rewrite key; safe to delete."""

    def __init__(self, path: str):
        self.conn = sqlite3.connect(path)
        self.conn.execute("CREATE TABLE IF NOT EXISTS memo (key TEXT PRIMARY KEY, value TEXT)")

    @staticmethod
    def _hash(key: tuple) -> str:
        return hashlib.sha256(repr(key).encode()).hexdigest()

    def get(self, key: tuple):
        row = self.conn.execute("SELECT value FROM memo WHERE key = ?", (self._hash(key),)).fetchone()
        if row is None:
            return None
        return {tuple(st): Fraction(c) for st, c in json.loads(row[0])}

    def put(self, key: tuple, value) -> None:
        data = json.dumps([[list(st), str(c)] for st, c in sorted(value.items())])
        self.conn.execute("INSERT OR REPLACE INTO memo VALUES (?, ?)", (self._hash(key), data))

    def close(self) -> None:
        self.conn.commit()
        self.conn.close()


# -- argument handling ------------------------------------------------------------


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _path(text: str) -> tuple[int, ...]:
    steps = tuple(int(x) for x in text.replace(",", " ").split())
    if not steps or any(s not in (1, 2) for s in steps):
        raise argparse.ArgumentTypeError(f"a path is a list of components 1 and 2, got {text!r}")
    return steps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blobalg", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--cache", help="sqlite file memoising straightening results")

    shape_args = argparse.ArgumentParser(add_help=False, parents=[common])
    shape_args.add_argument("--d", type=int, required=True)
    shape_args.add_argument("--e", type=int, required=True)
    shape_args.add_argument("--kappa", type=_pair, required=True)
    shape_args.add_argument("--lambda", dest="lam", type=_pair, required=True)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("std", parents=[shape_args], help="standard tableaux with degrees and residues")
    sub.add_parser("simple", parents=[shape_args], help="basis paths of the simple head")
    sub.add_parser("gram", parents=[shape_args], help="Gram matrix of the cellular form")
    sub.add_parser("bgg", parents=[shape_args], help="BGG complex and its homology")
    sub.add_parser("branch", parents=[shape_args], help="restriction of the simple head")
    sub.add_parser("decomp", parents=[shape_args], help="graded decomposition numbers")

    verify = sub.add_parser("verify", parents=[common], help="sweep every check over small bounds")
    verify.add_argument("--d-max", type=int, default=9)
    verify.add_argument("--e", type=int, nargs="*", default=[2, 3, 4, 5])
    verify.add_argument("--kappa", type=_pair, nargs="*", help="default: (0, r) for r = 1 .. e-1")

    render = sub.add_parser("render", parents=[common], help="draw a path in the Pascal triangle")
    render.add_argument("--e", type=int, required=True)
    render.add_argument("--kappa", type=_pair, required=True)
    what = render.add_mutually_exclusive_group(required=True)
    what.add_argument("--lambda", dest="lam", type=_pair, help="draw the initial path of this shape")
    what.add_argument("--path", type=_path, help="steps such as 2,1,2,1,2")
    render.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    return parser


def _config(parser: argparse.ArgumentParser, d: int, e: int, kappa: tuple[int, int]) -> AlgebraConfig:
    try:
        return AlgebraConfig(d, e, kappa)
    except ValueError as exc:
        parser.error(str(exc))


def _shape(parser: argparse.ArgumentParser, args, cfg: AlgebraConfig) -> Bipartition:
    a, b = args.lam
    if a < 0 or b < 0 or a + b != cfg.d:
        parser.error(f"--lambda {a},{b} is not a bipartition of {cfg.d}")
    return Bipartition(a, b)


# -- commands -----------------------------------------------------------------------


def _steps(p: Sequence[int]) -> str:
    return "".join(str(s) for s in p)


def cmd_std(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    rows = [
        {"steps": _steps(T.steps), "degree": tableau_degree(T, cfg), "residues": list(steps_residues(T.steps, cfg))}
        for T in enumerate_std(lam)
    ]
    text = "\n".join(f"{r['steps']}  deg {r['degree']:+d}  res {r['residues']}" for r in rows)
    return {"shape": str(lam), "tableaux": rows}, text


def cmd_simple(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    paths = cellmod.simple_basis_paths(lam, cfg)
    quotient = cellmod.simple_dim_by_quotient(lam, cfg)
    gram = cellmod.gram_matrix(lam, cfg)
    gram_rank = rank(gram)
    if not len(paths) == quotient == gram_rank:
        raise InvariantFailure(
            {"check": "simple_dim", "shape": str(lam), "paths": len(paths), "quotient": quotient, "gram_rank": gram_rank}
        )
    dim_t = cellmod.simple_graded_dim(lam, cfg)
    report = {
        "shape": str(lam),
        "dim": len(paths),
        "dim_t": dim_t.to_json(),
        "basis": [_steps(p) for p in paths],
    }
    text = f"dim L({lam}) = {len(paths)}\ndim_t = {dim_t}\n" + "\n".join(report["basis"])
    return report, text


def cmd_gram(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    g = cellmod.gram_matrix(lam, cfg)
    basis = cellmod.CellModule(cfg, lam).basis
    dense = [[str(x) for x in row] for row in g.to_dense()]
    r = rank(g)
    report = {
        "shape": str(lam),
        "basis": [_steps(T.steps) for T in basis],
        "matrix": dense,
        "rank": r,
        "radical_dim": g.nrows - r,
    }
    width = max((len(x) for row in dense for x in row), default=1)
    lines = [" ".join(x.rjust(width) for x in row) for row in dense]
    return report, "\n".join(lines + [f"rank {r}, radical {g.nrows - r}"])


def cmd_bgg(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    if geometry.on_wall(lam, cfg):
        ses = bgg.build_wall_ses(lam, cfg)
        simple = len(cellmod.simple_basis_paths(lam, cfg))
        report = {
            "lambda": str(lam),
            "source": str(ses.source) if ses.source else None,
            "rank": ses.rank,
            "injective": ses.injective,
            "cokernel_dim": ses.cokernel_dim,
            "simple_dim": simple,
        }
        if not ses.injective or ses.cokernel_dim != simple:
            raise InvariantFailure({"check": "wall_sequence", **report})
        return report, f"0 -> Delta({ses.source}) -> Delta({lam}) -> L({lam}) -> 0, cokernel {ses.cokernel_dim}"
    cx = bgg.build_complex(lam, cfg)
    bad = bgg.complex_defects(cx)
    if bad:
        raise InvariantFailure({"check": "delta_squared", "lambda": str(lam), "indices": bad, **cx.to_json()})
    report = bgg.complex_report(lam, cfg)
    if report["homology"][0] != report["simple_dim"] or any(report["homology"][1:]):
        raise InvariantFailure({"check": "homology", **report})
    terms = " <- ".join("+".join(f"Delta({t['shape']})" for t in term) for term in report["terms"])
    return report, f"{terms}\nranks {report['ranks']}\nhomology {report['homology']}"


def cmd_branch(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    rep = bgg.restriction_check(lam, cfg)
    report = rep.to_json()
    if not rep.ok:
        raise InvariantFailure({"check": "branching", **report})
    parts = " + ".join(f"L({nu})={x}" for nu, x in zip(rep.removed, rep.restricted_dims))
    return report, f"dim L({lam}) = {rep.dim}; {parts}"


def cmd_decomp(lam: Bipartition, cfg: AlgebraConfig) -> tuple[dict, str]:
    row = cellmod.decomposition_row(lam, cfg)
    report = {"lambda": str(lam), "row": {str(mu): p.to_json() for mu, p in row}}
    return report, "\n".join(f"[Delta({mu}) : L({lam})] = {p}" for mu, p in row)


SHAPE_COMMANDS = {
    "std": cmd_std,
    "simple": cmd_simple,
    "gram": cmd_gram,
    "bgg": cmd_bgg,
    "branch": cmd_branch,
    "decomp": cmd_decomp,
}


# -- verification sweep -------------------------------------------------------------


def verify_shape(lam: Bipartition, cfg: AlgebraConfig, signs: Optional[dict] = None) -> list[dict]:
    """Every check that applies to one shape; returns the failures."""
    fails: list[dict] = []
    where = {"d": cfg.d, "e": cfg.e, "kappa": list(cfg.kappa), "lambda": str(lam)}
    try:
        paths = len(cellmod.simple_basis_paths(lam, cfg))
        quotient = cellmod.simple_dim_by_quotient(lam, cfg)
        gram = rank(cellmod.gram_matrix(lam, cfg))
        if not paths == quotient == gram:
            fails.append({"check": "simple_dim", **where, "paths": paths, "quotient": quotient, "gram_rank": gram})
        if geometry.on_wall(lam, cfg):
            ses = bgg.build_wall_ses(lam, cfg)
            if not ses.injective or ses.cokernel_dim != paths:
                fails.append({"check": "wall_sequence", **where, "rank": ses.rank, "cokernel": ses.cokernel_dim})
            return fails
        cx = bgg.build_complex(lam, cfg, signs=signs)
        bad = bgg.complex_defects(cx)
        if bad:
            fails.append({"check": "delta_squared", **where, "indices": bad})
        else:
            hom = bgg.homology(cx)
            if hom[0] != paths or any(hom[1:]):
                fails.append({"check": "homology", **where, "homology": hom, "simple_dim": paths})
        if cfg.d >= 1:
            rep = bgg.restriction_check(lam, cfg)
            if not rep.ok:
                fails.append({"check": "branching", **where, **rep.to_json()})
    except (rewrite.StraighteningError, cellmod.NoHomomorphism, bgg.ComplexError) as exc:
        fails.append({"check": "construction", **where, "error": str(exc)})
    return fails


def cmd_verify(d_max: int, es: Sequence[int], kappas: Optional[Sequence[tuple[int, int]]]) -> tuple[dict, list[str]]:
    lines: list[str] = []
    failures: list[dict] = []
    checked = 0
    for e in es:
        ks = kappas if kappas else [(0, r) for r in range(1, e)]
        for kappa in ks:
            for d in range(1, d_max + 1):
                cfg = AlgebraConfig(d, e, kappa)
                for lam in enumerate_bipartitions(cfg):
                    fails = verify_shape(lam, cfg)
                    checked += 1
                    status = "PASS" if not fails else "FAIL " + ",".join(f["check"] for f in fails)
                    lines.append(f"d={d} e={e} kappa={kappa[0]},{kappa[1]} lambda={lam}: {status}")
                    failures.extend(fails)
    report = {"checked": checked, "failed": len(failures), "ok": not failures}
    if failures:
        report["first_witness"] = failures[0]
    return report, lines


# -- rendering ------------------------------------------------------------------------


def _walls(d: int, cfg: AlgebraConfig) -> list[int]:
    """Labels in ``-d..d`` lying on a wall."""
    return [v for v in range(-d, d + 1) if (v + cfg.rho) % cfg.e == 0]


def render_ascii(path: Sequence[int], cfg: AlgebraConfig) -> str:
    d = len(path)
    pts = set(geometry.render_points(path))
    walls = set(_walls(d, cfg))
    lines = []
    for k in range(d + 1):
        row = []
        for v in range(-d, d + 1):
            if (v, k) in pts:
                row.append("*")
            elif abs(v) <= k and (v - k) % 2 == 0:
                row.append("o" if v in walls else ".")
            elif v in walls:
                row.append("|")
            else:
                row.append(" ")
        lines.append("".join(row).rstrip())
    return "\n".join(lines)


def render_svg(path: Sequence[int], cfg: AlgebraConfig) -> str:
    d = len(path)
    step = 20
    width, height = (2 * d + 2) * step, (d + 2) * step

    def xy(v: int, k: int) -> tuple[int, int]:
        return (v + d + 1) * step, (k + 1) * step

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for v in _walls(d, cfg):
        x, _ = xy(v, 0)
        out.append(f'<line x1="{x}" y1="{step // 2}" x2="{x}" y2="{height - step // 2}" stroke="red" stroke-dasharray="4 3"/>')
    for k in range(d + 1):
        for v in range(-k, k + 1, 2):
            x, y = xy(v, k)
            out.append(f'<circle cx="{x}" cy="{y}" r="2" fill="gray"/>')
    pts = " ".join("{},{}".format(*xy(v, k)) for v, k in geometry.render_points(path))
    out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- entry point ----------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    body = json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2) if args.json else text
    if args.out:
        FsPath(args.out).write_text(body if body.endswith("\n") else body + "\n")
    else:
        print(body)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    store = SqliteStore(args.cache) if args.cache else None
    if store is not None:
        rewrite.set_default_store(store)
        cellmod.clear_hom_cache()
    try:
        return _run(parser, args)
    except InvariantFailure as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "failure": exc.witness}, indent=2))
        return 1
    except (rewrite.StraighteningError, cellmod.NoHomomorphism, bgg.ComplexError) as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "failure": {"error": str(exc)}}, indent=2))
        return 1
    except OSError as exc:
        print(f"blobalg: {exc}", file=sys.stderr)
        return 1
    finally:
        if store is not None:
            rewrite.set_default_store(None)
            cellmod.clear_hom_cache()
            store.close()


def _run(parser: argparse.ArgumentParser, args) -> int:
    if args.command in SHAPE_COMMANDS:
        cfg = _config(parser, args.d, args.e, args.kappa)
        lam = _shape(parser, args, cfg)
        payload, text = SHAPE_COMMANDS[args.command](lam, cfg)
        _emit(args, payload, text)
        return 0
    if args.command == "verify":
        for e in args.e:
            for kappa in args.kappa or [(0, 1)]:
                _config(parser, max(args.d_max, 0), e, kappa)
        report, lines = cmd_verify(args.d_max, args.e, args.kappa)
        _emit(args, report, "\n".join(lines + [f"{report['checked']} shapes, {report['failed']} failures"]))
        return 0 if report["ok"] else 1
    # render
    if args.lam is not None:
        cfg = _config(parser, sum(args.lam), args.e, args.kappa)
        path = initial_tableau(_shape(parser, args, cfg), cfg).steps
    else:
        path = args.path
        cfg = _config(parser, len(path), args.e, args.kappa)
    body = render_svg(path, cfg) if args.format == "svg" else render_ascii(path, cfg)
    if args.json:
        _emit(args, {"path": _steps(path), "format": args.format, "image": body}, body)
    elif args.out:
        FsPath(args.out).write_text(body if body.endswith("\n") else body + "\n")
    else:
        print(body)
    return 0


if __name__ == "__main__":
    sys.exit(main())
