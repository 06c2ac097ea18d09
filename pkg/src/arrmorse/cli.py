"""Command-line front end: faces | order | morse | homology | braid."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import braid as br
from .geometry import Arrangement, ArrangementError
from .morse import SequenceCapError
from .pipeline import (Prepared, Run, braid_report, faces_report, homology_report, morse_report,
                       order_report, prepare)
from .polar import GenericityError

COMMANDS = ("faces", "order", "morse", "homology", "braid")


@dataclass
class JobConfig:
    command: str
    input: Optional[str] = None
    seed: int = 0
    mode: str = "full"
    spec: Optional[str] = None
    braid: Optional[int] = None
    dim: Optional[int] = None
    format: str = "text"
    essentialize: bool = False
    words: bool = False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrmorse", description="Polar Morse complexes of real hyperplane arrangements.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="arrangement JSON file")
    p.add_argument("--seed", type=int, default=0, help="frame seed (default 0)")
    p.add_argument("--mode", choices=("full", "reduced"), default="full", help="boundary summation")
    p.add_argument("--spec", help="local system, e.g. t1=2,t2=-1/3 or 'integral' (default)")
    p.add_argument("--braid", type=int, metavar="N", help="use the braid arrangement A_N")
    p.add_argument("--dim", type=int, metavar="K", help="restrict braid output to dimension K")
    p.add_argument("--format", choices=("json", "dot", "text"), default="text")
    p.add_argument("--essentialize", action="store_true", help="quotient by the lineality space first")
    p.add_argument("--words", action="store_true", help="include gallery words in homology JSON")
    return p


def _config(args: argparse.Namespace) -> JobConfig:
    return JobConfig(args.command, args.input, args.seed, args.mode, args.spec, args.braid,
                     args.dim, args.format, args.essentialize, args.words)


def _load(cfg: JobConfig) -> Prepared:
    if cfg.braid is not None:
        return prepare(br.braid_arrangement(cfg.braid), essential=True)
    if cfg.input is None:
        raise ArrangementError("--input or --braid is required")
    return prepare(Arrangement.load(cfg.input), cfg.essentialize)


def _tuple(xs: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def _faces_text(rep: dict) -> str:
    noun = "facet" if rep["facets"] == 1 else "facets"
    lines = [f"{rep['facets']} {noun} {_tuple(rep['counts'])}",
             f"chambers: {rep['chambers']}",
             f"whitney: {_tuple(rep['whitney'])}",
             f"zaslavsky: {'ok' if rep['zaslavsky'] else 'FAILED'}"]
    return "\n".join(lines)


def _order_text(rep: dict) -> str:
    lines = [f"{len(rep['order'])}-element polar order (frame attempts: {rep['attempts']})"]
    for pos, item in enumerate(rep["order"]):
        lines.append(f"{pos:4d}  facet {item['id']:4d}  {_tuple(item['signs'])}")
    for k, roots in enumerate(rep["roots"]):
        lines.append(f"meets V_{k}: {' '.join(map(str, roots))}")
    return "\n".join(lines)


def _morse_text(rep: dict) -> str:
    v = rep["validation"]
    lines = [f"critical: {_tuple(rep['critical_counts'])}",
             f"whitney: {_tuple(rep['whitney'])}",
             f"pairs: {len(rep['pairs'])}",
             f"matching: {str(v['matching']).lower()}",
             f"acyclic: {str(v['acyclic']).lower()}"]
    for k, cs in enumerate(rep["critical"]):
        lines.append(f"dim {k}: " + " ".join(f"[{c}<{f}]" for c, f in cs))
    return "\n".join(lines)


def _homology_text(rep: dict) -> str:
    lines = [f"critical: {_tuple(rep['critical_counts'])}"]
    for k, rows in rep["text"].items():
        lines.append(f"d_{k}:")
        for row in rows:
            lines.append("  [" + ", ".join(row) + "]")
    h = rep["homology"]
    lines.append(f"homology ranks: {_tuple(h['ranks'])}")
    if "torsion" in h:
        lines.append("torsion: " + ("none" if not any(h["torsion"]) else json.dumps(h["torsion"])))
    else:
        lines.append("at t = " + _tuple(h["values"]))
    lines.append("checks: " + ", ".join(k for k, ok in rep["checks"].items() if ok))
    return "\n".join(lines)


def _braid_text(rep: dict) -> str:
    lines = [f"braid arrangement A_{rep['n']}"]
    for k, data in rep["pi"].items():
        lines.append(f"|pi_{k}| = {data['count']} (Stirling S = {data['stirling2']})")
        for t in data["tableaux"]:
            lines.append("  " + br.Tableau(tuple(map(tuple, t))).__str__())
    lines.append(f"critical: {_tuple(rep['critical_counts'])} (Stirling c = {_tuple(rep['stirling1'])})")
    for k, ts in rep["critical"].items():
        lines.append(f"critical {k}-tableaux: " + " ".join(str(br.Tableau(tuple(map(tuple, t)))) for t in ts))
    if "homology" in rep:
        lines.append(f"homology ranks: {_tuple(rep['homology']['ranks'])}")
    return "\n".join(lines)


def execute(cfg: JobConfig) -> str:
    if cfg.command == "braid":
        if cfg.braid is None:
            raise ArrangementError("braid needs --braid N")
        if cfg.format == "dot":
            raise ArrangementError("dot output is available for faces and morse")
        rep = braid_report(cfg.braid, cfg.dim, cfg.spec)
        return json.dumps(rep, indent=2) if cfg.format == "json" else _braid_text(rep)
    prep = _load(cfg)
    run = Run(prep.arrangement, cfg.seed)
    if cfg.command == "faces":
        rep = faces_report(run)
        if cfg.format == "dot":
            return run.poset.to_dot()
        rep["input"] = prep.to_json()
        return json.dumps(rep, indent=2) if cfg.format == "json" else _faces_text(rep)
    if cfg.format == "dot" and cfg.command != "morse":
        raise ArrangementError("dot output is available for faces and morse")
    if cfg.command == "order":
        rep = order_report(run)
        return json.dumps(rep, indent=2) if cfg.format == "json" else _order_text(rep)
    if cfg.command == "morse":
        rep = morse_report(run)
        if cfg.format == "dot":
            return run.field.to_dot()
        return json.dumps(rep, indent=2) if cfg.format == "json" else _morse_text(rep)
    rep = homology_report(run, cfg.mode, cfg.spec, words=cfg.words)
    return json.dumps(rep, indent=2) if cfg.format == "json" else _homology_text(rep)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = execute(_config(args))
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 2
    except (ArrangementError, ValueError, OSError, GenericityError, SequenceCapError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
