"""Command-line front end: ``kacstab analyze|roots|gap|tilt|reflect|exceptional``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import (BoundExceeded, BudgetExceeded, KacstabError, NotABasis, NotAStabilityFunction,
                     ParseError, ValidationError)
from .pipeline import DEFAULT_RETRIES, analyze, run_gap_stage
from .quiver import Quiver, forms, parse_quiver
from .roots import DEFAULT_BUDGET, RootData, sorted_roots
from .stability import GenericHomTable, parse_charge
from .svg import phase_circle_svg
from .tilts import HeartSMC, Representation, bgp_reflect, tilt_heart

SCHEMA_VERSION = 1
EXIT_OK, EXIT_PARSE, EXIT_BASIS, EXIT_BUDGET, EXIT_OTHER = 0, 1, 2, 3, 4


def _read_arg(value: str) -> str:
    """A file path if one exists, otherwise the literal text."""
    p = Path(value)
    try:
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return value


def load_quiver(value: str) -> Quiver:
    return parse_quiver(_read_arg(value))


def _budget(args) -> int:
    if args.budget is not None:
        b = args.budget
    elif os.environ.get("KACSTAB_BUDGET"):
        try:
            b = int(os.environ["KACSTAB_BUDGET"])
        except ValueError as exc:
            raise ParseError(f"KACSTAB_BUDGET is not an integer: {exc}") from exc
    else:
        b = DEFAULT_BUDGET
    if b < 1000:
        raise ValidationError("budget", f"element budget must be >= 1000, got {b}")
    return b


def _config(args, out: dict) -> dict:
    if args.height < 1:
        raise ValidationError("height", f"height bound must be >= 1, got {args.height}")
    cfg = {"height": args.height, "budget": _budget(args), "retries": args.retries,
           "seed": args.seed}
    out["config"] = cfg
    return cfg


def _need(args, name):
    if getattr(args, name, None) is None:
        raise ParseError(f"--{name} is required for {args.command}")
    return getattr(args, name)


def cmd_roots(args, out: dict) -> None:
    q = load_quiver(_need(args, "quiver"))
    cfg = _config(args, out)
    rd = RootData(forms(q), q, cfg["height"], budget=cfg["budget"])
    out["roots"] = {"h": cfg["height"], "real": sorted_roots(rd.real),
                    "imaginary": sorted_roots(rd.imaginary),
                    "count": len(rd.real) + len(rd.imaginary)}


def _stage(args, out: dict, full: bool):
    q = load_quiver(_need(args, "quiver"))
    Z = parse_charge(_read_arg(_need(args, "charge")))
    if Z.n != q.n:
        raise ValidationError("charge", f"{Z.n} charge values for {q.n} vertices")
    cfg = _config(args, out)
    out["quiver"] = q.to_json()
    out["charge"] = Z.to_json()
    sink: dict = {}
    out["stages"] = sink
    kw = dict(retries=cfg["retries"], budget=cfg["budget"], sink=sink)
    if full:
        return analyze(q, Z, cfg["height"], **kw)
    return run_gap_stage(q, Z, cfg["height"], **kw)


def cmd_analyze(args, out: dict):
    return _stage(args, out, True).stage.gap


def cmd_gap(args, out: dict):
    st = _stage(args, out, False)
    stages = out.pop("stages")
    out["gap"] = dict(stages["gap"], simples=stages["heart"]["simples"], det=stages["heart"]["det"])
    out["attempts"] = stages["attempts"]
    return st.gap


def cmd_exceptional(args, out: dict):
    a = _stage(args, out, True)
    stages = out.pop("stages")
    out["exceptional"] = stages["exceptional"]
    return a.stage.gap


def _parse_heart(text: str, n: int) -> HeartSMC:
    if text.strip() == "std":
        return HeartSMC.standard(n)
    try:
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["simples"]
        simples = tuple((tuple(int(x) for x in d["root"]), int(d["shift"])) for d in data)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad heart JSON: {exc}") from exc
    if len(simples) != n or any(len(g) != n for g, _ in simples):
        raise ValidationError("heart", f"a heart needs {n} simples of length {n}")
    return HeartSMC(simples)


def cmd_tilt(args, out: dict):
    q = load_quiver(_need(args, "quiver"))
    f = forms(q)
    h = _parse_heart(_read_arg(args.heart or "std"), q.n)
    at = _need(args, "at")
    if not 1 <= at <= q.n:
        raise ValidationError("at", f"simple index {at} outside 1..{q.n}")
    cfg = _config(args, out)
    table = GenericHomTable(f, cap=max(12, 4 * cfg["height"]))
    res = tilt_heart(h, at, args.dir[0].upper(), f, table=table, bound=4 * cfg["height"])
    out["heart"] = res.to_json()
    out["det"] = res.det()


def cmd_reflect(args, out: dict):
    q = load_quiver(_need(args, "quiver"))
    try:
        data = json.loads(_read_arg(_need(args, "rep")))
    except ValueError as exc:
        raise ParseError(f"bad representation JSON: {exc}") from exc
    try:
        rep = Representation.from_json(q, data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad representation JSON: {exc}") from exc
    nq, nrep = bgp_reflect(q, _need(args, "at"), rep)
    out["quiver"] = nq.to_json()
    out["representation"] = nrep.to_json()


COMMANDS = {"analyze": cmd_analyze, "roots": cmd_roots, "gap": cmd_gap, "tilt": cmd_tilt,
            "reflect": cmd_reflect, "exceptional": cmd_exceptional}


def build_parser() -> argparse.ArgumentParser:
    # -h is the height bound, so help moves to --help only
    p = argparse.ArgumentParser(prog="kacstab", add_help=False,
                                description="Stability conditions on acyclic quivers, exactly.")
    p.add_argument("--help", action="help", help="show this message and exit")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--quiver", help="quiver file (or inline text, ';' separating lines)")
    p.add_argument("--charge", help="central charge, e.g. '-1+1i,1+1i'")
    p.add_argument("-h", "--height", type=int, default=8, help="root height bound (default 8)")
    p.add_argument("--budget", type=int, default=None, help="element budget (env KACSTAB_BUDGET)")
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES, help="bound doublings on NotABasis")
    p.add_argument("--format", choices=["json", "text", "svg"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--heart", help="'std' or JSON list of {root, shift}")
    p.add_argument("--at", type=int, help="vertex or simple index")
    p.add_argument("--dir", choices=["left", "right", "L", "R"], default="left")
    p.add_argument("--rep", help="representation JSON {dims, maps}")
    return p


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    elif isinstance(obj, list):
        for v in obj:
            if _flat(v):
                lines.append(f"{pad}- {json.dumps(v, sort_keys=True)}")
            else:
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return not isinstance(v, dict)


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--charge -1+1i,...`` through: argparse would read the value as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--charge", "--heart", "--rep"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    out = {"schema_version": SCHEMA_VERSION, "command": args.command}
    gap = None
    code = EXIT_OK
    try:
        gap = COMMANDS[args.command](args, out)
    except (ParseError, ValidationError, NotAStabilityFunction) as exc:
        out["error"], code = exc.payload(), EXIT_PARSE
    except NotABasis as exc:
        out["error"], code = exc.payload(), EXIT_BASIS
    except (BudgetExceeded, BoundExceeded) as exc:
        out["error"], code = exc.payload(), EXIT_BUDGET
    except KacstabError as exc:
        out["error"], code = exc.payload(), EXIT_OTHER
    if args.format == "svg" and gap is not None:
        stdout.write(phase_circle_svg(gap))
    elif args.format == "text":
        stdout.write(_text(out) + "\n")
    else:
        stdout.write(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
