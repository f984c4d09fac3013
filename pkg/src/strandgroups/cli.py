"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error (a JSON object on stderr),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import abelian, coxeter, ring, strata, trajectory
from .errors import StrandGroupError
from .render import render_ascii, render_svg
from .words import FAMILIES, Presentation, cycle_notation, parse_word, permutation_image


def _presentation(args, geometry: Optional[str] = None) -> Presentation:
    if args.n is None:
        args.parser.error("--n is required for this command")
    return Presentation(args.family, args.n, geometry or args.geometry)


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _element(text: str, pres: Presentation):
    word = parse_word(text, pres)
    if pres.is_ring:
        return ring.from_word(word)
    return coxeter.normal_form_shortlex(word)


def cmd_normalize(args):
    pres = _presentation(args)
    el = _element(args.word, pres)
    if pres.is_ring:
        text = str(el.to_word())
        return {"normal_form": text, **el.to_json()}, text
    text = str(el.normal_word)
    return {"normal_form": text, "length": el.length}, text


def cmd_equal(args):
    pres = _presentation(args)
    a, b = _element(args.u, pres), _element(args.v, pres)
    same = ring.wreath_equal(a, b) if pres.is_ring else a == b
    return {"equal": same}, "true" if same else "false"


def cmd_image(args):
    pres = _presentation(args)
    perm = permutation_image(parse_word(args.word, pres))
    text = "[" + " ".join(map(str, perm)) + "] " + cycle_notation(perm)
    return {"permutation": list(perm), "cycles": cycle_notation(perm)}, text


def cmd_abelianize(args):
    inv = abelian.abelianization(_presentation(args))
    return inv.to_dict(), str(inv)


def cmd_characters(args):
    table = abelian.enumerate_characters(_presentation(args))
    lines = [f"{table.invariants}: {len(table.characters)} torsion character(s), "
             f"{table.free_rank} continuous phase(s)"]
    for k, ch in enumerate(table.characters, start=1):
        parts = ", ".join(f"{g} -> {ph}" for g, ph in zip(ch.generators, ch.phases))
        lines.append(f"  chi{k}: {parts}")
    return table.to_json(), "\n".join(lines)


def cmd_strata(args):
    if args.partition:
        parts = [int(x) for x in args.partition.replace(",", " ").split()]
        infos = [strata.stratum_info(parts, args.d)]
    else:
        if args.n is None:
            args.parser.error("give --n or --partition")
        infos = [strata.stratum_info(p, args.d) for p in strata.partitions(args.n)]
    lines = ["partition  components  codim  stabilizer  orbit"]
    for s in infos:
        label = "[" + "".join(map(str, s.partition)) + "]"
        lines.append(
            f"{label:<10} {s.h:>10} {s.codim:>6} {s.stabilizer_order:>11} {s.orbit_size:>6}"
        )
    return [s.to_dict() for s in infos], "\n".join(lines)


def cmd_sector(args):
    config = strata.Configuration.from_json(_load_json(args.file))
    cls = strata.classify_configuration(config)
    data = cls.to_dict()
    if cls.in_delta2:
        data["sector"] = None
        return data, "no sector: coincidence groups " + str([list(g) for g in cls.groups])
    label = strata.ordering_sector(config)
    data["sector"] = list(label)
    return data, "[" + " ".join(map(str, label)) + "]"


def _trajectory_args(args):
    traj = trajectory.trajectory_from_json(_load_json(args.file))
    policy = args.policy or traj.policy or "Q"
    return traj, policy


def cmd_compile(args):
    traj, policy = _trajectory_args(args)
    family = args.family_given or trajectory.POLICY_FAMILY.get(policy, "S")
    geometry = "ring" if traj.geometry.is_ring else "interval"
    pres = Presentation(family, traj.n, geometry)
    result = trajectory.compile_loop(traj, pres, policy)
    data = result.to_dict()
    data["presentation"] = str(pres)
    if pres.is_ring:
        element = str(result.element.to_word())
    else:
        element = str(result.element.normal_word)
    text = f"{element}\npure: {'true' if result.is_pure else 'false'}"
    return data, text


def cmd_validate(args):
    traj, policy = _trajectory_args(args)
    report = trajectory.validate(traj, policy)
    if report.ok:
        return report.to_dict(), f"ok ({policy})"
    return report.to_dict(), "\n".join(v.describe() for v in report.violations)


def cmd_render(args):
    pres = _presentation(args)
    word = parse_word(args.word, pres)
    cut = None if args.cut is None else args.cut == "yes"
    if args.format == "svg":
        doc = render_svg(word, ring_cut=cut, max_letters=args.max_letters)
    else:
        doc = render_ascii(word, ring_cut=cut, max_letters=args.max_letters)
    return {"format": args.format, "document": doc}, doc.rstrip("\n")


def cmd_ball(args):
    pres = _presentation(args)
    if pres.is_ring:
        items = ring.ring_cayley_ball(pres, args.radius, args.cap)
        rows = [(str(el.to_word()), depth) for el, depth in items]
    else:
        items = coxeter.cayley_ball(pres, args.radius, args.cap)
        rows = [(str(el.normal_word), depth) for el, depth in items]
    data = {"count": len(rows), "elements": [{"word": w, "length": d} for w, d in rows]}
    if args.count_only:
        return data, str(len(rows))
    return data, "\n".join([f"{len(rows)} elements"] + [f"{d}  {w or 'e'}" for w, d in rows])


def cmd_affine_check(args):
    if args.n is None:
        args.parser.error("--n is required for this command")
    report = ring.verify_affine_presentation(args.n, args.family)
    lines = [f"{'ok  ' if r.holds else 'FAIL'} {r.text}" for r in report.relations]
    lines.append("all relations hold" if report.all_hold else f"{len(report.failures())} failed")
    return report.to_dict(), "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES + ("B",), default=None)
    common.add_argument("--n", type=int, default=None, help="number of particles")
    common.add_argument("--geometry", choices=("interval", "ring"), default="interval")
    common.add_argument("--policy", choices=trajectory.POLICIES, default=None)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", default=None, help="write output to FILE")

    parser = argparse.ArgumentParser(
        prog="strandgroups",
        description="Exchange-statistics groups of particles on a line or a ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, parser=p)
        return p

    p = add("normalize", cmd_normalize, "shortlex normal form (pair form on the ring)")
    p.add_argument("word")
    p = add("equal", cmd_equal, "decide whether two words are equal")
    p.add_argument("u")
    p.add_argument("v")
    p = add("image", cmd_image, "permutation image in S_N")
    p.add_argument("word")
    add("abelianize", cmd_abelianize, "abelianization invariants")
    add("characters", cmd_characters, "abelian characters")
    p = add("strata", cmd_strata, "stratification of configuration space")
    p.add_argument("--partition", default=None, help="e.g. 2,2,1")
    p.add_argument("--d", type=int, default=1, help="dimension of the base space")
    p = add("sector", cmd_sector, "sector of a configuration (JSON file)")
    p.add_argument("file")
    p = add("compile", cmd_compile, "compile a loop (trajectory JSON file)")
    p.add_argument("file")
    p = add("validate", cmd_validate, "list coincidence-policy violations")
    p.add_argument("file")
    p = add("render", cmd_render, "draw a strand diagram")
    p.add_argument("word")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--cut", choices=("yes", "no"), default=None, help="draw the ring cut")
    p.add_argument("--max-letters", type=int, default=256)
    p = add("ball", cmd_ball, "Cayley ball enumeration")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--cap", type=int, default=coxeter.DEFAULT_BALL_CAP)
    p.add_argument("--count-only", action="store_true")
    add("affine-check", cmd_affine_check, "check the affine presentation relations")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.family_given = args.family
    if args.family is None:
        args.family = "S"
    try:
        data, text = args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except StrandGroupError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return 1
    if args.command == "render" and not args.json:
        body = data["document"]
    else:
        body = (json.dumps(data, indent=2) if args.json else text) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
