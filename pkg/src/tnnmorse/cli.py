"""Command-line driver.

One binary, five subcommands::

    tnnmorse A3 --parabolic 1,3 enumerate
    tnnmorse B2 verify --all
    tnnmorse A2 label --format dot
    tnnmorse A2 match --cell 1:1:1,2
    tnnmorse A2 export --out artifacts/

The system may be given as a single label token (A3) or as --type A
--rank 3.  All JSON goes through one sorted-key writer, so a fixed
config and seed reproduce byte-identical output.  Exit codes: 0 all
checks passed, 1 an invariant failed, 2 bad usage or config, 3 IO
failure.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import asdict, dataclass

from .bruhat import interval
from .cells import q_poset
from .coxeter import DEFAULT_GROUP_CAP, coxeter_system
from .errors import TnnMorseError
from .export import (
    cell_str,
    cell_to_json,
    dumps,
    hasse_dot,
    labeling_dot,
    labeling_to_json,
    matching_dot,
    matching_to_json,
    parse_cell,
    qposet_to_json,
)
from .homology import DEFAULT_SIMPLEX_CAP
from .morse import goodness_report, match_closure, morse_summary, verify_acyclic
from .shelling import dyer_labeling, reflection_order_from_word, verify_el
from .verify import run_suite

__all__ = ["RunConfig", "main", "build_parser", "cmd_enumerate", "cmd_label",
           "cmd_match", "cmd_verify", "cmd_export"]

COMMANDS = ("enumerate", "label", "match", "verify", "export")
_LABEL_RE = re.compile(r"^([A-G])([0-9]+)$")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; round-trips losslessly through to_json."""

    type_label: str
    rank: int
    command: str
    parabolic: tuple[int, ...] = ()
    all_parabolics: bool = False
    cell: str | None = None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    seed: int = 0
    cap_group: int = DEFAULT_GROUP_CAP
    cap_simplices: int = DEFAULT_SIMPLEX_CAP
    inject_fault: str | None = None

    def to_json(self) -> dict:
        body = asdict(self)
        body["parabolic"] = list(self.parabolic)
        return body

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        data = dict(data)
        data["parabolic"] = tuple(data.get("parabolic", ()))
        return cls(**data)

    @property
    def system_label(self) -> str:
        return f"{self.type_label}{self.rank}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tnnmorse",
        description="Cell posets, Morse matchings and shelling checks "
                    "for flag-variety nonnegative parts, by Weyl type.",
    )
    p.add_argument("tokens", nargs="*", metavar="SYSTEM|COMMAND",
                   help="a type-rank label like A3, and one of: "
                        + " ".join(COMMANDS))
    p.add_argument("--type", dest="type_label", metavar="T",
                   help="Cartan type letter A..G (with --rank)")
    p.add_argument("--rank", type=int, help="rank n for --type")
    p.add_argument("--parabolic", default="", metavar="i,j",
                   help="generator indices of J, comma separated")
    p.add_argument("--cell", metavar="x:u:w",
                   help="cell as three comma-separated words; e = identity")
    p.add_argument("--format", dest="fmt", default="json",
                   choices=["json", "dot", "text"])
    p.add_argument("--out", metavar="DIR",
                   help="directory for exported artifacts")
    p.add_argument("--jobs", type=int, default=1,
                   help="concurrent per-cell verification jobs")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized order-independence checks")
    p.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP,
                   help="refuse groups larger than this order")
    p.add_argument("--cap-simplices", type=int, default=DEFAULT_SIMPLEX_CAP,
                   help="refuse order complexes larger than this")
    p.add_argument("--all", dest="all_parabolics", action="store_true",
                   help="verify over every parabolic subset")
    p.add_argument("--inject-fault", choices=["cycle", "goodness"],
                   help=argparse.SUPPRESS)
    return p


def config_from_args(parser: argparse.ArgumentParser,
                     args: argparse.Namespace) -> RunConfig:
    command = None
    type_label, rank = args.type_label, args.rank
    for token in args.tokens:
        if token in COMMANDS:
            if command is not None:
                parser.error(f"two commands given: {command} and {token}")
            command = token
            continue
        m = _LABEL_RE.match(token)
        if m is None:
            parser.error(f"unrecognized token {token!r}")
        if type_label is not None:
            parser.error(f"system given twice ({token!r})")
        type_label, rank = m.group(1), int(m.group(2))
    if command is None:
        parser.error("no command given; expected one of "
                     + ", ".join(COMMANDS))
    if type_label is None or rank is None:
        parser.error("no system given; use a label like A3 or --type/--rank")
    try:
        parabolic = tuple(
            int(s) for s in args.parabolic.split(",") if s.strip()
        )
    except ValueError:
        parser.error(f"malformed --parabolic {args.parabolic!r}")
    return RunConfig(
        type_label=type_label, rank=rank, command=command,
        parabolic=parabolic, all_parabolics=args.all_parabolics,
        cell=args.cell, fmt=args.fmt, out=args.out, jobs=args.jobs,
        seed=args.seed, cap_group=args.cap_group,
        cap_simplices=args.cap_simplices, inject_fault=args.inject_fault,
    )


def _system(config: RunConfig):
    return coxeter_system(config.system_label, max_order=config.cap_group)


def _target_cell(config: RunConfig, Q):
    par = Q.parabolic
    if config.cell:
        return parse_cell(par, config.cell)
    return Q.cells[Q.top_index()]


def cmd_enumerate(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    system = _system(config)
    Q = q_poset(system, config.parabolic)
    cells = [c for c in Q.cells if not c.is_bottom]
    counts: dict[int, int] = {}
    for c in cells:
        counts[c.dim] = counts.get(c.dim, 0) + 1
    if config.fmt == "dot":
        out.write(hasse_dot(Q, name="q_poset"))
    elif config.fmt == "text":
        for d in sorted(counts):
            out.write(f"dim {d}: {counts[d]} cells\n")
        out.write(f"total {len(cells)} cells plus the bottom element\n")
    else:
        out.write(dumps({
            "schema": "tnn-morse/1",
            "kind": "cells",
            "config": config.to_json(),
            "counts": {str(d): counts[d] for d in sorted(counts)},
            "cells": [cell_to_json(c) for c in cells],
        }))
    return 0


def cmd_label(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    system = _system(config)
    order = reflection_order_from_word(system, system.longest.word)
    if config.cell:
        Q = q_poset(system, config.parabolic)
        c = _target_cell(config, Q)
        lo, hi = c.x, c.w * c.u
    else:
        lo, hi = system.identity, system.longest
    labeling = dyer_labeling(interval(lo, hi), order)
    ok, witness = verify_el(labeling)
    if config.fmt == "dot":
        out.write(labeling_dot(labeling))
    elif config.fmt == "text":
        for a, b, t in sorted(
            (a, b, labeling.labels[(a, b)].as_word)
            for a, b in labeling.poset.covers
        ):
            out.write(f"{a} -> {b}: {','.join(map(str, t))}\n")
        out.write(f"el: {'pass' if ok else 'FAIL'}\n")
    else:
        body = labeling_to_json(labeling)
        body["config"] = config.to_json()
        body["el"] = ok
        if not ok:
            body["witness"] = str(witness)
        out.write(dumps(body))
    return 0 if ok else 1


def cmd_match(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    system = _system(config)
    Q = q_poset(system, config.parabolic)
    c = _target_cell(config, Q)
    m = match_closure(c)
    acyclic, cycle = verify_acyclic(m)
    summ = morse_summary(m)
    checked, good, bad = goodness_report(m)
    healthy = (acyclic and good == checked
               and summ.m_p == {0: 1} and summ.euler == 1)
    if config.fmt == "dot":
        out.write(matching_dot(m))
    elif config.fmt == "text":
        out.write(f"cell {cell_str(c)}: {len(m.poset)} faces, "
                  f"{len(m.matched)} matched pairs\n")
        out.write(f"critical: {[cell_str(x) for x in m.critical_elements]}\n")
        out.write(f"acyclic: {acyclic}  goodness: {good}/{checked}\n")
    else:
        body = matching_to_json(m)
        body["config"] = config.to_json()
        body["cell"] = cell_str(c)
        body["acyclic"] = acyclic
        if cycle:
            body["cycle"] = list(cycle)
        body["critical_dims"] = sorted(x.dim for x in m.critical_elements)
        body["goodness"] = [checked, good]
        out.write(dumps(body))
    return 0 if healthy else 1


def cmd_verify(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    system = _system(config)
    parabolics = None if config.all_parabolics else [config.parabolic]
    report = run_suite(
        system, parabolics, jobs=config.jobs, seed=config.seed,
        max_simplices=config.cap_simplices, fault=config.inject_fault,
    )
    if config.fmt == "text":
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            tail = f"  {c.detail}" if c.detail else ""
            out.write(f"{mark} {c.name}{tail}\n")
        out.write("all checks passed\n" if report.passed else
                  f"{sum(not c.passed for c in report.checks)} checks "
                  f"failed\n")
    else:
        body = report.to_json()
        body["config"] = config.to_json()
        out.write(dumps(body))
    return 0 if report.passed else 1


def cmd_export(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    system = _system(config)
    Q = q_poset(system, config.parabolic)
    c = _target_cell(config, Q)
    m = match_closure(c)
    base = config.system_label
    if config.parabolic:
        base += "_J" + "-".join(map(str, config.parabolic))
    directory = config.out or "."
    os.makedirs(directory, exist_ok=True)
    artifacts = {
        f"{base}.qposet.json": dumps(qposet_to_json(Q)),
        f"{base}.hasse.dot": hasse_dot(Q, name="q_poset"),
        f"{base}.matching.json": dumps(matching_to_json(m)),
        f"{base}.matching.dot": matching_dot(m),
    }
    for filename, payload in sorted(artifacts.items()):
        path = os.path.join(directory, filename)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        out.write(path + "\n")
    return 0


_DISPATCH = {
    "enumerate": cmd_enumerate,
    "label": cmd_label,
    "match": cmd_match,
    "verify": cmd_verify,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        # intermixed: system label, flags and command may come in any order
        args = parser.parse_intermixed_args(argv)
        config = config_from_args(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[config.command](config)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    except (TnnMorseError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
