"""Command-line interface: registry parsing, pipelines, and theorem checks.

Input files are line-oriented: a block header ``group NAME`` / ``rack NAME`` /
``augrack NAME`` / ``precrossed NAME`` followed by indented ``key: value``
lines, with ``#`` starting a comment and tables written as comma-separated
index rows joined by ``/``.  Reports are deterministic byte-for-byte; timing
goes to stderr only.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from .algebra import (
    AugmentedRack,
    FiniteGroup,
    PreCrossedModule,
    Rack,
    conjugation_action,
    conjugation_structure,
    group_from_permutations,
    restrict_to_image,
    trivial_action,
    trivial_group,
    validate_augmented_rack,
    validate_group,
    validate_precrossed,
    validate_rack,
)
from .errors import Incompatible, ParseError, PrecrossedError, ResourceBound, ValidationError
from .homology import MATRIX_CAP, chain_complex, homology, induced_map
from .oracles import group_homology, rack_complex, tensor_algebra_dims
from .simplicial import (
    SIMPLEX_CAP,
    build_clauwens,
    build_coskeleton,
    build_envelope,
    build_nerve,
    canonical_to_coskeleton,
)
from .words import WordMode

PIPELINES = ("envelope", "clauwens", "rackcomplex", "coskeleton", "nerve")
COEFFS = ("Z", "Q", "F2", "F3", "F5")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DISAGREE = 2
EXIT_RESOURCE = 3


@dataclass
class Registry:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    racks: dict[str, Rack] = field(default_factory=dict)
    augracks: dict[str, AugmentedRack] = field(default_factory=dict)
    precrossed: dict[str, PreCrossedModule] = field(default_factory=dict)

    def lookup(self, name: str) -> tuple[str, object]:
        for kind, table in (
            ("group", self.groups),
            ("rack", self.racks),
            ("augrack", self.augracks),
            ("precrossed", self.precrossed),
        ):
            if name in table:
                return kind, table[name]
        raise ParseError(f"unknown object {name!r}")

    def names(self):
        out = []
        for table in (self.groups, self.racks, self.augracks, self.precrossed):
            out.extend(table)
        return out


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"{what}: expected comma-separated integers, got {text!r}") from exc


def _rows(text: str, what: str) -> list[list[int]]:
    return [_ints(part, what) for part in text.split("/")]


class _Parser:
    def __init__(self, text: str):
        self.registry = Registry()
        self.block_kind: str | None = None
        self.block_name: str | None = None
        self.block_line = 0
        self.keys: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            if line[0] in " \t":
                self._key_line(line.strip(), lineno)
            else:
                self._finish()
                self._header(line, lineno)
        self._finish()

    def _header(self, line: str, lineno: int) -> None:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("group", "rack", "augrack", "precrossed"):
            raise ParseError(f"line {lineno}: expected 'group|rack|augrack|precrossed NAME'")
        kind, name = parts
        if name in self.registry.names():
            raise ParseError(f"line {lineno}: duplicate name {name!r}")
        self.block_kind, self.block_name, self.block_line = kind, name, lineno
        self.keys = {}

    def _key_line(self, line: str, lineno: int) -> None:
        if self.block_kind is None:
            raise ParseError(f"line {lineno}: key line outside a block")
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        key = key.strip()
        if key in self.keys:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        self.keys[key] = value.strip()

    def _group_ref(self, name: str) -> FiniteGroup:
        if name not in self.registry.groups:
            raise ParseError(f"line {self.block_line}: undeclared group {name!r}")
        return self.registry.groups[name]

    def _need(self, *keys: str) -> None:
        for key in keys:
            if key not in self.keys:
                raise ParseError(
                    f"line {self.block_line}: {self.block_kind} {self.block_name!r} needs key {key!r}"
                )
        extra = set(self.keys) - set(keys)
        if extra:
            raise ParseError(
                f"line {self.block_line}: unexpected key {sorted(extra)[0]!r} in {self.block_name!r}"
            )

    def _finish(self) -> None:
        if self.block_kind is None:
            return
        kind, name, keys = self.block_kind, self.block_name, self.keys
        try:
            if kind == "group":
                if "perms" in keys:
                    self._need("perms")
                    obj = group_from_permutations(_rows(keys["perms"], "perms"))
                else:
                    self._need("table")
                    obj = validate_group(_rows(keys["table"], "table"))
                self.registry.groups[name] = obj
            elif kind == "rack":
                self._need("table")
                self.registry.racks[name] = validate_rack(_rows(keys["table"], "table"))
            elif kind == "augrack":
                if "subset" in keys:
                    self._need("group", "subset")
                    group = self._group_ref(keys["group"])
                    obj = conjugation_structure(group, _ints(keys["subset"], "subset"))
                else:
                    self._need("group", "size", "pi", "action")
                    group = self._group_ref(keys["group"])
                    size = int(keys["size"])
                    pi = _ints(keys["pi"], "pi")
                    action = self._action(keys["action"], group, size, None)
                    labels = [f"x{i}" for i in range(size)]
                    obj = validate_augmented_rack(labels, group, action, pi)
                self.registry.augracks[name] = obj
            elif kind == "precrossed":
                self._need("x", "g", "pi", "action")
                xg = self._group_ref(keys["x"])
                g = self._group_ref(keys["g"])
                pi = self._pi(keys["pi"], xg, g)
                action = self._action(keys["action"], g, xg.order, xg)
                self.registry.precrossed[name] = validate_precrossed(xg, g, action, pi)
        except ValidationError:
            raise
        except PrecrossedError as exc:
            raise type(exc)(f"{name}: {exc}") from exc
        self.block_kind = None

    def _pi(self, value: str, xg: FiniteGroup, g: FiniteGroup) -> list[int]:
        if value == "id":
            if xg.order != g.order:
                raise ParseError(f"line {self.block_line}: pi 'id' needs matching groups")
            return list(range(xg.order))
        if value == "trivial":
            return [g.identity] * xg.order
        return _ints(value, "pi")

    def _action(self, value: str, group: FiniteGroup, size: int, xg: FiniteGroup | None):
        if value == "trivial":
            return trivial_action(group, size)
        if value == "conjugation":
            if xg is None or xg.order != group.order:
                raise ParseError(
                    f"line {self.block_line}: 'conjugation' action needs x and g to be the same group"
                )
            return conjugation_action(group)
        return _rows(value, "action")


def parse_input(path: str) -> Registry:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_text(text)


def parse_text(text: str) -> Registry:
    return _Parser(text).registry


def render_registry(reg: Registry) -> str:
    """Serialize back to the input schema (tables in canonical index form)."""
    out = []
    for name, group in reg.groups.items():
        out.append(f"group {name}")
        out.append("  table: " + " / ".join(",".join(map(str, row)) for row in group.table))
        out.append("")
    for name, rack in reg.racks.items():
        out.append(f"rack {name}")
        out.append("  table: " + " / ".join(",".join(map(str, row)) for row in rack.op))
        out.append("")
    group_names = {id(g): n for n, g in reg.groups.items()}
    for name, ar in reg.augracks.items():
        gname = group_names.get(id(ar.group))
        if gname is None:
            raise ValidationError(f"augrack {name} references an unregistered group")
        out.append(f"augrack {name}")
        out.append(f"  group: {gname}")
        out.append(f"  size: {ar.size}")
        out.append("  pi: " + ",".join(map(str, ar.pi)))
        out.append("  action: " + " / ".join(",".join(map(str, row)) for row in ar.action.table))
        out.append("")
    for name, pm in reg.precrossed.items():
        xname = group_names.get(id(pm.x_group))
        gname = group_names.get(id(pm.group))
        if xname is None or gname is None:
            raise ValidationError(f"precrossed {name} references an unregistered group")
        out.append(f"precrossed {name}")
        out.append(f"  x: {xname}")
        out.append(f"  g: {gname}")
        out.append("  pi: " + ",".join(map(str, pm.pi)))
        out.append("  action: " + " / ".join(",".join(map(str, row)) for row in pm.action.table))
        out.append("")
    return "\n".join(out)


@dataclass
class Report:
    command: str
    params: dict[str, str]
    lines: list[str] = field(default_factory=list)
    verdict: str | None = None
    machine: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def render(self, machine: bool = False) -> str:
        if machine:
            return "\n".join(self.machine) + ("\n" if self.machine else "")
        out = [f"command: {self.command}"]
        out.extend(f"{key}: {value}" for key, value in self.params.items())
        out.extend(self.lines)
        if self.verdict is not None:
            out.append(f"verdict: {self.verdict}")
        return "\n".join(out) + "\n"


def _as_rack(kind: str, obj) -> AugmentedRack:
    if kind == "augrack":
        return obj
    if kind == "precrossed":
        return obj.as_augmented_rack()
    raise Incompatible(f"a {kind} cannot feed a rack pipeline")


def _resolve_pipeline(kind: str, obj, pipeline: str):
    """Build the simplicial spec for an object/pipeline pair (rackcomplex aside)."""
    if pipeline == "envelope":
        if kind == "precrossed":
            return build_envelope(obj, WordMode.GROUP_SYLLABLE)
        if kind == "augrack":
            return build_envelope(obj, WordMode.FREE_LETTER)
        raise Incompatible(f"envelope pipeline needs a pre-crossed module or augmented rack, got {kind}")
    if pipeline == "clauwens":
        return build_clauwens(_as_rack(kind, obj))
    if pipeline == "coskeleton":
        if kind != "precrossed":
            raise Incompatible(f"coskeleton pipeline needs a pre-crossed module, got {kind}")
        return build_coskeleton(obj)
    if pipeline == "nerve":
        if kind != "group":
            raise Incompatible(f"nerve pipeline needs a group, got {kind}")
        return build_nerve(obj)
    raise Incompatible(f"unknown pipeline {pipeline!r}")


def _pipeline_complex(kind, obj, pipeline, m_max, length, simplex_cap, matrix_cap):
    if pipeline == "rackcomplex":
        return rack_complex(_as_rack(kind, obj), m_max + 1)
    spec = _resolve_pipeline(kind, obj, pipeline)
    return chain_complex(spec, m_max, length, simplex_cap=simplex_cap, matrix_cap=matrix_cap)


def cmd_homology(reg: Registry, name: str, pipeline: str, m_max: int, length: int,
                 coeff: str, simplex_cap: int, matrix_cap: int) -> Report:
    kind, obj = reg.lookup(name)
    start = time.perf_counter()
    comp = _pipeline_complex(kind, obj, pipeline, m_max, length, simplex_cap, matrix_cap)
    groups = [homology(comp, m, coeff) for m in range(m_max + 1)]
    report = Report(
        "homology",
        {
            "object": name,
            "pipeline": pipeline,
            "coeff": coeff,
            "max-degree": str(m_max),
            "max-length": str(length),
            "cap": str(simplex_cap),
        },
    )
    report.lines = [f"H_{h.degree} = {h.render()}" for h in groups]
    report.machine = [h.machine() for h in groups]
    report.elapsed = time.perf_counter() - start
    return report


def cmd_compare_ra(reg: Registry, name: str, m_max: int, length: int,
                   simplex_cap: int, matrix_cap: int) -> Report:
    kind, obj = reg.lookup(name)
    rack = _as_rack(kind, obj)
    start = time.perf_counter()
    columns = {}
    for pipeline in ("envelope", "clauwens", "rackcomplex"):
        comp = _pipeline_complex("augrack", rack, pipeline, m_max, length, simplex_cap, matrix_cap)
        columns[pipeline] = [homology(comp, m) for m in range(m_max + 1)]
    agree = all(
        columns["envelope"][m].same_group(columns["clauwens"][m])
        and columns["envelope"][m].same_group(columns["rackcomplex"][m])
        for m in range(m_max + 1)
    )
    report = Report(
        "compare-ra",
        {
            "object": name,
            "max-degree": str(m_max),
            "max-length": str(length),
            "cap": str(simplex_cap),
        },
    )
    report.lines.append("degree envelope clauwens rackcomplex")
    for m in range(m_max + 1):
        report.lines.append(
            f"{m} {columns['envelope'][m].render()} {columns['clauwens'][m].render()} "
            f"{columns['rackcomplex'][m].render()}"
        )
    report.verdict = "AGREE" if agree else "DISAGREE"
    report.elapsed = time.perf_counter() - start
    return report


def cmd_check_tri(reg: Registry, name: str, m_max: int, coeff: str, lengths: list[int],
                  simplex_cap: int, matrix_cap: int) -> Report:
    kind, obj = reg.lookup(name)
    if kind != "group":
        raise Incompatible(f"check-tri needs a group, got {kind}")
    if coeff == "Z":
        raise Incompatible("check-tri needs field coefficients")
    start = time.perf_counter()
    base = trivial_group()
    module = validate_precrossed(
        obj, base, trivial_action(base, obj.order), [base.identity] * obj.order
    )
    spec = build_envelope(module, WordMode.GROUP_SYLLABLE)
    generators = []
    for m in range(1, m_max + 1):
        betti = group_homology(obj, m, coeff).betti
        if betti:
            generators.append((m, betti))
    expected = [tensor_algebra_dims(generators, m) for m in range(m_max + 1)]
    table: dict[int, list[int]] = {}
    for length in lengths:
        comp = chain_complex(spec, m_max, length, simplex_cap=simplex_cap, matrix_cap=matrix_cap)
        table[length] = [homology(comp, m, coeff).betti for m in range(m_max + 1)]
    compare_at = {m: (m + 1 if m + 1 in lengths else max(lengths)) for m in range(m_max + 1)}
    agree = all(table[compare_at[m]][m] == expected[m] for m in range(m_max + 1))
    report = Report(
        "check-tri",
        {
            "object": name,
            "coeff": coeff,
            "max-degree": str(m_max),
            "lengths": ",".join(map(str, lengths)),
            "cap": str(simplex_cap),
        },
    )
    report.lines.append(
        "generators: " + (", ".join(f"degree {d} x{c}" for d, c in generators) or "none")
    )
    header = "m expected " + " ".join(f"L={length}" for length in lengths)
    report.lines.append(header)
    for m in range(m_max + 1):
        cells = " ".join(str(table[length][m]) for length in lengths)
        report.lines.append(f"{m} {expected[m]} {cells}")
    report.lines.append(
        "compared: " + ", ".join(f"m={m}@L={compare_at[m]}" for m in range(m_max + 1))
    )
    report.verdict = "AGREE" if agree else "DISAGREE"
    report.elapsed = time.perf_counter() - start
    return report


def cmd_check_coskeleton(reg: Registry, name: str, m_max: int,
                         simplex_cap: int, matrix_cap: int) -> Report:
    kind, obj = reg.lookup(name)
    if kind != "precrossed":
        raise Incompatible(f"check-coskeleton needs a pre-crossed module, got {kind}")
    start = time.perf_counter()
    surjective = set(obj.pi) == set(range(obj.group.order))
    module = obj if surjective else restrict_to_image(obj)
    cosk = chain_complex(
        build_coskeleton(module), m_max, simplex_cap=simplex_cap, matrix_cap=matrix_cap
    )
    nerve = chain_complex(
        build_nerve(module.group), m_max, simplex_cap=simplex_cap, matrix_cap=matrix_cap
    )
    cosk_h = [homology(cosk, m) for m in range(m_max + 1)]
    nerve_h = [homology(nerve, m) for m in range(m_max + 1)]
    agree = all(a.same_group(b) for a, b in zip(cosk_h, nerve_h))
    cmap = canonical_to_coskeleton(module)
    env = chain_complex(
        cmap.source, m_max, m_max + 1, simplex_cap=simplex_cap, matrix_cap=matrix_cap
    )
    maps = [induced_map(cmap, env, cosk, m) for m in range(m_max + 1)]
    h0_iso = maps[0].is_isomorphism()
    report = Report(
        "check-coskeleton",
        {
            "object": name,
            "max-degree": str(m_max),
            "max-length": str(m_max + 1),
            "pi-surjective": "yes" if surjective else "no (base group replaced by image)",
            "cap": str(simplex_cap),
        },
    )
    report.lines.append("degree coskeleton nerve")
    for m in range(m_max + 1):
        report.lines.append(f"{m} {cosk_h[m].render()} {nerve_h[m].render()}")
    for m, imap in enumerate(maps):
        report.lines.append(f"induced H_{m} matrix: {imap.matrix}")
    report.lines.append(f"induced H_0 isomorphism: {'yes' if h0_iso else 'no'}")
    report.verdict = "AGREE" if agree and h0_iso else "DISAGREE"
    report.elapsed = time.perf_counter() - start
    return report


def cmd_sweep(reg: Registry, name: str, pipeline: str, degree: int, lengths: list[int],
              simplex_cap: int, matrix_cap: int) -> Report:
    kind, obj = reg.lookup(name)
    start = time.perf_counter()
    values = []
    for length in lengths:
        comp = _pipeline_complex(kind, obj, pipeline, degree, length, simplex_cap, matrix_cap)
        h = homology(comp, degree)
        values.append((length, h, comp.dim(degree)))
    stabilized = None
    for (l1, h1, _), (_, h2, _) in zip(values, values[1:]):
        if h1.same_group(h2):
            stabilized = l1
            break
    report = Report(
        "sweep",
        {
            "object": name,
            "pipeline": pipeline,
            "degree": str(degree),
            "lengths": ",".join(map(str, lengths)),
            "cap": str(simplex_cap),
        },
    )
    for length, h, dim in values:
        warn = "" if dim else " (warning: empty basis)"
        report.lines.append(f"L={length}: H_{degree} = {h.render()}{warn}")
    report.lines.append(
        f"stabilized-at: L={stabilized}" if stabilized is not None else "stabilized-at: none"
    )
    report.elapsed = time.perf_counter() - start
    return report


def cmd_validate(reg: Registry) -> Report:
    report = Report("validate", {})
    for name, group in reg.groups.items():
        report.lines.append(f"group {name}: order {group.order}")
    for name, rack in reg.racks.items():
        report.lines.append(f"rack {name}: size {rack.size}")
    for name, ar in reg.augracks.items():
        report.lines.append(
            f"augrack {name}: carrier {ar.size} over group of order {ar.group.order}"
        )
    for name, pm in reg.precrossed.items():
        report.lines.append(
            f"precrossed {name}: |X| = {pm.x_group.order}, |G| = {pm.group.order}"
        )
    return report


def _parse_length_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad length list {text!r}") from exc
    if not values or any(v < 0 for v in values):
        raise ParseError(f"bad length list {text!r}")
    return values


def _parse_length_range(text: str) -> list[int]:
    if ".." in text:
        try:
            lo, hi = (int(v) for v in text.split("..", 1))
        except ValueError as exc:
            raise ParseError(f"bad length range {text!r}") from exc
        if hi < lo:
            raise ParseError(f"bad length range {text!r}")
        return list(range(lo, hi + 1))
    return _parse_length_list(text)


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="precrossed",
        description="Homology of pre-crossed modules, racks, and groups at desk scale.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("file")
        p.add_argument("--object", required=True)
        p.add_argument("--cap", type=int, default=None,
                       help="override the per-degree simplex cap and matrix cap")

    p = sub.add_parser("validate", help="parse and validate a registry file")
    p.add_argument("file")

    p = sub.add_parser("homology", help="homology of one object through one pipeline")
    common(p)
    p.add_argument("--pipeline", required=True, choices=PIPELINES)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--coeff", default="Z", choices=COEFFS)
    p.add_argument("--machine", action="store_true")

    p = sub.add_parser("compare-ra", help="envelope vs Clauwens vs rack complex")
    common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--max-length", type=int, required=True)

    p = sub.add_parser("check-tri", help="trivial-action envelope vs tensor algebra")
    common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--coeff", required=True, choices=("Q", "F2", "F3", "F5"))
    p.add_argument("--lengths", required=True)

    p = sub.add_parser("check-coskeleton", help="coskeleton vs nerve plus induced map")
    common(p)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("sweep", help="one homology degree across truncation lengths")
    common(p)
    p.add_argument("--pipeline", required=True, choices=PIPELINES)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--lengths", required=True)
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    simplex_cap = args.cap if getattr(args, "cap", None) else SIMPLEX_CAP
    matrix_cap = args.cap if getattr(args, "cap", None) else MATRIX_CAP
    try:
        reg = parse_input(args.file)
        if args.cmd == "validate":
            report = cmd_validate(reg)
        elif args.cmd == "homology":
            report = cmd_homology(reg, args.object, args.pipeline, args.max_degree,
                                  args.max_length, args.coeff, simplex_cap, matrix_cap)
        elif args.cmd == "compare-ra":
            report = cmd_compare_ra(reg, args.object, args.max_degree, args.max_length,
                                    simplex_cap, matrix_cap)
        elif args.cmd == "check-tri":
            report = cmd_check_tri(reg, args.object, args.max_degree, args.coeff,
                                   _parse_length_list(args.lengths), simplex_cap, matrix_cap)
        elif args.cmd == "check-coskeleton":
            report = cmd_check_coskeleton(reg, args.object, args.max_degree,
                                          simplex_cap, matrix_cap)
        elif args.cmd == "sweep":
            report = cmd_sweep(reg, args.object, args.pipeline, args.degree,
                               _parse_length_range(args.lengths), simplex_cap, matrix_cap)
        else:  # pragma: no cover
            raise Incompatible(f"unknown command {args.cmd}")
    except ResourceBound as exc:
        print(f"error: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, Incompatible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.render(machine=getattr(args, "machine", False)))
    print(f"elapsed: {report.elapsed:.3f}s", file=sys.stderr)
    return EXIT_DISAGREE if report.verdict == "DISAGREE" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
