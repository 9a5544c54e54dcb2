"""Blue Gene/Q style machine model: midplane grids, partitions, bisection.

A machine is a 4-dimensional grid of midplanes; every midplane is 512 nodes
wired as a 4 x 4 x 4 x 4 x 2 torus. A partition of a x b x c x d midplanes
is the node-level torus (4a, 4b, 4c, 4d, 2), with both parallel links kept
on the length-2 dimension since that is how the machines are cabled.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from math import prod
from typing import Optional

from .core import ShapeError, TorusShape, canonicalize

MIDPLANE_NODE_DIMS = (4, 4, 4, 4, 2)
NODES_PER_MIDPLANE = 512
DEFAULT_LINK_GBPS = 2.0  # per direction


class MachineError(ValueError):
    """Bad machine definition, policy, or partition request."""


@dataclass(frozen=True)
class PartitionGeometry:
    """A partition's midplane extents, kept in non-increasing order."""

    extents: tuple[int, int, int, int]

    def __post_init__(self):
        ext = tuple(int(x) for x in self.extents)
        if len(ext) != 4:
            raise MachineError(f"geometry needs exactly 4 extents, got {ext}")
        if any(x < 1 for x in ext):
            raise MachineError(
                f"extents must be positive midplane counts, got {ext}; "
                "sub-midplane partitions are not modeled"
            )
        object.__setattr__(self, "extents", tuple(sorted(ext, reverse=True)))

    @property
    def midplanes(self) -> int:
        return prod(self.extents)

    @property
    def nodes(self) -> int:
        return NODES_PER_MIDPLANE * self.midplanes

    @classmethod
    def parse(cls, text: str) -> "PartitionGeometry":
        parts = re.split(r"[x,]", text.strip().lower())
        try:
            return cls(tuple(int(p) for p in parts))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MachineError):
                raise
            raise MachineError(f"cannot parse geometry {text!r}; expected like 4x2x1x1")

    def __str__(self) -> str:
        return "x".join(str(x) for x in self.extents)


@dataclass(frozen=True)
class MachineSpec:
    """A named machine: its midplane grid and per-direction link capacity."""

    name: str
    grid: tuple[int, int, int, int]
    link_gbps: float = DEFAULT_LINK_GBPS

    def __post_init__(self):
        grid = tuple(int(x) for x in self.grid)
        if len(grid) != 4 or any(x < 1 for x in grid):
            raise MachineError(f"machine grid needs 4 positive extents, got {grid}")
        if self.link_gbps <= 0:
            raise MachineError("link capacity must be positive")
        object.__setattr__(self, "grid", tuple(sorted(grid, reverse=True)))

    @property
    def total_midplanes(self) -> int:
        return prod(self.grid)

    @property
    def total_nodes(self) -> int:
        return NODES_PER_MIDPLANE * self.total_midplanes

    def bisection_gbps(self, geometry: PartitionGeometry) -> float:
        return partition_bisection_bw(geometry) * self.link_gbps


def partition_bisection_bw(geometry: PartitionGeometry) -> int:
    """Bisection of a partition in links: 256 * midplanes / longest extent.

    Cutting the node torus (4a, 4b, 4c, 4d, 2) across its longest dimension
    severs 2 * nodes / (4a) links, which reduces to 256 * b * c * d. Exact
    integer; multiply by link_gbps for GB/s.
    """
    a, b, c, d = geometry.extents
    return 256 * b * c * d


def node_shape(geometry: PartitionGeometry) -> TorusShape:
    """Node-level torus of a partition, doubled links on the length-2 dim."""
    a, b, c, d = geometry.extents
    return canonicalize((4 * a, 4 * b, 4 * c, 4 * d, 2), length2_multiplicity=2)


def fits(machine: MachineSpec, geometry: PartitionGeometry) -> bool:
    """Whether the geometry packs into the machine grid.

    Both sides are canonical non-increasing, so elementwise comparison is
    exactly the existence of an axis assignment.
    """
    return all(g <= m for g, m in zip(geometry.extents, machine.grid))


BUILTIN_MACHINES = {
    "mira": MachineSpec("mira", (4, 4, 3, 2)),
    "juqueen": MachineSpec("juqueen", (7, 2, 2, 2)),
    "sequoia": MachineSpec("sequoia", (4, 4, 4, 3)),
    "juqueen-54": MachineSpec("juqueen-54", (3, 3, 3, 2)),
    "juqueen-48": MachineSpec("juqueen-48", (4, 3, 2, 2)),
}


def builtin_machines() -> dict[str, MachineSpec]:
    return dict(BUILTIN_MACHINES)


def parse_machine_file(text: str, default_name: str = "machine") -> MachineSpec:
    """Parse the plain-text machine format.

    Lines are `key value...`; `#` starts a comment. Keys: name (optional),
    grid (required, 4 integers), link_capacity_gbps (optional, default 2).
    """
    name = default_name
    grid = None
    link = DEFAULT_LINK_GBPS
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "name":
            if not rest:
                raise MachineError(f"line {lineno}: name needs a value")
            name = rest
        elif key == "grid":
            fields = rest.split()
            if len(fields) != 4:
                raise MachineError(f"line {lineno}: grid needs 4 integers")
            try:
                grid = tuple(int(f) for f in fields)
            except ValueError:
                raise MachineError(f"line {lineno}: grid needs 4 integers")
        elif key == "link_capacity_gbps":
            try:
                link = float(rest)
            except ValueError:
                raise MachineError(f"line {lineno}: bad link capacity {rest!r}")
        else:
            raise MachineError(f"line {lineno}: unknown key {key!r}")
    if grid is None:
        raise MachineError("machine file is missing the grid line")
    return MachineSpec(name, grid, link)


def load_machine(source: str) -> MachineSpec:
    """A builtin machine by name, or a machine file by path."""
    key = source.strip().lower()
    if key in BUILTIN_MACHINES:
        return BUILTIN_MACHINES[key]
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            stem = os.path.splitext(os.path.basename(source))[0]
            return parse_machine_file(fh.read(), default_name=stem)
    raise MachineError(
        f"unknown machine {source!r}; builtins: {', '.join(sorted(BUILTIN_MACHINES))}"
    )


MODE_EXPLICIT = "explicit-list"
MODE_ANY = "any-fitting-cuboid"


@dataclass(frozen=True)
class PolicySpec:
    """An allocation policy: a fixed geometry per size, or any fitting cuboid."""

    name: str
    mode: str
    allowed: dict[int, PartitionGeometry] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (MODE_EXPLICIT, MODE_ANY):
            raise MachineError(f"unknown policy mode {self.mode!r}")
        if self.mode == MODE_ANY and self.allowed:
            raise MachineError("any-fitting-cuboid policies list no geometries")
        for size, geom in self.allowed.items():
            if size < 1:
                raise MachineError(f"policy size {size} is not a positive midplane count")
            if geom.midplanes != size:
                raise MachineError(
                    f"policy entry {size} lists geometry {geom} of {geom.midplanes} midplanes"
                )

    def validate_for(self, machine: MachineSpec) -> None:
        for size, geom in sorted(self.allowed.items()):
            if not fits(machine, geom):
                raise MachineError(
                    f"policy {self.name!r} geometry {geom} does not fit machine "
                    f"{machine.name!r} grid {'x'.join(map(str, machine.grid))}"
                )


def parse_policy_file(text: str, default_name: str = "policy") -> PolicySpec:
    """Parse the plain-text policy format.

    First meaningful line: `mode explicit-list` or `mode any-fitting-cuboid`.
    Explicit lists then carry one `size geometry` line per entry, e.g.
    `8 4x2x1x1`. `#` starts a comment.
    """
    mode = None
    allowed: dict[int, PartitionGeometry] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mode is None:
            key, _, rest = line.partition(" ")
            if key != "mode":
                raise MachineError(f"line {lineno}: policy file must start with a mode line")
            mode = rest.strip()
            continue
        fields = line.split()
        if len(fields) != 2:
            raise MachineError(f"line {lineno}: expected `size geometry`, got {line!r}")
        try:
            size = int(fields[0])
        except ValueError:
            raise MachineError(f"line {lineno}: bad size {fields[0]!r}")
        if size in allowed:
            raise MachineError(f"line {lineno}: duplicate size {size}")
        allowed[size] = PartitionGeometry.parse(fields[1])
    if mode is None:
        raise MachineError("policy file is empty")
    return PolicySpec(default_name, mode, allowed)


def builtin_policies() -> dict[str, PolicySpec]:
    from .golden import mira_2017_policy

    return {"mira-2017": mira_2017_policy(), "any": PolicySpec("any", MODE_ANY)}


def load_policy(source: str) -> PolicySpec:
    """A builtin policy by name, or a policy file by path."""
    key = source.strip().lower()
    builtins = builtin_policies()
    if key in builtins:
        return builtins[key]
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            stem = os.path.splitext(os.path.basename(source))[0]
            return parse_policy_file(fh.read(), default_name=stem)
    raise MachineError(
        f"unknown policy {source!r}; builtins: {', '.join(sorted(builtins))}"
    )
