"""Allocation-policy audits: enumerate geometries, rank by bisection.

An audit answers, per partition size, how the geometry a policy hands out
compares against the best geometry the machine could offer at that size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bgq import (
    MODE_EXPLICIT,
    MachineError,
    MachineSpec,
    PartitionGeometry,
    PolicySpec,
    fits,
    partition_bisection_bw,
)


@dataclass(frozen=True)
class AuditRow:
    """One audited size. baseline_* is the policy's geometry (explicit-list
    policies only); worst_* the minimum-bisection fitting geometry (any-cuboid
    policies only); best_* the maximum. improvement_factor is best over
    baseline when a baseline exists, otherwise best over worst."""

    midplanes: int
    nodes: int
    baseline_geometry: Optional[PartitionGeometry]
    baseline_bw: Optional[int]
    worst_geometry: Optional[PartitionGeometry]
    worst_bw: Optional[int]
    best_geometry: Optional[PartitionGeometry]
    best_bw: Optional[int]
    improvement_factor: Optional[Fraction]


@dataclass(frozen=True)
class AuditReport:
    machine: MachineSpec
    policy: PolicySpec
    rows: tuple[AuditRow, ...]


@dataclass(frozen=True)
class ComparisonRow:
    midplanes: int
    nodes: int
    # one cell per machine: (best geometry, bw in links) or None when nothing fits
    cells: tuple[Optional[tuple[PartitionGeometry, int]], ...]


@dataclass(frozen=True)
class MachineComparison:
    machines: tuple[MachineSpec, ...]
    rows: tuple[ComparisonRow, ...]


def enumerate_geometries(machine: MachineSpec, midplanes: int) -> list[PartitionGeometry]:
    """Every canonical 4-extent geometry of the given size that fits.

    Sorted by descending bisection bandwidth, ties by lexicographic order
    of the extents.
    """
    if midplanes < 1:
        raise MachineError(f"partition size must be >= 1 midplane, got {midplanes}")
    found = []
    for a in _divisors(midplanes):
        rem_a = midplanes // a
        for b in (x for x in _divisors(rem_a) if x <= a):
            rem_b = rem_a // b
            for c in (x for x in _divisors(rem_b) if x <= b):
                d = rem_b // c
                if d <= c:
                    geom = PartitionGeometry((a, b, c, d))
                    if fits(machine, geom):
                        found.append(geom)
    found.sort(key=lambda g: (-partition_bisection_bw(g), g.extents))
    return found


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def best_geometry(machine: MachineSpec, midplanes: int) -> Optional[PartitionGeometry]:
    """Highest-bisection fitting geometry, lexicographically least on ties."""
    geoms = enumerate_geometries(machine, midplanes)
    return geoms[0] if geoms else None


def worst_geometry(machine: MachineSpec, midplanes: int) -> Optional[PartitionGeometry]:
    """Lowest-bisection fitting geometry, lexicographically least on ties."""
    geoms = enumerate_geometries(machine, midplanes)
    if not geoms:
        return None
    return min(geoms, key=lambda g: (partition_bisection_bw(g), g.extents))


def audit(machine: MachineSpec, policy: PolicySpec, sizes: Sequence[int]) -> AuditReport:
    """Audit the policy at the given sizes (midplane counts).

    Explicit-list rows compare the listed geometry against the best fit; a
    size the list is missing gets a blank baseline, not an error. Any-cuboid
    rows compare worst against best over all fitting geometries.
    """
    policy.validate_for(machine)
    explicit = policy.mode == MODE_EXPLICIT
    rows = []
    for size in sizes:
        if size < 1:
            raise MachineError(f"partition size must be >= 1 midplane, got {size}")
        best = best_geometry(machine, size)
        best_bw = partition_bisection_bw(best) if best else None
        baseline = baseline_bw = worst = worst_bw = None
        if explicit:
            baseline = policy.allowed.get(size)
            baseline_bw = partition_bisection_bw(baseline) if baseline else None
        else:
            worst = worst_geometry(machine, size)
            worst_bw = partition_bisection_bw(worst) if worst else None
        denom = baseline_bw if explicit else worst_bw
        factor = Fraction(best_bw, denom) if best_bw and denom else None
        rows.append(
            AuditRow(
                midplanes=size,
                nodes=512 * size,
                baseline_geometry=baseline,
                baseline_bw=baseline_bw,
                worst_geometry=worst,
                worst_bw=worst_bw,
                best_geometry=best,
                best_bw=best_bw,
                improvement_factor=factor,
            )
        )
    return AuditReport(machine, policy, tuple(rows))


def compare_machines(machines: Sequence[MachineSpec], sizes: Sequence[int]) -> MachineComparison:
    """Best geometry and bisection per size on each machine, blanks where none fits."""
    rows = []
    for size in sizes:
        if size < 1:
            raise MachineError(f"partition size must be >= 1 midplane, got {size}")
        cells = []
        for machine in machines:
            best = best_geometry(machine, size)
            cells.append((best, partition_bisection_bw(best)) if best else None)
        rows.append(ComparisonRow(size, 512 * size, tuple(cells)))
    return MachineComparison(tuple(machines), tuple(rows))


def realizable_sizes(machine: MachineSpec) -> list[int]:
    """Sizes from 1 to the full machine with at least one fitting geometry."""
    return [
        n
        for n in range(1, machine.total_midplanes + 1)
        if enumerate_geometries(machine, n)
    ]


def default_audit_sizes(machine: MachineSpec, policy: PolicySpec) -> list[int]:
    """Published-table sizes when the pair has one, else realizable sizes."""
    from . import golden

    if policy.mode == MODE_EXPLICIT:
        return sorted(policy.allowed)
    table = golden.table_for(machine.name, policy)
    if table is not None:
        return [row[0] for row in table]
    return realizable_sizes(machine)


def cross_check_enumeration(machine: MachineSpec, seed: int, trials: int = 2000) -> None:
    """Randomized completeness check of enumerate_geometries.

    Draws random 4-extent tuples and verifies each appears in the
    enumeration for its size exactly when it fits the machine. Raises
    AssertionError on any miss.
    """
    rng = random.Random(seed)
    hi = max(machine.grid) + 2
    for _ in range(trials):
        raw = tuple(rng.randint(1, hi) for _ in range(4))
        geom = PartitionGeometry(raw)
        listed = geom in enumerate_geometries(machine, geom.midplanes)
        if listed != fits(machine, geom):
            raise AssertionError(
                f"enumeration incomplete for size {geom.midplanes}: {geom} "
                f"fits={fits(machine, geom)} listed={listed}"
            )
