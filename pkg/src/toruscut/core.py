"""Torus graphs, axis-aligned cuboid regions, and exact cut accounting.

Vertices of a torus are integer coordinate tuples; two vertices are adjacent
when they differ by +-1 (mod the side length) in exactly one dimension.
All cut arithmetic here is exact integer work derived from face counting,
never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

MAX_VOLUME = 2**64


class ShapeError(ValueError):
    """Malformed shape or region, or a parameter outside its domain."""


@dataclass(frozen=True)
class TorusShape:
    """A D-dimensional torus with side lengths kept in non-increasing order.

    length2_multiplicity picks the edge convention for sides of length 2,
    where the +1 and -1 wrap neighbours coincide: 1 keeps a single edge per
    vertex pair (the hypercube convention), 2 keeps both parallel links
    (physical torus cabling). Sides of length 1 contribute no edges.
    """

    dims: tuple[int, ...]
    length2_multiplicity: int = 1

    def __post_init__(self):
        dims = tuple(int(a) for a in self.dims)
        if not dims:
            raise ShapeError("torus needs at least one dimension")
        if any(a < 1 for a in dims):
            raise ShapeError(f"side lengths must be >= 1, got {dims}")
        if self.length2_multiplicity not in (1, 2):
            raise ShapeError("length2_multiplicity must be 1 or 2")
        object.__setattr__(self, "dims", tuple(sorted(dims, reverse=True)))
        if prod(dims) >= MAX_VOLUME:
            raise ShapeError("torus volume must fit in 64 bits")

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def volume(self) -> int:
        return prod(self.dims)

    def dim_degree(self, length: int) -> int:
        """Edges each vertex has along one dimension of the given length."""
        if length == 1:
            return 0
        if length == 2:
            return self.length2_multiplicity
        return 2

    @property
    def degree(self) -> int:
        # every torus is vertex-transitive, so this is the degree of all vertices
        return sum(self.dim_degree(a) for a in self.dims)


def canonicalize(dims, length2_multiplicity: int = 1) -> TorusShape:
    """Build a TorusShape with sides sorted into canonical order.

    Idempotent: canonicalize(shape.dims) == shape.
    """
    return TorusShape(tuple(dims), length2_multiplicity)


@dataclass(frozen=True)
class CuboidRegion:
    """The axis-aligned box [0, sides[i]) inside a host torus.

    Sides are given per host dimension (host order, longest first) and must
    satisfy 1 <= sides[i] <= host.dims[i].
    """

    host: TorusShape
    sides: tuple[int, ...]

    def __post_init__(self):
        sides = tuple(int(s) for s in self.sides)
        object.__setattr__(self, "sides", sides)
        if len(sides) != self.host.ndim:
            raise ShapeError(
                f"region has {len(sides)} sides for a {self.host.ndim}-dim host"
            )
        for s, a in zip(sides, self.host.dims):
            if not 1 <= s <= a:
                raise ShapeError(f"side {s} out of range for host dimension {a}")

    @property
    def volume(self) -> int:
        return prod(self.sides)


@dataclass(frozen=True)
class CutAccount:
    interior_edges: int
    perimeter_edges: int
    degree: int


def cuboid_cut_size(region: CuboidRegion) -> int:
    """Exact number of links between the region and its complement.

    Each dimension the region does not fully cover contributes two boundary
    faces of volume/side vertices each. On a length-2 host dimension cut by
    a side of 1 those two faces meet the same vertex pair, so the dimension
    contributes length2_multiplicity * volume links instead of 2 * volume.
    Fully covered dimensions and length-1 dimensions contribute nothing.
    """
    host = region.host
    vol = region.volume
    cut = 0
    for side, length in zip(region.sides, host.dims):
        if side == length or length == 1:
            continue
        if length == 2:
            # side == 1 here since side < length
            cut += host.length2_multiplicity * vol
        else:
            cut += 2 * (vol // side)
    return cut


def cut_account(region: CuboidRegion) -> CutAccount:
    """Split the edges incident to a region into interior and crossing edges.

    Uses the regular-graph identity degree * |A| = 2 * interior + perimeter,
    so no enumeration is involved and the result is exact.
    """
    k = region.host.degree
    perimeter = cuboid_cut_size(region)
    incident = k * region.volume
    doubled_interior = incident - perimeter
    if doubled_interior < 0 or doubled_interior % 2:
        raise AssertionError("edge accounting parity violated")
    return CutAccount(doubled_interior // 2, perimeter, k)


def small_set_expansion_of(region: CuboidRegion) -> Fraction:
    """Share of the region's incident edges that leave it, as an exact rational.

    Returns perimeter / (interior + perimeter), which lies in [0, 1]; a
    singleton in a connected torus gives 1, the whole torus gives 0.
    """
    acct = cut_account(region)
    denom = acct.interior_edges + acct.perimeter_edges
    if denom == 0:
        raise ShapeError("region has no incident edges")
    return Fraction(acct.perimeter_edges, denom)
