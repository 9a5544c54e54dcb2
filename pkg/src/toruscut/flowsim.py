"""Idealized flow-level model of the furthest-node pairing benchmark.

Every node exchanges fixed-size messages with its antipodal partner for a
number of rounds. Flows follow dimension-ordered minimal routes (longest
dimension first); the antipodal offset makes both ring directions
equidistant, so each flow splits evenly between them. Link loads are fluid
(no packets, no protocol overhead), so a round lasts as long as the most
loaded directed link takes to drain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import TorusShape

Vertex = tuple[int, ...]
# a directed link: (tail vertex, dimension index, ring direction +1 or -1)
Link = tuple[Vertex, int, int]


class UnsupportedPatternError(ValueError):
    """The traffic pattern is not defined for this shape."""


@dataclass(frozen=True)
class TrafficSpec:
    """Benchmark parameters; defaults match the pairing experiment setup."""

    rounds_total: int = 30
    warmup_rounds: int = 4
    message_gb: float = 0.1342
    link_gbps: float = 2.0

    def __post_init__(self):
        if self.warmup_rounds < 0 or self.rounds_total <= self.warmup_rounds:
            raise ValueError("need rounds_total > warmup_rounds >= 0")
        if self.message_gb <= 0 or self.link_gbps <= 0:
            raise ValueError("message size and link rate must be positive")

    @property
    def counted_rounds(self) -> int:
        return self.rounds_total - self.warmup_rounds


@dataclass(frozen=True)
class FlowResult:
    shape: TorusShape
    traffic: TrafficSpec
    per_link_load: dict[Link, float] = field(repr=False)
    bottleneck_load_gb: float
    predicted_round_time_s: float
    predicted_total_time_s: float

    def per_dim_max_load(self) -> list[float]:
        """Largest per-round load on any directed link, by dimension."""
        out = [0.0] * self.shape.ndim
        for (_, dim, _), load in self.per_link_load.items():
            if load > out[dim]:
                out[dim] = load
        return out


def furthest_pairing(shape: TorusShape) -> dict[Vertex, Vertex]:
    """Pair every vertex with its antipode (offset of half the ring everywhere).

    Defined only when every dimension is even; the pairing is a fixed-point
    free involution.
    """
    dims = shape.dims
    if any(a % 2 for a in dims):
        raise UnsupportedPatternError(
            f"furthest-node pairing needs every dimension even, got {dims}"
        )
    half = [a // 2 for a in dims]
    pairing = {}
    for v in itertools.product(*map(range, dims)):
        pairing[v] = tuple((c + h) % a for c, h, a in zip(v, half, dims))
    return pairing


def route_flows(
    shape: TorusShape,
    pairing: dict[Vertex, Vertex],
    traffic: Optional[TrafficSpec] = None,
) -> FlowResult:
    """Accumulate per-directed-link loads for one round of pairing traffic.

    Routes are dimension-ordered over the canonical (longest-first) axis
    order, taking the shorter ring direction; an exactly antipodal offset in
    a dimension splits the flow 50/50, which on length-2 dimensions spreads
    it across both parallel links.
    """
    if traffic is None:
        traffic = TrafficSpec()
    dims = shape.dims
    loads: dict[Link, float] = {}

    def walk(start: list[int], dim: int, direction: int, steps: int, amount: float):
        pos = list(start)
        a = dims[dim]
        for _ in range(steps):
            link = (tuple(pos), dim, direction)
            loads[link] = loads.get(link, 0.0) + amount
            pos[dim] = (pos[dim] + direction) % a

    msg = traffic.message_gb
    for src, dst in pairing.items():
        cur = list(src)
        for dim, a in enumerate(dims):
            delta = (dst[dim] - cur[dim]) % a
            if delta == 0:
                continue
            if 2 * delta < a:
                walk(cur, dim, +1, delta, msg)
            elif 2 * delta > a:
                walk(cur, dim, -1, a - delta, msg)
            else:
                walk(cur, dim, +1, delta, msg / 2)
                walk(cur, dim, -1, delta, msg / 2)
            cur[dim] = dst[dim]

    bottleneck = max(loads.values(), default=0.0)
    round_time = bottleneck / traffic.link_gbps
    total_time = traffic.counted_rounds * round_time
    return FlowResult(shape, traffic, loads, bottleneck, round_time, total_time)


def simulate_pairing_benchmark(geometry, traffic: Optional[TrafficSpec] = None) -> FlowResult:
    """Run the pairing model on a partition's node-level torus."""
    from .bgq import node_shape

    shape = node_shape(geometry)
    return route_flows(shape, furthest_pairing(shape), traffic)


def pairing_time_ratio(geometry_a, geometry_b, traffic: Optional[TrafficSpec] = None) -> float:
    """Predicted total-time ratio of geometry_a over geometry_b (1.0 if equal)."""
    ta = simulate_pairing_benchmark(geometry_a, traffic).predicted_total_time_s
    tb = simulate_pairing_benchmark(geometry_b, traffic).predicted_total_time_s
    return ta / tb
