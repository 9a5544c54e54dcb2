"""Predict how much slower a worst-case allocation runs the pairing benchmark.

Every node sends a large message to its antipode each round; dimension-ordered
minimal routing saturates links in the longest dimension first, so the
predicted time is set by the partition's narrowest cut.
"""

from toruscut import PartitionGeometry, pairing_time_ratio, simulate_pairing_benchmark
from toruscut.golden import MIRA_ALLOCATIONS, PUBLISHED_PAIRING_RATIOS


def describe(label, geometry):
    res = simulate_pairing_benchmark(geometry)
    dims = "x".join(map(str, res.shape.dims))
    print(f"  {label:8s} {str(geometry):9s} node torus {dims:12s} "
          f"bottleneck {res.bottleneck_load_gb:.4f} GB/round  "
          f"total {res.predicted_total_time_s:.3f} s")
    return res


def main():
    print("pairing benchmark, default traffic (26 counted rounds of 0.1342 GB at 2 GB/s):\n")
    for size, cur, _, prop, _ in MIRA_ALLOCATIONS:
        if prop is None:
            continue
        a, b = PartitionGeometry(cur), PartitionGeometry(prop)
        print(f"{size} midplanes on Mira:")
        describe("default", a)
        describe("best", b)
        ratio = pairing_time_ratio(a, b)
        predicted, measured = PUBLISHED_PAIRING_RATIOS[("mira", size)]
        print(f"  model ratio {ratio:.4f}   (prediction {predicted:.2f}, "
              f"machine measured {measured:.2f})\n")


if __name__ == "__main__":
    main()
