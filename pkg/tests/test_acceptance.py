"""Acceptance gate: the eight headline checks, one pass/fail line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines. Each criterion has a pinned runtime budget; blowing the budget fails
the criterion even if the values are right.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from toruscut import (
    CuboidRegion,
    PartitionGeometry,
    ShapeError,
    audit,
    bound_general_torus,
    brute_force_min_perimeter,
    builtin_machines,
    builtin_policies,
    canonicalize,
    compare_machines,
    cuboid_cut_size,
    hypercube_min_perimeter,
    node_shape,
    pairing_time_ratio,
    partition_bisection_bw,
)
from toruscut import golden
from toruscut.cli import main
from toruscut.isoperimetry import min_cut_over_cuboids

REL_TOL = 1e-9


@contextmanager
def criterion(num: int, limit_s: float, description: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - start
        print(f"[criterion {num}] FAIL ({elapsed:.2f}s, limit {limit_s:g}s): {description}",
              flush=True)
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed < limit_s else "FAIL"
    print(f"[criterion {num}] {status} ({elapsed:.2f}s, limit {limit_s:g}s): {description}",
          flush=True)
    assert elapsed < limit_s, (
        f"criterion {num} exceeded its runtime budget: {elapsed:.2f}s >= {limit_s}s"
    )


def all_shapes_up_to(max_volume: int, lo: int = 2, hi: int = 10):
    """Every dimension multiset with entries in [lo, hi] and volume <= cap."""
    shapes = []

    def rec(prefix, cap, vol):
        if prefix:
            shapes.append(tuple(prefix))
        for n in range(lo, cap + 1):
            if vol * n <= max_volume:
                rec(prefix + [n], n, vol * n)

    rec([], hi, 1)
    return shapes


def test_criterion_1_mira_table():
    with criterion(1, 1.0, "Mira audit reproduces the published allocation table exactly"):
        machine = builtin_machines()["mira"]
        policy = builtin_policies()["mira-2017"]
        report = audit(machine, policy, golden.mira_table_sizes())
        problems = golden.check_audit_rows(report)
        assert problems == [], problems

        rows = {r.midplanes: r for r in report.rows}
        chain = [(4, 256, 512), (8, 512, 1024), (16, 1024, 2048), (24, 1536, 2048)]
        for size, cur_bw, best_bw in chain:
            assert rows[size].baseline_bw == cur_bw
            assert rows[size].best_bw == best_bw
            assert rows[size].improvement_factor == Fraction(best_bw, cur_bw)

        assert main(["audit", "--machine", "mira", "--policy", "mira-2017",
                     "--check-paper", "--output", "/dev/null"]) == 0


def test_criterion_2_juqueen_table():
    with criterion(2, 1.0, "JUQUEEN worst/best audit reproduces the published table"):
        machine = builtin_machines()["juqueen"]
        report = audit(machine, builtin_policies()["any"], golden.juqueen_table_sizes())
        problems = golden.check_audit_rows(report)
        assert problems == [], problems

        rows = {r.midplanes: r for r in report.rows}
        assert str(rows[5].worst_geometry) == "5x1x1x1" and rows[5].worst_bw == 256
        assert str(rows[56].worst_geometry) == "7x2x2x2" and rows[56].worst_bw == 2048


def test_criterion_3_machine_comparison():
    with criterion(3, 1.0, "three-machine comparison reproduces the published table, "
                           "blank cells included"):
        machines = [builtin_machines()[n] for n in golden.MACHINE_COMPARISON_NAMES]
        comparison = compare_machines(machines, golden.comparison_table_sizes())
        problems = golden.check_comparison(comparison)
        assert problems == [], problems

        rows = {r.midplanes: r for r in comparison.rows}
        assert rows[48].cells[1] is None
        assert rows[48].cells[0][1] == 2048 and rows[48].cells[2][1] == 3072
        assert rows[54].cells[0] is None and rows[54].cells[2] is None
        assert (str(rows[54].cells[1][0]), rows[54].cells[1][1]) == ("3x3x3x2", 4608)


def test_criterion_4_bound_soundness_sweep():
    desc = ("bound soundness on every shape with <= 20 vertices: cuboid minimum >= bound, "
            "attaining cut == bound, no arbitrary-subset counterexample")
    with criterion(4, 600.0, desc):
        # doubled-link convention on length-2 rings: that is the physical
        # wiring, and the face-count argument is exact for cuboids there
        # (single-edge length-2 rings sit outside it; see test_isoperimetry)
        shapes = all_shapes_up_to(20)
        assert len(shapes) >= 30
        checked = 0
        attained = 0
        counterexamples = []
        for dims in shapes:
            shape = canonicalize(dims, 2)
            for t in range(1, shape.volume // 2 + 1):
                res = bound_general_torus(shape, t)
                tol = REL_TOL * max(1.0, res.value)

                try:
                    cuboid_min, _ = min_cut_over_cuboids(shape, t)
                except ShapeError:
                    cuboid_min = None  # no cuboid of this volume fits
                if cuboid_min is not None:
                    assert cuboid_min >= res.value - tol, (dims, t, cuboid_min, res.value)

                if res.attaining_cuboid is not None:
                    assert cuboid_cut_size(res.attaining_cuboid) == res.value, (dims, t)
                    attained += 1

                exact = brute_force_min_perimeter(shape, t).min_perimeter
                if exact < res.value - tol:
                    counterexamples.append((dims, t, exact, res.value))
                checked += 1
        # 30 shapes, one check per t in 1..floor(V/2): sum is 168
        assert checked == 168
        assert attained >= 40
        print(f"  swept {checked} (shape, t) pairs over {len(shapes)} shapes; "
              f"{attained} attained exactly; {len(counterexamples)} subset "
              f"counterexamples (expected 0)", flush=True)
        if counterexamples:
            for dims, t, exact, value in counterexamples:
                print(f"  conjecture counterexample: shape {dims} t={t} "
                      f"subset perimeter {exact} < bound {value}", flush=True)
        assert counterexamples == []


def test_criterion_5_harper_agreement():
    with criterion(5, 60.0, "hypercube formula equals brute force for d <= 4, "
                            "all t <= 2^(d-1)"):
        for d in range(1, 5):
            shape = canonicalize([2] * d, 1)
            for t in range(1, 2 ** (d - 1) + 1):
                formula = hypercube_min_perimeter(d, t)
                exact = brute_force_min_perimeter(shape, t).min_perimeter
                assert formula == exact, (d, t, formula, exact)


def _published_geometries():
    seen = {}
    for size, cur, _, prop, _ in golden.MIRA_ALLOCATIONS:
        seen[cur] = True
        if prop:
            seen[prop] = True
    for size, worst, _, best, _ in golden.JUQUEEN_ALLOCATIONS:
        seen[worst] = True
        if best:
            seen[best] = True
    for entry in golden.MACHINE_COMPARISON:
        for cell in entry[1:]:
            if cell:
                seen[cell[0]] = True
    return [PartitionGeometry(extents) for extents in seen]


def test_criterion_6_formula_vs_node_level_cut():
    with criterion(6, 1.0, "midplane-level bisection formula equals the node-level "
                           "half-cuboid cut for every published geometry"):
        geometries = _published_geometries()
        assert len(geometries) >= 25
        for g in geometries:
            shape = node_shape(g)  # doubled length-2 links: physical capacity
            half_sides = (shape.dims[0] // 2,) + shape.dims[1:]
            cut = cuboid_cut_size(CuboidRegion(shape, half_sides))
            assert cut == partition_bisection_bw(g), str(g)


def test_criterion_7_simulated_ratios():
    desc = ("simulated time ratio is 2.00 +- 1% for the published factor-2 pairs; "
            "24-midplane ratio reported with its discrepancy note")
    with criterion(7, 10.0, desc):
        mira = {row[0]: row for row in golden.MIRA_ALLOCATIONS}
        for size in (4, 8, 16):
            _, cur, _, prop, _ = mira[size]
            ratio = pairing_time_ratio(PartitionGeometry(cur), PartitionGeometry(prop))
            assert ratio == pytest.approx(2.00, rel=0.01), (("mira", size), ratio)

        juqueen = {row[0]: row for row in golden.JUQUEEN_ALLOCATIONS}
        for size in (4, 8, 12, 16):
            _, worst, _, best, _ = juqueen[size]
            ratio = pairing_time_ratio(PartitionGeometry(worst), PartitionGeometry(best))
            assert ratio == pytest.approx(2.00, rel=0.01), (("juqueen", size), ratio)

        # 24 midplanes on Mira: flow model gives the exact bisection ratio
        # 4/3, published prediction was 1.50 (measured 1.44); reported, not
        # asserted against the published number
        _, cur, _, prop, _ = mira[24]
        ratio24 = pairing_time_ratio(PartitionGeometry(cur), PartitionGeometry(prop))
        predicted, measured = golden.PUBLISHED_PAIRING_RATIOS[("mira", 24)]
        print(f"  note: 24-midplane Mira pair simulates at {ratio24:.4f} "
              f"(bisection ratio 4/3); published prediction {predicted:.2f}, "
              f"measured {measured:.2f}", flush=True)
        assert ratio24 == pytest.approx(4 / 3, rel=REL_TOL)


def test_criterion_8_desk_scale_statement():
    print("[criterion 8] NOT APPLICABLE: measured wall-clock times on the real "
          "hardware, matrix-multiplication communication factors, and strong-"
          "scaling cache effects are not reproducible here; covered instead by "
          "the property and oracle suites of criteria 4-7", flush=True)
