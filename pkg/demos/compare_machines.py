"""Side-by-side best-case bisection on JUQUEEN and two hypothetical rebuilds.

The 54- and 48-midplane variants trade total size for rounder grids; blank
cells mark sizes a machine cannot allocate as a compact block at all.
"""

from toruscut import builtin_machines, compare_machines
from toruscut.golden import comparison_table_sizes
from toruscut.render import comparison_document, render_comparison


def main():
    machines = [builtin_machines()[n] for n in ("juqueen", "juqueen-54", "juqueen-48")]
    comparison = compare_machines(machines, comparison_table_sizes())
    print(render_comparison(comparison_document(comparison), "text"))

    # headline: the rounder 48-rack grid beats the real 56-rack one at 48
    by_size = {row.midplanes: row for row in comparison.rows}
    row = by_size[48]
    real, rebuilt = row.cells[0], row.cells[2]
    print(f"\nat 48 midplanes: {machines[0].name} tops out at {real[1]} links "
          f"({real[0]}), the {machines[2].name} grid reaches {rebuilt[1]} ({rebuilt[0]})")


if __name__ == "__main__":
    main()
