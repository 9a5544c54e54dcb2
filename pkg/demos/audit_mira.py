"""Audit Mira's 2017 default allocations against the best possible geometry."""

from toruscut import audit, builtin_machines, builtin_policies, default_audit_sizes
from toruscut.render import audit_document, render_audit


def main():
    machine = builtin_machines()["mira"]
    policy = builtin_policies()["mira-2017"]
    report = audit(machine, policy, default_audit_sizes(machine, policy))
    print(render_audit(audit_document(report), "text"))
    print()

    doubled = [r for r in report.rows
               if r.improvement_factor and r.improvement_factor >= 2]
    print(f"{len(doubled)} of {len(report.rows)} scheduled sizes leave at least "
          f"half the bisection bandwidth on the table:")
    for r in doubled:
        print(f"  {r.midplanes:3d} midplanes: {r.baseline_geometry} -> "
              f"{r.best_geometry}  ({r.baseline_bw} -> {r.best_bw} links)")


if __name__ == "__main__":
    main()
