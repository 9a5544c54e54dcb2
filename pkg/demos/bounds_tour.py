"""Tour of the cut lower bound and when a cuboid actually meets it.

Walks a handful of tori: the flagship 512-node midplane shape, a square
where the minimizer is a column, and a cube where the bound lands on an
irrational value no subset can meet.
"""

from toruscut import bound_general_torus, canonicalize, cuboid_cut_size, enumerate_cuboids


def show(dims, t, multiplicity=2):
    shape = canonicalize(dims, multiplicity)
    res = bound_general_torus(shape, t)
    print(f"torus {'x'.join(map(str, shape.dims))}  t={t}  (multiplicity {multiplicity})")
    print(f"  bound {res.value}  at r={res.argmin_r} (covers product {res.covered_product})")
    if res.attaining_cuboid is None:
        print("  no cuboid meets the bound exactly")
    else:
        sides = "x".join(map(str, res.attaining_cuboid.sides))
        print(f"  attained by cuboid {sides}, cut {cuboid_cut_size(res.attaining_cuboid)}")
    print()


def main():
    # half of a BG/Q midplane: 256 links, met by the 8x4x4x4x2 half-box
    show((4, 4, 4, 4, 2), 256, multiplicity=2)
    show((16, 16), 128)

    # square torus, t a full column: bound ties at r=0 and r=1, column wins
    show((4, 4), 4)

    # 20*sqrt(5): no integer cut can equal it, so nothing attains
    show((5, 5, 5), 25)

    # same square, growing t: watch the argmin switch from block to column
    shape = canonicalize((6, 6))
    print("6x6 torus, best cuboid per t vs the bound:")
    for t in range(1, 19):
        res = bound_general_torus(shape, t)
        best = min(enumerate_cuboids(shape, t), key=cuboid_cut_size, default=None)
        cut = cuboid_cut_size(best) if best else "-"
        sides = "x".join(map(str, best.sides)) if best else "none"
        star = " *" if best is not None and cut == res.value else ""
        print(f"  t={t:2d}  bound {res.value:8.3f}  best cuboid {sides:>5} cut {cut}{star}")
    print("  (* = best cuboid meets the bound exactly)")


if __name__ == "__main__":
    main()
