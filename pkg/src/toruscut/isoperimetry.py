"""Edge-isoperimetric lower bounds and exact search oracles on tori.

The bound implemented here is the face-counting one: for a D-dimensional
torus with sides a_1 >= ... >= a_D and a vertex set of size t,

    cut >= min over r in 0..D-1 of
           2 * (D - r) * (a_{D-r+1} * ... * a_D)^(1/(D-r)) * t^((D-r-1)/(D-r))

where the product inside is over the r smallest sides. Candidate values are
compared exactly in integer arithmetic (cross-powered), so the reported
argmin never depends on floating-point rounding; the returned value itself
is an exact integer whenever the candidate is a perfect power.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .core import (
    CuboidRegion,
    ShapeError,
    TorusShape,
    canonicalize,
    cuboid_cut_size,
)

ORACLE_MAX_VERTICES = 28


@dataclass(frozen=True)
class BoundResult:
    value: int | float
    argmin_r: int
    covered_product: int
    attaining_cuboid: Optional[CuboidRegion]


@dataclass(frozen=True)
class OracleResult:
    min_perimeter: int
    witness: tuple[tuple[int, ...], ...]
    subsets_examined: int


class OracleBudgetExceeded(RuntimeError):
    """The subset enumeration hit its budget before finishing.

    Carries the partial state so no silent wrong answer can escape:
    best_so_far is the minimum over the subsets actually examined (None when
    the overrun was detected up front), never a certified optimum.
    """

    def __init__(self, budget: int, required: int, best_so_far: Optional[OracleResult]):
        self.budget = budget
        self.required = required
        self.best_so_far = best_so_far
        msg = f"oracle budget of {budget} subsets exceeded ({required} required)"
        if best_so_far is not None:
            msg += f"; best over examined prefix: {best_so_far.min_perimeter}"
        super().__init__(msg)


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n, exact integer Newton iteration."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _root_value(m: int, e: int) -> int | float:
    """m^(1/e) as an exact int when m is a perfect e-th power, else float."""
    r = _iroot(m, e)
    if r**e == m:
        return r
    # refine in float space around the integer root to dodge overflow on big m
    ratio = m / r**e
    return r * ratio ** (1.0 / e)


def _candidate_less(e1: int, m1: int, e2: int, m2: int) -> bool:
    """Exact comparison of 2*e1*m1^(1/e1) < 2*e2*m2^(1/e2)."""
    return (2 * e1) ** (e1 * e2) * m1**e2 < (2 * e2) ** (e1 * e2) * m2**e1


def bound_general_torus(shape: TorusShape, t: int) -> BoundResult:
    """Face-counting lower bound on the cut of any t-vertex cuboid.

    Ties in the minimization go to the larger r. The attaining cuboid is
    attached only when the construction at the argmin exists and its cut
    equals the bound value exactly.
    """
    vol = shape.volume
    if not 1 <= t <= vol // 2:
        raise ShapeError(f"t must satisfy 1 <= t <= |V|/2, got t={t}, |V|={vol}")
    dims = shape.dims
    ndim = shape.ndim

    best_r = None
    best_e = best_m = 0
    for r in range(ndim - 1, -1, -1):
        e = ndim - r
        k = math.prod(dims[ndim - r :])
        m = k * t ** (e - 1)
        if best_r is None or _candidate_less(e, m, best_e, best_m):
            best_r, best_e, best_m = r, e, m

    root = _root_value(best_m, best_e)
    value = 2 * best_e * root
    covered = math.prod(dims[ndim - best_r :])

    attaining = attaining_cuboid(shape, t, best_r)
    if attaining is not None and cuboid_cut_size(attaining) != value:
        attaining = None
    return BoundResult(value, best_r, covered, attaining)


def bound_cubic_torus(n: int, d: int, t: int) -> BoundResult:
    """The same bound specialized to the cubic torus with d sides of length n."""
    if n < 2 or d < 1:
        raise ShapeError(f"cubic torus needs n >= 2 and d >= 1, got n={n}, d={d}")
    return bound_general_torus(canonicalize([n] * d), t)


def attaining_cuboid(shape: TorusShape, t: int, r: int) -> Optional[CuboidRegion]:
    """The equal-sided construction that meets the bound candidate at r.

    Fully covers the r smallest dimensions and gives every remaining
    dimension side m = (t / covered)^(1/(D-r)). Returns None when m is not
    an integer or exceeds an uncovered dimension. On shapes mixing length-2
    dimensions with longer ones under the single-edge convention, the
    construction only meets the face count if every length-2 dimension is
    covered, so r values that leave one uncovered return None there.
    """
    dims = shape.dims
    ndim = shape.ndim
    if not 0 <= r < ndim:
        raise ShapeError(f"r must satisfy 0 <= r < D, got r={r}, D={ndim}")
    if not 1 <= t <= shape.volume:
        raise ShapeError(f"t out of range: {t}")
    covered = math.prod(dims[ndim - r :])
    if t % covered:
        return None
    q = t // covered
    e = ndim - r
    m = _iroot(q, e)
    if m**e != q:
        return None
    if m > dims[e - 1]:  # smallest uncovered dimension
        return None
    if shape.length2_multiplicity == 1 and dims[0] > 2 and dims[e - 1] == 2:
        return None
    return CuboidRegion(shape, tuple([m] * e) + dims[ndim - r :])


def compare_cuboids(a: CuboidRegion, b: CuboidRegion) -> int:
    """Order two same-volume cuboids in one host by cut size.

    Returns -1, 0, or 1 as a's cut is smaller than, equal to, or larger
    than b's. Rotations of one another always compare equal.
    """
    if a.host != b.host:
        raise ShapeError("cuboids live in different hosts")
    if a.volume != b.volume:
        raise ShapeError(f"cuboid volumes differ: {a.volume} vs {b.volume}")
    ca, cb = cuboid_cut_size(a), cuboid_cut_size(b)
    return (ca > cb) - (ca < cb)


def _popcount_sum(t: int) -> int:
    """Sum of popcount(i) for 0 <= i < t, by counting set bits per column."""
    total = 0
    for b in range(t.bit_length()):
        block = 1 << (b + 1)
        half = 1 << b
        full, rem = divmod(t, block)
        total += full * half + max(0, rem - half)
    return total


def hypercube_min_perimeter(d: int, t: int) -> int:
    """Minimum edge boundary of a t-set in the d-cube (single-edge convention).

    This is the initial segment of the binary ordering: d*t minus twice the
    number of its interior edges, which is the total popcount of 0..t-1.
    """
    if d < 1 or not 1 <= t <= 2**d:
        raise ShapeError(f"need d >= 1 and 1 <= t <= 2^d, got d={d}, t={t}")
    return d * t - 2 * _popcount_sum(t)


def enumerate_cuboids(shape: TorusShape, t: int):
    """Yield every cuboid of volume t in the shape, in lexicographic side order."""

    def rec(i: int, remaining: int, sides: list[int]):
        if i == shape.ndim:
            if remaining == 1:
                yield CuboidRegion(shape, tuple(sides))
            return
        for s in range(1, min(shape.dims[i], remaining) + 1):
            if remaining % s == 0:
                sides.append(s)
                yield from rec(i + 1, remaining // s, sides)
                sides.pop()

    if t < 1:
        raise ShapeError("cuboid volume must be positive")
    yield from rec(0, t, [])


def min_cut_over_cuboids(shape: TorusShape, t: int) -> tuple[int, CuboidRegion]:
    """Exact minimum of cuboid_cut_size over all cuboids of volume t."""
    best = None
    best_cut = None
    for region in enumerate_cuboids(shape, t):
        c = cuboid_cut_size(region)
        if best_cut is None or c < best_cut:
            best, best_cut = region, c
    if best is None:
        raise ShapeError(f"no cuboid of volume {t} fits in {shape.dims}")
    return best_cut, best


def _adjacency_masks(shape: TorusShape):
    """Bitmask adjacency for the whole torus, split by edge weight.

    Returns (vertices, mask1, mask2): mask1[v] has the weight-1 neighbours
    of vertex v, mask2[v] the weight-2 ones (doubled length-2 links).
    """
    dims = shape.dims
    verts = list(itertools.product(*map(range, dims)))
    index = {v: i for i, v in enumerate(verts)}
    mask1 = [0] * len(verts)
    mask2 = [0] * len(verts)
    for v, i in index.items():
        for axis, a in enumerate(dims):
            if a == 1:
                continue
            if a == 2:
                u = list(v)
                u[axis] ^= 1
                j = index[tuple(u)]
                if shape.length2_multiplicity == 2:
                    mask2[i] |= 1 << j
                else:
                    mask1[i] |= 1 << j
            else:
                for step in (1, -1):
                    u = list(v)
                    u[axis] = (u[axis] + step) % a
                    mask1[i] |= 1 << index[tuple(u)]
    return verts, mask1, mask2


def _subset_perimeter(members, mask1, mask2, smask: int) -> int:
    outside = ~smask
    p = 0
    for v in members:
        p += (mask1[v] & outside).bit_count()
        p += 2 * (mask2[v] & outside).bit_count()
    return p


def _next_combination(comb: list[int], n: int) -> bool:
    """Advance comb (ascending indices into range(n)) to its lex successor."""
    k = len(comb)
    i = k - 1
    while i >= 0 and comb[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    comb[i] += 1
    for j in range(i + 1, k):
        comb[j] = comb[j - 1] + 1
    return True


def _unrank_combination(n: int, k: int, rank: int) -> list[int]:
    """The rank-th k-combination of range(n) in lexicographic order."""
    comb = []
    x = 0
    for remaining in range(k, 0, -1):
        while True:
            c = math.comb(n - 1 - x, remaining - 1)
            if rank < c:
                comb.append(x)
                x += 1
                break
            rank -= c
            x += 1
    return comb


def _scan_range(dims, multiplicity, t, pin_zero, start, count):
    """Scan `count` combinations starting at lex rank `start`.

    Returns (best_perimeter, best_members) over the scanned slice, with the
    lexicographically earliest winner kept. Used both by the sequential path
    (one big slice) and by worker processes.
    """
    shape = canonicalize(dims, multiplicity)
    _, mask1, mask2 = _adjacency_masks(shape)
    n = shape.volume
    if pin_zero:
        comb = _unrank_combination(n - 1, t - 1, start)
        members = [0] + [x + 1 for x in comb]
    else:
        comb = _unrank_combination(n, t, start)
        members = list(comb)

    best = None
    best_members = None
    scanned = 0
    while scanned < count:
        if pin_zero:
            members[1:] = [x + 1 for x in comb]
        else:
            members[:] = comb
        smask = 0
        for v in members:
            smask |= 1 << v
        p = _subset_perimeter(members, mask1, mask2, smask)
        if best is None or p < best:
            best = p
            best_members = tuple(members)
        scanned += 1
        if scanned < count and not _next_combination(comb, n - 1 if pin_zero else n):
            break
    return best, best_members


def brute_force_min_perimeter(
    shape: TorusShape,
    t: int,
    budget: Optional[int] = None,
    workers: int = 1,
    translation_pruning: bool = True,
) -> OracleResult:
    """Exhaustive minimum edge boundary over all t-subsets of the torus.

    The witness is the lexicographically least minimizer (vertices ordered
    by coordinate tuple). Translation pruning only enumerates subsets
    containing the origin; since every subset has a translate through the
    origin and translations preserve perimeter, the value and the witness
    are identical to the unpruned scan.

    budget caps the number of subsets examined; crossing it raises
    OracleBudgetExceeded carrying the best seen so far. With workers > 1 the
    lex range is split into contiguous chunks whose merged result is
    identical to the sequential scan; in that mode a budget is checked up
    front instead of mid-scan.
    """
    n = shape.volume
    if n > ORACLE_MAX_VERTICES:
        raise ShapeError(f"oracle capped at {ORACLE_MAX_VERTICES} vertices, shape has {n}")
    if not 0 <= t <= n // 2:
        raise ShapeError(f"t must satisfy 0 <= t <= |V|/2, got t={t}, |V|={n}")
    if workers < 1:
        raise ShapeError("workers must be >= 1")
    if t == 0:
        return OracleResult(0, (), 0)

    verts, mask1, mask2 = _adjacency_masks(shape)
    pin_zero = translation_pruning
    total = math.comb(n - 1, t - 1) if pin_zero else math.comb(n, t)

    if workers > 1:
        if budget is not None and total > budget:
            raise OracleBudgetExceeded(budget, total, None)
        chunk = -(-total // (workers * 4))
        starts = list(range(0, total, chunk))
        args = [(shape.dims, shape.length2_multiplicity, t, pin_zero, s, min(chunk, total - s)) for s in starts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_range_star, args))
        best, best_members = None, None
        for b, members in results:  # chunk order == lex order
            if b is not None and (best is None or b < best):
                best, best_members = b, members
        witness = tuple(verts[i] for i in best_members)
        return OracleResult(best, witness, total)

    # sequential scan with incremental budget accounting
    if pin_zero:
        source = ([0] + [x + 1 for x in rest] for rest in itertools.combinations(range(n - 1), t - 1))
    else:
        source = (list(c) for c in itertools.combinations(range(n), t))
    best = None
    best_members = None
    examined = 0
    for members in source:
        if budget is not None and examined >= budget:
            partial = None
            if best_members is not None:
                partial = OracleResult(best, tuple(verts[i] for i in best_members), examined)
            raise OracleBudgetExceeded(budget, total, partial)
        smask = 0
        for v in members:
            smask |= 1 << v
        p = _subset_perimeter(members, mask1, mask2, smask)
        if best is None or p < best:
            best = p
            best_members = tuple(members)
        examined += 1
    witness = tuple(verts[i] for i in best_members)
    return OracleResult(best, witness, examined)


def _scan_range_star(args):
    return _scan_range(*args)
