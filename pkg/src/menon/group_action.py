"""The group of invertible upper-triangular r x r matrices over Z_n, its
action on the column space Z_n^r, fixed-point counting (direct and via the
per-column factor product), Burnside orbit counting, brute-force orbit
partitioning, and the divisor-chain orbit invariant.

Enumeration order is fixed and documented: the diagonal entries run over
the units of Z_n ascending, most significant first, followed by the strict
upper-triangle entries row-major over 0..n-1. Every sweep is a pure fold
over a contiguous range of that index space, so shard totals combine into
bit-identical results for any shard count.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cache
from itertools import product
from math import gcd

from .arith import divisors, euler_phi

# Default cap on estimated elementary operations for any enumerating call.
DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Raised instead of starting an enumeration whose estimated cost is too big."""

    def __init__(self, message: str, *, estimated_ops: int, budget: int, group_size: int):
        super().__init__(message)
        self.estimated_ops = estimated_ops
        self.budget = budget
        self.group_size = group_size


def _check_budget(op: str, estimated_ops: int, budget: int, size: int) -> None:
    if estimated_ops > budget:
        raise BudgetExceededError(
            f"{op} refused: group size {size}, estimated {estimated_ops} elementary "
            f"operations exceeds budget {budget}",
            estimated_ops=estimated_ops,
            budget=budget,
            group_size=size,
        )


@cache
def units(n: int) -> tuple[int, ...]:
    """Residues in [0, n) coprime to n, ascending. units(1) = (0,)."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n!r}")
    return tuple(a for a in range(n) if gcd(n, a) == 1)


@cache
def _upper_index(r: int) -> tuple[tuple[int, ...], ...]:
    # Cell layout: cells[0:r] are the diagonal, then strict-upper entries
    # row-major. _upper_index(r)[i][j] is the cells index of entry (i, j), i < j.
    table = [[-1] * r for _ in range(r)]
    pos = r
    for i in range(r):
        for j in range(i + 1, r):
            table[i][j] = pos
            pos += 1
    return tuple(tuple(row) for row in table)


@dataclass(frozen=True)
class UpperTriangularMatrix:
    """Invertible upper-triangular matrix over Z_n.

    cells holds the diagonal first, then the strict upper triangle row-major;
    the strict lower triangle is implicitly zero. Diagonal entries must be
    units of Z_n and every stored entry lies in [0, n).
    """

    n: int
    r: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.r < 1:
            raise ValueError(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")
        expected = self.r * (self.r + 1) // 2
        if len(self.cells) != expected:
            raise ValueError(f"expected {expected} cells for r={self.r}, got {len(self.cells)}")
        if any(not 0 <= c < self.n for c in self.cells):
            raise ValueError(f"entries must lie in [0, {self.n}), got {self.cells}")
        for i in range(self.r):
            if gcd(self.n, self.cells[i]) != 1:
                raise ValueError(f"diagonal entry {self.cells[i]} is not a unit mod {self.n}")

    def entry(self, i: int, j: int) -> int:
        """Entry at 0-based (row i, column j); zero below the diagonal."""
        if not (0 <= i < self.r and 0 <= j < self.r):
            raise IndexError(f"entry ({i}, {j}) out of range for r={self.r}")
        if i > j:
            return 0
        if i == j:
            return self.cells[i]
        return self.cells[_upper_index(self.r)[i][j]]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        """The full r x r matrix, including the zero lower triangle."""
        return tuple(tuple(self.entry(i, j) for j in range(self.r)) for i in range(self.r))

    @classmethod
    def from_rows(cls, n: int, rows) -> "UpperTriangularMatrix":
        """Build from a square row-of-rows literal; lower entries must be 0."""
        r = len(rows)
        for i in range(r):
            if len(rows[i]) != r:
                raise ValueError("rows must form a square matrix")
            for j in range(i):
                if rows[i][j] % n != 0:
                    raise ValueError(f"entry ({i}, {j}) below the diagonal must be zero")
        cells = [rows[i][i] % n for i in range(r)]
        cells += [rows[i][j] % n for i in range(r) for j in range(i + 1, r)]
        return cls(n=n, r=r, cells=tuple(cells))

    @classmethod
    def identity(cls, n: int, r: int) -> "UpperTriangularMatrix":
        one = 1 % n
        return cls(n=n, r=r, cells=tuple([one] * r + [0] * (r * (r - 1) // 2)))


@dataclass(frozen=True)
class ResidueVector:
    """Element of Z_n^r: coordinates x_0..x_{r-1}, each in [0, n)."""

    n: int
    r: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.r < 1:
            raise ValueError(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")
        if len(self.coords) != self.r:
            raise ValueError(f"expected {self.r} coordinates, got {len(self.coords)}")
        if any(not 0 <= c < self.n for c in self.coords):
            raise ValueError(f"coordinates must lie in [0, {self.n}), got {self.coords}")


@dataclass(frozen=True)
class DivisorChain:
    """Orbit invariant: values (v_1..v_r) with v_1 | n and each subsequent
    v_k dividing the running quotient n / (v_1 ... v_{k-1})."""

    n: int
    r: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.r:
            raise ValueError(f"expected {self.r} chain values, got {len(self.values)}")
        remaining = self.n
        for k, v in enumerate(self.values):
            if v < 1 or remaining % v != 0:
                raise ValueError(
                    f"chain value {v} at position {k} does not divide the remaining quotient {remaining}"
                )
            remaining //= v


def group_size(n: int, r: int) -> int:
    """Order of the group: n^(r(r-1)/2) * phi(n)^r."""
    if n < 1 or r < 1:
        raise ValueError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    return n ** (r * (r - 1) // 2) * euler_phi(n) ** r


def _pools(n: int, r: int) -> list:
    # Digit pools in significance order (matches the cells layout).
    us = units(n)
    return [us] * r + [range(n)] * (r * (r - 1) // 2)


def element_at(n: int, r: int, index: int) -> UpperTriangularMatrix:
    """The index-th group element in enumeration order (0-based)."""
    size = group_size(n, r)
    if not 0 <= index < size:
        raise IndexError(f"index {index} out of range for group of size {size}")
    pools = _pools(n, r)
    cells = [0] * len(pools)
    for t in range(len(pools) - 1, -1, -1):
        index, d = divmod(index, len(pools[t]))
        cells[t] = pools[t][d]
    return UpperTriangularMatrix(n=n, r=r, cells=tuple(cells))


def _iter_cells(n: int, r: int, lo: int, hi: int):
    """Yield the cells of elements lo..hi-1 in enumeration order.

    Yields one live list, mutated in place between yields; callers must
    consume (or copy) each value before advancing.
    """
    pools = _pools(n, r)
    npos = len(pools)
    radices = [len(p) for p in pools]
    digits = [0] * npos
    idx = lo
    for t in range(npos - 1, -1, -1):
        idx, digits[t] = divmod(idx, radices[t])
    cells = [pools[t][digits[t]] for t in range(npos)]
    for _ in range(hi - lo):
        yield cells
        t = npos - 1
        while t >= 0:
            d = digits[t] + 1
            if d < radices[t]:
                digits[t] = d
                cells[t] = pools[t][d]
                break
            digits[t] = 0
            cells[t] = pools[t][0]
            t -= 1


def enumerate_group(n: int, r: int, budget: int = DEFAULT_BUDGET):
    """All group elements, exactly once, in the documented order.

    Refuses up front (BudgetExceededError) when the estimated sweep cost
    |G| * r^2 exceeds the budget.
    """
    size = group_size(n, r)
    _check_budget(f"enumerate_group({n}, {r})", size * r * r, budget, size)

    def generate():
        for cells in _iter_cells(n, r, 0, size):
            yield UpperTriangularMatrix(n=n, r=r, cells=tuple(cells))

    return generate()


def apply(g: UpperTriangularMatrix, x: ResidueVector) -> ResidueVector:
    """Act with g on x: y_i = sum_{j >= i} a_ij x_j mod n."""
    if (g.n, g.r) != (x.n, x.r):
        raise ValueError(
            f"matrix over Z_{g.n}^{g.r} cannot act on vector in Z_{x.n}^{x.r}"
        )
    n, r = g.n, g.r
    coords = tuple(
        sum(g.entry(i, j) * x.coords[j] for j in range(i, r)) % n for i in range(r)
    )
    return ResidueVector(n=n, r=r, coords=coords)


def matmul(g: UpperTriangularMatrix, h: UpperTriangularMatrix) -> UpperTriangularMatrix:
    """Matrix product g @ h mod n (upper-triangular matrices are closed)."""
    if (g.n, g.r) != (h.n, h.r):
        raise ValueError("operands must share modulus and dimension")
    n, r = g.n, g.r
    cells = [g.entry(i, i) * h.entry(i, i) % n for i in range(r)]
    cells += [
        sum(g.entry(i, k) * h.entry(k, j) for k in range(i, j + 1)) % n
        for i in range(r)
        for j in range(i + 1, r)
    ]
    return UpperTriangularMatrix(n=n, r=r, cells=tuple(cells))


def _count_fixed(rows, n: int, r: int) -> int:
    # Exhaustive scan of Z_n^r; rows checked bottom-up so most vectors
    # fail fast on the single-term last row.
    count = 0
    order = range(r - 1, -1, -1)
    for x in product(range(n), repeat=r):
        for i in order:
            s = 0
            row = rows[i]
            for j in range(i, r):
                s += row[j] * x[j]
            if s % n != x[i]:
                break
        else:
            count += 1
    return count


def fixed_points_direct(g: UpperTriangularMatrix, budget: int = DEFAULT_BUDGET) -> int:
    """|X^g| by full enumeration of Z_n^r. The trusted slow path."""
    n, r = g.n, g.r
    cost = n**r * r * r
    _check_budget(f"fixed_points_direct(n={n}, r={r})", cost, budget, group_size(n, r))
    return _count_fixed(g.rows(), n, r)


def fixed_point_count_formula(g: UpperTriangularMatrix) -> int:
    """|X^g| as the product of the per-column factors d_k."""
    from .identity import compute_dk

    out = 1
    for k in range(1, g.r + 1):
        out *= compute_dk(g, k)
    return out


def _shard_bounds(total: int, shards: int) -> list[tuple[int, int]]:
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    q, rem = divmod(total, shards)
    bounds = []
    lo = 0
    for s in range(shards):
        hi = lo + q + (1 if s < rem else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _fixed_point_sum_shard(args: tuple[int, int, int, int]) -> int:
    n, r, lo, hi = args
    from .identity import _fixed_count_cells

    upper = _upper_index(r)
    total = 0
    for cells in _iter_cells(n, r, lo, hi):
        total += _fixed_count_cells(n, r, cells, upper)
    return total


def fixed_point_sum(n: int, r: int, budget: int = DEFAULT_BUDGET, shards: int = 1) -> int:
    """Sum of |X^g| over the whole group, one factor product per element.

    The index space is split into `shards` contiguous ranges; each shard is
    a pure fold and the shard totals are summed in shard order, so the
    result is identical for every shard count.
    """
    size = group_size(n, r)
    _check_budget(f"group sweep(n={n}, r={r})", size * r * r, budget, size)
    pieces = [(n, r, lo, hi) for lo, hi in _shard_bounds(size, shards)]
    if shards == 1:
        return _fixed_point_sum_shard(pieces[0])
    with ProcessPoolExecutor(max_workers=shards) as pool:
        return sum(pool.map(_fixed_point_sum_shard, pieces))


def orbit_count_burnside(n: int, r: int, budget: int = DEFAULT_BUDGET, shards: int = 1) -> int:
    """Number of orbits: the fixed-point sum divided (exactly) by |G|."""
    size = group_size(n, r)
    total = fixed_point_sum(n, r, budget=budget, shards=shards)
    orbits, rem = divmod(total, size)
    if rem:
        raise AssertionError(
            f"fixed-point sum {total} is not divisible by |G| = {size}: implementation bug"
        )
    return orbits


def orbits_brute_force(n: int, r: int, budget: int = DEFAULT_BUDGET) -> list[tuple[tuple[int, ...], ...]]:
    """Partition Z_n^r into orbits by union-find over every (g, x) pair.

    Deliberately independent of the divisor-chain invariant and of the
    gcd-tower formula: the only ingredients are the raw group action and
    a disjoint-set forest. Blocks are returned lexicographically sorted.
    """
    size = group_size(n, r)
    space = n**r
    _check_budget(f"orbits_brute_force(n={n}, r={r})", size * space * r * r, budget, size)

    parent = list(range(space))

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    vectors = list(product(range(n), repeat=r))
    for cells in _iter_cells(n, r, 0, size):
        rows = UpperTriangularMatrix(n=n, r=r, cells=tuple(cells)).rows()
        for xi, x in enumerate(vectors):
            yi = 0
            for i in range(r):
                s = 0
                row = rows[i]
                for j in range(i, r):
                    s += row[j] * x[j]
                yi = yi * n + s % n
            ra, rb = find(xi), find(yi)
            if ra != rb:
                if ra > rb:
                    ra, rb = rb, ra
                parent[rb] = ra

    blocks: dict[int, list[tuple[int, ...]]] = {}
    for xi, x in enumerate(vectors):
        blocks.setdefault(find(xi), []).append(x)
    return sorted(tuple(sorted(b)) for b in blocks.values())


def divisor_chain(x: ResidueVector) -> DivisorChain:
    """The orbit invariant of x: successive quotient orders read from the
    bottom coordinate up.

    Walking k = 1..r with h_0 = n and h_k = gcd(h_{k-1}, x_{r-k+1}), the
    k-th value is h_{k-1} / h_k: the order of the next coordinate in the
    cyclic quotient of Z_n by everything below it.
    """
    h = x.n
    values = []
    for k in range(x.r):
        nh = gcd(h, x.coords[x.r - 1 - k])
        values.append(h // nh)
        h = nh
    return DivisorChain(n=x.n, r=x.r, values=tuple(values))


def count_chains(n: int, r: int) -> int:
    """Count all valid divisor chains by nested divisor enumeration."""
    if n < 1 or r < 1:
        raise ValueError(f"need n >= 1 and r >= 1, got n={n}, r={r}")

    def rec(m: int, depth: int) -> int:
        if depth == 0:
            return 1
        return sum(rec(m // d, depth - 1) for d in divisors(m))

    return rec(n, r)


def sample_fixed_point_check(
    n: int,
    r: int,
    count: int,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> list[int]:
    """Cross-check the factor product against direct fixed-point counts
    on `count` seeded-pseudorandomly sampled elements.

    Returns the sorted enumeration indices that were checked; raises
    AssertionError on any mismatch (it would indicate a bug).
    """
    size = group_size(n, r)
    count = min(count, size)
    cost = count * n**r * r * r
    _check_budget(f"sampled fixed-point check(n={n}, r={r})", cost, budget, size)
    rng = random.Random(seed)
    indices = sorted(rng.sample(range(size), count))
    for idx in indices:
        g = element_at(n, r, idx)
        formula = fixed_point_count_formula(g)
        direct = _count_fixed(g.rows(), n, r)
        if formula != direct:
            raise AssertionError(
                f"factor product {formula} != direct count {direct} "
                f"for element #{idx} of group(n={n}, r={r})"
            )
    return indices
