"""Stock lattices and named-generator parsing for the CLI.

Generator names understood by parse_named():

    boolean:n      subset lattice of an n-set
    partition:n    set partitions of an n-set under refinement
    dowling:n:m    Dowling lattice of rank n over the cyclic group Z_m
    uniform:k:n    lattice of flats of the uniform matroid U_{k,n}
    graphic:k4     lattice of flats of the graphic matroid of K_4 (or k5)
    chain:r        a chain with ranks 0..r (not geometric for r >= 2)
    divisor:N      divisors of N under divisibility

Every generator estimates its size before building and refuses to
exceed the element cap.
"""

from functools import lru_cache
from math import comb

from .errors import TooLarge
from .poset import build_lattice

__all__ = [
    "boolean_lattice",
    "partition_lattice",
    "chain_lattice",
    "divisor_lattice",
    "parse_named",
    "set_partitions",
]

DEFAULT_CAP = 5000


@lru_cache(maxsize=None)
def boolean_lattice(n):
    """Subsets of {0..n-1}; element index is the subset bitmask."""
    if n < 0:
        raise ValueError("n must be >= 0")
    size = 1 << n
    covers = []
    labels = []
    for s in range(size):
        labels.append("{" + ",".join(str(e) for e in range(n) if s >> e & 1)
                      + "}")
        for e in range(n):
            if not s >> e & 1:
                covers.append((s, s | (1 << e)))
    return build_lattice(size, covers, labels)


def set_partitions(n):
    """All partitions of {0..n-1} as tuples of sorted-tuple blocks,
    blocks ordered by least element, in a deterministic order."""
    if n == 0:
        return [()]
    out = []

    def extend(i, blocks):
        if i == n:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            extend(i + 1, blocks)
            b.pop()
        blocks.append([i])
        extend(i + 1, blocks)
        blocks.pop()

    extend(0, [])
    return out


@lru_cache(maxsize=None)
def partition_lattice(n):
    """Partitions of an n-set ordered by refinement; rank n-1 overall.

    The bottom is the all-singletons partition and a cover merges two
    blocks.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = set_partitions(n)
    index = {p: i for i, p in enumerate(parts)}
    covers = []
    for p in parts:
        blocks = list(p)
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                merged = tuple(sorted(blocks[i] + blocks[j]))
                rest = [b for t, b in enumerate(blocks) if t not in (i, j)]
                q = tuple(sorted(rest + [merged]))
                covers.append((index[p], index[q]))
    labels = ["|".join(",".join(map(str, b)) for b in p) or "-"
              for p in parts]
    return build_lattice(len(parts), covers, labels)


@lru_cache(maxsize=None)
def chain_lattice(r):
    """A chain 0 < 1 < ... < r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return build_lattice(r + 1, [(i, i + 1) for i in range(r)])


@lru_cache(maxsize=None)
def divisor_lattice(n):
    """Divisors of n under divisibility (meet gcd, join lcm)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    index = {d: i for i, d in enumerate(divs)}
    primes = [p for p in divs if p > 1
              and all(p % q for q in range(2, p)) ]
    covers = []
    for d in divs:
        for p in primes:
            if d * p in index:
                covers.append((index[d], index[d * p]))
    return build_lattice(len(divs), covers, [str(d) for d in divs])


def _bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def parse_named(name, cap_elements=DEFAULT_CAP):
    """Build a lattice from a generator name, enforcing the size cap."""
    parts = name.split(":")
    kind = parts[0]

    def want(size):
        if size > cap_elements:
            raise TooLarge(
                f"{name} has {size} elements, over the cap {cap_elements}")

    if kind == "boolean" and len(parts) == 2:
        n = int(parts[1])
        want(1 << n)
        return boolean_lattice(n)
    if kind == "partition" and len(parts) == 2:
        n = int(parts[1])
        want(_bell(n))
        return partition_lattice(n)
    if kind == "chain" and len(parts) == 2:
        r = int(parts[1])
        want(r + 1)
        return chain_lattice(r)
    if kind == "divisor" and len(parts) == 2:
        n = int(parts[1])
        want(n)
        return divisor_lattice(n)
    if kind == "dowling" and len(parts) == 3:
        from . import dowling
        n, m = int(parts[1]), int(parts[2])
        want(dowling.dowling_number(m, n))
        return dowling.build_Qn(n, m, n_cap=n, m_cap=m)
    if kind == "uniform" and len(parts) == 3:
        from . import matroid
        k, n = int(parts[1]), int(parts[2])
        want(sum(comb(n, i) for i in range(k)) + 1)
        return matroid.flats_lattice(matroid.Matroid.uniform(k, n))
    if kind == "graphic" and len(parts) == 2:
        from . import matroid
        if parts[1] not in ("k4", "k5"):
            raise ValueError(f"unknown graph {parts[1]!r}")
        nv = 4 if parts[1] == "k4" else 5
        want(_bell(nv))
        return matroid.flats_lattice(matroid.Matroid.complete_graphic(nv))
    raise ValueError(f"unknown generator name {name!r}")
