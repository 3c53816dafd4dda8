"""Finite graded lattices with exact Mobius-function machinery.

A lattice is built from its cover relation.  Construction validates the
whole contract up front: acyclicity, unique bottom and top, gradedness
of the covers against longest-chain rank, and existence of all meets
and joins.  After that every query method may assume a genuine graded
lattice.

Internally elements are re-sorted by rank into "positions" and the
order relation is stored as two bitmask rows per element (down-set and
up-set).  In that layout the meet of x and y is the highest set bit of
down[x] & down[y] and the join is the lowest set bit of up[x] & up[y];
the construction-time pair scan checks that these candidates really are
greatest/least, which is exactly the lattice property.
"""

import threading
from dataclasses import dataclass

from . import _kernels
from .errors import (
    Cyclic,
    MultipleMaxima,
    MultipleMinima,
    NotALattice,
    NotComparable,
    NotGraded,
)

__all__ = [
    "FiniteLattice",
    "MobiusTable",
    "GeometricCheck",
    "build_lattice",
    "lattice_to_json",
    "lattice_from_json",
]


@dataclass(frozen=True)
class MobiusTable:
    """Mobius values mu(base, y) for every y; zero when y is not above base."""

    base: int
    values: tuple

    def __getitem__(self, y):
        return self.values[y]


@dataclass(frozen=True)
class GeometricCheck:
    """Outcome of the geometric-lattice test.

    failure is None, "NotAtomistic" (witness: one element index that is
    not a join of atoms) or "NotSemimodular" (witness: an offending
    pair).
    """

    ok: bool
    failure: str = None
    witness: tuple = None

    def __bool__(self):
        return self.ok


class FiniteLattice:
    """Immutable finite graded lattice.  Use build_lattice() to create one."""

    def __init__(self, n, covers, labels, rank, bottom, top,
                 pos_of, idx_of, down, up, semi_fail):
        self.n_elems = n
        self.covers = covers
        self.labels = labels
        self.rank = rank
        self.bottom = bottom
        self.top = top
        self._pos_of = pos_of
        self._idx_of = idx_of
        self._down = down
        self._up = up
        self._semi_fail = semi_fail  # position pair or None, from build scan
        self._mobius_cache = {}
        self._lock = threading.Lock()

    # -- basic queries ------------------------------------------------

    def __len__(self):
        return self.n_elems

    def __repr__(self):
        return (f"<FiniteLattice n={self.n_elems} "
                f"rank={self.rank[self.top]}>")

    @property
    def top_rank(self):
        return self.rank[self.top]

    def leq(self, x, y):
        return bool(self._up[self._pos_of[x]] >> self._pos_of[y] & 1)

    def down_set(self, x):
        """Indices of all y <= x, in increasing rank order."""
        return [self._idx_of[p] for p in _bits(self._down[self._pos_of[x]])]

    def up_set(self, x):
        return [self._idx_of[p] for p in _bits(self._up[self._pos_of[x]])]

    def elements_of_rank(self, i):
        return [x for x in range(self.n_elems) if self.rank[x] == i]

    # -- lattice operations --------------------------------------------

    def meet(self, x, y):
        d = self._down[self._pos_of[x]] & self._down[self._pos_of[y]]
        return self._idx_of[d.bit_length() - 1]

    def join(self, x, y):
        u = self._up[self._pos_of[x]] & self._up[self._pos_of[y]]
        return self._idx_of[(u & -u).bit_length() - 1]

    def join_all(self, xs):
        """Join of any finite family; the empty join is the bottom."""
        out = self.bottom
        for x in xs:
            out = self.join(out, x)
        return out

    def atoms(self):
        """Elements covering the bottom (equivalently, rank 1)."""
        return sorted(y for x, y in self.covers if x == self.bottom)

    # -- geometric test -------------------------------------------------

    def is_geometric(self):
        """Check the two geometric-lattice axioms.

        Atomistic: every element is a join of atoms.  Semimodular:
        r(x ^ y) + r(x v y) <= r(x) + r(y) for every pair.  The first
        failed axiom is reported with a witness.
        """
        atom_ups = [self._up[self._pos_of[a]] for a in self.atoms()]
        pb = self._pos_of[self.bottom]
        for p in range(self.n_elems):
            if p == pb:
                continue
            dmask = self._down[p]
            inter = None
            for ua in atom_ups:
                # atom a <= element at p iff bit p set in up[a]
                if ua >> p & 1:
                    inter = ua if inter is None else inter & ua
            if inter is None:
                return GeometricCheck(False, "NotAtomistic",
                                      (self._idx_of[p],))
            j = (inter & -inter).bit_length() - 1
            if j != p:
                return GeometricCheck(False, "NotAtomistic",
                                      (self._idx_of[p],))
        if self._semi_fail is not None:
            px, py = self._semi_fail
            return GeometricCheck(False, "NotSemimodular",
                                  (self._idx_of[px], self._idx_of[py]))
        return GeometricCheck(True)

    # -- Mobius function --------------------------------------------------

    def mobius_table(self, x):
        """All values mu(x, y) as exact integers, memoized per base."""
        with self._lock:
            table = self._mobius_cache.get(x)
            if table is None:
                table = self._compute_mobius(x)
                self._mobius_cache[x] = table
            return table

    def mobius(self, x, y):
        return self.mobius_table(x)[y]

    def _compute_mobius(self, x):
        px = self._pos_of[x]
        up_x = self._up[px]
        mu = [0] * self.n_elems
        mu[px] = 1
        rest = up_x & ~(1 << px)
        # positions ascend with rank, so every y < z is settled before z
        for p in _bits(rest):
            s = 0
            below = (self._down[p] & up_x) & ~(1 << p)
            for q in _bits(below):
                s += mu[q]
            mu[p] = -s
        values = [0] * self.n_elems
        for p in range(self.n_elems):
            values[self._idx_of[p]] = mu[p]
        return MobiusTable(base=x, values=tuple(values))

    # -- Whitney numbers ----------------------------------------------

    def whitney_first(self):
        """w_i = sum of mu(bottom, y) over elements of rank i."""
        table = self.mobius_table(self.bottom)
        w = [0] * (self.top_rank + 1)
        for y in range(self.n_elems):
            w[self.rank[y]] += table[y]
        return tuple(w)

    def whitney_second(self):
        """W_i = number of elements of rank i (the rank profile)."""
        w = [0] * (self.top_rank + 1)
        for y in range(self.n_elems):
            w[self.rank[y]] += 1
        return tuple(w)

    def partial_mobius_sum(self, k):
        """Sum of mu(bottom, y) over all y of rank <= k.

        Defined for every k >= 0; past the top rank the sum is constant
        (zero whenever the lattice has rank >= 1).
        """
        if k < 0:
            raise ValueError("cutoff must be >= 0")
        w = self.whitney_first()
        return sum(w[: k + 1])

    # -- subintervals ----------------------------------------------------

    def interval(self, x, y):
        """The interval [x, y] as a lattice of its own.

        Elements are re-indexed in increasing rank order; index_map maps
        new indices back to elements of this lattice.  Returns
        (sublattice, index_map).
        """
        if not self.leq(x, y):
            raise NotComparable(f"{x} is not below {y}")
        mask = self._up[self._pos_of[x]] & self._down[self._pos_of[y]]
        members = [self._idx_of[p] for p in _bits(mask)]
        renum = {idx: i for i, idx in enumerate(members)}
        sub_covers = [(renum[a], renum[b]) for a, b in self.covers
                      if a in renum and b in renum]
        labels = None
        if self.labels is not None:
            labels = [self.labels[idx] for idx in members]
        return build_lattice(len(members), sub_covers, labels), members


def _bits(mask):
    """Positions of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_lattice(n_elems, covers, labels=None):
    """Validate a cover relation and build the lattice it generates.

    Raises Cyclic, MultipleMinima/MultipleMaxima (both a kind of
    NotALattice), NotGraded, or NotALattice when validation fails.
    """
    if n_elems < 1:
        raise ValueError("a lattice needs at least one element")
    if labels is not None and len(labels) != n_elems:
        raise ValueError("labels length must equal n_elems")
    seen = set()
    for pair in covers:
        x, y = pair
        if not (0 <= x < n_elems and 0 <= y < n_elems):
            raise ValueError(f"cover {pair} out of range")
        if x == y:
            raise ValueError(f"cover {pair} is a self-loop")
        if (x, y) in seen:
            raise ValueError(f"duplicate cover {pair}")
        seen.add((x, y))
    covers = tuple(sorted(seen))

    children = [[] for _ in range(n_elems)]
    parents = [[] for _ in range(n_elems)]
    for x, y in covers:
        children[y].append(x)
        parents[x].append(y)

    # Kahn topological sort doubles as the cycle check
    indeg = [len(children[v]) for v in range(n_elems)]
    queue = [v for v in range(n_elems) if indeg[v] == 0]
    topo = []
    while queue:
        v = queue.pop()
        topo.append(v)
        for p in parents[v]:
            indeg[p] -= 1
            if indeg[p] == 0:
                queue.append(p)
    if len(topo) != n_elems:
        raise Cyclic("cover relation contains a cycle")

    minima = [v for v in range(n_elems) if not children[v]]
    if len(minima) != 1:
        raise MultipleMinima(f"minimal elements {sorted(minima)}")
    maxima = [v for v in range(n_elems) if not parents[v]]
    if len(maxima) != 1:
        raise MultipleMaxima(f"maximal elements {sorted(maxima)}")
    bottom, top = minima[0], maxima[0]

    rank = [0] * n_elems
    for v in topo:
        for c in children[v]:
            if rank[c] + 1 > rank[v]:
                rank[v] = rank[c] + 1
    for x, y in covers:
        if rank[y] != rank[x] + 1:
            raise NotGraded(
                f"cover ({x}, {y}) skips ranks {rank[x]} -> {rank[y]}")

    order = sorted(range(n_elems), key=lambda v: (rank[v], v))
    pos_of = [0] * n_elems
    for p, idx in enumerate(order):
        pos_of[idx] = p
    pos_covers = [(pos_of[x], pos_of[y]) for x, y in covers]
    pos_rank = [rank[idx] for idx in order]

    down, up = _kernels.transitive_closure(n_elems, pos_covers)
    meet_fail, join_fail, semi_fail = _kernels.scan_pairs(
        n_elems, down, up, pos_rank)
    if meet_fail is not None:
        a, b = (order[meet_fail[0]], order[meet_fail[1]])
        raise NotALattice(f"elements {a} and {b} have no meet")
    if join_fail is not None:
        a, b = (order[join_fail[0]], order[join_fail[1]])
        raise NotALattice(f"elements {a} and {b} have no join")

    return FiniteLattice(
        n=n_elems,
        covers=covers,
        labels=list(labels) if labels is not None else None,
        rank=rank,
        bottom=bottom,
        top=top,
        pos_of=pos_of,
        idx_of=order,
        down=down,
        up=up,
        semi_fail=semi_fail,
    )


def lattice_to_json(lat):
    """Plain-dict form: {"n": ..., "covers": [[x, y], ...], "labels"?}."""
    out = {"n": lat.n_elems, "covers": [list(c) for c in lat.covers]}
    if lat.labels is not None:
        out["labels"] = list(lat.labels)
    return out


def lattice_from_json(data):
    if not isinstance(data, dict) or "n" not in data or "covers" not in data:
        raise ValueError('lattice JSON needs "n" and "covers"')
    covers = [tuple(pair) for pair in data["covers"]]
    return build_lattice(int(data["n"]), covers, data.get("labels"))
