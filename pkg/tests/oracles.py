"""Brute-force reference implementations used only by the tests.

Everything here is deliberately naive and written against the
definitions, with different algorithms than the package (matrix-style
Mobius inversion instead of per-base recursion, quadratic bound scans
instead of bitmask tricks), so agreement is meaningful.
"""

def leq_matrix(n, covers):
    """Reflexive-transitive closure as a set of (x, y) pairs, by
    repeated relational squaring (no topological assumptions)."""
    rel = {(i, i) for i in range(n)}
    rel.update((x, y) for x, y in covers)
    while True:
        extra = {(a, d)
                 for a, b in rel for c, d in rel if b == c} - rel
        if not extra:
            break
        rel |= extra
    return rel


def naive_meet(n, rel, x, y):
    """Greatest lower bound by scanning all elements; None if the set of
    lower bounds has no greatest element."""
    lower = [z for z in range(n) if (z, x) in rel and (z, y) in rel]
    best = [z for z in lower if all((w, z) in rel for w in lower)]
    return best[0] if len(best) == 1 else None


def naive_join(n, rel, x, y):
    upper = [z for z in range(n) if (x, z) in rel and (y, z) in rel]
    best = [z for z in upper if all((z, w) in rel for w in upper)]
    return best[0] if len(best) == 1 else None


def naive_mobius_matrix(n, rel):
    """mu(x, y) for all pairs by inverting zeta row by row."""
    mu = {}
    # order elements by the size of their down-set so predecessors of y
    # are handled before y regardless of index layout
    by_height = sorted(range(n), key=lambda v: sum((u, v) in rel
                                                   for u in range(n)))
    for x in range(n):
        for y in by_height:
            if (x, y) not in rel:
                mu[x, y] = 0
            elif x == y:
                mu[x, y] = 1
            else:
                mu[x, y] = -sum(mu[x, z] for z in range(n)
                                if (x, z) in rel and (z, y) in rel
                                and z != y)
    return mu


def bell_numbers(n_max):
    """Bell(0..n_max) via the Bell triangle."""
    out = [1]
    row = [1]
    for _ in range(n_max):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        out.append(nxt[0])
        row = nxt
    return out


def stirling1_signed(n_max):
    """Signed Stirling numbers of the first kind s(n, k)."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(n + 1):
            row[k] = (prev[k - 1] if k >= 1 else 0) \
                - (n - 1) * (prev[k] if k <= n - 1 else 0)
        rows.append(row)
    return rows


def stirling2(n_max):
    """Stirling numbers of the second kind S(n, k)."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(n + 1):
            row[k] = (prev[k - 1] if k >= 1 else 0) \
                + k * (prev[k] if k <= n - 1 else 0)
        rows.append(row)
    return rows


def naive_closure(mat, subset):
    """Definitional closure: every x whose addition keeps the rank."""
    subset = frozenset(subset)
    r = mat.rank_of(subset)
    return frozenset(x for x in range(mat.ground_size)
                     if mat.rank_of(subset | {x}) == r)


def naive_sifted_count(lat, A, tau):
    """Count of a in A with meet(a, tau) == bottom, via naive meets."""
    rel = {(x, y) for x in range(lat.n_elems) for y in range(lat.n_elems)
           if lat.leq(x, y)}
    return sum(1 for a in A
               if naive_meet(lat.n_elems, rel, a, tau) == lat.bottom)
