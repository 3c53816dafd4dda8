"""Pure-Python bitset kernels.

Rows are Python integers used as bitmasks over element positions.  All
functions assume positions are topologically sorted: every cover (x, y)
satisfies x < y, and position order refines rank order.  This makes the
greatest element of a down-set the highest set bit, and dually for
up-sets, which is what the pair scan exploits.
"""

BACKEND_NAME = "pure"


def transitive_closure(n, covers):
    """Reflexive-transitive closure of a cover relation.

    Returns (down, up): down[i] is the bitmask of {j : j <= i} and up[i]
    the bitmask of {j : i <= j}.
    """
    down = [1 << i for i in range(n)]
    up = [1 << i for i in range(n)]
    children = [[] for _ in range(n)]
    parents = [[] for _ in range(n)]
    for x, y in covers:
        children[y].append(x)
        parents[x].append(y)
    for y in range(n):
        d = down[y]
        for c in children[y]:
            d |= down[c]
        down[y] = d
    for x in range(n - 1, -1, -1):
        u = up[x]
        for p in parents[x]:
            u |= up[p]
        up[x] = u
    return down, up


def scan_pairs(n, down, up, rank):
    """One pass over all unordered pairs checking meets, joins, and the
    semimodular inequality r(meet) + r(join) <= r(x) + r(y).

    Returns (meet_fail, join_fail, semi_fail), each None or the first
    offending pair in scan order.  Stops at the first meet/join failure;
    the semimodular scan runs to completion otherwise.
    """
    semi_fail = None
    for x in range(n):
        dx = down[x]
        ux = up[x]
        rx = rank[x]
        for y in range(x + 1, n):
            if ux >> y & 1:
                # comparable: meet is x, join is y, inequality is equality
                continue
            d = dx & down[y]
            if d == 0:
                return (x, y), None, None
            m = d.bit_length() - 1
            if down[m] != d:
                return (x, y), None, None
            u = ux & up[y]
            if u == 0:
                return None, (x, y), None
            j = (u & -u).bit_length() - 1
            if up[j] != u:
                return None, (x, y), None
            if semi_fail is None and rank[m] + rank[j] > rx + rank[y]:
                semi_fail = (x, y)
    return None, None, semi_fail
