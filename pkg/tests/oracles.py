"""Brute-force oracles shared by several test modules."""
import itertools

import numpy as np


def brute_hom_count(m, n) -> int:
    """Number of intertwiners M -> N, by enumerating every tuple of vertex matrices."""
    p = m.p
    q = m.quiver
    shapes = [(n.dim[v], m.dim[v]) for v in range(q.n)]
    sizes = [a * b for a, b in shapes]
    count = 0
    for flat in itertools.product(range(p), repeat=sum(sizes)):
        comps, k = [], 0
        for (r, c), s in zip(shapes, sizes):
            comps.append(np.array(flat[k:k + s], dtype=np.int64).reshape(r, c))
            k += s
        ok = all(np.array_equal(n.maps[a.name] @ comps[a.src] % p, comps[a.tgt] @ m.maps[a.name] % p)
                 for a in q.arrows)
        count += ok
    return count
