"""Tubes of rank r as nilpotent representations of the cyclic quiver.

S_i[k] is the uniserial module with socle S_i and regular length k; the
translate acts by (i, k) -> (i-1, k).  Wide subcategories are obtained as
filtration closures of semibricks inside the truncated tube (lengths up
to L), so every conclusion holds "up to length L".
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .quiverrep import Morphism, cyclic_quiver, is_isomorphic, morphism_parts
from .torsops import DEFAULT_HOM_BUDGET, SubcatSet, filt_closure
from .universe import Universe, enumerate_universe, tube_module
from .widetors import semibricks
from . import linalg as la


@dataclass(frozen=True, order=True)
class TubeCoord:
    i: int
    k: int

    def label(self) -> str:
        return f"S{self.i}[{self.k}]"

    @classmethod
    def parse(cls, label: str) -> "TubeCoord":
        try:
            head, rest = label[1:].split("[")
            return cls(int(head), int(rest.rstrip("]")))
        except ValueError:
            raise InvalidInput(f"not a tube label: {label!r}") from None


def tube_universe(r: int, bound: int, prime: int = 5) -> Universe:
    if r < 1:
        raise InvalidInput("tube rank must be positive")
    return enumerate_universe(cyclic_quiver(r, prime), "tube", {"bound": bound})


def _norm(i: int, r: int) -> int:
    return (i - 1) % r + 1


def coord_of(u: Universe, k: int) -> TubeCoord:
    return TubeCoord.parse(u.labels[k])


def tube_bricks(r: int, bound: int, universe: Universe | None = None) -> list[TubeCoord]:
    """Coordinates with one-dimensional endomorphism space, by scanning the tube."""
    if bound < r:
        raise InvalidInput("bound must be at least the rank")
    u = universe or tube_universe(r, bound)
    return sorted(coord_of(u, k) for k in u.bricks())


def wing(x: TubeCoord, r: int) -> set[TubeCoord]:
    """The triangle under x: {S_{i+a}[b] : a >= 0, b >= 1, a + b <= k}."""
    if x.k >= r:
        raise InvalidInput(f"wings need regular length below the rank ({x.k} >= {r})")
    return {TubeCoord(_norm(x.i + a, r), b) for a in range(x.k) for b in range(1, x.k - a + 1)}


def tau_coord(x: TubeCoord, r: int) -> TubeCoord:
    return TubeCoord(_norm(x.i - 1, r), x.k)


def _in_some_wing(coords: set[TubeCoord], r: int) -> bool:
    if not coords:
        return True
    if r == 1:
        return False
    return any(coords <= wing(TubeCoord(i, r - 1), r) for i in range(1, r + 1))


def classify_shape(coords: set[TubeCoord], r: int, bound: int) -> str | None:
    """'wing', 'wing+ray' or 'whole' (the full truncated tube); ``None`` if none applies."""
    if _in_some_wing(coords, r):
        return "wing"
    for i in range(1, r + 1):
        ray = {TubeCoord(i, n * r) for n in range(1, bound // r + 1)}
        if ray <= coords and _in_some_wing(coords - ray, r):
            return "wing+ray"
    whole = {TubeCoord(i, k) for i in range(1, r + 1) for k in range(1, bound + 1)}
    if coords == whole:
        return "whole"
    return None


def wing_or_ray(coords: set[TubeCoord], r: int, bound: int) -> bool:
    """Weaker dichotomy: inside a wing of size below r, or containing a whole ray S_i[nr]."""
    if _in_some_wing(coords, r):
        return True
    return any({TubeCoord(i, n * r) for n in range(1, bound // r + 1)} <= coords for i in range(1, r + 1))


def classify_wide_in_tube(r: int, bound: int, budget: int = DEFAULT_HOM_BUDGET,
                          universe: Universe | None = None) -> dict:
    """Enumerate wide subcategories of the truncated tube and check their shapes."""
    if bound % r or bound < 2 * r:
        raise InvalidInput("bound must be a multiple of the rank and at least twice it")
    u = universe or tube_universe(r, bound)
    bricks = u.bricks()
    sbs = semibricks(u, bricks)
    violations = []
    for sb in sbs:
        long = [k for k in sb.indices if coord_of(u, k).k == r]
        if len(long) > 1:
            violations.append({"semibrick": sb.labels(), "reason": "two bricks of length r"})
    wides = sorted({filt_closure(sb, budget) for sb in sbs}, key=SubcatSet.sort_key)
    entries = []
    for w in wides:
        coords = {coord_of(u, k) for k in w.indices}
        shape = classify_shape(coords, r, bound)
        entry = {"coords": [[c.i, c.k] for c in sorted(coords)], "shape": shape,
                 "wing_or_ray": wing_or_ray(coords, r, bound)}
        entries.append(entry)
        if shape is None:
            violations.append({"wide": w.labels(), "reason": "no wing / wing+ray shape"})
    return {"rank": r, "bound": bound, "prime": u.p, "wides": entries, "violations": violations,
            "scope": f"consistent up to regular length {bound}"}


def ray_inclusion(u: Universe, i: int, k: int) -> Morphism:
    """The inclusion S_i[k] -> S_i[k+1] onto the first k basis vectors."""
    q = u.quiver
    small, big = tube_module(q, i, k), tube_module(q, i, k + 1)
    comps = []
    for v in range(q.n):
        c = la.zeros(big.dim[v], small.dim[v])
        for t in range(small.dim[v]):
            c[t, t] = 1
        comps.append(c)
    return Morphism(small, big, comps)


def ray_sequence_ok(u: Universe, i: int, k: int) -> bool:
    """0 -> S_i[k] -> S_i[k+1] -> S_{i+k}[1] -> 0 is exact with the expected ends."""
    r = u.quiver.n
    f = ray_inclusion(u, i, k)
    parts = morphism_parts(f)
    return (parts.kernel.rep.total_dim == 0
            and is_isomorphic(parts.cokernel.rep, tube_module(u.quiver, _norm(i + k, r), 1)))
