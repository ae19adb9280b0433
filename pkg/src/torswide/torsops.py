"""Subcategories of a universe as index sets, and the torsion-theoretic operations on them.

A subcategory is represented by the set of indecomposables it contains
(its additive closure is implied).  Membership of an arbitrary module in
the torsion class generated by C is decided structurally: the torsion
part is the iterated trace of C, and dually for torsionfree classes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .errors import BudgetExceeded, InvalidInput, InvariantViolation
from .quiverrep import (
    Quot,
    Representation,
    Sub,
    decompose,
    hom_space,
    iter_morphisms,
    morphism_parts,
    quotient,
    subrep,
    _unflatten_hom,
)
from .universe import Universe

DEFAULT_HOM_BUDGET = 5 ** 8
DEFAULT_SUBSET_BUDGET = 2 ** 16


class SubcatSet:
    """A sorted set of indecomposable indices of a universe."""

    __slots__ = ("universe", "indices", "_fs")

    def __init__(self, universe: Universe, indices: Iterable[int] = ()):
        idx = sorted(set(int(i) for i in indices))
        if idx and (idx[0] < 0 or idx[-1] >= len(universe)):
            raise InvalidInput("index outside the universe")
        self.universe = universe
        self.indices = tuple(idx)
        self._fs = frozenset(idx)

    @classmethod
    def from_labels(cls, universe: Universe, labels: Iterable[str]) -> "SubcatSet":
        return cls(universe, [universe.index(lab) for lab in labels])

    @classmethod
    def everything(cls, universe: Universe) -> "SubcatSet":
        return cls(universe, range(len(universe)))

    def labels(self) -> list[str]:
        return [self.universe.labels[i] for i in self.indices]

    def to_json(self) -> list[str]:
        return self.labels()

    def mask(self) -> int:
        return sum(1 << i for i in self.indices)

    def __contains__(self, i) -> bool:
        return i in self._fs

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return isinstance(other, SubcatSet) and self._fs == other._fs

    def __hash__(self):
        return hash(self._fs)

    def __le__(self, other):
        return self._fs <= other._fs

    def __lt__(self, other):
        return self._fs < other._fs

    def __or__(self, other):
        return SubcatSet(self.universe, self._fs | other._fs)

    def __and__(self, other):
        return SubcatSet(self.universe, self._fs & other._fs)

    def __sub__(self, other):
        return SubcatSet(self.universe, self._fs - other._fs)

    def sort_key(self):
        return (len(self.indices), self.indices)

    def __repr__(self):
        return "{" + ", ".join(self.labels()) + "}"


@dataclass(frozen=True)
class TorsionPair:
    t: SubcatSet
    f: SubcatSet


def _members(c) -> list[Representation]:
    if isinstance(c, SubcatSet):
        return [c.universe.objects[i] for i in c.indices]
    return list(c)


def _zero_bases(x: Representation) -> list[np.ndarray]:
    return [la.zeros(d, 0) for d in x.dim]


def _image_sum(gens: Sequence[Representation], y: Representation) -> list[np.ndarray]:
    """Per-vertex bases of the sum of the images of all maps from ``gens`` into ``y``."""
    p = y.p
    cols = [[] for _ in y.dim]
    for g in gens:
        basis = hom_space(g, y)
        for row in basis:
            for v, c in enumerate(_unflatten_hom(g, y, row)):
                if c.size:
                    cols[v].append(c)
    return [la.column_basis(np.hstack(c), p) if c else la.zeros(y.dim[v], 0) for v, c in enumerate(cols)]


def trace_radical(c, x: Representation) -> Sub:
    """Largest submodule of ``x`` in the torsion class generated by ``c``."""
    gens = _members(c)
    total = _zero_bases(x)
    while True:
        q = quotient(x, total)
        s = _image_sum(gens, q.rep)
        if all(b.shape[1] == 0 for b in s):
            return subrep(x, total)
        p = x.p
        total = [np.hstack([total[v], la.matmul(q.section[v], s[v], p)]) for v in range(len(x.dim))]


def _reject(gens: Sequence[Representation], y: Representation) -> list[np.ndarray]:
    """Per-vertex kernels (in ``y`` coordinates) of all maps from ``y`` to ``gens``."""
    p = y.p
    rows = [[] for _ in y.dim]
    for g in gens:
        for row in hom_space(y, g):
            for v, c in enumerate(_unflatten_hom(y, g, row)):
                if c.size:
                    rows[v].append(c)
    out = []
    for v, r in enumerate(rows):
        if r:
            out.append(la.kernel(np.vstack(r), p))
        else:
            out.append(la.identity(y.dim[v]))
    return out


def reject_radical(c, x: Representation) -> Quot:
    """Largest quotient of ``x`` in the torsionfree class cogenerated by ``c``."""
    gens = _members(c)
    p = x.p
    current = [la.identity(d) for d in x.dim]
    while True:
        sub = subrep(x, current)
        k = _reject(gens, sub.rep)
        if all(k[v].shape[1] == current[v].shape[1] for v in range(len(x.dim))):
            return quotient(x, current)
        current = [la.matmul(current[v], k[v], p) for v in range(len(x.dim))]


def in_torsion_closure(c, x: Representation) -> bool:
    return trace_radical(c, x).rep.dim == x.dim


def in_torsionfree_closure(c, x: Representation) -> bool:
    return reject_radical(c, x).rep.dim == x.dim


def torsion_closure(c: SubcatSet) -> SubcatSet:
    u = c.universe
    if not c.indices:
        return SubcatSet(u)
    h = u.tables()[0]
    out = []
    for k, x in enumerate(u.objects):
        if k in c:
            out.append(k)
        elif any(h[j, k] for j in c.indices) and in_torsion_closure(c, x):
            out.append(k)
    return SubcatSet(u, out)


def torsionfree_closure(c: SubcatSet) -> SubcatSet:
    u = c.universe
    if not c.indices:
        return SubcatSet(u)
    h = u.tables()[0]
    out = []
    for k, x in enumerate(u.objects):
        if k in c:
            out.append(k)
        elif any(h[k, j] for j in c.indices) and in_torsionfree_closure(c, x):
            out.append(k)
    return SubcatSet(u, out)


def perp(c: SubcatSet, degrees=(0,), side: str = "right") -> SubcatSet:
    """Indecomposables with vanishing Hom (degree 0) and/or Ext (degree 1) against ``c``.

    ``side='right'`` means Hom(C, X) = 0; ``side='left'`` means Hom(X, C) = 0.
    """
    degrees = set(degrees)
    if not degrees <= {0, 1} or not degrees:
        raise InvalidInput(f"degrees must be a nonempty subset of {{0, 1}}, got {sorted(degrees)}")
    if side not in ("left", "right"):
        raise InvalidInput(f"side must be 'left' or 'right', got {side!r}")
    u = c.universe
    h, e = u.tables()
    out = []
    for x in range(len(u)):
        ok = True
        for j in c.indices:
            a, b = (j, x) if side == "right" else (x, j)
            if (0 in degrees and h[a, b]) or (1 in degrees and e[a, b]):
                ok = False
                break
        if ok:
            out.append(x)
    return SubcatSet(u, out)


def is_torsion_class(s: SubcatSet) -> bool:
    return torsion_closure(s) == s


def is_torsionfree_class(s: SubcatSet) -> bool:
    return torsionfree_closure(s) == s


def pair_from_class(s: SubcatSet) -> TorsionPair:
    if not is_torsion_class(s):
        raise InvalidInput(f"{s!r} is not a torsion class")
    return TorsionPair(s, perp(s, (0,), "right"))


def pair_from_torsionfree(f: SubcatSet) -> TorsionPair:
    if not is_torsionfree_class(f):
        raise InvalidInput(f"{f!r} is not a torsionfree class")
    return TorsionPair(perp(f, (0,), "left"), f)


def _summands_in(u: Universe, rep: Representation, s: SubcatSet) -> bool:
    for m in decompose(rep):
        k = u.identify(m)
        if k is None or k not in s:
            return False
    return True


def canonical_sequence_ok(pair: TorsionPair, x: Representation) -> bool:
    """0 -> t(X) -> X -> X/t(X) -> 0 with t(X) in t and X/t(X) in f."""
    u = pair.t.universe
    sub = trace_radical(pair.t, x)
    quo = quotient(x, sub.bases)
    return _summands_in(u, sub.rep, pair.t) and _summands_in(u, quo.rep, pair.f)


# ---------------------------------------------------------------------------
# filtration closure


class _FiltOracle:
    def __init__(self, s: SubcatSet, budget: int):
        self.s = s
        self.u = s.universe
        self.budget = budget
        self.memo: dict[int, bool] = {}
        self.pieces: dict[tuple, list[Representation]] = {}
        self.members = [(i, self.u.objects[i]) for i in s.indices]

    def indec(self, x: Representation, k: int | None = None) -> bool:
        if k is None:
            k = self.u.identify(x)
        if k is not None:
            if k in self.s:
                return True
            if k in self.memo:
                return self.memo[k]
        ans = self._search(x, k)
        if k is not None:
            self.memo[k] = ans
        return ans

    def _decompose(self, x: Representation) -> list[Representation]:
        key = x.key()
        if key not in self.pieces:
            self.pieces[key] = decompose(x)
        return self.pieces[key]

    def _search(self, x: Representation, k: int | None) -> bool:
        h = self.u.tables()[0] if k is not None else None
        for i, b in self.members:
            if b.total_dim >= x.total_dim or any(bd > xd for bd, xd in zip(b.dim, x.dim)):
                continue
            if h is not None and h[i, k] == 0:
                continue
            basis = hom_space(b, x)
            if basis.shape[0] == 0:
                continue
            for f in iter_morphisms(b, x, self.budget, projective=True, basis=basis):
                if not f.is_injective():
                    continue
                cok = morphism_parts(f).cokernel.rep
                if all(self.indec(m) for m in self._decompose(cok)):
                    return True
        return False

    def module(self, x: Representation) -> bool:
        return all(self.indec(m) for m in self._decompose(x))


def filt_closure(s: SubcatSet, budget: int = DEFAULT_HOM_BUDGET) -> SubcatSet:
    """Indecomposables admitting a filtration with factors in add(S).

    Membership is decided recursively: X is in filt(S) when X is in S, or
    some monomorphism B -> X with B in S has a cokernel whose
    indecomposable summands all lie in filt(S).  Hom spaces are enumerated
    projectively; ``budget`` caps ``p**hom`` and overflow raises
    BudgetExceeded.
    """
    oracle = _FiltOracle(s, budget)
    u = s.universe
    return SubcatSet(u, [k for k, x in enumerate(u.objects) if oracle.indec(x, k)])


def in_filt(s: SubcatSet, x: Representation, budget: int = DEFAULT_HOM_BUDGET) -> bool:
    return _FiltOracle(s, budget).module(x)


# ---------------------------------------------------------------------------
# covers and enumeration


def upper_covers(t: SubcatSet) -> list[tuple[SubcatSet, int]]:
    """Torsion classes covering ``t`` with their brick labels.

    Every cover is T(t + B) for a brick B in the torsionfree part; the
    covers are the minimal members of that family.
    """
    u = t.universe
    f = perp(t, (0,), "right")
    cands: dict[SubcatSet, int] = {}
    for b in u.bricks():
        if b in f:
            c = torsion_closure(t | SubcatSet(u, [b]))
            cands.setdefault(c, b)
    mins = [c for c in cands if not any(d < c for d in cands)]
    out = []
    for c in mins:
        # the label is the unique brick of c that is Hom-orthogonal to t
        out.append((c, _unique_label(t, c)))
    out.sort(key=lambda x: x[0].sort_key())
    return out


def lower_covers(t: SubcatSet) -> list[tuple[SubcatSet, int]]:
    """Torsion classes covered by ``t``: maximal members of {t meet left-perp(B) : B brick in t}."""
    u = t.universe
    cands: dict[SubcatSet, int] = {}
    for b in u.bricks():
        if b in t:
            c = t & perp(SubcatSet(u, [b]), (0,), "left")
            cands.setdefault(c, b)
    maxs = [c for c in cands if not any(c < d for d in cands)]
    out = [(c, _unique_label(c, t)) for c in maxs]
    out.sort(key=lambda x: x[0].sort_key())
    return out


def label_candidates(lower: SubcatSet, upper: SubcatSet) -> list[int]:
    u = upper.universe
    h = u.tables()[0]
    return [b for b in u.bricks() if b in upper and not any(h[x, b] for x in lower.indices)]


def _unique_label(lower: SubcatSet, upper: SubcatSet) -> int:
    cands = label_candidates(lower, upper)
    if len(cands) != 1:
        raise InvariantViolation(
            f"cover {lower!r} < {upper!r} has {len(cands)} label candidates",
            counterexample={"lower": lower.labels(), "upper": upper.labels(),
                            "candidates": [upper.universe.labels[b] for b in cands]},
        )
    return cands[0]


def _require_finite(u: Universe, what: str) -> None:
    if u.family != "dynkin":
        raise InvalidInput(f"{what} needs a complete (dynkin) universe, got family {u.family!r}")


def closure_scan(u: Universe, budget: int = DEFAULT_SUBSET_BUDGET) -> list[SubcatSet]:
    """All torsion classes by scanning subsets, skipping those between S and T(S)."""
    _require_finite(u, "closure_scan")
    n = len(u)
    if 2 ** n > budget:
        raise BudgetExceeded("subset scan", 2 ** n, budget)
    decided = bytearray(2 ** n)
    found = []
    for mask in range(2 ** n):
        if decided[mask]:
            continue
        s = SubcatSet(u, [i for i in range(n) if mask >> i & 1])
        c = torsion_closure(s)
        cmask = c.mask()
        if cmask == mask:
            found.append(s)
            decided[mask] = 1
            continue
        # every S' with S <= S' < T(S) has the same closure, so is not closed
        extra = [i for i in range(n) if (cmask >> i & 1) and not (mask >> i & 1)]
        for r in range(len(extra) + 1):
            for combo in itertools.combinations(extra, r):
                m2 = mask | sum(1 << i for i in combo)
                if m2 != cmask:
                    decided[m2] = 1
    found.sort(key=SubcatSet.sort_key)
    return found


def cover_walk(u: Universe, limit: int = 100_000) -> list[SubcatSet]:
    """All torsion classes reachable from 0 by upward covers."""
    _require_finite(u, "cover_walk")
    start = SubcatSet(u)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for c, _ in upper_covers(t):
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
                    if len(seen) > limit:
                        raise BudgetExceeded("cover walk", len(seen), limit)
        frontier = nxt
    return sorted(seen, key=SubcatSet.sort_key)


def enumerate_torsion_classes(u: Universe, method: str = "cover_walk",
                              budget: int = DEFAULT_SUBSET_BUDGET) -> list[SubcatSet]:
    if method == "closure_scan":
        return closure_scan(u, budget)
    if method == "cover_walk":
        return cover_walk(u)
    raise InvalidInput(f"unknown method {method!r}")
