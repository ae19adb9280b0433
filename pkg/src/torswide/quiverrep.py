"""Quivers, representations over F_p, morphism spaces and Ext^1.

Conventions: left modules; an arrow ``a: i -> j`` acts as a linear map
``M_i -> M_j`` stored as a ``dim[j] x dim[i]`` matrix.  A morphism is a
tuple of per-vertex matrices ``f_i: M_i -> N_i`` with
``N_a @ f_i == f_j @ M_a`` for every arrow ``a: i -> j``.

Ext^1(M, N) is computed as the cokernel of

    delta: (+)_i Hom(M_i, N_i) -> (+)_{a: i->j} Hom(M_i, N_j),
           f |-> (N_a f_i - f_j M_a)_a

whose kernel is Hom(M, N).  A cocycle ``eta`` (one ``dim N_j x dim M_i``
block per arrow) is the extension with block-triangular arrow maps
``[[N_a, eta_a], [0, M_a]]``.  This is valid for any quiver, so the
nilpotent representations of a cyclic quiver (the tube model) reuse it.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .errors import BudgetExceeded, DimensionMismatch, InvalidInput

#: exhaustive idempotent / isomorphism search is used when p**hom_dim is at most this
EXHAUSTIVE_LIMIT = 625
RANDOM_TRIALS = 64
_SEED = 20240229


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


class Quiver:
    """A finite quiver together with the prime of the ground field.

    ``vertices`` are labels; arrows are ``(name, src_label, tgt_label)``.
    Cyclic quivers are allowed but are only used for nilpotent
    representations.
    """

    def __init__(self, vertices: Sequence, arrows: Iterable, prime: int = 5, name: str = ""):
        self.field = la.FieldSpec(int(prime))
        self.p = self.field.prime
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInput("duplicate vertex labels")
        self.name = name
        index = {v: k for k, v in enumerate(self.vertices)}
        arr = []
        for a in arrows:
            if isinstance(a, dict):
                nm, s, t = a["name"], a["src"], a["tgt"]
            else:
                nm, s, t = a
            s, t = str(s), str(t)
            if s not in index or t not in index:
                raise InvalidInput(f"arrow {nm!r} has an undeclared endpoint")
            arr.append(Arrow(str(nm), index[s], index[t]))
        if len({a.name for a in arr}) != len(arr):
            raise InvalidInput("duplicate arrow names")
        self.arrows = tuple(arr)
        self.vertex_index = index

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def acyclic(self) -> bool:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.tgt] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows:
                if a.src == v:
                    indeg[a.tgt] -= 1
                    if indeg[a.tgt] == 0:
                        ready.append(a.tgt)
        return seen == self.n

    def require_acyclic(self, what: str) -> None:
        if not self.acyclic:
            raise InvalidInput(f"{what} requires an acyclic quiver")

    @cached_property
    def paths(self) -> dict[tuple[int, int], list[tuple[str, ...]]]:
        """All paths ``i -> j`` (including trivial ones) as arrow-name tuples."""
        self.require_acyclic("path enumeration")
        out: dict[tuple[int, int], list[tuple[str, ...]]] = {
            (i, j): [] for i in range(self.n) for j in range(self.n)
        }

        def walk(start, here, word):
            out[(start, here)].append(word)
            for a in self.arrows:
                if a.src == here:
                    walk(start, a.tgt, word + (a.name,))

        for v in range(self.n):
            walk(v, v, ())
        for key in out:
            out[key].sort()
        return out

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {"name": a.name, "src": self.vertices[a.src], "tgt": self.vertices[a.tgt]}
                for a in self.arrows
            ],
            "field": {"prime": self.p},
        }

    @classmethod
    def from_json(cls, data: dict, prime: int | None = None) -> "Quiver":
        try:
            p = prime if prime is not None else data.get("field", {}).get("prime", 5)
            return cls(data["vertices"], data["arrows"], p, name=data.get("name", ""))
        except KeyError as exc:
            raise InvalidInput(f"quiver JSON lacks {exc}") from None

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(self.digest())

    def __repr__(self):
        return f"Quiver({self.name or self.vertices!r}, p={self.p})"


def linear_quiver(n: int, prime: int = 5) -> Quiver:
    """A_n with linear orientation 1 -> 2 -> ... -> n."""
    vs = [str(k) for k in range(1, n + 1)]
    return Quiver(vs, [(f"a{k}", vs[k - 1], vs[k]) for k in range(1, n)], prime, name=f"A{n}")


def d4_quiver(prime: int = 5) -> Quiver:
    """D_4 with the three outer vertices mapping into the centre."""
    return Quiver(["0", "1", "2", "3"], [("a1", "1", "0"), ("a2", "2", "0"), ("a3", "3", "0")], prime, name="D4")


def kronecker_quiver(prime: int = 5) -> Quiver:
    """Two arrows ``a, b: 0 -> 1``; the simple projective sits at vertex 1."""
    return Quiver(["0", "1"], [("a", "0", "1"), ("b", "0", "1")], prime, name="kronecker")


def cyclic_quiver(r: int, prime: int = 5) -> Quiver:
    """Cyclic quiver on vertices 1..r with arrows ``x_i: i -> i-1 (mod r)``."""
    vs = [str(k) for k in range(1, r + 1)]
    arrows = [(f"x{k}", vs[k - 1], vs[(k - 2) % r]) for k in range(1, r + 1)]
    return Quiver(vs, arrows, prime, name=f"tube{r}")


class Representation:
    """A representation: a dimension vector plus one matrix per arrow."""

    __slots__ = ("quiver", "dim", "maps", "_key")

    def __init__(self, quiver: Quiver, dim: Sequence[int], maps: dict | None = None, check: bool = True):
        self.quiver = quiver
        self.dim = tuple(int(d) for d in dim)
        if len(self.dim) != quiver.n or any(d < 0 for d in self.dim):
            raise DimensionMismatch(f"bad dimension vector {dim} for {quiver!r}")
        p = quiver.p
        maps = dict(maps or {})
        unknown = set(maps) - {a.name for a in quiver.arrows}
        if unknown:
            raise InvalidInput(f"maps for unknown arrows {sorted(unknown)}")
        out = {}
        for a in quiver.arrows:
            shape = (self.dim[a.tgt], self.dim[a.src])
            if a.name in maps and maps[a.name] is not None:
                m = np.array(maps[a.name], dtype=np.int64)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise DimensionMismatch(f"arrow {a.name}: expected shape {shape}, got {m.shape}")
                out[a.name] = m % p
            else:
                out[a.name] = la.zeros(*shape)
        self.maps = out
        self._key = None
        if check and not quiver.acyclic and not self.is_nilpotent():
            raise InvalidInput("representations of a cyclic quiver must be nilpotent")

    @property
    def p(self) -> int:
        return self.quiver.p

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def offsets(self) -> list[int]:
        return [0] + list(itertools.accumulate(self.dim))

    def total_operator(self) -> np.ndarray:
        """Block matrix of all arrows acting on the direct sum of the vertex spaces."""
        off = self.offsets()
        t = la.zeros(self.total_dim, self.total_dim)
        for a in self.quiver.arrows:
            t[off[a.tgt]:off[a.tgt + 1], off[a.src]:off[a.src + 1]] += self.maps[a.name]
        return t % self.p

    def is_nilpotent(self) -> bool:
        t = self.total_operator()
        n = self.total_dim
        power = t
        steps = 1
        while steps < n:
            power = la.matmul(power, power, self.p)
            steps *= 2
        return n == 0 or la.is_zero(power)

    def key(self) -> tuple:
        """Hashable exact identity (same matrices, not isomorphism)."""
        if self._key is None:
            self._key = (self.dim,) + tuple(self.maps[a.name].tobytes() for a in self.quiver.arrows)
        return self._key

    def same_as(self, other: "Representation") -> bool:
        return self.quiver == other.quiver and self.key() == other.key()

    def to_json(self) -> dict:
        return {"dim": list(self.dim), "maps": {k: v.tolist() for k, v in self.maps.items()}}

    @classmethod
    def from_json(cls, quiver: Quiver, data: dict) -> "Representation":
        try:
            return cls(quiver, data["dim"], data.get("maps", {}))
        except KeyError as exc:
            raise InvalidInput(f"representation JSON lacks {exc}") from None

    def base_change(self, g: Sequence[np.ndarray]) -> "Representation":
        """The isomorphic representation ``g_j M_a g_i^{-1}``."""
        p = self.p
        inv = []
        for k, gi in enumerate(g):
            gi_inv = la.inverse(np.asarray(gi, dtype=np.int64) % p, p)
            if gi_inv is None:
                raise InvalidInput(f"base change at vertex {k} is singular")
            inv.append(gi_inv)
        maps = {
            a.name: la.matmul(la.matmul(np.asarray(g[a.tgt]) % p, self.maps[a.name], p), inv[a.src], p)
            for a in self.quiver.arrows
        }
        return Representation(self.quiver, self.dim, maps, check=False)

    def __repr__(self):
        return f"Representation(dim={self.dim})"


def zero_rep(q: Quiver) -> Representation:
    return Representation(q, [0] * q.n)


def simple_rep(q: Quiver, v: int) -> Representation:
    dim = [0] * q.n
    dim[v] = 1
    return Representation(q, dim)


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise InvalidInput("direct_sum needs at least one summand")
    q = reps[0].quiver
    dim = [sum(r.dim[v] for r in reps) for v in range(q.n)]
    maps = {}
    for a in q.arrows:
        blocks = [r.maps[a.name] for r in reps]
        m = la.zeros(dim[a.tgt], dim[a.src])
        ro = co = 0
        for b in blocks:
            m[ro:ro + b.shape[0], co:co + b.shape[1]] = b
            ro += b.shape[0]
            co += b.shape[1]
        maps[a.name] = m
    return Representation(q, dim, maps, check=False)


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """sum_i d_i e_i - sum_{a: i->j} d_i e_j.

    Valid for finite-dimensional (hence nilpotent, on cyclic quivers)
    representations of any quiver, since the standard resolution has length one.
    """
    if len(d) != q.n or len(e) != q.n:
        raise DimensionMismatch("dimension vectors do not match the quiver")
    return sum(int(x) * int(y) for x, y in zip(d, e)) - sum(int(d[a.src]) * int(e[a.tgt]) for a in q.arrows)


class Morphism:
    """Per-vertex matrices ``comps[i]: source_i -> target_i``."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Representation, target: Representation, comps: Sequence, check: bool = True):
        if source.quiver != target.quiver:
            raise InvalidInput("morphism between representations of different quivers")
        p = source.p
        cs = []
        for v in range(source.quiver.n):
            shape = (target.dim[v], source.dim[v])
            c = np.array(comps[v], dtype=np.int64)
            if c.size == 0:
                c = c.reshape(shape)
            if c.shape != shape:
                raise DimensionMismatch(f"component {v}: expected {shape}, got {c.shape}")
            cs.append(c % p)
        self.source = source
        self.target = target
        self.comps = tuple(cs)
        if check and not self.is_valid():
            raise InvalidInput("components do not intertwine the arrow maps")

    def is_valid(self) -> bool:
        p = self.source.p
        for a in self.source.quiver.arrows:
            lhs = la.matmul(self.target.maps[a.name], self.comps[a.src], p)
            rhs = la.matmul(self.comps[a.tgt], self.source.maps[a.name], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(la.is_zero(c) for c in self.comps)

    def is_injective(self) -> bool:
        p = self.source.p
        return all(la.rank(c, p) == c.shape[1] for c in self.comps)

    def is_surjective(self) -> bool:
        p = self.source.p
        return all(la.rank(c, p) == c.shape[0] for c in self.comps)

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def compose(self, other: "Morphism") -> "Morphism":
        """``self o other``."""
        if other.target.dim != self.source.dim or other.target.quiver != self.source.quiver:
            raise DimensionMismatch("morphisms are not composable")
        p = self.source.p
        return Morphism(other.source, self.target,
                        [la.matmul(a, b, p) for a, b in zip(self.comps, other.comps)], check=False)

    def flat(self) -> np.ndarray:
        if not self.comps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([c.reshape(-1) for c in self.comps])


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, [la.identity(d) for d in m.dim], check=False)


def zero_morphism(m: Representation, n: Representation) -> Morphism:
    return Morphism(m, n, [la.zeros(n.dim[v], m.dim[v]) for v in range(m.quiver.n)], check=False)


# ---------------------------------------------------------------------------
# Hom and Ext


def _hom_layout(m: Representation, n: Representation) -> list[int]:
    sizes = [n.dim[v] * m.dim[v] for v in range(m.quiver.n)]
    return [0] + list(itertools.accumulate(sizes))


def _cocycle_layout(m: Representation, n: Representation) -> list[int]:
    sizes = [n.dim[a.tgt] * m.dim[a.src] for a in m.quiver.arrows]
    return [0] + list(itertools.accumulate(sizes))


def delta_matrix(m: Representation, n: Representation) -> np.ndarray:
    """The map ``f |-> (N_a f_i - f_j M_a)_a``; its kernel is Hom(M, N)."""
    if m.quiver != n.quiver:
        raise InvalidInput("representations of different quivers")
    p = m.p
    hoff = _hom_layout(m, n)
    coff = _cocycle_layout(m, n)
    d = la.zeros(coff[-1], hoff[-1])
    for k, a in enumerate(m.quiver.arrows):
        i, j = a.src, a.tgt
        r0, r1 = coff[k], coff[k + 1]
        if r0 == r1:
            continue
        if hoff[i + 1] > hoff[i]:
            d[r0:r1, hoff[i]:hoff[i + 1]] += np.kron(n.maps[a.name], la.identity(m.dim[i]))
        if hoff[j + 1] > hoff[j]:
            d[r0:r1, hoff[j]:hoff[j + 1]] -= np.kron(la.identity(n.dim[j]), m.maps[a.name].T)
    return d % p


def _unflatten_hom(m: Representation, n: Representation, vec: np.ndarray) -> list[np.ndarray]:
    off = _hom_layout(m, n)
    return [vec[off[v]:off[v + 1]].reshape(n.dim[v], m.dim[v]) for v in range(m.quiver.n)]


def hom_space(m: Representation, n: Representation) -> np.ndarray:
    """Basis of Hom(M, N) as the rows of an ``h x nvars`` matrix of flattened morphisms."""
    d = delta_matrix(m, n)
    nvars = d.shape[1]
    if d.shape[0] == 0:
        return la.identity(nvars)
    basis = la.reduce(d, m.p)[2]
    if not basis:
        return la.zeros(0, nvars)
    return np.stack(basis)


def hom_dim(m: Representation, n: Representation) -> int:
    d = delta_matrix(m, n)
    return d.shape[1] - la.rank(d, m.p)


def hom_ext_dims(m: Representation, n: Representation) -> tuple[int, int]:
    """``(dim Hom(M,N), dim Ext^1(M,N))`` from a single rank computation."""
    d = delta_matrix(m, n)
    r = la.rank(d, m.p) if d.size else 0
    return d.shape[1] - r, d.shape[0] - r


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    return [Morphism(m, n, _unflatten_hom(m, n, row), check=False) for row in hom_space(m, n)]


def morphism_from_flat(m: Representation, n: Representation, vec: np.ndarray) -> Morphism:
    return Morphism(m, n, _unflatten_hom(m, n, np.asarray(vec) % m.p), check=False)


def iter_morphisms(m: Representation, n: Representation, budget: int, projective: bool = True,
                   basis: np.ndarray | None = None):
    """Enumerate Hom(M, N): all elements, or one per line when ``projective``.

    Raises BudgetExceeded when ``p**hom_dim`` exceeds ``budget``.
    """
    p = m.p
    if basis is None:
        basis = hom_space(m, n)
    h = basis.shape[0]
    if p ** h > budget:
        raise BudgetExceeded(f"Hom space enumeration {m.dim}->{n.dim}", p ** h, budget)
    for coeffs in _coefficient_vectors(h, p, projective):
        yield morphism_from_flat(m, n, la.matmul(np.array(coeffs, dtype=np.int64).reshape(1, -1), basis, p)[0])


def _coefficient_vectors(h: int, p: int, projective: bool):
    if not projective:
        yield from itertools.product(range(p), repeat=h)
        return
    for lead in range(h):
        for tail in itertools.product(range(p), repeat=h - lead - 1):
            yield (0,) * lead + (1,) + tail


class ExtSpace:
    """Ext^1(M, N) with a fixed basis of cocycle representatives."""

    def __init__(self, m: Representation, n: Representation):
        if m.quiver != n.quiver:
            raise InvalidInput("representations of different quivers")
        self.m = m
        self.n = n
        p = m.p
        d = delta_matrix(m, n)
        ncoc = d.shape[0]
        self.layout = _cocycle_layout(m, n)
        img = la.column_basis(d, p) if d.size else la.zeros(ncoc, 0)
        comp = la.complement_basis(img, ncoc, p)
        self.image_rank = img.shape[1]
        self.dim = comp.shape[1]
        self._basis = comp
        full = np.hstack([img, comp]) if ncoc else la.zeros(0, 0)
        self._coord = la.inverse(full, p) if ncoc else la.zeros(0, 0)

    @property
    def cocycle_vectors(self) -> list[np.ndarray]:
        return [self._basis[:, k].copy() for k in range(self.dim)]

    @property
    def cocycle_basis(self) -> list[dict]:
        return [self.unflatten(v) for v in self.cocycle_vectors]

    def unflatten(self, vec: np.ndarray) -> dict:
        out = {}
        for k, a in enumerate(self.m.quiver.arrows):
            out[a.name] = np.asarray(vec[self.layout[k]:self.layout[k + 1]]).reshape(
                self.n.dim[a.tgt], self.m.dim[a.src])
        return out

    def flatten(self, cocycle: dict) -> np.ndarray:
        parts = []
        for a in self.m.quiver.arrows:
            c = np.asarray(cocycle.get(a.name, la.zeros(self.n.dim[a.tgt], self.m.dim[a.src])), dtype=np.int64)
            parts.append(c.reshape(-1))
        return np.concatenate(parts) % self.m.p if parts else np.zeros(0, dtype=np.int64)

    def coords(self, cocycle) -> np.ndarray:
        """Coordinates of the class of a cocycle (vector or per-arrow dict)."""
        vec = self.flatten(cocycle) if isinstance(cocycle, dict) else np.asarray(cocycle, dtype=np.int64)
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return la.matmul(self._coord, vec.reshape(-1, 1), self.m.p)[self.image_rank:, 0]

    def cocycle(self, coords: Sequence[int]) -> dict:
        vec = la.matmul(self._basis, np.asarray(coords, dtype=np.int64).reshape(-1, 1), self.m.p)[:, 0]
        return self.unflatten(vec)


def ext_space(m: Representation, n: Representation) -> ExtSpace:
    return ExtSpace(m, n)


def ext_dim(m: Representation, n: Representation) -> int:
    return hom_ext_dims(m, n)[1]


def ext_pushforward(src: ExtSpace, dst: ExtSpace, g: Morphism) -> np.ndarray:
    """Matrix of Ext(M, g): Ext(M, N) -> Ext(M, N') for ``g: N -> N'``."""
    p = src.m.p
    cols = []
    for c in src.cocycle_basis:
        pushed = {a.name: la.matmul(g.comps[a.tgt], c[a.name], p) for a in src.m.quiver.arrows}
        cols.append(dst.coords(pushed))
    return np.stack(cols, axis=1) if cols else la.zeros(dst.dim, 0)


def ext_pullback(src: ExtSpace, dst: ExtSpace, h: Morphism) -> np.ndarray:
    """Matrix of Ext(h, N): Ext(M, N) -> Ext(M', N) for ``h: M' -> M``."""
    p = src.m.p
    cols = []
    for c in src.cocycle_basis:
        pulled = {a.name: la.matmul(c[a.name], h.comps[a.src], p) for a in src.m.quiver.arrows}
        cols.append(dst.coords(pulled))
    return np.stack(cols, axis=1) if cols else la.zeros(dst.dim, 0)


def extension_middle(b: Representation, a: Representation, cocycle) -> Representation:
    """Middle term E of ``0 -> A -> E -> B -> 0`` for a cocycle in Ext^1(B, A)."""
    if a.quiver != b.quiver:
        raise InvalidInput("representations of different quivers")
    q = a.quiver
    if not isinstance(cocycle, dict):
        cocycle = ExtSpace(b, a).unflatten(np.asarray(cocycle, dtype=np.int64))
    dim = [a.dim[v] + b.dim[v] for v in range(q.n)]
    maps = {}
    for arr in q.arrows:
        i, j = arr.src, arr.tgt
        eta = np.asarray(cocycle.get(arr.name, la.zeros(a.dim[j], b.dim[i])), dtype=np.int64)
        if eta.size == 0:
            eta = eta.reshape(a.dim[j], b.dim[i])
        if eta.shape != (a.dim[j], b.dim[i]):
            raise DimensionMismatch(f"cocycle block {arr.name} has shape {eta.shape}")
        m = la.zeros(dim[j], dim[i])
        m[:a.dim[j], :a.dim[i]] = a.maps[arr.name]
        m[:a.dim[j], a.dim[i]:] = eta
        m[a.dim[j]:, a.dim[i]:] = b.maps[arr.name]
        maps[arr.name] = m % q.p
    return Representation(q, dim, maps)


# ---------------------------------------------------------------------------
# Subrepresentations, quotients, kernels and cokernels


@dataclass
class Sub:
    """A subrepresentation given by per-vertex column bases inside ``ambient``."""

    rep: Representation
    inclusion: Morphism
    bases: tuple


@dataclass
class Quot:
    """A quotient ``ambient -> rep`` with a linear (not module) section."""

    rep: Representation
    projection: Morphism
    section: tuple


def _cols(b, rows: int) -> np.ndarray:
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 2 and b.shape[0] == rows:
        return b
    if b.size == 0:
        return la.zeros(rows, 0)
    return b.reshape(rows, -1)


def is_invariant(m: Representation, bases: Sequence[np.ndarray]) -> bool:
    p = m.p
    for a in m.quiver.arrows:
        img = la.matmul(m.maps[a.name], bases[a.src], p)
        if img.shape[1] and la.solve(bases[a.tgt], img, p) is None:
            return False
    return True


def subrep(m: Representation, bases: Sequence[np.ndarray]) -> Sub:
    """Subrepresentation spanned by arrow-invariant subspaces (independent columns)."""
    p = m.p
    bases = tuple(_cols(b, m.dim[v]) % p for v, b in enumerate(bases))
    maps = {}
    for a in m.quiver.arrows:
        img = la.matmul(m.maps[a.name], bases[a.src], p)
        x = la.solve(bases[a.tgt], img, p)
        if x is None:
            raise InvalidInput("subspaces are not invariant under the arrows")
        maps[a.name] = x
    s = Representation(m.quiver, [b.shape[1] for b in bases], maps, check=False)
    return Sub(s, Morphism(s, m, bases, check=False), bases)


def quotient(m: Representation, bases: Sequence[np.ndarray]) -> Quot:
    """Quotient by arrow-invariant subspaces."""
    p = m.p
    projs, sections = [], []
    for v, b in enumerate(bases):
        b = _cols(b, m.dim[v])
        c = la.complement_basis(b, m.dim[v], p)
        full = np.hstack([b, c])
        inv = la.inverse(full, p)
        if inv is None:
            raise InvalidInput("subspace basis is not linearly independent")
        projs.append(inv[b.shape[1]:, :])
        sections.append(c)
    maps = {
        a.name: la.matmul(projs[a.tgt], la.matmul(m.maps[a.name], sections[a.src], p), p)
        for a in m.quiver.arrows
    }
    qrep = Representation(m.quiver, [s.shape[1] for s in sections], maps, check=False)
    return Quot(qrep, Morphism(m, qrep, projs, check=False), tuple(sections))


@dataclass
class MorphismParts:
    kernel: Sub
    image: Sub
    coimage: Morphism  # source -> image, surjective
    cokernel: Quot


def morphism_parts(f: Morphism) -> MorphismParts:
    p = f.source.p
    kb = [la.kernel(c, p) if c.shape[0] else la.identity(c.shape[1]) for c in f.comps]
    ker = subrep(f.source, kb)
    ib = [la.column_basis(c, p) for c in f.comps]
    im = subrep(f.target, ib)
    coim_comps = []
    for v, c in enumerate(f.comps):
        x = la.solve(ib[v], c, p) if c.size else la.zeros(ib[v].shape[1], c.shape[1])
        coim_comps.append(x)
    coim = Morphism(f.source, im.rep, coim_comps, check=False)
    cok = quotient(f.target, ib)
    return MorphismParts(ker, im, coim, cok)


def subspace_key(bases: Sequence[np.ndarray], p: int) -> tuple:
    out = []
    for b in bases:
        c = la.canonical_subspace(b, p)
        out.append((c.shape, c.tobytes()))
    return tuple(out)


def generated_submodule(m: Representation, gens: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Per-vertex bases of the submodule generated by columns ``gens[v]``."""
    p = m.p
    spaces = [la.canonical_subspace(_cols(g, m.dim[v]), p)
              for v, g in enumerate(gens)]
    changed = True
    while changed:
        changed = False
        for a in m.quiver.arrows:
            img = la.matmul(m.maps[a.name], spaces[a.src], p)
            if img.shape[1] == 0:
                continue
            new = la.canonical_subspace(np.hstack([spaces[a.tgt], img]), p)
            if new.shape[1] > spaces[a.tgt].shape[1]:
                spaces[a.tgt] = new
                changed = True
    return spaces


def submodule_lattice(m: Representation, budget: int) -> list[Sub]:
    """Every subrepresentation of ``m``; refuses when ``p**dim`` exceeds ``budget``."""
    p = m.p
    need = p ** m.total_dim
    if need > budget:
        raise BudgetExceeded("submodule enumeration", need, budget)
    n = m.quiver.n
    seen: dict[tuple, list[np.ndarray]] = {}
    zero = [la.zeros(d, 0) for d in m.dim]
    seen[subspace_key(zero, p)] = zero
    cyclic = []
    for v in range(n):
        for coeffs in _coefficient_vectors(m.dim[v], p, projective=True):
            gens = [la.zeros(d, 0) for d in m.dim]
            gens[v] = np.array(coeffs, dtype=np.int64).reshape(-1, 1)
            sub = generated_submodule(m, gens)
            k = subspace_key(sub, p)
            if k not in seen:
                seen[k] = sub
                cyclic.append(sub)
    frontier = list(seen.values())
    while frontier:
        new = []
        for s in frontier:
            for c in cyclic:
                tot = [la.canonical_subspace(np.hstack([s[v], c[v]]), p) for v in range(n)]
                k = subspace_key(tot, p)
                if k not in seen:
                    seen[k] = tot
                    new.append(tot)
        frontier = new
    subs = [subrep(m, b) for b in seen.values()]
    subs.sort(key=lambda s: (s.rep.total_dim, s.rep.dim, subspace_key(s.bases, p)))
    return subs


# ---------------------------------------------------------------------------
# Endomorphisms, decomposition and isomorphism


def _power(c: np.ndarray, e: int, p: int) -> np.ndarray:
    result = la.identity(c.shape[0])
    base = c
    while e:
        if e & 1:
            result = la.matmul(result, base, p)
        base = la.matmul(base, base, p)
        e >>= 1
    return result


def _classify_endo(m: Representation, comps: Sequence[np.ndarray]) -> str:
    """'nilpotent', 'unit' or 'split' for an endomorphism of ``m``."""
    p = m.p
    big = max(m.dim) if m.dim else 0
    powers = [_power(c, big, p) for c in comps]
    if all(la.is_zero(x) for x in powers):
        return "nilpotent"
    if all(la.is_invertible(c, p) for c in comps):
        return "unit"
    return "split"


def _candidates(basis: np.ndarray, p: int, exhaustive: bool):
    h = basis.shape[0]
    for row in basis:
        yield row
    rng = np.random.default_rng(_SEED)
    for _ in range(RANDOM_TRIALS):
        c = rng.integers(0, p, size=(1, h))
        yield la.matmul(c, basis, p)[0]
    if exhaustive:
        for coeffs in _coefficient_vectors(h, p, projective=True):
            yield la.matmul(np.array(coeffs, dtype=np.int64).reshape(1, -1), basis, p)[0]


def _local_certificate(m: Representation, basis: np.ndarray) -> bool:
    """True when End(M) = F_p.1 + N with N a nilpotent ideal, proving M indecomposable.

    Each basis element x is shifted by the scalar c with x - c nilpotent;
    the shifted elements span N, and N^k = 0 is checked by iterated
    products.  False means "no certificate", not "decomposable".
    """
    p = m.p
    big = max(m.dim)
    verts = [v for v in range(m.quiver.n) if m.dim[v]]
    shifted = []
    for row in basis:
        comps = _unflatten_hom(m, m, row % p)
        for c in range(p):
            cand = [(x - c * la.identity(x.shape[0])) % p for x in comps]
            if all(la.is_zero(_power(cand[v], big, p)) for v in verts):
                shifted.append(cand)
                break
        else:
            return False

    def flat(comps):
        return np.concatenate([x.reshape(-1) for x in comps])

    def span(elems):
        if not elems:
            return []
        mat = np.array([flat(e) for e in elems], dtype=np.int64)
        rr, piv = la.rref(mat, p)
        return [_unflatten_hom(m, m, rr[k]) for k in range(len(piv))]

    n_basis = span(shifted)
    if len(n_basis) != basis.shape[0] - 1:
        return False
    prods = [[la.matmul(a[v], b[v], p) for v in range(m.quiver.n)] for a in n_basis for b in n_basis]
    if len(span(n_basis + prods)) != len(n_basis):
        return False  # N is not closed under products
    power = n_basis
    for _ in range(m.total_dim + 1):
        if not power:
            return True
        nxt = span([[la.matmul(a[v], b[v], p) for v in range(m.quiver.n)] for a in power for b in n_basis])
        if len(nxt) >= len(power):
            return False
        power = nxt
    return not power


def splitting_endomorphism(m: Representation) -> Morphism | None:
    """An endomorphism that is neither nilpotent nor invertible, if one is found.

    Seeded random search, backed by exhaustive search when ``p**dim End``
    is at most EXHAUSTIVE_LIMIT.  ``None`` means ``m`` is taken to be
    indecomposable.
    """
    if m.total_dim == 0:
        return None
    basis = hom_space(m, m)
    h = basis.shape[0]
    if h <= 1 or _local_certificate(m, basis):
        return None
    p = m.p
    for vec in _candidates(basis, p, exhaustive=p ** h <= EXHAUSTIVE_LIMIT):
        f = morphism_from_flat(m, m, vec)
        if _classify_endo(m, f.comps) == "split":
            return f
    return None


def is_indecomposable(m: Representation) -> bool:
    return m.total_dim > 0 and splitting_endomorphism(m) is None


def _rep_sort_key(r: Representation):
    return (r.total_dim, r.dim, r.key())


def decompose(m: Representation) -> list[Representation]:
    """Krull-Schmidt decomposition via Fitting's lemma."""
    if m.total_dim == 0:
        return []
    f = splitting_endomorphism(m)
    if f is None:
        return [m]
    p = m.p
    big = max(m.dim)
    powers = [_power(c, big, p) for c in f.comps]
    ker = subrep(m, [la.kernel(x, p) if x.shape[0] else la.identity(x.shape[1]) for x in powers]).rep
    img = subrep(m, [la.column_basis(x, p) for x in powers]).rep
    out = decompose(ker) + decompose(img)
    out.sort(key=_rep_sort_key)
    return out


def find_isomorphism(m: Representation, n: Representation) -> Morphism | None:
    if m.quiver != n.quiver or m.dim != n.dim:
        return None
    if m.total_dim == 0:
        return zero_morphism(m, n)
    basis = hom_space(m, n)
    h = basis.shape[0]
    if h == 0:
        return None
    if hom_dim(n, m) != h or hom_dim(m, m) != h:
        return None
    p = m.p
    for vec in _candidates(basis, p, exhaustive=p ** h <= EXHAUSTIVE_LIMIT):
        f = morphism_from_flat(m, n, vec)
        if all(la.is_invertible(c, p) for c in f.comps):
            return f
    return None


def is_isomorphic(m: Representation, n: Representation) -> bool:
    return find_isomorphism(m, n) is not None


# ---------------------------------------------------------------------------
# Projectives, injectives and the Auslander-Reiten translate


def projective(q: Quiver, i: int) -> Representation:
    """P(i): basis of P(i)_v is the set of paths i -> v."""
    paths = q.paths
    dim = [len(paths[(i, v)]) for v in range(q.n)]
    maps = {}
    for a in q.arrows:
        src = paths[(i, a.src)]
        tgt = {w: k for k, w in enumerate(paths[(i, a.tgt)])}
        m = la.zeros(dim[a.tgt], dim[a.src])
        for k, w in enumerate(src):
            m[tgt[w + (a.name,)], k] = 1
        maps[a.name] = m
    return Representation(q, dim, maps)


def injective(q: Quiver, v: int) -> Representation:
    """I(v): I(v)_u is the dual of the space of paths u -> v."""
    paths = q.paths
    dim = [len(paths[(u, v)]) for u in range(q.n)]
    maps = {}
    for b in q.arrows:
        # q |-> b.q from paths(tgt b -> v) to paths(src b -> v), then dualize
        big = {w: k for k, w in enumerate(paths[(b.src, v)])}
        m = la.zeros(dim[b.src], dim[b.tgt])
        for k, w in enumerate(paths[(b.tgt, v)]):
            m[big[(b.name,) + w], k] = 1
        maps[b.name] = m.T.copy()
    return Representation(q, dim, maps)


def _rho(q: Quiver, a: Arrow) -> Morphism:
    """P(tgt a) -> P(src a), path w |-> a followed by w."""
    pv, pw = projective(q, a.src), projective(q, a.tgt)
    paths = q.paths
    comps = []
    for u in range(q.n):
        dst = {w: k for k, w in enumerate(paths[(a.src, u)])}
        m = la.zeros(pv.dim[u], pw.dim[u])
        for k, w in enumerate(paths[(a.tgt, u)]):
            m[dst[(a.name,) + w], k] = 1
        comps.append(m)
    return Morphism(pw, pv, comps)


def _sigma(q: Quiver, a: Arrow) -> Morphism:
    """I(tgt a) -> I(src a), dual of path w |-> w followed by a."""
    iv, iw = injective(q, a.src), injective(q, a.tgt)
    paths = q.paths
    comps = []
    for u in range(q.n):
        dst = {w: k for k, w in enumerate(paths[(u, a.tgt)])}
        r = la.zeros(iw.dim[u], iv.dim[u])
        for k, w in enumerate(paths[(u, a.src)]):
            r[dst[w + (a.name,)], k] = 1
        comps.append(r.T.copy())
    return Morphism(iw, iv, comps)


def is_projective_indec(m: Representation) -> bool:
    q = m.quiver
    return all(ext_dim(m, simple_rep(q, v)) == 0 for v in range(q.n))


def is_injective_indec(m: Representation) -> bool:
    q = m.quiver
    return all(ext_dim(simple_rep(q, v), m) == 0 for v in range(q.n))


def tau_translate(m: Representation, direction: str = "forward") -> Representation | None:
    """Auslander-Reiten translate of ``m`` (``direction`` is 'forward' or 'inverse').

    forward: (tau M)_v = D Ext^1(M, P(v)), i.e. the dual of the transpose
    Ext^1(M, Lambda); arrows act through the maps P(w) -> P(v) given by
    right multiplication with the arrow.  inverse: (tau^- N)_v =
    Ext^1(I(v), N), the Nakayama-dual construction.  Returns ``None`` if
    ``m`` has a projective (resp. injective) summand.
    """
    q = m.quiver
    q.require_acyclic("tau_translate")
    if direction not in ("forward", "inverse"):
        raise InvalidInput(f"unknown direction {direction!r}")
    test = is_projective_indec if direction == "forward" else is_injective_indec
    if m.total_dim == 0:
        return m
    if any(test(s) for s in decompose(m)):
        return None
    if direction == "forward":
        spaces = [ExtSpace(m, projective(q, v)) for v in range(q.n)]
        maps = {}
        for a in q.arrows:
            t = ext_pushforward(spaces[a.tgt], spaces[a.src], _rho(q, a))
            maps[a.name] = t.T.copy()
    else:
        spaces = [ExtSpace(injective(q, v), m) for v in range(q.n)]
        maps = {a.name: ext_pullback(spaces[a.src], spaces[a.tgt], _sigma(q, a)) for a in q.arrows}
    return Representation(q, [s.dim for s in spaces], maps)
