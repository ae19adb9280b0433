"""Finite lists of indecomposables with precomputed Hom/Ext tables.

Three families are supported:

* ``dynkin``: every indecomposable, obtained by applying the inverse
  AR-translate to the indecomposable projectives until an injective is
  reached (knitting);
* ``kronecker``: Pre(n), Inj(n) for n <= bound and the regular modules
  Reg(x, l), l <= bound, for every rational point x of the projective line;
* ``tube``: the uniserial nilpotent representations S_i[k], k <= bound, of
  a cyclic quiver with r vertices.
"""
from __future__ import annotations

import contextlib
import fcntl
import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg as la
from .errors import InvalidInput
from .quiverrep import (
    Quiver,
    Representation,
    decompose,
    euler_form,
    hom_ext_dims,
    is_isomorphic,
    projective,
    tau_translate,
)

FAMILIES = ("dynkin", "kronecker", "tube")
INF = "inf"


@dataclass
class Universe:
    quiver: Quiver
    family: str
    params: dict
    objects: list[Representation]
    labels: list[str]
    hom_table: np.ndarray | None = None
    ext_table: np.ndarray | None = None
    _by_label: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.objects) != len(self.labels):
            raise InvalidInput("objects and labels differ in length")
        self._by_label = {lab: k for k, lab in enumerate(self.labels)}
        if len(self._by_label) != len(self.labels):
            raise InvalidInput("duplicate labels in universe")

    def __len__(self):
        return len(self.objects)

    @property
    def p(self) -> int:
        return self.quiver.p

    def index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise InvalidInput(f"unknown label {label!r}") from None

    def hom(self, i: int, j: int) -> int:
        return int(self.tables()[0][i, j])

    def ext(self, i: int, j: int) -> int:
        return int(self.tables()[1][i, j])

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self.hom_table is None:
            build_tables(self)
        return self.hom_table, self.ext_table

    def bricks(self) -> list[int]:
        h = self.tables()[0]
        return [k for k in range(len(self)) if h[k, k] == 1]

    def identify(self, rep: Representation) -> int | None:
        """Index of the universe object isomorphic to an indecomposable ``rep``."""
        if rep.quiver != self.quiver:
            raise InvalidInput("representation over a different quiver")
        cands = [k for k, o in enumerate(self.objects) if o.dim == rep.dim]
        if self.family == "dynkin":
            return cands[0] if cands else None
        for k in cands:
            if is_isomorphic(self.objects[k], rep):
                return k
        return None

    def key(self) -> str:
        return cache_key(self.quiver, self.family, self.params)

    def to_json(self) -> dict:
        h, e = self.tables()
        return {
            "quiver": self.quiver.to_json(),
            "family": self.family,
            "params": self.params,
            "labels": self.labels,
            "objects": [o.to_json() for o in self.objects],
            "hom": h.tolist(),
            "ext": e.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Universe":
        q = Quiver.from_json(data["quiver"])
        objs = [Representation.from_json(q, o) for o in data["objects"]]
        u = cls(q, data["family"], dict(data["params"]), objs, list(data["labels"]))
        u.hom_table = np.array(data["hom"], dtype=np.int64).reshape(len(objs), len(objs))
        u.ext_table = np.array(data["ext"], dtype=np.int64).reshape(len(objs), len(objs))
        return u


def build_tables(u: Universe) -> Universe:
    n = len(u)
    h = np.zeros((n, n), dtype=np.int64)
    e = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            h[i, j], e[i, j] = hom_ext_dims(u.objects[i], u.objects[j])
    u.hom_table, u.ext_table = h, e
    return u


# ---------------------------------------------------------------------------
# Dynkin


def positive_roots(q: Quiver, max_coeff: int = 6) -> list[tuple[int, ...]]:
    """Nonzero nonnegative vectors with Tits form 1 (entries up to ``max_coeff``)."""
    out = []
    for d in itertools.product(range(max_coeff + 1), repeat=q.n):
        if any(d) and euler_form(q, d, d) == 1:
            out.append(d)
    return out


def is_dynkin(q: Quiver) -> bool:
    """The symmetrized Euler form is positive definite."""
    if not q.acyclic:
        return False
    sym = 2 * np.eye(q.n)
    for a in q.arrows:
        sym[a.src, a.tgt] -= 1
        sym[a.tgt, a.src] -= 1
    return bool(np.all(np.linalg.eigvalsh(sym) > 1e-9))


def _dynkin(q: Quiver, max_steps: int = 64) -> list[Representation]:
    q.require_acyclic("dynkin enumeration")
    if not is_dynkin(q):
        raise InvalidInput("quiver is not of Dynkin type (Euler form not positive definite)")
    seen: dict[tuple, Representation] = {}
    for v in range(q.n):
        m = projective(q, v)
        for _ in range(max_steps):
            if m.dim in seen:
                break
            seen[m.dim] = m
            m = tau_translate(m, "inverse")
            if m is None:
                break
        else:
            raise InvalidInput("quiver is not of Dynkin type (knitting does not terminate)")
    objs = sorted(seen.values(), key=lambda r: (r.total_dim, r.dim))
    if len(objs) != len(positive_roots(q, max_coeff=max(1, max(r.total_dim for r in objs)))):
        raise InvalidInput("quiver is not of Dynkin type (indecomposables do not match roots)")
    return objs


def dynkin_label(dim) -> str:
    return "root[" + ",".join(str(d) for d in dim) + "]"


# ---------------------------------------------------------------------------
# Kronecker


def _check_kronecker(q: Quiver) -> None:
    if q.n != 2 or len(q.arrows) != 2 or any((a.src, a.tgt) != (0, 1) for a in q.arrows):
        raise InvalidInput("kronecker family needs two arrows from vertex 0 to vertex 1")


def jordan(lam: int, n: int, p: int) -> np.ndarray:
    j = (la.identity(n) * lam) % p
    for k in range(n - 1):
        j[k, k + 1] = 1
    return j


def kron_pre(q: Quiver, n: int) -> Representation:
    a = np.vstack([la.identity(n), la.zeros(1, n)])
    b = np.vstack([la.zeros(1, n), la.identity(n)])
    return Representation(q, (n, n + 1), {q.arrows[0].name: a, q.arrows[1].name: b})


def kron_inj(q: Quiver, n: int) -> Representation:
    a = np.hstack([la.identity(n), la.zeros(n, 1)])
    b = np.hstack([la.zeros(n, 1), la.identity(n)])
    return Representation(q, (n + 1, n), {q.arrows[0].name: a, q.arrows[1].name: b})


def kron_reg(q: Quiver, lam, ell: int) -> Representation:
    """Reg(lam, ell) = (I, J_lam); the point at infinity gives (J_0, I)."""
    if ell < 1:
        raise InvalidInput("regular length must be positive")
    a, b = q.arrows[0].name, q.arrows[1].name
    if lam == INF:
        return Representation(q, (ell, ell), {a: jordan(0, ell, q.p), b: la.identity(ell)})
    lam = int(lam)
    if not 0 <= lam < q.p:
        raise InvalidInput(f"eigenvalue {lam} is not an element of F_{q.p}")
    return Representation(q, (ell, ell), {a: la.identity(ell), b: jordan(lam, ell, q.p)})


def points(p: int) -> list:
    """Rational points of the projective line: 0..p-1 and ``'inf'``."""
    return list(range(p)) + [INF]


def _kronecker(q: Quiver, bound: int):
    _check_kronecker(q)
    objs, labels = [], []
    for n in range(bound + 1):
        objs.append(kron_pre(q, n))
        labels.append(f"pre({n})")
    for lam in points(q.p):
        for ell in range(1, bound + 1):
            objs.append(kron_reg(q, lam, ell))
            labels.append(f"reg({lam},{ell})")
    for n in range(bound + 1):
        objs.append(kron_inj(q, n))
        labels.append(f"inj({n})")
    return objs, labels


# ---------------------------------------------------------------------------
# Tubes


def _check_cyclic(q: Quiver) -> int:
    r = q.n
    ok = len(q.arrows) == r and all(a.tgt == (a.src - 1) % r for a in q.arrows)
    if not ok or len({a.src for a in q.arrows}) != r:
        raise InvalidInput("tube family needs the cyclic quiver with arrows v -> v-1")
    return r


def tube_module(q: Quiver, i: int, k: int) -> Representation:
    """S_i[k]: basis e_0..e_{k-1}, e_t at vertex i+t, arrows send e_t to e_{t-1}.

    ``i`` is 1-based.  The socle is S_i and the top sits at vertex i+k-1.
    """
    r = _check_cyclic(q)
    if not (1 <= i <= r and k >= 1):
        raise InvalidInput(f"bad tube coordinate ({i}, {k})")
    where = [(i - 1 + t) % r for t in range(k)]
    dim = [where.count(v) for v in range(r)]
    pos = {}
    count = [0] * r
    for t, v in enumerate(where):
        pos[t] = count[v]
        count[v] += 1
    maps = {a.name: la.zeros(dim[a.tgt], dim[a.src]) for a in q.arrows}
    by_src = {a.src: a for a in q.arrows}
    for t in range(1, k):
        a = by_src[where[t]]
        maps[a.name][pos[t - 1], pos[t]] = 1
    return Representation(q, dim, maps)


def _tube(q: Quiver, bound: int):
    r = _check_cyclic(q)
    objs, labels = [], []
    for k in range(1, bound + 1):
        for i in range(1, r + 1):
            objs.append(tube_module(q, i, k))
            labels.append(f"S{i}[{k}]")
    return objs, labels


# ---------------------------------------------------------------------------


def _norm_params(family: str, params: dict | None) -> dict:
    params = dict(params or {})
    if family == "dynkin":
        return {}
    if family in ("kronecker", "tube"):
        if "bound" not in params:
            raise InvalidInput(f"{family} family needs a 'bound' parameter")
        b = int(params["bound"])
        if b < 1:
            raise InvalidInput("bound must be positive")
        return {"bound": b}
    raise InvalidInput(f"unknown family {family!r}")


def enumerate_universe(q: Quiver, family: str, params: dict | None = None, tables: bool = True) -> Universe:
    params = _norm_params(family, params)
    if family == "dynkin":
        objs = _dynkin(q)
        labels = [dynkin_label(o.dim) for o in objs]
    elif family == "kronecker":
        objs, labels = _kronecker(q, params["bound"])
    else:
        objs, labels = _tube(q, params["bound"])
    u = Universe(q, family, params, objs, labels)
    if tables:
        build_tables(u)
    return u


def cache_key(q: Quiver, family: str, params: dict) -> str:
    blob = json.dumps({"quiver": q.to_json(), "family": family, "params": params, "prime": q.p},
                      sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


@contextlib.contextmanager
def _locked(path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(str(path) + ".lock", "a+") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def load_universe(q: Quiver, family: str, params: dict | None = None, cache: str | os.PathLike | None = None) -> Universe:
    """Enumerate with tables, going through the ``universe.json`` cache when given."""
    params = _norm_params(family, params)
    if cache is None:
        return enumerate_universe(q, family, params)
    path = Path(cache)
    key = cache_key(q, family, params)
    with _locked(path):
        store = {}
        if path.exists() and path.stat().st_size:
            try:
                store = json.loads(path.read_text())
            except json.JSONDecodeError:
                store = {}
        if key in store:
            return Universe.from_json(store[key])
        u = enumerate_universe(q, family, params)
        store[key] = u.to_json()
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(store, sort_keys=True))
        os.replace(tmp, path)
        return u


def check_universe(u: Universe) -> list[str]:
    """Structural self-checks; returns a list of problems (empty when sound)."""
    problems = []
    for k, o in enumerate(u.objects):
        if len(decompose(o)) != 1:
            problems.append(f"{u.labels[k]} is decomposable")
    for i, j in itertools.combinations(range(len(u)), 2):
        if u.objects[i].dim == u.objects[j].dim and is_isomorphic(u.objects[i], u.objects[j]):
            problems.append(f"{u.labels[i]} is isomorphic to {u.labels[j]}")
    return problems
