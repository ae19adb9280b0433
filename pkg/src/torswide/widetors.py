"""Wide subcategories, brick labels and the maps alpha~, beta~ between torsion data.

alpha~(t) is computed as the filtration closure of the brick labels of the
covers directly below t; these labels are the torsion, almost torsionfree
modules, i.e. the simple objects of alpha~(t).  beta~ is dual, using the
covers directly above.  When no lattice is supplied the covers are
computed locally from t alone.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvalidInput, InvariantViolation
from .quiverrep import (
    ExtSpace,
    Representation,
    decompose,
    direct_sum,
    extension_middle,
    hom_space,
    iter_morphisms,
    morphism_parts,
    submodule_lattice,
    _coefficient_vectors,
)
from .torsops import (
    DEFAULT_HOM_BUDGET,
    SubcatSet,
    TorsionPair,
    filt_closure,
    in_torsion_closure,
    label_candidates,
    lower_covers,
    pair_from_class,
    perp,
    reject_radical,
    torsion_closure,
    torsionfree_closure,
    trace_radical,
    upper_covers,
    _require_finite,
    _summands_in,
)
from .universe import Universe


@dataclass
class HasseQuiver:
    nodes: list[SubcatSet]
    edges: list[tuple[int, int]]
    labels: dict[tuple[int, int], int] = field(default_factory=dict)

    def node_index(self, t: SubcatSet) -> int:
        try:
            return self._index[t]
        except AttributeError:
            self._index = {n: k for k, n in enumerate(self.nodes)}
            return self.node_index(t)
        except KeyError:
            raise InvalidInput(f"{t!r} is not a node of the lattice") from None

    def below(self, t: SubcatSet) -> list[int]:
        k = self.node_index(t)
        return [self.labels[e] for e in self.edges if e[1] == k]

    def above(self, t: SubcatSet) -> list[int]:
        k = self.node_index(t)
        return [self.labels[e] for e in self.edges if e[0] == k]

    def to_json(self) -> dict:
        u = self.nodes[0].universe if self.nodes else None
        return {
            "nodes": [{"id": k, "size": len(n), "members": n.labels()} for k, n in enumerate(self.nodes)],
            "edges": [{"lo": lo, "hi": hi, "label": u.labels[self.labels[(lo, hi)]]} for lo, hi in self.edges],
        }

    def to_dot(self) -> str:
        u = self.nodes[0].universe if self.nodes else None
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for k, n in enumerate(self.nodes):
            lines.append(f'  n{k} [label="#{k} ({len(n)})"];')
        for lo, hi in self.edges:
            lines.append(f'  n{lo} -> n{hi} [label="{u.labels[self.labels[(lo, hi)]]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def brick_label(lower: SubcatSet, upper: SubcatSet) -> int:
    """The unique brick in ``upper`` receiving no maps from ``lower``."""
    cands = label_candidates(lower, upper)
    if len(cands) != 1:
        u = upper.universe
        raise InvariantViolation(
            f"cover has {len(cands)} label candidates",
            counterexample={"lower": lower.labels(), "upper": upper.labels(),
                            "candidates": [u.labels[b] for b in cands]},
        )
    return cands[0]


def hasse(classes: list[SubcatSet]) -> HasseQuiver:
    nodes = sorted(classes, key=SubcatSet.sort_key)
    masks = [n.mask() for n in nodes]
    edges = []
    for hi, mh in enumerate(masks):
        below = [lo for lo, ml in enumerate(masks) if ml != mh and ml & mh == ml]
        for lo in below:
            ml = masks[lo]
            if not any(masks[m] != ml and masks[m] & ml == ml and masks[m] & mh == masks[m] and masks[m] != mh
                       for m in below):
                edges.append((lo, hi))
    edges.sort()
    labels = {(lo, hi): brick_label(nodes[lo], nodes[hi]) for lo, hi in edges}
    return HasseQuiver(nodes, edges, labels)


def _as_t(pair) -> SubcatSet:
    return pair.t if isinstance(pair, TorsionPair) else pair


def almost_simple_modules(pair, side: str = "torsion", lattice: HasseQuiver | None = None) -> SubcatSet:
    """Labels of the covers directly below (torsion) or above (torsionfree) t."""
    t = _as_t(pair)
    u = t.universe
    if side not in ("torsion", "torsionfree"):
        raise InvalidInput(f"side must be 'torsion' or 'torsionfree', got {side!r}")
    if lattice is not None:
        labs = lattice.below(t) if side == "torsion" else lattice.above(t)
    elif side == "torsion":
        labs = [b for _, b in lower_covers(t)]
    else:
        labs = [b for _, b in upper_covers(t)]
    return SubcatSet(u, labs)


def alpha_tilde(pair, lattice: HasseQuiver | None = None, budget: int = DEFAULT_HOM_BUDGET) -> SubcatSet:
    return filt_closure(almost_simple_modules(pair, "torsion", lattice), budget)


def beta_tilde(pair, lattice: HasseQuiver | None = None, budget: int = DEFAULT_HOM_BUDGET) -> SubcatSet:
    return filt_closure(almost_simple_modules(pair, "torsionfree", lattice), budget)


def cap_operator(pair: TorsionPair, side: str = "A", lattice: HasseQuiver | None = None,
                 budget: int = DEFAULT_HOM_BUDGET) -> SubcatSet:
    """Indecomposables whose torsion part lies in alpha~ (side A), or torsionfree part in beta~ (side B)."""
    u = pair.t.universe
    out = []
    if side == "A":
        target = alpha_tilde(pair, lattice, budget)
        for k, x in enumerate(u.objects):
            part = trace_radical(pair.t, x).rep
            if _summands_in(u, part, target):
                out.append(k)
    elif side == "B":
        target = beta_tilde(pair, lattice, budget)
        for k, x in enumerate(u.objects):
            part = reject_radical(pair.f, x).rep
            if _summands_in(u, part, target):
                out.append(k)
    else:
        raise InvalidInput(f"side must be 'A' or 'B', got {side!r}")
    return SubcatSet(u, out)


# ---------------------------------------------------------------------------
# wideness


def wide_definitional_check(s: SubcatSet, budget: int = DEFAULT_HOM_BUDGET, max_summands: int = 1):
    """Bounded check of closure under kernels, cokernels and extensions.

    Morphisms between direct sums of at most ``max_summands`` members and
    all Ext classes between such sums are examined.  Returns
    ``(True, None)`` or ``(False, counterexample)``.  A pass proves
    nothing beyond the bound.
    """
    u = s.universe
    members = [u.objects[i] for i in s.indices]
    sums = []
    for r in range(1, max_summands + 1):
        for combo in itertools.combinations_with_replacement(range(len(members)), r):
            sums.append((combo, direct_sum(*[members[i] for i in combo])))

    def name(combo):
        return "+".join(u.labels[s.indices[i]] for i in combo)

    for (ca, a), (cb, b) in itertools.product(sums, repeat=2):
        for f in iter_morphisms(a, b, budget, projective=True):
            parts = morphism_parts(f)
            for what, rep in (("kernel", parts.kernel.rep), ("cokernel", parts.cokernel.rep)):
                if rep.total_dim and not _summands_in(u, rep, s):
                    return False, {"kind": what, "source": name(ca), "target": name(cb)}
        ext = ExtSpace(a, b)
        if ext.dim and s.universe.p ** ext.dim > budget:
            raise BudgetExceeded("Ext class enumeration", u.p ** ext.dim, budget)
        for coeffs in _coefficient_vectors(ext.dim, u.p, projective=True):
            mid = extension_middle(a, b, ext.cocycle(coeffs))
            if not _summands_in(u, mid, s):
                return False, {"kind": "extension", "quotient": name(ca), "sub": name(cb)}
    return True, None


def is_wide(s: SubcatSet, budget: int = DEFAULT_HOM_BUDGET, secondary: bool = True) -> bool:
    """Wide iff alpha~(T(S)) == S; the bounded definitional check acts as a witness."""
    t = torsion_closure(s)
    primary = alpha_tilde(t, None, budget) == s
    if secondary:
        try:
            ok, cex = wide_definitional_check(s, budget)
        except BudgetExceeded:
            return primary
        if primary and not ok:
            raise InvariantViolation("round-trip says wide but a closure property fails",
                                     counterexample={"set": s.labels(), "failure": cex})
    return primary


def semibrick_of(w: SubcatSet, budget: int = DEFAULT_HOM_BUDGET) -> SubcatSet:
    """Members of ``w`` with no proper nonzero subobject in ``w``."""
    u = w.universe
    out = []
    for k in w.indices:
        x = u.objects[k]
        simple = True
        for j in w.indices:
            b = u.objects[j]
            if b.total_dim >= x.total_dim or any(bd > xd for bd, xd in zip(b.dim, x.dim)):
                continue
            basis = hom_space(b, x)
            if basis.shape[0] and any(f.is_injective() for f in iter_morphisms(b, x, budget, basis=basis)):
                simple = False
                break
        if simple:
            out.append(k)
    return SubcatSet(u, out)


def semibricks(u: Universe, bricks: list[int] | None = None) -> list[SubcatSet]:
    """All sets of pairwise Hom-orthogonal bricks (including the empty set)."""
    h = u.tables()[0]
    bricks = u.bricks() if bricks is None else list(bricks)
    out = []

    def grow(chosen, start):
        out.append(SubcatSet(u, chosen))
        for k in range(start, len(bricks)):
            b = bricks[k]
            if all(h[b, c] == 0 and h[c, b] == 0 for c in chosen):
                grow(chosen + [b], k + 1)

    grow([], 0)
    return out


def enumerate_wide(u: Universe, budget: int = DEFAULT_HOM_BUDGET) -> list[SubcatSet]:
    _require_finite(u, "enumerate_wide")
    found = {filt_closure(sb, budget) for sb in semibricks(u)}
    return sorted(found, key=SubcatSet.sort_key)


def widely_generated(t: SubcatSet, wides: list[SubcatSet]) -> SubcatSet | None:
    for w in sorted(wides, key=SubcatSet.sort_key):
        if torsion_closure(w) == t:
            return w
    return None


def locally_extremal(t: SubcatSet, lattice: HasseQuiver, side: str = "minimal") -> bool:
    if side == "minimal":
        return not lattice.below(t)
    if side == "maximal":
        return not lattice.above(t)
    raise InvalidInput(f"side must be 'minimal' or 'maximal', got {side!r}")


def is_mutation(pair_t: TorsionPair, pair_u: TorsionPair, budget: int = DEFAULT_HOM_BUDGET) -> bool:
    """u is contained in t and t meet v is wide, for (t, f) and (u, v)."""
    if not pair_u.t <= pair_t.t:
        return False
    return is_wide(pair_t.t & pair_u.f, budget)


# ---------------------------------------------------------------------------
# definitional check of torsion, almost torsionfree modules


def check_almost_simple_def(b: int, pair: TorsionPair, budget: int = DEFAULT_HOM_BUDGET,
                            dim_cap: int | None = None) -> bool:
    """Direct test of the definition of a torsion, almost torsionfree module.

    (1) every proper submodule of B lies in f, via the submodule lattice;
    (2) for 0 -> K -> T -> B -> 0 with T in t, K lies in t: checked for
    every Ext class against K ranging over sums of at most two
    indecomposables outside t, of total dimension at most ``dim_cap``.
    """
    u = pair.t.universe
    if b not in pair.t:
        return False
    x = u.objects[b]
    h = u.tables()[0]
    t_members = [u.objects[i] for i in pair.t.indices]
    for sub in submodule_lattice(x, budget):
        if sub.rep.total_dim in (0, x.total_dim):
            continue
        if any(hom_space(m, sub.rep).shape[0] for m in t_members):
            return False
    outside = [k for k in range(len(u)) if k not in pair.t]
    cap = dim_cap if dim_cap is not None else 2 * max(o.total_dim for o in u.objects)
    ks = [(k,) for k in outside]
    ks += [c for c in itertools.combinations_with_replacement(range(len(u)), 2)
           if (c[0] not in pair.t or c[1] not in pair.t)
           and sum(u.objects[i].total_dim for i in c) <= cap]
    for combo in ks:
        k_rep = direct_sum(*[u.objects[i] for i in combo])
        ext = ExtSpace(x, k_rep)
        if not ext.dim:
            continue
        if u.p ** ext.dim > budget:
            raise BudgetExceeded("Ext class enumeration", u.p ** ext.dim, budget)
        for coeffs in _coefficient_vectors(ext.dim, u.p, projective=True):
            mid = extension_middle(x, k_rep, ext.cocycle(coeffs))
            if in_torsion_closure(pair.t, mid):
                return False
    return True


# ---------------------------------------------------------------------------
# reports


def tau_report(u: Universe, budget: int = DEFAULT_HOM_BUDGET) -> dict:
    """Counts and checks for a representation-finite universe; raises on any violation."""
    _require_finite(u, "tau_report")
    from .torsops import cover_walk

    classes = cover_walk(u)
    wides = enumerate_wide(u, budget)
    lattice = hasse(classes)
    alphas = {}
    for t in classes:
        a = alpha_tilde(t, lattice, budget)
        alphas[t] = a
        f = perp(t, (0,), "right")
        bt = beta_tilde(TorsionPair(t, f), lattice, budget)
        if locally_extremal(t, lattice, "minimal") != (len(a) == 0):
            raise InvariantViolation("local minimality does not match alpha~ = 0",
                                     counterexample={"t": t.labels(), "alpha": a.labels()})
        if locally_extremal(t, lattice, "maximal") != (len(bt) == 0):
            raise InvariantViolation("local maximality does not match beta~ = 0",
                                     counterexample={"t": t.labels(), "beta": bt.labels()})
    images = set(alphas.values())
    if len(images) != len(classes) or images != set(wides):
        raise InvariantViolation("alpha~ is not a bijection onto the wide subcategories",
                                 counterexample={"tors": len(classes), "wide": len(wides),
                                                 "image": len(images)})
    return {
        "universe": u.quiver.name or u.family,
        "prime": u.p,
        "indecomposables": len(u),
        "tors": len(classes),
        "wide": len(wides),
        "edges": len(lattice.edges),
        "alpha_bijective": True,
        "extremality_equivalences": True,
        "locally_minimal": sum(1 for t in classes if not lattice.below(t)),
        "locally_maximal": sum(1 for t in classes if not lattice.above(t)),
    }
