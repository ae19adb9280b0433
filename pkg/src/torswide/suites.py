"""Named verification suites.  Each returns a JSON-ready report.

A report lists every checked identity with a short anchor name, the number
of instances checked and failed, and (on failure) a smallest counterexample.
"""
from __future__ import annotations

import itertools
import random

from .errors import InvalidInput
from .kronecker import ringel_suite, verify_theorem_c
from .quiverrep import direct_sum, euler_form, ext_dim, hom_dim, tau_translate
from .torsops import (
    DEFAULT_HOM_BUDGET,
    SubcatSet,
    TorsionPair,
    closure_scan,
    cover_walk,
    perp,
    torsion_closure,
    torsionfree_closure,
)
from .tubes import TubeCoord, classify_wide_in_tube, coord_of, tube_bricks, tube_universe
from .universe import Universe
from .widetors import (
    alpha_tilde,
    beta_tilde,
    check_almost_simple_def,
    enumerate_wide,
    hasse,
    is_mutation,
    semibrick_of,
    tau_report,
)

SUITES = ("euler", "ar-formula", "wide-roundtrip", "almost-simple", "extremal",
          "tau-report", "tube-shape", "kronecker-tables", "ringel")
SEED = 20240229


class _Report:
    def __init__(self, suite: str, scope: dict):
        self.suite = suite
        self.scope = scope
        self.identities: dict[str, dict] = {}
        self.failures: list[tuple] = []

    def check(self, identity: str, anchor: str, ok: bool, size: int = 0, witness=None):
        row = self.identities.setdefault(identity, {"identity": identity, "anchor": anchor,
                                                    "checked": 0, "failed": 0})
        row["checked"] += 1
        if not ok:
            row["failed"] += 1
            self.failures.append((size, identity, witness))

    def done(self, extra: dict | None = None) -> dict:
        cex = None
        if self.failures:
            size, identity, witness = min(self.failures, key=lambda f: (f[0], f[1], repr(f[2])))
            cex = {"identity": identity, "witness": witness}
        out = {"suite": self.suite, **self.scope,
               "status": "fail" if self.failures else "pass",
               "checked": sum(r["checked"] for r in self.identities.values()),
               "identities": list(self.identities.values()), "counterexample": cex}
        if extra:
            out.update(extra)
        return out


def _scope(u: Universe) -> dict:
    return {"universe": u.quiver.name or u.family, "prime": u.p, "family": u.family,
            "params": u.params, "indecomposables": len(u)}


def _random_sum(rng: random.Random, u: Universe, max_summands: int):
    combo = sorted(rng.randrange(len(u)) for _ in range(rng.randint(1, max_summands)))
    return combo, direct_sum(*[u.objects[k] for k in combo])


def euler_suite(u: Universe, pairs: int = 500, max_summands: int = 2, seed: int = SEED) -> dict:
    """hom - ext equals the Euler form on random pairs of (decomposable) modules."""
    rep = _Report("euler", _scope(u))
    rng = random.Random(seed)
    q = u.quiver
    for _ in range(pairs):
        cx, x = _random_sum(rng, u, max_summands)
        cy, y = _random_sum(rng, u, max_summands)
        h, e = hom_dim(x, y), ext_dim(x, y)
        chi = euler_form(q, x.dim, y.dim)
        rep.check("hom(X,Y) - ext(X,Y) = <dim X, dim Y>", "euler-form", h - e == chi,
                  x.total_dim + y.total_dim,
                  {"X": [u.labels[k] for k in cx], "Y": [u.labels[k] for k in cy], "hom": h, "ext": e, "euler": chi})
    h_tab, e_tab = u.tables()
    for i, j in itertools.product(range(len(u)), repeat=2):
        chi = euler_form(q, u.objects[i].dim, u.objects[j].dim)
        rep.check("table hom - table ext = Euler form", "euler-form",
                  int(h_tab[i, j]) - int(e_tab[i, j]) == chi,
                  u.objects[i].total_dim + u.objects[j].total_dim, [u.labels[i], u.labels[j]])
    return rep.done({"pairs": pairs})


def _tau_index(u: Universe, k: int) -> int | None:
    """Index of tau X in ``u``, None if X is projective or tau X lies outside the bound."""
    if u.family == "tube":
        c = coord_of(u, k)
        r = u.quiver.n
        return u.index(TubeCoord((c.i - 2) % r + 1, c.k).label())
    t = tau_translate(u.objects[k], "forward")
    if t is None:
        return None
    return u.identify(t)


def ar_suite(u: Universe, pairs: int = 500, seed: int = SEED) -> dict:
    """ext(X, Y) = hom(Y, tau X) for X indecomposable and not projective."""
    rep = _Report("ar-formula", _scope(u))
    taus = {k: _tau_index(u, k) for k in range(len(u))}
    usable = [k for k, t in taus.items() if t is not None]
    if not usable:
        raise InvalidInput("no non-projective object with its translate inside the universe")
    rng = random.Random(seed)
    for _ in range(pairs):
        x, y = rng.choice(usable), rng.randrange(len(u))
        tx = u.objects[taus[x]]
        e, h = ext_dim(u.objects[x], u.objects[y]), hom_dim(u.objects[y], tx)
        rep.check("ext(X,Y) = hom(Y, tau X)", "ar-duality", e == h,
                  u.objects[x].total_dim + u.objects[y].total_dim,
                  {"X": u.labels[x], "Y": u.labels[y], "tauX": u.labels[taus[x]], "ext": e, "hom": h})
    return rep.done({"pairs": pairs, "translates_in_bound": len(usable)})


def _candidates(u: Universe, limit: int, seed: int) -> list[SubcatSet]:
    n = len(u)
    if 2 ** n <= limit:
        return [SubcatSet(u, [k for k in range(n) if m >> k & 1]) for m in range(2 ** n)]
    rng = random.Random(seed)
    masks = sorted({rng.getrandbits(n) for _ in range(limit)})
    return [SubcatSet(u, [k for k in range(n) if m >> k & 1]) for m in masks]


def wide_roundtrip_suite(u: Universe, budget: int = DEFAULT_HOM_BUDGET, candidates: int = 256,
                         seed: int = SEED) -> dict:
    """alpha~(T(W)) = W and beta~(F(W)) = W exactly when W is wide."""
    rep = _Report("wide-roundtrip", _scope(u))
    wides = enumerate_wide(u, budget)
    lattice = hasse(cover_walk(u))
    for w in wides:
        t = torsion_closure(w)
        f = torsionfree_closure(w)
        rep.check("alpha~(T(W)) = W", "wide-roundtrip", alpha_tilde(t, lattice, budget) == w, len(w), w.labels())
        rep.check("beta~(F(W)) = W", "wide-roundtrip",
                  beta_tilde(TorsionPair(perp(f, (0,), "left"), f), lattice, budget) == w, len(w), w.labels())
    wide_set = set(wides)
    for s in _candidates(u, candidates, seed):
        if s in wide_set:
            continue
        t = torsion_closure(s)
        rep.check("alpha~(T(S)) differs from S for non-wide S", "wide-roundtrip",
                  alpha_tilde(t, lattice, budget) != s, len(s), s.labels())
    return rep.done({"wide": len(wides)})


def almost_simple_suite(u: Universe, budget: int = DEFAULT_HOM_BUDGET) -> dict:
    """Cover labels below t = simple objects of alpha~(t) = definitional almost-simples."""
    rep = _Report("almost-simple", _scope(u))
    classes = cover_walk(u)
    lattice = hasse(classes)
    for t in classes:
        pair = TorsionPair(t, perp(t, (0,), "right"))
        labels = SubcatSet(u, lattice.below(t))
        simples = semibrick_of(alpha_tilde(t, lattice, budget), budget)
        definitional = SubcatSet(u, [b for b in t.indices if check_almost_simple_def(b, pair, budget)])
        rep.check("cover labels = simples of alpha~", "almost-simple", labels == simples, len(t),
                  {"t": t.labels(), "labels": labels.labels(), "simples": simples.labels()})
        rep.check("cover labels = definitional check", "almost-simple", labels == definitional, len(t),
                  {"t": t.labels(), "labels": labels.labels(), "definitional": definitional.labels()})
    return rep.done({"tors": len(classes)})


def extremal_suite(u: Universe, budget: int = DEFAULT_HOM_BUDGET) -> dict:
    """Local extremality matches vanishing of alpha~ / beta~; every cover is a mutation."""
    rep = _Report("extremal", _scope(u))
    classes = cover_walk(u)
    lattice = hasse(classes)
    pairs = {t: TorsionPair(t, perp(t, (0,), "right")) for t in classes}
    for t in classes:
        a = alpha_tilde(t, lattice, budget)
        b = beta_tilde(pairs[t], lattice, budget)
        rep.check("locally minimal iff alpha~ = 0", "local-extremality",
                  (not lattice.below(t)) == (len(a) == 0), len(t), t.labels())
        rep.check("locally maximal iff beta~ = 0", "local-extremality",
                  (not lattice.above(t)) == (len(b) == 0), len(t), t.labels())
    for lo, hi in lattice.edges:
        tl, th = lattice.nodes[lo], lattice.nodes[hi]
        rep.check("every cover is a mutation", "mutation", is_mutation(pairs[th], pairs[tl], budget),
                  len(th), {"lower": tl.labels(), "upper": th.labels()})
    return rep.done({"tors": len(classes), "edges": len(lattice.edges)})


def tau_report_suite(u: Universe, budget: int = DEFAULT_HOM_BUDGET) -> dict:
    rep = _Report("tau-report", _scope(u))
    data = tau_report(u, budget)
    rep.check("alpha~ is a bijection onto wide subcategories", "alpha-bijection", data["alpha_bijective"])
    rep.check("extremality equivalences", "local-extremality", data["extremality_equivalences"])
    by_scan = closure_scan(u)
    rep.check("closure scan and cover walk agree", "tors-enumeration", len(by_scan) == data["tors"],
              witness={"scan": len(by_scan), "walk": data["tors"]})
    return rep.done({"report": data})


def tube_shape_suite(r: int, bound: int, prime: int = 5, budget: int = DEFAULT_HOM_BUDGET,
                     universe: Universe | None = None) -> dict:
    u = universe or tube_universe(r, bound, prime)
    rep = _Report("tube-shape", _scope(u))
    bricks = tube_bricks(r, bound, u)
    expected = sorted(TubeCoord(i, k) for i in range(1, r + 1) for k in range(1, r + 1))
    rep.check("bricks are exactly S_i[k] with k <= r", "tube-bricks", bricks == expected,
              witness=[b.label() for b in bricks])
    data = classify_wide_in_tube(r, bound, budget, u)
    for entry in data["wides"]:
        coords = [TubeCoord(*c).label() for c in entry["coords"]]
        rep.check("wide subcategory has wing or wing-plus-ray shape", "tube-shape",
                  entry["shape"] is not None, len(coords), coords)
        rep.check("wide subcategory lies in a wing or contains a full ray", "tube-wing-or-ray",
                  entry["wing_or_ray"], len(coords), coords)
    for v in data["violations"]:
        if v["reason"] == "two bricks of length r":
            rep.check("no semibrick has two bricks of length r", "tube-semibrick", False,
                      len(v["semibrick"]), v["semibrick"])
    return rep.done({"wide": len(data["wides"]), "scope_note": data["scope"]})


def kronecker_tables_suite(bound: int = 6, prime: int = 5, universe: Universe | None = None) -> dict:
    data = verify_theorem_c(bound, prime, universe)
    rep = _Report("kronecker-tables", {"universe": "kronecker", "prime": data["prime"], "bound": data["bound"]})
    for row in data["rows"]:
        for c in row["checks"]:
            if c["status"] == "inconclusive":
                continue
            rep.check(f"{row['table']} row {row['row']}: {c['identity']}", f"{row['table']}-table",
                      c["status"] == "pass", witness=c)
    for qc in data["preinjective_quotients"]:
        rep.check("Inj(n+1) -> Inj(n) epi with quasi-simple kernel, hom = 2", "preinjective-quotient",
                  qc["ok"], qc["n"], qc)
    for m in data["membership"]["failed"]:
        rep.check("membership predicate agrees with Hom perps", "membership", False, witness=m)
    rep.check("membership predicate agrees with Hom perps", "membership", not data["membership"]["failed"],
              witness=None)
    inconclusive = sum(row["inconclusive"] for row in data["rows"])
    return rep.done({"rows": [{k: row[k] for k in ("table", "row", "status", "passed", "failed", "inconclusive")}
                              for row in data["rows"]], "inconclusive": inconclusive})


def ringel_report(max_size: int = 4, prime: int = 5) -> dict:
    data = ringel_suite(max_size, prime)
    rep = _Report("ringel", {"prime": prime, "max_size": max_size})
    for row in data["checks"]:
        for key, name in (("dim_ok", "dim P(I) = (|I|, |I|+1)"), ("indecomposable", "P(I) indecomposable"),
                          ("brick", "End P(I) one-dimensional"), ("iso_pre", "P(I) isomorphic to Pre(|I|)"),
                          ("ses_ok", "0 -> P(J) -> P(I) -> sum of quasi-simples -> 0"),
                          ("euler_ok", "hom - ext to every quasi-simple is 1")):
            rep.check(name, "ringel-module", bool(row[key]), len(row["I"]), row["I"])
        rep.check("hom to every quasi-simple is nonzero", "ringel-module",
                  row["min_hom_quasisimple"] >= 1, len(row["I"]), row["I"])
    return rep.done({"ses_checked": sum(r["ses_checked"] for r in data["checks"]),
                     "disjoint_equal_size_hom_dims": data["disjoint_hom_dims"]})


def run_suite(name: str, universe: Universe | None = None, budget: int = DEFAULT_HOM_BUDGET, **opts) -> dict:
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name == "ringel":
        return ringel_report(opts.get("max_size", 4), opts.get("prime", 5))
    if name == "tube-shape":
        return tube_shape_suite(opts["rank"], opts["bound"], opts.get("prime", 5), budget, universe)
    if name == "kronecker-tables":
        return kronecker_tables_suite(opts.get("bound", 6), opts.get("prime", 5), universe)
    if universe is None:
        raise InvalidInput(f"suite {name!r} needs a universe")
    if name == "euler":
        return euler_suite(universe, opts.get("pairs", 500))
    if name == "ar-formula":
        return ar_suite(universe, opts.get("pairs", 500))
    if name == "wide-roundtrip":
        return wide_roundtrip_suite(universe, budget)
    if name == "almost-simple":
        return almost_simple_suite(universe, budget)
    if name == "extremal":
        return extremal_suite(universe, budget)
    return tau_report_suite(universe, budget)
