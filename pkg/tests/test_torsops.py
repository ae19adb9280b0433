import itertools

import pytest
from hypothesis import given, strategies as st

from torswide.errors import BudgetExceeded, InvalidInput
from torswide.quiverrep import ExtSpace, decompose, direct_sum, extension_middle, hom_basis, morphism_parts
from torswide.torsops import (
    SubcatSet,
    TorsionPair,
    canonical_sequence_ok,
    closure_scan,
    cover_walk,
    filt_closure,
    in_filt,
    is_torsion_class,
    lower_covers,
    pair_from_class,
    perp,
    torsion_closure,
    torsionfree_closure,
    upper_covers,
)


def double_perp_classes(u):
    """Oracle: subsets S with S = left-perp(right-perp(S)), straight from the Hom table."""
    h = u.tables()[0]
    n = len(u)
    out = set()
    for mask in range(2 ** n):
        s = [i for i in range(n) if mask >> i & 1]
        f = [x for x in range(n) if all(h[i, x] == 0 for i in s)]
        t = [x for x in range(n) if all(h[x, j] == 0 for j in f)]
        if t == s:
            out.add(frozenset(s))
    return out


def test_counts_against_double_perp_oracle(a2, a3):
    for u, expected in ((a2, 5), (a3, 14)):
        oracle = double_perp_classes(u)
        assert len(oracle) == expected
        assert {frozenset(t.indices) for t in closure_scan(u)} == oracle
        assert {frozenset(t.indices) for t in cover_walk(u)} == oracle


def test_d4_fifty(d4):
    walk = cover_walk(d4)
    assert len(walk) == 50
    assert walk == closure_scan(d4)


def test_torsion_classes_closed_under_images(a3):
    # every image of a Hom-basis morphism out of a member lies in the class
    for t in cover_walk(a3):
        for i in t.indices:
            for j in range(len(a3)):
                for f in hom_basis(a3.objects[i], a3.objects[j]):
                    img = morphism_parts(f).image.rep
                    assert all(a3.identify(m) in t for m in decompose(img))


def _ext_closure(s: SubcatSet, max_summands: int = 2) -> SubcatSet:
    """Oracle for filt: grow by indecomposable middles of extensions between small sums."""
    u = s.universe
    have = set(s.indices)
    changed = True
    while changed:
        changed = False
        sums = [direct_sum(*[u.objects[i] for i in c])
                for r in range(1, max_summands + 1)
                for c in itertools.combinations_with_replacement(sorted(have), r)]
        for b, a in itertools.product(sums, repeat=2):
            e = ExtSpace(b, a)
            for coeffs in itertools.product(range(u.p), repeat=e.dim):
                mid = extension_middle(b, a, e.cocycle(coeffs))
                parts = decompose(mid)
                if len(parts) == 1:
                    k = u.identify(parts[0])
                    if k not in have:
                        have.add(k)
                        changed = True
    return SubcatSet(u, have)


def test_filt_matches_extension_oracle(a3):
    for mask in range(1, 2 ** len(a3)):
        s = SubcatSet(a3, [i for i in range(len(a3)) if mask >> i & 1])
        if len(s) > 2:
            continue
        assert filt_closure(s) == _ext_closure(s), s


def test_filt_simples_is_everything(a3, d4):
    for u in (a3, d4):
        simples = SubcatSet(u, [k for k, o in enumerate(u.objects) if o.total_dim == 1])
        assert filt_closure(simples) == SubcatSet.everything(u)


def test_in_filt_on_sums(a2):
    s = SubcatSet.from_labels(a2, ["root[0,1]", "root[1,0]"])
    assert in_filt(s, direct_sum(*a2.objects))
    assert not in_filt(SubcatSet.from_labels(a2, ["root[0,1]"]), a2.objects[2])


@given(st.integers(0, 13), st.lists(st.integers(0, 5), min_size=1, max_size=3))
def test_canonical_sequence(a3, k, idx):
    t = cover_walk(a3)[k]
    pair = pair_from_class(t)
    x = direct_sum(*[a3.objects[i] for i in idx])
    assert canonical_sequence_ok(pair, x)


@given(st.sets(st.integers(0, 11)))
def test_galois_connection(d4, idx):
    s = SubcatSet(d4, idx)
    assert s <= perp(perp(s, (0,), "right"), (0,), "left")
    assert s <= perp(perp(s, (0,), "left"), (0,), "right")
    t = torsion_closure(s)
    assert s <= t and torsion_closure(t) == t
    f = torsionfree_closure(s)
    assert s <= f and torsionfree_closure(f) == f


def test_torsion_closure_is_double_perp(d4):
    for mask in range(0, 2 ** len(d4), 37):
        s = SubcatSet(d4, [i for i in range(len(d4)) if mask >> i & 1])
        assert torsion_closure(s) == perp(perp(s, (0,), "right"), (0,), "left")


def test_covers_are_inverse(a3):
    for t in cover_walk(a3):
        for c, b in upper_covers(t):
            assert (t, b) in lower_covers(c)
        for c, b in lower_covers(t):
            assert (t, b) in upper_covers(c)


def test_a2_covers_of_zero(a2):
    ups = upper_covers(SubcatSet(a2))
    assert [(c.labels(), a2.labels[b]) for c, b in ups] == [(["root[0,1]"], "root[0,1]"),
                                                            (["root[1,0]"], "root[1,0]")]


def test_pair_from_class_rejects(a2):
    with pytest.raises(InvalidInput):
        pair_from_class(SubcatSet.from_labels(a2, ["root[1,1]"]))
    assert not is_torsion_class(SubcatSet.from_labels(a2, ["root[1,1]"]))


def test_budget_and_scope(d4, kron3):
    with pytest.raises(BudgetExceeded):
        closure_scan(d4, budget=100)
    with pytest.raises(InvalidInput):
        cover_walk(kron3)
    with pytest.raises(InvalidInput):
        perp(SubcatSet(d4), (2,), "right")


def test_torsion_pair_hom_orthogonal(a3):
    h = a3.tables()[0]
    for t in cover_walk(a3):
        pair = TorsionPair(t, perp(t, (0,), "right"))
        assert all(h[i, j] == 0 for i in pair.t for j in pair.f)
        assert len(pair.t) + len(pair.f) <= len(a3)
