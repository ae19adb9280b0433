import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torswide.errors import BudgetExceeded, DimensionMismatch, InvalidInput
from torswide.quiverrep import (
    ExtSpace,
    Morphism,
    Quiver,
    Representation,
    cyclic_quiver,
    decompose,
    direct_sum,
    euler_form,
    ext_dim,
    ext_pullback,
    ext_pushforward,
    extension_middle,
    find_isomorphism,
    hom_basis,
    hom_dim,
    identity_morphism,
    injective,
    is_indecomposable,
    is_isomorphic,
    iter_morphisms,
    kronecker_quiver,
    linear_quiver,
    morphism_parts,
    projective,
    simple_rep,
    submodule_lattice,
    tau_translate,
)
from torswide.universe import kron_pre, kron_reg

from oracles import brute_hom_count


def tiny_reps(q: Quiver, max_dim: int = 1):
    """All representations of ``q`` with vertex dimensions at most ``max_dim``."""
    p = q.p
    out = []
    for dim in itertools.product(range(max_dim + 1), repeat=q.n):
        blocks = [(dim[a.tgt], dim[a.src]) for a in q.arrows]
        for flat in itertools.product(range(p), repeat=sum(r * c for r, c in blocks)):
            maps, k = {}, 0
            for a, (r, c) in zip(q.arrows, blocks):
                maps[a.name] = np.array(flat[k:k + r * c], dtype=np.int64).reshape(r, c)
                k += r * c
            out.append(Representation(q, dim, maps))
    return out


KRON2 = kronecker_quiver(2)
TINY = tiny_reps(KRON2)


@pytest.mark.parametrize("i,j", [(i, j) for i in range(0, len(TINY), 3) for j in range(0, len(TINY), 2)])
def test_hom_matches_brute_force(i, j):
    m, n = TINY[i], TINY[j]
    assert m.p ** hom_dim(m, n) == brute_hom_count(m, n)


@pytest.mark.parametrize("i,j", [(i, j) for i in range(len(TINY)) for j in range(len(TINY))][::5])
def test_ext_equals_brute_hom_minus_euler(i, j):
    # the standard resolution gives ext = hom - <dim M, dim N>; hom comes from the enumeration oracle
    m, n = TINY[i], TINY[j]
    h = round(np.log(brute_hom_count(m, n)) / np.log(m.p))
    chi = sum(a * b for a, b in zip(m.dim, n.dim)) - sum(m.dim[a.src] * n.dim[a.tgt] for a in KRON2.arrows)
    assert ext_dim(m, n) == h - chi


def test_brute_hom_kronecker_pre_p3():
    q = kronecker_quiver(3)
    m, n = kron_pre(q, 0), kron_pre(q, 1)
    assert hom_dim(m, n) == 2
    assert brute_hom_count(m, n) == 9


def test_projective_injective_dims_a3():
    q = linear_quiver(3)
    # paths 1 -> 2 -> 3: P(i)_j counts paths i -> j
    assert [projective(q, v).dim for v in range(3)] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert [injective(q, v).dim for v in range(3)] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]


def test_projective_hom_is_evaluation():
    q = linear_quiver(3)
    m = direct_sum(projective(q, 0), simple_rep(q, 1))
    for v in range(3):
        assert hom_dim(projective(q, v), m) == m.dim[v]
        assert hom_dim(m, injective(q, v)) == m.dim[v]


def test_a2_ext_direction():
    q = linear_quiver(2)
    s1, s2 = simple_rep(q, 0), simple_rep(q, 1)
    assert ext_dim(s1, s2) == 1 and ext_dim(s2, s1) == 0
    assert euler_form(q, s1.dim, s2.dim) == -1
    e = ExtSpace(s1, s2)
    mid = extension_middle(s1, s2, e.cocycle([1]))
    assert mid.dim == (1, 1) and is_indecomposable(mid)
    assert is_isomorphic(mid, projective(q, 0))
    assert len(decompose(extension_middle(s1, s2, e.cocycle([0])))) == 2


def test_ext_coords_roundtrip(kron3):
    m, n = kron3.objects[kron3.index("inj(1)")], kron3.objects[kron3.index("pre(1)")]
    e = ExtSpace(m, n)
    assert e.dim == ext_dim(m, n) == 4
    for coords in itertools.product(range(2), repeat=e.dim):
        assert list(e.coords(e.cocycle(coords))) == list(coords)


def test_ext_functoriality_identity(kron3):
    m, n = kron3.objects[kron3.index("reg(0,2)")], kron3.objects[kron3.index("pre(0)")]
    e = ExtSpace(m, n)
    assert np.array_equal(ext_pushforward(e, e, identity_morphism(n)), np.eye(e.dim, dtype=np.int64))
    assert np.array_equal(ext_pullback(e, e, identity_morphism(m)), np.eye(e.dim, dtype=np.int64))


def test_kronecker_translates():
    q = kronecker_quiver()
    assert tau_translate(kron_pre(q, 0), "inverse").dim == (2, 3)
    assert tau_translate(kron_pre(q, 1), "inverse").dim == (3, 4)
    assert is_isomorphic(tau_translate(kron_pre(q, 2), "forward"), kron_pre(q, 0))
    assert tau_translate(kron_pre(q, 1), "forward") is None
    r = kron_reg(q, 3, 2)
    assert is_isomorphic(tau_translate(r, "forward"), r)
    assert is_isomorphic(tau_translate(tau_translate(r, "forward"), "inverse"), r)


def test_cyclic_requires_nilpotent():
    q = cyclic_quiver(1)
    with pytest.raises(InvalidInput):
        Representation(q, (1,), {"x1": [[1]]})
    Representation(q, (2,), {"x1": [[0, 1], [0, 0]]})


def test_shape_errors():
    q = linear_quiver(2)
    with pytest.raises(DimensionMismatch):
        Representation(q, (1, 1), {"a1": [[1, 1]]})
    s1 = simple_rep(q, 0)
    with pytest.raises(DimensionMismatch):
        identity_morphism(s1).compose(identity_morphism(projective(q, 0)))
    with pytest.raises(InvalidInput):
        Morphism(projective(q, 0), simple_rep(q, 1), [[[0]], [[1]]])


def test_budget_refusal(kron3):
    m, n = kron3.objects[kron3.index("pre(0)")], kron3.objects[kron3.index("pre(3)")]
    with pytest.raises(BudgetExceeded):
        list(iter_morphisms(m, n, budget=10))


def test_serialization_roundtrip(kron3):
    q = kron3.quiver
    assert Quiver.from_json(q.to_json()) == q
    for o in kron3.objects[:5]:
        assert Representation.from_json(q, o.to_json()).same_as(o)


def test_submodule_lattice_a2():
    q = linear_quiver(2)
    subs = submodule_lattice(projective(q, 0), budget=100)
    assert sorted(s.rep.dim for s in subs) == [(0, 0), (0, 1), (1, 1)]


def test_hom_basis_elements_are_morphisms(kron3):
    m, n = kron3.objects[kron3.index("pre(1)")], kron3.objects[kron3.index("reg(inf,2)")]
    basis = hom_basis(m, n)
    assert len(basis) == hom_dim(m, n) == 2
    assert all(f.is_valid() for f in basis)


indices3 = st.integers(0, 15)


@given(st.lists(indices3, min_size=1, max_size=3))
def test_decompose_recovers_summands(kron3, idx):
    objs = [kron3.objects[i] for i in idx]
    parts = decompose(direct_sum(*objs))
    assert len(parts) == len(objs)
    remaining = list(objs)
    for part in parts:
        hit = next(k for k, o in enumerate(remaining) if is_isomorphic(part, o))
        remaining.pop(hit)
    assert not remaining


@given(indices3, st.integers(0, 2 ** 16))
def test_isomorphism_invariant_under_base_change(kron3, i, seed):
    rng = np.random.default_rng(seed)
    m = kron3.objects[i]
    g = []
    for d in m.dim:
        while True:
            x = rng.integers(0, m.p, size=(d, d))
            if d == 0 or round(np.linalg.det(x)) % m.p:
                break
        g.append(x)
    n = m.base_change(g)
    f = find_isomorphism(m, n)
    assert f is not None and f.is_iso() and f.is_valid()


@given(indices3, indices3)
def test_morphism_parts_exact(kron3, i, j):
    m, n = kron3.objects[i], kron3.objects[j]
    for f in hom_basis(m, n)[:2]:
        parts = morphism_parts(f)
        assert all(k + im == s for k, im, s in zip(parts.kernel.rep.dim, parts.image.rep.dim, m.dim))
        assert all(im + c == t for im, c, t in zip(parts.image.rep.dim, parts.cokernel.rep.dim, n.dim))
        assert parts.kernel.inclusion.is_valid() and parts.cokernel.projection.is_valid()
        assert f.compose(parts.kernel.inclusion).is_zero()


@given(indices3, indices3, indices3)
def test_hom_additive(kron3, i, j, k):
    a, b, c = (kron3.objects[x] for x in (i, j, k))
    assert hom_dim(direct_sum(a, b), c) == hom_dim(a, c) + hom_dim(b, c)
    assert ext_dim(c, direct_sum(a, b)) == ext_dim(c, a) + ext_dim(c, b)
