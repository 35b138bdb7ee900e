import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from dhopf.exactlin import Matrix, rank
from dhopf.nakayama import (
    ModuleMap,
    QuiverRep,
    RelationError,
    build_H,
    direct_sum,
    f_iso,
    from_action,
    module_decompose,
    module_tensor,
    projective,
    projective_sum,
    simple,
    tensor_maps,
    to_action,
)


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError, match="even"):
        build_H(3)
    with pytest.raises(ValueError):
        build_H(2, 1)  # o(g) = o(chi(g)) = 2 forces mu = 0
    with pytest.raises(ValueError):
        build_H(4, 2)


def test_relation_enforced():
    A = Matrix([[1]])
    with pytest.raises(RelationError):
        QuiverRep(2, [1, 1], [A, A])


def test_projective_shapes():
    P = projective(4, 3)
    assert P.dims == (1, 0, 0, 1)
    assert P.arrows[3] == Matrix([[1]])
    assert module_decompose(P) == Counter({("P", 3): 1})
    assert module_decompose(simple(4, 2)) == Counter({("S", 2): 1})
    assert module_decompose(projective_sum(4, [0, 0, 1])) == Counter({("P", 0): 2, ("P", 1): 1})


def _unit_rules(n, mu):
    H = build_H(n, mu)
    S = lambda i: simple(n, i)  # noqa: E731
    P = lambda i: projective(n, i)  # noqa: E731
    for i, j in itertools.product(range(n), repeat=2):
        assert module_decompose(module_tensor(S(i), S(j), H)) == {("S", (i + j) % n): 1}
        assert module_decompose(module_tensor(P(i), S(j), H)) == {("P", (i + j) % n): 1}
        assert module_decompose(module_tensor(S(j), P(i), H)) == {("P", (i + j) % n): 1}
        want = Counter({("P", (i + j) % n): 1})
        want[("P", (i + j + 1) % n)] += 1
        assert module_decompose(module_tensor(P(i), P(j), H)) == want


@pytest.mark.parametrize("n,mu", [(2, 0), (4, 0), (4, 1), (6, 0), (6, 1)])
def test_tensor_rules(n, mu):
    _unit_rules(n, mu)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_f_iso(n):
    H = build_H(n, 0)
    for i, j in itertools.product(range(n), repeat=2):
        f = f_iso(i, j, H)
        assert f.commutes() and f.is_iso()


def test_f_iso_needs_mu_zero():
    with pytest.raises(ValueError):
        f_iso(0, 0, build_H(4, 1))


def test_tensor_unit_is_S0():
    H = build_H(4, 0)
    M = direct_sum(projective(4, 1), simple(4, 3))
    for N in (module_tensor(simple(4, 0), M, H), module_tensor(M, simple(4, 0), H)):
        assert module_decompose(N) == module_decompose(M)


def test_action_roundtrip():
    M = direct_sum(projective(4, 1), simple(4, 2), projective(4, 3))
    act = to_action(M)
    assert from_action(4, act) == M
    # e_i are orthogonal idempotents summing to the identity
    tot = act["e0"] + act["e1"] + act["e2"] + act["e3"]
    assert tot == Matrix.identity(M.total_dim)
    # a_{i+1} a_i = 0 and a_i = e_{i+1} a_i e_i
    for i in range(4):
        assert (act[f"a{(i + 1) % 4}"] @ act[f"a{i}"]).is_zero()
        assert act[f"e{(i + 1) % 4}"] @ act[f"a{i}"] @ act[f"e{i}"] == act[f"a{i}"]


def test_json_roundtrip():
    M = direct_sum(projective(4, 1), simple(4, 2))
    assert QuiverRep.from_json(M.to_json()) == M


def _delta_action(H, M, N):
    """Action of the algebra on M (x) N computed from Delta and the action matrices."""
    n = H.n
    am, an = to_action(M), to_action(N)
    hopf = H.hopf
    out = {}
    for c in range(2 * n):
        mat = Matrix.zeros(M.total_dim * N.total_dim, M.total_dim * N.total_dim)
        for (a, b), z in hopf.comult[c].items():
            mat = mat + am[hopf.basis_names[a]].kron(an[hopf.basis_names[b]]).scale(z)
        out[hopf.basis_names[c]] = mat
    return out


@pytest.mark.parametrize("mu", [0, 1])
def test_tensor_matches_delta_action(mu):
    # independent route: build the tensor module on the plain Kronecker space
    H = build_H(4, mu)
    M = direct_sum(projective(4, 1), simple(4, 2))
    N = direct_sum(projective(4, 0), projective(4, 3))
    via_delta = from_action(4, _delta_action(H, M, N))
    assert module_decompose(via_delta) == module_decompose(module_tensor(M, N, H))
    assert via_delta.dims == module_tensor(M, N, H).dims


labels = st.lists(st.integers(0, 3), max_size=3)


@given(labels, st.lists(st.integers(0, 3), max_size=3), labels)
def test_tensor_decomposition_is_biadditive(ps, ss, qs):
    H = build_H(4, 0)
    parts = [projective(4, i) for i in ps] + [simple(4, i) for i in ss]
    if not parts or not qs:
        return
    M = direct_sum(*parts)
    N = projective_sum(4, qs)
    total = Counter()
    for X in parts:
        for q in qs:
            total.update(module_decompose(module_tensor(X, projective(4, q), H)))
    assert module_decompose(module_tensor(M, N, H)) == total


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_tensor_maps_functorial(i, j, k):
    H = build_H(4, 0)
    P, Q, R = projective(4, i), projective(4, j), projective(4, k)
    idP, idQ = ModuleMap.identity(P), ModuleMap.identity(Q)
    t = tensor_maps(idP, idQ, H)
    assert t.is_iso() and t.commutes()
    # a radical map P_k -> P_{k-1} tensored with the identity is H-linear
    src, tgt = projective(4, k), projective(4, (k - 1) % 4)
    mats = [Matrix.zeros(tgt.dims[v], src.dims[v]) for v in range(4)]
    mats[k] = Matrix([[1]])
    f = ModuleMap(src, tgt, mats)
    g = tensor_maps(f, idP, H)
    assert g.commutes()
    assert sum(rank(m) for m in g.mats) == 2
