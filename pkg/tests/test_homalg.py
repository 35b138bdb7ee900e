import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from chainmaps import chain_map_basis, random_chain_map
from dhopf.derived import catalog_M, catalog_N
from dhopf.exactlin import Matrix, rank
from dhopf.homalg import (
    BoundedComplex,
    ChainMap,
    ComplexError,
    cohomology,
    cohomology_dims,
    cohomology_map_ranks,
    cone,
    direct_sum,
    shift,
    stalk,
    total_tensor,
)
from dhopf.nakayama import ModuleMap, build_H, module_decompose, module_tensor, projective, simple

H4 = build_H(4, 0)


def catalog(n):
    objs = [catalog_N(n, i, p) for i in range(n) for p in (-1, 0, 1)]
    objs += [catalog_M(n, i, j, p) for i in range(n) for j in range(3) for p in (-1, 0, 1)]
    return objs


def test_zero_complex_normalizes():
    Z = BoundedComplex(4, 5, [simple(4, 0).__class__(4, [0, 0, 0, 0])], [])
    assert Z.is_zero() and Z.lo == 0 and Z.terms == ()
    assert total_tensor(Z, catalog_M(4, 0, 1, 0), H4).is_zero()


def test_d_squared_checked():
    P0, P3, P2 = projective(4, 0), projective(4, 3), projective(4, 2)
    f = ModuleMap(P0, P3, [Matrix([[1]]), Matrix.zeros(0, 1), Matrix.zeros(0, 0), Matrix.zeros(1, 0)])
    S = simple(4, 1)
    idS = ModuleMap.identity(S)
    with pytest.raises(ComplexError):
        BoundedComplex(4, 0, [S, S, S], [idS, idS])
    BoundedComplex(4, 0, [P0, P3], [f])


def test_shift_conventions():
    X = catalog_M(4, 1, 2, 0)
    assert shift(X, 0) == X
    assert shift(shift(X, 1), -1) == X
    Y = shift(X, 1)
    assert Y.lo == X.lo - 1
    assert Y.diffs[0].mats == X.diffs[0].scale(-1).mats


@pytest.mark.parametrize("X", catalog(4)[:20])
def test_cohomology_of_shift(X):
    base = cohomology_dims(X)
    for p in (-2, 1, 3):
        assert cohomology_dims(shift(X, p)) == {m - p: d for m, d in base.items()}


def test_catalog_cohomology():
    for i in range(4):
        assert cohomology(catalog_N(4, i, 0)).decomposed() == {2: {("S", i): 1}}
        assert cohomology(catalog_M(4, i, 0, 0)).decomposed() == {0: {("P", i): 1}}
        for j in range(1, 5):
            assert cohomology(catalog_M(4, i, j, 0)).decomposed() == {
                0: {("S", (i + 1) % 4): 1},
                j: {("S", (i - j) % 4): 1},
            }


def test_stalk_tensor():
    M, N = projective(4, 1), simple(4, 2)
    T = total_tensor(stalk(M, 0), stalk(N, 0), H4)
    assert T == stalk(module_tensor(M, N, H4), 0)


def test_shift_compatibility_of_tensor():
    X, Y = catalog_M(4, 0, 2, 0), catalog_N(4, 1, 0)
    assert total_tensor(shift(X, 1), Y, H4) == shift(total_tensor(X, Y, H4), 1)
    # shifting the second factor agrees up to sign only
    A, B = total_tensor(X, shift(Y, 1), H4), shift(total_tensor(X, Y, H4), 1)
    assert A.terms == B.terms and A.lo == B.lo
    assert cohomology_dims(A) == cohomology_dims(B)


def test_d_squared_zero_by_hand():
    """Expand the tensor square of P_0 -> P_3 entrywise with the Koszul sign."""
    X = catalog_M(4, 0, 1, 0)
    T = total_tensor(X, X, H4)
    assert T.lo == 0 and T.hi == 2
    # degree 1 has summands X^0 (x) X^1 and X^1 (x) X^0; d^0 = (d (x) 1, 1 (x) d) and
    # d^1 = (1 (x) d, -(d (x) 1)) on those summands (sign (-1)^1 on the second factor)
    d0, d1 = T.diffs
    for v in range(4):
        assert (d1.mats[v] @ d0.mats[v]).is_zero()
    ranks = [sum(rank(m) for m in d.mats) for d in T.diffs]
    assert ranks[0] > 0 and ranks[1] > 0


def test_koszul_sign_is_needed():
    X = catalog_M(4, 0, 1, 0)
    T = total_tensor(X, X, H4)
    d0, d1 = T.diffs
    # flip the sign on the second block column of d1 (the X^1 (x) X^0 summand)
    src_split = module_tensor(X.term(0), X.term(1), H4).dims
    bad = []
    for v in range(4):
        m = d1.mats[v]
        k = src_split[v]
        rows = [list(r[:k]) + [-x for x in r[k:]] for r in m.data]
        bad.append(Matrix(rows, m.rows, m.cols))
    assert any(not (b @ d0.mats[v]).is_zero() for v, b in enumerate(bad))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_euler_characteristic_is_multiplicative(n):
    H = build_H(n, 0)
    objs = [catalog_N(n, i, 0) for i in range(n)] + [catalog_M(n, i, j, p) for i in range(n) for j in (0, 1, 3) for p in (0, 1)]

    def conv(a, b):
        out = [0] * n
        for u, x in enumerate(a):
            for w, y in enumerate(b):
                out[(u + w) % n] += x * y
        return tuple(out)

    for X, Y in itertools.product(objs, repeat=2):
        ex, ey = cohomology(X).euler_class(), cohomology(Y).euler_class()
        assert cohomology(total_tensor(X, Y, H)).euler_class() == conv(ex, ey)


def test_tensor_differentials_are_linear():
    for X, Y in itertools.product(catalog(4)[:12], repeat=2):
        T = total_tensor(X, Y, H4)
        T.validate()


def test_direct_sum_cohomology():
    X, Y = catalog_M(4, 0, 2, 0), catalog_N(4, 3, 1)
    S = direct_sum(X, Y)
    want = {}
    for Z in (X, Y):
        for m, d in cohomology_dims(Z).items():
            want[m] = tuple(a + b for a, b in zip(want.get(m, (0,) * 4), d))
    assert cohomology_dims(S) == want


def test_cone_of_identity_is_acyclic():
    for X in catalog(4)[:15]:
        assert cohomology_dims(cone(ChainMap.identity(X))) == {}


def test_cone_of_zero():
    X, Y = catalog_M(4, 1, 1, 0), catalog_N(4, 0, 0)
    C = cone(ChainMap.zero(X, Y))
    assert cohomology_dims(C) == cohomology_dims(direct_sum(Y, shift(X, 1)))


def test_non_chain_map_rejected():
    X = catalog_M(4, 0, 1, 0)
    f = ModuleMap.identity(X.term(0))
    with pytest.raises(ComplexError):
        ChainMap(X, X, {0: f})


def test_json_roundtrip():
    X = direct_sum(catalog_M(4, 0, 2, -1), catalog_N(4, 1, 0))
    assert BoundedComplex.from_json(X.to_json()) == X


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_cone_long_exact_sequence(seed):
    rng = random.Random(seed)
    objs = catalog(4)
    X = direct_sum(*rng.sample(objs, 2))
    Y = direct_sum(*rng.sample(objs, 2))
    f = random_chain_map(X, Y, rng)
    C = cone(f)
    hx, hy, hc = cohomology_dims(X), cohomology_dims(Y), cohomology_dims(C)
    r = cohomology_map_ranks(f)
    zero = (0,) * 4
    lo = min(X.lo, Y.lo) - 2
    hi = max(X.hi, Y.hi) + 2
    for m in range(lo, hi):
        # H^m(C) = coker H^m(f) (+) ker H^{m+1}(f)
        want = tuple(
            (hy.get(m, zero)[v] - r.get(m, zero)[v]) + (hx.get(m + 1, zero)[v] - r.get(m + 1, zero)[v])
            for v in range(4)
        )
        assert hc.get(m, zero) == want


def test_chain_map_space_of_identity():
    X = catalog_M(4, 0, 2, 0)
    maps = chain_map_basis(X, X)
    assert maps  # contains the identity up to scalars
    for f in maps:
        f.validate()
