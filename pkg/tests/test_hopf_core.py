import math

import pytest
from hypothesis import given, settings, strategies as st

from dhopf.hopf_core import (
    GroupDatum,
    GroupTable,
    HopfPresentation,
    InvalidDatumError,
    MalformedGroupError,
    build_group_datum_algebra,
    check_hopf_axioms,
    cyclic_datum,
    cyclic_group,
    datum_from_json,
    dihedral_group,
    direct_product,
    dualize,
    group_from_name,
    quaternion_group,
    symmetric_group,
    validate_group_datum,
    verify_dual_presentation,
)
from dhopf.exactlin import zeta
from dhopf.nakayama import _closed_form_hopf, dual_hopf

VALID = [(2, 0), (4, 0), (4, 1), (6, 0), (6, 1)]


def test_group_constructors():
    assert cyclic_group(5).element_order(1) == 5
    assert symmetric_group(3).order == 6
    D = dihedral_group(4)
    assert D.order == 8 and [D.is_central(a) for a in range(8)].count(True) == 2
    Q = quaternion_group()
    assert Q.order == 8 and sorted(Q.element_order(a) for a in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert direct_product(cyclic_group(2), cyclic_group(3)).element_order(5) == 6
    assert group_from_name("Z2xZ4").order == 8


def test_malformed_tables():
    with pytest.raises(MalformedGroupError):
        GroupTable.from_table([[0, 1], [1, 1]])  # no inverse for 1
    with pytest.raises(MalformedGroupError):
        GroupTable.from_table([[0, 1, 2], [1, 0, 0], [2, 0, 1]])
    with pytest.raises(MalformedGroupError):
        group_from_name("Y7")


def test_validation_examples():
    rep = validate_group_datum(cyclic_datum(4, (1, 4), 1))
    assert not rep.valid
    assert any("mu must be 0" in v for v in rep.violations)
    rep = validate_group_datum(cyclic_datum(6, (1, 3), 1))
    assert rep.valid and rep.d == 3 and rep.nilpotent is False
    rep = validate_group_datum(cyclic_datum(4, (1, 2), 1))
    assert rep.valid and rep.d == 2 and rep.nilpotent is False
    rep = validate_group_datum(cyclic_datum(2, (1, 2), 1))
    assert not rep.valid  # o(g) = o(chi(g)) = 2 forces mu = 0
    bad = GroupDatum(cyclic_group(3), 1, (1, zeta(3), zeta(3)), 0)
    assert any("multiplicative" in v for v in validate_group_datum(bad).violations)
    with pytest.raises(InvalidDatumError):
        build_group_datum_algebra(cyclic_datum(4, (1, 4), 1))


@pytest.mark.parametrize("n,mu", VALID)
def test_axioms_and_duality(n, mu):
    A = build_group_datum_algebra(cyclic_datum(n, (1, 2), mu))
    assert check_hopf_axioms(A).ok, check_hopf_axioms(A).failed()
    D = dualize(A)
    assert check_hopf_axioms(D).ok
    DD = dualize(D)
    assert DD.same_structure(A)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_dual_matches_quiver_formulas(n):
    assert dual_hopf(n, 0).same_structure(_closed_form_hopf(n))


@pytest.mark.parametrize("n", [4, 6])
def test_mu1_dual_differs_only_in_coproduct(n):
    d0, d1 = dual_hopf(n, 0), dual_hopf(n, 1)
    assert d0.mult == d1.mult and d0.antipode == d1.antipode
    assert d0.comult != d1.comult


def _alternative_antipode(A: HopfPresentation, alpha) -> HopfPresentation:
    """Same structure, antipode h x^m -> (-x g^{-1})^m h^{-1}."""
    G = alpha.group
    d = validate_group_datum(alpha).d
    x = {A.index("x"): 1}
    ginv = {G.inverse[alpha.g] * d: 1}
    step = {k: -v for k, v in A.mul(x, ginv).items()}
    S = {}
    for h in range(G.order):
        for m in range(d):
            S[h * d + m] = A.mul(A.power(step, m), {G.inverse[h] * d: 1})
    return HopfPresentation(A.basis_names, A.mult, A.unit, A.comult, A.counit, S)


def test_antipode_order_matters():
    # with x h = chi(h) h x and chi(g) = -1, the factor order in S(x) is not cosmetic
    alpha = cyclic_datum(4, (1, 2), 0)
    A = build_group_datum_algebra(alpha)
    alt = _alternative_antipode(A, alpha)
    rep = check_hopf_axioms(alt)
    assert rep.failed() == ["antipode"]
    # the convolution inverse is S(x) = -g^{-1} x
    x = A.index("x")
    assert A.antipode[x] == {A.index("g^3x"): -1}


@pytest.mark.parametrize("n,mu", VALID)
def test_dual_presentation_relations(n, mu):
    rep = verify_dual_presentation(cyclic_datum(n, (1, 2), mu))
    assert rep.relations_hold
    assert rep.nilpotency_index == 2
    dx = rep.delta_xi
    assert not dx["closed_form_matches"]
    assert dx["variant_matches"]
    assert dx["closed_form_counit_defect"] != "0"
    conv = rep.delta_p["conventions"]
    if mu == 0:
        assert all(c["matches"] for c in conv.values())
    else:
        assert not any(c["matches"] for c in conv.values())
        assert all(c["matches_with_mu_negated"] for c in conv.values())


def test_dual_presentation_report_is_stable():
    a = verify_dual_presentation(cyclic_datum(4, (1, 2), 1)).to_dict()
    b = verify_dual_presentation(cyclic_datum(4, (1, 2), 1)).to_dict()
    assert a == b


def test_non_nilpotent_order_three():
    alpha = cyclic_datum(6, (1, 3), 1)
    A = build_group_datum_algebra(alpha)
    assert A.dim == 18
    assert check_hopf_axioms(A).ok
    rep = verify_dual_presentation(alpha)
    assert rep.relations_hold and rep.nilpotency_index == 3


def test_datum_json():
    doc = {"order": 2, "mult": [[0, 1], [1, 0]], "g": 1, "chi": [[0, 1], [1, 2]], "mu": 0}
    alpha = datum_from_json(doc)
    assert validate_group_datum(alpha).d == 2
    with pytest.raises(MalformedGroupError):
        datum_from_json({"mult": [[0, 1], [1, 0]], "g": 1, "chi": [[0, 1]]})
    with pytest.raises(MalformedGroupError):
        datum_from_json({"g": 1, "chi": []})


@settings(max_examples=15)
@given(st.sampled_from([2, 3, 4, 6]), st.integers(1, 6), st.sampled_from([2, 3]))
def test_random_cyclic_data_are_hopf(n, k, N):
    alpha = cyclic_datum(n, (k, N), 0)
    rep = validate_group_datum(alpha)
    # chi must be a character of Z_n: zeta_N^{k n} = 1
    if (k * n) % N:
        assert not rep.valid
        return
    assert rep.valid
    assert rep.d == N // math.gcd(N, k)
    A = build_group_datum_algebra(alpha)
    assert check_hopf_axioms(A).ok
    assert check_hopf_axioms(dualize(A)).ok
