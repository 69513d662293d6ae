import pytest

from cotwist.cyclo import CycNum
from cotwist.errors import CotwistError
from cotwist.freealg import GenMap, make_presentation
from cotwist.gbasis import hilbert_coeffs, verify_iso
from cotwist.groups import (AbGroup, Cocycle, coboundary, cocycle_product,
                            embed_cocycle, trivial_cocycle)
from cotwist.presets import (PRESET_NAMES, TWIST_PAIRS, a_family_xbasis,
                             preset, run_twist_suite)
from cotwist.twist import TwistSpec, twist_presentation

KLEIN = AbGroup((2, 2))


def test_catalog_shape():
    assert len(PRESET_NAMES) == 8
    for name in PRESET_NAMES:
        p = preset(name)
        assert p.presentation.conductor == 4
        assert len(p.presentation.generators) == 3
        assert all(g.degree == 1 for g in p.presentation.generators)
        assert len(p.presentation.relations) == 4
        assert p.g_degrees == ((0, 0), (0, 1), (1, 0))


def test_presets_connected_with_three_dimensional_degree_one():
    for name in PRESET_NAMES:
        dims = hilbert_coeffs(preset(name).presentation, 2)
        assert dims[0] == 1 and dims[1] == 3


def test_klein_mu_preset_entry():
    mu = preset("klein-mu")
    assert isinstance(mu, Cocycle)
    minus = CycNum.rational(-1, 4)
    assert mu.value((1, 0), (0, 1)) == minus
    assert mu.value((0, 1), (1, 0)).is_one()


def test_unknown_preset_rejected():
    with pytest.raises(CotwistError, match="unknown preset"):
        preset("Z(9)")


def test_fourth_relations_differ_between_source_and_target():
    for source_name, (target_name, _) in TWIST_PAIRS.items():
        src = preset(source_name).presentation
        tgt = preset(target_name).presentation
        assert src.relations[:3] == tgt.relations[:3]
        assert src.relations[3] != tgt.relations[3]


def test_twist_suite_passes_with_expected_scalars():
    report = run_twist_suite(6)
    assert report["passed"]
    by_source = {pair["source"]: pair for pair in report["pairs"]}
    assert by_source["A(1,-1)"]["scalars"] == ["1", "1", "1", "-1"]
    assert by_source["B(1)"]["scalars"] == ["1", "1", "1", "1"]
    assert by_source["E(1,i)"]["scalars"] == ["1", "1", "1", "-1"]
    assert by_source["G(1,(1+i)/2)"]["scalars"] == ["1", "1", "1", "-1"]
    for pair in report["pairs"]:
        assert pair["verdict"] == "SYNTACTIC"
        assert pair["iso_status"] == "SYNTACTIC"


def test_trivial_cocycle_negative_control():
    p = preset("A(1,-1)")
    spec = TwistSpec(p.grading(), p.duality, trivial_cocycle(KLEIN, 4))
    twisted = twist_presentation(spec)
    assert twisted.presentation == p.presentation
    target = preset("D(1,1)").presentation
    verdict = verify_iso(twisted.presentation, target,
                         GenMap.identity(target.generators, 4), 6)
    assert verdict.status == "FAILED"


def test_coboundary_modified_cocycle_passes_after_rescaling():
    p = preset("A(1,-1)")
    target = preset("D(1,1)")
    one = CycNum.one(4)
    i = CycNum.i()
    rho = {(0, 0): one, (1, 0): i, (0, 1): -one, (1, 1): -i}
    modified = embed_cocycle(
        cocycle_product(p.cocycle, coboundary(KLEIN, rho)), 4)
    twisted = twist_presentation(TwistSpec(p.grading(), p.duality, modified))
    scalars = [rho[g] for g in p.g_degrees]
    rescale = GenMap.scaling(p.presentation.generators, 4, scalars)
    rescaled = make_presentation(
        4, p.presentation.generators,
        [rescale.apply(r) for r in twisted.presentation.relations])
    assert rescaled == target.presentation


def test_double_klein_twist_returns_preset_exactly():
    for name in PRESET_NAMES:
        p = preset(name)
        once = twist_presentation(p.twist_spec())
        twice = twist_presentation(TwistSpec(once, p.duality, p.cocycle))
        assert twice.presentation == p.presentation


def test_hilbert_prefixes_equal_across_twist_pairs():
    for source_name, (target_name, _) in TWIST_PAIRS.items():
        a = hilbert_coeffs(preset(source_name).presentation, 6)
        b = hilbert_coeffs(preset(target_name).presentation, 6)
        assert a == b


def test_xbasis_demo_is_equivalent_presentation():
    pres, _ = a_family_xbasis()
    assert hilbert_coeffs(pres, 5) == \
        hilbert_coeffs(preset("A(1,-1)").presentation, 5)


def test_preset_action_diagonal_values():
    p = preset("E(1,-i)")
    m1, m2 = p.action.matrices
    assert [str(m1[k][k]) for k in range(3)] == ["1", "-1", "1"]
    assert [str(m2[k][k]) for k in range(3)] == ["1", "1", "-1"]


def test_regrade_on_preset_is_identity():
    from cotwist.action import isotypic_basis, regrade_presentation
    for name in ("A(1,-1)", "G(1,(1-i)/2)"):
        p = preset(name)
        basis = isotypic_basis(p.action, p.duality)
        grading = regrade_presentation(p.presentation, basis, KLEIN)
        assert grading.presentation == p.presentation
        assert grading.g_degrees == p.g_degrees


def test_preset_relations_survive_string_round_trip():
    for name in PRESET_NAMES:
        pres = preset(name).presentation
        for rel in pres.relations:
            assert pres.parse(str(rel)) == rel
