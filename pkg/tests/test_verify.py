import json

import pytest

from uprightknot import catalog
from uprightknot.diagram import UprightDiagram, parse
from uprightknot.invariants import build_matrix, green
from uprightknot.verify import (
    check_green_identities,
    check_invariance,
    check_laurentness,
    check_per_crossing_f1,
    check_theorem,
    verify_catalog,
    verify_diagram,
)

KINK = parse("n 1\nc + 2 1\nphi 2 1\n")


def _by_name(report):
    return {c.name: c for c in report.checks}


@pytest.mark.parametrize("name", ["unknot", "kink", "trefoil-a"])
def test_theorem_check_passes(name):
    (entry,) = check_theorem(catalog.get(name).diagram)
    assert entry.passed and entry.witness is None


def test_green_identities_on_kink():
    entries = check_green_identities(KINK, green(build_matrix(KINK)))
    assert [e.name for e in entries] == ["green/c001/AG_jj", "green/c001/GA_j_j+1"]
    assert all(e.passed for e in entries)


def test_corrupted_green_data_is_caught_with_witness():
    gd = green(build_matrix(KINK)).perturbed(1, 1)
    report = verify_diagram(KINK, "kink", gd=gd, kinks=False)
    failed = _by_name(report)
    assert not report.passed
    assert not failed["green/c001/AG_jj"].passed
    assert failed["green/c001/AG_jj"].witness == "RationalFunc1(T^-1)"
    assert not failed["adjugate"].passed


def test_per_crossing_f1_vacuous_on_unknot():
    D = parse("n 0")
    assert check_per_crossing_f1(D, green(build_matrix(D))) == []


@pytest.mark.parametrize("name", ["kink", "trefoil-b", "stevedore-a"])
def test_per_crossing_f1(name):
    D = catalog.get(name).diagram
    entries = check_per_crossing_f1(D, green(build_matrix(D)))
    assert len(entries) == 2 * D.n and all(e.passed for e in entries)


def test_laurentness_flags_rejected_pair_convention():
    D = catalog.get("figure-eight-a").diagram
    gd = green(build_matrix(D))
    assert check_laurentness(D, gd)[0].passed
    bad = check_laurentness(D, gd, include_diagonal=False)[0]
    assert not bad.passed and "NotDivisible" in bad.witness
    assert check_laurentness(parse("n 0"), green(build_matrix(parse("n 0"))), False)[0].passed


def test_invariance_groups():
    unknot = parse("n 0")
    assert check_invariance([("u", unknot)])[0].name == "invariance/vacuous"
    group = [(f.name, f.diagram) for f in catalog.groups()["unknot"]]
    assert all(e.passed for e in check_invariance(group))
    tref = [("a", catalog.get("trefoil-a").diagram), ("b", catalog.get("trefoil-b").diagram)]
    assert all(e.passed for e in check_invariance(tref))
    mixed = tref + [("fig8", catalog.get("figure-eight-a").diagram)]
    entries = {e.name: e for e in check_invariance(mixed)}
    assert not entries["invariance/delta"].passed
    assert "fig8" in entries["invariance/delta"].witness


def test_whole_catalog_passes():
    for report in verify_catalog():
        assert report.passed, (report.diagram, [c.name for c in report.failures()])


def test_report_json_sorted_and_shaped():
    report = verify_diagram(KINK, "kink")
    doc = json.loads(report.dumps())
    assert doc["diagram"] == "kink"
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert all(set(c) == {"name", "pass"} for c in doc["checks"])


def test_invalid_diagram_reports_failure():
    D = UprightDiagram.make([(1, 2, 1)], {})
    report = verify_diagram(D, "bad")
    assert not report.passed and report.checks[0].name == "valid"
