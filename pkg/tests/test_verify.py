"""Cross-checking suites: reports, warnings, and failure collection."""

import json
from dataclasses import replace
from fractions import Fraction

import pytest

from rookalg.algebra import basis_enumerate
from rookalg.combinatorics import PartialInjection
from rookalg.errors import CapacityError
from rookalg.nupoly import NuPoly
from rookalg.oracle import BiinvariantElement, Context, gen_hole
from rookalg.tables import structure_table
from rookalg.verify import (
    VerificationReport,
    crosscheck_multi,
    crosscheck_structure,
    dimension_suite,
    gram_suite,
    limit_suite,
    monomial_images,
    relation_suite,
    semisimplicity_probe,
)


def test_report_shape():
    r = dimension_suite(2)
    assert isinstance(r, VerificationReport)
    assert r.passed
    assert r.status == "pass"
    assert r.summary_line().startswith("PASS dimensions")
    obj = r.to_json_obj()
    assert set(obj) == {
        "suite",
        "params",
        "status",
        "warnings",
        "counterexamples",
        "metrics",
    }
    assert "elapsed_s" in obj["metrics"]
    assert "elapsed_s" not in r.to_json_obj(include_timing=False)["metrics"]


def test_report_json_is_deterministic():
    a = dimension_suite(2).to_json_obj(include_timing=False)
    b = dimension_suite(2).to_json_obj(include_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    ra = relation_suite(2, 2).canonical_json(include_timing=False)
    rb = relation_suite(2, 2).canonical_json(include_timing=False)
    assert ra == rb


def test_dimension_suite_counts():
    r = dimension_suite(2)
    assert r.passed
    assert r.metrics["dimension"] == 7


def test_dimension_suite_capacity():
    with pytest.raises(CapacityError):
        dimension_suite(7)


@pytest.mark.parametrize("alpha,n", [(1, 1), (1, 2), (2, 2)])
def test_relation_suite_passes(alpha, n):
    r = relation_suite(alpha, n)
    assert r.passed
    assert r.metrics["failure_count"] == 0
    assert r.params == {"alpha": alpha, "n": n}


def test_relation_suite_flags_printed_size_formula():
    r = relation_suite(2, 2)
    assert r.passed
    assert len(r.warnings) == 1
    assert "(n!)^2/(n-r)!" in r.warnings[0]
    assert "authoritative" in r.warnings[0]


def test_relation_suite_checks_biinvariance_at_small_degree():
    r = relation_suite(2, 2)
    assert r.metrics["biinvariance_checked"] == 7


@pytest.mark.parametrize("alpha,n", [(1, 1), (1, 3), (2, 2)])
def test_crosscheck_structure_passes(alpha, n):
    r = crosscheck_structure(alpha, n)
    assert r.passed
    assert r.metrics["pairs"] == structure_table(alpha).dimension ** 2
    assert r.metrics["failure_count"] == 0


def test_crosscheck_dual_route_runs_at_small_degree():
    r = crosscheck_structure(1, 2)
    assert r.metrics["dual_route_pairs"] > 0


def test_crosscheck_detects_a_tampered_table():
    t = structure_table(1)
    bad_constants = dict(t.constants)
    bad_constants[(0, 1)] = ((0, NuPoly.one()),)
    bad_constants[(1, 0)] = ((0, NuPoly.one()),)
    bad_constants[(1, 1)] = ((0, NuPoly.one()),)
    bad = replace(t, constants=bad_constants)
    r = crosscheck_structure(1, 2, table=bad)
    assert not r.passed
    assert r.status == "fail"
    assert r.metrics["failure_count"] == 3
    assert len(r.counterexamples) == 3
    kinds = {c["kind"] for c in r.counterexamples}
    assert kinds == {"structure-mismatch"}
    assert r.summary_line().startswith("FAIL")


def test_counterexample_cap():
    t = structure_table(1)
    bad_constants = dict(t.constants)
    bad_constants[(0, 1)] = ((0, NuPoly.one()),)
    bad_constants[(1, 0)] = ((0, NuPoly.one()),)
    bad_constants[(1, 1)] = ((0, NuPoly.one()),)
    bad = replace(t, constants=bad_constants)
    r = crosscheck_structure(1, 2, table=bad, max_counterexamples=1)
    assert len(r.counterexamples) == 1
    # the count keeps tallying past the cap
    assert r.metrics["failure_count"] == 3


def test_crosscheck_multi_pins_the_degree():
    r = crosscheck_multi(1)
    assert r.passed
    assert r.metrics["degree_pinned"] is True
    assert r.params["ns"] == [1, 2]
    r2 = crosscheck_multi(2)
    assert r2.passed
    assert r2.metrics["degree_pinned"] is True
    assert r2.metrics["points"] == 3


def test_crosscheck_multi_warns_when_not_pinned():
    r = crosscheck_multi(2, ns=(2,))
    assert r.passed
    assert r.metrics["degree_pinned"] is False
    assert any("pin" in w for w in r.warnings)


@pytest.mark.parametrize("alpha", [1, 2])
def test_limit_suite(alpha):
    r = limit_suite(alpha)
    assert r.passed
    assert r.metrics["pairs"] == structure_table(alpha).dimension ** 2


def test_gram_suite():
    r = gram_suite(2)
    assert r.passed
    assert r.metrics["first_positive_definite_integer"] == 2
    # oracle agreement is checked at two integer points for the whole basis
    assert r.metrics["agreement_pairs"] == 98


def test_semisimplicity_probe_alpha1():
    r = semisimplicity_probe(1)
    assert r.passed
    assert r.metrics["det_degree"] == 1
    assert r.metrics["det_leading"] == "1/1"
    assert r.metrics["rational_roots"] == ["0/1"]


def test_semisimplicity_probe_alpha2():
    r = semisimplicity_probe(2)
    assert r.passed
    assert r.metrics["det_degree"] == 6
    assert r.metrics["rational_roots"] == ["0/1"] * 5 + ["1/1"]


def test_monomial_images():
    ctx = Context(2, 2)
    basis = basis_enumerate(2)
    imgs = monomial_images(basis, ctx)
    assert imgs[0] == BiinvariantElement.basis(ctx, PartialInjection.identity(2))
    assert imgs[2] == gen_hole(1, ctx)
    assert len(imgs) == 7
