"""Scenario reports: kernel swap, free product twist, BS arithmetic, HNN scan."""

import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from freecomm import (
    BSElement,
    bs_element,
    bs_image_index,
    bs_inv,
    bs_mul,
    bs_psi,
    bs_report,
    free_product_twist,
    hnn_obstruction,
    hnn_report,
    iso_from_document,
    kernel_swap,
    parse_word,
    report_to_document,
    subgroup_from_document,
)

PAIR_SET = [(-1, 1), (1, -1)]


def check_row(report, name):
    for check in report.checks:
        if check.name == name:
            return check
    raise AssertionError(f"no check named {name!r}")


def test_kernel_swap_small():
    report = kernel_swap(2, 3)
    assert report.ok
    assert check_row(report, "failing generator").actual == 1
    assert check_row(report, "failing root exponent").actual == 3
    assert check_row(report, "root-free image word").actual == "b"
    assert check_row(report, "power is imprimitive in the ambient group with certificate").actual == 3


def test_kernel_swap_even_prime():
    report = kernel_swap(2, 2)
    assert report.ok
    assert check_row(report, "kernel index").actual == 2


def test_kernel_swap_rank_three():
    report = kernel_swap(3, 5)
    assert report.ok
    assert check_row(report, "kernel rank").actual == 11


def test_kernel_swap_validates_parameters():
    with pytest.raises(ValueError):
        kernel_swap(1, 3)
    with pytest.raises(ValueError):
        kernel_swap(2, 4)


def test_kernel_swap_objects_revalidate():
    report = kernel_swap(2, 3)
    kernel = subgroup_from_document(report.objects["kernel"])
    assert kernel.index() == 3
    swap = iso_from_document(report.objects["swap"])
    assert swap.domain == kernel


def test_twist_small():
    report = free_product_twist(2, 3)
    assert report.ok
    assert check_row(report, "twisted basis elements").actual == 2
    assert check_row(
        report, "non-extendability certificate against the splitting"
    ).actual is True


def test_twist_even_prime():
    assert free_product_twist(2, 2).ok


def test_twist_rank_three():
    report = free_product_twist(3, 3)
    assert report.ok
    assert check_row(report, "twisted basis elements").actual == 4


def test_twist_custom_b():
    report = free_product_twist(2, 3, b=parse_word("bb"))
    assert report.ok
    assert report.parameters["b"] == "bb"


def test_twist_rejects_bad_b():
    with pytest.raises(ValueError):
        free_product_twist(2, 3, b=parse_word("a"))
    with pytest.raises(ValueError):
        free_product_twist(2, 3, b=parse_word(""))


def test_bs_element_normalization():
    assert bs_element(4, 2, 0, 2) == bs_element(1, 0, 0, 2)
    assert bs_element(6, 1, 2, 2) == bs_element(3, 0, 2, 2)
    assert bs_element(0, 3, 1, 5) == bs_element(0, 0, 1, 5)
    with pytest.raises(ValueError):
        bs_element(1, 0, 0, 1)


def test_bs_defining_relation():
    for k in (2, 3, 6, -2):
        a = bs_element(1, 0, 0, k)
        t = bs_element(0, 0, 1, k)
        assert bs_mul(bs_mul(t, a), bs_inv(t)) == bs_element(k, 0, 0, k)


def test_bs_psi_examples():
    assert bs_psi(bs_element(1, 0, 0, 2), 3) == bs_element(3, 0, 0, 2)
    assert bs_image_index(2, 5) == 5
    assert bs_image_index(3, 7) == 7
    with pytest.raises(ValueError):
        bs_image_index(2, 6)
    with pytest.raises(ValueError):
        bs_image_index(6, 3)


bs_nums = st.integers(min_value=-200, max_value=200)
bs_exps = st.integers(min_value=0, max_value=5)
bs_ts = st.integers(min_value=-4, max_value=4)


@st.composite
def bs_elements(draw, k):
    return bs_element(draw(bs_nums), draw(bs_exps), draw(bs_ts), k)


@given(bs_elements(k=2), bs_elements(k=2), bs_elements(k=2))
def test_bs_group_laws(x, y, z):
    e = bs_element(0, 0, 0, 2)
    assert bs_mul(bs_mul(x, y), z) == bs_mul(x, bs_mul(y, z))
    assert bs_mul(x, bs_inv(x)) == e
    assert bs_mul(bs_inv(x), x) == e
    assert bs_mul(e, x) == x and bs_mul(x, e) == x


@given(bs_elements(k=-3), bs_elements(k=-3))
def test_bs_psi_homomorphism_negative_k(x, y):
    assert bs_psi(bs_mul(x, y), 5) == bs_mul(bs_psi(x, 5), bs_psi(y, 5))
    if x != y:
        assert bs_psi(x, 5) != bs_psi(y, 5)


def test_bs_report_examples():
    report = bs_report(2, 5, samples=200)
    assert report.ok
    assert check_row(report, "image index").actual == 5
    assert bs_report(-2, 3, samples=100).ok


def test_hnn_odd_solutions_frozen():
    assert hnn_obstruction(3, 20) == PAIR_SET
    assert hnn_obstruction(5, 20) == PAIR_SET
    assert hnn_obstruction(7, 12) == PAIR_SET


def test_hnn_even_solutions_frozen():
    # even exponent sums are symmetric polynomials with no unit values
    assert hnn_obstruction(4, 50) == []
    assert hnn_obstruction(6, 30) == []
    assert hnn_obstruction(8, 30) == []


def test_hnn_validates_parameters():
    with pytest.raises(ValueError):
        hnn_obstruction(2, 10)
    with pytest.raises(ValueError):
        hnn_obstruction(3, 0)


def test_hnn_matches_closed_form_oracle():
    # independent evaluation through the geometric-series closed form
    for n in (3, 4, 5, 6):
        expected = []
        for l in range(-12, 13):
            for r in range(-12, 13):
                if l == 0 or r == 0 or math.gcd(l, r) != 1:
                    continue
                total = n * l ** (n - 1) if l == r else (l**n - r**n) // (l - r)
                if abs(total) == 1:
                    expected.append((l, r))
        assert hnn_obstruction(n, 12) == sorted(expected)


@given(st.integers(min_value=3, max_value=9), st.integers(min_value=1, max_value=15))
@settings(deadline=None, max_examples=40)
def test_hnn_negation_symmetry(n, bound):
    found = set(hnn_obstruction(n, bound))
    assert found == {(-l, -r) for l, r in found}


def test_hnn_report_is_self_validating():
    assert hnn_report(3, 20).ok
    assert hnn_report(4, 20).ok


def test_report_document_shape():
    report = kernel_swap(2, 3)
    doc = report_to_document(report)
    assert list(doc.keys()) == ["scenario", "parameters", "objects", "checks", "ok"]
    assert doc["ok"] is True
    for row in doc["checks"]:
        assert list(row.keys()) == ["name", "expected", "actual", "pass"]
    # serializable and deterministic
    assert json.dumps(doc) == json.dumps(report_to_document(kernel_swap(2, 3)))


def test_report_document_serializes_bs_values():
    doc = report_to_document(bs_report(2, 3, samples=10))
    text = json.dumps(doc)
    assert "denom_exp" in text
    reloaded = json.loads(text)
    assert reloaded["ok"] is True
