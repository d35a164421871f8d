import numpy as np
import pytest

from sp2curv import (
    MetricDeformation,
    SpElement,
    TangentPlane,
    bracket,
    classify_plane,
    measure_sigma,
    random_admissible_metric,
    run_baseline_suite,
    run_lemma0_suite,
    run_oracle_suite,
    sample_commuting_plane,
    special_plane,
    verify_lemma1,
    verify_theorem1,
    verify_wilking,
    verify_wilking_inequalities,
    wilking_pair,
)
from sp2curv.algebra import E1, E2

from conftest import element


# ---- oracle suite ----


def test_oracle_suite_passes():
    report = run_oracle_suite(5, 300)
    assert report.passed
    assert report.max_bracket_error <= 1e-12
    assert report.inner_ratio == pytest.approx(2.0, abs=1e-13)
    assert report.inner_ratio_spread < 1e-12


def test_oracle_suite_catches_corrupted_bracket():
    def corrupted(x, y):
        out = bracket(x, y).data.copy()
        out[3] += 1e-9
        return SpElement.from_array(out)

    report = run_oracle_suite(5, 50, bracket_fn=corrupted)
    assert not report.passed
    assert report.max_bracket_error > 1e-12


def test_oracle_suite_rejects_bad_counts():
    with pytest.raises(ValueError):
        run_oracle_suite(5, 0)


# ---- plane sampling ----


def test_sample_commuting_plane_is_deterministic():
    a, fam_a, kind_a = sample_commuting_plane(3, 17)
    b, fam_b, kind_b = sample_commuting_plane(3, 17)
    np.testing.assert_array_equal(a.rows(), b.rows())
    assert (fam_a, kind_a) == (fam_b, kind_b)


def test_sample_commuting_plane_mix():
    kinds = set()
    for i in range(30):
        plane, family, kind = sample_commuting_plane(6, i)
        rows = plane.rows()
        x = SpElement.from_array(rows[0])
        y = SpElement.from_array(rows[1])
        resid = np.abs(bracket(x, y).data).max()
        assert resid <= 1e-10 * max(1.0, np.abs(rows).max())
        assert family in ("F1", "F2", "F3", "F4")
        kinds.add(kind)
        if i % 5 == 4:
            assert kind in ("transverse", "centralizer", "on_orbit")
        else:
            assert kind == "uniform"
    assert kinds == {"uniform", "transverse", "centralizer", "on_orbit"}


def test_sample_commuting_plane_family_override():
    for i in range(8):
        _, family, kind = sample_commuting_plane(6, i, family="F3")
        assert family == "F3"
        assert kind == "uniform"
    with pytest.raises(ValueError):
        sample_commuting_plane(6, 0, family="F9")


def test_sample_commuting_plane_adversarial_only():
    kinds = {sample_commuting_plane(6, i, adversarial_only=True)[2]
             for i in range(15)}
    assert kinds == {"transverse", "centralizer", "on_orbit"}


# ---- classification ----


def test_classify_special_plane():
    label, special, distance, c2, c3 = classify_plane(special_plane())
    assert label == "DEGENERATE_CUBIC"
    assert special
    assert distance < 1e-10
    assert abs(c2) <= 1e-10
    assert c3 == pytest.approx(-1.0, abs=1e-12)


def test_classify_generic_plane():
    plane, _, _ = sample_commuting_plane(9, 1)
    label, special, _, c2, _ = classify_plane(plane)
    assert label == "GENERIC_POSITIVE"
    assert not special
    assert c2 > 1e-10


def test_classify_rejects_non_commuting():
    plane = TangentPlane(element(u=E1), element(u=E2))
    with pytest.raises(ValueError):
        classify_plane(plane)


def test_measured_sigma_is_negative():
    sigma, c3 = measure_sigma()
    assert sigma == -1
    assert c3 == -1.0


# ---- jet vanishing across deformations ----


def test_lemma0_suite_passes():
    report = run_lemma0_suite(3, samples=60, deformations=6)
    assert report.passed
    assert report.max_abs_c0 <= 1e-10
    assert report.max_abs_c1 <= 1e-10
    assert report.min_c2 >= -1e-10
    assert report.max_closed_form_gap <= 1e-10


# ---- dichotomy sweep ----


def test_lemma1_small_run():
    report = verify_lemma1(7, 150)
    assert report.passed
    assert report.violations == []
    assert report.samples == 150
    assert report.min_generic_c2 > 1e-10
    assert report.max_special_abs_c2 <= 1e-10
    assert report.max_special_c3_defect <= 1e-8
    assert set(report.kind_counts) == {"uniform", "transverse",
                                       "centralizer", "on_orbit"}
    for verdict in report.verdicts:
        if verdict.kind == "on_orbit":
            assert verdict.classification == "DEGENERATE_CUBIC"
            assert abs(abs(verdict.c3) - 1.0) <= 1e-8
        if verdict.classification == "DEGENERATE_CUBIC":
            assert verdict.special_orbit


def test_lemma1_family_restriction():
    report = verify_lemma1(7, 40, family="F4")
    assert report.passed
    assert set(report.family_counts) == {"F4"}


def test_lemma1_adversarial_only():
    report = verify_lemma1(7, 45, adversarial_only=True)
    assert report.passed
    assert "uniform" not in report.kind_counts
    assert report.classification_counts.get("DEGENERATE_CUBIC", 0) > 0


# ---- deformed positivity ----


def test_theorem1_small_run():
    report = verify_theorem1(11, n_samples=80)
    assert report.passed
    assert report.sigma == -1
    assert report.cubic_coefficient == pytest.approx(-1.0, abs=1e-12)
    assert {scan.t for scan in report.scans} == {-0.001, -0.01}
    for scan in report.scans:
        assert scan.positive
        assert scan.min_k > 0
    assert report.opposite_sign_t == 0.01
    assert report.opposite_sign_k < 0
    # Frontier carries the sign of sigma and reaches past the scan range;
    # the grid ends before the positivity window does.
    assert report.frontier_t <= -0.1
    assert any(not entry[2] for entry in report.frontier)


def test_theorem1_accepts_zero_t():
    report = verify_theorem1(11, n_samples=30, t_values=(0.0, 0.001))
    assert report.passed
    flat = [scan for scan in report.scans if scan.t == 0.0]
    assert len(flat) == 1
    assert abs(flat[0].min_k) <= 1e-12


# ---- nonpositive planes for every metric ----


def test_wilking_identity_metric():
    metric = MetricDeformation(np.eye(3), np.zeros((3, 3)),
                               np.eye(3)).as_metric()
    cert = wilking_pair(metric)
    assert cert.case_tag == "u_eigenvector"
    assert cert.smallest_eigenvalue == pytest.approx(1.0, abs=1e-12)
    assert abs(cert.k_value) <= 1e-12
    assert verify_wilking_inequalities(metric, cert)


def test_wilking_aligned_branch():
    metric = MetricDeformation(1.5 * np.eye(3), np.zeros((3, 3)),
                               np.diag([0.8, 1.0, 1.2])).as_metric()
    cert = wilking_pair(metric)
    assert cert.case_tag == "vw_aligned"
    assert cert.smallest_eigenvalue == pytest.approx(0.8, abs=1e-12)
    assert abs(cert.k_value) <= 1e-12
    assert verify_wilking_inequalities(metric, cert)


def test_wilking_generic_branch_on_random_metric():
    triple = random_admissible_metric(np.random.default_rng(11))
    metric = triple.as_metric()
    cert = wilking_pair(metric)
    assert cert.k_value <= 1e-10
    assert verify_wilking_inequalities(metric, cert)


def test_wilking_rejects_tampered_certificate():
    triple = random_admissible_metric(np.random.default_rng(11))
    metric = triple.as_metric()
    cert = wilking_pair(metric)
    bad = cert._replace(y=tuple(1.1 * t for t in cert.y))
    assert not verify_wilking_inequalities(metric, bad)


def test_wilking_population():
    report = verify_wilking(7, 25)
    assert report.passed
    assert report.failures == []
    assert report.max_k_value <= 1e-10
    assert report.max_commutator_residual <= 1e-10
    assert sum(report.case_counts.values()) == 25


# ---- flat baseline ----


def test_baseline_small_run():
    report = run_baseline_suite(7, 200)
    assert report.passed
    assert report.min_k >= -1e-12
    assert report.max_commuting_k <= 1e-12
