import math

import pytest

from app.core.exceptions import SamplingParameterError
from app.mcvol import estimate, evaluate_witness, stream
from app.models import Box, Cell, Domain, Polynomial
from app.services.verification_service import calibration_failures, homomorphism_failures, scale_failures
from app.witness import make_algebraic, negate, scale

SAMPLES = 50_000


def _close(mean, stderr, target):
    return abs(mean - target) <= 4 * stderr


def test_pi_estimate(pi):
    result = estimate(pi.re_pos, SAMPLES, seed=0)
    assert result.stderr > 0
    assert _close(result.mean, result.stderr, math.pi)


def test_interval_is_exact():
    result = evaluate_witness(make_algebraic(2), 5_000, seed=1)
    assert result.re.mean == pytest.approx(2.0)
    assert result.re.stderr == 0.0


def test_estimates_are_deterministic(pi):
    first = evaluate_witness(pi, 20_000, seed=9)
    second = evaluate_witness(pi, 20_000, seed=9)
    assert first == second


def test_worker_count_does_not_change_the_result(pi):
    serial = estimate(pi.re_pos, 20_000, seed=4, batch_size=3_000, workers=1)
    threaded = estimate(pi.re_pos, 20_000, seed=4, batch_size=3_000, workers=3)
    assert serial == threaded


def test_streams_are_independent():
    a = stream(0, 0, 0).random(4)
    assert (a != stream(0, 1, 0).random(4)).all()
    assert (a != stream(0, 0, 1).random(4)).all()
    assert (a != stream(1, 0, 0).random(4)).all()
    assert (a == stream(0, 0, 0).random(4)).all()


def test_signed_buckets(pi):
    neg = evaluate_witness(negate(pi), SAMPLES, seed=2)
    assert _close(neg.re.mean, neg.re.stderr, -math.pi)
    assert neg.buckets["re_pos"].mean == 0.0

    rotated = evaluate_witness(scale((0, 1), pi), SAMPLES, seed=2)
    assert rotated.re.mean == 0.0 and rotated.re.stderr == 0.0
    assert _close(rotated.im.mean, rotated.im.stderr, math.pi)


def test_zero_volume_box():
    x = Polynomial.variable(1, 0)
    flat = Domain.of(Cell.build(Box.of((0, 0)), x))
    result = estimate(flat, 2_000, seed=0)
    assert result.mean == 0.0 and result.stderr == 0.0


def test_sampling_parameters(pi):
    with pytest.raises(SamplingParameterError):
        estimate(pi.re_pos, 999, seed=0)
    with pytest.raises(SamplingParameterError):
        estimate(pi.re_pos, 5_000, seed=0, batch_size=-1)


@pytest.mark.slow
def test_gallery_values(gallery):
    for seed, w in gallery:
        result = evaluate_witness(w, 200_000, seed=5)
        assert _close(result.re.mean, result.re.stderr, seed.value), seed.name
        assert result.im.mean == 0.0


def test_two_sigma_calibration(pi):
    inside = 0
    for seed in range(50):
        r = evaluate_witness(pi, 4_000, seed=seed).re
        inside += abs(r.mean - math.pi) <= 2 * r.stderr
    assert inside >= 43
    assert calibration_failures(seed=11, samples=4_000) == []


def test_dropping_a_constraint_never_shrinks_the_estimate(gallery):
    for index, (_, w) in enumerate(gallery):
        for cell in w.re_pos:
            full = estimate(Domain.of(cell), 5_000, seed=index)
            for k in range(len(cell.constraints)):
                relaxed = estimate(Domain.of(cell.without(k)), 5_000, seed=index)
                assert relaxed.mean >= full.mean


def test_products_and_sums_of_estimates():
    # half, pi, log2
    assert homomorphism_failures(seed=3, samples=20_000, pairs=[(0, 2), (2, 2), (2, 3)]) == []


@pytest.mark.slow
def test_gallery_ring_homomorphism():
    assert homomorphism_failures(seed=3, samples=20_000) == []


def test_scale_invariance(rng):
    seed = int(rng.integers(1_000))
    assert scale_failures(seed=seed, samples=20_000, draws=6) == []
