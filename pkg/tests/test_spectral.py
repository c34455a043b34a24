import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from podsurge.errors import DomainError, ShapeError
from podsurge.spectral import (
    SpectralSignature,
    dft,
    extract_signature,
    fft,
    ifft,
    naive_dft,
    one_sided_spectrum,
    reconstruct_from_signature,
)


def oracle_dft(x):
    # independent O(N^2) sum written directly from the definition
    n = len(x)
    out = []
    for k in range(n):
        re = im = 0.0
        for j, v in enumerate(x):
            ang = -2.0 * np.pi * k * j / n
            re += v * np.cos(ang)
            im += v * np.sin(ang)
        out.append(complex(re, im))
    return np.array(out)


def test_fft_dc():
    np.testing.assert_allclose(fft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-15)


def test_fft_pure_tone():
    out = fft([1, 0, -1, 0])
    assert abs(out[1]) == pytest.approx(2.0)
    assert abs(out[0]) < 1e-15 and abs(out[2]) < 1e-15


def test_fft_matches_oracle_length_64(rng):
    x = rng.normal(size=64)
    assert np.max(np.abs(fft(x) - oracle_dft(x))) < 1e-9


def test_naive_dft_matches_definition(rng):
    x = rng.normal(size=12)
    assert np.max(np.abs(naive_dft(x) - oracle_dft(x))) < 1e-10


def test_fft_many_random_signals(rng):
    lengths = [4, 8, 16, 32, 64, 128, 256, 512, 1024]
    for i in range(200):
        n = lengths[i % len(lengths)]
        x = rng.normal(size=n)
        assert np.max(np.abs(fft(x) - naive_dft(x))) < 1e-9


@pytest.mark.parametrize("n", [1, 3, 6, 100])
def test_fft_rejects_non_power_of_two(n):
    with pytest.raises(ShapeError):
        fft(np.ones(n))


def test_fft_rejects_non_finite():
    with pytest.raises(DomainError):
        fft([1.0, np.nan])


@pytest.mark.parametrize("n", [2, 4, 64, 4096])
def test_parseval(rng, n):
    x = rng.normal(size=n)
    lhs = np.sum(x**2)
    rhs = np.sum(np.abs(fft(x)) ** 2) / n
    assert abs(lhs - rhs) <= 1e-9 * lhs


def test_inverse_round_trip(rng):
    x = rng.normal(size=256)
    assert np.max(np.abs(ifft(fft(x)).real - x)) < 1e-9


@pytest.mark.parametrize("n", [5, 7, 12, 100, 200, 999])
def test_dft_any_length_matches_naive(rng, n):
    x = rng.normal(size=n)
    assert np.max(np.abs(dft(x) - naive_dft(x))) < 1e-9 * max(1.0, n / 64)


def test_sine_signature():
    t = np.arange(200) / 100.0
    sig = extract_signature(np.sin(2 * np.pi * 5 * t), 100.0, k=1)
    f, a, p = sig.entries[0]
    assert abs(f - 5.0) <= 0.5
    assert abs(a - 1.0) <= 0.02
    assert abs(p + np.pi / 2) <= 0.1


def test_constant_signature():
    sig = extract_signature(np.full(32, 3.5), 10.0, k=1)
    np.testing.assert_allclose(sig.entries[0], [0.0, 3.5, 0.0], atol=1e-12)


def test_two_tone_ordering():
    t = np.arange(256) / 256.0
    x = 1.0 * np.cos(2 * np.pi * 10 * t) + 2.0 * np.cos(2 * np.pi * 30 * t)
    sig = extract_signature(x, 256.0, k=2)
    np.testing.assert_allclose(sig.frequencies, [30.0, 10.0])
    np.testing.assert_allclose(sig.amplitudes, [2.0, 1.0], atol=1e-12)


def test_equal_amplitude_tie_goes_to_lower_frequency():
    t = np.arange(64) / 64.0
    x = np.cos(2 * np.pi * 9 * t) + np.cos(2 * np.pi * 3 * t)
    sig = extract_signature(x, 64.0, k=2)
    np.testing.assert_allclose(sig.frequencies, [3.0, 9.0])


def test_signature_invariants(rng):
    x = rng.normal(size=300)
    sig = extract_signature(x, 50.0, k=10)
    assert sig.k == 10
    assert np.all(np.diff(sig.amplitudes) <= 1e-9 * sig.amplitudes[0])
    assert np.all((sig.frequencies >= 0) & (sig.frequencies <= 25.0))
    assert np.all((sig.phases > -np.pi) & (sig.phases <= np.pi))


def test_signature_errors():
    with pytest.raises(DomainError):
        extract_signature(np.ones(10), 10.0, k=6)  # length < 2k
    with pytest.raises(DomainError):
        extract_signature(np.ones(10), 0.0, k=1)
    with pytest.raises(ShapeError):
        extract_signature(np.ones((2, 5)), 1.0, k=1)


def test_one_sided_amplitudes_nyquist():
    x = np.array([1.0, -1.0] * 4)
    f, a, _ = one_sided_spectrum(x, 8.0)
    assert f[-1] == 4.0 and a[-1] == pytest.approx(1.0)


def test_sine_round_trip():
    t = np.arange(200) / 100.0
    x = np.sin(2 * np.pi * 5 * t)
    y = reconstruct_from_signature(extract_signature(x, 100.0, k=1), t)
    assert np.linalg.norm(x - y) / np.linalg.norm(x) < 0.03


def test_dc_only_reconstruction():
    sig = SpectralSignature(np.array([[0.0, 2.5, 0.0]]), 10.0)
    np.testing.assert_allclose(reconstruct_from_signature(sig, np.linspace(0, 1, 7)), 2.5)


def test_truncation_error_matches_discarded_energy():
    from podsurge.datagen import CaseSpec, SyntheticFieldModel, average_nu, inlet_velocity, synthesize_nu_field

    case = CaseSpec(4.0, 50.0, 12.0)
    t = np.arange(100) / (50.0 * 100)
    curve = average_nu(synthesize_nu_field(SyntheticFieldModel(), inlet_velocity(case, t)))
    rate = 5000.0
    sig = extract_signature(curve, rate, k=10)
    err = np.linalg.norm(curve - reconstruct_from_signature(sig, t)) / np.linalg.norm(curve)
    # Parseval: mean-square of the kept one-sided components vs the total
    _, amp, _ = one_sided_spectrum(curve, rate)
    power = amp**2 / 2
    power[0] = amp[0] ** 2
    power[-1] = amp[-1] ** 2
    kept = np.sort(power)[::-1][:10].sum()
    discarded = np.sqrt(max(power.sum() - kept, 0.0) / power.sum())
    assert err <= discarded + 1e-9


def test_signature_flat_round_trip(rng):
    sig = extract_signature(rng.normal(size=40), 20.0, k=5)
    back = SpectralSignature.from_flat(sig.flatten(), 20.0)
    assert np.array_equal(back.entries, sig.entries)
    with pytest.raises(ShapeError):
        SpectralSignature.from_flat(np.ones(4), 1.0)


def test_fft_runtime_budget(rng):
    start = time.perf_counter()
    for n in (4, 16, 64, 256, 1024) * 40:
        fft(rng.normal(size=n))
    assert time.perf_counter() - start < 5.0


@given(arrays(np.float64, st.sampled_from([2, 4, 8, 16, 32, 64]),
              elements=st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)))
def test_fft_property_matches_naive(x):
    scale = max(1.0, np.max(np.abs(x)))
    assert np.max(np.abs(fft(x) - naive_dft(x))) <= 1e-12 * scale * x.size


@given(arrays(np.float64, st.sampled_from([2, 8, 32, 128, 512]),
              elements=st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)))
def test_parseval_property(x):
    lhs = np.sum(x**2)
    rhs = np.sum(np.abs(fft(x)) ** 2) / x.size
    assert abs(lhs - rhs) <= 1e-9 * max(lhs, 1e-300)


@given(st.integers(1, 15), st.integers(0, 63))
def test_time_shift_keeps_frequencies_and_amplitudes(bin_, shift):
    n = 64
    t = np.arange(n)
    x = 2.0 * np.cos(2 * np.pi * bin_ * t / n + 0.3) + 0.5 * np.cos(2 * np.pi * (bin_ + 7) * t / n)
    a = extract_signature(x, float(n), k=2)
    b = extract_signature(np.roll(x, shift), float(n), k=2)
    np.testing.assert_allclose(a.frequencies, b.frequencies)
    np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-10)
    # circular shift by `shift` samples advances the phase by -2 pi f shift / n
    expect = np.angle(np.exp(1j * (a.phases - 2 * np.pi * a.frequencies * shift / n)))
    np.testing.assert_allclose(np.exp(1j * b.phases), np.exp(1j * expect), atol=1e-9)
