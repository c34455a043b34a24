"""Radix-2 FFT and top-K amplitude spectral signatures of real signals."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError

__all__ = [
    "SpectralSignature",
    "fft",
    "ifft",
    "dft",
    "naive_dft",
    "extract_signature",
    "reconstruct_from_signature",
    "one_sided_spectrum",
]


# relative amplitude gap below which two bins are treated as tied
TIE_TOL = 1e-9

def _is_pow2(n):
    return n >= 2 and n & (n - 1) == 0


def _bit_reverse(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(x, sign):
    n = x.size
    out = x[_bit_reverse(n)].astype(np.complex128)
    m = 2
    while m <= n:
        half = m // 2
        w = np.exp(sign * 2j * np.pi * np.arange(half) / m)
        blocks = out.reshape(-1, m)
        top = blocks[:, :half].copy()
        bot = blocks[:, half:] * w
        blocks[:, :half] = top + bot
        blocks[:, half:] = top - bot
        m *= 2
    return out


def _check_pow2(x):
    x = np.asarray(x)
    if x.ndim != 1:
        raise ShapeError(f"signal must be 1-D, got shape {x.shape}")
    if not _is_pow2(x.size):
        raise ShapeError(f"FFT length must be a power of two >= 2, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("signal contains non-finite entries")
    return x


def fft(signal):
    """Forward DFT ``X_k = sum_n x_n exp(-2 pi i k n / N)``, unnormalized.

    Iterative Cooley-Tukey with a bit-reversal permutation. The length must
    be a power of two; pad explicitly before calling.
    """
    return _radix2(_check_pow2(signal), -1.0)


def ifft(spectrum):
    """Inverse of :func:`fft` (includes the ``1/N`` factor)."""
    x = _check_pow2(spectrum)
    return _radix2(x, 1.0) / x.size


def naive_dft(signal):
    """O(N^2) reference DFT, any length."""
    x = np.asarray(signal, dtype=np.complex128)
    n = x.size
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) @ x


def dft(signal):
    """DFT of arbitrary length built on the radix-2 kernel.

    Power-of-two lengths go straight to :func:`fft`; other lengths use
    Bluestein's chirp-z identity, which evaluates the exact length-N DFT
    as a zero-padded power-of-two circular convolution.
    """
    x = np.asarray(signal, dtype=np.complex128)
    if x.ndim != 1 or x.size < 1:
        raise ShapeError(f"signal must be a non-empty 1-D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("signal contains non-finite entries")
    n = x.size
    if n == 1:
        return x.copy()
    if _is_pow2(n):
        return _radix2(x, -1.0)
    # n^2 mod 2n keeps the chirp argument small for long signals
    k = np.arange(n)
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    m = 1 << (2 * n - 1).bit_length()
    a = np.zeros(m, dtype=np.complex128)
    a[:n] = x * chirp
    b = np.zeros(m, dtype=np.complex128)
    b[:n] = np.conj(chirp)
    b[m - n + 1:] = np.conj(chirp[1:])[::-1]
    conv = _radix2(_radix2(a, -1.0) * _radix2(b, -1.0), 1.0) / m
    return chirp * conv[:n]


@dataclass(frozen=True)
class SpectralSignature:
    """Top-k (frequency, amplitude, phase) triples, amplitude descending.

    ``entries`` has shape (k, 3). Each row describes the component
    ``amplitude * cos(2 pi frequency t + phase)``.
    """

    entries: np.ndarray
    sample_rate: float

    @property
    def k(self):
        return int(self.entries.shape[0])

    @property
    def frequencies(self):
        return self.entries[:, 0]

    @property
    def amplitudes(self):
        return self.entries[:, 1]

    @property
    def phases(self):
        return self.entries[:, 2]

    def flatten(self):
        """Row-major (f0, a0, p0, f1, a1, p1, ...) vector of length 3k."""
        return self.entries.reshape(-1).copy()

    @classmethod
    def from_flat(cls, values, sample_rate):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 1 or values.size % 3:
            raise ShapeError("flat signature length must be a multiple of 3")
        return cls(entries=values.reshape(-1, 3).copy(), sample_rate=float(sample_rate))


def _wrap_phase(phase):
    # map onto (-pi, pi]
    out = np.angle(np.exp(1j * phase))
    return np.where(out <= -np.pi, np.pi, out)


def one_sided_spectrum(signal, sample_rate):
    """Frequencies, amplitudes and phases of the one-sided spectrum.

    Amplitudes are ``2|X_j|/N`` except DC and (even N) Nyquist, which use
    ``|X_j|/N``, so a cosine of amplitude A at an exact bin reports A.
    """
    x = np.asarray(signal, dtype=np.float64)
    n = x.size
    spec = dft(x)
    nbins = n // 2 + 1
    amp = 2.0 * np.abs(spec[:nbins]) / n
    amp[0] /= 2.0
    if n % 2 == 0:
        amp[-1] /= 2.0
    freq = np.arange(nbins) * sample_rate / n
    phase = _wrap_phase(np.angle(spec[:nbins]))
    # sub-roundoff bins carry meaningless phase
    phase = np.where(amp > 1e-12 * max(amp.max(), 1e-300), phase, 0.0)
    return freq, amp, phase


def extract_signature(signal, sample_rate, k=10):
    """Keep the ``k`` largest-amplitude one-sided bins of ``signal``.

    The transform is the exact DFT of the sampled record (see :func:`dft`),
    so a tone sitting on a bin is reported with its true amplitude and
    phase. Amplitudes within a relative 1e-9 of each other are ties and go
    to the lower frequency.
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError(f"signal must be 1-D, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("signal contains non-finite entries")
    if sample_rate <= 0:
        raise DomainError(f"sample_rate must be positive, got {sample_rate}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if x.size < 2 * k:
        raise DomainError(f"signal length {x.size} is shorter than 2k = {2 * k}")
    freq, amp, phase = one_sided_spectrum(x, sample_rate)
    if k > freq.size:
        raise DomainError(f"k = {k} exceeds the {freq.size} one-sided bins")
    # amplitudes equal up to roundoff count as ties, broken by lower frequency
    top = amp.max()
    key = np.round(amp / (TIE_TOL * top)) if top > 0 else amp
    order = np.lexsort((freq, -key))[:k]
    entries = np.column_stack([freq[order], amp[order], phase[order]])
    return SpectralSignature(entries=entries, sample_rate=float(sample_rate))


def reconstruct_from_signature(sig, times):
    """Evaluate ``sum amplitude * cos(2 pi f t + phase)`` at ``times``."""
    t = np.asarray(times, dtype=np.float64)
    f, a, p = sig.frequencies, sig.amplitudes, sig.phases
    return np.cos(2.0 * np.pi * np.multiply.outer(t, f) + p) @ a
