"""Discrete Fourier transforms of arbitrary length, a quadratic oracle,
and the decimation-in-frequency split that maps even/odd output bins of a
length-(q-1) transform onto two length-(q-1)/2 transforms.

Conventions: the forward sum is Spectrum[j] = sum_k e(sign*j*k/N) x[k] with
e(t) = exp(2*pi*i*t), unnormalized.  sign=-1 matches the usual engineering
DFT; sign=+1 is its unnormalized inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NAIVE_LENGTH_LIMIT = 10_000


@dataclass(frozen=True)
class Spectrum:
    """DFT output with an explicit exponent-sign convention.

    decimated=True marks half-length spectra whose bin t corresponds to the
    full-length bin 2t (even branch) or 2t+1 (odd branch).
    """

    values: np.ndarray = field(repr=False)
    sign: int
    decimated: bool = False

    @property
    def length(self) -> int:
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]


@dataclass(frozen=True)
class DIFPair:
    """The two half-length input sequences of the decimation split."""

    b_seq: np.ndarray = field(repr=False)
    c_seq: np.ndarray = field(repr=False)


def _check_sign(sign: int) -> None:
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")


def dft(x, sign: int = -1, decimated: bool = False) -> Spectrum:
    """Unnormalized transform sum_k e(sign*j*k/N) x[k], O(N log N).

    Arbitrary N is handled by the pocketfft backend (mixed-radix kernels
    with a Bluestein chirp fallback for large prime factors).
    """
    _check_sign(sign)
    x = np.asarray(x)
    if len(x) < 1:
        raise ValueError("empty input")
    if sign == -1:
        values = np.fft.fft(x)
    else:
        values = np.fft.ifft(x) * len(x)
    return Spectrum(values=values, sign=sign, decimated=decimated)


def naive_dft(x, sign: int = -1, decimated: bool = False) -> Spectrum:
    """Direct O(N^2) evaluation of the defining sum; the test oracle.

    Guarded to N <= 10^4 so it cannot sneak into production paths.
    """
    _check_sign(sign)
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    if n < 1:
        raise ValueError("empty input")
    if n > NAIVE_LENGTH_LIMIT:
        raise ValueError(f"naive_dft limited to N <= {NAIVE_LENGTH_LIMIT}")
    jk = np.outer(np.arange(n), np.arange(n))
    w = np.exp(sign * 2j * np.pi * (jk % n) / n)
    return Spectrum(values=w @ x, sign=sign, decimated=decimated)


def dif_split(f_vals, sign: int = -1) -> DIFPair:
    """Split f_vals (indexed by k, length q-1) for decimation in frequency.

    b_seq[k] = f[k] + f[k+m] feeds the even output bins: dft(b)[t] equals
    the full-spectrum bin 2t.  c_seq[k] = e(sign*k/(q-1))*(f[k] - f[k+m])
    feeds the odd bins: dft(c)[t] equals bin 2t+1.
    """
    _check_sign(sign)
    f = np.asarray(f_vals)
    n = len(f)
    if n % 2 != 0:
        raise ValueError(f"input length must be even, got {n}")
    m = n // 2
    b = f[:m] + f[m:]
    twiddle = np.exp(sign * 2j * np.pi * np.arange(m) / n)
    c = twiddle * (f[:m] - f[m:])
    return DIFPair(b_seq=b, c_seq=c)
