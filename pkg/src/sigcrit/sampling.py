"""Uniform-grid time signals and FFT-ordered spectra, with CSV serialization.

Values are written with 17 significant digits so that a CSV round trip is
bit-exact for doubles.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


def _require_power_of_two(n: int) -> None:
    if n < 16 or n & (n - 1):
        raise ValueError(f"grid length must be a power of two >= 16, got {n}")


@dataclass(frozen=True)
class SampledSignal:
    """Samples on the uniform grid {t0 + j*dt : 0 <= j < N}.

    Values may be real (a signal or an envelope) or complex (an analytic
    representation).  Instances are immutable; operations return new objects.
    """

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values))
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        _require_power_of_two(len(v))
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not np.iscomplexobj(v):
            v = v.astype(float)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.values))

    def with_values(self, values: np.ndarray) -> "SampledSignal":
        return replace(self, values=values)

    def to_csv(self, path) -> None:
        """Write `t,value` rows (or `t,re,im` for complex values)."""
        t = self.times()
        with open(path, "w", encoding="utf-8") as fh:
            if self.is_complex:
                fh.write("t,re,im\n")
                for ti, vi in zip(t, self.values):
                    fh.write(f"{ti:.17g},{vi.real:.17g},{vi.imag:.17g}\n")
            else:
                fh.write("t,value\n")
                for ti, vi in zip(t, self.values):
                    fh.write(f"{ti:.17g},{vi:.17g}\n")

    @classmethod
    def from_csv(cls, path) -> "SampledSignal":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        t = data[:, 0]
        if data.shape[1] == 3:
            values = data[:, 1] + 1j * data[:, 2]
        else:
            values = data[:, 1]
        dt = float(np.mean(np.diff(t)))
        return cls(t0=float(t[0]), dt=dt, values=values)


@dataclass(frozen=True)
class Spectrum:
    """Complex amplitudes on the FFT bin grid of a SampledSignal.

    Bin k holds the approximation of F(omega_k) where omega_k runs over the
    signed FFT frequencies (positive bins first, then negative).  When
    ``t0_referenced`` is true the linear phase produced by the grid origin has
    been compensated, i.e. phases are relative to absolute time t = 0.
    """

    d_omega: float
    values: np.ndarray
    t0: float
    dt: float
    t0_referenced: bool = True

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex))
        _require_power_of_two(len(v))
        if not self.d_omega > 0:
            raise ValueError("d_omega must be positive")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    def omegas(self) -> np.ndarray:
        """Signed angular frequencies in FFT bin order (rad / time unit)."""
        return 2.0 * np.pi * np.fft.fftfreq(len(self.values), d=self.dt)

    @property
    def nyquist(self) -> float:
        return np.pi / self.dt

    def is_conjugate_symmetric(self, rtol: float = 1e-10) -> bool:
        v = self.values
        mirrored = np.conj(np.roll(v[::-1], 1))  # bin -k for each k
        scale = np.max(np.abs(v))
        if scale == 0:
            return True
        return float(np.max(np.abs(v - mirrored))) <= rtol * scale

    def to_csv(self, path) -> None:
        """Write `omega,re,im` rows in increasing signed omega."""
        w = self.omegas()
        order = np.argsort(w)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("omega,re,im\n")
            for i in order:
                fh.write(
                    f"{w[i]:.17g},{self.values[i].real:.17g},{self.values[i].imag:.17g}\n"
                )

    @classmethod
    def from_csv(cls, path, t0: float = 0.0, t0_referenced: bool = True) -> "Spectrum":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        w = data[:, 0]
        values = data[:, 1] + 1j * data[:, 2]
        n = len(w)
        d_omega = float(np.mean(np.diff(w)))
        dt = 2.0 * np.pi / (n * d_omega)
        # rows are sorted by signed omega; restore FFT bin order
        fft_order = np.argsort(np.argsort(2.0 * np.pi * np.fft.fftfreq(n, d=dt)))
        return cls(
            d_omega=d_omega,
            values=values[fft_order],
            t0=t0,
            dt=dt,
            t0_referenced=t0_referenced,
        )
