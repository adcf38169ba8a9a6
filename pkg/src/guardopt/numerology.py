# guardopt/numerology.py
"""Fixed waveform parameters and unit conversions.

Conventions:
- Durations are stored in samples internally; seconds are a presentation
  conversion only (keeps guard bookkeeping exact).
- sample_rate is always derived as n_fft * subcarrier_spacing.
- Occupied subcarriers are center-aligned around DC, DC unused.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def round_half_up(x: float) -> int:
    """Deterministic round-half-up (0.5 always goes up, on every platform)."""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class NumerologyConfig:
    """Fixed W-OFDM grid parameters (LTE-like defaults, all overridable)."""

    n_fft: int = 1024
    n_occupied: int = 600
    subcarrier_spacing: float = 15e3  # Hz
    t_cp_ch: int = 72  # channel CP, samples

    def __post_init__(self):
        if self.n_fft <= 0:
            raise ValueError("n_fft must be positive")
        if self.n_occupied <= 0 or self.n_occupied > self.n_fft:
            raise ValueError("n_occupied must be in [1, n_fft]")
        if self.subcarrier_spacing <= 0:
            raise ValueError("subcarrier_spacing must be positive")
        if self.t_cp_ch < 0 or self.t_cp_ch >= self.n_fft:
            raise ValueError("t_cp_ch must be in [0, n_fft)")

    @property
    def sample_rate(self) -> float:
        """Hz; derived, never stored."""
        return self.n_fft * self.subcarrier_spacing

    @property
    def obw_hz(self) -> float:
        """Occupied bandwidth in Hz."""
        return self.n_occupied * self.subcarrier_spacing

    def oversampled(self, factor: int) -> "NumerologyConfig":
        """Same physical waveform on a denser time grid (for spectral analysis).

        Subcarrier spacing and the occupied set are unchanged; FFT size and
        channel CP scale with the factor so all durations in seconds match.
        """
        if factor < 1:
            raise ValueError("oversample factor must be >= 1")
        return NumerologyConfig(
            n_fft=self.n_fft * factor,
            n_occupied=self.n_occupied,
            subcarrier_spacing=self.subcarrier_spacing,
            t_cp_ch=self.t_cp_ch * factor,
        )

    @classmethod
    def from_mapping(cls, m) -> "NumerologyConfig":
        """Build from config-file keys (n_fft, n_occupied, subcarrier_spacing_hz,
        t_cp_ch_samples); missing keys fall back to defaults."""
        d = cls()
        return cls(
            n_fft=int(m.get("n_fft", d.n_fft)),
            n_occupied=int(m.get("n_occupied", d.n_occupied)),
            subcarrier_spacing=float(m.get("subcarrier_spacing_hz", d.subcarrier_spacing)),
            t_cp_ch=int(m.get("t_cp_ch_samples", d.t_cp_ch)),
        )


@dataclass(frozen=True)
class WindowSpec:
    """Roll-off factor and the windowing guard duration it implies."""

    alpha: float
    t_cp_win: int  # samples

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if self.t_cp_win < 0:
            raise ValueError("t_cp_win must be non-negative")
        if self.alpha == 0.0 and self.t_cp_win != 0:
            raise ValueError("alpha = 0 implies t_cp_win = 0")

    @classmethod
    def for_config(cls, alpha: float, cfg: NumerologyConfig) -> "WindowSpec":
        """Taper length = round(alpha * (n_fft + t_cp_ch)), round-half-up."""
        return cls(alpha=alpha, t_cp_win=round_half_up(alpha * (cfg.n_fft + cfg.t_cp_ch)))


def samples_to_duration(n: int, cfg: NumerologyConfig) -> float:
    """Sample count -> seconds."""
    return n / cfg.sample_rate


def subcarriers_to_bandwidth(k: float, cfg: NumerologyConfig) -> float:
    """Subcarrier count (may be fractional) -> Hz."""
    if k < 0:
        raise ValueError("subcarrier count must be non-negative")
    return k * cfg.subcarrier_spacing
