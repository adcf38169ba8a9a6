# guardopt/spectrum.py
"""PSD estimation, adjacent-channel leakage measurement, and guard-band search.

Measurement chain: synthesize the full windowed stream on an oversampled time
grid (the base-rate Nyquist span cannot contain an adjacent victim band for
dense numerologies), estimate the PSD with an averaged periodogram, then
integrate leakage over the victim band.

Conventions:
- The occupied band edge sits half a subcarrier spacing beyond the outermost
  occupied subcarrier center (each subcarrier owns a one-spacing-wide slot).
- Welch segments carry a Hann weighting. A rectangular segment would impose a
  Fejer-kernel leakage floor around -46 dB, swamping the suppression levels
  the guard search has to resolve.
- The guard search scores suppression as a power-density ratio (victim-band
  mean density vs in-band mean density), so a threshold protects victims of
  any bandwidth; for equal-width victims it coincides with the plain
  integrated power ratio reported by measure_aci.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .numerology import NumerologyConfig, WindowSpec
from .waveform import symbol_stream


class ThetaUnreachableError(ValueError):
    """Requested suppression cannot be met within the PSD grid span."""


@dataclass(frozen=True)
class PsdEstimate:
    freqs: np.ndarray     # Hz, ascending, uniform
    power_db: np.ndarray  # relative power, mean over the occupied band = 0 dB
    obw_hz: float         # occupied bandwidth (n_occupied * spacing)
    band_edge_hz: float   # upper edge of the occupied band

    @property
    def resolution(self) -> float:
        return float(self.freqs[1] - self.freqs[0])

    def linear(self) -> np.ndarray:
        return 10.0 ** (self.power_db / 10.0)


@dataclass(frozen=True)
class AciReport:
    leak_power_db: float     # victim-band power relative to aggressor in-band
    achieved_sir_db: float   # -(leak_power_db) - po


def estimate_psd(
    stream: np.ndarray,
    cfg: NumerologyConfig,
    n_segments: int,
    segment_symbols: int = 4,
) -> PsdEstimate:
    """Averaged periodogram: Hann segments, 50% overlap, 4x zero-padded FFT.

    Segment length is segment_symbols * n_fft samples; the stream must hold
    n_segments * segment_len samples. Normalized so the mean level over the
    occupied band is exactly 0 dB.
    """
    if n_segments < 1:
        raise ValueError("n_segments must be positive")
    seg_len = segment_symbols * cfg.n_fft
    if stream.size < n_segments * seg_len:
        raise ValueError(
            f"stream too short: {stream.size} < {n_segments} x {seg_len}"
        )
    nfft = 4 * seg_len
    hop = seg_len // 2
    window = np.hanning(seg_len)
    acc = np.zeros(nfft)
    for i in range(n_segments):
        seg = stream[i * hop:i * hop + seg_len]
        spec = np.fft.fft(seg * window, n=nfft)
        acc += np.abs(spec) ** 2
    psd = np.fft.fftshift(acc) / n_segments
    freqs = np.fft.fftshift(np.fft.fftfreq(nfft, d=1.0 / cfg.sample_rate))
    edge = band_edge_hz(cfg)
    in_band = np.abs(freqs) <= edge
    psd /= psd[in_band].mean()
    # floor guards the log for deep nulls; well below any physical level here
    power_db = 10.0 * np.log10(np.maximum(psd, 1e-300))
    return PsdEstimate(
        freqs=freqs, power_db=power_db, obw_hz=cfg.obw_hz, band_edge_hz=edge
    )


def band_edge_hz(cfg: NumerologyConfig) -> float:
    """Upper occupied-band edge: outermost subcarrier center + half a slot."""
    half_hi = cfg.n_occupied - cfg.n_occupied // 2
    return (half_hi + 0.5) * cfg.subcarrier_spacing


def _cumulative_power(psd: PsdEstimate) -> np.ndarray:
    """Trapezoidal cumulative integral of the linear PSD over frequency."""
    p = psd.linear()
    mids = 0.5 * (p[1:] + p[:-1]) * psd.resolution
    return np.concatenate([[0.0], np.cumsum(mids)])


def _band_power(psd: PsdEstimate, cum: np.ndarray, f_lo: float, f_hi: float) -> float:
    if f_lo < psd.freqs[0] or f_hi > psd.freqs[-1]:
        raise ValueError(
            f"band [{f_lo:.3e}, {f_hi:.3e}] Hz exceeds PSD grid coverage"
        )
    lo, hi = np.interp([f_lo, f_hi], psd.freqs, cum)
    return float(hi - lo)


def measure_aci(
    aggressor_psd: PsdEstimate,
    guard_band: float,
    victim_obw: float,
    po: float,
) -> AciReport:
    """Integrate aggressor leakage over an adjacent victim band.

    The victim occupies [edge + guard_band, edge + guard_band + victim_obw]
    where edge is the aggressor's upper occupied-band edge; guard_band and
    victim_obw are in Hz, po in dB (positive = aggressor hotter).
    """
    if guard_band < 0:
        raise ValueError("guard_band must be non-negative")
    cum = _cumulative_power(aggressor_psd)
    edge = aggressor_psd.band_edge_hz
    in_band = _band_power(aggressor_psd, cum, -edge, edge)
    victim = _band_power(
        aggressor_psd, cum, edge + guard_band, edge + guard_band + victim_obw
    )
    leak_db = 10.0 * np.log10(victim / in_band)
    return AciReport(leak_power_db=leak_db, achieved_sir_db=-leak_db - po)


@functools.lru_cache(maxsize=256)
def windowed_psd(
    alpha: float,
    cfg: NumerologyConfig,
    n_symbols: int = 128,
    seed: int = 0,
    oversample: int = 4,
    segment_symbols: int = 32,
) -> PsdEstimate:
    """PSD of a random-QPSK windowed stream, synthesized oversampled.

    Cached per parameter tuple so guard searches across many thresholds reuse
    one estimate per (alpha, seed).
    """
    ocfg = cfg.oversampled(oversample)
    win = WindowSpec.for_config(alpha, ocfg)
    stream = symbol_stream(ocfg, win, n_symbols, seed)
    n_segments = stream.size // (segment_symbols * ocfg.n_fft)
    if n_segments < 1:
        raise ValueError("too few symbols for the requested segment length")
    return estimate_psd(stream, ocfg, n_segments, segment_symbols)


def suppression_db(
    psd: PsdEstimate, guard_band_hz: float, victim_obw_hz: float
) -> float:
    """Leakage suppression in dB: in-band mean density over victim mean density."""
    rep = measure_aci(psd, guard_band_hz, victim_obw_hz, 0.0)
    width_gain = 10.0 * np.log10((2 * psd.band_edge_hz) / victim_obw_hz)
    return -rep.leak_power_db - width_gain


def required_guard_band(
    alpha: float,
    theta: float,
    cfg: NumerologyConfig,
    seed: int = 0,
    n_symbols: int = 128,
    oversample: int = 4,
    segment_symbols: int = 32,
    victim_obw_hz: float | None = None,
    tol_subcarriers: float = 0.01,
) -> float:
    """Smallest guard band (subcarriers, fractional) achieving suppression >= theta.

    Suppression is the density-ratio metric of suppression_db against a
    worst-case one-subcarrier victim slot by default. Bisection over guard
    band on a Monte-Carlo PSD; raises ThetaUnreachableError when even the
    largest guard fitting the grid fails.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    psd = windowed_psd(alpha, cfg, n_symbols, seed, oversample, segment_symbols)
    victim = cfg.subcarrier_spacing if victim_obw_hz is None else victim_obw_hz
    cum = _cumulative_power(psd)
    edge = psd.band_edge_hz
    in_band_density = _band_power(psd, cum, -edge, edge) / (2 * edge)

    def suppression(gb_hz: float) -> float:
        victim_density = (
            _band_power(psd, cum, edge + gb_hz, edge + gb_hz + victim) / victim
        )
        return -10.0 * np.log10(max(victim_density / in_band_density, 1e-300))

    spacing = cfg.subcarrier_spacing
    gb_max = psd.freqs[-1] - edge - victim
    if gb_max < 0:
        raise ThetaUnreachableError("victim band alone exceeds the PSD grid span")
    if suppression(0.0) >= theta:
        return 0.0
    if suppression(gb_max) < theta:
        raise ThetaUnreachableError(
            f"theta={theta} dB unreachable at alpha={alpha} within the grid span"
        )
    lo, hi = 0.0, gb_max
    while (hi - lo) / spacing > tol_subcarriers:
        mid = 0.5 * (lo + hi)
        if suppression(mid) >= theta:
            hi = mid
        else:
            lo = mid
    return hi / spacing


def write_psd_csv(psd: PsdEstimate, path) -> None:
    """CSV trace: freq_hz, power_db."""
    with open(path, "w", newline="") as fh:
        fh.write("freq_hz,power_db\n")
        for f, p in zip(psd.freqs, psd.power_db):
            fh.write(f"{f:.6f},{p:.6f}\n")
