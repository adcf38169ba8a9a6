# guardopt/optimizer.py
"""Joint guard-band / guard-duration optimization by grid search over alpha.

Each roll-off candidate implies a guard duration (windowing taper) and the
guard band still needed to hit the interference threshold; the winner
maximizes the time-frequency efficiency product. Ties break toward smaller
alpha (less time-domain overhead).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .numerology import NumerologyConfig, round_half_up
from .parallel import parallel_map
from .spectrum import (
    ThetaUnreachableError,
    required_guard_band,
    suppression_db,
    windowed_psd,
)

DEFAULT_ALPHA_GRID = tuple(round(0.005 * i, 3) for i in range(41))  # 0 .. 0.2
DEFAULT_THETA_LIST = (20.0, 25.0, 30.0, 35.0, 40.0, 45.0)

LOOKUP_COLUMNS = (
    "theta_db,alpha,gd_samples,gd_us,gb_subcarriers,gb_hz,eta_time,eta_freq,eta"
)


@dataclass(frozen=True)
class GuardAllocation:
    alpha: float
    gd_samples: int
    gb_subcarriers: float
    eta_time: float
    eta_freq: float
    eta: float
    theta_db: float


def spectral_efficiency(
    gd_samples: int, gb_subcarriers: float, cfg: NumerologyConfig
) -> tuple[float, float, float]:
    """(eta_time, eta_freq, eta): symbol-time share and occupied-band share.

    eta_time = T_ofdm / (T_ofdm + T_cp_ch + T_cp_win), in samples;
    eta_freq = OBW / (OBW + 2 * GB); eta is their product.
    """
    if gd_samples < 0 or gb_subcarriers < 0:
        raise ValueError("guards must be non-negative")
    eta_time = cfg.n_fft / (cfg.n_fft + cfg.t_cp_ch + gd_samples)
    eta_freq = cfg.n_occupied / (cfg.n_occupied + 2 * gb_subcarriers)
    return eta_time, eta_freq, eta_time * eta_freq


def _allocation_for_alpha(
    alpha: float, theta: float, cfg: NumerologyConfig, seed: int
) -> GuardAllocation | None:
    try:
        gb = required_guard_band(alpha, theta, cfg, seed=seed)
    except ThetaUnreachableError:
        return None
    gd = round_half_up(alpha * (cfg.n_fft + cfg.t_cp_ch))
    eta_time, eta_freq, eta = spectral_efficiency(gd, gb, cfg)
    return GuardAllocation(
        alpha=alpha,
        gd_samples=gd,
        gb_subcarriers=gb,
        eta_time=eta_time,
        eta_freq=eta_freq,
        eta=eta,
        theta_db=theta,
    )


def efficiency_curve(
    theta: float,
    cfg: NumerologyConfig,
    alpha_grid=DEFAULT_ALPHA_GRID,
    seed: int = 0,
) -> list[GuardAllocation]:
    """One allocation per reachable alpha, in grid order."""
    if not alpha_grid:
        raise ValueError("alpha_grid must be non-empty")
    allocs = parallel_map(
        lambda a: _allocation_for_alpha(a, theta, cfg, seed), alpha_grid
    )
    curve = [a for a in allocs if a is not None]
    if not curve:
        raise ThetaUnreachableError(
            f"theta={theta} dB unreachable at every alpha in the grid"
        )
    return curve


def optimize_guards(
    theta: float,
    cfg: NumerologyConfig,
    alpha_grid=DEFAULT_ALPHA_GRID,
    seed: int = 0,
) -> GuardAllocation:
    """Max-eta allocation over the alpha grid; ties go to the smaller alpha."""
    curve = efficiency_curve(theta, cfg, alpha_grid, seed)
    return max(curve, key=lambda a: (a.eta, -a.alpha))


class LookupTable:
    """theta -> optimal GuardAllocation, with reasons for any absent entries."""

    def __init__(self, entries: dict[float, GuardAllocation], failures=None):
        self.entries = dict(sorted(entries.items()))
        self.failures: dict[float, str] = dict(failures or {})

    @property
    def thetas(self) -> list[float]:
        return list(self.entries)

    def ceil_lookup(self, theta: float) -> GuardAllocation:
        """Entry at the smallest table theta >= the request (conservative)."""
        for t, alloc in self.entries.items():
            if t >= theta - 1e-9:
                return alloc
        raise KeyError(
            f"theta={theta:.2f} dB exceeds the lookup table maximum "
            f"({max(self.entries):.2f} dB)"
        )

    def save_csv(self, path, cfg: NumerologyConfig) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(LOOKUP_COLUMNS + "\n")
            for t, a in self.entries.items():
                gd_us = a.gd_samples / cfg.sample_rate * 1e6
                gb_hz = a.gb_subcarriers * cfg.subcarrier_spacing
                fh.write(
                    f"{t:.6g},{a.alpha:.6g},{a.gd_samples},{gd_us:.6f},"
                    f"{a.gb_subcarriers:.6f},{gb_hz:.6f},"
                    f"{a.eta_time:.8f},{a.eta_freq:.8f},{a.eta:.8f}\n"
                )

    @classmethod
    def load_csv(cls, path) -> "LookupTable":
        entries = {}
        with open(path, newline="") as fh:
            header = fh.readline().strip()
            if header != LOOKUP_COLUMNS:
                raise ValueError(f"unexpected lookup-table header: {header!r}")
            for line in fh:
                v = line.strip().split(",")
                theta = float(v[0])
                eta_time, eta_freq, eta = float(v[6]), float(v[7]), float(v[8])
                entries[theta] = GuardAllocation(
                    alpha=float(v[1]),
                    gd_samples=int(v[2]),
                    gb_subcarriers=float(v[4]),
                    eta_time=eta_time,
                    eta_freq=eta_freq,
                    eta=eta,
                    theta_db=theta,
                )
        return cls(entries)


def build_lookup_table(
    theta_list,
    cfg: NumerologyConfig,
    alpha_grid=DEFAULT_ALPHA_GRID,
    seed: int = 0,
) -> LookupTable:
    """Optimal allocation per threshold; failures recorded, not raised."""
    theta_list = list(theta_list)
    if not theta_list:
        raise ValueError("theta_list must be non-empty")
    if sorted(theta_list) != theta_list:
        raise ValueError("theta_list must be sorted ascending")
    entries, failures = {}, {}
    for theta in theta_list:
        try:
            entries[theta] = optimize_guards(theta, cfg, alpha_grid, seed)
        except ThetaUnreachableError as exc:
            failures[theta] = str(exc)
    return LookupTable(entries, failures)


def revalidate(table: LookupTable, cfg: NumerologyConfig, seed: int = 0) -> dict:
    """Re-check each entry's suppression through the spectrum path.

    Returns theta -> achieved suppression (dB) at the tabulated guard band.
    """
    out = {}
    for theta, a in table.entries.items():
        psd = windowed_psd(a.alpha, cfg, seed=seed)
        out[theta] = suppression_db(
            psd, a.gb_subcarriers * cfg.subcarrier_spacing, cfg.subcarrier_spacing
        )
    return out


def config_fingerprint(cfg: NumerologyConfig, alpha_grid, theta_list, seed) -> str:
    """Content hash keying a persisted lookup table to its build inputs."""
    payload = json.dumps(
        {
            "n_fft": cfg.n_fft,
            "n_occupied": cfg.n_occupied,
            "subcarrier_spacing": cfg.subcarrier_spacing,
            "t_cp_ch": cfg.t_cp_ch,
            "alpha_grid": list(alpha_grid),
            "theta_list": list(theta_list),
            "seed": seed,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:12]
