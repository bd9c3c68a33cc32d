"""Urban-micro street-canyon channel: LOS probability, path loss, link budget,
and slow log-normal shadowing as a correlated AR(1) process."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UL = "UL"
DL = "DL"

THERMAL_NOISE_DBM_PER_HZ = -174.0


@dataclass
class ChannelParams:
    fc_ghz: float
    bandwidth_hz: float
    tx_power_ue_dbm: float
    tx_power_enb_dbm: float
    noise_figure_db: float
    beamforming_gain_db: float
    shadow_sigma_los_db: float
    shadow_sigma_nlos_db: float
    shadow_update_period_ns: int
    shadow_corr: float
    shadowing_enabled: bool = True

    def __post_init__(self) -> None:
        if self.fc_ghz <= 0:
            raise ValueError("carrier frequency must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        if not 0.0 <= self.shadow_corr < 1.0:
            raise ValueError("shadow_corr must lie in [0, 1)")

    def noise_floor_dbm(self) -> float:
        return (
            THERMAL_NOISE_DBM_PER_HZ
            + 10.0 * math.log10(self.bandwidth_hz)
            + self.noise_figure_db
        )

    def shadow_sigma_db(self, los: bool) -> float:
        return self.shadow_sigma_los_db if los else self.shadow_sigma_nlos_db


@dataclass
class LinkState:
    """Quasi-static state of one node<->eNB link; the LOS draw is made once
    per run, only the shadowing term drifts."""

    distance_m: float
    los: bool
    shadow_db: float = 0.0


@dataclass(frozen=True)
class SnrSample:
    time_ns: int
    node_label: str
    direction: str
    snr_db: float


def los_probability(d: float) -> float:
    """LOS probability versus 2D/3D distance in meters; 1 for d <= 18 m."""
    if d <= 18.0:
        return 1.0
    decay = math.exp(-d / 36.0)
    return (18.0 / d) * (1.0 - decay) + decay


def draw_los(d: float, rng: np.random.Generator) -> bool:
    return bool(rng.uniform() < los_probability(d))


def path_loss_db(d: float, fc_ghz: float, los: bool) -> float:
    """Street-canyon path loss; distances below 1 m are clamped to 1 m.
    The NLOS branch is floored at the LOS value."""
    d = max(d, 1.0)
    pl_los = 32.4 + 21.0 * math.log10(d) + 20.0 * math.log10(fc_ghz)
    if los:
        return pl_los
    pl_nlos = 22.4 + 35.3 * math.log10(d) + 21.3 * math.log10(fc_ghz)
    return max(pl_los, pl_nlos)


def snr_db(link: LinkState, params: ChannelParams, direction: str) -> float:
    """Link budget: tx power + beamforming gain - path loss - shadowing -
    noise floor. UL transmits at UE power, DL at eNB power."""
    tx = params.tx_power_ue_dbm if direction == UL else params.tx_power_enb_dbm
    pl = path_loss_db(link.distance_m, params.fc_ghz, link.los)
    return tx + params.beamforming_gain_db - pl - link.shadow_db - params.noise_floor_dbm()


def init_shadowing(link: LinkState, params: ChannelParams, rng: np.random.Generator) -> None:
    """Stationary initial draw N(0, sigma^2) so the AR(1) process starts in
    its marginal distribution."""
    if not params.shadowing_enabled:
        link.shadow_db = 0.0
        return
    sigma = params.shadow_sigma_db(link.los)
    link.shadow_db = float(rng.normal(0.0, sigma))


def update_shadowing(link: LinkState, params: ChannelParams, rng: np.random.Generator) -> None:
    """One AR(1) step: s <- rho*s + sqrt(1-rho^2)*sigma*N(0,1); marginal
    variance stays sigma^2 for any rho in [0, 1)."""
    if not params.shadowing_enabled:
        return
    rho = params.shadow_corr
    sigma = params.shadow_sigma_db(link.los)
    noise = float(rng.normal(0.0, 1.0))
    link.shadow_db = rho * link.shadow_db + math.sqrt(1.0 - rho * rho) * sigma * noise
