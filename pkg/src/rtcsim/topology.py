"""Node placement on the square evaluation plane and DRN-LCO pairing."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import StreamFactory

ENB_HEIGHT_M = 10.0
UE_HEIGHT_M = 1.5

# Role codes used in RNG stream keys; stable across runs and pair counts.
ROLE_ENB = 0
ROLE_DRN = 1
ROLE_LCO = 2


@dataclass(frozen=True)
class Position:
    x: float
    y: float
    z: float = 0.0


@dataclass(frozen=True)
class Deployment:
    """eNB plus equally many DRNs and LCOs; DRN i is paired with LCO i."""

    enb: Position
    drns: tuple[Position, ...]
    lcos: tuple[Position, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.drns)


def distance_3d(a: Position, b: Position) -> float:
    return math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))


def _draw_position(streams: StreamFactory, role: int, index: int, side: float) -> Position:
    rng = streams.stream(role, index, "placement")
    x = float(rng.uniform(0.0, side))
    y = float(rng.uniform(0.0, side))
    return Position(x, y, UE_HEIGHT_M)


def deployment_csv(deployment: Deployment) -> str:
    """CSV dump (node_id, role, x, y, z) for plotting a deployment."""
    lines = ["node_id,role,x,y,z"]
    e = deployment.enb
    lines.append(f"eNB,enb,{e.x:.3f},{e.y:.3f},{e.z:.3f}")
    for i, p in enumerate(deployment.drns):
        lines.append(f"DRN{i + 1},drn,{p.x:.3f},{p.y:.3f},{p.z:.3f}")
    for i, p in enumerate(deployment.lcos):
        lines.append(f"LCO{i + 1},lco,{p.x:.3f},{p.y:.3f},{p.z:.3f}")
    return "\n".join(lines) + "\n"


def place_random(n_pairs: int, side: float, streams: StreamFactory) -> Deployment:
    """Uniform i.i.d. DRN/LCO placement on [0, side]^2, eNB at the plane
    center. Each node draws from its own stream keyed by (role, index), so a
    deployment of n pairs is a prefix of any deployment of m > n pairs."""
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    if side <= 0:
        raise ValueError(f"plane side must be positive, got {side}")
    enb = Position(side / 2.0, side / 2.0, ENB_HEIGHT_M)
    drns = tuple(_draw_position(streams, ROLE_DRN, i, side) for i in range(n_pairs))
    lcos = tuple(_draw_position(streams, ROLE_LCO, i, side) for i in range(n_pairs))
    return Deployment(enb=enb, drns=drns, lcos=lcos)
