"""Experiment configuration: flat `key = value` text with dotted keys,
defaults resolved per backhaul technology, strict rejection of unknown keys,
and a canonical echo for the reproducibility manifest."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .apps import MODE_ONE_SHOT, MODE_PERIODIC, EcServerParams, TrafficProfile
from .channel import ChannelParams
from .core import NS_PER_MS
from .radio import FrameConfig, lte_frame, mmwave_frame

LTE = "lte"
MMWAVE = "mmwave"

TAG_AT_TSN_EVENT = "tsn_event"
TAG_AT_DRN_INGRESS = "drn_ingress"

DEFAULT_N_PAIRS = [1] + list(range(10, 121, 10))


class ConfigError(ValueError):
    def __init__(self, key: str, message: str, line: int | None = None):
        where = f" (line {line})" if line else ""
        super().__init__(f"config key '{key}'{where}: {message}")
        self.key = key
        self.line = line


@dataclass(frozen=True)
class ScenarioConfig:
    backhaul: str
    n_pairs_list: tuple[int, ...]
    payload_bytes: int
    runs_per_point: int
    root_seed: int
    sim_duration_ns: int
    epsilon_ns: int
    t_rfid_ns: int
    t_rfid_max_ns: int | None
    tag_at: str
    rco_core_delay_ns: int | None
    plane_side_m: float
    queue_cap_bytes: int
    traffic: TrafficProfile
    ec: EcServerParams
    channel: ChannelParams
    frame: FrameConfig


def _cast_int(text: str) -> int:
    return int(text, 0)


def _cast_float(text: str) -> float:
    return float(text)


def _cast_ms(text: str) -> int:
    return int(round(float(text) * NS_PER_MS))


def _cast_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("on", "true", "yes", "1"):
        return True
    if lowered in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"expected on/off, got {text!r}")


def _cast_int_list(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty list")
    return tuple(int(p) for p in parts)


def _cast_optional(cast: Callable[[str], Any]) -> Callable[[str], Any]:
    def inner(text: str) -> Any:
        return None if text.lower() in ("", "none") else cast(text)

    return inner


def _enum(*allowed: str) -> Callable[[str], str]:
    def inner(text: str) -> str:
        if text not in allowed:
            raise ValueError(f"expected one of {', '.join(allowed)}; got {text!r}")
        return text

    return inner


def _check_positive(v: Any) -> str | None:
    return None if v is None or v > 0 else "must be positive"


def _check_non_negative(v: Any) -> str | None:
    return None if v is None or v >= 0 else "must be non-negative"


def _check_at_least_one(v: Any) -> str | None:
    return None if v >= 1 else "must be at least 1"


def _check_pairs(v: tuple[int, ...]) -> str | None:
    return None if all(n >= 1 for n in v) else "pair counts must be >= 1"


def _check_seed(v: int) -> str | None:
    return None if 0 <= v < 2**64 else "must fit in 64 bits"


def _check_corr(v: float) -> str | None:
    return None if 0.0 <= v < 1.0 else "must lie in [0, 1)"


@dataclass(frozen=True)
class _Key:
    name: str
    cast: Callable[[str], Any]
    default: Callable[[str], Any]  # backhaul -> default value
    check: Callable[[Any], str | None] = lambda v: None


def _fixed(value: Any) -> Callable[[str], Any]:
    return lambda backhaul: value


def _by_backhaul(lte_value: Any, mmwave_value: Any) -> Callable[[str], Any]:
    return lambda backhaul: lte_value if backhaul == LTE else mmwave_value


_KEYS: tuple[_Key, ...] = (
    _Key("backhaul", _enum(LTE, MMWAVE), _fixed(MMWAVE)),
    _Key("n_pairs_list", _cast_int_list, _fixed(tuple(DEFAULT_N_PAIRS)), _check_pairs),
    _Key("payload_bytes", _cast_int, _fixed(1024), _check_non_negative),
    _Key("runs_per_point", _cast_int, _fixed(5), _check_at_least_one),
    _Key("root_seed", _cast_int, _fixed(42), _check_seed),
    _Key("sim_duration_ms", _cast_ms, _fixed(10_000 * NS_PER_MS), _check_positive),
    _Key("epsilon_ms", _cast_ms, _fixed(50 * NS_PER_MS), _check_positive),
    _Key("t_rfid_ms", _cast_ms, _fixed(int(2.5 * NS_PER_MS)), _check_non_negative),
    _Key("t_rfid_max_ms", _cast_optional(_cast_ms), _fixed(None), _check_non_negative),
    _Key("tag_at", _enum(TAG_AT_TSN_EVENT, TAG_AT_DRN_INGRESS), _fixed(TAG_AT_TSN_EVENT)),
    _Key("rco_core_delay_ms", _cast_optional(_cast_ms), _fixed(None), _check_non_negative),
    _Key("plane_side_m", _cast_float, _fixed(100.0), _check_positive),
    _Key("queue_cap_bytes", _cast_int, _fixed(1_000_000), _check_at_least_one),
    _Key("traffic.mode", _enum(MODE_PERIODIC, MODE_ONE_SHOT), _fixed(MODE_PERIODIC)),
    _Key("traffic.period_ms", _cast_ms, _fixed(100 * NS_PER_MS), _check_positive),
    _Key("traffic.start_jitter_ms", _cast_optional(_cast_ms), _fixed(None), _check_non_negative),
    _Key("ec.service_time_ms", _cast_ms, _fixed(0), _check_non_negative),
    _Key("ec.queue_capacity", _cast_int, _fixed(10_000), _check_at_least_one),
    _Key("channel.fc_ghz", _cast_float, _by_backhaul(2.1, 28.0), _check_positive),
    _Key("channel.bandwidth_hz", _cast_float, _by_backhaul(20e6, 1e9), _check_positive),
    _Key("channel.tx_power_ue_dbm", _cast_float, _fixed(23.0)),
    _Key("channel.tx_power_enb_dbm", _cast_float, _by_backhaul(43.0, 30.0)),
    _Key("channel.noise_figure_db", _cast_float, _fixed(5.0)),
    _Key("channel.beamforming_gain_db", _cast_float, _by_backhaul(0.0, 20.0)),
    _Key("channel.shadow_sigma_los_db", _cast_float, _fixed(4.0), _check_non_negative),
    _Key("channel.shadow_sigma_nlos_db", _cast_float, _fixed(7.82), _check_non_negative),
    _Key("channel.shadow_update_period_ms", _cast_ms, _fixed(100 * NS_PER_MS), _check_positive),
    _Key("channel.shadow_corr", _cast_float, _fixed(0.9), _check_corr),
    _Key("channel.shadowing", _cast_bool, _fixed(True)),
    _Key("frame.n_rb", _cast_int, _fixed(12), _check_at_least_one),
    _Key("frame.control_overhead_symbols", _cast_int, _by_backhaul(3, 2), _check_non_negative),
    _Key("frame.ul_access_delay_ms", _cast_ms, _by_backhaul(9 * NS_PER_MS, 100_000), _check_non_negative),
    _Key("frame.min_tti_symbols", _cast_int, _fixed(1), _check_at_least_one),
)

_KEY_BY_NAME = {k.name: k for k in _KEYS}


def _parse_lines(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line.split()[0], "expected 'key = value'", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEY_BY_NAME:
            raise ConfigError(key, "unknown key", lineno)
        if key in entries:
            raise ConfigError(key, f"duplicate (first set on line {entries[key][1]})", lineno)
        entries[key] = (value, lineno)
    return entries


def _resolve(entries: dict[str, tuple[str, int]]) -> dict[str, Any]:
    def value_of(key: _Key, backhaul: str) -> Any:
        if key.name in entries:
            text, lineno = entries[key.name]
            try:
                value = key.cast(text)
            except ValueError as exc:
                raise ConfigError(key.name, str(exc), lineno) from None
        else:
            value, lineno = key.default(backhaul), None
        error = key.check(value)
        if error:
            raise ConfigError(key.name, error, lineno)
        return value

    backhaul = value_of(_KEY_BY_NAME["backhaul"], MMWAVE)
    return {k.name: value_of(k, backhaul) for k in _KEYS}


def _build(values: dict[str, Any]) -> ScenarioConfig:
    t_rfid = values["t_rfid_ms"]
    t_rfid_max = values["t_rfid_max_ms"]
    if t_rfid_max is not None and t_rfid_max < t_rfid:
        raise ConfigError("t_rfid_max_ms", "must be >= t_rfid_ms")

    mode = values["traffic.mode"]
    jitter = values["traffic.start_jitter_ms"]
    if jitter is None:
        jitter = values["traffic.period_ms"] if mode == MODE_PERIODIC else 0
    traffic = TrafficProfile(
        mode=mode,
        period_ns=values["traffic.period_ms"],
        payload_bytes=values["payload_bytes"],
        start_jitter_ns=jitter,
    )
    ec = EcServerParams(
        service_time_ns=values["ec.service_time_ms"],
        queue_capacity=values["ec.queue_capacity"],
    )
    channel = ChannelParams(
        fc_ghz=values["channel.fc_ghz"],
        bandwidth_hz=values["channel.bandwidth_hz"],
        tx_power_ue_dbm=values["channel.tx_power_ue_dbm"],
        tx_power_enb_dbm=values["channel.tx_power_enb_dbm"],
        noise_figure_db=values["channel.noise_figure_db"],
        beamforming_gain_db=values["channel.beamforming_gain_db"],
        shadow_sigma_los_db=values["channel.shadow_sigma_los_db"],
        shadow_sigma_nlos_db=values["channel.shadow_sigma_nlos_db"],
        shadow_update_period_ns=values["channel.shadow_update_period_ms"],
        shadow_corr=values["channel.shadow_corr"],
        shadowing_enabled=values["channel.shadowing"],
    )
    try:
        if values["backhaul"] == LTE:
            frame = lte_frame(
                n_rb=values["frame.n_rb"],
                control_overhead_symbols=values["frame.control_overhead_symbols"],
                ul_access_delay_ns=values["frame.ul_access_delay_ms"],
            )
        else:
            frame = mmwave_frame(
                control_overhead_symbols=values["frame.control_overhead_symbols"],
                ul_access_delay_ns=values["frame.ul_access_delay_ms"],
                min_tti_symbols=values["frame.min_tti_symbols"],
                n_rb=values["frame.n_rb"],
            )
    except ValueError as exc:
        raise ConfigError("frame.control_overhead_symbols", str(exc)) from None

    return ScenarioConfig(
        backhaul=values["backhaul"],
        n_pairs_list=values["n_pairs_list"],
        payload_bytes=values["payload_bytes"],
        runs_per_point=values["runs_per_point"],
        root_seed=values["root_seed"],
        sim_duration_ns=values["sim_duration_ms"],
        epsilon_ns=values["epsilon_ms"],
        t_rfid_ns=t_rfid,
        t_rfid_max_ns=t_rfid_max,
        tag_at=values["tag_at"],
        rco_core_delay_ns=values["rco_core_delay_ms"],
        plane_side_m=values["plane_side_m"],
        queue_cap_bytes=values["queue_cap_bytes"],
        traffic=traffic,
        ec=ec,
        channel=channel,
        frame=frame,
    )


def load_config(path: str | Path | None, overrides: dict[str, str] | None = None) -> ScenarioConfig:
    """Parse a config file (None means all defaults), apply CLI-style string
    overrides on top, and return the fully resolved scenario."""
    text = Path(path).read_text(encoding="utf-8") if path is not None else ""
    entries = _parse_lines(text)
    for key, value in (overrides or {}).items():
        if key not in _KEY_BY_NAME:
            raise ConfigError(key, "unknown key")
        entries[key] = (value, entries.get(key, ("", 0))[1] or 0)
    return _build(_resolve(entries))


def _format_value(key: str, value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "on" if value else "off"
    if key.endswith("_ms"):
        return f"{value / NS_PER_MS:g}"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def render_config(cfg: ScenarioConfig) -> str:
    """Canonical echo of a resolved config, parseable by load_config."""
    jitter: Any = cfg.traffic.start_jitter_ns
    values: dict[str, Any] = {
        "backhaul": cfg.backhaul,
        "n_pairs_list": cfg.n_pairs_list,
        "payload_bytes": cfg.payload_bytes,
        "runs_per_point": cfg.runs_per_point,
        "root_seed": cfg.root_seed,
        "sim_duration_ms": cfg.sim_duration_ns,
        "epsilon_ms": cfg.epsilon_ns,
        "t_rfid_ms": cfg.t_rfid_ns,
        "t_rfid_max_ms": cfg.t_rfid_max_ns,
        "tag_at": cfg.tag_at,
        "rco_core_delay_ms": cfg.rco_core_delay_ns,
        "plane_side_m": cfg.plane_side_m,
        "queue_cap_bytes": cfg.queue_cap_bytes,
        "traffic.mode": cfg.traffic.mode,
        "traffic.period_ms": cfg.traffic.period_ns,
        "traffic.start_jitter_ms": jitter,
        "ec.service_time_ms": cfg.ec.service_time_ns,
        "ec.queue_capacity": cfg.ec.queue_capacity,
        "channel.fc_ghz": cfg.channel.fc_ghz,
        "channel.bandwidth_hz": cfg.channel.bandwidth_hz,
        "channel.tx_power_ue_dbm": cfg.channel.tx_power_ue_dbm,
        "channel.tx_power_enb_dbm": cfg.channel.tx_power_enb_dbm,
        "channel.noise_figure_db": cfg.channel.noise_figure_db,
        "channel.beamforming_gain_db": cfg.channel.beamforming_gain_db,
        "channel.shadow_sigma_los_db": cfg.channel.shadow_sigma_los_db,
        "channel.shadow_sigma_nlos_db": cfg.channel.shadow_sigma_nlos_db,
        "channel.shadow_update_period_ms": cfg.channel.shadow_update_period_ns,
        "channel.shadow_corr": cfg.channel.shadow_corr,
        "channel.shadowing": cfg.channel.shadowing_enabled,
        "frame.n_rb": cfg.frame.n_rb,
        "frame.control_overhead_symbols": cfg.frame.control_overhead_symbols,
        "frame.ul_access_delay_ms": cfg.frame.ul_access_delay_ns,
        "frame.min_tti_symbols": cfg.frame.min_tti_symbols,
    }
    return "\n".join(f"{k} = {_format_value(k, v)}" for k, v in values.items()) + "\n"
