import pytest

from rtcsim.config import (
    DEFAULT_N_PAIRS,
    ConfigError,
    load_config,
    render_config,
)
from rtcsim.core import NS_PER_MS


def _write(tmp_path, text):
    path = tmp_path / "scenario.conf"
    path.write_text(text, encoding="utf-8")
    return path


def test_empty_file_resolves_all_defaults(tmp_path):
    cfg = load_config(_write(tmp_path, ""))
    assert cfg.backhaul == "mmwave"
    assert list(cfg.n_pairs_list) == DEFAULT_N_PAIRS == [1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120]
    assert cfg.payload_bytes == 1024
    assert cfg.runs_per_point == 5
    assert cfg.sim_duration_ns == 10_000 * NS_PER_MS
    assert cfg.epsilon_ns == 50 * NS_PER_MS
    assert cfg.t_rfid_ns == int(2.5 * NS_PER_MS)
    assert cfg.tag_at == "tsn_event"
    assert cfg.rco_core_delay_ns is None


def test_none_path_is_defaults():
    assert load_config(None) == load_config(None)


def test_mmwave_defaults():
    cfg = load_config(None)
    assert cfg.channel.fc_ghz == 28.0
    assert cfg.channel.bandwidth_hz == 1e9
    assert cfg.channel.beamforming_gain_db == 20.0
    assert cfg.frame.symbols_per_subframe == 24
    assert cfg.frame.subframe_ns == 100_000
    assert cfg.frame.ul_access_delay_ns == 100_000


def test_lte_defaults():
    cfg = load_config(None, {"backhaul": "lte"})
    assert cfg.channel.fc_ghz == 2.1
    assert cfg.channel.bandwidth_hz == 20e6
    assert cfg.channel.beamforming_gain_db == 0.0
    assert cfg.frame.symbols_per_subframe == 14
    assert cfg.frame.n_rb == 12
    assert cfg.frame.ul_access_delay_ns == 9 * NS_PER_MS


def test_payload_override(tmp_path):
    cfg = load_config(_write(tmp_path, "payload_bytes = 5120\n"))
    assert cfg.payload_bytes == 5120
    assert cfg.traffic.payload_bytes == 5120


def test_zero_pairs_rejected(tmp_path):
    with pytest.raises(ConfigError, match="n_pairs_list"):
        load_config(_write(tmp_path, "n_pairs_list = 0\n"))


def test_unknown_key_names_key_and_line(tmp_path):
    text = "payload_bytes = 64\nspeed = 11\n"
    with pytest.raises(ConfigError, match=r"'speed' \(line 2\)"):
        load_config(_write(tmp_path, text))


def test_type_mismatch_names_key(tmp_path):
    with pytest.raises(ConfigError, match="payload_bytes"):
        load_config(_write(tmp_path, "payload_bytes = lots\n"))


def test_duplicate_key_rejected(tmp_path):
    with pytest.raises(ConfigError, match="duplicate"):
        load_config(_write(tmp_path, "payload_bytes = 1\npayload_bytes = 2\n"))


def test_comments_and_dotted_keys(tmp_path):
    text = """
# scenario two
backhaul = lte        # the classical network
channel.fc_ghz = 2.6
traffic.period_ms = 50
"""
    cfg = load_config(_write(tmp_path, text))
    assert cfg.backhaul == "lte"
    assert cfg.channel.fc_ghz == 2.6
    assert cfg.traffic.period_ns == 50 * NS_PER_MS


def test_jitter_defaults_follow_mode(tmp_path):
    periodic = load_config(None)
    assert periodic.traffic.start_jitter_ns == periodic.traffic.period_ns
    one_shot = load_config(_write(tmp_path, "traffic.mode = one_shot\n"))
    assert one_shot.traffic.start_jitter_ns == 0


def test_overrides_beat_file(tmp_path):
    path = _write(tmp_path, "payload_bytes = 512\nbackhaul = lte\n")
    cfg = load_config(path, {"payload_bytes": "5120"})
    assert cfg.payload_bytes == 5120
    assert cfg.backhaul == "lte"


def test_backhaul_override_switches_defaults(tmp_path):
    cfg = load_config(_write(tmp_path, ""), {"backhaul": "lte"})
    assert cfg.channel.fc_ghz == 2.1


def test_t_rfid_window_validation(tmp_path):
    cfg = load_config(_write(tmp_path, "t_rfid_ms = 1\nt_rfid_max_ms = 5\n"))
    assert cfg.t_rfid_ns == NS_PER_MS and cfg.t_rfid_max_ns == 5 * NS_PER_MS
    with pytest.raises(ConfigError, match="t_rfid_max_ms"):
        load_config(_write(tmp_path, "t_rfid_ms = 5\nt_rfid_max_ms = 1\n"))


def test_shadow_corr_constraint(tmp_path):
    with pytest.raises(ConfigError, match="shadow_corr"):
        load_config(_write(tmp_path, "channel.shadow_corr = 1.0\n"))


def test_control_overhead_constraint(tmp_path):
    with pytest.raises(ConfigError, match="control_overhead"):
        load_config(_write(tmp_path, "frame.control_overhead_symbols = 24\n"))


def test_missing_equals_is_diagnosed(tmp_path):
    with pytest.raises(ConfigError, match="expected 'key = value'"):
        load_config(_write(tmp_path, "backhaul mmwave\n"))


def test_render_round_trips(tmp_path):
    original = load_config(None, {"backhaul": "lte", "payload_bytes": "512", "root_seed": "7"})
    echoed = _write(tmp_path, render_config(original))
    assert load_config(echoed) == original


def test_rco_delay_parses(tmp_path):
    cfg = load_config(_write(tmp_path, "rco_core_delay_ms = 20\n"))
    assert cfg.rco_core_delay_ns == 20 * NS_PER_MS
