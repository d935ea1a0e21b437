"""Deterministic synthetic NMEA logs shaped by a scenario profile.

Randomness
----------
Every epoch draws from its own counter-based stream so that any epoch can be
regenerated alone and a truncated log is a prefix of the full one. All
arithmetic is modulo 2**64:

    mix(z):   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
              return z ^ (z >> 31)
    key     = mix(seed ^ mix(epoch_index * 0x9E3779B97F4A7C15))
    draw(j) = mix(key + (j + 1) * 0x9E3779B97F4A7C15)          j = 0, 1, 2, ...
    uniform = (draw(j) >> 11) * 2**-53                          in [0, 1)
    gauss   = mu + sigma * sqrt(-2 ln(1 - u1)) * cos(2 pi u2)   two uniforms each

Per epoch the draws are consumed in this order: one uniform for the missing
epoch test; one gauss for the satellite count; for each satellite one
uniform to pick its PRN then one gauss for its C/N0; one gauss each for
PDOP and HDOP. Rounding is half up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional

from .classifier import Scenario
from .nmea import DOP_SENTINEL, format_sentence

__all__ = [
    "ConfigError",
    "ScenarioProfile",
    "GeneratorConfig",
    "CounterRng",
    "parse_profile",
    "load_profile",
    "list_profiles",
    "generate_epoch",
    "iter_log_lines",
    "generate_log",
]

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
CN0_MAX = 60.0
DOP_MIN = 0.5
SATS_PER_GSV = 4
GPS_PRNS = tuple(range(1, 33))


class ConfigError(ValueError):
    pass


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class CounterRng:
    """Counter-based stream keyed by ``(seed, epoch_index)``."""

    def __init__(self, seed: int, epoch_index: int):
        self.key = mix64(seed ^ mix64(epoch_index * GOLDEN))
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def gauss(self, mu: float, sigma: float) -> float:
        u1, u2 = self.uniform(), self.uniform()
        return mu + sigma * math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)


@dataclass(frozen=True)
class ScenarioProfile:
    name: str
    cn0_mean_mu: float
    cn0_mean_sigma: float
    sat_count_mu: float
    sat_count_sigma: float
    pdop_mu: float = 1.5
    pdop_sigma: float = 0.0
    hdop_mu: float = 0.9
    hdop_sigma: float = 0.0
    missing_epoch_rate: float = 0.0
    scenario: Optional[Scenario] = None

    def __post_init__(self):
        sigmas = (self.cn0_mean_sigma, self.sat_count_sigma, self.pdop_sigma, self.hdop_sigma)
        if any(not s >= 0 for s in sigmas):
            raise ConfigError(f"profile {self.name}: standard deviations must be >= 0")
        if not 0.0 <= self.missing_epoch_rate <= 1.0:
            raise ConfigError(f"profile {self.name}: missing_epoch_rate must be in [0, 1]")
        if not self.sat_count_mu >= 0:
            raise ConfigError(f"profile {self.name}: sat_count_mu must be >= 0")


_NUMERIC = {f.name for f in fields(ScenarioProfile)} - {"name", "scenario"}


def parse_profile(text: str, name: str = "profile") -> ScenarioProfile:
    """Parse a flat ``key = value`` profile; ``#`` starts a comment."""
    values: dict = {"name": name}
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{name}:{n}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        try:
            if key == "name":
                values["name"] = value
            elif key == "scenario":
                values["scenario"] = Scenario(value)
            elif key in _NUMERIC:
                values[key] = float(value)
            else:
                raise ConfigError(f"{name}:{n}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{name}:{n}: bad value for {key}: {value!r}") from None
    missing = {"cn0_mean_mu", "cn0_mean_sigma", "sat_count_mu", "sat_count_sigma"} - set(values)
    if missing:
        raise ConfigError(f"{name}: missing keys {', '.join(sorted(missing))}")
    return ScenarioProfile(**values)


def _bundled():
    return resources.files("nmeascene") / "profiles"


def list_profiles() -> list:
    return sorted(p.name[:-4] for p in _bundled().iterdir() if p.name.endswith(".cfg"))


def load_profile(name_or_path) -> ScenarioProfile:
    """Load a bundled profile by name (``local_a1``) or a profile file by path."""
    path = Path(name_or_path)
    if path.suffix or path.exists():
        if not path.is_file():
            raise ConfigError(f"profile file not found: {path}")
        return parse_profile(path.read_text(encoding="utf-8"), path.stem)
    res = _bundled() / f"{name_or_path}.cfg"
    if not res.is_file():
        raise ConfigError(f"no bundled profile {name_or_path!r}")
    return parse_profile(res.read_text(encoding="utf-8"), str(name_or_path))


@dataclass(frozen=True)
class GeneratorConfig:
    profile: ScenarioProfile
    epochs: int = 3600
    seed: int = 0
    prn_pool: tuple = field(default=GPS_PRNS)

    def __post_init__(self):
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        pool = tuple(self.prn_pool)
        if not pool or len(set(pool)) != len(pool) or any(not 1 <= p <= 32 for p in pool):
            raise ConfigError("prn_pool must be distinct GPS PRNs in 1..32")
        p = self.profile
        plausible = min(32, math.ceil(p.sat_count_mu + 3 * p.sat_count_sigma))
        if len(pool) < plausible:
            raise ConfigError(f"prn_pool has {len(pool)} PRNs, profile needs up to {plausible}")


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def _utc(epoch_index: int) -> str:
    s = epoch_index % 86400
    return f"{s // 3600:02d}{s % 3600 // 60:02d}{s % 60:02d}.00"


def _gga(epoch_index: int, n_used: int, hdop: Optional[float]) -> str:
    if hdop is None:
        return format_sentence("GPGGA", [_utc(epoch_index), "", "", "", "", "0", "00", "", "", "M", "", "M", "", ""])
    return format_sentence("GPGGA", [
        _utc(epoch_index), "2333.0000", "S", "04643.0000", "W", "1", f"{n_used:02d}",
        f"{hdop:.2f}", "750.0", "M", "-5.0", "M", "", "",
    ])


def _gsa(prns: list, pdop: float, hdop: float, vdop: float, fix: bool) -> str:
    used = [f"{p:02d}" for p in prns[:12]] if fix else []
    used += [""] * (12 - len(used))
    return format_sentence("GPGSA", ["A", "3" if fix else "1", *used, f"{pdop:.2f}", f"{hdop:.2f}", f"{vdop:.2f}"])


def _gsv(sats: list) -> list:
    n = len(sats)
    total = max(1, math.ceil(n / SATS_PER_GSV))
    out = []
    for part in range(total):
        fields_ = [str(total), str(part + 1), f"{n:02d}"]
        for prn, elev, az, cn0 in sats[part * SATS_PER_GSV:(part + 1) * SATS_PER_GSV]:
            fields_ += [f"{prn:02d}", f"{elev:02d}", f"{az:03d}", f"{cn0:02d}" if cn0 > 0 else ""]
        out.append(format_sentence("GPGSV", fields_))
    return out


def generate_epoch(config: GeneratorConfig, epoch_index: int, rng: Optional[CounterRng] = None) -> list:
    """NMEA sentences (no line endings) for one epoch."""
    p = config.profile
    rng = rng or CounterRng(config.seed, epoch_index)
    if rng.uniform() < p.missing_epoch_rate:
        return [_gga(epoch_index, 0, None)]

    pool = list(config.prn_pool)
    n = int(_clamp(_round_half_up(rng.gauss(p.sat_count_mu, p.sat_count_sigma)), 0, len(pool)))
    sats = []
    for k in range(n):
        # partial Fisher-Yates over the remaining pool
        j = k + int(rng.uniform() * (len(pool) - k))
        pool[k], pool[j] = pool[j], pool[k]
        cn0 = _round_half_up(_clamp(rng.gauss(p.cn0_mean_mu, p.cn0_mean_sigma), 0.0, CN0_MAX))
        # sky positions only need to look plausible
        elev = 10 + (k * 23) % 80
        az = int(k * 360 / n + epoch_index % 7) % 360
        sats.append((pool[k], elev, az, cn0))

    pdop = _clamp(rng.gauss(p.pdop_mu, p.pdop_sigma), DOP_MIN, DOP_SENTINEL)
    hdop = _clamp(rng.gauss(p.hdop_mu, p.hdop_sigma), DOP_MIN, DOP_SENTINEL)
    if hdop > pdop:
        pdop, hdop = hdop, pdop
    tracked = [s for s in sats if s[3] > 0]
    fix = len(tracked) >= 4
    if fix:
        pdop, hdop = round(pdop, 2), round(hdop, 2)
        vdop = round(math.sqrt(max(pdop ** 2 - hdop ** 2, 0.0)), 2)
    else:
        pdop = hdop = vdop = DOP_SENTINEL

    used = [s[0] for s in tracked]
    return [
        _gga(epoch_index, min(len(used), 12), hdop if fix else None),
        _gsa(used, pdop, hdop, vdop, fix),
        *_gsv(sats),
    ]


def iter_log_lines(config: GeneratorConfig, start: int = 0, stop: Optional[int] = None) -> Iterator[str]:
    stop = config.epochs if stop is None else stop
    for i in range(start, stop):
        yield from generate_epoch(config, i)


def generate_log(config: GeneratorConfig) -> str:
    """The whole log as CRLF-terminated text; identical for identical configs."""
    return "".join(line + "\r\n" for line in iter_log_lines(config))
