"""Signal power relations for GNSS reception and L-band material attenuation."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import TextIO

__all__ = [
    "BOLTZMANN_K",
    "DomainError",
    "RangeError",
    "LinkBudgetParams",
    "Material",
    "MaterialAttenuation",
    "MATERIALS",
    "cn0_theoretical",
    "snr_from_powers",
    "cn0_snr_convert",
    "material_attenuation_db",
    "write_materials_csv",
]

BOLTZMANN_K = 1.38e-23  # W*s/K, the rounded value used with these tables


class DomainError(ValueError):
    pass


class RangeError(ValueError):
    pass


@dataclass(frozen=True)
class LinkBudgetParams:
    """Inputs to the theoretical C/N0.

    Attributes:
        signal_power_sr: received signal power S_r (dBW)
        antenna_gain_ga: antenna gain toward the satellite G_a (dB)
        system_noise_temp_tsys: T_source + T_receiver (K), must be positive
        implementation_loss_l: implementation losses L (dB)
    """

    signal_power_sr: float
    antenna_gain_ga: float = 0.0
    system_noise_temp_tsys: float = 290.0
    implementation_loss_l: float = 0.0
    boltzmann_k: float = BOLTZMANN_K


def cn0_theoretical(params: LinkBudgetParams) -> float:
    """Theoretical C/N0 in dB-Hz.

    C/N0 = S_r + G_a - 10 log10(k) - 10 log10(T_sys) - L

    Some printings of this relation show a coefficient of 1 on the T_sys
    term. Converting a temperature to dB-K needs 10, so 10 is used here.
    """
    if not params.system_noise_temp_tsys > 0:
        raise DomainError(f"system noise temperature must be > 0 K, got {params.system_noise_temp_tsys}")
    return (params.signal_power_sr
            + params.antenna_gain_ga
            - 10.0 * math.log10(params.boltzmann_k)
            - 10.0 * math.log10(params.system_noise_temp_tsys)
            - params.implementation_loss_l)


def snr_from_powers(signal_power_sr: float, noise_power_n: float) -> float:
    """SNR (dB) from signal and noise power, both in dB."""
    return signal_power_sr - noise_power_n


def cn0_snr_convert(value: float, bandwidth_bw: float, direction: str = "snr_to_cn0") -> float:
    """Convert between SNR (dB) and C/N0 (dB-Hz) for a bandwidth given in dB-Hz.

    ``direction`` is ``"snr_to_cn0"`` (adds the bandwidth) or ``"cn0_to_snr"``
    (subtracts it).
    """
    if direction == "snr_to_cn0":
        return value + bandwidth_bw
    if direction == "cn0_to_snr":
        return value - bandwidth_bw
    raise ValueError(f"unknown direction {direction!r}")


class Material(enum.Enum):
    DRYWALL = "drywall"
    PLYWOOD = "plywood"
    GLASS = "glass"
    WOOD = "wood"
    REBAR_GRID = "rebar_grid"
    BRICK = "brick"
    CONCRETE = "concrete"
    REINFORCED_CONCRETE = "reinforced_concrete"


@dataclass(frozen=True)
class MaterialAttenuation:
    material: Material
    atten_min_db: float
    atten_max_db: float
    factor_min: float
    factor_max: float


# L-band attenuation ranges for common building materials. The factor column
# is the matching linear power ratio; nothing in this package consumes it.
MATERIALS = {
    m.material: m
    for m in (
        MaterialAttenuation(Material.DRYWALL, 1, 1, 0.8, 0.8),
        MaterialAttenuation(Material.PLYWOOD, 1, 3, 0.5, 0.8),
        MaterialAttenuation(Material.GLASS, 1, 4, 0.4, 0.8),
        MaterialAttenuation(Material.WOOD, 2, 9, 0.1, 0.6),
        MaterialAttenuation(Material.REBAR_GRID, 2, 11, 0.08, 0.6),
        MaterialAttenuation(Material.BRICK, 5, 31, 0.001, 0.3),
        MaterialAttenuation(Material.CONCRETE, 12, 43, 0.00005, 0.06),
        MaterialAttenuation(Material.REINFORCED_CONCRETE, 29, 33, 0.0005, 0.001),
    )
}


def material_attenuation_db(material: Material | str, position: float = 0.5) -> float:
    """Attenuation at ``position`` within the material's range (0 = low end, 1 = high end)."""
    if not 0.0 <= position <= 1.0:
        raise RangeError(f"position must be in [0, 1], got {position}")
    row = MATERIALS[Material(material)]
    return row.atten_min_db + position * (row.atten_max_db - row.atten_min_db)


def write_materials_csv(fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["material", "atten_min_db", "atten_max_db", "factor_min", "factor_max"])
    for row in MATERIALS.values():
        writer.writerow([row.material.value, row.atten_min_db, row.atten_max_db, row.factor_min, row.factor_max])
