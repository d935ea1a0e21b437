"""
Expected C/N0 behind walls
==========================

The theoretical C/N0 of an unobstructed GPS L1 signal, and how much each
building material takes away from it.
"""

from nmeascene.linkbudget import (
    MATERIALS,
    LinkBudgetParams,
    cn0_snr_convert,
    cn0_theoretical,
    material_attenuation_db,
)

###############################################################################
# Minimum specified L1 C/A power at the antenna is about -160 dBW. With a
# 3 dBi antenna, 290 K system temperature and 2 dB of losses:
params = LinkBudgetParams(signal_power_sr=-160, antenna_gain_ga=3, system_noise_temp_tsys=290,
                          implementation_loss_l=2)
open_sky = cn0_theoretical(params)
print(f"open sky: {open_sky:.2f} dB-Hz")

###############################################################################
# In a 1 kHz (30 dB-Hz) loop bandwidth that C/N0 corresponds to this SNR:
print(f"SNR in 30 dB-Hz: {cn0_snr_convert(open_sky, 30, 'cn0_to_snr'):.2f} dB")

###############################################################################
# Attenuation ranges per material, evaluated at both ends of each range.
for row in MATERIALS.values():
    lo = open_sky - material_attenuation_db(row.material, 0.0)
    hi = open_sky - material_attenuation_db(row.material, 1.0)
    print(f"{row.material.value:<20} {hi:6.1f} .. {lo:6.1f} dB-Hz")
