"""
Parsing NMEA and computing epoch metrics
========================================

A receiver emits GGA, GSA and GSV sentences once per second. Here we build a
two-epoch log by hand, parse it, and look at the per-epoch feature vector.
"""

from nmeascene.epochs import stream_epochs
from nmeascene.nmea import format_sentence, parse_sentence

###############################################################################
# format_sentence appends the XOR checksum, so hand-written sentences parse
# under the default strict policy.
log = [
    format_sentence("GPGGA", ["120000.00", "2333.0000", "S", "04643.0000", "W", "1", "05",
                              "0.90", "750.0", "M", "-5.0", "M", "", ""]),
    format_sentence("GPGSA", ["A", "3", "01", "02", "03", "04", "05", *[""] * 7, "1.90", "0.90", "1.67"]),
    format_sentence("GPGSV", ["2", "1", "06", "01", "45", "090", "41", "02", "30", "180", "38",
                              "03", "60", "270", "40", "04", "20", "010", "36"]),
    format_sentence("GPGSV", ["2", "2", "06", "05", "15", "120", "33", "06", "05", "300", ""]),
    # second epoch: no fix, nothing heard
    format_sentence("GPGGA", ["120001.00", "", "", "", "", "0", "00", "", "", "M", "", "M", "", ""]),
]
for line in log:
    print(line)

###############################################################################
# Each line becomes a typed record. Satellite 06 has an empty signal field,
# so its C/N0 is absent rather than zero.
gsv = parse_sentence(log[3])
print(gsv.satellites)

###############################################################################
# Grouping by GGA gives one metrics row per epoch. The second epoch has no
# measurement and its DOPs fall back to the 99.99 sentinel.
for m in stream_epochs(log):
    print(m)
