"""Per-site summary statistics from 40 one-hour static GPS sessions.

Each site was logged at 1 Hz for an hour with a GPS-only L1 receiver. Values
are mean and standard deviation over epochs that had at least one satellite
with C/N0 > 0; ``epochs_with`` / ``epochs_without`` count those epochs and
the ones without any reading. Sites are grouped by their conventional
scenario: A open outdoor, B outdoor with relevant obstructions, C indoor near
an opening, D deep indoor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import Scenario
from .epochs import EpochMetrics

__all__ = ["SiteSummary", "SITES", "SITE_SCENARIO", "site_metrics"]

SITE_SCENARIO = {
    "A": Scenario.OPEN_OUTDOOR,
    "B": Scenario.OBSTRUCTED_OUTDOOR,
    "C": Scenario.INDOOR_NEAR_OPENING,
    "D": Scenario.INDOOR,
}


@dataclass(frozen=True)
class SiteSummary:
    site: str
    cn0_mean: float
    cn0_mean_std: float
    cn0_sum: float
    cn0_sum_std: float
    pdop: float
    pdop_std: float
    hdop: float
    hdop_std: float
    satellites: float
    satellites_std: float
    epochs_with: int
    epochs_without: int

    @property
    def scenario(self) -> Scenario:
        return SITE_SCENARIO[self.site[0]]

    @property
    def slug(self) -> str:
        return "local_" + self.site.replace("-", "").lower()


# site, mean C/N0, sum C/N0, PDOP, HDOP, satellites (each mean, std), epochs with (without)
_ROWS = """
A-1  38.84 1.00 528.60  68.52  1.91  0.31  0.87  0.04 13.61 1.72 3527   73
A-2  38.14 1.24 485.02  88.39  1.99  0.19  0.83  0.04 12.73 2.35 3598    2
A-3  37.61 1.25 488.97 133.95  1.76  0.21  0.85  0.05 13.02 3.64 3272  328
A-4  32.67 1.94 528.64 169.65  1.65  0.21  0.91  0.10 16.15 4.95 3486  124
A-5  36.33 1.40 474.55  99.65  1.85  0.21  0.89  0.06 13.09 2.83 3419  181
A-6  34.76 1.50 435.12  66.42  1.68  0.23  0.90  0.11 12.51 1.81 3558   42
A-7  39.94 1.23 523.16 192.32  1.86  0.29  0.88  0.07 13.07 4.72 3065  535
A-8  39.83 1.09 566.65  39.60  1.78  0.08  0.86  0.07 14.23 1.02 3578   22
A-9  38.03 1.14 507.87  73.41  2.06  0.21  0.83  0.03 13.36 1.96 3552   48
A-10 38.86 3.12 571.01 123.50  1.75  0.23  0.91  0.11 14.68 3.12 3404  196
B-1  27.50 1.97 291.34  29.79  3.09  2.30  1.93  2.12 10.64 1.31 3599    1
B-2  27.10 2.48 233.80  25.38  3.33  1.37  1.91  1.24  8.70 1.24 3600    0
B-3  28.83 2.34 248.28  26.30  3.67  1.21  2.50  1.08  8.69 1.21 3600    0
B-4  25.76 2.09 260.65  27.24  2.22  0.59  1.21  0.25 10.14 1.03 3598    2
B-5  26.98 2.65 281.10  29.48  3.81  6.53  2.57  5.81 10.50 1.35 3600    0
B-6  29.82 1.77 287.94  22.08  2.07  0.19  0.99  0.10  9.67 0.73 3600    0
B-7  29.40 1.72 319.90  17.18  2.02  0.28  0.96  0.10 10.91 0.82 3600    0
B-8  29.05 2.37 263.98  36.02  3.38  0.54  1.88  0.38  9.10 1.17 3600    0
B-9  29.83 2.41 254.56  23.76  3.74  1.99  2.77  1.80  8.58 1.04 3598    2
B-10 27.24 2.09 264.66  22.47  2.60  0.33  1.32  0.22  9.77 1.13 3599    1
C-1  20.64 2.51 123.48  40.75 22.38 38.18 21.11 38.78  6.08 2.09 3521   79
C-2  21.55 2.05 172.95  19.91  2.89  0.81  1.42  0.44  8.05 0.85 3600    0
C-3  21.95 3.30 118.43  19.26 16.79 26.99 15.20 27.52  5.51 1.16 3599    1
C-4  26.78 2.63 122.69  17.26 14.81 24.69 13.70 25.12  4.63 0.85 3600    0
C-5  21.76 2.44 102.60  28.37 51.59 47.25 51.51 49.34  4.73 1.30 3600    0
C-6  25.69 2.13 159.13  17.66  4.80  4.72  3.93  4.66  6.23 0.86 3592    8
C-7  16.93 1.71 157.17  22.45  6.70  7.67  5.67  3.61  6.27 1.11 3600    0
C-8  25.45 3.31 149.53  30.73 13.90 25.26 12.12 25.78  6.02 1.49 3600    0
C-9  22.18 2.22 140.96  18.66  5.19  9.42  3.91  9.32  6.39 0.92 3600    0
C-10 23.91 2.29 174.32  25.48  8.96 19.41  7.58 19.64  7.35 1.24 3600    0
D-1  21.87 3.15  45.66  27.12 99.99  0.00 99.99  0.00  2.07 1.17 2965  635
D-2  20.84 6.47  21.77   7.44 99.99  0.00 99.99  0.00  1.05 0.22  435 3165
D-3  21.39 3.01  84.30  27.47 54.27 46.48 52.70 47.65  4.04 1.41 3600    0
D-4  23.73 2.69  65.70  36.13 99.99  0.00 99.99  0.00  2.79 1.54 3377  223
D-5  22.54 2.64  73.93  48.63 99.99  0.00 99.99  0.00  3.25 2.04 3354  246
D-6  19.95 4.23  35.67  18.43 99.99  0.00 99.99  0.00  1.80 0.91 2850  750
D-7  19.85 5.69  70.79  93.16 80.12 39.10 79.91 39.51  2.93 3.09 2288  712
D-8  19.78 4.53  27.37  22.01 99.99  0.00 99.99  0.00  1.37 0.76 2058 1542
D-9  19.41 5.89  21.75   9.40 99.99  0.00 99.99  0.00  1.12 0.37  612 2988
D-10 18.82 4.38  25.88  13.61 99.99  0.00 99.99  0.00  1.36 0.63 1913 1687
"""


def _load() -> dict:
    sites = {}
    for line in _ROWS.strip().splitlines():
        site, *nums = line.split()
        values = [float(x) for x in nums[:10]]
        sites[site] = SiteSummary(site, *values, int(nums[10]), int(nums[11]))
    return sites


SITES = _load()


def site_metrics(site: str) -> EpochMetrics:
    """The site's mean values as a single metrics vector (fractional satellite count kept)."""
    s = SITES[site]
    return EpochMetrics(0, s.cn0_sum, s.cn0_mean, s.pdop, s.hdop, s.satellites, True)
