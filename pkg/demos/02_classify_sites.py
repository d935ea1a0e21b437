"""
Classifying the 40 reference sites
==================================

Each of the 40 static sites is summarised by its hourly means. Feeding those
means through both rule sets shows where the combined rules decline to
decide.
"""

from collections import Counter

from nmeascene.classifier import Scenario, classify_combined, classify_sum_only
from nmeascene.sites import SITES, site_metrics

###############################################################################
# The sum-only rules put every site in its conventional band.
rows = []
for site, summary in SITES.items():
    m = site_metrics(site)
    rows.append((site, summary.scenario, classify_sum_only(m), classify_combined(m)))

print(f"{'site':<6}{'expected':<22}{'sum-only':<22}{'combined':<22}")
for site, expected, by_sum, combined in rows:
    print(f"{site:<6}{expected.value:<22}{by_sum.value:<22}{combined.value:<22}")

###############################################################################
# The combined rules need PDOP and HDOP above 7 for the near-opening class.
# Four C sites have good geometry and come out indeterminate.
print(Counter(c.value for *_, c in rows))
print([site for site, *_, c in rows if c is Scenario.INDETERMINATE])
