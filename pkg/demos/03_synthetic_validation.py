"""
Desk-scale validation on synthetic logs
=======================================

Without the original field logs we generate hour-long logs from four site
profiles, label each hour with its known scenario, and score the classifier
the same way a field validation would.
"""

from nmeascene.classifier import RuleSet, classify_stream
from nmeascene.epochs import stream_epochs
from nmeascene.synth import GeneratorConfig, generate_log, load_profile
from nmeascene.validation import LabelInterval, evaluate

###############################################################################
# Four one-hour logs, concatenated into a single 4-hour walk.
names = ["local_a1", "local_b2", "local_c2", "local_d3"]
metrics, truth = [], []
for k, name in enumerate(names):
    profile = load_profile(name)
    log = generate_log(GeneratorConfig(profile, epochs=3600, seed=7))
    metrics += list(stream_epochs(log.splitlines(), start_index=3600 * k))
    truth.append(LabelInterval(3600 * k, 3600 * (k + 1), profile.scenario))

###############################################################################
# Sum-only versus combined rules, without smoothing.
for mode in ("sum", "combined"):
    report = evaluate(classify_stream(metrics, RuleSet(mode=mode)), truth)
    print(f"--- {mode} ---")
    print(report.format_table())

###############################################################################
# A short majority-vote window removes isolated flips at band edges.
report = evaluate(classify_stream(metrics, RuleSet(mode="sum"), smoothing_window=9), truth)
print(f"sum-only, window 9: {report.accuracy_pct}%")
