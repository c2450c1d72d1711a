"""A small sweep over scenario A sizes, written as CSV and summarised.

Run: python3 demos/scenario_sweep.py [out.csv] [replicates]
"""
import sys

from hypermod.bench import format_summary, load_scenario, run_scenario, summarize, write_csv

out = sys.argv[1] if len(sys.argv) > 1 else "sweep.csv"
replicates = int(sys.argv[2]) if len(sys.argv) > 2 else 5

records = []
for preset in ("ScenA-DCHSBM-A1", "ScenA-DCHSBM-A2", "ScenA-DCHSBM-A3"):
    config = load_scenario(preset)
    config.replicates = replicates
    records += run_scenario(config, master_seed=0)
    print(f"{preset}: {replicates} replicates done")

write_csv(records, out)
print(f"\n{len(records)} rows written to {out}\n")
rows = summarize(records)
keep = ("scenario", "algorithm", "runs", "ari_mean", "rel_error_mean", "wall_time_s_mean",
        "K_hat_hist")
print(format_summary([{k: row[k] for k in keep} for row in rows]))
