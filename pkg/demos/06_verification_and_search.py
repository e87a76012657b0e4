"""Running the randomized property suites and the counterexample search.

The same machinery backs the command line (`traceineq verify` / `search`):
every trial derives its own seed, so reports are reproducible bit for bit,
and any negative gap would surface with the full offending instance.
"""

from traceineq import harness

cfg = harness.SuiteConfig(
    dims=(2, 3, 4),
    trials=200,
    checks=("monotone", "convex", "ricard", "powers_stormer", "commuting_oracle"),
    functions=("power:0.3", "power:0.7", "log1p", "power:1.5", "square"),
    seed=42,
)
report = harness.run_suite(cfg)
print(harness.emit_report(report, "text"))

print("the same report serializes to stable JSON (shortened):")
print(harness.emit_report(report, "json")[:400], "...\n")

search = harness.SearchConfig(
    dims=(2, 3, 4),
    instances=300,
    restarts=5,
    steps=40,
    functions=("power:0.25", "power:0.5", "power:1.5", "square"),
    norm="kyfan:all",
    seed=7,
)
print(harness.emit_report(harness.search_counterexample(search), "text"))
print("descent perturbs the Gaussian factors of A = G^T G one coordinate at"
      " a time, so every probe stays on the PSD cone; candidates below the"
      " tolerance would be re-verified at tighter eigensolver settings"
      " before being reported.")
