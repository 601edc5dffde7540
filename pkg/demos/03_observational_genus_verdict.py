"""
From tension bounds to a genus verdict
======================================

Take the published upper limits on G*mu, allow at most ten long strings per
horizon volume, and see what Euler characteristic the transverse surfaces
can have.  Writes chi_vs_count.svg to the working directory.
"""
from pathlib import Path

from conefold import euler_bound_report, gut_scale_estimate, load_bound_catalog, sample_network
from conefold.reporting import RunConfig, report_svg

# %%
print(f"GUT-scale estimate: G*mu ~ {gut_scale_estimate().g_mu:.2e}")

# %%
# Worst case for every bound: ten strings sitting at the limit.
for b in load_bound_catalog():
    rep = euler_bound_report(sample_network(0, 10, b, "fixed_at_bound"))
    print(f"{b.name:7s} chi_derived={rep.chi_derived:.2e}  chi_paper={rep.chi_paper:.2e}  genus {rep.genus_verdict}")

# %%
# Monte Carlo: uniform tensions under the tightest bound.  The spread is
# irrelevant to the verdict, which only flips once the summed tension is O(1).
spt = min(load_bound_catalog(), key=lambda b: b.g_mu_max)
chis = [euler_bound_report(sample_network(seed, 10, spt)).chi_derived for seed in range(1000)]
print(f"1000 uniform samples: chi in [{min(chis):.2e}, {max(chis):.2e}]")

# %%
out = Path("chi_vs_count.svg")
out.write_text(report_svg(RunConfig()))
print(f"wrote {out}")
