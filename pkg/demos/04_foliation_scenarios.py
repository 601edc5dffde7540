"""
Which spatial topologies survive
================================

The case analysis on compact leaves, run as a rule table.  Turning off the
string assumptions shows which conclusions depend on them.
"""
from conefold import classify, enumerate_scenarios
from conefold.foliation import CompactLeaves, FoliationScenario, Pi1, format_verdict

# %%
for scenario, verdict in enumerate_scenarios():
    print(format_verdict(scenario, verdict), end="\n\n")

# %%
# Without strings only the purely topological rule survives.
for scenario, verdict in enumerate_scenarios(strings_exist=False):
    print(f"{scenario.key:30s} {'withheld' if verdict.withheld else verdict.possibility.value}")

# %%
# A non-intersecting compact leaf of unknown pi_1 gives a disjunction.
s = FoliationScenario(CompactLeaves.AT_LEAST_ONE, intersects_strings=False, leaf_pi1=Pi1.UNKNOWN)
print()
print(format_verdict(s, classify(s)))
