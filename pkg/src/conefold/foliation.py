"""Rule engine for the spatial topology allowed by a string-transverse foliation.

The spatial 3-manifold is foliated by the surfaces transverse to the strings.
Which topologies survive depends on three assumption flags: whether the
foliation has compact leaves (none / at least one / all), whether a compact
leaf meets a string, and whether such a leaf has finite fundamental group.
Two classical theorems on codimension-1 foliations of class C^2 are taken as
axioms:

* finite pi_1 of the 3-manifold forces a compact leaf;
* a compact leaf with finite pi_1 forces every leaf compact with finite pi_1
  (Reeb stability).

Combined with the genus-1 verdict for compact leaves that meet strings, the
case analysis leaves three possibilities plus one excluded case.  Nothing
here manipulates manifolds; the engine only propagates flags.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional


class CompactLeaves(str, Enum):
    NONE = "none"
    AT_LEAST_ONE = "at_least_one"
    ALL = "all"


class Pi1(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


class Possibility(str, Enum):
    """Verdict classes: the three surviving topologies and the excluded case."""

    NOT_SIMPLY_CONNECTED = "not-simply-connected"
    TOROIDAL = "toroidal-reeb-or-surgery"
    SMALL_COMPACT_LEAF = "single-small-compact-leaf"
    EXCLUDED = "excluded-by-reeb-stability"


# Quote anchors tying each claim to the argument it encodes.  Fixed set;
# output is compared against these byte for byte.
ANCHOR_PI1_INFINITE = r"$\pi_1(\Sigma)$ is infinite"
ANCHOR_NOT_SIMPLY_CONNECTED = r"$\Sigma$ is not simply-connected"
ANCHOR_REEB_EXCLUSION = "Reeb stability removes the possibility"
ANCHOR_SMALL_LEAF = "would have to be small (cosmologically)"
ANCHOR_REEB_COMPONENT = "foliated internally by planes"
ANCHOR_ALL_TORI = "the surfaces transverse to these strings are tori"

ANCHORS = (
    ANCHOR_PI1_INFINITE,
    ANCHOR_NOT_SIMPLY_CONNECTED,
    ANCHOR_REEB_EXCLUSION,
    ANCHOR_SMALL_LEAF,
    ANCHOR_REEB_COMPONENT,
    ANCHOR_ALL_TORI,
)
# claims that lean on the genus-1 verdict, hence on strings and the bounds
STRING_DEPENDENT_ANCHORS = frozenset(ANCHORS[2:])


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class FoliationScenario:
    compact_leaves: CompactLeaves
    intersects_strings: Optional[bool] = None
    leaf_pi1: Pi1 = Pi1.UNKNOWN
    strings_exist: bool = True
    observational_constraints_hold: bool = True
    smooth_c2: bool = True

    def __post_init__(self):
        object.__setattr__(self, "compact_leaves", CompactLeaves(self.compact_leaves))
        object.__setattr__(self, "leaf_pi1", Pi1(self.leaf_pi1))
        if self.compact_leaves is CompactLeaves.AT_LEAST_ONE:
            if self.intersects_strings is None:
                raise ScenarioError("intersects_strings is required when some leaf is compact")
        elif self.intersects_strings is not None:
            raise ScenarioError(f"intersects_strings is meaningless for compact_leaves={self.compact_leaves.value}")
        if self.leaf_pi1 is not Pi1.UNKNOWN and not self.non_intersecting:
            raise ScenarioError("leaf_pi1 only applies to a compact leaf that misses the strings")

    @property
    def non_intersecting(self) -> bool:
        return self.compact_leaves is CompactLeaves.AT_LEAST_ONE and self.intersects_strings is False

    @property
    def key(self) -> str:
        if self.compact_leaves is CompactLeaves.NONE:
            return "no-compact"
        if self.compact_leaves is CompactLeaves.ALL:
            return "all-compact"
        if self.intersects_strings:
            return "one-intersecting"
        return f"one-nonintersecting-{self.leaf_pi1.value}"


SCENARIO_KEYS = (
    "no-compact",
    "one-nonintersecting-finite",
    "one-nonintersecting-infinite",
    "one-intersecting",
    "all-compact",
)


def scenario_from_key(key: str, strings_exist: bool = True, observational_constraints_hold: bool = True) -> FoliationScenario:
    flags = dict(strings_exist=strings_exist, observational_constraints_hold=observational_constraints_hold)
    if key == "no-compact":
        return FoliationScenario(CompactLeaves.NONE, **flags)
    if key == "all-compact":
        return FoliationScenario(CompactLeaves.ALL, **flags)
    if key == "one-intersecting":
        return FoliationScenario(CompactLeaves.AT_LEAST_ONE, True, **flags)
    prefix = "one-nonintersecting-"
    if key.startswith(prefix):
        return FoliationScenario(CompactLeaves.AT_LEAST_ONE, False, Pi1(key[len(prefix):]), **flags)
    raise ScenarioError(f"unknown scenario key {key!r}; use one of {SCENARIO_KEYS}")


@dataclass(frozen=True)
class Claim:
    statement_id: str
    human_text: str
    anchor: str


@dataclass(frozen=True)
class TopologyVerdict:
    claims: tuple[Claim, ...]
    excluded: bool = False
    possibility: Optional[Possibility] = None

    @property
    def withheld(self) -> bool:
        return not self.claims and not self.excluded


def theorem_compact_leaf_exists(pi1_finite: bool, foliation_smoothness_at_least_C2: bool) -> bool:
    """A C^2 codimension-1 foliation of a 3-manifold with finite pi_1 has a compact leaf."""
    return bool(pi1_finite and foliation_smoothness_at_least_C2)


def reeb_stability_propagates(compact_leaf_pi1_finite: bool, smooth_c2: bool = True) -> bool:
    """True iff one compact leaf with finite pi_1 makes every leaf compact with finite pi_1."""
    return bool(compact_leaf_pi1_finite and smooth_c2)


_PI1 = Claim("pi1-infinite", "pi_1 of the spatial section is infinite", ANCHOR_PI1_INFINITE)
_NSC = Claim("not-simply-connected", "the spatial section is not simply connected", ANCHOR_NOT_SIMPLY_CONNECTED)
_EXCL = Claim(
    "reeb-exclusion",
    "a compact leaf with finite pi_1 would force every leaf to have finite pi_1, "
    "contradicting genus-1 leaves at the strings",
    ANCHOR_REEB_EXCLUSION,
)
_SMALL = Claim("small-compact-leaf", "the compact leaf must be cosmologically small", ANCHOR_SMALL_LEAF)
_GENUS1 = Claim("leaf-genus-1", "the compact leaf is a genus-1 torus", ANCHOR_REEB_COMPONENT)
_REEB = Claim("reeb-component", "a Reeb component is present: a torus bounding a solid torus of plane leaves", ANCHOR_REEB_COMPONENT)
_SURGERY = Claim("toroidal-surgery", "toroidal elements of a surgery description are possible", ANCHOR_REEB_COMPONENT)
_ALL_TORI = Claim("all-leaves-tori", "every leaf is a genus-1 torus", ANCHOR_ALL_TORI)
_STABLE = Claim("stable-global", "the genus-1 condition is stable and global", ANCHOR_ALL_TORI)


def _conditional(claim: Claim, condition: str) -> Claim:
    return Claim(f"{claim.statement_id}-if-{condition}", f"if the leaf has {condition} pi_1: {claim.human_text}", claim.anchor)


def classify(scenario: FoliationScenario) -> TopologyVerdict:
    """Apply the case analysis to one scenario."""
    strings = scenario.strings_exist and scenario.observational_constraints_hold
    c2 = scenario.smooth_c2

    if scenario.compact_leaves is CompactLeaves.NONE:
        # contrapositive of the compact-leaf theorem: no compact leaf, so pi_1 is not finite
        if not theorem_compact_leaf_exists(True, c2):
            return TopologyVerdict(())
        return TopologyVerdict((_PI1, _NSC), possibility=Possibility.NOT_SIMPLY_CONNECTED)

    if not strings:
        return TopologyVerdict(())

    if scenario.compact_leaves is CompactLeaves.ALL:
        return TopologyVerdict((_ALL_TORI, _STABLE), possibility=Possibility.TOROIDAL)

    if scenario.intersects_strings:
        return TopologyVerdict((_GENUS1, _REEB, _SURGERY), possibility=Possibility.TOROIDAL)

    pi1 = scenario.leaf_pi1
    if pi1 is Pi1.FINITE:
        if not reeb_stability_propagates(True, c2):
            return TopologyVerdict(())
        return TopologyVerdict((_EXCL,), excluded=True, possibility=Possibility.EXCLUDED)
    if pi1 is Pi1.INFINITE:
        return TopologyVerdict((_SMALL,), possibility=Possibility.SMALL_COMPACT_LEAF)
    # unknown pi_1: both branches, each conditional; only the small-leaf one survives
    claims = [_conditional(_SMALL, "infinite")]
    if reeb_stability_propagates(True, c2):
        claims.insert(0, _conditional(_EXCL, "finite"))
    return TopologyVerdict(tuple(claims), possibility=Possibility.SMALL_COMPACT_LEAF)


def valid_scenarios(
    strings_exist: bool = True, observational_constraints_hold: bool = True, include_unknown: bool = False
) -> list[FoliationScenario]:
    """Every scenario in the flag lattice that passes the field-dependency rules.

    ``leaf_pi1 = unknown`` is a disjunction of the finite and infinite cases,
    not a case of its own, so it is left out unless asked for.
    """
    out = []
    for leaves, hits, pi1 in itertools.product(CompactLeaves, (None, True, False), Pi1):
        if pi1 is Pi1.UNKNOWN and leaves is CompactLeaves.AT_LEAST_ONE and hits is False and not include_unknown:
            continue
        try:
            out.append(FoliationScenario(leaves, hits, pi1, strings_exist, observational_constraints_hold))
        except ScenarioError:
            continue
    order = SCENARIO_KEYS + ("one-nonintersecting-unknown",)
    return sorted(out, key=lambda s: order.index(s.key))


def enumerate_scenarios(
    strings_exist: bool = True, observational_constraints_hold: bool = True
) -> list[tuple[FoliationScenario, TopologyVerdict]]:
    table = [(s, classify(s)) for s in valid_scenarios(strings_exist, observational_constraints_hold)]
    if strings_exist and observational_constraints_hold:
        classes = {v.possibility for _, v in table}
        if classes != set(Possibility):
            raise AssertionError(f"case analysis does not partition into the expected classes: {classes}")
    return table


def format_verdict(scenario: FoliationScenario, verdict: TopologyVerdict) -> str:
    lines = [f"scenario: {scenario.key}"]
    if verdict.possibility is not None:
        lines.append(f"class: {verdict.possibility.value}")
    lines.append(f"excluded: {'yes' if verdict.excluded else 'no'}")
    if verdict.withheld:
        lines.append("claims: none (hypotheses not met)")
    for c in verdict.claims:
        lines.append(f"  - [{c.statement_id}] {c.human_text}")
        lines.append(f"    anchor: {c.anchor}")
    return "\n".join(lines)


def format_table(table: list[tuple[FoliationScenario, TopologyVerdict]]) -> str:
    return "\n\n".join(format_verdict(s, v) for s, v in table)
