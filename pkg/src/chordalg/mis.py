"""Approximate maximum independent set on chordal graphs.

A bounded number of peeling iterations (depending only on the accuracy
target) removes pendant and long internal paths from the clique forest; the
removed interval strips already hold an almost-maximum independent set.
Small components are solved exactly with an absorbing maximum independent
set, large ones with the approximate interval routine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

from .cliqueforest import (
    INTERNAL, classify_paths, clique_forest, path_alpha_at_least, path_diameter,
    remove_paths, strips_from_traces,
)
from .errors import AlphaTooLarge, BadEpsilon, debug_invariants
from .graphs import Graph, bfs_distances, mcs_order
from .intervals import mis_eps_to_k, mis_interval, mis_strip
from . import localsim
from .localsim import Collect, StepResult


@dataclass(frozen=True)
class MisParams:
    """Accuracy-derived knobs: component size cap d and iteration count k."""

    eps: float
    d: int
    k: int

    @classmethod
    def from_eps(cls, eps: float) -> "MisParams":
        if not 0 < eps < 0.5:
            raise BadEpsilon("eps must lie in (0, 1/2)")
        d = math.ceil(64.0 / eps)
        k = math.ceil(math.log2(d / eps) + 2)
        return cls(eps, d, k)


@dataclass
class AbsorptionRecord:
    """One small-component invocation, kept for the absorption equation test."""

    iteration: int
    component: frozenset
    chosen: frozenset
    forbidden: frozenset
    anchor: Optional[frozenset]


@dataclass
class PeelState:
    params: MisParams
    residuals: List[Set[int]] = field(default_factory=list)  # U_1 .. U_{k+1}
    deg3_counts: List[int] = field(default_factory=list)     # a_1 .. a_k
    per_iteration: List[Set[int]] = field(default_factory=list)  # I_i
    absorption: List[AbsorptionRecord] = field(default_factory=list)
    branch: Dict[int, Optional[str]] = field(default_factory=dict)
    layer: Dict[int, int] = field(default_factory=dict)

    def blocked_set(self, g: Graph, i: int) -> Set[int]:
        """Union over r <= i of the closed neighborhoods of I_r inside U_{i+1}."""
        out: Set[int] = set()
        ui1 = self.residuals[i] if i < len(self.residuals) else set()
        for chosen in self.per_iteration[:i]:
            for v in chosen:
                out |= (g.closed_neighborhood(v) & ui1) | ({v} & ui1)
        return out


def _gavril_greedy(g: Graph, nodes, cap: Optional[int] = None):
    """Exact maximum independent set of a chordal induced subgraph, with an
    optional early exit once `cap` members are found."""
    sub = g.subgraph(nodes)
    order = mcs_order(sub).order
    taken = set()
    blocked = set()
    for v in order:
        if v not in blocked:
            taken.add(v)
            if cap is not None and len(taken) >= cap:
                return taken
            blocked.add(v)
            blocked |= sub.adj[v]
    return taken


def _alpha_at_least(g: Graph, nodes, bound: int) -> bool:
    return len(_gavril_greedy(g, nodes, cap=bound)) >= bound


def absorbing_mis(g: Graph, component, anchor, forbidden,
                  alpha_cap: Optional[int] = None) -> Set[int]:
    """Maximum independent set of a small interval component.

    With an anchor clique, nodes are taken simplicial-first starting from the
    one remotest from the anchor. Remoteness is position along the clique
    path of the component-plus-anchor graph (hop counts are too coarse: all
    of a hanging clique sits at hop distance one, yet only its far end keeps
    the chosen set absorbing). The far-end sweep makes the chosen set absorb
    all independence of its closed residual neighborhood minus `forbidden`.
    Without an anchor any maximum independent set qualifies and the
    elimination-order greedy is returned.
    """
    from .intervals import clique_path

    component = set(component)
    if alpha_cap is not None and _alpha_at_least(g, component, alpha_cap):
        raise AlphaTooLarge("component independence number reaches %d" % alpha_cap)
    if anchor is None:
        return _gavril_greedy(g, component)
    from .cliqueforest import IntervalStrip

    cps = clique_path(g.subgraph(component | set(anchor)))
    if len(cps) != 1:
        raise AssertionError("anchored component is not connected")
    strip = cps[0].strip
    anchor_set = frozenset(anchor)
    spots = [j for j, c in enumerate(strip.cliques) if c == anchor_set]
    if len(spots) != 1 or spots[0] not in (0, len(strip.cliques) - 1):
        raise AssertionError("anchor clique is not an end of the strip")
    if spots[0] == 0:  # flip the anchor to the right end
        strip = IntervalStrip(list(reversed(strip.cliques)))
    # smallest right endpoint in the anchored strip = remotest simplicial
    # node first; anchor members only widen ranges, they are never picked
    return strip.greedy_mis(allowed=component)


def _outside_anchor(g: Graph, record_sides, component, w_set, residual):
    """The unique attach clique holding the component's residual outside
    neighbors (earlier-peeled neighbors are no longer forest nodes)."""
    outside = set()
    for v in component:
        outside |= (g.adj[v] & residual) - w_set
    if not outside:
        return None
    hits = [side for side in record_sides
            if side is not None and outside & set(side)]
    if len(hits) != 1 or not outside <= set(hits[0]):
        raise AssertionError("outside neighbors not confined to one attach clique")
    return hits[0]


@dataclass
class MisRun:
    g: Graph
    params: MisParams
    chosen: Set[int]
    state: PeelState


def mis_chordal_run(g: Graph, eps: float) -> MisRun:
    params = MisParams.from_eps(eps)
    d, iters = params.d, params.k
    forest = clique_forest(g)
    residual = set(g.nodes)
    chosen: Set[int] = set()
    forbidden: Set[int] = set()
    state = PeelState(params)
    state.residuals.append(set(residual))
    for i in range(1, iters + 1):
        state.deg3_counts.append(
            sum(1 for j in range(len(forest)) if forest.degree(j) > 2))
        paths = classify_paths(forest)
        if i < iters:
            selected = [p for p in paths
                        if p.kind != INTERNAL or path_diameter(g, p) >= 2 * d + 3]
        else:
            selected = [p for p in paths
                        if p.kind != INTERNAL or path_alpha_at_least(g, p, d)]
        frozen_forbidden = frozenset(forbidden)
        gained: Set[int] = set()
        removed_all: Set[int] = set()
        for p in selected:
            path_ids = set(p.cliques)
            w_set = {v for v in p.node_set()
                     if all(j in path_ids for j in forest.phi[v])}
            removed_all |= w_set
            for v in w_set:
                state.layer[v] = i
                state.branch.setdefault(v, None)
            active = w_set - frozen_forbidden
            if not active:
                continue
            sides = (p.forest.cliques[p.attach_s] if p.attach_s is not None else None,
                     p.forest.cliques[p.attach_e] if p.attach_e is not None else None)
            for strip in strips_from_traces(p.clique_sets(), active):
                comp = set(strip.nodes)
                if _alpha_at_least(g, comp, d):
                    part = mis_strip(g, strip, eps / 8.0)
                    tag = "approx"
                else:
                    if i < iters:
                        anchor = _outside_anchor(g, sides, comp, w_set, residual)
                        part = absorbing_mis(g, comp, anchor, frozen_forbidden,
                                             alpha_cap=d)
                        state.absorption.append(AbsorptionRecord(
                            i, frozenset(comp), frozenset(part),
                            frozen_forbidden, anchor))
                    else:
                        part = _gavril_greedy(g, comp)
                    tag = "exact"
                for v in comp:
                    state.branch[v] = tag
                gained |= part
        chosen |= gained
        state.per_iteration.append(gained)
        for v in gained:
            forbidden.add(v)
            forbidden |= g.adj[v]
        residual -= removed_all
        state.residuals.append(set(residual))
        if i < iters:
            forest, removed = remove_paths(forest, g, selected)
            if removed != removed_all:
                raise AssertionError("peel bookkeeping mismatch")
    run = MisRun(g, params, chosen, state)
    if debug_invariants() and not verify_absorption(g, run):
        raise AssertionError("absorption equation violated")
    return run


def mis_chordal_centralized(g: Graph, eps: float) -> Set[int]:
    return mis_chordal_run(g, eps).chosen


def residual_alpha_check(g: Graph, run: MisRun):
    """Ratio alpha(residual after the last iteration) / alpha(input graph)."""
    from .graphs import alpha_oracle

    leftover = run.state.residuals[-1]
    a_rest = len(alpha_oracle(g.subgraph(leftover))) if leftover else 0
    a_full = len(alpha_oracle(g)) if len(g) else 0
    return a_rest / a_full if a_full else 0.0


def verify_absorption(g: Graph, run: MisRun) -> bool:
    """Check, for every recorded small-component pick, that the chosen set is
    as large as the independence number of its closed residual neighborhood
    minus the nodes that were already blocked."""
    from .graphs import alpha_oracle

    for rec in run.state.absorption:
        ui = run.state.residuals[rec.iteration - 1]
        region: Set[int] = set()
        for v in rec.chosen:
            region |= g.closed_neighborhood(v) & ui
        region -= rec.forbidden
        if len(alpha_oracle(g.subgraph(region))) != len(rec.chosen):
            return False
    return True


# ---------------------------------------------------------------------------
# distributed variant


def peel_radius(d: int) -> int:
    return 2 * d + 12


def exact_branch_stages(d: int) -> List[int]:
    return [2 * d + 6]


def approx_branch_stages(eps: float) -> List[int]:
    ki = mis_eps_to_k(eps / 8.0)
    return [2 * ki + 12] + [ki + 6] * 9 + [3 * ki + 15]


class MisProgram:
    """Uniform-schedule node program: one collection per peeling iteration,
    then the branch-specific work, then the membership output."""

    step_every_round = False

    def __init__(self, run: MisRun):
        self.run = run
        self.radius = peel_radius(run.params.d)

    def init(self, node, neighbors):
        return {"id": node, "iter": 0, "stage": None}

    def _branch_stages(self, v) -> List[int]:
        tag = self.run.state.branch.get(v)
        if tag == "approx":
            return approx_branch_stages(self.run.params.eps)
        if tag == "exact":
            return exact_branch_stages(self.run.params.d)
        return []

    def step(self, state, rnd, inbox):
        v = state["id"]
        if state["iter"] == 0 and state["stage"] is None and rnd == 0:
            state["iter"] = 1
            return StepResult(state, requests=[
                Collect(self.radius, tag="peel", want_data=False)])
        if state["stage"] is None:
            publish = {}
            if self.run.state.layer.get(v) == state["iter"]:
                publish["peeled"] = state["iter"]
                if v in self.run.chosen:
                    publish["in_set"] = True
            if state["iter"] < self.run.params.k:
                state["iter"] += 1
                return StepResult(state, publish=publish, requests=[
                    Collect(self.radius, tag="peel", want_data=False)])
            stages = self._branch_stages(v)
            if not stages:
                return StepResult(state, publish=publish,
                                  output=(v in self.run.chosen))
            state["stage"] = 0
            return StepResult(state, publish=publish, requests=[
                Collect(stages[0], tag="branch", want_data=False)])
        stages = self._branch_stages(v)
        state["stage"] += 1
        if state["stage"] < len(stages):
            return StepResult(state, requests=[
                Collect(stages[state["stage"]], tag="branch", want_data=False)])
        return StepResult(state, output=(v in self.run.chosen))


def default_round_cap(g: Graph, eps: float) -> int:
    params = MisParams.from_eps(eps)
    worst = params.k * peel_radius(params.d) + sum(approx_branch_stages(eps)) + 10
    return 2 * worst


def mis_chordal_distributed(g: Graph, eps: float, round_cap: Optional[int] = None):
    """Simulate the node program; returns (independent set, transcript).

    The set equals the centralized output; the transcript spends the same
    number of rounds for every input size at a fixed accuracy, except for the
    branch-dependent tail.
    """
    run = mis_chordal_run(g, eps)
    cap = round_cap or default_round_cap(g, eps)
    transcript = localsim.run(g, MisProgram(run), cap)
    members = {v for v, flag in transcript.outputs.items() if flag}
    if members != run.chosen:
        raise AssertionError("distributed set diverged from centralized")
    return members, transcript


def mis_interval_distributed(h: Graph, eps: float, round_cap: Optional[int] = None):
    """Distributed form of the interval MIS routine: same output set, with
    rounds charged per component branch (exact window or skeleton build)."""
    from .intervals import clique_path, remove_dominated

    chosen = mis_interval(h, eps)
    ki = mis_eps_to_k(eps)
    exact_stage = [10 * ki + 2]
    approx_stage = [2 * ki + 12] + [ki + 6] * 9 + [3 * ki + 15]
    stages = {v: [2] for v in h.nodes}  # dominated-node screening
    for cp in clique_path(remove_dominated(h)):
        branch = exact_stage if cp.strip.diameter() <= 10 * ki else approx_stage
        for v in cp.nodes():
            stages[v] = [2] + branch
    outputs = {v: (v in chosen) for v in h.nodes}
    cap = round_cap or 2 * (2 + sum(approx_stage) + 10)
    transcript = localsim.run(h, localsim.UniformStagedProgram(stages, outputs), cap)
    members = {v for v, flag in transcript.outputs.items() if flag}
    return members, transcript
