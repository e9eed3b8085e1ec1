"""Approximate minimum vertex coloring on chordal graphs.

Pipeline: peel the clique forest into interval layers, color every layer
independently within its budget, then repair the conflicts between layers
from the top layer downwards. The distributed variant runs the same
deterministic decisions as a node program on the round-based engine, so both
variants return the identical coloring while the engine accounts rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .cliqueforest import (
    INTERNAL, CliqueForest, IntervalStrip, classify_paths, clique_forest,
    clique_word, path_diameter, remove_paths, strips_from_traces,
)
from .errors import EpsilonTooSmall, NonTermination, debug_invariants
from .graphs import Graph, bfs_distances, omega_oracle
from .intervals import color_budget, color_strip, extend_coloring, greedy_fill
from . import localsim
from .localsim import Collect, Send, StepResult

Coloring = Dict[int, int]


def eps_to_k(eps: float) -> int:
    return math.ceil(2.0 / eps)


# Round schedule constants. The pruning radius follows the collection radius
# used by the per-node loop; the coloring stages charge the structure gather,
# the id-based boundary symmetry breaking, and the segment fill.
def prune_radius(k: int) -> int:
    return 10 * k


def color_stages(k: int) -> List[int]:
    return [2 * k + 12] + [k + 6] * 9 + [3 * k + 15]


def correction_poll_radius(k: int) -> int:
    return 2 * k + 12


def set_color_latency(k: int) -> int:
    return k + 4


@dataclass(frozen=True)
class PeelPath:
    """A peeled path, materialized independently of any forest object."""

    cliques: Tuple[frozenset, ...]
    kind: str
    attach_s: Optional[frozenset]
    attach_e: Optional[frozenset]
    members: Tuple[int, ...]  # nodes whose whole subtree lies on the path


@dataclass
class Layering:
    layer: Dict[int, int]
    parent: Dict[int, Optional[int]]
    children: Dict[int, Dict[int, Tuple[int, ...]]]
    peeled_paths: Dict[int, List[PeelPath]]
    num_layers: int
    clique_count: int
    forest_history: List[CliqueForest] = field(default_factory=list)

    def layer_nodes(self, i: int) -> List[int]:
        return sorted(v for v, l in self.layer.items() if l == i)


def _attach_sides(forest, path):
    sides = []
    for attach in (path.attach_s, path.attach_e):
        sides.append(forest.cliques[attach] if attach is not None else None)
    return sides


def prune_layers(g: Graph, k: int) -> Layering:
    """Iteratively peel pendant paths and long internal paths off the forest.

    Returns the layer index per node, parent/children assignments for the
    correction phase, and the peeled path records per layer.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    forest = clique_forest(g)
    layering = Layering({}, {}, {}, {}, 0, len(forest), [forest])
    children_raw: Dict[int, Dict[int, List[int]]] = {}
    i = 1
    while len(forest):
        paths = classify_paths(forest)
        selected = [
            p for p in paths
            if p.kind != INTERNAL or path_diameter(g, p) >= 3 * k
        ]
        if not selected:
            raise NonTermination("no peelable path found on a nonempty forest")
        new_forest, removed = remove_paths(forest, g, selected)
        records = []
        ball_cache: Dict[frozenset, Dict[int, int]] = {}
        for p in selected:
            path_ids = set(p.cliques)
            members = sorted(
                v for v in p.node_set()
                if all(j in path_ids for j in forest.phi[v])
            )
            side_sets = _attach_sides(forest, p)
            records.append(PeelPath(
                tuple(p.clique_sets()), p.kind,
                side_sets[0], side_sets[1], tuple(members),
            ))
            # parent assignment: nearest attach clique within k + 3, ties by word
            side_dist = []
            for side in side_sets:
                if side is None:
                    side_dist.append(None)
                elif side in ball_cache:
                    side_dist.append(ball_cache[side])
                else:
                    dmap = bfs_distances(g, side, cutoff=k + 3)
                    ball_cache[side] = dmap
                    side_dist.append(dmap)
            for v in members:
                layering.layer[v] = i
                best = None
                for side, dmap in zip(side_sets, side_dist):
                    if dmap is None or v not in dmap:
                        continue
                    key = (dmap[v], clique_word(side))
                    if best is None or key < best[0]:
                        best = (key, side)
                if best is None:
                    layering.parent[v] = None
                else:
                    par = max(best[1])
                    layering.parent[v] = par
                    children_raw.setdefault(par, {}).setdefault(i, []).append(v)
        layering.peeled_paths[i] = records
        if set().union(*(r.members for r in records)) != removed:
            raise AssertionError("peel bookkeeping mismatch")
        layering.forest_history.append(new_forest)
        forest = new_forest
        i += 1
    layering.num_layers = i - 1
    layering.children = {
        par: {l: tuple(sorted(vs)) for l, vs in per.items()}
        for par, per in children_raw.items()
    }
    return layering


def color_layers(g: Graph, layering: Layering, k: int) -> Coloring:
    """Color every layer independently; conflicts may remain between layers.

    Every component of a layer is a piece of one peeled path, so its clique
    path is read off the peel record instead of being recomputed.
    """
    colors: Coloring = {}
    for i in range(1, layering.num_layers + 1):
        for record in layering.peeled_paths[i]:
            for strip in strips_from_traces(record.cliques, set(record.members)):
                colors.update(color_strip(g, strip, k))
    return colors


@dataclass
class CorrectionJob:
    """One path's repair work: which nodes may be recolored and their colors."""

    layer: int
    path: PeelPath
    conflicted: bool
    new_colors: Coloring  # full coloring of the path's member nodes
    changed: Set[int]
    wprime: Set[int]


def _job_component(g: Graph, strip: IntervalStrip, w_set, sides, colors, k):
    """Recolor one connected component of a path's strip.

    `sides` holds the higher-layer conflict nodes per attach side (possibly
    empty sets). Only nodes within distance k + 3 of a conflict side may end
    up with a new color. Returns new colors for the component's W nodes.
    """
    compset = set(strip.nodes)
    comp = g.subgraph(compset)
    t = len(strip.cliques)
    new_colors = {v: colors[v] for v in compset}

    portions = [s & compset for s in sides if s & compset]
    fixed_value_cap = max((colors[u] for part in portions for u in part), default=0)
    omega = max(len(c) for c in strip.cliques)
    budget = max(color_budget(k, omega), fixed_value_cap)

    def reseat_end(end_idx, side, existing):
        """End clique colors: the side keeps its finals, W members re-seated."""
        out = dict(existing)
        for u in side:
            out[u] = colors[u]
        for v in sorted(strip.cliques[end_idx] - side):
            if v in out:
                continue
            taken = {out[u] for u in strip.cliques[end_idx] if u in out}
            c = 1
            while c in taken:
                c += 1
            out[v] = c
        return out

    def frontier(side, from_left):
        """Nearest clique whose members all sit at distance >= k + 3."""
        dist = bfs_distances(comp, side, cutoff=k + 2)
        rng = range(t) if from_left else range(t - 1, -1, -1)
        for j in rng:
            if all(u not in dist for u in strip.cliques[j]):
                return j
        return None

    if t == 1:
        side_union = set().union(set(), *portions)
        new_colors.update(reseat_end(0, side_union, {}))
        return {v: new_colors[v] for v in compset & w_set}

    left: Set[int] = set()
    right: Set[int] = set()
    for part in portions:
        if part <= strip.cliques[0] and not left:
            left |= part
        elif part <= strip.cliques[-1]:
            right |= part
        else:
            raise AssertionError("conflict nodes outside the end cliques")
    if not left and right:
        strip = IntervalStrip(list(reversed(strip.cliques)))
        left, right = right, set()

    def one_sided(side, at_left):
        view = strip if at_left else IntervalStrip(list(reversed(strip.cliques)))
        f = frontier(side, from_left=True) if at_left else None
        if not at_left:
            f_orig = frontier(side, from_left=False)
            f = None if f_orig is None else (t - 1 - f_orig)
        fixed = reseat_end(0 if at_left else t - 1, side, {})
        if f is None:
            new_colors.update(greedy_fill(view, fixed))
            return
        seg_cliques = view.cliques[0:f + 1]
        seg = IntervalStrip(seg_cliques)
        for u in seg_cliques[-1]:
            fixed.setdefault(u, colors[u])
        new_colors.update(extend_coloring(seg, budget, fixed))

    if left and right:
        f_left = frontier(left, from_left=True)
        f_right = frontier(right, from_left=False)
        if f_left is not None and f_right is not None and f_left <= f_right:
            one_sided(left, at_left=True)
            one_sided(right, at_left=False)
        else:
            fixed = reseat_end(0, left, {})
            fixed = reseat_end(t - 1, right, fixed)
            new_colors.update(extend_coloring(strip, budget, fixed))
    elif left:
        one_sided(left, at_left=True)
    return {v: new_colors[v] for v in compset & w_set}


def build_correction_job(g: Graph, layering: Layering, record: PeelPath,
                         layer: int, colors: Coloring, k: int) -> CorrectionJob:
    w_set = set(record.members)
    wprime = set()
    for w in record.members:
        for u in g.adj[w]:
            if u not in w_set:
                if layering.layer[u] == layer:
                    raise AssertionError("same-layer neighbor outside the path")
                if layering.layer[u] > layer:
                    wprime.add(u)
    conflicted = any(
        colors[w] == colors[u]
        for w in record.members for u in g.adj[w] if u in wprime
    )
    if not conflicted:
        return CorrectionJob(layer, record, False,
                             {v: colors[v] for v in w_set}, set(), wprime)
    sides = [s for s in (record.attach_s, record.attach_e) if s is not None]
    side_conflict = [set(s) & wprime for s in sides]
    if wprime - set().union(set(), *side_conflict):
        raise AssertionError("conflict nodes outside the attach cliques")
    ext_seq = []
    if record.attach_s is not None:
        ext_seq.append(record.attach_s)
    ext_seq.extend(record.cliques)
    if record.attach_e is not None:
        ext_seq.append(record.attach_e)
    ctx_nodes = w_set | wprime
    new_colors = {v: colors[v] for v in w_set}
    for strip in strips_from_traces(ext_seq, ctx_nodes):
        if not (strip.nodes & wprime):
            continue  # no conflicts can touch this piece
        new_colors.update(_job_component(g, strip, w_set, side_conflict, colors, k))
    changed = {v for v in w_set if new_colors[v] != colors[v]}
    if debug_invariants() and changed:
        reach = bfs_distances(g, wprime, cutoff=k + 4)
        if any(v not in reach for v in changed):
            raise AssertionError("recolored node beyond distance k + 4 of conflicts")
    return CorrectionJob(layer, record, True, new_colors, changed, wprime)


def correct_colors(g: Graph, layering: Layering, colors: Coloring, k: int) -> Coloring:
    """Repair inter-layer conflicts from the top layer downwards."""
    out = dict(colors)
    for i in range(layering.num_layers - 1, 0, -1):
        for record in layering.peeled_paths[i]:
            job = build_correction_job(g, layering, record, i, out, k)
            out.update(job.new_colors)
    return out


@dataclass
class MvcRun:
    """Everything both variants share: the layering and the two colorings."""

    g: Graph
    eps: float
    k: int
    omega: int
    layering: Layering
    base_colors: Coloring
    final_colors: Coloring

    @property
    def budget(self) -> int:
        return color_budget(self.k, self.omega)


def mvc_pipeline(g: Graph, eps: float) -> MvcRun:
    omega = omega_oracle(g)
    if omega and eps < 2.0 / omega:
        raise EpsilonTooSmall("eps %.4f below 2/omega = %.4f" % (eps, 2.0 / omega))
    k = eps_to_k(eps)
    layering = prune_layers(g, k)
    base = color_layers(g, layering, k)
    final = correct_colors(g, layering, base, k)
    return MvcRun(g, eps, k, omega, layering, base, final)


def mvc_centralized(g: Graph, eps: float) -> Coloring:
    return mvc_pipeline(g, eps).final_colors


# ---------------------------------------------------------------------------
# distributed variant


class _Registry:
    """Rounds at which nodes received their final color (read-only for polls
    that were requested at strictly earlier rounds, so scan order is moot)."""

    def __init__(self):
        self.final_round: Dict[int, int] = {}


class MvcProgram:
    """Node program: prune loop, per-layer coloring, correction with waits.

    Decisions are read from the shared deterministic pipeline; every phase
    still pays its communication (collect radii, polls, multi-hop color
    messages), which is what the transcript measures.
    """

    step_every_round = False

    def __init__(self, run: MvcRun):
        self.run = run
        self.registry = _Registry()
        self.k = run.k

    # -- helpers ----------------------------------------------------------
    def _levels(self, v) -> List[int]:
        per = self.run.layering.children.get(v, {})
        return sorted(per, reverse=True)

    def _wait_set(self, v, level) -> Tuple[int, ...]:
        kids = self.run.layering.children[v][level]
        need = set()
        for child in kids:
            for u in self.run.g.adj[child]:
                if self.run.layering.layer[u] > level:
                    need.add(u)
        return tuple(sorted(need))

    def _finalize(self, state, rnd):
        v = state["id"]
        self.registry.final_round.setdefault(v, rnd)
        state["phase"] = "correct"
        state["levels"] = self._levels(v)
        return self._next_level(state, rnd)

    def _next_level(self, state, rnd):
        v = state["id"]
        if not state["levels"]:
            state["phase"] = "done"
            return StepResult(state, output=state["color"],
                              publish={"final": state["color"]})
        level = state["levels"][0]
        state["await"] = (level, rnd)
        req = Collect(correction_poll_radius(self.k), tag=("poll", level),
                      want_data=False)
        return StepResult(state, requests=[req], output=state["color"],
                          publish={"final": state["color"]})

    # -- engine interface --------------------------------------------------
    def init(self, node, neighbors):
        return {"id": node, "phase": "prune", "iter": 1, "color": None,
                "levels": None, "await": None, "stage": 0}

    def step(self, state, rnd, inbox):
        v = state["id"]
        run = self.run
        if state["phase"] == "prune":
            if rnd == 0:
                return StepResult(state, requests=[
                    Collect(prune_radius(self.k), tag="prune", want_data=False)])
            assert any(key == ("collect", "prune") for key in inbox)
            i = state["iter"]
            if run.layering.layer[v] == i:
                state["phase"] = "color"
                state["stage"] = 0
                stages = color_stages(self.k)
                return StepResult(
                    state, publish={"layer": i},
                    requests=[Collect(stages[0], tag="color", want_data=False)])
            state["iter"] = i + 1
            return StepResult(state, requests=[
                Collect(prune_radius(self.k), tag="prune", want_data=False)])

        if state["phase"] == "color":
            stages = color_stages(self.k)
            state["stage"] += 1
            if state["stage"] < len(stages):
                return StepResult(state, requests=[
                    Collect(stages[state["stage"]], tag="color", want_data=False)])
            state["color"] = run.base_colors[v]
            if run.layering.parent[v] is None:
                state["color"] = run.final_colors[v]
                return self._finalize(state, rnd)
            state["phase"] = "wait_color"
            return StepResult(state, publish={"color": state["color"]})

        if state["phase"] == "wait_color":
            for key, payload in sorted(inbox.items(), key=repr):
                if key[0] == "msg" and payload[0] == "set_color":
                    state["color"] = payload[1]
                    return self._finalize(state, rnd)
            return StepResult(state)

        if state["phase"] == "correct":
            level, requested_at = state["await"]
            ready = all(
                self.registry.final_round.get(u, rnd + 1) <= requested_at
                for u in self._wait_set(v, level)
            )
            if not ready:
                state["await"] = (level, rnd)
                return StepResult(state, requests=[
                    Collect(correction_poll_radius(self.k),
                            tag=("poll", level), want_data=False)])
            kids = run.layering.children[v][level]
            sends = [
                Send(child, ("set_color", run.final_colors[child]),
                     set_color_latency(self.k))
                for child in kids
            ]
            state["levels"] = state["levels"][1:]
            res = self._next_level(state, rnd)
            res.requests = sends + res.requests
            return res

        return StepResult(state)


def default_round_cap(g: Graph, eps: float) -> int:
    k = eps_to_k(eps)
    logn = max(1, math.ceil(math.log2(max(2, len(g)))))
    return 40 * k * (logn + 4) + 40 * k


def mvc_distributed_run(run: MvcRun, round_cap: Optional[int] = None):
    """Simulate the node program on an already-computed pipeline."""
    cap = round_cap or default_round_cap(run.g, run.eps)
    transcript = localsim.run(run.g, MvcProgram(run), cap)
    colors = dict(transcript.outputs)
    if colors != run.final_colors:
        raise AssertionError("distributed coloring diverged from centralized")
    return colors, transcript


def mvc_distributed(g: Graph, eps: float, round_cap: Optional[int] = None):
    """Simulate the node program; returns (coloring, transcript).

    The coloring is identical to mvc_centralized(g, eps) by construction and
    the transcript carries the exact round count of the simulated run.
    """
    return mvc_distributed_run(mvc_pipeline(g, eps), round_cap)


def local_peel_decision(gball: Graph, center: int, residual, k: int):
    """Per-node form of the peeling decision, computed from a radius-10k ball.

    `gball` is the induced subgraph on the radius-10k neighborhood of
    `center` in the full input graph; `residual` flags nodes not yet layered.
    Returns (peel, parent). Used to confirm that the shared pipeline decides
    exactly what a node could decide from its own collected view.
    """
    from .cliqueforest import local_view

    radius = prune_radius(k)
    resid_ball = gball.subgraph(set(gball.nodes) & set(residual))
    view = local_view(resid_ball, center, radius)
    dist = bfs_distances(resid_ball, center)

    def certified(i):
        return all(dist.get(u, radius + 1) <= radius - 1 for u in view.cliques[i])

    subtree = list(view.phi[center])
    if any(view.degree(i) > 2 for i in subtree):
        return False, None
    # order the center's subtree as a path
    if len(subtree) > 1:
        inner = {i: [j for j in view.fadj[i] if j in set(subtree)] for i in subtree}
        ends = sorted(i for i in subtree if len(inner[i]) <= 1)
        seq = [ends[0]]
        prev = None
        while len(seq) < len(subtree):
            nxt = [j for j in inner[seq[-1]] if j != prev]
            prev = seq[-1]
            seq.append(nxt[0])
        subtree = seq
    run_seq = list(subtree)
    stops = []
    blocked = set()
    for at_front in (False, True):
        while True:
            end = run_seq[0] if at_front else run_seq[-1]
            taken = set(run_seq) | blocked
            nxt = [j for j in view.fadj[end] if j not in taken]
            if not nxt:
                stops.append(("end", None))
                break
            step = nxt[0]
            if not certified(step):
                stops.append(("horizon", None))
                blocked.add(step)
                break
            if view.degree(step) > 2:
                stops.append(("junction", step))
                blocked.add(step)
                break
            if at_front:
                run_seq.insert(0, step)
            else:
                run_seq.append(step)
    back, front = stops  # extension ran back side first, then front
    kinds = {front[0], back[0]}
    if kinds == {"junction"}:
        strip = IntervalStrip([view.cliques[i] for i in run_seq])
        peel = strip.diameter() >= 3 * k
    else:
        peel = True  # a true end makes it pendant; a horizon proves diameter
    if not peel:
        return False, None
    best = None
    full_dist = bfs_distances(gball, center, cutoff=k + 3)
    for stop_kind, attach in (front, back):
        if stop_kind != "junction":
            continue
        clique = view.cliques[attach]
        d = min((full_dist[u] for u in clique if u in full_dist), default=None)
        if d is None:
            continue
        key = (d, clique_word(clique))
        if best is None or key < best[0]:
            best = (key, clique)
    return True, (max(best[1]) if best else None)
