"""Synchronous LOCAL-model engine: lockstep rounds, unbounded messages,
per-node write-once outputs, and exact round accounting.

Programs are explicit state machines. Besides raw per-neighbor messages the
engine offers two services with honest round costs:

* ``Collect(radius)``: delivered exactly `radius` rounds later, carrying the
  radius-ball induced subgraph and a snapshot of published node variables
  taken at request time. Semantically identical to flooding for `radius`
  rounds (the ``gather`` combinator is that flooding, and tests hold the two
  sides equal) while letting large simulations skip per-node payload copies.
* ``Send(target, payload, latency)``: multi-hop unicast delivered after
  `latency` rounds; `latency` must be at least the graph distance.

Nodes that finished still relay traffic: the engine performs delivery for
every collect or send regardless of the state of intermediate nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .errors import RoundCapExceeded
from .graphs import Graph, bfs_distances

NO_OUTPUT = object()


@dataclass(frozen=True)
class Collect:
    radius: int
    tag: Any = None
    want_data: bool = True


@dataclass(frozen=True)
class Send:
    target: int
    payload: Any
    latency: int


@dataclass(frozen=True)
class CollectResult:
    tag: Any
    radius: int
    requested_at: int
    nodes: Optional[Tuple[int, ...]] = None
    adjacency: Optional[Dict[int, Tuple[int, ...]]] = None
    vars: Optional[Dict[int, Dict[str, Any]]] = None


@dataclass
class StepResult:
    state: Any
    outbox: Dict[int, Any] = field(default_factory=dict)
    output: Any = NO_OUTPUT
    requests: List[Any] = field(default_factory=list)
    publish: Dict[str, Any] = field(default_factory=dict)
    wake_at: Optional[int] = None


@dataclass
class Transcript:
    rounds_elapsed: int
    outputs: Dict[int, Any]
    complete: bool
    message_counts: List[int] = field(default_factory=list)
    service_counts: List[int] = field(default_factory=list)
    message_log: Optional[List[List[Tuple[int, int, Any]]]] = None

    def serialize(self) -> str:
        lines = ["rounds %d" % self.rounds_elapsed, "complete %s" % self.complete]
        for v in sorted(self.outputs):
            lines.append("out %d %r" % (v, self.outputs[v]))
        lines.append("msgs %s" % ",".join(map(str, self.message_counts)))
        lines.append("svc %s" % ",".join(map(str, self.service_counts)))
        return "\n".join(lines) + "\n"


def quiescence_detect(t: Transcript) -> bool:
    """True iff every node produced its final output before the cap."""
    return t.complete


def run(g: Graph, program, round_cap: int, record_messages: bool = False,
        scan: str = "forward") -> Transcript:
    """Execute `program` on every node of `g` in lockstep rounds.

    Deterministic: the result is a pure function of (g, program, round_cap);
    the `scan` order must not affect it (checked in tests).
    """
    if round_cap < 1:
        raise ValueError("round_cap must be >= 1")
    nodes = g.sorted_nodes()
    states = {v: program.init(v, tuple(sorted(g.adj[v]))) for v in nodes}
    outputs: Dict[int, Any] = {}
    published: Dict[int, Dict[str, Any]] = {v: {} for v in nodes}
    pending: Dict[int, Dict[int, list]] = {}  # round -> node -> inbox items
    wake: Dict[int, set] = {}
    step_every_round = getattr(program, "step_every_round", True)
    message_counts: List[int] = []
    service_counts: List[int] = []
    log: Optional[List[List[Tuple[int, int, Any]]]] = [] if record_messages else None
    dist_cache: Dict[int, Dict[int, int]] = {}

    def hop_distance(u, v):
        if u not in dist_cache:
            dist_cache[u] = bfs_distances(g, u)
        return dist_cache[u].get(v)

    def transcript(rounds, complete):
        return Transcript(rounds, dict(outputs), complete,
                          message_counts, service_counts, log)

    # round 0 is the setup phase: every node steps once with an empty inbox
    # and may already send; a message sent in round r is readable in round
    # r + 1, so after round t every node has exactly its radius-t knowledge
    for rnd in range(0, round_cap + 1):
        due_map = pending.pop(rnd, {})
        due = set(due_map) | wake.pop(rnd, set())
        if step_every_round or rnd == 0:
            due = set(nodes)
        order = sorted(due)
        if scan == "reverse":
            order = order[::-1]
        msg_count = 0
        svc_count = 0
        round_log: List[Tuple[int, int, Any]] = []
        publish_buffer: List[Tuple[int, Dict[str, Any]]] = []
        collect_buffer: List[Tuple[int, Collect, int]] = []
        for v in order:
            inbox = dict(due_map.get(v, ()))
            res = program.step(states[v], rnd, inbox)
            states[v] = res.state
            if res.output is not NO_OUTPUT:
                if v in outputs and outputs[v] != res.output:
                    raise RuntimeError("node %d changed its final output" % v)
                outputs[v] = res.output
            for nbr in sorted(res.outbox):
                if nbr not in g.adj[v]:
                    raise RuntimeError("node %d sent to non-neighbor %d" % (v, nbr))
                payload = res.outbox[nbr]
                pending.setdefault(rnd + 1, {}).setdefault(nbr, []).append(
                    (("msg", v), payload))
                msg_count += 1
                if log is not None:
                    round_log.append((v, nbr, payload))
            for req in res.requests:
                svc_count += 1
                if isinstance(req, Collect):
                    collect_buffer.append((v, req, rnd))
                elif isinstance(req, Send):
                    d = None
                    if __debug__:
                        d = hop_distance(v, req.target)
                        if d is None:
                            raise RuntimeError("send to unreachable node")
                        if req.latency < d:
                            raise RuntimeError(
                                "latency %d below distance %d" % (req.latency, d))
                    pending.setdefault(rnd + req.latency, {}).setdefault(
                        req.target, []).append((("msg", v), req.payload))
                    if log is not None:
                        round_log.append((v, req.target, req.payload))
                else:
                    raise TypeError("unknown service request %r" % (req,))
            if res.publish:
                publish_buffer.append((v, res.publish))
            if res.wake_at is not None:
                if res.wake_at <= rnd:
                    raise RuntimeError("wake_at must be in the future")
                wake.setdefault(res.wake_at, set()).add(v)
        # publishes land after every step of the round, then collects snapshot
        for v, items in publish_buffer:
            published[v].update(items)
        for v, req, at in collect_buffer:
            if req.want_data:
                ball = bfs_distances(g, v, cutoff=req.radius)
                members = tuple(sorted(ball))
                adjacency = {u: tuple(sorted(g.adj[u] & ball.keys())) for u in members}
                snapshot = {u: dict(published[u]) for u in members}
                result = CollectResult(req.tag, req.radius, at, members, adjacency, snapshot)
            else:
                result = CollectResult(req.tag, req.radius, at)
            pending.setdefault(rnd + req.radius, {}).setdefault(v, []).append(
                (("collect", req.tag), result))
        message_counts.append(msg_count)
        service_counts.append(svc_count)
        if log is not None:
            log.append(round_log)
        if len(outputs) == len(nodes):
            return transcript(max(rnd, 1), True)
    raise RoundCapExceeded("round cap %d reached" % round_cap,
                           transcript(round_cap, False))


class GatherProgram:
    """Flood for `radius` rounds, then output the learned ball.

    Each node starts knowing its id, neighbor list, and an optional local
    variable; after exactly `radius` rounds it outputs a map from every node
    within distance `radius` to that node's (neighbors, variable) pair.
    """

    step_every_round = True

    def __init__(self, radius: int, local_vars: Optional[Dict[int, Any]] = None):
        if radius < 1:
            raise ValueError("radius must be >= 1")
        self.radius = radius
        self.local_vars = local_vars or {}

    def init(self, node, neighbors):
        entry = {node: (neighbors, self.local_vars.get(node))}
        return {"id": node, "nbrs": neighbors, "know": dict(entry), "new": dict(entry)}

    def step(self, state, rnd, inbox):
        learned = {}
        for key, payload in inbox.items():
            if key[0] != "msg":
                continue
            for u, entry in payload.items():
                if u not in state["know"]:
                    learned[u] = entry
        state["know"].update(learned)
        fresh = state.pop("new", None)
        to_send = dict(fresh) if fresh else {}
        to_send.update(learned)
        state["new"] = {}
        outbox = {}
        if rnd < self.radius and to_send:
            outbox = {nbr: to_send for nbr in state["nbrs"]}
        output = NO_OUTPUT
        if rnd == self.radius:
            output = {u: state["know"][u] for u in sorted(state["know"])}
        return StepResult(state, outbox, output)


def gather(radius: int, local_vars: Optional[Dict[int, Any]] = None) -> GatherProgram:
    """Program combinator: gather the radius-ball (usable alone or sequenced)."""
    return GatherProgram(radius, local_vars)


class UniformStagedProgram:
    """Walk a per-node list of collect stages, then emit the given output.

    The workhorse for distributed variants whose decisions are shared
    deterministic functions: the engine still pays every stage its radius.
    """

    step_every_round = False

    def __init__(self, stages: Dict[int, List[int]], outputs: Dict[int, Any]):
        self.stages = stages
        self.outputs = outputs

    def init(self, node, neighbors):
        return {"id": node, "stage": -1}

    def step(self, state, rnd, inbox):
        v = state["id"]
        stages = self.stages[v]
        state["stage"] += 1
        if state["stage"] < len(stages):
            return StepResult(state, requests=[
                Collect(stages[state["stage"]], tag="work", want_data=False)])
        return StepResult(state, output=self.outputs[v])


class SequencedProgram:
    """Run sub-programs back to back; each stage sees the previous output."""

    step_every_round = True

    def __init__(self, stages):
        self.stages = list(stages)

    def init(self, node, neighbors):
        return {"node": node, "nbrs": neighbors, "idx": 0, "offset": 0,
                "sub": self.stages[0].init(node, neighbors), "prev": None}

    def step(self, state, rnd, inbox):
        stage = self.stages[state["idx"]]
        res = stage.step(state["sub"], rnd - state["offset"], inbox)
        state["sub"] = res.state
        output = NO_OUTPUT
        if res.output is not NO_OUTPUT:
            state["prev"] = res.output
            if state["idx"] + 1 < len(self.stages):
                state["idx"] += 1
                state["offset"] = rnd + 1  # next stage sees local round 0 next
                nxt = self.stages[state["idx"]]
                sub = nxt.init(state["node"], state["nbrs"])
                if hasattr(nxt, "accept_input"):
                    sub = nxt.accept_input(sub, res.output)
                state["sub"] = sub
            else:
                output = res.output
        return StepResult(state, res.outbox, output, res.requests, res.publish)
