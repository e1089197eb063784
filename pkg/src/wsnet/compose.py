"""Forward-chaining composition search over a corpus"""

import logging
from dataclasses import dataclass

from .config import PlanError
from .corpus import Corpus
from .matching import KeyFunction, MatchKey, MatchMode, keys_from_text, match_key, op_keys

__all__ = ["Request", "Plan", "request_from_text", "forward_chain", "prune_plan", "replay_plan", "plan_lines"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Request:
    "Keys a client can supply and keys it wants back"

    provided: frozenset[MatchKey]
    desired: frozenset[MatchKey]
    mode: MatchMode = MatchMode.SYNTACTIC

    def __post_init__(self):
        object.__setattr__(self, "provided", frozenset(self.provided))
        object.__setattr__(self, "desired", frozenset(self.desired))
        object.__setattr__(self, "mode", MatchMode(self.mode))
        if not self.desired:
            raise PlanError("A request needs at least one desired key")
        if any(k.mode is not self.mode for k in self.provided | self.desired):
            raise PlanError(f"Request mixes match modes; expected only {self.mode} keys")


def request_from_text(provided: str, desired: str, mode: MatchMode = MatchMode.SYNTACTIC) -> Request:
    "Request from comma-separated names (syntactic) or concept URIs (semantic)"
    return Request(keys_from_text(provided, mode), keys_from_text(desired, mode), mode)


@dataclass(frozen=True)
class Plan:
    "Layers of operation ids; every operation of a layer is firable from what the earlier layers made known"

    layers: tuple[tuple[str, ...], ...]
    satisfied: bool
    known_at_end: frozenset[MatchKey]

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def operations(self) -> list[str]:
        return [o for layer in self.layers for o in layer]


def _keyed_ops(corpus: Corpus, mode: MatchMode, key_fn: KeyFunction, restrict_to=None):
    allowed = None if restrict_to is None else set(restrict_to)
    return {op.id: op_keys(op, mode, key_fn) for op in corpus.operations if allowed is None or op.id in allowed}


def forward_chain(
    corpus: Corpus,
    request: Request,
    restrict_to=None,  # Operation ids the search may use, e.g. one component's operations
    key_fn: KeyFunction = match_key,
) -> Plan:
    "Fire every firable unused operation per layer until the desired keys are known or nothing more fires"
    known = set(request.provided)
    if request.desired <= known:
        return Plan((), True, frozenset(known))
    pending = _keyed_ops(corpus, request.mode, key_fn, restrict_to)
    layers = []
    while True:
        layer = tuple(sorted(i for i, (ins, _) in pending.items() if ins <= known))
        if not layer:
            break
        for i in layer:
            known |= pending.pop(i)[1]
        layers.append(layer)
        if request.desired <= known:
            break
    satisfied = request.desired <= known
    logger.debug("Forward chaining: %d layers, satisfied=%s", len(layers), satisfied)
    return Plan(tuple(layers), satisfied, frozenset(known))


def replay_plan(corpus: Corpus, plan: Plan, request: Request, key_fn: KeyFunction = match_key) -> frozenset[MatchKey]:
    "Known keys after executing `plan` layer by layer; PlanError when an operation is not firable in its layer"
    known = set(request.provided)
    for t, layer in enumerate(plan.layers):
        keyed = [(i, *op_keys(corpus[i], request.mode, key_fn)) for i in layer]
        for i, ins, _ in keyed:
            if not ins <= known:
                raise PlanError(f"Operation {i} in layer {t} needs {sorted(map(str, ins - known))}")
        for _, _, outs in keyed:
            known |= outs
    return frozenset(known)


def prune_plan(corpus: Corpus, plan: Plan, request: Request, key_fn: KeyFunction = match_key) -> Plan:
    "Backward relevance sweep: drop operations whose outputs nobody downstream demands"
    if not plan.satisfied:
        raise PlanError("Only satisfied plans can be pruned")
    demand = set(request.desired - request.provided)
    kept = []
    for layer in reversed(plan.layers):
        keyed = [(i, *op_keys(corpus[i], request.mode, key_fn)) for i in layer]
        keep = [(i, ins) for i, ins, outs in keyed if outs & demand]
        for _, ins in keep:
            demand |= ins - request.provided
        if keep:
            kept.append(tuple(i for i, _ in keep))
    layers = tuple(reversed(kept))
    pruned = Plan(layers, True, frozenset())
    known = replay_plan(corpus, pruned, request, key_fn)
    logger.debug("Pruned plan from %d to %d operations", len(plan.operations), len(pruned.operations))
    return Plan(layers, request.desired <= known, known)


def plan_lines(plan: Plan) -> str:
    "One line per layer, operation ids sorted and comma-separated"
    head = "satisfied" if plan.satisfied else "unsatisfied"
    body = "".join(f"{t + 1}\t{','.join(sorted(layer))}\n" for t, layer in enumerate(plan.layers))
    return f"# {head}, {len(plan)} layers\n{body}"
