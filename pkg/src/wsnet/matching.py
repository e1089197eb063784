"""Strict parameter matching: syntactic equal matching on names and semantic exact matching on concepts"""

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from .corpus import Operation, Parameter

__all__ = [
    "MatchMode",
    "MatchKey",
    "KeyFunction",
    "UNANNOTATED",
    "match_key",
    "similar",
    "op_keys",
    "keys_from_text",
]

UNANNOTATED = "unannotated:"


class MatchMode(str, Enum):
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class MatchKey:
    "Equivalence-class identity of a parameter under one matching mode; keys of different modes never compare equal"

    mode: MatchMode
    key: str

    def __str__(self) -> str:
        return self.key

    @property
    def annotated(self) -> bool:
        return not (self.mode is MatchMode.SEMANTIC and self.key.startswith(UNANNOTATED))


KeyFunction = Callable[[Parameter, MatchMode, str], MatchKey]


def match_key(p: Parameter, mode: MatchMode, context: str) -> MatchKey:
    "The `MatchKey` of `p` under `mode`; `context` is the id of the operation `p` occurs in"
    mode = MatchMode(mode)
    if mode is MatchMode.SYNTACTIC:
        return MatchKey(mode, p.name)
    if p.concept is None:
        # never equal to any other occurrence
        return MatchKey(mode, f"{UNANNOTATED}{context}/{p.name}")
    return MatchKey(mode, p.concept)


def similar(
    p: Parameter,
    q: Parameter,
    mode: MatchMode,
    contexts: tuple[str, str] = ("", ""),  # Operation ids of `p` and `q`
) -> bool:
    return match_key(p, mode, contexts[0]) == match_key(q, mode, contexts[1])


def op_keys(
    op: Operation, mode: MatchMode, key_fn: KeyFunction = match_key
) -> tuple[frozenset[MatchKey], frozenset[MatchKey]]:
    "Input and output key sets of `op`"
    return (
        frozenset(key_fn(p, mode, op.id) for p in op.inputs),
        frozenset(key_fn(p, mode, op.id) for p in op.outputs),
    )


def keys_from_text(text: str, mode: MatchMode) -> frozenset[MatchKey]:
    "Comma-separated names (syntactic) or concept URIs (semantic) as match keys"
    mode = MatchMode(mode)
    return frozenset(MatchKey(mode, o.strip()) for o in text.split(",") if o.strip())
