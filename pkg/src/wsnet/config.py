"""Shared defaults (`ws_cfg`), the `pmap` fan-out helper and the exception hierarchy used across wsnet"""

from fastcore.parallel import parallel
from fastcore.utils import AttrDict, ifnone

__all__ = [
    "ws_cfg",
    "WsnetError",
    "UsageError",
    "WscSyntaxError",
    "DuplicateOperationError",
    "MalformedWsdlError",
    "UnknownNodeError",
    "SelfLoopError",
    "EmptyScopeError",
    "BaselineMismatchError",
    "PowerLawFitError",
    "PlanError",
    "pmap",
]

ws_cfg = AttrDict(
    seed=42,
    samples=100,
    replicates=1000,
    n_workers=0,  # 0 runs fan-outs serially
    max_alpha=20.0,
    min_degrees=10,
    pvalue_threshold=0.1,
)


def pmap(f, items, n_workers: int | None = None) -> list:
    "Order-preserving threaded map over `items`; `n_workers=0` runs serially"
    return list(parallel(f, list(items), n_workers=ifnone(n_workers, ws_cfg.n_workers), threadpool=True, progress=False))


class WsnetError(Exception):
    "Base class for every error raised by wsnet"


class UsageError(WsnetError):
    "Bad command-line usage (exit status 2)"


class WscSyntaxError(WsnetError, ValueError):
    def __init__(self, lineno: int, msg: str):
        self.lineno, self.msg = lineno, msg
        super().__init__(f"line {lineno}: {msg}")


class DuplicateOperationError(WsnetError, ValueError):
    "An operation id occurs twice in one corpus"


class MalformedWsdlError(WsnetError, ValueError):
    "The WSDL document is not well-formed XML"


class UnknownNodeError(WsnetError, KeyError):
    "A node label or index is not part of the graph"


class SelfLoopError(WsnetError, ValueError):
    "Graphs are simple: an edge may not start and end on the same node"


class EmptyScopeError(WsnetError, ValueError):
    "The requested measurement scope contains no node pair"


class BaselineMismatchError(WsnetError, ValueError):
    "A random baseline was computed for a different (N, L) shape"


class PowerLawFitError(WsnetError, ValueError):
    "The sample cannot support a discrete power-law fit"


class PlanError(WsnetError, ValueError):
    "Invalid composition request or plan"
