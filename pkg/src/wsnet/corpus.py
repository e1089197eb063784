"""The service-description model (`Parameter`, `Operation`, `Service`, `Corpus`) and the canonical WSC text format"""

import logging
import re
import unicodedata
from collections.abc import Iterable
from dataclasses import dataclass, field

from fastcore.utils import Path

from .config import DuplicateOperationError, WscSyntaxError

__all__ = [
    "Parameter",
    "Operation",
    "Service",
    "Corpus",
    "CorpusStats",
    "parse_wsc",
    "serialize_wsc",
    "read_wsc",
    "write_wsc",
    "corpus_stats",
]

logger = logging.getLogger(__name__)

_FIELD_SEP = re.compile(r"[ \t]+")


def _check_token(what: str, s: str, bar: bool = False):
    "Raise ValueError unless `s` is one non-empty WSC token"
    if not s:
        raise ValueError(f"{what} must be non-empty")
    for c in s:
        if c.isspace() or unicodedata.category(c)[0] in "CZ":
            raise ValueError(f"{what} contains whitespace or control character U+{ord(c):04X}: {s!r}")
    if bar and "|" in s:
        raise ValueError(f"{what} contains '|': {s!r}")


@dataclass(frozen=True)
class Parameter:
    "A WSDL part: its `name` and, when annotated, the ontology `concept` URI"

    name: str
    concept: str | None = None

    def __post_init__(self):
        _check_token("Parameter name", self.name, bar=True)
        if self.concept is not None:
            _check_token(f"Concept of parameter {self.name!r}", self.concept)

    def token(self) -> str:
        "The WSC token for this parameter, `name` or `name|concept`"
        return self.name if self.concept is None else f"{self.name}|{self.concept}"


def _dedup(params: Iterable[Parameter]) -> tuple[Parameter, ...]:
    return tuple(dict.fromkeys(params))


@dataclass(frozen=True)
class Operation:
    """An atomic operation with its input set `inputs` and output set `outputs`.

    Both sets are stored as tuples in first-seen order, deduplicated on the (name, concept) pair,
    so that serialization is stable. Either may be empty; they may overlap.
    """

    service: str
    name: str
    inputs: tuple[Parameter, ...] = ()
    outputs: tuple[Parameter, ...] = ()

    def __post_init__(self):
        _check_token("Service name", self.service)
        _check_token("Operation name", self.name)
        object.__setattr__(self, "inputs", _dedup(self.inputs))
        object.__setattr__(self, "outputs", _dedup(self.outputs))

    @property
    def id(self) -> str:
        return f"{self.service}/{self.name}"


@dataclass(frozen=True)
class Service:
    name: str
    operations: tuple[Operation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple(self.operations))
        _check_token("Service name", self.name)
        seen = set()
        for op in self.operations:
            if op.service != self.name:
                raise ValueError(f"Operation {op.id!r} does not belong to service {self.name!r}")
            if op.id in seen:
                raise DuplicateOperationError(f"Duplicate operation id {op.id!r}")
            seen.add(op.id)


@dataclass(frozen=True)
class Corpus:
    "An ordered collection of services; operation ids are unique across the whole corpus"

    services: tuple[Service, ...] = ()
    _index: dict[str, Operation] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "services", tuple(self.services))
        for svc in self.services:
            for op in svc.operations:
                if op.id in self._index:
                    raise DuplicateOperationError(f"Duplicate operation id {op.id!r}")
                self._index[op.id] = op

    @property
    def operations(self) -> list[Operation]:
        "All operations in service order"
        return list(self._index.values())

    def __getitem__(self, op_id: str) -> Operation:
        return self._index[op_id]

    def __contains__(self, op_id: str) -> bool:
        return op_id in self._index

    def __len__(self) -> int:
        return len(self._index)

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus((*self.services, *other.services))


# WSC text format


class _WscBuilder:
    "Accumulates services and operations while `parse_wsc` walks the lines"

    def __init__(self):
        self.services: list[tuple[str, list[Operation]]] = []
        self.op: dict | None = None
        self.ids: set[str] = set()

    def close_op(self):
        if self.op is None:
            return
        svc, ops = self.services[-1]
        ops.append(Operation(svc, self.op["name"], tuple(self.op["IN"]), tuple(self.op["OUT"])))
        self.op = None

    def open_service(self, lineno: int, name: str):
        self.close_op()
        try:
            _check_token("Service name", name)
        except ValueError as e:
            raise WscSyntaxError(lineno, str(e)) from e
        self.services.append((name, []))

    def open_op(self, lineno: int, name: str):
        if not self.services:
            raise WscSyntaxError(lineno, f"OP {name} appears before any SVC")
        self.close_op()
        try:
            _check_token("Operation name", name)
        except ValueError as e:
            raise WscSyntaxError(lineno, str(e)) from e
        op_id = f"{self.services[-1][0]}/{name}"
        if op_id in self.ids:
            raise DuplicateOperationError(f"line {lineno}: duplicate operation id {op_id!r}")
        self.ids.add(op_id)
        self.op = {"name": name, "IN": [], "OUT": []}

    def add_param(self, lineno: int, direction: str, token: str):
        if self.op is None:
            raise WscSyntaxError(lineno, f"{direction} outside an operation")
        name, sep, concept = token.partition("|")
        if not name or (sep and not concept):
            raise WscSyntaxError(lineno, f"bad parameter token {token!r}")
        try:
            self.op[direction].append(Parameter(name, concept if sep else None))
        except ValueError as e:
            raise WscSyntaxError(lineno, str(e)) from e

    def corpus(self) -> Corpus:
        self.close_op()
        return Corpus(tuple(Service(name, tuple(ops)) for name, ops in self.services))


def parse_wsc(text: str) -> Corpus:
    "Parse WSC text into a `Corpus`; only LF ends a line and only spaces or tabs separate fields"
    b = _WscBuilder()
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.strip(" \t\r")
        toks = _FIELD_SEP.split(line) if line else []
        if not toks or toks[0].startswith("#"):
            continue
        if len(toks) != 2:
            raise WscSyntaxError(lineno, f"expected '<DIRECTIVE> <value>', got {line!r}")
        directive, value = toks
        if directive == "SVC":
            b.open_service(lineno, value)
        elif directive == "OP":
            b.open_op(lineno, value)
        elif directive in ("IN", "OUT"):
            b.add_param(lineno, directive, value)
        else:
            raise WscSyntaxError(lineno, f"unknown directive {directive!r}")
    res = b.corpus()
    logger.debug("Parsed WSC corpus: %d services, %d operations", len(res.services), len(res))
    return res


def serialize_wsc(corpus: Corpus) -> str:
    "Canonical WSC text for `corpus`: input order kept, single spaces, LF endings"
    lines = []
    for svc in corpus.services:
        lines.append(f"SVC {svc.name}")
        for op in svc.operations:
            lines.append(f"OP {op.name}")
            lines += [f"IN {p.token()}" for p in op.inputs]
            lines += [f"OUT {p.token()}" for p in op.outputs]
    return "".join(f"{o}\n" for o in lines)


def read_wsc(path: str | Path) -> Corpus:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise WscSyntaxError(data[: e.start].count(b"\n") + 1, f"invalid UTF-8 in {Path(path).name}: {e.reason}") from e
    return parse_wsc(text)


def write_wsc(corpus: Corpus, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(serialize_wsc(corpus).encode("utf-8"))
    return path


@dataclass(frozen=True)
class CorpusStats:
    services: int = 0
    operations: int = 0
    distinct_names: int = 0
    distinct_concepts: int = 0
    annotated_fraction: float = 0.0


def corpus_stats(corpus: Corpus) -> CorpusStats:
    "Sanity counts over the whole corpus"
    occurrences = [p for op in corpus.operations for p in (*op.inputs, *op.outputs)]
    annotated = [p for p in occurrences if p.concept is not None]
    return CorpusStats(
        services=len(corpus.services),
        operations=len(corpus),
        distinct_names=len({p.name for p in occurrences}),
        distinct_concepts=len({p.concept for p in annotated}),
        annotated_fraction=len(annotated) / len(occurrences) if occurrences else 0.0,
    )
