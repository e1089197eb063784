"""WSDL 1.1 + SAWSDL ingestion into the `Corpus` model"""

import logging
import re
from dataclasses import dataclass, field
from warnings import warn

from fastcore.utils import Path, ifnone
from lxml import etree

from .config import MalformedWsdlError, pmap
from .corpus import Corpus, Operation, Parameter, Service, read_wsc

__all__ = [
    "WSDL_NS",
    "SAWSDL_NS",
    "XSD_NS",
    "IngestReport",
    "ingest_wsdl",
    "ingest_file",
    "ingest_directory",
    "load_corpus",
]

logger = logging.getLogger(__name__)

WSDL_NS = "http://schemas.xmlsoap.org/wsdl/"
SAWSDL_NS = "http://www.w3.org/ns/sawsdl"
XSD_NS = "http://www.w3.org/2001/XMLSchema"
_MODEL_REF = f"{{{SAWSDL_NS}}}modelReference"


@dataclass
class IngestReport:
    """What happened while ingesting a directory.

    `skipped` explains every file that produced no service; `dropped_operations` lists operations left out of an
    otherwise parsed service; `extra_concepts` records modelReference URIs beyond the first one, which is the only
    one kept.
    """

    files_read: int = 0
    services: int = 0
    operations: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)
    dropped_operations: list[tuple[str, str, str]] = field(default_factory=list)
    extra_concepts: list[tuple[str, str, tuple[str, ...]]] = field(default_factory=list)

    def merge(self, other: "IngestReport") -> "IngestReport":
        self.files_read += other.files_read
        self.services += other.services
        self.operations += other.operations
        self.skipped += other.skipped
        self.dropped_operations += other.dropped_operations
        self.extra_concepts += other.extra_concepts
        return self


def _w(tag: str) -> str:
    return f"{{{WSDL_NS}}}{tag}"


def _x(tag: str) -> str:
    return f"{{{XSD_NS}}}{tag}"


def _local(qname: str | None) -> str | None:
    "Local part of a `prefix:name` QName attribute value"
    return qname.rpartition(":")[2] if qname else None


def _parse_xml(document: bytes, origin: str) -> etree._Element:
    parser = etree.XMLParser(resolve_entities=False, no_network=True, remove_comments=True)
    try:
        return etree.fromstring(document, parser=parser)
    except etree.XMLSyntaxError as e:
        raise MalformedWsdlError(f"{origin}: malformed XML: {e}") from e


class _Definitions:
    "Messages and schema components gathered from a WSDL document and its same-directory imports"

    def __init__(self, origin: str, report: IngestReport):
        self.origin, self.report = origin, report
        self.messages: dict[str, list[etree._Element]] = {}
        self.elements: dict[str, etree._Element] = {}
        self.types: dict[str, etree._Element] = {}

    def add(self, root: etree._Element):
        for msg in root.iter(_w("message")):
            self.messages.setdefault(msg.get("name"), list(msg.iter(_w("part"))))
        for schema in root.iter(_x("schema")):
            for child in schema:
                if not isinstance(child.tag, str):
                    continue
                name = child.get("name")
                if child.tag == _x("element"):
                    self.elements.setdefault(name, child)
                elif child.tag in (_x("complexType"), _x("simpleType")):
                    self.types.setdefault(name, child)

    def concept(self, part: etree._Element, param: str) -> str | None:
        "First modelReference on the part, else on the element/type it references"
        for node in (part, self.elements.get(_local(part.get("element"))), self.types.get(_local(part.get("type")))):
            if node is None:
                continue
            uris = (node.get(_MODEL_REF) or "").split()
            if uris:
                if len(uris) > 1:
                    self.report.extra_concepts.append((self.origin, param, tuple(uris[1:])))
                    warn(f"{self.origin}: {param} has {len(uris)} modelReference URIs; keeping the first", stacklevel=2)
                return uris[0]
        return None

    def params(self, msg_ref: str | None) -> tuple[Parameter, ...] | None:
        "Parameters of the referenced message; None when the message is undeclared"
        if msg_ref is None:
            return ()
        parts = self.messages.get(_local(msg_ref))
        if parts is None:
            return None
        return tuple(Parameter(p.get("name"), self.concept(p, p.get("name"))) for p in parts if p.get("name"))


def _service_name(root: etree._Element, origin: str) -> str:
    name = root.get("name") or Path(origin).stem
    return re.sub(r"\s+", "_", name)


def _read_imports(root: etree._Element, defs: _Definitions, base_dir: Path | None):
    if base_dir is None:
        return
    for imp in root.iter(_w("import")):
        loc = imp.get("location")
        if not loc:
            continue
        # only files sitting next to the importing document
        target = base_dir / Path(loc).name
        if not target.is_file():
            logger.warning("%s: import %s not found in %s", defs.origin, loc, base_dir)
            continue
        try:
            defs.add(_parse_xml(target.read_bytes(), str(target)))
        except MalformedWsdlError as e:
            logger.warning("%s: ignoring import: %s", defs.origin, e)


def ingest_wsdl(
    document: bytes,  # Raw WSDL 1.1 bytes
    origin: str,  # File name or URL, used for the fallback service name and in the report
    report: IngestReport | None = None,  # Receives dropped operations and extra concepts
    base_dir: Path | None = None,  # Directory where `wsdl:import` locations are resolved
) -> Service:
    "Parse one WSDL document into a `Service`, one `Operation` per portType operation"
    report = ifnone(report, IngestReport())
    root = _parse_xml(document, origin)
    defs = _Definitions(origin, report)
    defs.add(root)
    _read_imports(root, defs, base_dir)
    name = _service_name(root, origin)
    port_types = list(root.iter(_w("portType")))
    if not port_types:
        report.skipped.append((origin, "no portType"))
        return Service(name)
    ops, seen = [], set()
    for pt in port_types:
        for op_el in pt.iterchildren(_w("operation")):
            op_name = op_el.get("name")
            if not op_name:
                continue
            if op_name in seen:
                report.dropped_operations.append((origin, op_name, "operation name repeated across portTypes"))
                continue
            inp, out = op_el.find(_w("input")), op_el.find(_w("output"))
            ins = defs.params(None if inp is None else inp.get("message"))
            outs = defs.params(None if out is None else out.get("message"))
            if ins is None or outs is None:
                report.dropped_operations.append((origin, op_name, "references an undeclared message"))
                logger.warning("%s: operation %s references an undeclared message; skipped", origin, op_name)
                continue
            seen.add(op_name)
            ops.append(Operation(name, op_name, ins, outs))
    return Service(name, tuple(ops))


def ingest_file(path: str | Path) -> tuple[Service | None, IngestReport]:
    "Ingest a single WSDL file; errors become a `skipped` entry instead of an exception"
    path = Path(path)
    report = IngestReport(files_read=1)
    try:
        svc = ingest_wsdl(path.read_bytes(), path.name, report, base_dir=path.parent)
    except (MalformedWsdlError, OSError, ValueError) as e:
        report.skipped.append((path.name, str(e)))
        logger.warning("Skipping %s: %s", path.name, e)
        return None, report
    if not svc.operations:
        if not report.skipped:
            report.skipped.append((path.name, "no operations"))
        return None, report
    logger.debug("Parsed %s: service %s, %d operations", path.name, svc.name, len(svc.operations))
    return svc, report


def ingest_directory(
    path: str | Path,  # Directory holding the WSDL files
    pattern: str = "*.wsdl",  # Filename glob
    n_workers: int | None = None,  # Parallel parse workers; defaults to `ws_cfg.n_workers`
) -> tuple[Corpus, IngestReport]:
    "Ingest every matching file in `path`, in lexicographic filename order"
    path = Path(path)
    if not path.is_dir():
        raise NotADirectoryError(f"Not a readable directory: {path}")
    files = sorted((p for p in path.glob(pattern) if p.is_file()), key=lambda p: p.name)
    results = pmap(ingest_file, files, n_workers)
    report, services, ids = IngestReport(), [], set()
    for f, (svc, rep) in zip(files, results):
        report.merge(rep)
        if svc is None:
            continue
        clash = next((op.id for op in svc.operations if op.id in ids), None)
        if clash:
            report.skipped.append((f.name, f"duplicate operation id {clash!r}"))
            continue
        ids.update(op.id for op in svc.operations)
        services.append(svc)
    report.services, report.operations = len(services), len(ids)
    logger.info(
        "Ingested %s: %d files, %d services, %d operations, %d skipped",
        path,
        report.files_read,
        report.services,
        report.operations,
        len(report.skipped),
    )
    return Corpus(tuple(services)), report


def load_corpus(path: str | Path, pattern: str = "*.wsdl") -> Corpus:
    "A WSDL directory, a single WSDL file, or a WSC text file, as a `Corpus`"
    path = Path(path)
    if path.is_dir():
        return ingest_directory(path, pattern)[0]
    if not path.exists():
        raise FileNotFoundError(f"No corpus at {path}")
    if path.suffix.lower() in (".wsdl", ".xml"):
        svc, report = ingest_file(path)
        if svc is None:
            raise MalformedWsdlError(f"{path.name}: {report.skipped[0][1]}")
        return Corpus((svc,))
    return read_wsc(path)
