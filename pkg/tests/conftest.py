"""Shared test fixtures and configuration for wsnet tests."""

import random

import pytest

from wsnet import Corpus, Operation, Parameter, Service, parse_wsc

TWO_OP_WSC = """\
# service alpha with two operations
SVC alpha
OP op1
IN a
IN b
OUT d
OP op2
IN b
IN c
OUT e
OUT f
"""

BOOK_WSC = """\
SVC AuthorNameBookTitle_ISBN
OP AuthorNameBookTitle_ISBN
IN AuthorName|http://example.org/books#Author
IN BookTitle|http://example.org/books#Title
OUT ISBN|http://example.org/books#ISBN
SVC ISBN_PubliDate
OP ISBN_PubliDate
IN ISBN|http://example.org/books#ISBN
OUT PubliDate|http://example.org/books#Date
"""

WSDL_TEMPLATE = """\
<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="{service}" targetNamespace="http://example.org/{service}"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl"
    xmlns:tns="http://example.org/{service}">
  <wsdl:message name="{op}Request">
{inputs}
  </wsdl:message>
  <wsdl:message name="{op}Response">
{outputs}
  </wsdl:message>
  <wsdl:portType name="{service}PortType">
    <wsdl:operation name="{op}">
      <wsdl:input message="tns:{op}Request"/>
      <wsdl:output message="tns:{op}Response"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
"""


def wsdl_text(service: str, op: str, inputs, outputs) -> str:
    "WSDL 1.1 document with one operation; parameters are `name` or `(name, concept)`"

    def parts(params):
        res = []
        for p in params:
            name, concept = (p, None) if isinstance(p, str) else p
            ref = f' sawsdl:modelReference="{concept}"' if concept else ""
            res.append(f'    <wsdl:part name="{name}" type="xsd:string"{ref}/>')
        return "\n".join(res)

    return WSDL_TEMPLATE.format(service=service, op=op, inputs=parts(inputs), outputs=parts(outputs))


@pytest.fixture
def two_op_corpus() -> Corpus:
    """Service alpha: op1 with I={a,b}, O={d} and op2 with I={b,c}, O={e,f}."""
    return parse_wsc(TWO_OP_WSC)


@pytest.fixture
def book_corpus() -> Corpus:
    """The two-service book example: AuthorName+BookTitle → ISBN → PubliDate."""
    return parse_wsc(BOOK_WSC)


@pytest.fixture
def two_op_wsc(tmp_path):
    path = tmp_path / "two_op.wsc"
    path.write_text(TWO_OP_WSC)
    return path


@pytest.fixture
def write_wsdl(tmp_path):
    """Write a one-operation WSDL file into a directory under `tmp_path`."""

    def _write(service, op, inputs, outputs, dirname="wsdl", filename=None):
        d = tmp_path / dirname
        d.mkdir(exist_ok=True)
        path = d / (filename or f"{service}.wsdl")
        path.write_text(wsdl_text(service, op, inputs, outputs), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def book_wsdl_dir(write_wsdl):
    """Directory holding the two book-example services as annotated WSDL files."""
    b = "http://example.org/books#"
    write_wsdl(
        "AuthorNameBookTitle_ISBN",
        "AuthorNameBookTitle_ISBN",
        [("AuthorName", b + "Author"), ("BookTitle", b + "Title")],
        [("ISBN", b + "ISBN")],
        dirname="book",
    )
    path = write_wsdl("ISBN_PubliDate", "ISBN_PubliDate", [("ISBN", b + "ISBN")], [("PubliDate", b + "Date")], "book")
    return path.parent


@pytest.fixture
def random_corpus():
    """Seeded random corpus factory: up to `max_ops` operations over at most `n_keys` parameter names.

    With `concepts` > 0 about three parameters in four are annotated with one of that many concept URIs.
    """

    def _make(seed: int, max_ops: int = 8, n_keys: int = 6, concepts: int = 0) -> Corpus:
        rng = random.Random(seed)
        keys = [f"k{i}" for i in range(n_keys)]

        def param(name):
            if not concepts or rng.random() < 0.25:
                return Parameter(name)
            return Parameter(name, f"urn:c{rng.randrange(concepts)}")

        ops = []
        for i in range(rng.randint(1, max_ops)):
            ins = rng.sample(keys, rng.randint(0, 3))
            outs = rng.sample(keys, rng.randint(0, 3))
            ops.append(Operation("s", f"o{i}", tuple(map(param, ins)), tuple(map(param, outs))))
        return Corpus((Service("s", tuple(ops)),))

    return _make


@pytest.fixture
def random_edges():
    """Seeded random directed edge-list factory without self-loops."""

    def _make(seed: int, max_n: int = 50, p: float | None = None):
        rng = random.Random(seed)
        n = rng.randint(2, max_n)
        p = rng.uniform(0.02, 0.3) if p is None else p
        labels = [f"v{i}" for i in range(n)]
        edges = [(u, v) for u in labels for v in labels if u != v and rng.random() < p]
        return labels, edges

    return _make
