"""Tests for WSDL/SAWSDL ingestion"""

import pytest
from conftest import wsdl_text

from wsnet import (
    MalformedWsdlError,
    Parameter,
    ingest_directory,
    ingest_file,
    ingest_wsdl,
    load_corpus,
    serialize_wsc,
)

SCHEMA_WSDL = """\
<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="Weather"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl"
    xmlns:tns="http://example.org/weather">
  <wsdl:types>
    <xsd:schema targetNamespace="http://example.org/weather">
      <xsd:element name="City" type="xsd:string" sawsdl:modelReference="http://geo#City http://geo#Place"/>
      <xsd:complexType name="Forecast" sawsdl:modelReference="http://met#Forecast"/>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="CityMsg"><wsdl:part name="city" element="tns:City"/></wsdl:message>
  <wsdl:message name="ForecastMsg">
    <wsdl:part name="forecast" type="tns:Forecast"/>
    <wsdl:part name="note" type="xsd:string"/>
  </wsdl:message>
  <wsdl:portType name="WeatherPort">
    <wsdl:operation name="GetForecast">
      <wsdl:input message="tns:CityMsg"/>
      <wsdl:output message="tns:ForecastMsg"/>
    </wsdl:operation>
    <wsdl:operation name="Broken">
      <wsdl:input message="tns:MissingMsg"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
"""


class TestIngestWsdl:
    def test_single_operation(self):
        """Test message parts become the operation's input and output parameters"""
        doc = wsdl_text("Books", "AuthorNameBookTitle_ISBN", ["AuthorName", "BookTitle"], ["ISBN"])
        svc = ingest_wsdl(doc.encode(), "books.wsdl")
        assert svc.name == "Books"
        (op,) = svc.operations
        assert op.id == "Books/AuthorNameBookTitle_ISBN"
        assert {p.name for p in op.inputs} == {"AuthorName", "BookTitle"}
        assert {p.name for p in op.outputs} == {"ISBN"}
        assert all(p.concept is None for p in (*op.inputs, *op.outputs))

    def test_part_model_reference(self):
        doc = wsdl_text("S", "o", [("a", "http://onto#A")], [])
        (op,) = ingest_wsdl(doc.encode(), "s.wsdl").operations
        assert op.inputs == (Parameter("a", "http://onto#A"),)

    def test_schema_model_references(self):
        """Test concepts are found on referenced elements and types, first URI kept"""
        with pytest.warns(UserWarning, match="modelReference"):
            svc = ingest_wsdl(SCHEMA_WSDL.encode(), "weather.wsdl")
        op = svc.operations[0]
        assert op.inputs == (Parameter("city", "http://geo#City"),)
        assert op.outputs == (Parameter("forecast", "http://met#Forecast"), Parameter("note"))

    def test_undeclared_message_dropped(self):
        from wsnet import IngestReport

        report = IngestReport()
        with pytest.warns(UserWarning):
            svc = ingest_wsdl(SCHEMA_WSDL.encode(), "weather.wsdl", report)
        assert [o.name for o in svc.operations] == ["GetForecast"]
        assert report.dropped_operations == [("weather.wsdl", "Broken", "references an undeclared message")]
        assert report.extra_concepts == [("weather.wsdl", "city", ("http://geo#Place",))]

    def test_malformed_xml(self):
        with pytest.raises(MalformedWsdlError):
            ingest_wsdl(b"<definitions><unclosed></definitions>", "bad.wsdl")

    def test_service_name_falls_back_to_file_stem(self):
        doc = wsdl_text("X", "o", ["a"], ["b"]).replace(' name="X"', "", 1)
        assert ingest_wsdl(doc.encode(), "dir/my_service.wsdl").name == "my_service"


class TestIngestDirectory:
    def test_book_directory(self, book_wsdl_dir):
        """Test the two book services load as two services with two operations"""
        corpus, report = ingest_directory(book_wsdl_dir)
        assert len(corpus.services) == 2
        assert len(corpus) == 2
        assert report.files_read == 2
        assert report.skipped == []
        op = corpus["ISBN_PubliDate/ISBN_PubliDate"]
        assert op.inputs == (Parameter("ISBN", "http://example.org/books#ISBN"),)

    def test_matches_wsc_fixture(self, book_wsdl_dir, book_corpus):
        corpus, _ = ingest_directory(book_wsdl_dir)
        assert corpus == book_corpus

    def test_lexicographic_order(self, write_wsdl):
        write_wsdl("Zeta", "z", ["a"], ["b"], filename="b.wsdl")
        path = write_wsdl("Alpha", "a", ["b"], ["c"], filename="a.wsdl")
        corpus, _ = ingest_directory(path.parent)
        assert [s.name for s in corpus.services] == ["Alpha", "Zeta"]

    def test_bad_files_skipped(self, book_wsdl_dir):
        """Test malformed and portType-less files are reported, not raised"""
        (book_wsdl_dir / "bad.wsdl").write_text("<not-xml")
        (book_wsdl_dir / "empty.wsdl").write_text(
            '<wsdl:definitions name="E" xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"/>'
        )
        corpus, report = ingest_directory(book_wsdl_dir)
        assert len(corpus) == 2
        assert report.files_read == 4
        assert sorted(f for f, _ in report.skipped) == ["bad.wsdl", "empty.wsdl"]
        assert dict(report.skipped)["empty.wsdl"] == "no portType"

    def test_duplicate_operation_ids_skipped(self, write_wsdl):
        write_wsdl("S", "o", ["a"], ["b"], filename="1.wsdl")
        path = write_wsdl("S", "o", ["c"], ["d"], filename="2.wsdl")
        corpus, report = ingest_directory(path.parent)
        assert len(corpus) == 1
        assert corpus["S/o"].inputs == (Parameter("a"),)
        assert report.skipped[0][0] == "2.wsdl"

    def test_parallel_matches_serial(self, book_wsdl_dir):
        serial, _ = ingest_directory(book_wsdl_dir, n_workers=0)
        threaded, _ = ingest_directory(book_wsdl_dir, n_workers=2)
        assert serialize_wsc(serial) == serialize_wsc(threaded)

    def test_not_a_directory(self, tmp_path):
        with pytest.raises(NotADirectoryError):
            ingest_directory(tmp_path / "missing")

    def test_import_from_same_directory(self, tmp_path):
        """Test messages declared in an imported sibling document are resolved"""
        ns = 'xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/" xmlns:tns="urn:t"'
        (tmp_path / "msgs.wsdl").write_text(
            f'<wsdl:definitions {ns}><wsdl:message name="In"><wsdl:part name="q"/></wsdl:message></wsdl:definitions>'
        )
        (tmp_path / "main.wsdl").write_text(
            f'<wsdl:definitions name="M" {ns}><wsdl:import location="http://far.away/msgs.wsdl"/>'
            '<wsdl:portType name="P"><wsdl:operation name="o"><wsdl:input message="tns:In"/></wsdl:operation>'
            "</wsdl:portType></wsdl:definitions>"
        )
        svc, report = ingest_file(tmp_path / "main.wsdl")
        assert svc.operations[0].inputs == (Parameter("q"),)
        assert report.dropped_operations == []


class TestLoadCorpus:
    def test_wsc_file(self, two_op_wsc, two_op_corpus):
        assert load_corpus(two_op_wsc) == two_op_corpus

    def test_directory(self, book_wsdl_dir):
        assert len(load_corpus(book_wsdl_dir)) == 2

    def test_single_wsdl(self, book_wsdl_dir):
        assert len(load_corpus(book_wsdl_dir / "ISBN_PubliDate.wsdl")) == 1

    def test_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_corpus(tmp_path / "nope.wsc")
