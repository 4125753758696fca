import json

import pytest

from panelglue import catalog
from panelglue.gf2 import GroupElement
from panelglue.io import (ParseError, complex_to_dict, dump_complex, format_coloring, load_complex,
                          parse_automorphisms, parse_coloring, parse_complex)


@pytest.mark.parametrize("eid", catalog.ids())
def test_dump_parse_roundtrip(eid):
    c = catalog.build(eid).complex
    again = parse_complex(dump_complex(c))
    assert complex_to_dict(again) == complex_to_dict(c)


def test_shipped_files_are_in_dump_format():
    c = catalog.build("torus_core").complex
    assert catalog.data_file("torus_core.complex.json").read_text() == dump_complex(c)


def test_load_from_path(tmp_path):
    f = tmp_path / "t.json"
    f.write_text(dump_complex(catalog.build("rp2_core").complex))
    assert load_complex(f).name == "rp2_core"


class TestComplexErrors:
    def test_malformed_json_reports_line(self):
        text = '{\n  "name": "x",\n  "dim": 1,\n  "vertices": ["a" "b"]\n}'
        with pytest.raises(ParseError) as exc:
            parse_complex(text, "bad.json")
        assert exc.value.line == 4
        assert str(exc.value).startswith("bad.json:4:")

    def test_unknown_field_located(self):
        text = '{\n "name": "x",\n "dim": 1,\n "vertices": [],\n "top_cells": [],\n "colour": 3\n}'
        with pytest.raises(ParseError) as exc:
            parse_complex(text)
        assert exc.value.line == 6 and "colour" in str(exc.value)

    def test_principal_panel_needs_involution(self):
        doc = {"name": "x", "dim": 1, "vertices": ["a", "b"], "top_cells": [["a", "b"]],
               "panels": [{"id": "P", "kind": "principal", "cells": [["a"], ["b"]]}]}
        with pytest.raises(ParseError, match="involution"):
            parse_complex(json.dumps(doc, indent=1))

    def test_bad_kind(self):
        doc = {"name": "x", "dim": 1, "vertices": ["a", "b"], "top_cells": [["a", "b"]],
               "panels": [{"id": "P", "kind": "mirror", "cells": [["a"]]}]}
        with pytest.raises(ParseError, match="kind"):
            parse_complex(json.dumps(doc))

    def test_negative_dim(self):
        with pytest.raises(ParseError, match="dim"):
            parse_complex('{"name": "x", "dim": -1, "vertices": [], "top_cells": []}')


class TestColoring:
    def test_inline_and_lines(self):
        a = parse_coloring("P1:10,P2:01")
        b = parse_coloring("# comment\nP1:10\n\nP2:01  # trailing\n")
        assert a == b == {"P1": GroupElement.parse("10"), "P2": GroupElement.parse("01")}

    def test_roundtrip(self):
        col = parse_coloring("A:101\nB:011\n")
        assert parse_coloring(format_coloring(col)) == col

    def test_mixed_lengths_rejected_with_line(self):
        with pytest.raises(ParseError) as exc:
            parse_coloring("P1:10\nP2:011\n")
        assert exc.value.line == 2

    def test_duplicate_rejected(self):
        with pytest.raises(ParseError, match="twice"):
            parse_coloring("P:1,P:0")

    @pytest.mark.parametrize("text", ["P1=10", "P1:1x", ":10", "P1:10:1"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_coloring(text)


class TestAutomorphisms:
    def test_shipped_generators(self):
        text = catalog.data_file("pentagon.aut.json").read_text()
        gens = parse_automorphisms(text)
        assert len(gens) == 2

    def test_not_a_list(self):
        with pytest.raises(ParseError):
            parse_automorphisms('{"panels": {}}')

    def test_bad_entry(self):
        with pytest.raises(ParseError):
            parse_automorphisms('[{"faces": {}}]')
