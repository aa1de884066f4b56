import json

import pytest

from fiberlift.fixtures import (
    FixtureError,
    automorphism_from_dict,
    automorphism_to_dict,
    cover_from_json,
    dump_record,
    load_automorphism,
    load_polynomial,
    load_record,
    loads_record,
    poly_from_json,
)
from fiberlift.lpoly import LaurentPoly

RECORDS = ["figure_eight.json", "trefoil.json", "cyclotomic.json", "one_plus_x_plus_y.json"]


@pytest.mark.parametrize("name", RECORDS)
def test_record_roundtrip_is_bit_exact(fixture_dir, name):
    text = (fixture_dir / name).read_text()
    rec = loads_record(text)
    assert dump_record(rec) == text
    assert dump_record(loads_record(dump_record(rec))) == text


def test_record_contents(fixture_dir):
    rec = load_record(fixture_dir / "figure_eight.json")
    assert rec.b1 == 1 and not rec.closed
    assert str(rec.alexander()) == "t^2 - 3*t + 1"
    assert rec.presentation.generators == 2
    assert rec.fibered_classes[0].monodromy == ((2, 1), (1, 1))


def test_polynomial_documents(fixture_dir, tmp_path):
    p, factors = load_polynomial(fixture_dir / "fig8_delta.json")
    assert p == LaurentPoly.from_coeffs([1, -3, 1]) and factors is None
    _, factors = load_polynomial(fixture_dir / "cyclotomic.json")
    assert len(factors) == 1
    doc = tmp_path / "p.json"
    doc.write_text(json.dumps({"poly": [[[1, 1], 2], [[0, 0], 1]], "factors": [[[[1, 1], 2], [[0, 0], 1]]]}))
    p, factors = load_polynomial(doc)
    assert p.num_vars == 2 and len(factors) == 1


def test_bad_documents(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FixtureError):
        load_polynomial(bad)
    bad.write_text('{"something": 1}')
    with pytest.raises(FixtureError):
        load_polynomial(bad)
    bad.write_text('{"name": "x", "b1": 1}')
    with pytest.raises(ValueError):
        load_record(bad)
    with pytest.raises(FixtureError):
        poly_from_json([[[1, 2], 1], [[1], 3]])
    with pytest.raises(FixtureError):
        loads_record('{"b1": 1}')


def test_automorphism_fixtures(fixture_dir):
    phi = load_automorphism(fixture_dir / "anosov.json")
    assert phi.abelianization() == [[1, 1], [1, 2]]
    doc = automorphism_to_dict(phi)
    assert automorphism_from_dict(doc).images == phi.images
    with pytest.raises(FixtureError):
        automorphism_from_dict({"rank": 2, "images": ["x2", "x1"]})
    assert cover_from_json([[2, 1], [1, 2]]).degree == 2
