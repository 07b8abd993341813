import json
from fractions import Fraction

import pytest

from skewex.errors import ParseError, ValidationError
from skewex.laurent import laurent_quotient
from skewex.linalg import Mat
from skewex.maps import AlgebraEndo, Derivation, EDerivation
from skewex.ore import ore_quotient
from skewex.serialize import (
    algebra_from_json,
    algebra_to_json,
    certified_map_from_json,
    extension_to_json,
    format_fraction,
    idempotent_set_to_json,
    map_to_json,
    parse_definitions,
    parse_fraction,
)

F = Fraction


def test_fraction_round_trip():
    assert format_fraction(F(3, 4)) == "3/4"
    assert format_fraction(F(5)) == "5"
    assert parse_fraction("3/4") == F(3, 4)
    assert parse_fraction("-2") == F(-2)
    with pytest.raises(ParseError):
        parse_fraction("x")


def test_algebra_round_trip(m2):
    data = algebra_to_json(m2)
    back = algebra_from_json(data)
    assert back.sc == m2.sc
    assert back.unit == m2.unit
    assert back.labels == m2.labels


def test_algebra_sparse_entries_default_zero():
    data = {"dim": 1, "labels": ["1"], "unit": ["1"], "sc": [[0, 0, 0, "1"]]}
    a = algebra_from_json(data)
    assert a.multiply((F(2),), (F(3),)) == (F(6),)


def test_algebra_validation_fails_with_location():
    data = {"dim": 1, "labels": ["1"], "unit": ["2"], "sc": [[0, 0, 0, "1"]]}
    with pytest.raises(ValidationError):
        algebra_from_json(data, where="bad.json")


def test_algebra_bad_index_reports_position():
    data = {"dim": 1, "labels": ["1"], "unit": ["1"], "sc": [[0, 0, 5, "1"]]}
    with pytest.raises(ParseError) as info:
        algebra_from_json(data)
    assert "out of range" in str(info.value)


def test_map_round_trip(dual_numbers, euler):
    data = map_to_json(euler, "derivation")
    back = certified_map_from_json(dual_numbers, data, None, "euler")
    assert isinstance(back, Derivation)
    assert back.matrix == euler.matrix


def test_map_role_validation(dual_numbers):
    broken = {"matrix": [["0", "1"], ["0", "0"]], "role": "derivation"}
    with pytest.raises(ValidationError):
        certified_map_from_json(dual_numbers, broken, None, "broken")
    with pytest.raises(ParseError):
        certified_map_from_json(dual_numbers, {"matrix": [["1", "0"], ["0", "1"]]},
                                "sorcery", "role")


def test_map_role_kinds(q_times_q, swap):
    endo = certified_map_from_json(q_times_q, map_to_json(swap, "endomorphism"),
                                   None, "swap")
    assert isinstance(endo, AlgebraEndo)
    delta_matrix = Mat.identity(2) - swap.matrix
    delta = certified_map_from_json(
        q_times_q, {"matrix": [["1", "-1"], ["-1", "1"]], "role": "ederivation"},
        None, "delta")
    assert isinstance(delta, EDerivation)
    assert delta.matrix == delta_matrix


def test_parse_definitions(tmp_path, q_times_q, swap):
    algebra_file = tmp_path / "a.json"
    algebra_file.write_text(json.dumps(algebra_to_json(q_times_q)))
    map_file = tmp_path / "m.json"
    map_file.write_text(json.dumps(map_to_json(swap, "endomorphism")))
    algebra, maps = parse_definitions(str(algebra_file), [f"{map_file}:endomorphism"])
    assert algebra.dim == 2
    assert len(maps) == 1 and isinstance(maps[0], AlgebraEndo)


def test_parse_definitions_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_definitions(str(tmp_path / "nope.json"), [])


def test_extension_serialization(dual_numbers, euler, q_times_q, swap):
    ore_payload = extension_to_json(ore_quotient(dual_numbers, euler))
    assert ore_payload["mode"] == "derivation"
    assert ore_payload["u_inverse"] is None
    assert ore_payload["dim"] == 3
    assert ore_payload["p"] == ["0", "-1", "1"]
    laurent_payload = extension_to_json(laurent_quotient(q_times_q, swap))
    assert laurent_payload["mode"] == "automorphism"
    assert laurent_payload["u_inverse"] is not None
    # the embedded algebra block itself parses back
    algebra_from_json({k: laurent_payload[k] for k in ("dim", "labels", "unit", "sc")})


def test_idempotent_set_serialization(split_pair):
    from skewex.idempotents import enumerate_idempotents

    payload = idempotent_set_to_json(enumerate_idempotents(split_pair))
    assert payload["complete"] is True
    assert len(payload["items"]) == 4
    assert {item["provenance"] for item in payload["items"]} == {"primitive", "sum"}
