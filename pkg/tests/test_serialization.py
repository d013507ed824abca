import json
from fractions import Fraction

import pytest

from omac.families import gen_det_lb, gen_xos_instance
from omac.oks import knapsack_lb_items
from omac.serialization import (
    SchemaError,
    dumps_instance,
    load_instance,
    loads_instance,
    save_instance,
)

F = Fraction


def test_round_trips(tmp_path):
    for obj in (gen_det_lb(F(1, 10)), gen_xos_instance(2, 3, F(1, 10), (1, 0)), knapsack_lb_items(F(1, 2), F(1, 10))):
        path = tmp_path / "inst.json"
        save_instance(obj, path)
        back = load_instance(path)
        assert back == obj
        assert path.read_text() == dumps_instance(back)


def test_rationals_are_strings():
    data = json.loads(dumps_instance(gen_det_lb(F(1, 10))))
    assert data["version"] == 1 and data["kind"] == "omac_additive"
    assert data["agents"][0] == {"id": 1, "cost": "9801/100000"}
    assert all(isinstance(w, str) for w in data["weights"])


def broken(text_edit):
    text = dumps_instance(gen_det_lb(F(1, 5)))
    return text_edit(text)


def test_zero_denominator_reports_line():
    text = broken(lambda t: t.replace('"cost": "1/15625"', '"cost": "1/0"', 1))
    with pytest.raises(SchemaError) as err:
        loads_instance(text, source="bad.json")
    line = next(k for k, row in enumerate(text.splitlines(), 1) if '"1/0"' in row)
    assert f"bad.json:{line}:" in str(err.value)


@pytest.mark.parametrize(
    "edit, message",
    [
        (lambda t: t.replace('"kind": "omac_additive"', '"kind": "matroid"'), "kind"),
        (lambda t: t.replace('"version": 1', '"version": 2'), "version"),
        (lambda t: t.replace('"cost": "1/15625"', '"cost": 0.5', 1), "cost"),
        (lambda t: t.replace('"id": 2', '"id": 7'), "id"),
        (lambda t: t[:-3], "JSON"),
    ],
)
def test_schema_errors(edit, message):
    with pytest.raises(SchemaError, match=message):
        loads_instance(broken(edit))


def test_clause_length_mismatch():
    data = json.loads(dumps_instance(gen_xos_instance(2, 2, F(1, 10), (0,))))
    data["clauses"][1] = data["clauses"][1][:-1]
    with pytest.raises(SchemaError, match="clause"):
        loads_instance(json.dumps(data, indent=2))
