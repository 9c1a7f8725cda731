import orjson
import pytest

from clb.errors import InputError, MembershipError
from clb.forms.space import standard_space
from clb.store import repo
from clb.store.schema import INSTANCE_SCHEMA, FormSpaceSpec, ProblemInstance, Report
from clb.verify.fixtures import canonical_instances


def _raw(**over):
    data = {
        "schema": INSTANCE_SCHEMA,
        "command": "classify",
        "name": "t",
        "space": {"field": {"p": 3, "deg": 1}, "kind": "symplectic", "group": "Sp", "gram": [[0, 1], [2, 0]]},
        "operator": [[0, 1], [0, 0]],
    }
    data.update(over)
    return orjson.dumps(data)


def test_parse_roundtrip_keeps_alias():
    inst = repo.parse_instance(_raw())
    assert inst.schema_tag == INSTANCE_SCHEMA
    out = inst.to_json()
    assert out["schema"] == INSTANCE_SCHEMA
    assert "vector" not in out
    assert repo.parse_instance(orjson.dumps(out)) == inst


@pytest.mark.parametrize(
    "raw, needle",
    [
        (b"{not json", "malformed JSON"),
        (_raw(schema="clb.instance/0"), "unsupported instance schema"),
        (_raw(command="factor"), "unknown instance command"),
        (orjson.dumps({"schema": INSTANCE_SCHEMA}), "invalid instance at"),
    ],
)
def test_parse_rejections(raw, needle):
    with pytest.raises(InputError, match=needle):
        repo.parse_instance(raw)


def test_read_missing_file(tmp_path):
    with pytest.raises(InputError, match="no such input file"):
        repo.read_instance(tmp_path / "nope.json")


def test_validate_rejects_non_member():
    inst = repo.parse_instance(_raw(operator=[[1, 0], [0, 1]]))
    with pytest.raises(MembershipError):
        repo.validate_instance(inst)


def test_validate_rejects_bad_shapes():
    with pytest.raises(InputError):
        repo.validate_instance(repo.parse_instance(_raw(operator=[[0, 1, 0], [0, 0, 0], [0, 0, 0]])))
    with pytest.raises(InputError, match="vector must have length 2"):
        repo.validate_instance(repo.parse_instance(_raw(vector=[1, 0, 0])))


def test_descend_needs_symplectic(F3):
    S = standard_space(F3, "O", 2)
    inst = ProblemInstance(command="descend", space=FormSpaceSpec.of(S), operator=[[0, 0], [0, 0]])
    with pytest.raises(MembershipError, match="symplectic"):
        repo.validate_instance(inst)


def test_write_read_instance(tmp_path):
    for inst in canonical_instances(0):
        path = repo.write_instance(tmp_path / f"{inst.name}.json", inst)
        back = repo.read_instance(path)
        assert back == inst
        assert repo.instance_digest(back) == repo.instance_digest(inst)


def test_digest_ignores_key_order():
    a = repo.parse_instance(_raw(params={"x": 1, "y": 2}))
    b = repo.parse_instance(_raw(params={"y": 2, "x": 1}))
    assert repo.instance_digest(a) == repo.instance_digest(b)
    c = repo.parse_instance(_raw(name="other"))
    assert repo.instance_digest(a) != repo.instance_digest(c)


def test_write_report(tmp_path):
    report = Report(command="classify", instance_digest="abc", ok=True, result={"blocks": []})
    path = repo.write_report(tmp_path / "deep" / "r.json", report)
    data = orjson.loads(path.read_bytes())
    assert data["schema"] == "clb.report/1"
    assert data["ok"] is True and data["result"] == {"blocks": []}
