from __future__ import annotations
import logging
from pathlib import Path
from typing import Any

import orjson
from pydantic import ValidationError

from clb.errors import InputError, MembershipError
from clb.store.schema import COMMANDS, INSTANCE_SCHEMA, ProblemInstance, Report
from clb.utils.hashing import digest

log = logging.getLogger(__name__)

def dumps(obj: Any) -> bytes:
    return orjson.dumps(obj, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2) + b"\n"

def write_json(path: str | Path, obj: Any) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(dumps(obj))
    return out

def instance_digest(inst: ProblemInstance) -> str:
    return digest(inst.to_json())

def parse_instance(raw: bytes | str) -> ProblemInstance:
    try:
        data = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from e
    try:
        inst = ProblemInstance.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(x) for x in first.get("loc", ()))
        raise InputError(f"invalid instance at {loc or '<root>'}: {first.get('msg')}") from e
    if inst.schema_tag != INSTANCE_SCHEMA:
        raise InputError(f"unsupported instance schema {inst.schema_tag!r}")
    if inst.command not in COMMANDS:
        raise InputError(f"unknown instance command {inst.command!r}")
    return inst

def read_instance(path: str | Path) -> ProblemInstance:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such input file: {p}")
    return parse_instance(p.read_bytes())

def validate_instance(inst: ProblemInstance) -> None:
    """Builds the form space and checks operator membership and shapes; raises InputError."""
    S = inst.form_space()
    A = inst.operator_matrix(S)
    if A.shape != (S.n, S.n):
        raise InputError(f"operator must be {S.n}x{S.n}, got shape {A.shape}")
    S.require_lie(A)
    v = inst.vector_array(S)
    if v is not None and v.shape != (S.n,):
        raise InputError(f"vector must have length {S.n}")
    if inst.command == "descend" and S.kind != "symplectic":
        raise MembershipError("descend instances need a symplectic space")

def write_report(path: str | Path, report: Report) -> Path:
    out = write_json(path, report.to_json())
    log.info("report written: %s", out)
    return out

def write_instance(path: str | Path, inst: ProblemInstance) -> Path:
    validate_instance(inst)
    return write_json(path, inst.to_json())
