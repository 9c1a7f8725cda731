from __future__ import annotations
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, poly_from_json
from clb.forms.space import FormSpace

INSTANCE_SCHEMA = "clb.instance/1"
REPORT_SCHEMA = "clb.report/1"

COMMANDS = ("classify", "witness", "descend")

# Matrices and vectors are nested lists whose leaves are ints (F_p) or [a, b] pairs (a + b w).

class FieldSpec(BaseModel):
    p: int
    deg: int = 1

    def descriptor(self) -> FieldDescriptor:
        return FieldDescriptor(self.p, self.deg)

class FormSpaceSpec(BaseModel):
    field: FieldSpec
    kind: str
    group: str
    gram: list[Any]

    def build(self) -> FormSpace:
        F = self.field.descriptor()
        return FormSpace(F, self.kind, F.array(self.gram, 2), self.group)

    @staticmethod
    def of(S: FormSpace) -> "FormSpaceSpec":
        return FormSpaceSpec.model_validate(S.to_json())

class ProblemInstance(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=INSTANCE_SCHEMA, alias="schema")
    command: str = "classify"
    name: str = ""
    space: FormSpaceSpec
    operator: list[Any]
    vector: Optional[list[Any]] = None
    poly: Optional[list[Any]] = None
    params: dict[str, Any] = Field(default_factory=dict)

    def form_space(self) -> FormSpace:
        return self.space.build()

    def operator_matrix(self, S: FormSpace) -> FieldArray:
        return S.field.array(self.operator, 2)

    def vector_array(self, S: FormSpace) -> Optional[FieldArray]:
        return None if self.vector is None else S.field.array(self.vector, 1)

    def polynomial(self, S: FormSpace) -> Optional[Poly]:
        return None if self.poly is None else poly_from_json(S.field, self.poly)

    def to_json(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True, exclude_none=True)

class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=REPORT_SCHEMA, alias="schema")
    command: str
    instance_digest: Optional[str] = None
    seed: int = 0
    ok: bool = True
    result: dict[str, Any] = Field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)
