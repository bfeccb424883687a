"""Algebra JSON files"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from ..utils.errors import ValidationError
from .algebra import FiniteAlgebra


class OperationModel(BaseModel):
    symbol: str = Field(min_length=1)
    arity: int = Field(ge=0)
    table: List[int]


class AlgebraModel(BaseModel):
    """``{"name", "size", "operations": [{"symbol", "arity", "table"}]}``"""
    name: str = ""
    size: int = Field(ge=1)
    operations: List[OperationModel]

    @model_validator(mode="after")
    def check_tables(self) -> "AlgebraModel":
        for op in self.operations:
            if op.arity == 0:
                raise ValueError(
                    f"nullary symbol '{op.symbol}': encode it as a unary constant operation"
                )
            expected = self.size ** op.arity
            if len(op.table) != expected:
                raise ValueError(
                    f"table of '{op.symbol}' has {len(op.table)} entries, expected {expected}"
                )
        return self


def algebra_from_dict(data: Dict[str, Any], name: str = "") -> FiniteAlgebra:
    try:
        model = AlgebraModel.model_validate(data)
    except PydanticValidationError as e:
        errors = e.errors(include_url=False, include_context=False, include_input=False)
        raise ValidationError(f"Invalid algebra {_display_name(data, name)}",
                              {"errors": errors}) from e
    return FiniteAlgebra.from_tables(
        model.size,
        [(op.symbol, op.arity, op.table) for op in model.operations],
        name=model.name or name,
    )


def _display_name(data: Any, fallback: str) -> str:
    if isinstance(data, dict) and data.get("name"):
        return str(data["name"])
    return fallback or "<unnamed>"


def algebra_to_dict(alg: FiniteAlgebra) -> Dict[str, Any]:
    return {
        "name": alg.name,
        "size": alg.size,
        "operations": [
            {"symbol": op.symbol, "arity": op.arity, "table": [int(v) for v in op.table]}
            for op in alg.operations
        ],
    }


def read_json(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read {path}: {e}") from e


def write_json(data: Any, path: Union[str, Path]) -> None:
    """Sorted keys and a trailing newline, so equal data gives equal bytes"""
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def load_algebra(path: Union[str, Path]) -> FiniteAlgebra:
    """Read an algebra file; the file stem names it when the file has no name"""
    return algebra_from_dict(read_json(path), Path(path).stem)


def dump_algebra(alg: FiniteAlgebra, path: Union[str, Path]) -> None:
    write_json(algebra_to_dict(alg), path)
