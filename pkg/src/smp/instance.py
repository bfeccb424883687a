"""Subpower membership instances and their JSON form"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from ..core.algebra import FiniteAlgebra, require_shared_signature
from ..utils.errors import ValidationError


class InstanceModel(BaseModel):
    """On-disk form: algebra names resolved against a catalog"""
    algebras: List[str] = Field(min_length=1)
    generators: List[List[int]]
    target: List[int]


@dataclass(frozen=True, eq=False)
class SMPInstance:
    """Generators a_1..a_k and target b in A_1 x ... x A_n"""
    components: Tuple[FiniteAlgebra, ...]
    generators: Tuple[Tuple[int, ...], ...]
    target: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "generators",
                           tuple(tuple(int(v) for v in g) for g in self.generators))
        object.__setattr__(self, "target", tuple(int(v) for v in self.target))
        require_shared_signature(self.components)
        for t in self.generators + (self.target,):
            if len(t) != self.n:
                raise ValidationError(
                    f"Tuple {list(t)} has length {len(t)}, expected {self.n}"
                )
            for j, (value, alg) in enumerate(zip(t, self.components)):
                if not 0 <= value < alg.size:
                    raise ValidationError(
                        f"Entry {value} at position {j} is outside {alg.name or 'the algebra'}",
                        {"position": j, "size": alg.size},
                    )

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def k(self) -> int:
        return len(self.generators)

    def restrict(self, indices: Sequence[int]) -> "SMPInstance":
        """The instance on the coordinates in indices"""
        return SMPInstance(
            tuple(self.components[j] for j in indices),
            tuple(tuple(g[j] for j in indices) for g in self.generators),
            tuple(self.target[j] for j in indices),
        )

    def with_target(self, target: Sequence[int]) -> "SMPInstance":
        return SMPInstance(self.components, self.generators, tuple(target))

    def to_dict(self, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        return {
            "algebras": list(names) if names is not None
            else [alg.name for alg in self.components],
            "generators": [list(g) for g in self.generators],
            "target": list(self.target),
        }


def instance_from_dict(data: Dict[str, Any], resolve: Callable[[str], FiniteAlgebra]
                       ) -> SMPInstance:
    try:
        model = InstanceModel.model_validate(data)
    except PydanticValidationError as e:
        errors = e.errors(include_url=False, include_context=False, include_input=False)
        raise ValidationError("Invalid instance", {"errors": errors}) from e
    return SMPInstance(
        tuple(resolve(name) for name in model.algebras),
        tuple(tuple(g) for g in model.generators),
        tuple(model.target),
    )


def load_instance(path: Path, resolve: Callable[[str], FiniteAlgebra]) -> SMPInstance:
    """Read an instance file, looking algebra names up with resolve"""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read instance {path}: {e}") from e
    return instance_from_dict(data, resolve)


def dump_instance(inst: SMPInstance, path: Path, names: Optional[Sequence[str]] = None) -> None:
    Path(path).write_text(json.dumps(inst.to_dict(names), indent=2, sort_keys=True) + "\n")
