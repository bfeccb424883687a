"""Constructed algebras on disk: algebra JSON plus a sidecar with the decoding data"""

import math
from pathlib import Path
from typing import Callable, List, Tuple, Union

from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from ..core.algebra import FiniteAlgebra
from ..core.homomorphism import SortedHom
from ..core.io import algebra_to_dict, load_algebra, read_json, write_json
from ..utils.errors import SignatureError, ValidationError
from ..utils.logging import get_logger
from .constructed import ConstructedAlgebra, constructed_signature

logger = get_logger(__name__)

SIDECAR_SUFFIX = ".sidecar.json"


class SidecarModel(BaseModel):
    """``{"sorts": [[elements of D^(i)], ...], "base": name, "chi": [labels]}``"""
    sorts: List[List[int]] = Field(min_length=1)
    base: str
    chi: List[int]


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.name + SIDECAR_SUFFIX)


def write_constructed(c: ConstructedAlgebra, path: Union[str, Path]) -> Tuple[Path, Path]:
    """Write FILE and FILE.sidecar.json"""
    path = Path(path)
    write_json(algebra_to_dict(c.algebra), path)
    sidecar = sidecar_path(path)
    write_json({
        "sorts": [list(s) for s in c.sort_elements],
        "base": c.base.name,
        "chi": list(c.chi.labels),
    }, sidecar)
    logger.debug("constructed algebra written", path=str(path), size=c.size)
    return path, sidecar


def load_constructed(
    path: Union[str, Path],
    resolve: Callable[[str], FiniteAlgebra],
) -> ConstructedAlgebra:
    """Read a constructed algebra; the tables are taken from the file as they are.

    The base algebra is looked up by name with resolve. Only the shape of the
    tables is checked here, so corrupted tables can still be validated.
    """
    algebra = load_algebra(path)
    try:
        sidecar = SidecarModel.model_validate(read_json(sidecar_path(path)))
    except PydanticValidationError as e:
        errors = e.errors(include_url=False, include_context=False, include_input=False)
        raise ValidationError(f"Invalid sidecar for {path}", {"errors": errors}) from e
    base = resolve(sidecar.base)
    chi = SortedHom.from_labels(base, sidecar.chi)
    sorts = tuple(tuple(s) for s in sidecar.sorts)
    if sorts != chi.classes():
        raise ValidationError("Sidecar sorts do not match the classes of chi",
                              {"sorts": sidecar.sorts})
    expected = constructed_signature(base, chi.m)
    if list(algebra.signature.symbols) != expected:
        raise SignatureError("Tables do not match the constructed signature",
                             {"expected": [s for s, _ in expected]})
    size = math.prod(len(s) for s in sorts)
    if algebra.size != size:
        raise ValidationError(f"Carrier has {algebra.size} elements, sorts give {size}")
    return ConstructedAlgebra(base, chi, sorts, algebra)
