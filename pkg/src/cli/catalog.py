"""Algebra catalog: a directory of algebra JSON files plus the built-in corpus"""

import json
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..congruence.partition import parse_partition
from ..core.algebra import FiniteAlgebra
from ..core.corpus import BUILTINS, builtin
from ..core.homomorphism import SortedHom, quotient
from ..core.io import load_algebra
from ..utils.errors import ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)


class Catalog:
    """Name -> algebra index over a directory; unknown names fall back to the corpus"""

    def __init__(self, directory: Optional[Union[str, Path]] = None):
        self.directory = Path(directory) if directory is not None else None
        self._files: Dict[str, Path] = {}
        self._loaded: Dict[str, FiniteAlgebra] = {}
        if self.directory is not None and self.directory.is_dir():
            for path in sorted(self.directory.glob("*.json")):
                alg = load_algebra(path)
                name = alg.name or path.stem
                if name in self._loaded:
                    raise ValidationError(
                        f"Algebra name '{name}' appears twice in the catalog",
                        {"files": [str(self._files[name]), str(path)]},
                    )
                self._files[name] = path
                self._loaded[name] = alg
            logger.debug("catalog loaded", directory=str(self.directory),
                         algebras=len(self._loaded))

    def names(self) -> List[str]:
        return sorted(set(self._loaded) | set(BUILTINS))

    def resolve(self, name: str) -> FiniteAlgebra:
        """Catalog name, built-in corpus name or path to an algebra JSON file"""
        if name in self._loaded:
            return self._loaded[name]
        path = Path(name)
        if path.suffix == ".json" and path.is_file():
            return load_algebra(path)
        return builtin(name)

    def __contains__(self, name: object) -> bool:
        return name in self._loaded or name in BUILTINS

    def __len__(self) -> int:
        return len(self._loaded)


def parse_chi(alg: FiniteAlgebra, text: str) -> SortedHom:
    """A sorted homomorphism given by its kernel or by its labels.

    ``02|13`` (or a keyword) is a kernel, numbered by least element;
    ``0,1,0,1`` and ``[0, 1, 0, 1]`` are label lists.
    """
    text = text.strip()
    labels: Optional[List[int]] = None
    if text.startswith("["):
        try:
            labels = [int(v) for v in json.loads(text)]
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise ValidationError(f"Invalid label list '{text}'") from e
    elif "," in text and "|" not in text and len(text.split(",")) == alg.size:
        try:
            labels = [int(v) for v in text.split(",")]
        except ValueError as e:
            raise ValidationError(f"Invalid label list '{text}'") from e
    if labels is not None:
        return SortedHom.from_labels(alg, labels)
    return quotient(alg, parse_partition(text, alg.size))[1]

