from pathlib import Path
from typing import Any, Dict, Sequence

from .morphisms import Morphism
from .structures import FiniteMonoid, FiniteStructure

# xxh3 when the xxhash extra is installed, MD5 otherwise
try:
    import xxhash

    HASHER = xxhash.xxh3_64
except ImportError:
    import hashlib

    HASHER = hashlib.md5


class Checksummer(object):
    """
    Class used to compute a stable checksum of structures, morphisms and JSON-like reports recursively. Structures are
    hashed by labels and operation tables, so two structures with the same presentation share a checksum regardless of
    their names
    """

    def __init__(self):
        self._hasher = HASHER()

    def update(self, obj: Any) -> None:
        """
        Update the current checksum with new information from the provided value. May call itself recursively if needed
        to hash complex inputs

        :param obj: The object to update the checksum with
        """
        if obj is None:
            return

        # Mix in the type so that "1" and 1 differ
        self._hasher.update(str(type(obj)).encode("utf-8"))

        if isinstance(obj, str):
            self._hasher.update(obj.encode("utf-8"))
        elif isinstance(obj, bytes):
            self._hasher.update(obj)
        elif isinstance(obj, (bool, int)):
            self.update(str(obj))
        elif isinstance(obj, FiniteStructure):
            self._update_structure(obj)
        elif isinstance(obj, FiniteMonoid):
            self.update(obj.labels)
            self.update(obj.table)
            self.update(obj.identity)
        elif isinstance(obj, Morphism):
            self._update_structure(obj.source)
            self._update_structure(obj.target)
            self.update(obj.map)
        elif isinstance(obj, Sequence):
            for e in obj:
                self.update(e)
        elif isinstance(obj, Dict):
            # Reports are built from dicts whose insertion order is not part of their meaning
            for k in sorted(obj.keys(), key=str):
                self.update(k)
                self.update(obj[k])
        elif isinstance(obj, Path):
            self._update_path(obj)
        else:
            raise ValueError("Checksum not supported for type: {}".format(type(obj)))

    def _update_structure(self, structure: FiniteStructure) -> None:
        """
        Update the current checksum with the family, labels and every operation table of a structure

        :param structure: The structure to update the checksum with
        """
        self.update(str(structure.family))
        self.update(structure.labels)
        if hasattr(structure, "monoid"):
            self.update(getattr(structure, "monoid"))
        if hasattr(structure, "modulus"):
            self.update(getattr(structure, "modulus"))
        for operation in structure.operations():
            self.update(operation.name)
            self.update(operation.table)

    def _update_path(self, path: Path) -> None:
        """
        Update the current checksum with the contents of a file

        :param path: The Path to update the checksum with
        """
        with path.open('rb') as f:
            size = 1024 * self._hasher.block_size
            b = f.read(size)
            while len(b) > 0:
                self._hasher.update(b)
                b = f.read(size)

    def digest(self) -> str:
        """
        :return: The checksum as a string
        """
        return self._hasher.hexdigest()


def checksum(obj: Any) -> str:
    """
    Compute the checksum of a structure, morphism or JSON-like value

    :param obj: The object to compute a checksum for
    :return: The checksum as a string
    """
    hasher = Checksummer()
    hasher.update(obj)
    return hasher.digest()


def file_checksum(path: Path) -> str:
    """
    Compute the checksum of the contents of a file (the file name does not contribute)

    :param path: The file to compute a checksum for
    :return: The checksum as a string
    """
    hasher = Checksummer()
    hasher._update_path(path)
    return hasher.digest()
