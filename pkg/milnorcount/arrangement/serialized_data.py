"""
This module contains the interface between arrangement documents (yaml or json files)
and the exact arrangement objects.
Main purpose of those classes is to check the document schema; they know nothing
about canonical forms, lattices or counting.
"""
from __future__ import annotations

import json
import re
from typing import List, Optional, Union

import yaml
from pydantic import BaseModel, ValidationError, field_validator
from ruamel.yaml import YAML

from milnorcount.exceptions import ArrangementError

ruamel_yaml = YAML()


class SerializedArrangement(BaseModel):
    """
    An arrangement document: an optional name and the list of hyperplane normals,
    each coordinate written as an integer or a fraction "a/b".
    """

    name: Optional[str] = None
    "Free text used in reports."
    hyperplanes: List[List[str]]
    """One row per hyperplane, listing the coefficients of its linear form. All rows
    must have the same length, the ambient dimension."""

    @field_validator("hyperplanes", mode="before")
    @classmethod
    def stringify_coefficients(cls, value):
        # yaml reads unquoted integers as int
        if isinstance(value, list):
            return [
                [str(entry) if isinstance(entry, (int, str)) else entry for entry in row]
                if isinstance(row, list)
                else row
                for row in value
            ]
        return value

    def to_dict(self) -> dict:
        """
        Convert self to dict, dropping the name when it is not set.
        :return: self as a dict
        """
        document = {"hyperplanes": [list(row) for row in self.hyperplanes]}
        if self.name is not None:
            document = {"name": self.name, **document}
        return document

    def to_yaml(self, filepath: str):
        """
        Convert self to yaml file.
        :param filepath: filepath of the yaml file to create.
        """
        with open(filepath, "w") as stream:
            ruamel_yaml.dump(self.to_dict(), stream)

    @staticmethod
    def from_dict(document: Union[dict, None]) -> SerializedArrangement:
        if not isinstance(document, dict):
            raise ArrangementError("An arrangement document must be a mapping.")
        try:
            return SerializedArrangement(**document)
        except ValidationError as e:
            raise ArrangementError(f"Invalid arrangement document: {e}")

    @staticmethod
    def from_file(filepath: str) -> SerializedArrangement:
        """
        Read a .json, .yaml or .yml arrangement document.
        """
        if not re.match(r".*\.(json|ya?ml)$", filepath):
            raise ArrangementError(
                f"Arrangement document {filepath} must have a .json, .yaml or .yml "
                f"extension."
            )
        try:
            with open(filepath, "r", encoding="utf8") as stream:
                if filepath.endswith(".json"):
                    document = json.load(stream)
                else:
                    document = yaml.safe_load(stream)
        except OSError as e:
            raise ArrangementError(f"Cannot read arrangement document {filepath}: {e}")
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ArrangementError(f"Cannot parse arrangement document {filepath}: {e}")
        return SerializedArrangement.from_dict(document)
