"""
Task prompt: the four components that drive every prompt binding.
"""

import re
from pathlib import Path
from typing import Any, Optional, Union

import yaml
from pydantic import Field, ValidationError, field_validator, model_validator

from src.errors import TaskError
from .base import BaseModelWithConfig

_BUDGET_PER_DIM = re.compile(r"^\s*(\d+)\s*d\s*$", re.IGNORECASE)

REQUIRED_FIELDS = ("desc", "dim", "budget", "search_space")


class TaskPrompt(BaseModelWithConfig):
    """
    Structured optimization task.

    Attributes:
        desc: natural-language problem description
        dim: number of decision variables
        budget: number of expensive function evaluations; a task file may write "11d"
        search_space: free text describing the bounds
        name: optional suite label, informational only
    """

    desc: str = Field(..., description = "Natural-language task description")
    dim: int = Field(..., ge = 1, description = "Decision-variable dimensionality")
    budget: int = Field(..., ge = 1, description = "Expensive function evaluations")
    search_space: str = Field(..., description = "Bounds and structure of the search space")
    name: Optional[str] = Field(None, description = "Suite label")

    @model_validator(mode = "before")
    @classmethod
    def resolve_budget(cls, data: Any) -> Any:
        """Turn a '<k>d' budget into k * dim."""
        if isinstance(data, dict) and isinstance(data.get("budget"), str):
            match = _BUDGET_PER_DIM.match(data["budget"])
            if match and isinstance(data.get("dim"), int):
                data = {**data, "budget": int(match.group(1)) * data["dim"]}
        return data

    @field_validator("desc", "search_space")
    @classmethod
    def not_blank(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("must not be empty")
        return v

    @property
    def dim_label(self) -> str:
        """Dimensionality as shown in prompts, e.g. '20D'."""
        return f"{self.dim}D"

    def slots(self) -> dict[str, Any]:
        """Bindings for the task template."""
        return {
            "desc": self.desc,
            "dim": self.dim,
            "budget": self.budget,
            "search_space": self.search_space,
        }


def parse_task(path: Union[str, Path]) -> TaskPrompt:
    """
    Load a task file (YAML mapping with desc, dim, budget, search_space).

    Raises:
        TaskError: unreadable file, missing component, or invalid value
    """
    path = Path(path)
    if not path.is_file():
        raise TaskError(f"Task file not found: {path}")

    try:
        data = yaml.safe_load(path.read_text(encoding = "utf-8"))
    except yaml.YAMLError as e:
        raise TaskError(f"{path}: not valid YAML: {e}") from e

    if not isinstance(data, dict):
        raise TaskError(f"{path}: expected a mapping with {', '.join(REQUIRED_FIELDS)}")

    missing = [f for f in REQUIRED_FIELDS if data.get(f) in (None, "")]
    if missing:
        raise TaskError(f"{path}: missing task component(s): {', '.join(missing)}")

    try:
        return TaskPrompt(**data)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'task'}: {err['msg']}" for err in e.errors()
        )
        raise TaskError(f"{path}: {details}") from e
