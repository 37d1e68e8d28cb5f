"""TOML-based survey configuration with Pydantic validation."""

import tomllib
from pathlib import Path
from typing import Any, NoReturn, Self

from mm_result import Result
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .catalog import MAX_ORDER
from .errors import PreconditionError
from .expansion import Mode
from .liealg import DEFAULT_TOLERANCE
from .output import fatal, print_toml


class TomlConfig(BaseModel):
    """Base class for TOML-based configurations."""

    model_config = ConfigDict(extra="forbid")

    @classmethod
    def load(cls, path: Path) -> Result[Self]:
        """Load and validate config from a TOML file."""
        try:
            with path.expanduser().open("rb") as f:
                data = tomllib.load(f)
            return Result.ok(cls(**data))
        except ValidationError as e:
            return Result.err(("validation_error", e), context={"errors": e.errors()})
        except Exception as e:
            return Result.err(e)

    @classmethod
    def load_or_exit(cls, path: Path) -> Self:
        """Load and validate config. Print error and exit(1) on failure."""
        return cls.unwrap_or_exit(cls.load(path))

    @staticmethod
    def unwrap_or_exit[T](result: Result[T]) -> T:
        """Return the loaded config or print the validation errors and exit(1)."""
        if result.is_ok():
            return result.unwrap()
        if result.error == "validation_error" and result.context:
            lines = ["config validation errors"]
            for e in result.context["errors"]:
                loc = e["loc"]
                field = ".".join(str(part) for part in loc) if loc else ""
                lines.append(f"  {field}: {e['msg']}")
            fatal("\n".join(lines))
        fatal(f"can't load config: {result.error}")

    def override(self, changes: dict[str, Any]) -> Result[Self]:
        """Copy with the given fields replaced, validated again."""
        try:
            return Result.ok(self.model_validate({**self.model_dump(exclude_unset=True), **changes}))
        except ValidationError as e:
            return Result.err(("validation_error", e), context={"errors": e.errors()})

    def print_and_exit(self, *, exclude: set[str] | None = None) -> NoReturn:
        """Print config as formatted TOML and exit(0)."""
        print_toml(self.model_dump(mode="json", exclude=exclude, exclude_none=True))
        raise SystemExit(0)


class SurveyConfig(TomlConfig):
    """Parameters of a semisimplicity census."""

    algebra: str = "sl2"
    order: int = Field(default=3, ge=1, le=MAX_ORDER)
    modes: list[Mode] = Field(default_factory=lambda: list(Mode), min_length=1)
    v0: list[int] | None = None
    v1: list[int] | None = None
    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0)
    threads: int = Field(default=1, ge=1)
    catalog: Path | None = None
    output: Path | None = None
    json_output: Path | None = None
    resume: bool = False

    @field_validator("modes", mode="before")
    @classmethod
    def parse_modes(cls, value: object) -> object:
        """Accept short mode names and comma-separated strings."""
        items = value.split(",") if isinstance(value, str) else value
        if not isinstance(items, list):
            return value
        try:
            return [Mode.parse(v) if isinstance(v, str) else v for v in items]
        except PreconditionError as e:
            raise ValueError(str(e)) from None

    @model_validator(mode="after")
    def check_decomposition(self) -> Self:
        """v0 and v1 come together."""
        if (self.v0 is None) != (self.v1 is None):
            raise ValueError("v0 and v1 must be given together")
        if self.resume and self.output is None:
            raise ValueError("resume needs an output file")
        return self
