"""CLI run configuration and check-suite reports."""

from typing import Any, Optional

from pydantic import BaseModel, Field

from models.enums import Mode, OutputFormat


class RunConfig(BaseModel):
    """Everything that determines a CLI run's output."""

    command: str = Field(description="Subcommand name")
    inputs: list[str] = Field(default_factory=list, description="Input paths")
    out: Optional[str] = Field(default=None, description="Output path or directory")
    eps: Optional[float] = Field(default=None, gt=0.0)
    eps_grid: list[float] = Field(default_factory=list)
    T_grid: list[float] = Field(default_factory=list)
    seed: Optional[int] = None
    mode: Mode = Mode.FLOAT
    format: OutputFormat = OutputFormat.TEXT
    jobs: int = Field(default=1, ge=1)
    params: dict[str, Any] = Field(default_factory=dict, description="Subcommand parameters")

    def header_lines(self) -> list[str]:
        """Reproducibility header, identical for identical runs."""
        lines = [
            f"# command={self.command}",
            f"# seed={self.seed}",
            f"# mode={self.mode.value}",
        ]
        if self.eps is not None:
            lines.append(f"# eps={self.eps!r}")
        if self.eps_grid:
            lines.append("# eps_grid=" + ",".join(repr(e) for e in self.eps_grid))
        if self.T_grid:
            lines.append(
                f"# T_grid={self.T_grid[0]!r}:{self.T_grid[-1]!r}:{len(self.T_grid)}"
            )
        for key in sorted(self.params):
            lines.append(f"# {key}={self.params[key]}")
        return lines

    def header(self) -> dict[str, Any]:
        """JSON form of the header."""
        return self.model_dump(mode="json", exclude={"jobs"})


class SuiteReport(BaseModel):
    """Outcome of one check suite."""

    name: str
    instances: int = Field(default=0, ge=0)
    checks: int = Field(default=0, ge=0, description="Individual assertions evaluated")
    failures: int = Field(default=0, ge=0)
    counterexample: Optional[dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0
