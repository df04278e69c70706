"""Uniform result records for sampled axiom and property checks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one sampled inequality check.

    ``worst_margin`` is the largest violation margin observed over all
    samples; margins at or below ``tolerance`` count as satisfied, so a
    healthy check typically reports a negative worst margin.
    """

    name: str
    samples: int
    violations: int
    worst_margin: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass(frozen=True)
class AxiomReport:
    """Bundle of related checks with an aggregate verdict."""

    checks: tuple[CheckReport, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_margin(self) -> float:
        return max(c.worst_margin for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __getitem__(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
