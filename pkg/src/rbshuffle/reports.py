"""Law-suite result types shared by the harness and the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional


@dataclass
class LawReport:
    """Outcome of one suite run.

    A failed report carries a replayable counterexample: the suite seed, the
    sample index, and fully rendered inputs and both sides.  Wall time is
    informational and deliberately absent from the JSON form so that equal
    (seed, config) runs serialize byte-identically.
    """

    law: str
    samples: int
    seed: str
    passed: bool
    counterexample: Optional[dict] = None
    wall_ms: float = 0.0

    def to_json(self) -> dict:
        out: dict = {"law": self.law, "samples": self.samples,
                     "seed": self.seed, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class LawSuite:
    """A named, deterministic sampling check.

    ``check(rng, cfg, index)`` draws the index-th sample from the suite's
    random stream and returns None on success or a counterexample dict.
    (suite, seed) fixes the exact sample sequence and the verdict.
    """

    name: str
    samples: int
    check: Callable
