from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .patterns import DEFAULT_CERTIFICATE_BUDGET
from .report import CheckResult, Status

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class SuiteOptions:
    seed: int = 0
    jobs: int = 1
    budget: int = DEFAULT_CERTIFICATE_BUDGET
    # overrides the sample count of every randomized check
    samples: Optional[int] = None
    timings: bool = False
    strict: bool = False

    def sample_count(self, default: int) -> int:
        return default if self.samples is None else self.samples


@dataclass(frozen=True)
class Outcome:
    status: Status
    witness: Any = None

    @classmethod
    def verdict(cls, passed: bool, witness: Any = None) -> Outcome:
        return cls(Status.PASS if passed else Status.FAIL, witness)

    @classmethod
    def skipped(cls, reason: str) -> Outcome:
        return cls(Status.SKIPPED, {"reason": reason})


@dataclass(frozen=True)
class Check:
    id: str
    statement: str
    run: Callable[[SuiteOptions], Outcome]

    def execute(self, options: SuiteOptions) -> CheckResult:
        started = time.perf_counter()
        try:
            outcome = self.run(options)
        except Exception as exc:
            logger.exception("check %s raised", self.id)
            outcome = Outcome(
                Status.FAIL, {"error": type(exc).__name__, "message": str(exc)}
            )
        elapsed = (time.perf_counter() - started) * 1000
        logger.info("%s: %s", self.id, outcome.status)
        return CheckResult(
            id=self.id,
            statement=self.statement,
            status=outcome.status,
            witness=outcome.witness,
            # zero unless timings are requested
            elapsed_ms=elapsed if options.timings else 0.0,
        )
