"""
Structured logging configuration with observability focus.
Logs: wall computations, sweeps, chamber enumeration, TF verdicts.

Structured events go to stderr; stdout is reserved for command output.
"""

import logging
import sys
from typing import Optional, Sequence

import structlog

from app.config import settings


def setup_logging() -> None:
    """Configure structured logging for the engine."""

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer()
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, settings.log_level)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_to_file:
        settings.logs_dir.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))

    # Also configure standard logging for libraries
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=getattr(logging, settings.log_level),
        handlers=handlers
    )


def get_logger(name: str = "wallchamber"):
    """Get a structured logger instance."""
    return structlog.get_logger(name)


class EngineLogger:
    """Logger for domain events of the wall-chamber engine."""

    def __init__(self):
        self.logger = get_logger("engine")

    def log_wall_computed(self, d: Sequence[int], dim: int, rays: int,
                          lineality_dim: int, splits: int = 0) -> None:
        """Log one freshly computed wall."""
        self.logger.debug(
            "wall_computed",
            d=list(d),
            dim=dim,
            rays=rays,
            lineality_dim=lineality_dim,
            splits=splits
        )

    def log_sweep_level(self, degree: int, vectors: int, memo_size: int) -> None:
        """Log completion of one total-degree level of a sweep."""
        self.logger.info(
            "sweep_level_complete",
            degree=degree,
            vectors=vectors,
            memo_size=memo_size
        )

    def log_chambers(self, hyperplanes: int, cells: int, chambers: int) -> None:
        """Log the outcome of a chamber enumeration."""
        self.logger.info(
            "chambers_enumerated",
            hyperplanes=hyperplanes,
            cells=cells,
            chambers=chambers
        )

    def log_tf_verdict(self, kind: str, bound: int,
                       witness: Optional[Sequence[int]]) -> None:
        """Log a TF-equivalence decision."""
        self.logger.info(
            "tf_verdict",
            kind=kind,
            bound=bound,
            witness=list(witness) if witness is not None else None
        )

    def log_coverage(self, chambers: int, facets_shared: int, passed: bool) -> None:
        """Log the fan-coverage check."""
        self.logger.info(
            "coverage_checked",
            chambers=chambers,
            facets_shared=facets_shared,
            passed=passed
        )

    def log_consistency_violation(self, check: str, detail: str) -> None:
        """Log a broken internal invariant before it is raised."""
        self.logger.error(
            "consistency_violation",
            check=check,
            detail=detail[:200]
        )


# Singleton instance
engine_logger = EngineLogger()
