"""
Runtime configuration for berkcrucial.
Environment-based settings for precision, degree caps, seeds and logging.
"""

import logging
import os
from typing import List, Optional

from dotenv import load_dotenv

from berkcrucial.maps.roots import PrecisionPolicy

load_dotenv()


class CrucialConfig:
    """Configuration read from the environment (or a local .env file)."""

    # Root finding precision, in units of v(p)
    PRECISION_START: int = int(os.environ.get('BERKCRUCIAL_PRECISION_START', '32'))
    PRECISION_MAX: int = int(os.environ.get('BERKCRUCIAL_PRECISION_MAX', '512'))
    # Ramification ceiling for root clusters; 0 derives it from the polynomial
    MAX_RAMIFICATION: int = int(os.environ.get('BERKCRUCIAL_MAX_RAMIFICATION', '0'))

    # Iteration
    DEGREE_CAP: int = int(os.environ.get('BERKCRUCIAL_DEGREE_CAP', '64'))
    TAIL_N: int = int(os.environ.get('BERKCRUCIAL_TAIL_N', '4'))

    # Randomized sweeps and the equidist grid
    SEED: int = int(os.environ.get('BERKCRUCIAL_SEED', '20240601'))
    WORKERS: int = int(os.environ.get('BERKCRUCIAL_WORKERS', '4'))

    # Logging configuration
    LOG_LEVEL: str = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_FORMAT: str = os.environ.get(
        'LOG_FORMAT',
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    LOG_FILE: Optional[str] = os.environ.get('LOG_FILE')

    @classmethod
    def validate(cls) -> List[str]:
        """Validate configuration settings."""
        errors = []

        if cls.PRECISION_START < 1:
            errors.append("BERKCRUCIAL_PRECISION_START must be positive")

        if cls.PRECISION_MAX < cls.PRECISION_START:
            errors.append("BERKCRUCIAL_PRECISION_MAX must be at least BERKCRUCIAL_PRECISION_START")

        if cls.MAX_RAMIFICATION < 0:
            errors.append("BERKCRUCIAL_MAX_RAMIFICATION must be non-negative")

        if cls.DEGREE_CAP < 2:
            errors.append("BERKCRUCIAL_DEGREE_CAP must be at least 2")

        if cls.TAIL_N < 0:
            errors.append("BERKCRUCIAL_TAIL_N must be non-negative")

        if cls.WORKERS < 1:
            errors.append("BERKCRUCIAL_WORKERS must be positive")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL.upper()), int):
            errors.append(f"LOG_LEVEL {cls.LOG_LEVEL!r} is not a logging level")

        return errors

    def precision_policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(
            start=self.PRECISION_START,
            maximum=self.PRECISION_MAX,
            max_ramification=self.MAX_RAMIFICATION or None,
        )


def get_config() -> CrucialConfig:
    """Get configuration instance."""
    return CrucialConfig()


__all__ = ["CrucialConfig", "get_config"]
