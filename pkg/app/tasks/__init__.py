from .acceptance import (
    SUITES,
    run_all_acceptance_checks,
)

__all__ = ["SUITES", "run_all_acceptance_checks"]
