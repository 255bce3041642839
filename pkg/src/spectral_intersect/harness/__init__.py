from .crosscheck import CrosscheckEntry, CrosscheckReport, crosscheck, stable_targets
from .fixtures import FixtureEntry, FixtureResult, all_fixtures, run_fixtures
from .oracle import cut_join_oracle

__all__ = [
    "CrosscheckEntry", "CrosscheckReport", "crosscheck", "stable_targets",
    "FixtureEntry", "FixtureResult", "all_fixtures", "run_fixtures", "cut_join_oracle",
]
