"""Generators, reference oracles and fixtures for testing the engine."""

from .fixtures import SLEEP_QUERY, TEMPS_QUERY, fixture_path, fixture_text, fixtures
from .generators import GenConfig, Generator, gen_array, gen_criterion, gen_path, gen_tree
from .oracle import (
    oracle_group,
    oracle_lookup,
    oracle_match,
    oracle_project,
    oracle_satisfies,
    oracle_unwind,
)
