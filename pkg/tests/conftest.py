"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import pytest

from kripkemin import PointedModel, gen_figure, gen_random


@pytest.fixture
def fig2() -> PointedModel:
    return gen_figure("fig2")


@pytest.fixture
def n1() -> PointedModel:
    return gen_figure("n1")


@pytest.fixture
def n2() -> PointedModel:
    return gen_figure("n2")


def random_models(count: int, *, max_worlds: int = 8, max_indices: int = 2,
                  max_atoms: int = 2, seed_base: int = 0):
    """A deterministic stream of small random models with mixed shapes."""
    densities = (0.15, 0.3, 0.5, 0.8)
    for n in range(count):
        seed = seed_base + n
        yield gen_random(
            n_worlds=1 + seed % max_worlds,
            n_indices=1 + seed % max_indices,
            n_atoms=1 + (seed // 3) % max_atoms,
            edge_density=densities[seed % len(densities)],
            seed=seed,
        )
