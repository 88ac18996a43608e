"""Shared fixtures: settled trajectories are expensive enough to cache
once per session; every test reads them immutably."""

from __future__ import annotations

import pytest

from arcmem import (
    ArcState,
    IntegratorConfig,
    parameter_sweep,
    settle_to_periodic,
)
from arcmem.scenario import preset


@pytest.fixture(scope="session")
def cfg():
    return IntegratorConfig()


@pytest.fixture(scope="session")
def fig1():
    return preset("fig1")


@pytest.fixture(scope="session")
def fig3():
    return preset("fig3")


@pytest.fixture(scope="session")
def table1():
    return preset("table1")


@pytest.fixture(scope="session")
def fig1_steady(fig1, cfg):
    """Settled steady period at the 50 Hz operating point."""
    return settle_to_periodic(fig1.arc, fig1.circuit, ArcState(0.0, 1.0), cfg)


@pytest.fixture(scope="session")
def table1_steady(table1, cfg):
    """Settled steady periods for every table1 sweep frequency."""
    from dataclasses import replace

    out = {}
    for f in table1.sweep.values:
        circuit = replace(table1.circuit, f=f)
        out[f] = settle_to_periodic(table1.arc, circuit, ArcState(0.0, 1.0),
                                    cfg, max_periods=1000)
    return out


@pytest.fixture(scope="session")
def fig3_sweep(fig3, cfg):
    """Frequency sweep of the collapse study, settled and measured."""
    return parameter_sweep(fig3.arc, fig3.circuit, fig3.sweep.axis,
                           fig3.sweep.values, cfg=cfg, max_periods=1000)
