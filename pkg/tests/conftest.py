import pytest

from yjgambles.calibration import calibrate
from yjgambles.simulation import ExperimentConfig, run_ensemble

ACCEPTANCE_SEED = 7


@pytest.fixture(scope="session")
def fig4_calibration():
    return calibrate(0.5, 0.0, 1.0, 2.0)


@pytest.fixture(scope="session")
def paper_ensemble():
    """Desk-scale version of the reference ensemble: 10,000 runs, T=300."""
    config = ExperimentConfig(
        runs=10_000,
        horizon=300,
        snapshots=(30, 300),
        master_seed=ACCEPTANCE_SEED,
    )
    return run_ensemble(config, threads=1)
