import numpy as np
import pytest

from iaabag.synth import SyntheticSpec, write_benchmark

# two small fast datasets for CLI and loader tests
SMALL_SPECS = (
    SyntheticSpec("alpha", 4, 60, 40, "yes", "no", 0.5, 3, 2.5, 0.05, seed=11),
    SyntheticSpec("beta", 5, 50, 30, "1", "0", 0.4, 4, 2.0, 0.10,
                  missing_rate=0.06, seed=12),
)


@pytest.fixture(scope="session")
def small_manifest(tmp_path_factory):
    dest = tmp_path_factory.mktemp("smallbench")
    return write_benchmark(dest, SMALL_SPECS)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
