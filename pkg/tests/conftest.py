import pytest

import qwrng


@pytest.fixture(scope="session")
def circ_left() -> qwrng.WalkState:
    return qwrng.initial_state(qwrng.NAMED_COIN_VECTORS["circ-left"])


@pytest.fixture(scope="session")
def uniform4() -> qwrng.Distribution:
    return qwrng.uniform_target(4)


@pytest.fixture(scope="session")
def trained_uniform(circ_left, uniform4) -> qwrng.TrainReport:
    """Default-configuration training run toward the 4-step uniform target."""
    return qwrng.train(circ_left, uniform4)


@pytest.fixture(scope="session")
def trained_uniform_full(circ_left, uniform4) -> qwrng.TrainReport:
    """Same target, but run through the whole iteration budget."""
    return qwrng.train(
        circ_left, uniform4, qwrng.TrainConfig(fidelity_goal=1.0, loss_tol=0.0)
    )


@pytest.fixture(scope="session")
def trained_gaussian(circ_left) -> qwrng.TrainReport:
    return qwrng.train(circ_left, qwrng.gaussian_target(4, 0.0, 2.0))
