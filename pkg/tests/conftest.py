import numpy as np
import pytest

from flat_signatures.blocks import BlockSpec, block_rep


@pytest.fixture
def phi_minus():
    return block_rep(BlockSpec.of("pants-phi-minus"))


@pytest.fixture
def phi_plus():
    return block_rep(BlockSpec.of("pants-phi-plus"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    """Point the config file at a temporary directory."""
    path = tmp_path / "config"
    monkeypatch.setattr("flat_signatures.facade.user_config_dir", lambda name: str(path))
    return path
