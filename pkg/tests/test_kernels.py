"""Backend-parity checks: the compiled kernel must be bit-identical to the
pure-Python reference, and the import-time selector must honor overrides."""

import os
import random
import subprocess
import sys

import pytest

import femtosim.kernels as kernels
from femtosim.kernels import _pure

try:
    from femtosim.kernels import _native
except ImportError:
    _native = None

needs_native = pytest.mark.skipif(_native is None, reason="compiled kernel not built")


def _random_setup(seed, n_walls=8, n_faps=20):
    rng = random.Random(seed)
    walls = [
        (
            rng.uniform(0, 40),
            rng.uniform(0, 40),
            rng.uniform(0, 40),
            rng.uniform(0, 40),
            rng.uniform(1, 20),
        )
        for _ in range(n_walls)
    ]
    faps = [(rng.uniform(0, 40), rng.uniform(0, 40), rng.uniform(5, 15)) for _ in range(n_faps)]
    return walls, faps, rng


@needs_native
@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_backends_bit_identical(seed):
    walls, faps, rng = _random_setup(seed)
    kp = _pure.RadioKernel(walls, 37.0, 3.0, 0.5, faps=faps)
    kn = _native.RadioKernel(walls, 37.0, 3.0, 0.5, faps=faps)
    for _ in range(200):
        ax, ay = rng.uniform(0, 40), rng.uniform(0, 40)
        bx, by = rng.uniform(0, 40), rng.uniform(0, 40)
        assert kp.crossing_indices(ax, ay, bx, by) == kn.crossing_indices(ax, ay, bx, by)
        assert kp.path_loss(ax, ay, bx, by) == kn.path_loss(ax, ay, bx, by)
        assert kp.rssi_all(ax, ay) == kn.rssi_all(ax, ay)


@needs_native
def test_backends_agree_on_degenerate_inputs():
    walls = [(2.0, 0.0, 2.0, 2.0, 10.0)]
    kp = _pure.RadioKernel(walls, 37.0, 3.0, 0.5)
    kn = _native.RadioKernel(walls, 37.0, 3.0, 0.5)
    cases = [(1.0, 1.0, 1.0, 1.0), (0.0, 1.0, 4.0, 1.0), (0.0, 1.0, 2.0, 1.0), (2.0, 1.0, 2.0, 5.0)]
    for case in cases:
        assert kp.crossing_indices(*case) == kn.crossing_indices(*case)
        assert kp.path_loss(*case) == kn.path_loss(*case)


def test_path_loss_symmetry_is_exact_in_both_backends():
    backends = [_pure] if _native is None else [_pure, _native]
    for mod in backends:
        walls, faps, rng = _random_setup(7)
        k = mod.RadioKernel(walls, 37.0, 3.0, 0.5)
        for _ in range(300):
            ax, ay = rng.uniform(0, 40), rng.uniform(0, 40)
            bx, by = rng.uniform(0, 40), rng.uniform(0, 40)
            assert k.path_loss(ax, ay, bx, by) == k.path_loss(bx, by, ax, ay)


def test_env_var_forces_pure_backend():
    code = "import femtosim.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, FEMTOSIM_BACKEND="pure")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "pure"


@needs_native
def test_default_backend_is_native_when_built():
    assert kernels.BACKEND == "native"
