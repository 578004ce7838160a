import numpy as np
import pytest

from commlang import _kernels as K

backends = ["numpy"] + (["numba"] if K.NUMBA_AVAILABLE else [])


def random_dfa(rng, n, k):
    return rng.integers(0, n, size=(n, k)).astype(np.int64), rng.random(n) < 0.5


@pytest.mark.parametrize("seed", range(25))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n, k = int(rng.integers(1, 60)), int(rng.integers(1, 4))
    ta, fa = random_dfa(rng, n, k)
    tb, fb = random_dfa(rng, int(rng.integers(1, 60)), k)
    results = []
    for b in backends:
        results.append(
            (
                K.reachable(ta, 0, backend=b).tolist(),
                K.moore_classes(ta, fa, backend=b).tolist(),
                K.distinguishable(ta, fa, 0, tb, fb, 0, backend=b),
                K.distinguishable(ta, fa, 0, ta, fa, 0, backend=b),
            )
        )
    assert all(r == results[0] for r in results)
    assert results[0][3] is False


@pytest.mark.parametrize("b", backends)
def test_moore_classes_are_first_occurrence(b):
    # two interchangeable accepting sinks and one rejecting sink
    trans = np.array([[1], [1], [2], [3]], dtype=np.int64)
    finals = np.array([False, True, True, False])
    cls = K.moore_classes(trans, finals, backend=b)
    assert cls.tolist() == [0, 1, 1, 2]


@pytest.mark.parametrize("b", backends)
def test_sumset(b):
    a = np.array([1, 0, 1, 0, 0, 0], dtype=np.bool_)
    c = np.array([0, 1, 0, 0, 0, 0], dtype=np.bool_)
    assert K.sumset(a, c, 6, backend=b).tolist() == [False, True, False, True, False, False]


def test_unknown_backend():
    with pytest.raises(ValueError):
        K.reachable(np.zeros((1, 1), dtype=np.int64), 0, backend="cuda")


def test_env_flag_forces_numpy():
    import os
    import subprocess
    import sys

    env = dict(os.environ, COMMLANG_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from commlang import _kernels as K; print(K.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
