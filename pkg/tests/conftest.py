import numpy as np
import pytest

import cholinv
from cholinv import make_prng, random_hermitian_pd


@pytest.fixture(params=cholinv.available_backends())
def backend(request):
    """Run the test once per available kernel backend."""
    with cholinv.use_backend(request.param):
        yield request.param


def gauss_jordan_inverse(a):
    """Brute-force inverse: Gauss-Jordan with partial pivoting on Python complex."""
    n = len(a)
    m = [[complex(v) for v in row] + [complex(i == j) for j in range(n)] for i, row in enumerate(np.asarray(a).tolist())]
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(m[r][c]))
        if abs(m[p][c]) == 0:
            raise ZeroDivisionError("singular")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[c])]
    return np.array([row[n:] for row in m], dtype=np.complex128)


def rel_fro(x, y):
    return np.linalg.norm(x - y) / np.linalg.norm(y)


def random_pd(n, seed, key=0, delta=0.1):
    return random_hermitian_pd(n, make_prng(seed, 99, key, n), delta)


def random_upper(n, seed):
    """Well-conditioned random upper-triangular matrix with complex diagonal."""
    rng = np.random.default_rng(seed)
    r = np.triu(rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))) / np.sqrt(n)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    r[np.diag_indices(n)] = (1.0 + rng.uniform(0, 1, n)) * phase
    return r
