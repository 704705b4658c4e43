"""Cross-checks between the compiled kernels and the pure-Python fallback.

The two backends must agree bit for bit on results (values, witnesses and
tie-breaking), since either may serve any given installation.
"""

import random

import pytest

from harmlesskit._core import available_backends, get_kernels
from harmlesskit.generators import random_instance
from harmlesskit.solvers import brute_force_max, vc_solve

needs_both = pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled kernels not built"
)


def test_backend_registry():
    assert "pure" in available_backends()
    assert get_kernels("pure").BACKEND == "pure"
    with pytest.raises(ValueError):
        get_kernels("nope")


@needs_both
def test_max_harmless_agrees_across_backends():
    rng = random.Random(71)
    for _ in range(120):
        n = rng.randint(0, 12)
        inst = random_instance(rng, n, edge_prob=0.35, t_max=max(1, n // 2))
        assert brute_force_max(inst, backend="pure") == brute_force_max(
            inst, backend="compiled"
        )


@needs_both
def test_vc_scan_agrees_across_backends():
    rng = random.Random(73)
    for _ in range(60):
        n = rng.randint(0, 12)
        inst = random_instance(rng, n, edge_prob=0.3, t_max=4)
        assert vc_solve(inst, backend="pure") == vc_solve(inst, backend="compiled")


@needs_both
def test_raw_kernel_tie_breaking_matches():
    kernels_c = get_kernels("compiled")
    kernels_p = get_kernels("pure")
    # two symmetric candidates: both backends must return the same witness
    indptr = [0, 1, 2]
    indices = [1, 0]
    thresholds = [2, 2]
    for cand in ([0, 1], [1, 0]):
        assert kernels_c.max_harmless(indptr, indices, thresholds, cand) == \
            kernels_p.max_harmless(indptr, indices, thresholds, cand)
