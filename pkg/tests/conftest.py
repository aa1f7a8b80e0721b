import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch every jit-compiled kernel family once so no timed assertion
    pays compilation cost."""
    from freudquad.freud import freud_rule
    from freudquad.hermite import hermite_rule
    from freudquad.interp import BarycentricInterpolant
    from freudquad.potentials import FreudPotential

    hermite_rule(256)            # asy path: pcf + airy kernels
    hermite_rule(64)             # rec path: scaled recurrence kernels
    r = freud_rule(FreudPotential.parse("x^2"), 8)   # stieltjes + weights
    bi = BarycentricInterpolant.from_rule(hermite_rule(12), lambda x: x)
    bi.eval_weighted(0.3)
    assert len(r) == 8
    yield
