import pytest

from osprep.exactfield import Rat
from osprep.weights import Context, Weight


def W(m, n, eps=(), delta=()):
    """Weight shorthand accepting ints, strings and rationals."""
    return Weight(Context(m, n), [Rat(c) for c in eps], [Rat(c) for c in delta])


@pytest.fixture(scope="session")
def grid():
    """The acceptance grid of (m, n) contexts."""
    return [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)]
