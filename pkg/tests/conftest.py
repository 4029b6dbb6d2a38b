import pytest

from qresurge.knotgen import kashaev_31, kashaev_41
from qresurge.precision import PrecisionContext
from qresurge.qcore import habiro_np_coeffs
from qresurge.resurge import CoeffSequence


@pytest.fixture(scope="session")
def ctx256():
    return PrecisionContext(256)


@pytest.fixture(scope="session")
def trefoil_np_500():
    ctx = PrecisionContext(64)
    return CoeffSequence(habiro_np_coeffs(kashaev_31(), 500, ctx), {"object": "3_1", "model": "np"})


@pytest.fixture(scope="session")
def fig8_np_500(ctx256):
    return CoeffSequence(habiro_np_coeffs(kashaev_41(), 500, ctx256), {"object": "4_1", "model": "np"})
