import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sp2curv import MetricDeformation, SpElement, reference_deformation, special_plane


def element(lam=0.0, u=(0, 0, 0), v=(0, 0, 0), w=(0, 0, 0)) -> SpElement:
    data = np.zeros(10)
    data[0] = lam
    data[1:4] = u
    data[4:7] = v
    data[7:10] = w
    return SpElement.from_array(data)


# Bounded coordinate strategy; keeps products and brackets well inside
# float64 range so tolerance checks stay meaningful.
coords = arrays(np.float64, (10,),
                elements=st.floats(min_value=-4.0, max_value=4.0,
                                   allow_nan=False))

coords_m = arrays(np.float64, (9,),
                  elements=st.floats(min_value=-4.0, max_value=4.0,
                                     allow_nan=False))


@pytest.fixture
def ref():
    return reference_deformation()


@pytest.fixture
def t0():
    return special_plane()


@pytest.fixture
def generic_triple():
    a = np.array([[0.7, 0.2, -0.1],
                  [0.2, -0.3, 0.4],
                  [-0.1, 0.4, 1.1]])
    b = np.array([[0.0, 0.5, -0.2],
                  [-0.5, 0.0, 0.3],
                  [0.2, -0.3, 0.0]])
    c = np.array([[-0.4, 0.1, 0.6],
                  [0.1, 0.9, -0.2],
                  [0.6, -0.2, 0.2]])
    return MetricDeformation(a, b, c)
