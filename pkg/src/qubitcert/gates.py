"""Fixed single-qubit operators and reference kets.

All arrays are read-only complex128; copy before mutating.
"""

import numpy as np


def _frozen(values) -> np.ndarray:
    m = np.array(values, dtype=complex)
    m.setflags(write=False)
    return m


I2 = _frozen(np.eye(2))
X = _frozen([[0, 1], [1, 0]])
Y = _frozen([[0, -1j], [1j, 0]])
Z = _frozen([[1, 0], [0, -1]])
H = _frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
S = _frozen([[1, 0], [0, 1j]])
S_DAG = _frozen([[1, 0], [0, -1j]])
T = _frozen([[1, 0], [0, np.exp(1j * np.pi / 4)]])
ZT = _frozen([[1, 0], [0, -np.exp(1j * np.pi / 4)]])

KET_ZERO = _frozen([1, 0])
KET_ONE = _frozen([0, 1])
KET_PLUS = _frozen(np.array([1, 1]) / np.sqrt(2))
KET_MINUS = _frozen(np.array([1, -1]) / np.sqrt(2))

PROJ_PLUS = _frozen(np.outer(KET_PLUS, KET_PLUS))
PROJ_MINUS = _frozen(np.outer(KET_MINUS, KET_MINUS))
