"""Closed-form single-qubit gate identities used as an oracle test corpus.

Each case: (written sequence, input vector, expected output vector), with
exact coefficients including phases.  Sequences are written right-to-left
(the rightmost gate acts first).
"""
import numpy as np

SQ = 1 / np.sqrt(2)
E = lambda phi: np.exp(1j * phi)  # noqa: E731
PI4 = np.pi / 4

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = SQ * np.array([1, 1], dtype=complex)
MINUS = SQ * np.array([1, -1], dtype=complex)

# (label, sequence tokens, input, expected)
GATE_ACTION_CASES = [
    ("X|0>", ("X1",), KET0, SQ * np.array([1, 1j])),
    ("X|1>", ("X1",), KET1, SQ * np.array([1j, 1])),
    ("Xb|0>", ("Xb1",), KET0, SQ * np.array([1, -1j])),
    ("Xb|1>", ("Xb1",), KET1, SQ * np.array([-1j, 1])),
    ("Y|0>", ("Y1",), KET0, SQ * np.array([1, -1])),
    ("Y|1>", ("Y1",), KET1, SQ * np.array([1, 1])),
    ("Yb|0>", ("Yb1",), KET0, SQ * np.array([1, 1])),
    ("Yb|1>", ("Yb1",), KET1, SQ * np.array([-1, 1])),
    ("Y|->", ("Y1",), MINUS, -KET1),
    ("Y|+>", ("Y1",), PLUS, KET0),
    ("Yb|->", ("Yb1",), MINUS, KET0),
    ("Yb|+>", ("Yb1",), PLUS, KET1),
    ("XX|0>", ("X1", "X1"), KET0, 1j * KET1),
    ("XX|1>", ("X1", "X1"), KET1, 1j * KET0),
    ("YY|0>", ("Y1", "Y1"), KET0, -KET1),
    ("YY|1>", ("Y1", "Y1"), KET1, KET0),
    ("XY|0>", ("X1", "Y1"), KET0, E(-PI4) * MINUS),
    ("XY|1>", ("X1", "Y1"), KET1, E(+PI4) * PLUS),
    ("XbY|0>", ("Xb1", "Y1"), KET0, E(+PI4) * MINUS),
    ("XbY|1>", ("Xb1", "Y1"), KET1, E(-PI4) * PLUS),
    ("XYb|0>", ("X1", "Yb1"), KET0, E(+PI4) * PLUS),
    ("XYb|1>", ("X1", "Yb1"), KET1, E(-PI4) * SQ * np.array([-1, 1])),
    ("XbYb|0>", ("Xb1", "Yb1"), KET0, E(-PI4) * PLUS),
    ("XbYb|1>", ("Xb1", "Yb1"), KET1, E(+PI4) * SQ * np.array([-1, 1])),
    ("YXYb|0>", ("Y1", "X1", "Yb1"), KET0, E(+PI4) * KET0),
    ("YXYb|1>", ("Y1", "X1", "Yb1"), KET1, E(-PI4) * KET1),
    ("YbXY|0>", ("Yb1", "X1", "Y1"), KET0, E(-PI4) * KET0),
    ("YbXY|1>", ("Yb1", "X1", "Y1"), KET1, E(+PI4) * KET1),
    ("YbXYb|0>", ("Yb1", "X1", "Yb1"), KET0, E(+PI4) * KET1),
    ("YbXYb|1>", ("Yb1", "X1", "Yb1"), KET1, -E(-PI4) * KET0),
    ("YXbYb|0>", ("Y1", "Xb1", "Yb1"), KET0, E(-PI4) * KET0),
    ("YXbYb|1>", ("Y1", "Xb1", "Yb1"), KET1, E(+PI4) * KET1),
    ("W|0>", ("W1",), KET0, 1j * PLUS),
    ("W|1>", ("W1",), KET1, 1j * MINUS),
    ("WW|0>", ("W1", "W1"), KET0, -KET0),
    ("WW|1>", ("W1", "W1"), KET1, -KET1),
]

# matrix identities: (label, lhs sequence, rhs sequence, sign)
WALSH_FORMS = [
    ("W = XXYb", ("W1",), ("X1", "X1", "Yb1"), +1),
    ("W = YXX", ("W1",), ("Y1", "X1", "X1"), +1),
    ("W = -XbXbYb", ("W1",), ("Xb1", "Xb1", "Yb1"), -1),
    ("W = -YXbXb", ("W1",), ("Y1", "Xb1", "Xb1"), -1),
]
