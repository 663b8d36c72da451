import os
import sys
from itertools import combinations

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))


def ryser_permanent(matrix):
    """Inclusion-exclusion over column subsets."""
    n = len(matrix)
    if n == 0:
        return 1
    total = 0
    for size in range(1, n + 1):
        for columns in combinations(range(n), size):
            product = 1
            for row in matrix:
                product *= sum(row[j] for j in columns)
            total += (-1) ** size * product
    return (-1) ** n * total


def sum_of_permanents(matrix, m):
    """Sum of the permanents of all m x m submatrices."""
    matrix = [list(map(int, row)) for row in np.asarray(matrix)]
    rows, cols = len(matrix), len(matrix[0])
    total = 0
    for chosen_rows in combinations(range(rows), m):
        for chosen_cols in combinations(range(cols), m):
            total += ryser_permanent([[matrix[i][j] for j in chosen_cols] for i in chosen_rows])
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def permanent_oracle():
    return sum_of_permanents
