import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import numpy as np

from ddouble import linalg, modular
from ddouble.scalar import CycNum

ints = st.integers(-6, 6)
matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n),
                                                          min_size=m, max_size=m)))


@given(matrices)
def test_smith_normal_form(A):
    D, U, V = linalg.smith_normal_form(A)
    assert linalg.matmul(linalg.matmul(U, A), V) == D
    d = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices)
def test_integer_kernel(A):
    for v in linalg.integer_kernel(A, len(A[0])):
        assert linalg.matvec(A, v) == [0] * len(A)


@given(matrices, st.sampled_from([2, 3, 4, 6, 12]))
def test_kernel_mod(A, N):
    for v in linalg.kernel_mod(A, N, len(A[0])):
        assert all(x % N == 0 for x in linalg.matvec(A, v))


@given(matrices)
def test_rank_matches_numpy(A):
    assert linalg.rank([[Fraction(x) for x in row] for row in A]) == np.linalg.matrix_rank(np.array(A, float))


@given(matrices, st.lists(ints, min_size=4, max_size=4))
def test_solve_linear(A, x):
    x = x[:len(A[0])]
    b = linalg.matvec(A, x)
    sol = linalg.solve_linear([[Fraction(a) for a in row] for row in A], [Fraction(v) for v in b])
    assert sol is not None
    assert linalg.matvec(A, sol) == b


def test_modular_helpers():
    assert modular.is_prime(2 ** 31 - 1) and not modular.is_prime(561)
    for p, w in modular.prime_roots(12, 3):
        assert p % 12 == 1 and pow(w, 12, p) == 1 and pow(w, 6, p) != 1
    assert modular.rational_reconstruct(Fraction(-3, 7).numerator * pow(7, -1, 10007) % 10007, 10007) == \
        Fraction(-3, 7)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4, 5, 8]))
def test_solve_cyclotomic(seed, N):
    rng = random.Random(seed)
    n = 3
    x = [CycNum(N, [rng.randint(-3, 3) for _ in range(N)]) for _ in range(n)]
    rows = []
    for _ in range(n):
        rows.append({j: CycNum.root(N, rng.randrange(N)) * rng.randint(1, 3) for j in range(n)})
    rhs = [sum((c * x[j] for j, c in r.items()), CycNum.zero(N)) for r in rows]
    got = modular.solve_cyclotomic(rows, rhs, n, N)
    assert got is not None
    sol, rk = got
    for r, b in zip(rows, rhs):
        assert sum((c * sol[j] for j, c in r.items()), CycNum.zero(N)) == b
