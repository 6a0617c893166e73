"""End-to-end acceptance checks, one group per criterion.

A summary line per criterion is printed by the hook in conftest.py.
"""

import io
import json
import random
from itertools import combinations
from math import comb

import pytest

from liecohom import suites
from liecohom.cli import RunConfig, run
from liecohom.complex import Cochain, apply_coboundary, coboundary_matrix_direct, cochain_basis
from liecohom.driver import betti_numbers, graded_betti, invariants, verify_borel_theorem
from liecohom.fields import GF, QQ
from liecohom.grading import cartan_grading, degree_zero_part_of_cocycle, degree_zero_subcomplex
from liecohom.lie import builtin_algebra, make_module
from liecohom.linalg import kernel_basis, solve

ALL_BUILTINS = ([("sl", 2), ("sl", 3)] + [("borel_sl", N) for N in range(2, 6)]
                + [("nilpotent_sl", N) for N in range(2, 6)] + [("cartan_sl", N) for N in range(2, 6)]
                + [("abelian", d) for d in range(1, 7)] + [("heisenberg", n) for n in range(1, 4)])


def borel(N, module="trivial", field=QQ):
    alg, tag = builtin_algebra("borel_sl", N, field)
    mod = make_module(module, alg)
    return alg, mod, cartan_grading(alg, mod, tag.indices)


# 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_borel_theorem_rational(N):
    v = verify_borel_theorem(N, QQ)
    expected = [comb(N - 1, n) for n in range(N * (N + 1) // 2)]
    assert v.expected == expected
    assert v.betti_full == expected
    assert v.betti_reduced == expected
    assert v.passed


# 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("N,p", [(2, 3), (3, 5), (4, 5), (5, 7)])
def test_borel_theorem_characteristic(N, p):
    v = verify_borel_theorem(N, GF(p))
    assert v.in_hypotheses and v.passed
    assert v.betti_full == v.betti_reduced == verify_borel_theorem(N, QQ, ("reduced",)).betti_reduced


# 3, 4 ------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("module", ["trivial", "adjoint"])
@pytest.mark.parametrize("name,param", ALL_BUILTINS)
def test_d2_zero(name, param, module):
    alg, _ = builtin_algebra(name, param, QQ)
    res = suites.suite_d2(alg, make_module(module, alg))
    assert res.passed, res.failures
    assert res.checks == alg.dim


@pytest.mark.criterion(4)
@pytest.mark.parametrize("module", ["trivial", "adjoint"])
@pytest.mark.parametrize("name,param", ALL_BUILTINS)
def test_direct_equals_recursive(name, param, module):
    alg, _ = builtin_algebra(name, param, QQ)
    res = suites.suite_direct_vs_recursive(alg, make_module(module, alg))
    assert res.passed, res.failures
    assert res.checks == alg.dim + 1


# 5, 6 ------------------------------------------------------------------------

@pytest.mark.criterion(5)
@pytest.mark.parametrize("N", [3, 4])
def test_theorem_nonzero_degree(N):
    res = suites.suite_theorem1(borel(N)[2])
    assert res.passed, res.failures
    assert res.checks > 0


@pytest.mark.criterion(5)
def test_theorem_nonzero_degree_by_solve_oracle():
    # independent of the contraction formula: each such cocycle lies in the image of delta
    alg, mod, g = borel(3)
    for n in range(1, alg.dim + 1):
        prev = coboundary_matrix_direct(alg, mod, n - 1)
        for deg, F in suites._graded_cocycles(g, n, zero=False):
            assert solve(prev, F.to_vector()) is not None


@pytest.mark.criterion(6)
@pytest.mark.parametrize("N", [3, 4])
def test_contraction_of_degree_zero(N):
    res = suites.suite_corollary2(borel(N)[2])
    assert res.passed, res.failures
    assert res.checks > 0


# 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
@pytest.mark.parametrize("N", [2, 3, 4])
def test_degree_zero_concentration(N):
    g = borel(N)[2]
    for n in range(g.algebra.dim + 1):
        assert set(graded_betti(g, n)) <= {g.zero}
    res = suites.suite_corollary1(g, samples=20, seed=N)
    assert res.passed, res.failures


@pytest.mark.criterion(7)
def test_random_cocycles_against_image_oracle():
    alg, mod, g = borel(3)
    rng = random.Random(7)
    for n in range(1, alg.dim + 1):
        kern = kernel_basis(coboundary_matrix_direct(alg, mod, n))
        prev = coboundary_matrix_direct(alg, mod, n - 1)
        basis = cochain_basis(alg, mod, n)
        for _ in range(20 if kern else 0):
            vec = [0] * len(basis)
            for kv in kern:
                c = rng.randint(-3, 3)
                for j, x in enumerate(kv):
                    vec[j] += c * x
            F = Cochain.from_vector(basis, vec)
            F0, P = degree_zero_part_of_cocycle(F, g)
            assert apply_coboundary(P) == F - F0
            assert solve(prev, (F - F0).to_vector()) is not None


# 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
@pytest.mark.parametrize("d", range(1, 7))
def test_known_abelian(d):
    alg, _ = builtin_algebra("abelian", d, QQ)
    assert betti_numbers(alg, make_module("trivial", alg)).betti == [comb(d, n) for n in range(d + 1)]


@pytest.mark.criterion(8)
def test_known_small_values():
    sl2, _ = builtin_algebra("sl", 2, QQ)
    assert betti_numbers(sl2, make_module("trivial", sl2)).betti == [1, 0, 0, 1]
    heis, _ = builtin_algebra("heisenberg", 1, QQ)
    triv = make_module("trivial", heis)
    assert betti_numbers(heis, triv).betti[1] == 2
    # rank of delta_1 is 1: the single relation [x0, x1] = x2
    assert len(cochain_basis(heis, triv, 1)) - len(kernel_basis(coboundary_matrix_direct(heis, triv, 1))) == 1
    assert len(invariants(sl2, make_module("adjoint", sl2))) == 0
    assert len(invariants(heis, make_module("adjoint", heis))) == 1


# 9 ---------------------------------------------------------------------------

def cartan_row(i, N):
    row = [0] * (N - 1)
    row[i] = 2
    if i > 0:
        row[i - 1] = -1
    if i < N - 2:
        row[i + 1] = -1
    return tuple(row)


def weight_oracle(i, j, N):
    # [h_k, e_ij] = (d_k(i) - d_k(j)) e_ij with h_k = e_kk - e_{k+1,k+1}, 1-based
    def d(k, a):
        return (a == k) - (a == k + 1)
    return tuple(d(k, i) - d(k, j) for k in range(1, N))


@pytest.mark.criterion(9)
@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_borel_degree_combinatorics(N):
    alg, mod, g = borel(N)
    deg = dict(zip(alg.basis_names, g.algebra_degrees))
    for i in range(1, N):
        v = deg[f"e{i}{i + 1}"]
        assert v == cartan_row(i - 1, N)
        assert sum(v) == (1 if i in (1, N - 1) else 0)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            assert deg[f"e{i}{j}"] == weight_oracle(i, j, N)
            assert deg[f"e{i}{j}"] == tuple(map(sum, zip(*(cartan_row(k - 1, N) for k in range(i, j)))))


@pytest.mark.criterion(9)
@pytest.mark.parametrize("N", [3, 4, 5])
def test_edge_root_sums_bounded(N):
    alg, mod, g = borel(N)
    deg = dict(zip(alg.basis_names, g.algebra_degrees))
    edge = sorted({f"e1{j}" for j in range(2, N + 1)} | {f"e{i}{N}" for i in range(1, N)})
    worst = 0
    for k in range(1, len(edge) + 1):
        for sub in combinations(edge, k):
            total = [sum(deg[e][c] for e in sub) for c in range(N - 1)]
            worst = max(worst, max(abs(x) for x in total))
    assert worst <= N
    # the bound is attained by the full first row
    assert abs(sum(deg[f"e1{j}"][0] for j in range(2, N + 1))) == N


# 10 --------------------------------------------------------------------------

@pytest.mark.criterion(10)
@pytest.mark.parametrize("N", [3, 4, 5])
def test_reduced_strictly_smaller(N):
    alg, mod, g = borel(N)
    dims = degree_zero_subcomplex(g).dims()
    for n in range(1, alg.dim):
        assert dims[n] < comb(alg.dim, n)


@pytest.mark.criterion(10)
def test_bench_middle_degree_ratio():
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig("bench", algebra="borel-sl:5", format="json"), out, err)
    doc = json.loads(out.getvalue())
    assert code == 0 and doc["betti_agree"]
    mid = next(r for r in doc["rows"] if r["n"] == 7)
    assert mid["dimC_full"] == 3432
    assert mid["dimC_full"] >= 10 * mid["dimC_reduced"]
