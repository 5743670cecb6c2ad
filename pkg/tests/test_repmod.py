"""Pair actions, representation laws, and the six-term identity."""

import random
from itertools import combinations

from trilie.core3lie import Hom3Lie, StructureConstants3, ad_columns
from trilie.corpus import d4_structure, rep_family
from trilie.exactq import MatrixQ, mat_apply_sv, sv_to_tuple
from trilie.repmod import (
    HomRepresentation,
    PairAction,
    check_classical_rep,
    check_hom_rep,
    check_hr4,
    check_hr4_equivalence,
    kernel_of_rep,
    op_apply,
    op_compose,
    op_from_matrix,
    op_zero,
)


def euler_cols(m, q0=1):
    return [{k: k * q0} if k else {} for k in range(m)]


def test_op_helpers_match_dense():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randint(1, 4)
        a = MatrixQ([[rng.randint(-2, 2) for _ in range(n)]
                     for _ in range(n)])
        b = MatrixQ([[rng.randint(-2, 2) for _ in range(n)]
                     for _ in range(n)])
        ca, cb = op_from_matrix(a), op_from_matrix(b)
        comp = op_compose(ca, cb)
        vec = tuple(rng.randint(-2, 2) for _ in range(n))
        sparse = {i: c for i, c in enumerate(vec) if c}
        assert sv_to_tuple(op_apply(comp, sparse), n) == (a @ b).apply(vec)
    assert op_apply(op_zero(3), {0: 1}) == {}


def test_pair_action_antisymmetry():
    act = PairAction(3, 2, {(0, 1): euler_cols(2)})
    fwd, sf = act.pair(0, 1)
    bwd, sb = act.pair(1, 0)
    assert fwd is bwd and sf == -sb
    same, s0 = act.pair(1, 1)
    assert all(col == {} for col in same)
    assert act.apply_pair_vec(1, 0, {1: 1}) == {1: -1}


def test_pair_action_bilinear_expansion():
    act = PairAction(3, 2, {(0, 1): euler_cols(2), (1, 2): euler_cols(2, 3)})
    cols = act.bilinear({0: 1, 2: 2}, {1: 1})
    # rho(e0 + 2 e2, e1) = rho(0,1) - 2 rho(1,2)
    assert op_apply(cols, {1: 1}) == {1: 1 - 6}


def adjoint_action(alg):
    n = alg.n
    ops = {}
    for i, j in combinations(range(n), 2):
        cols = ad_columns(alg, {i: 1}, {j: 1})
        if any(col for col in cols):
            ops[(i, j)] = cols
    return PairAction(n, n, ops)


def test_adjoint_is_classical_rep():
    alg = Hom3Lie(StructureConstants3(4, d4_structure()),
                  MatrixQ.identity(4))
    act = adjoint_action(alg)
    suite = check_classical_rep(alg, act)
    assert suite.passed is True
    assert suite.all_ran


def test_adjoint_kernel_is_center():
    alg = Hom3Lie(StructureConstants3(4, d4_structure()),
                  MatrixQ.identity(4))
    kernel, excluded = kernel_of_rep(alg, adjoint_action(alg))
    assert kernel.dim == 0 and excluded == 0


def test_hom_rep_family_samples():
    for seed in (0, 4, 9, 105):
        alg, rep = rep_family(seed)
        suite = check_hom_rep(alg, rep)
        assert suite.passed is True, seed
        assert check_hr4(alg, rep).passed is True


def test_adversarial_twist_fails_hr1_only():
    alg, rep = rep_family(19)
    suite = check_hom_rep(alg, rep)
    assert suite.find("hr1").passed is False
    assert suite.find("hr2").passed is True
    assert suite.find("hr3").passed is True


def test_hr4_equivalence_observed():
    for seed in range(0, 30, 3):
        alg, rep = rep_family(seed)
        out = check_hr4_equivalence(alg, rep)
        suite = check_hom_rep(alg, rep)
        if suite.find("hr2").passed is True:
            assert out.passed is True
        else:
            assert out.passed is None


def test_hr4_equivalence_blocked_without_hr2():
    # two independent scaled Euler pairs break hr2
    alg = Hom3Lie(StructureConstants3(4, {}), MatrixQ.diagonal([-1] * 4))
    act = PairAction(4, 2, {(0, 1): euler_cols(2), (2, 3): euler_cols(2, 2)})
    rep = HomRepresentation(act, MatrixQ.identity(2))
    suite = check_hom_rep(alg, rep)
    assert suite.find("hr2").passed is False
    out = check_hr4_equivalence(alg, rep)
    assert out.passed is None
    assert "hr2" in out.detail


def test_windowed_action_excluded_from_kernel():
    act = PairAction(3, 2, {(0, 1): [None, {1: 1}]})
    alg = Hom3Lie(StructureConstants3(3, {}), MatrixQ.identity(3))
    kernel, excluded = kernel_of_rep(alg, act)
    assert excluded > 0
