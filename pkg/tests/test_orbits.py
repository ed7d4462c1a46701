import pytest

from loopzip.errors import BudgetExceeded
from loopzip.gf import FieldSpec
from loopzip.grpdata import Cocharacter, gl_order
from loopzip.orbits import (
    ActionSpec,
    chain_compare,
    check_action_axioms,
    enumerate_orbits,
    partition_blocks,
    transport_check,
    weyl_reps_report,
)

MU = Cocharacter((1, 0))


def test_action_axioms_all_kinds():
    for kind in ("zip-normal", "zip-frobenius", "partial-frobenius", "sigma-conj"):
        assert check_action_axioms(ActionSpec(kind, MU, 2, 1), samples=15, seed=1)
        assert check_action_axioms(ActionSpec(kind, MU, 3, 1), samples=10, seed=1)


def test_orbit_partition_invariants():
    part = enumerate_orbits(ActionSpec("zip-normal", MU, 2))
    assert part.total == gl_order(2, 2) == 6
    assert sum(size for _, size, _ in part.orbits) == 6
    assert all(part.acting_order % size == 0 for _, size, _ in part.orbits)
    assert [size for _, size, _ in part.orbits] == [2, 4]


def test_trivial_weights_action_is_conjugation():
    """With equal weights the zip group degenerates to the diagonal copy of
    G acting by conjugation, so orbits are conjugacy classes."""
    part = enumerate_orbits(ActionSpec("zip-normal", Cocharacter((0, 0)), 2))
    assert sorted(size for _, size, _ in part.orbits) == [1, 2, 3]


def test_orbits_deterministic():
    p1 = enumerate_orbits(ActionSpec("sigma-conj", MU, 2, 1))
    p2 = enumerate_orbits(ActionSpec("sigma-conj", MU, 2, 1))
    assert p1.orbits == p2.orbits


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_orbits(ActionSpec("zip-normal", MU, 5))


def test_chain_compare_q2():
    rep = chain_compare(MU, 2, 1)
    assert rep["passed"]
    assert rep["partitions_coincide"] and rep["tau_transport"] and rep["chain_cycles_back"]


def test_chain_compare_q4_nontrivial_frobenius():
    rep = chain_compare(MU, 4, 1)
    assert rep["passed"]


def test_chain_compare_tau_trivial():
    # tau = sigma^0 collapses the chain: everything coincides immediately
    rep = chain_compare(MU, 2, 0)
    assert rep["passed"]


def test_transport_q2():
    rep = transport_check(MU, 2, 1, samples=30, seed=2)
    assert rep["passed"]
    assert rep["source_orbits"] == rep["target_orbits"]


def test_transport_q4():
    rep = transport_check(MU, 4, 1, samples=30, seed=2)
    assert rep["passed"]


def test_weyl_reps_gl2():
    rep = weyl_reps_report(MU, 2)
    assert rep["rep_count"] == 2
    assert rep["pairwise_distinct"] and rep["count_at_least_reps"]


def test_weyl_reps_gl3():
    rep = weyl_reps_report(Cocharacter((1, 1, 0)), 2)
    assert rep["rep_count"] == 3
    assert rep["pairwise_distinct"] and rep["orbit_count"] >= 3


def test_weyl_reps_trivial_mu():
    rep = weyl_reps_report(Cocharacter((0, 0)), 2)
    assert rep["rep_count"] == 1 and rep["passed"]


def test_sigma_conj_action_matches_class_pipeline():
    """Acting on the representative pair agrees with conjugating the loop
    matrix and re-running the decomposition pipeline."""
    import random

    from loopzip.coset import ClassContext, class_of, laurent_lift, pair_matrix
    from loopzip.grpdata import enumerate_gl_flat
    from loopzip.matring import flat_frobenius, flat_mul, mat_decode

    spec = FieldSpec.for_q(4)
    ctx = ClassContext.get(MU, spec)
    gl = enumerate_gl_flat(spec, 2)
    rng = random.Random(3)
    for _ in range(15):
        g1 = gl[rng.randrange(len(gl))]
        g2 = gl[rng.randrange(len(gl))]
        g = gl[rng.randrange(len(gl))]
        shortcut = ctx.canonical(
            flat_mul(spec, 2, g1, g),
            flat_mul(spec, 2, g2, flat_frobenius(spec, g, 1)),
        )
        x = pair_matrix(mat_decode(spec, 2, g1), mat_decode(spec, 2, g2), MU, 6)
        gm = laurent_lift(mat_decode(spec, 2, g), 6)
        tgm = laurent_lift(mat_decode(spec, 2, flat_frobenius(spec, g, 1)), 6)
        moved = gm.inverse() * x * tgm
        assert class_of(moved, MU).rep == shortcut
