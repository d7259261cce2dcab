"""Tests for the truncated Fock-space sparse operator kernel."""

from fractions import Fraction

import pytest

from qfock import fock, scalar
from qfock.fock import (
    EXACT,
    EvalContext,
    ModeConfig,
    SampleRing,
    ShapeError,
    add,
    anticommutator,
    commutator,
    compose,
    diag_exp,
    diag_poly,
    equal_on_interior,
    identity,
    op_pow,
    osc_minus,
    osc_plus,
    q_commutator,
    scale,
    sub,
    zero,
)
from qfock.scalar import GaussianRational, Scalar, q_power, qnum, t_power

ONE = scalar.ONE
Q = q_power(1)


def ctx():
    return EvalContext(EXACT)


def entries(op, state, c=None):
    c = c or ctx()
    return op.column(state, c)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def test_identity_and_zero():
    cfg = ModeConfig(2, 4)
    c = ctx()
    assert identity(cfg).column((2, 3), c) == {(2, 3): ONE}
    assert zero(cfg).column((1, 1), c) == {}
    ii = compose(identity(cfg), identity(cfg))
    out = equal_on_interior(ii, identity(cfg), margin=0)
    assert out.status == "pass"
    assert out.columns_compared == cfg.dim


def test_oscillators_number_gauge():
    cfg = ModeConfig(2, 4)
    c = ctx()
    assert osc_plus(cfg, 1).column((0, 0), c) == {(1, 0): ONE}
    assert osc_minus(cfg, 1).column((1, 0), c) == {(0, 0): ONE}
    assert osc_minus(cfg, 1).column((0, 3), c) == {}
    assert osc_minus(cfg, 2).column((0, 3), c) == {(0, 2): qnum(3)}
    with pytest.raises(IndexError):
        osc_plus(cfg, 3)


def test_defining_relation_on_state():
    # A1- A1+ - q A1+ A1- acts as the identity away from the cutoff
    cfg = ModeConfig(2, 6)
    c = ctx()
    a_p, a_m = osc_plus(cfg, 1), osc_minus(cfg, 1)
    rel = sub(compose(a_m, a_p), scale(Q, compose(a_p, a_m)))
    assert rel.column((3, 0), c) == {(3, 0): ONE}


def test_diag_exp_examples():
    cfg = ModeConfig(2, 6)
    c = ctx()
    # q^(-A0/2 + 1/4) on mode 1: slopes in t-units a=(-2, 0), offset 1
    d = diag_exp(cfg, (-2, 0), 1)
    assert d.column((3, 2), c) == {(3, 2): t_power(-5)}
    d2 = diag_exp(cfg, (4, 0), 0)
    assert d2.column((2, 0), c) == {(2, 0): Q * Q}
    # [A0, A+] = A+ via the diagonal occupation operator
    a0 = diag_poly(cfg, lambda s: scalar.from_int(s[0]))
    ap = osc_plus(cfg, 1)
    out = equal_on_interior(commutator(a0, ap), ap)
    assert out.passed


def test_diag_poly_number_operator():
    cfg = ModeConfig(2, 6)
    c = ctx()
    n1 = diag_poly(cfg, lambda s: qnum(s[0]))
    assert n1.column((4, 0), c) == {(4, 0): qnum(4)}
    prod = compose(osc_plus(cfg, 1), osc_minus(cfg, 1))
    out = equal_on_interior(prod, n1, margin=0)
    assert out.passed and out.columns_compared == cfg.dim - 0


def test_compose_add_scale():
    cfg = ModeConfig(1, 5)
    c = ctx()
    ap, am = osc_plus(cfg, 1), osc_minus(cfg, 1)
    n = compose(ap, am)
    for k in range(1, 5):
        assert n.column((k,), c) == {(k,): qnum(k)}
    assert add(n, scale(-1, n)).column((2,), c) == {}
    with pytest.raises(ShapeError):
        add(n, osc_plus(ModeConfig(2, 5), 1))


def test_compose_taints_at_cutoff():
    cfg = ModeConfig(1, 4)
    c = ctx()
    am_ap = compose(osc_minus(cfg, 1), osc_plus(cfg, 1))
    assert am_ap.tainted((4,), c)
    assert not am_ap.tainted((3,), c)
    # the truncated column is empty but corrupt, hence excluded by checks
    assert am_ap.column((4,), c) == {}


def test_commutator_examples():
    cfg = ModeConfig(1, 6)
    c = ctx()
    ap, am = osc_plus(cfg, 1), osc_minus(cfg, 1)
    comm = commutator(am, ap)
    assert comm.column((2,), c) == {(2,): Q * Q}
    x = add(ap, am)
    qc = q_commutator(x, x, Fraction(1, 2))
    expect = scale(q_power(Fraction(1, 2)) - q_power(Fraction(-1, 2)), compose(x, x))
    assert equal_on_interior(qc, expect, margin="auto").passed
    ac = anticommutator(ap, am)
    assert ac.column((1,), c) == {(1,): qnum(1) + qnum(2)}


def test_q_commutator_exponent_validation():
    cfg = ModeConfig(1, 3)
    ap = osc_plus(cfg, 1)
    with pytest.raises(ValueError):
        q_commutator(ap, ap, Fraction(1, 3))


# ---------------------------------------------------------------------------
# Interior equality
# ---------------------------------------------------------------------------


def test_equal_on_interior_pass_fail_inconclusive():
    cfg = ModeConfig(1, 4)
    n_op = compose(osc_plus(cfg, 1), osc_minus(cfg, 1))
    n_diag = diag_poly(cfg, lambda s: qnum(s[0]))
    assert equal_on_interior(n_op, n_diag, margin=0).passed

    out = equal_on_interior(identity(cfg), zero(cfg), margin=0)
    assert out.status == "fail"
    state, target, lhs, rhs = out.witness
    assert state == (0,) and target == (0,)
    assert lhs == ONE and rhs == scalar.ZERO

    cfg1 = ModeConfig(1, 1)
    out = equal_on_interior(identity(cfg1), identity(cfg1), margin=2)
    assert out.status == "inconclusive"
    assert out.columns_compared == 0


def test_margin_auto_uses_max_raise():
    cfg = ModeConfig(2, 5)
    ap2 = compose(osc_plus(cfg, 1), osc_plus(cfg, 1))
    assert ap2.max_raise == (2, 0)
    out = equal_on_interior(ap2, ap2, margin="auto")
    assert out.margin == (2, 0)
    assert out.columns_compared == 4 * 6


def test_equal_on_interior_symmetric_reflexive():
    cfg = ModeConfig(1, 5)
    a = compose(osc_plus(cfg, 1), osc_minus(cfg, 1))
    b = diag_poly(cfg, lambda s: qnum(s[0]))
    assert equal_on_interior(a, b).status == equal_on_interior(b, a).status
    assert equal_on_interior(a, a).passed


# ---------------------------------------------------------------------------
# Metadata and soundness invariants
# ---------------------------------------------------------------------------


def test_max_raise_soundness_by_scan():
    cfg = ModeConfig(2, 4)
    c = ctx()
    ops = {
        "ap1": osc_plus(cfg, 1),
        "prod": compose(osc_plus(cfg, 1), osc_plus(cfg, 2)),
        "comm": commutator(osc_plus(cfg, 1), osc_minus(cfg, 2)),
    }
    for op in ops.values():
        for s in cfg.states():
            for t in op.column(s, c):
                for k in range(cfg.modes):
                    assert t[k] - s[k] <= op.max_raise[k]


def test_taint_soundness_against_larger_cutoff():
    # untainted columns at cutoff N agree with the same columns at N+2
    N = 4
    for build in (
        lambda cfg: compose(osc_minus(cfg, 1), osc_plus(cfg, 1)),
        lambda cfg: compose(
            compose(osc_plus(cfg, 1), osc_plus(cfg, 1)),
            compose(osc_minus(cfg, 1), osc_minus(cfg, 1)),
        ),
        lambda cfg: commutator(
            compose(osc_plus(cfg, 1), osc_minus(cfg, 2)),
            compose(osc_minus(cfg, 1), osc_plus(cfg, 2)),
        ),
    ):
        small = ModeConfig(2, N)
        big = ModeConfig(2, N + 2)
        op_small, op_big = build(small), build(big)
        cs, cb = ctx(), ctx()
        for s in small.states():
            if op_small.tainted(s, cs):
                continue
            assert op_small.column(s, cs) == op_big.column(s, cb)


def test_operator_ring_laws():
    cfg = ModeConfig(2, 3)
    a = osc_plus(cfg, 1)
    b = osc_minus(cfg, 2)
    c_ = compose(osc_plus(cfg, 2), osc_minus(cfg, 1))
    assoc_l = compose(compose(a, b), c_)
    assoc_r = compose(a, compose(b, c_))
    assert equal_on_interior(assoc_l, assoc_r, margin=0).passed

    bilin_l = commutator(add(a, b), c_)
    bilin_r = add(commutator(a, c_), commutator(b, c_))
    assert equal_on_interior(bilin_l, bilin_r, margin="auto").passed

    jacobi = add(
        commutator(a, commutator(b, c_)),
        add(commutator(b, commutator(c_, a)), commutator(c_, commutator(a, b))),
    )
    assert equal_on_interior(jacobi, zero(cfg), margin="auto").passed


def test_diag_exps_commute_exactly():
    cfg = ModeConfig(2, 4)
    d1 = diag_exp(cfg, (3, -1), 2)
    d2 = diag_exp(cfg, (-2, 5), 0)
    out = equal_on_interior(commutator(d1, d2), zero(cfg), margin=0)
    assert out.passed and out.columns_compared == cfg.dim


def test_degree_meta_is_conservative():
    cfg = ModeConfig(1, 5)
    c = ctx()
    am = osc_minus(cfg, 1)
    d = diag_exp(cfg, (-4,), 2)
    op = compose(d, am)
    m = op.meta
    for s in cfg.states():
        for v in op.column(s, c).values():
            nlo, nhi = v.num_interval()
            assert m.nlo <= nlo and nhi <= m.nhi


# ---------------------------------------------------------------------------
# Sample ring
# ---------------------------------------------------------------------------


def test_sample_ring_matches_exact_evaluation():
    cfg = ModeConfig(2, 4)
    t0 = GaussianRational(Fraction(2, 3))
    cs = EvalContext(SampleRing(t0))
    ce = ctx()
    op = commutator(
        compose(osc_plus(cfg, 1), osc_minus(cfg, 2)),
        compose(osc_minus(cfg, 1), osc_plus(cfg, 2)),
    )
    for s in [(0, 0), (1, 2), (3, 1)]:
        exact_col = op.column(s, ce)
        sampled = op.column(s, cs)
        for u, v in exact_col.items():
            assert sampled[u] == v.eval_at(t0)
        for u, v in sampled.items():
            if u not in exact_col:
                assert not v  # kept explicit zero


def test_sample_ring_keeps_structural_zeros_for_taint():
    cfg = ModeConfig(1, 3)
    t0 = GaussianRational(Fraction(3, 2))
    cs = EvalContext(SampleRing(t0))
    am_ap = compose(osc_minus(cfg, 1), osc_plus(cfg, 1))
    assert am_ap.tainted((3,), cs)
    assert not am_ap.tainted((1,), cs)


def test_gauge_conjugation_preserves_verdicts():
    plain = ModeConfig(1, 6)
    gauged = ModeConfig(1, 6, gauge_seed=11)
    for cfg in (plain, gauged):
        ap, am = osc_plus(cfg, 1), osc_minus(cfg, 1)
        lhs = sub(compose(am, ap), scale(Q, compose(ap, am)))
        assert equal_on_interior(lhs, identity(cfg)).passed
        bad = equal_on_interior(lhs, scale(2, identity(cfg)))
        assert bad.status == "fail"


def test_op_pow():
    cfg = ModeConfig(1, 5)
    c = ctx()
    ap = osc_plus(cfg, 1)
    assert op_pow(ap, 0).column((2,), c) == {(2,): ONE}
    assert op_pow(ap, 2).column((1,), c) == {(3,): ONE}
