"""Constructors for every realized generator and composite operator.

All constructors return :class:`~qfock.fock.SparseOperator`s on a
caller-supplied :class:`~qfock.fock.ModeConfig` and are built exclusively
from the oscillator/diagonal primitives and ring operations of
:mod:`qfock.fock`, so taint tracking and degree metadata propagate
automatically.  Mode indices are 1-based; "pair p" means modes
(2p-1, 2p).

Every operator is addressable by a stable string name through
:class:`Generators` (the table consumed by the expression language); the
name table is documented in the README and frozen per release.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple

from . import scalar as sc
from .fock import (
    ModeConfig,
    SparseOperator,
    add,
    anticommutator,
    commutator,
    compose,
    diag_exp,
    diag_poly,
    diag_from_spectrum,
    identity,
    op_pow,
    osc_minus,
    osc_plus,
    q_commutator,
    scale,
    sub,
    zero,
)
from .scalar import IMAG, Scalar, from_rational, q_power, qnum, t_power

ONE = sc.ONE
Q = q_power(1)
QI = q_power(-1)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

#: [2]_{q^(1/2)} = q^(1/2) + q^(-1/2)
BRACKET2_HALF = q_power(HALF) + q_power(-HALF)
_INV_BRACKET2 = BRACKET2_HALF.inv()

#: q - q^(-1), the denominator of the symmetric q-number
_Q_MINUS_QI = Q - QI
_INV_Q_MINUS_QI = _Q_MINUS_QI.inv()

_QBR_CACHE: dict = {}


def qbracket_value(x: Fraction) -> Scalar:
    """[x]_q = (q^x - q^(-x))/(q - q^(-1)) for quarter-integer x."""
    e = 4 * Fraction(x)
    if e.denominator != 1:
        raise ValueError(f"q-bracket argument must be quarter-integer, got {x}")
    e = int(e)
    v = _QBR_CACHE.get(e)
    if v is None:
        v = (t_power(e) - t_power(-e)) * _INV_Q_MINUS_QI
        _QBR_CACHE[e] = v
    return v


def _slopes(config: ModeConfig, **mode_slopes) -> tuple:
    """t-exponent slope tuple with named nonzero modes (1-based)."""
    a = [0] * config.modes
    for i, v in mode_slopes.items():
        a[int(i) - 1] = v
    return tuple(a)


def _diag_t(config: ModeConfig, slopes: dict, const: int) -> SparseOperator:
    a = [0] * config.modes
    for i, v in slopes.items():
        config.check_mode(i)
        a[i - 1] = v
    return diag_exp(config, tuple(a), const)


def number_op(config: ModeConfig, i: int) -> SparseOperator:
    """N_i = A_i^+ A_i^-, realized diagonally as (n_i)_q."""
    config.check_mode(i)
    return diag_poly(config, lambda s: qnum(s[i - 1]))


def occupation_op(config: ModeConfig, i: int) -> SparseOperator:
    """A_i^0, the occupation-number diagonal."""
    config.check_mode(i)
    return diag_poly(config, lambda s: sc.from_int(s[i - 1]))


# ---------------------------------------------------------------------------
# su(1,1)-type triples
# ---------------------------------------------------------------------------


@dataclass
class Su11Triple:
    """A realized triple (j0, j+, j-) plus the exact diagonal spectrum of j0.

    ``j0_value`` maps a basis state to the rational eigenvalue of j0; it is
    what allows diagonal exponentials q^(c*j0 + d) to be realized exactly
    (construction fails when the requested t-exponent is not integral).
    ``modes`` lists the 1-based modes the triple acts on.
    """

    j0: SparseOperator
    jplus: SparseOperator
    jminus: SparseOperator
    j0_value: Callable[[tuple], Fraction]
    modes: Tuple[int, ...]

    def q_j0(self, coeff, shift=0) -> SparseOperator:
        """Diagonal q^(coeff*j0 + shift)."""
        return diag_from_spectrum(self.j0.config, coeff, self.j0_value, shift)


def schwinger_su11(config: ModeConfig, p: int = 1) -> Su11Triple:
    """Two-oscillator realization on pair p:

    j0 = (A1^0 - A2^0)/2,   j+- = q^(-(A1^0 + A2^0 - 1)/4) A1^+- A2^-+
    """
    i, j = 2 * p - 1, 2 * p
    config.check_mode(j)

    def val(s):
        return Fraction(s[i - 1] - s[j - 1], 2)

    j0 = diag_poly(config, lambda s: from_rational(val(s)))
    pref = _diag_t(config, {i: -1, j: -1}, 1)
    jp = compose(pref, compose(osc_plus(config, i), osc_minus(config, j)))
    jm = compose(pref, compose(osc_minus(config, i), osc_plus(config, j)))
    return Su11Triple(j0, jp, jm, val, (i, j))


def metaplectic(config: ModeConfig, i: int = 1) -> Su11Triple:
    """One-oscillator realization: j0 = (A^0 + 1/2)/2, j+- = (A^+-)^2 / [2]_{q^(1/2)}."""
    config.check_mode(i)

    def val(s):
        return Fraction(2 * s[i - 1] + 1, 4)

    j0 = diag_poly(config, lambda s: from_rational(val(s)))
    jp = scale(_INV_BRACKET2, op_pow(osc_plus(config, i), 2))
    jm = scale(_INV_BRACKET2, op_pow(osc_minus(config, i), 2))
    return Su11Triple(j0, jp, jm, val, (i,))


def _coproduct(t1: Su11Triple, t2: Su11Triple) -> Su11Triple:
    """Combine two commuting triples: j0 adds, j+- -> j+-(1) q^(2 j0(2)) + j+-(2).

    The same twist applies to both raising and lowering generators.
    """
    q2 = t2.q_j0(2)

    def val(s):
        return t1.j0_value(s) + t2.j0_value(s)

    j0 = add(t1.j0, t2.j0)
    jp = add(compose(t1.jplus, q2), t2.jplus)
    jm = add(compose(t1.jminus, q2), t2.jminus)
    return Su11Triple(j0, jp, jm, val, t1.modes + t2.modes)


def su11_pair(config: ModeConfig, p: int) -> Su11Triple:
    """Pairwise sum of two one-oscillator realizations on modes (2p-1, 2p):

    j0 = (A1^0 + A2^0 + 1)/2,
    j+- = (q^(A2^0 + 1/2) (A1^+-)^2 + (A2^+-)^2) / [2]_{q^(1/2)}
    """
    i, j = 2 * p - 1, 2 * p
    config.check_mode(j)
    return _coproduct(metaplectic(config, i), metaplectic(config, j))


def su11_total(config: ModeConfig) -> Su11Triple:
    """Four-oscillator sum: combine the two pair triples once more."""
    if config.modes < 4:
        raise ValueError("the total triple needs a 4-mode configuration")
    return _coproduct(su11_pair(config, 1), su11_pair(config, 2))


def casimir_su11(triple: Su11Triple) -> SparseOperator:
    """C = J+ J- q^(-2J0+1) - q (q^(2J0-1) + q^(-2J0+1))/(q^2-1)^2
        + (q^2+1)/(q^2-1)^2.
    """
    cfg = triple.j0.config
    qq = (Q * Q - ONE) ** 2
    term1 = compose(compose(triple.jplus, triple.jminus), triple.q_j0(-2, 1))
    term2 = scale(-(Q * qq.inv()), add(triple.q_j0(2, -1), triple.q_j0(-2, 1)))
    term3 = scale((Q * Q + ONE) * qq.inv(), identity(cfg))
    return add(add(term1, term2), term3)


def tilde_su11(triple: Su11Triple) -> Su11Triple:
    """Twist to the symmetric presentation: j~+ = j+ q^(-j0), j~- = q^(-j0) j-."""
    qm = triple.q_j0(-1)
    return Su11Triple(
        triple.j0,
        compose(triple.jplus, qm),
        compose(qm, triple.jminus),
        triple.j0_value,
        triple.modes,
    )


# ---------------------------------------------------------------------------
# Cartesian presentation of the rank-1 orthogonal deformation
# ---------------------------------------------------------------------------


def cartesian_o3(config: ModeConfig, p: int = 1):
    """Equitable generators built from the two-oscillator triple:

    j1 = i g {q^(j0/2), j+ + j-},  j2 = g {q^(-j0/2), j+ - j-},
    j3 = [j1, j2]_q,  with g = 1/((q^(1/4)+q^(-1/4))(q^(1/2)+q^(-1/2))).
    """
    tr = schwinger_su11(config, p)
    g = ((t_power(1) + t_power(-1)) * BRACKET2_HALF).inv()
    qh = tr.q_j0(HALF)
    qhm = tr.q_j0(-HALF)
    j1 = scale(IMAG * g, anticommutator(qh, add(tr.jplus, tr.jminus)))
    j2 = scale(g, anticommutator(qhm, sub(tr.jplus, tr.jminus)))
    j3 = q_commutator(j1, j2, HALF)
    return j1, j2, j3


def cartesian_o3_realized(config: ModeConfig, p: int = 1):
    """The same two generators written directly in oscillator form:

    j1 = (i q^(1/4)/[2]_{q^(1/2)}) q^(-A2^0/2) (q^(1/4) A1^- A2^+ + q^(-1/4) A1^+ A2^-)
    j2 = (q^(1/4)/[2]_{q^(1/2)})   q^(-A1^0/2) (q^(1/4) A1^+ A2^- - q^(-1/4) A1^- A2^+)
    """
    i, j = 2 * p - 1, 2 * p
    config.check_mode(j)
    up_down = compose(osc_plus(config, i), osc_minus(config, j))
    down_up = compose(osc_minus(config, i), osc_plus(config, j))
    coeff = t_power(1) * _INV_BRACKET2
    j1 = scale(
        IMAG * coeff,
        compose(
            _diag_t(config, {j: -2}, 0),
            add(scale(t_power(1), down_up), scale(t_power(-1), up_down)),
        ),
    )
    j2 = scale(
        coeff,
        compose(
            _diag_t(config, {i: -2}, 0),
            sub(scale(t_power(1), up_down), scale(t_power(-1), down_up)),
        ),
    )
    return j1, j2


# ---------------------------------------------------------------------------
# Rotation generators of the q^(1/2)-deformed orthogonal algebra
# ---------------------------------------------------------------------------


def soq_L(config: ModeConfig, i: int) -> SparseOperator:
    """Adjacent rotation generator on modes (i, i+1):

    q^(-A_i^0/2 + 1/4) (q^(1/4) A_i^+ A_{i+1}^- - q^(-1/4) A_i^- A_{i+1}^+)
    """
    config.check_mode(i + 1)
    pref = _diag_t(config, {i: -2}, 1)
    body = sub(
        scale(t_power(1), compose(osc_plus(config, i), osc_minus(config, i + 1))),
        scale(t_power(-1), compose(osc_minus(config, i), osc_plus(config, i + 1))),
    )
    return compose(pref, body)


def soq4_composites(config: ModeConfig):
    """Non-adjacent composites at deformation q^(1/2) (q-commutator exponent 1/4):

    L13^+- = [L12, L23]_{+-},  L24^+- = [L23, L34]_{+-},
    L14^+- = [L13^+-, L34]_{+-}.
    """
    l12, l23, l34 = soq_L(config, 1), soq_L(config, 2), soq_L(config, 3)
    l13p = q_commutator(l12, l23, QUARTER)
    l13m = q_commutator(l12, l23, -QUARTER)
    l24p = q_commutator(l23, l34, QUARTER)
    l24m = q_commutator(l23, l34, -QUARTER)
    l14p = q_commutator(l13p, l34, QUARTER)
    l14m = q_commutator(l13m, l34, -QUARTER)
    return l13p, l13m, l24p, l24m, l14p, l14m


def casimirs_soq4(config: ModeConfig):
    """The two independent Casimir elements at deformation q^(1/2):

    C4  = q^(-1) L12^2 + L23^2 + q L34^2
          + q^(-1/2) L13^+ L13^- + q^(1/2) L24^+ L24^- + L14^+ L14^-
    C4' = q^(-1/2) L12 L34 - L13^+ L24^+ + q^(1/2) L23 L14^+
    """
    l12, l23, l34 = soq_L(config, 1), soq_L(config, 2), soq_L(config, 3)
    l13p, l13m, l24p, l24m, l14p, l14m = soq4_composites(config)
    qh = q_power(HALF)
    qhm = q_power(-HALF)
    c4 = add(
        add(
            add(scale(QI, op_pow(l12, 2)), op_pow(l23, 2)),
            add(scale(Q, op_pow(l34, 2)), scale(qhm, compose(l13p, l13m))),
        ),
        add(scale(qh, compose(l24p, l24m)), compose(l14p, l14m)),
    )
    c4prime = add(
        sub(scale(qhm, compose(l12, l34)), compose(l13p, l24p)),
        scale(qh, compose(l23, l14p)),
    )
    return c4, c4prime


# ---------------------------------------------------------------------------
# The commutant generators
# ---------------------------------------------------------------------------


@dataclass
class QHiggsQuad:
    mplus: SparseOperator
    mminus: SparseOperator
    l: SparseOperator
    h: SparseOperator


def _pair_factor(config: ModeConfig, a: int, b: int, sign: str) -> SparseOperator:
    """q^(A_b^0 + 1/2) (A_a^s)^2 + (A_b^s)^2 for s in {+, -}."""
    osc = osc_plus if sign == "+" else osc_minus
    return add(
        compose(_diag_t(config, {b: 4}, 2), op_pow(osc(config, a), 2)),
        op_pow(osc(config, b), 2),
    )


def qhiggs(config: ModeConfig) -> QHiggsQuad:
    """The three commutant generators plus the central energy:

    M+ = (q^(A2^0+1/2)(A1^+)^2 + (A2^+)^2)(q^(A4^0+1/2)(A3^-)^2 + (A4^-)^2)
    M- = the mirrored product, L = (A1^0+A2^0) - (A3^0+A4^0),
    H  = sum_i (A_i^0 + 1/2).
    """
    if config.modes < 4:
        raise ValueError("the commutant generators need a 4-mode configuration")
    mplus = compose(_pair_factor(config, 1, 2, "+"), _pair_factor(config, 3, 4, "-"))
    mminus = compose(_pair_factor(config, 1, 2, "-"), _pair_factor(config, 3, 4, "+"))
    l = diag_poly(
        config, lambda s: sc.from_int((s[0] + s[1]) - (s[2] + s[3]))
    )
    h = diag_poly(config, lambda s: from_rational(Fraction(sum(s[:4]) * 2 + 4, 2)))
    return QHiggsQuad(mplus, mminus, l, h)


def qhiggs_rhs(config: ModeConfig) -> SparseOperator:
    """The closed form of [M+, M-] in terms of the central elements:

    (1+q)/(q(1-q)^3) q^H ((q+q^(-1))(q^L - q^(-L))
                          - 2 (q^(H/2)+q^(-H/2))(q^(L/2)-q^(-L/2)))
    + (1+q)/(q^2(1-q)) q^H ((q^(-H/2) L12^2 + q^(H/2) L34^2) q^(L/2)
                            - (q^(H/2) L12^2 + q^(-H/2) L34^2) q^(-L/2))
    """
    if config.modes < 4:
        raise ValueError("the commutant relation needs a 4-mode configuration")
    E = lambda a, c: diag_exp(config, _pad4(config, a), c)
    qH = E((4, 4, 4, 4), 8)
    qL, qLi = E((4, 4, -4, -4), 0), E((-4, -4, 4, 4), 0)
    qH2, qH2i = E((2, 2, 2, 2), 4), E((-2, -2, -2, -2), -4)
    qL2, qL2i = E((2, 2, -2, -2), 0), E((-2, -2, 2, 2), 0)
    l12sq = op_pow(soq_L(config, 1), 2)
    l34sq = op_pow(soq_L(config, 3), 2)

    s1 = (ONE + Q) * (Q * (ONE - Q) ** 3).inv()
    s2 = (ONE + Q) * (Q * Q * (ONE - Q)).inv()
    inner1 = sub(
        scale(Q + QI, sub(qL, qLi)),
        scale(sc.from_int(2), compose(add(qH2, qH2i), sub(qL2, qL2i))),
    )
    term1 = scale(s1, compose(qH, inner1))
    inner2 = sub(
        compose(add(compose(qH2i, l12sq), compose(qH2, l34sq)), qL2),
        compose(add(compose(qH2, l12sq), compose(qH2i, l34sq)), qL2i),
    )
    term2 = scale(s2, compose(qH, inner2))
    return add(term1, term2)


def _pad4(config: ModeConfig, a4) -> tuple:
    return tuple(a4) + (0,) * (config.modes - 4)


def t_pm(config: ModeConfig, alpha) -> tuple:
    """The on-shell commutant family on the first pair:

    T^+- = q^(alpha (A1^0 + A2^0)) (q^(A2^0 + 1/2) (A1^+-)^2 + (A2^+-)^2)

    alpha must be a quarter-integer so that the prefactor stays in the
    t-ring.
    """
    a4 = 4 * Fraction(alpha)
    if a4.denominator != 1:
        raise ValueError(f"alpha must be a quarter-integer, got {alpha}")
    slope = int(a4)
    pref = _diag_t(config, {1: slope, 2: slope}, 0)
    tplus = compose(pref, _pair_factor(config, 1, 2, "+"))
    tminus = compose(pref, _pair_factor(config, 1, 2, "-"))
    return tplus, tminus


def u4_bilinear(config: ModeConfig, i: int, j: int) -> SparseOperator:
    """E_ij = A_i^+ A_j^-."""
    return compose(osc_plus(config, i), osc_minus(config, j))


def proof_lemmas(config: ModeConfig):
    """The intermediate identities behind the commutator computation, as
    (lhs, rhs) operator pairs to be compared on the interior:

    1. [b1+ b2-, b1- b2+] = [b1+, b1-] b2+ b2- - b1+ b1- [b2+, b2-]
       for the commuting pair factors b,
    2. the expansion of L12^2 into number operators,
    3. [(A1^+)^2, (A1^-)^2] = -(1+q) q^(A1^0) ((q+q^(-1)) N1 + 1),
    4. q (A1^+)^2 (A1^-)^2 = N1^2 - N1.
    """
    if config.modes < 4:
        raise ValueError("the proof identities need a 4-mode configuration")
    b1p = _pair_factor(config, 1, 2, "+")
    b1m = _pair_factor(config, 1, 2, "-")
    b2p = _pair_factor(config, 3, 4, "+")
    b2m = _pair_factor(config, 3, 4, "-")
    lhs1 = commutator(compose(b1p, b2m), compose(b1m, b2p))
    rhs1 = sub(
        compose(commutator(b1p, b1m), compose(b2p, b2m)),
        compose(compose(b1p, b1m), commutator(b2p, b2m)),
    )

    n1 = number_op(config, 1)
    n2 = number_op(config, 2)
    ap1sq = op_pow(osc_plus(config, 1), 2)
    am1sq = op_pow(osc_minus(config, 1), 2)
    lhs2 = op_pow(soq_L(config, 1), 2)
    qh = q_power(HALF)
    qhm = q_power(-HALF)
    body = add(
        sub(
            add(
                scale(Q, compose(ap1sq, op_pow(osc_minus(config, 2), 2))),
                scale(QI, compose(am1sq, op_pow(osc_plus(config, 2), 2))),
            ),
            add(scale(qh, n1), scale(qhm, n2)),
        ),
        scale(-(Q * BRACKET2_HALF), compose(n1, n2)),
    )
    rhs2 = compose(_diag_t(config, {1: -4}, 2), body)

    lhs3 = commutator(ap1sq, am1sq)
    rhs3 = scale(
        -(ONE + Q),
        compose(
            _diag_t(config, {1: 4}, 0),
            add(scale(Q + QI, n1), identity(config)),
        ),
    )

    lhs4 = scale(Q, compose(ap1sq, am1sq))
    rhs4 = sub(op_pow(n1, 2), n1)
    return [(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3), (lhs4, rhs4)]


# ---------------------------------------------------------------------------
# Askey-Wilson embedding
# ---------------------------------------------------------------------------


@dataclass
class AwTriple:
    """Realized Askey-Wilson generators, the closed form of K3, and the
    structure parameters (one true scalar r plus seven central operators)."""

    k1: SparseOperator
    k2: SparseOperator
    k3: SparseOperator
    k3_closed: SparseOperator
    r: Scalar
    xi: tuple


def aw_K(t1: Su11Triple, t2: Su11Triple) -> AwTriple:
    """Embed the Askey-Wilson generators into the product of two commuting
    realized triples:

    K1 = (1 - q^J0 (x) q^(-J0)) / (4(1-q))
    K2 = Delta(C)/2, expanded over the two legs,
    K3 = [K1, K2], with closed form
         (1+q^(-1))/8 (J+ (x) J- - J- (x) J+)(q^(-J0) (x) q^(-J0)).
    """
    if set(t1.modes) & set(t2.modes):
        raise ValueError("the two triples must act on disjoint mode pairs")
    cfg = t1.j0.config
    c1 = casimir_su11(t1)
    c2 = casimir_su11(t2)

    k1 = scale(
        (sc.from_int(4) * (ONE - Q)).inv(),
        sub(identity(cfg), compose(t1.q_j0(1), t2.q_j0(-1))),
    )

    qq = (Q * Q - ONE) ** 2
    const = (Q * Q + ONE) * qq.inv()
    k2 = scale(
        from_rational(HALF),
        add(
            add(
                add(compose(c1, t2.q_j0(2)), compose(t1.q_j0(-2), c2)),
                add(
                    compose(compose(t1.jplus, t1.q_j0(-2, -1)), t2.jminus),
                    compose(compose(t1.jminus, t1.q_j0(-2, 1)), t2.jplus),
                ),
            ),
            scale(
                const,
                add(
                    sub(
                        compose(t1.q_j0(-2), t2.q_j0(2)),
                        add(t2.q_j0(2), t1.q_j0(-2)),
                    ),
                    identity(cfg),
                ),
            ),
        ),
    )
    k3 = commutator(k1, k2)
    k3_closed = scale(
        (ONE + QI) * from_rational(Fraction(1, 8)),
        compose(
            sub(compose(t1.jplus, t2.jminus), compose(t1.jminus, t2.jplus)),
            compose(t1.q_j0(-1), t2.q_j0(-1)),
        ),
    )
    r, xi = aw_params(t1, t2, c1=c1, c2=c2)
    return AwTriple(k1, k2, k3, k3_closed, r, xi)


def aw_params(t1: Su11Triple, t2: Su11Triple, c1=None, c2=None):
    """Structure parameters of the embedded Askey-Wilson algebra:

    r = -(q - q^(-1))^2,
    xi1 = (1 + q^(-2))/2, xi2 = (1+q)^2 (1-q)/(4 q^2), xi3 = 4(q-1) xi7,
    xi4 = 0,
    xi5 = -((1+q)(1+q^2)/(16 q^3)) (C1 - C2) [J0^(12)]_q,
    xi6 = -(1+q)^2/(16 q^2),
    xi7 = ((1+q)^2/(32 q^2)) (C1 q^J0 + C2 q^(-J0) - (1+q^(-2)) [J0/2]_q^2),

    with J0 the total diagonal of the combined triple.  Scalar parameters
    are returned as multiples of the identity.
    """
    cfg = t1.j0.config
    if c1 is None:
        c1 = casimir_su11(t1)
    if c2 is None:
        c2 = casimir_su11(t2)

    def s12(st):
        return t1.j0_value(st) + t2.j0_value(st)

    r = -(_Q_MINUS_QI**2)
    xi1 = scale((ONE + q_power(-2)) * from_rational(HALF), identity(cfg))
    xi2 = scale(
        (ONE + Q) ** 2 * (ONE - Q) * (sc.from_int(4) * Q * Q).inv(), identity(cfg)
    )
    xi6 = scale(
        -((ONE + Q) ** 2) * (sc.from_int(16) * Q * Q).inv(), identity(cfg)
    )
    bracket_total = diag_poly(cfg, lambda st: qbracket_value(s12(st)))
    xi5 = scale(
        -((ONE + Q) * (ONE + Q * Q) * (sc.from_int(16) * Q**3).inv()),
        compose(sub(c1, c2), bracket_total),
    )
    half_bracket_sq = diag_poly(
        cfg, lambda st: qbracket_value(s12(st) / 2) ** 2
    )
    q_s12 = diag_from_spectrum(cfg, 1, s12)
    q_s12m = diag_from_spectrum(cfg, -1, s12)
    xi7 = scale(
        (ONE + Q) ** 2 * (sc.from_int(32) * Q * Q).inv(),
        sub(
            add(compose(c1, q_s12), compose(c2, q_s12m)),
            scale(ONE + q_power(-2), half_bracket_sq),
        ),
    )
    xi3 = scale(sc.from_int(4) * (Q - ONE), xi7)
    xi4 = zero(cfg)
    return r, (xi1, xi2, xi3, xi4, xi5, xi6, xi7)


def script_K(config: ModeConfig):
    """The oscillator form of the embedded Askey-Wilson generators:

    K1 = (1 - q^(L/2)) / (4(1-q))
    K2 = ((C1 q^(H/2) + C2 q^(-H/2)) q^(-L/2)
          + (1+q^(-2)) q^(-L/2) [(L+H)/4]_q [(L-H)/4]_q
          + (q/(1+q)^2)(q^(-1) M+ + q M-) q^(-(H+L)/2)) / 2
    K3 = (M+ - M-) q^(-H/2) / (8(1+q))
    """
    if config.modes < 4:
        raise ValueError("the oscillator form needs a 4-mode configuration")
    quad = qhiggs(config)
    pair1 = su11_pair(config, 1)
    pair2 = su11_pair(config, 2)
    c1 = casimir_su11(pair1)
    c2 = casimir_su11(pair2)
    E = lambda a, c: diag_exp(config, _pad4(config, a), c)
    qL2 = E((2, 2, -2, -2), 0)
    qL2i = E((-2, -2, 2, 2), 0)
    qH2 = E((2, 2, 2, 2), 4)
    qH2i = E((-2, -2, -2, -2), -4)
    qHL2i = E((-4, -4, 0, 0), -4)  # q^(-(H+L)/2): exponents -(2n1+2n2+... )

    k1 = scale(
        (sc.from_int(4) * (ONE - Q)).inv(), sub(identity(config), qL2)
    )

    lp = diag_poly(
        config,
        lambda s: qbracket_value(Fraction(s[0] + s[1] + 1, 2)),
    )
    lm = diag_poly(
        config,
        lambda s: qbracket_value(Fraction(-(s[2] + s[3] + 1), 2)),
    )
    k2 = scale(
        from_rational(HALF),
        add(
            add(
                compose(add(compose(c1, qH2), compose(c2, qH2i)), qL2i),
                scale(ONE + q_power(-2), compose(qL2i, compose(lp, lm))),
            ),
            scale(
                Q * ((ONE + Q) ** 2).inv(),
                compose(
                    add(scale(QI, quad.mplus), scale(Q, quad.mminus)), qHL2i
                ),
            ),
        ),
    )
    k3 = scale(
        (sc.from_int(8) * (ONE + Q)).inv(),
        compose(sub(quad.mplus, quad.mminus), qH2i),
    )
    return k1, k2, k3


# ---------------------------------------------------------------------------
# Name table
# ---------------------------------------------------------------------------


class Generators:
    """Name-addressable, cached access to every realized operator.

    The table is frozen; see the README for the full list.  Parameterized
    names take positional integer (or quarter-rational) arguments, e.g.
    ``L(1,2)``, ``Tplus(1/4)``, ``J0pair(2)``; the diagonal exponential
    takes keywords: ``E(a=(4,0,0,0), c=2)``.
    """

    def __init__(self, config: ModeConfig):
        self.config = config
        self._cache: dict = {}

    def get(self, name: str, args=None) -> SparseOperator:
        key = (name, args)
        op = self._cache.get(key)
        if op is None:
            op = self._build(name, args)
            self._cache[key] = op
        return op

    # -- internal shared pieces -------------------------------------------

    def _memo(self, key, builder):
        v = self._cache.get(key)
        if v is None:
            v = builder()
            self._cache[key] = v
        return v

    def _quad(self) -> QHiggsQuad:
        return self._memo(("_quad",), lambda: qhiggs(self.config))

    def _met(self, i: int) -> Su11Triple:
        return self._memo(("_met", i), lambda: metaplectic(self.config, i))

    def _pair(self, p: int) -> Su11Triple:
        return self._memo(("_pair", p), lambda: su11_pair(self.config, p))

    def _total(self) -> Su11Triple:
        return self._memo(("_total",), lambda: su11_total(self.config))

    def _schwinger(self, p: int) -> Su11Triple:
        return self._memo(("_schw", p), lambda: schwinger_su11(self.config, p))

    def _cartesian(self, p: int):
        return self._memo(("_cart", p), lambda: cartesian_o3(self.config, p))

    def _composites(self):
        return self._memo(("_comp",), lambda: soq4_composites(self.config))

    def _casimirs4(self):
        return self._memo(("_cas4",), lambda: casimirs_soq4(self.config))

    def _aw(self) -> AwTriple:
        return self._memo(
            ("_aw",), lambda: aw_K(self._pair(1), self._pair(2))
        )

    def _script(self):
        return self._memo(("_script",), lambda: script_K(self.config))

    # -- dispatch -----------------------------------------------------------

    def _build(self, name: str, args) -> SparseOperator:
        cfg = self.config

        def need(n):
            if args is None or len(args) != n:
                raise ValueError(f"{name} takes {n} argument(s)")
            return args if n > 1 else args[0]

        def intarg(x):
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{name} needs integer arguments")
                return int(x)
            return int(x)

        # oscillator family: A{i}p, A{i}m, A{i}0, N{i}
        if len(name) >= 2 and name[0] == "A" and name[-1] in "pm0":
            mid = name[1:-1]
            if mid.isdigit():
                i = int(mid)
                if name[-1] == "p":
                    return osc_plus(cfg, i)
                if name[-1] == "m":
                    return osc_minus(cfg, i)
                return occupation_op(cfg, i)
        if name[0] == "N" and name[1:].isdigit():
            return number_op(cfg, int(name[1:]))

        if name == "E":
            if not isinstance(args, dict) or set(args) != {"a", "c"}:
                raise ValueError("E takes keywords a=(...) and c=...")
            return diag_exp(cfg, args["a"], args["c"])

        if name == "L":
            if args is None:
                return self._quad().l
            i, j = (intarg(x) for x in need(2))
            if j != i + 1:
                raise ValueError("L(i,j) requires j = i+1")
            return self._memo(("_soqL", i), lambda: soq_L(cfg, i))
        if name == "B":
            i, j = (intarg(x) for x in need(2))
            return u4_bilinear(cfg, i, j)
        if name == "H":
            return self._quad().h
        if name == "Mplus":
            return self._quad().mplus
        if name == "Mminus":
            return self._quad().mminus
        if name == "Mrhs":
            return self._memo(("_mrhs",), lambda: qhiggs_rhs(cfg))
        if name in ("Tplus", "Tminus"):
            alpha = Fraction(need(1))
            pair = self._memo(("_tpm", alpha), lambda: t_pm(cfg, alpha))
            return pair[0] if name == "Tplus" else pair[1]

        if name in ("L13p", "L13m", "L24p", "L24m", "L14p", "L14m"):
            comps = self._composites()
            return comps[("L13p", "L13m", "L24p", "L24m", "L14p", "L14m").index(name)]
        if name == "C4":
            return self._casimirs4()[0]
        if name == "C4prime":
            return self._casimirs4()[1]

        if name in ("J0", "Jp", "Jm", "Cas", "Jt0", "Jtp", "Jtm"):
            i = intarg(need(1))
            tr = self._met(i)
            if name == "Cas":
                return self._memo(("_cas_met", i), lambda: casimir_su11(tr))
            if name.startswith("Jt"):
                tl = self._memo(("_tilde", i), lambda: tilde_su11(tr))
                return {"Jt0": tl.j0, "Jtp": tl.jplus, "Jtm": tl.jminus}[name]
            return {"J0": tr.j0, "Jp": tr.jplus, "Jm": tr.jminus}[name]

        if name in ("sj0", "sjp", "sjm"):
            p = intarg(need(1))
            tr = self._schwinger(p)
            return {"sj0": tr.j0, "sjp": tr.jplus, "sjm": tr.jminus}[name]

        if name in ("cj1", "cj2", "cj3"):
            p = intarg(need(1))
            trio = self._cartesian(p)
            return trio[("cj1", "cj2", "cj3").index(name)]
        if name in ("cj1alt", "cj2alt"):
            p = intarg(need(1))
            duo = self._memo(
                ("_cartalt", p), lambda: cartesian_o3_realized(cfg, p)
            )
            return duo[0] if name == "cj1alt" else duo[1]

        if name in ("J0pair", "Jppair", "Jmpair", "Caspair"):
            p = intarg(need(1))
            tr = self._pair(p)
            if name == "Caspair":
                return self._memo(("_cas_pair", p), lambda: casimir_su11(tr))
            return {"J0pair": tr.j0, "Jppair": tr.jplus, "Jmpair": tr.jminus}[name]

        if name in ("J0tot", "Jptot", "Jmtot", "Castot"):
            tr = self._total()
            if name == "Castot":
                return self._memo(("_cas_tot",), lambda: casimir_su11(tr))
            return {"J0tot": tr.j0, "Jptot": tr.jplus, "Jmtot": tr.jminus}[name]

        if name in ("K1", "K2", "K3", "K3closed"):
            aw = self._aw()
            return {
                "K1": aw.k1,
                "K2": aw.k2,
                "K3": aw.k3,
                "K3closed": aw.k3_closed,
            }[name]
        if name.startswith("xi") and name[2:].isdigit():
            k = int(name[2:])
            if 1 <= k <= 7:
                return self._aw().xi[k - 1]
        if name in ("SK1", "SK2", "SK3"):
            return self._script()[("SK1", "SK2", "SK3").index(name)]

        raise KeyError(f"unknown operator name {name!r}")


#: Names accepted without arguments at any mode count >= their requirement.
PLAIN_NAMES = (
    "L H Mplus Mminus Mrhs L13p L13m L24p L24m L14p L14m C4 C4prime "
    "J0tot Jptot Jmtot Castot K1 K2 K3 K3closed xi1 xi2 xi3 xi4 xi5 xi6 xi7 "
    "SK1 SK2 SK3"
).split()

#: Parameterized name stems.
PARAM_NAMES = (
    "E L B Tplus Tminus J0 Jp Jm Cas Jt0 Jtp Jtm sj0 sjp sjm "
    "cj1 cj2 cj3 cj1alt cj2alt J0pair Jppair Jmpair Caspair"
).split()
