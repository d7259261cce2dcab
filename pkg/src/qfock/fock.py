"""Truncated multi-mode Fock space and the sparse operator algebra over Scalar.

Operators are column-sparse linear maps on occupation states |n1,...,nm> with
each n_i in [0, cutoff].  Columns are computed lazily and cached per
evaluation context, so identity checks only ever materialize the columns
they actually touch.  Truncation is taint-tracked: a column whose exact
(untruncated) image would leave the cutoff is marked tainted at the
oscillator level and the mark propagates through every ring operation;
equality checking consults only untainted interior columns, which makes
every verified identity an exact statement about the infinite
representation.

Two evaluation rings share the same operator graph:

* the exact ring, whose elements are :class:`~qfock.scalar.Scalar`s, and
* sample rings, whose elements are Gaussian rationals obtained by exact
  evaluation at a fixed rational point t0 (used by the rigorous
  sample-count verification mode).

Conservative degree metadata (:class:`~qfock.scalar.DegreeMeta`) and
per-mode worst-case raising degrees are maintained eagerly through all
constructions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from ._backend import rational
from .scalar import (
    DegreeMeta,
    G_ONE,
    G_ZERO,
    GaussianRational,
    Scalar,
    from_rational,
    qnum,
)
from . import scalar as _sc


class ShapeError(ValueError):
    """Operators over different ModeConfigs were combined."""


State = tuple  # occupation tuple (n1, ..., nm)


@dataclass(frozen=True)
class ModeConfig:
    """Truncated Fock space geometry: m modes, occupations 0..cutoff.

    ``gauge_seed`` optionally conjugates the oscillator constructors by a
    seeded random invertible diagonal with rational entries; every operator
    identity verdict is invariant under this, which the test suite uses as
    a robustness check.
    """

    modes: int
    cutoff: int
    gauge_seed: Optional[int] = None

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError("modes must be >= 1")
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.modes

    def states(self) -> Iterable[State]:
        """All basis states in lexicographic occupation order."""
        return itertools.product(range(self.cutoff + 1), repeat=self.modes)

    def check_mode(self, i: int) -> None:
        if not 1 <= i <= self.modes:
            raise IndexError(f"mode index {i} out of range 1..{self.modes}")

    def gauge_value(self, state: State):
        """Diagonal gauge factor d(state) as an exact rational (1 if ungauged)."""
        if self.gauge_seed is None:
            return None
        cache = _GAUGE_CACHE.get((self.gauge_seed, self.modes, self.cutoff))
        if cache is None:
            rng = random.Random(self.gauge_seed)
            cache = {
                s: rational(rng.randint(1, 9), rng.randint(1, 9))
                for s in self.states()
            }
            _GAUGE_CACHE[(self.gauge_seed, self.modes, self.cutoff)] = cache
        return cache[state]


_GAUGE_CACHE: dict = {}


# ---------------------------------------------------------------------------
# Evaluation rings and contexts
# ---------------------------------------------------------------------------


class ExactRing:
    """Entries are Scalars; exact zeros are pruned from columns."""

    drop_zeros = True
    key = "exact"
    zero = _sc.ZERO

    @staticmethod
    def embed(s: Scalar):
        return s


EXACT = ExactRing()


class SampleRing:
    """Entries are Gaussian rationals: exact evaluation at a fixed t0.

    Columns keep explicit zeros so that structural support (and hence the
    tainted set) is identical at every sample point and is a superset of
    the exact ring's support.
    """

    drop_zeros = False
    zero = G_ZERO

    def __init__(self, t0: GaussianRational):
        if not t0:
            raise ValueError("sample point must be nonzero")
        self.t0 = t0
        self.key = ("sample", str(t0))
        self._powers: dict = {0: G_ONE, 1: t0}

    def power(self, e: int) -> GaussianRational:
        v = self._powers.get(e)
        if v is None:
            v = self.t0**e
            self._powers[e] = v
        return v

    def embed(self, s: Scalar) -> GaussianRational:
        return s.eval_with(self.power)


class EvalContext:
    """Holds the per-ring column and taint caches for one evaluation run."""

    __slots__ = ("ring", "columns", "taints")

    def __init__(self, ring=EXACT):
        self.ring = ring
        self.columns: dict = {}
        self.taints: dict = {}


# ---------------------------------------------------------------------------
# Sparse operators
# ---------------------------------------------------------------------------

_OP_SERIAL = itertools.count()


class SparseOperator:
    """Column-sparse operator with lazy, context-cached columns.

    ``column(state, ctx)`` returns the image of |state> as a map
    target-state -> ring element.  ``tainted(state, ctx)`` reports whether
    truncation dropped amplitude anywhere in the construction history of
    that column.  ``max_raise`` bounds the per-mode occupation increase of
    every stored entry; ``meta`` carries conservative t-degree bounds over
    all entries.
    """

    __slots__ = ("config", "max_raise", "meta", "_colfn", "_taintfn", "_uid")

    def __init__(self, config, max_raise, meta, colfn, taintfn=None):
        self.config = config
        self.max_raise = tuple(max_raise)
        self.meta = meta
        self._colfn = colfn
        self._taintfn = taintfn
        self._uid = next(_OP_SERIAL)

    def column(self, state: State, ctx: EvalContext) -> dict:
        key = (self._uid, state)
        col = ctx.columns.get(key)
        if col is None:
            col = self._colfn(state, ctx)
            ctx.columns[key] = col
        return col

    def tainted(self, state: State, ctx: EvalContext) -> bool:
        if self._taintfn is None:
            return False
        key = (self._uid, state)
        t = ctx.taints.get(key)
        if t is None:
            t = self._taintfn(state, ctx)
            ctx.taints[key] = t
        return t

    def materialize(self, ctx: Optional[EvalContext] = None) -> dict:
        """All nonempty columns in lexicographic state order (for display)."""
        if ctx is None:
            ctx = EvalContext(EXACT)
        out = {}
        for s in self.config.states():
            col = self.column(s, ctx)
            if col:
                out[s] = col
        return out

    def __repr__(self):
        return (
            f"SparseOperator(modes={self.config.modes}, cutoff={self.config.cutoff},"
            f" max_raise={self.max_raise})"
        )


def _const_meta(s: Scalar) -> DegreeMeta:
    return DegreeMeta.of(s)


def _check_same_config(a: SparseOperator, b: SparseOperator):
    if a.config != b.config:
        raise ShapeError("operators live on different ModeConfigs")


# -- constructors -----------------------------------------------------------


def identity(config: ModeConfig) -> SparseOperator:
    def col(s, ctx):
        return {s: ctx.ring.embed(_sc.ONE)}

    return SparseOperator(config, (0,) * config.modes, DegreeMeta(), col)


def zero(config: ModeConfig) -> SparseOperator:
    def col(s, ctx):
        return {}

    return SparseOperator(config, (0,) * config.modes, DegreeMeta(), col)


def osc_plus(config: ModeConfig, i: int) -> SparseOperator:
    """Raising oscillator on mode i (number gauge): A+|n> = |n+1>.

    Columns at the cutoff lose their image and are tainted.
    """
    config.check_mode(i)
    k = i - 1
    N = config.cutoff
    gauged = config.gauge_seed is not None

    def col(s, ctx):
        if s[k] == N:
            return {}
        t = s[:k] + (s[k] + 1,) + s[k + 1 :]
        if gauged:
            v = from_rational(config.gauge_value(t) / config.gauge_value(s))
        else:
            v = _sc.ONE
        return {t: ctx.ring.embed(v)}

    def taint(s, ctx):
        return s[k] == N

    return SparseOperator(
        config,
        tuple(1 if j == k else 0 for j in range(config.modes)),
        DegreeMeta(),
        col,
        taint,
    )


def osc_minus(config: ModeConfig, i: int) -> SparseOperator:
    """Lowering oscillator on mode i (number gauge): A-|n> = (n)_q |n-1>."""
    config.check_mode(i)
    k = i - 1
    N = config.cutoff
    gauged = config.gauge_seed is not None

    def col(s, ctx):
        n = s[k]
        if n == 0:
            return {}
        t = s[:k] + (n - 1,) + s[k + 1 :]
        v = qnum(n)
        if gauged:
            v = v * from_rational(config.gauge_value(t) / config.gauge_value(s))
        return {t: ctx.ring.embed(v)}

    meta = DegreeMeta(0, 4 * (N - 1), 0, 0)
    return SparseOperator(config, (0,) * config.modes, meta, col)


def diag_poly(
    config: ModeConfig, f: Callable[[State], Scalar], name: str = ""
) -> SparseOperator:
    """Diagonal operator with exact Scalar entry f(state).

    Entries are computed once per state and shared by every evaluation
    context; conservative degree metadata is aggregated over the whole
    basis at construction time.
    """
    values: dict = {}
    meta = None
    for s in config.states():
        v = f(s)
        values[s] = v
        dm = DegreeMeta.of(v)
        meta = dm if meta is None else meta.union(dm)
    if meta is None:  # unreachable: configs have at least one state
        meta = DegreeMeta()

    def col(s, ctx):
        v = values[s]
        if not v:
            return {} if ctx.ring.drop_zeros else {s: ctx.ring.embed(v)}
        return {s: ctx.ring.embed(v)}

    return SparseOperator(config, (0,) * config.modes, meta, col)


def diag_exp(config: ModeConfig, a, c: int) -> SparseOperator:
    """Diagonal exponential with entry t**(sum_i a_i n_i + c).

    ``a`` is an m-tuple of integer t-exponent slopes; callers convert
    q-exponents via a_i = 4*alpha_i, c = 4*beta.
    """
    a = tuple(a)
    if len(a) != config.modes:
        raise ShapeError(f"diag_exp needs {config.modes} slopes, got {len(a)}")
    for x in a:
        if not isinstance(x, int):
            raise ValueError("diag_exp slopes must be integers (t-units)")
    if not isinstance(c, int):
        raise ValueError("diag_exp offset must be an integer (t-units)")

    def expo(s):
        return sum(ai * ni for ai, ni in zip(a, s)) + c

    return diag_poly(config, lambda s: _sc.t_power(expo(s)))


def diag_from_spectrum(
    config: ModeConfig, coeff: Fraction, spectrum: Callable[[State], Fraction], shift=0
) -> SparseOperator:
    """q**(coeff*spectrum(state) + shift) as a diagonal, entries t**(4*...).

    Raises ValueError when any exponent is not an integer power of t, which
    happens exactly when the supplied spectrum is not quarter-integral for
    the requested coefficient.
    """
    coeff = Fraction(coeff)
    shift = Fraction(shift)

    def f(s):
        e = 4 * (coeff * Fraction(spectrum(s)) + shift)
        if e.denominator != 1:
            raise ValueError(
                f"diagonal exponential needs integral t-exponent, got {e} at {s}"
            )
        return _sc.t_power(int(e))

    return diag_poly(config, f)


# -- ring operations ---------------------------------------------------------


def compose(A: SparseOperator, B: SparseOperator) -> SparseOperator:
    """Operator product A∘B (B acts first)."""
    _check_same_config(A, B)

    def col(s, ctx):
        out: dict = {}
        get = out.get
        for t, v in B.column(s, ctx).items():
            for u, w in A.column(t, ctx).items():
                x = w * v
                prev = get(u)
                out[u] = x if prev is None else prev + x
        if ctx.ring.drop_zeros:
            return {u: x for u, x in out.items() if x}
        return out

    def taint(s, ctx):
        if B.tainted(s, ctx):
            return True
        return any(A.tainted(t, ctx) for t in B.column(s, ctx))

    return SparseOperator(
        A.config,
        tuple(x + y for x, y in zip(A.max_raise, B.max_raise)),
        A.meta * B.meta,
        col,
        taint,
    )


def add(A: SparseOperator, B: SparseOperator) -> SparseOperator:
    _check_same_config(A, B)

    def col(s, ctx):
        out = dict(A.column(s, ctx))
        for u, x in B.column(s, ctx).items():
            prev = out.get(u)
            if prev is None:
                out[u] = x
            else:
                y = prev + x
                if y or not ctx.ring.drop_zeros:
                    out[u] = y
                else:
                    del out[u]
        return out

    def taint(s, ctx):
        return A.tainted(s, ctx) or B.tainted(s, ctx)

    return SparseOperator(
        A.config,
        tuple(max(x, y) for x, y in zip(A.max_raise, B.max_raise)),
        A.meta + B.meta,
        col,
        taint,
    )


def scale(s, A: SparseOperator) -> SparseOperator:
    """Scalar multiple s*A; s is a Scalar (or int/rational coerced to one)."""
    if not isinstance(s, Scalar):
        s = _sc._as_scalar(s)
        if s is NotImplemented:
            raise TypeError("scale expects an exact scalar")

    def col(state, ctx):
        gv = ctx.ring.embed(s)
        out = {}
        for u, x in A.column(state, ctx).items():
            y = gv * x
            if y or not ctx.ring.drop_zeros:
                out[u] = y
        return out

    def taint(state, ctx):
        return A.tainted(state, ctx)

    return SparseOperator(
        A.config, A.max_raise, A.meta * DegreeMeta.of(s), col, taint
    )


def sub(A: SparseOperator, B: SparseOperator) -> SparseOperator:
    return add(A, scale(-1, B))


def q_commutator(A: SparseOperator, B: SparseOperator, e) -> SparseOperator:
    """q**e AB - q**(-e) BA for quarter-integer e; e = 0 is the commutator."""
    e4 = _sc._quarter(e, "q-commutator exponent")
    if e4 == 0:
        return sub(compose(A, B), compose(B, A))
    return sub(
        scale(_sc.t_power(e4), compose(A, B)),
        scale(_sc.t_power(-e4), compose(B, A)),
    )


def commutator(A: SparseOperator, B: SparseOperator) -> SparseOperator:
    return q_commutator(A, B, 0)


def anticommutator(A: SparseOperator, B: SparseOperator) -> SparseOperator:
    return add(compose(A, B), compose(B, A))


def op_pow(A: SparseOperator, k: int) -> SparseOperator:
    if k < 0:
        raise ValueError("operator powers must be nonnegative")
    out = identity(A.config)
    for _ in range(k):
        out = compose(out, A)
    return out


# ---------------------------------------------------------------------------
# Interior equality
# ---------------------------------------------------------------------------


@dataclass
class VerificationOutcome:
    """Result of an interior comparison.

    status is 'pass', 'fail', or 'inconclusive' (empty interior).  On
    failure ``witness`` holds (state, target, lhs value, rhs value).
    """

    status: str
    columns_compared: int
    margin: tuple
    witness: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def resolve_margin(A: SparseOperator, B: SparseOperator, margin) -> tuple:
    m = A.config.modes
    if margin == "auto":
        return tuple(max(x, y) for x, y in zip(A.max_raise, B.max_raise))
    if isinstance(margin, int):
        if margin < 0:
            raise ValueError("margin must be >= 0")
        return (margin,) * m
    margin = tuple(margin)
    if len(margin) != m:
        raise ShapeError("margin tuple length must equal the mode count")
    return margin


def interior_states(config: ModeConfig, margin: tuple):
    ranges = [range(config.cutoff - mi + 1) for mi in margin]
    if any(len(r) == 0 for r in ranges):
        return None
    return itertools.product(*ranges)


def equal_on_interior(
    A: SparseOperator,
    B: SparseOperator,
    margin="auto",
    ctx: Optional[EvalContext] = None,
    comparer=None,
) -> VerificationOutcome:
    """Compare A and B on untainted interior columns.

    The interior consists of states with every n_i <= cutoff - margin_i;
    ``margin='auto'`` uses the componentwise max of both operators'
    max_raise.  Columns tainted on either side are skipped.  An empty
    comparison set yields 'inconclusive' rather than a vacuous pass.

    ``comparer(a, b) -> (equal, shown_a, shown_b)`` may override plain ring
    equality (the limit mode uses this to compare t->1 limits).
    """
    _check_same_config(A, B)
    if ctx is None:
        ctx = EvalContext(EXACT)
    mg = resolve_margin(A, B, margin)
    states = interior_states(A.config, mg)
    if states is None:
        return VerificationOutcome("inconclusive", 0, mg)
    zero_el = ctx.ring.zero
    compared = 0
    for s in states:
        if A.tainted(s, ctx) or B.tainted(s, ctx):
            continue
        ca = A.column(s, ctx)
        cb = B.column(s, ctx)
        compared += 1
        if comparer is None:
            if ca == cb:
                continue
        targets = set(ca) | set(cb)
        for u in sorted(targets):
            va = ca.get(u, zero_el)
            vb = cb.get(u, zero_el)
            if comparer is None:
                if va != vb:
                    return VerificationOutcome(
                        "fail", compared, mg, (s, u, va, vb)
                    )
            else:
                eq, sa, sb = comparer(va, vb)
                if not eq:
                    return VerificationOutcome(
                        "fail", compared, mg, (s, u, sa, sb)
                    )
    if compared == 0:
        return VerificationOutcome("inconclusive", 0, mg)
    return VerificationOutcome("pass", compared, mg)
