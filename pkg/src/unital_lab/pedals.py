"""Feet of external points: brute-force and closed-form pedals, line censuses,
trace classes, two-arc partitions, conics, and secant partitions.

For an external point P, the pedal is the set of q+1 unital points touched by
the tangent lines through P.  In the canonical frame the base point is
[0, lam*e, 1] with lam in {1, w}; its feet admit the closed form

    Q_x = [x, T(alpha*x^2) - lam*e, 1]

where x runs over the parameter set

    { x : 2*lam*e + alpha*x^2 - conj(alpha)*conj(x)^2
          + (beta - conj(beta)) * N(x)  =  0 }.

The membership condition is evaluated three independent ways (directly, via
the 2x2 matrix [[alpha, h], [h, -conj(alpha)]] with h = (beta-conj(beta))/2
sandwiched between (x, conj(x)), and via the imaginary-part form
2*lam*e + 2*e*Im(alpha*x^2) + (beta-conj(beta))*N(x)); the routes are
compared on every element and any disagreement raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (
    DegenerateConfiguration,
    DegenerateInput,
    InternalConsistencyError,
    TheoremViolation,
)
from .plane import LineId, PointId
from .unitals import UnitalModel


@dataclass(frozen=True)
class PedalSet:
    """An external base point with its q+1 feet.

    ``lam``/``foot_params`` are populated only on the canonical-frame path;
    ``param_point`` then maps each parameter x to its foot Q_x.
    """

    base: PointId
    feet: tuple[int, ...]
    collinear: bool
    lam: int | None = None
    foot_params: tuple[int, ...] | None = None
    param_point: dict[int, int] | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.feet)


@dataclass
class IntersectionCensus:
    """Histogram of |line ∩ S| over every line of the plane, with witnesses."""

    histogram: dict[int, int]
    witnesses: dict[int, list[tuple[int, tuple[int, ...]]]]
    lines_examined: int

    def support(self) -> set[int]:
        return {size for size, count in self.histogram.items() if count}

    def max_size(self) -> int:
        return max(self.support(), default=0)

    def as_json_dict(self, plane, base: PointId | None = None) -> dict:
        out = {
            "histogram": {str(size): count for size, count in sorted(self.histogram.items())},
            "witnesses": [
                [plane.format_line(LineId(line)), [plane.format_point(PointId(p)) for p in pts]]
                for size in sorted(self.witnesses)
                for line, pts in self.witnesses[size]
            ],
        }
        if base is not None:
            out = {"base_point": plane.format_point(base), **out}
        return out


def _require_external(U: UnitalModel, point: PointId) -> None:
    if point in U:
        raise ValueError(
            f"{U.plane.format_point(point)} lies on the unital; feet are defined "
            "for external points only"
        )


def feet_of(U: UnitalModel, point: PointId) -> PedalSet:
    """Brute-force pedal: classify the q^2+1 lines through the point by
    counting unital points on each, and take the touching point of every
    tangent.  Uses only incidence and membership."""
    _require_external(U, point)
    plane = U.plane
    lines = plane.lines_through(point)
    on_lines = plane.incidence[lines]
    memb = U.mask[on_lines]
    counts = memb.sum(axis=1)
    tangent_rows = counts == 1
    feet = on_lines[tangent_rows][memb[tangent_rows]]
    expected = U.ctx.q + 1
    if feet.size != expected:
        raise TheoremViolation(
            f"{feet.size} feet found for {plane.format_point(point)}; expected {expected}"
        )
    feet = np.sort(feet)
    return PedalSet(
        base=point, feet=tuple(int(f) for f in feet), collinear=plane.collinear(feet)
    )


def feet_of_many(U: UnitalModel, bases) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized pedals for an array of external base points.

    Returns (feet matrix of shape (len(bases), q+1), collinear flags).
    Same incidence+membership route as :func:`feet_of`, batched.
    """
    plane = U.plane
    bases = np.asarray(bases, dtype=np.int32)
    if bool(np.any(U.mask[bases])):
        raise ValueError("feet_of_many requires external base points")
    lines = plane.incidence[bases]
    tangent = U.line_counts[lines] == 1
    if not bool(np.all(tangent.sum(axis=1) == U.ctx.q + 1)):
        raise TheoremViolation("some base point does not lie on exactly q+1 tangent lines")
    feet = U.touch_points[lines[tangent]].reshape(bases.size, U.ctx.q + 1)
    feet.sort(axis=1)
    coords = plane._coords[feet]
    chord = plane.vcross(coords[:, 0, :], coords[:, 1, :])
    collinear = np.all(plane.vdot(coords, chord[:, None, :]) == 0, axis=1)
    return feet, collinear


# -- canonical frame -----------------------------------------------------------


def canonical_base_point(U: UnitalModel, lam: int) -> PointId:
    """[0, lam*e, 1]; always external and off the line at infinity."""
    _check_lambda(U, lam)
    return U.plane.point_id(0, U.ctx.pack(0, lam), 1)


def _check_lambda(U: UnitalModel, lam: int) -> None:
    if lam not in (1, U.ctx.w):
        raise ValueError(f"lambda must be 1 or w = {U.ctx.w}, got {lam}")


def _require_nonclassical(U: UnitalModel) -> None:
    if U.params is None or U.params.classical:
        raise ValueError("this operation requires an OBM unital with alpha != 0")


def membership_forms(U: UnitalModel, lam: int) -> dict[str, np.ndarray]:
    """The three equivalent evaluations of the foot-parameter condition on
    every x in GF(q^2); each entry is the array of GF(q^2) values whose zeros
    are the parameters."""
    _check_lambda(U, lam)
    ctx = U.ctx
    p = U.params
    add, mul, neg, conj = ctx.add_t, ctx.mul_t, ctx.neg_t, ctx.conj_t
    x = np.arange(ctx.q2, dtype=np.int32)
    xbar = conj[x]
    two_lam_eps = ctx.pack(0, ctx.qmul(ctx.scalar(2), lam))
    b_minus_bbar = ctx.sub(p.beta, ctx.conj(p.beta))

    ax2 = mul[p.alpha, mul[x, x]]
    direct = add[
        add[add[two_lam_eps, ax2], neg[mul[ctx.conj(p.alpha), mul[xbar, xbar]]]],
        mul[b_minus_bbar, ctx.norm_t[x]],
    ]

    h = ctx.div(b_minus_bbar, ctx.scalar(2))
    m_top = add[mul[p.alpha, x], mul[h, xbar]]
    m_bot = add[mul[h, x], mul[ctx.neg(ctx.conj(p.alpha)), xbar]]
    matrix = add[two_lam_eps, add[mul[x, m_top], mul[xbar, m_bot]]]

    im_ax2 = ax2 // ctx.q
    im_term = ctx.q * ctx.qmul_t[ctx.scalar(2), im_ax2]  # pack(0, 2*Im(alpha x^2))
    imnorm = add[add[two_lam_eps, im_term], mul[b_minus_bbar, ctx.norm_t[x]]]

    return {"direct": direct, "matrix": matrix, "imnorm": imnorm}


def foot_parameters(U: UnitalModel, lam: int) -> np.ndarray:
    """Sorted parameter codes x of the canonical-frame feet.

    All three evaluation routes are compared on every element of GF(q^2)
    before the zero set is returned.
    """
    forms = membership_forms(U, lam)
    direct = forms["direct"]
    for name in ("matrix", "imnorm"):
        if not np.array_equal(direct, forms[name]):
            raise InternalConsistencyError(
                f"membership evaluation via {name} form disagrees with the direct form"
            )
    params = np.nonzero(direct == 0)[0].astype(np.int32)
    expected = U.ctx.q + 1
    if params.size != expected:
        raise TheoremViolation(f"|parameter set| = {params.size}, expected {expected}")
    return params


def foot_point(U: UnitalModel, lam: int, x: int) -> PointId:
    """Q_x = [x, T(alpha*x^2) - lam*e, 1]."""
    ctx = U.ctx
    tr = ctx.trace(ctx.mul(U.params.alpha, ctx.mul(x, x)))
    y = ctx.sub(tr, ctx.pack(0, lam))
    return U.plane.point_id(x, y, 1)


def foot_unital_r(U: UnitalModel, lam: int, x: int) -> int:
    """The r with Q_x = [x, alpha*x^2 + beta*N(x) + r, 1]:
    r = lam*e + alpha*x^2 - conj(beta)*N(x), which lands in GF(q)."""
    ctx = U.ctx
    val = ctx.sub(
        ctx.add(ctx.pack(0, lam), ctx.mul(U.params.alpha, ctx.mul(x, x))),
        ctx.mul(ctx.conj(U.params.beta), ctx.norm(x)),
    )
    re, im = ctx.unpack(val)
    if im != 0:
        raise InternalConsistencyError(f"r parameter of foot x={x} is not in GF(q)")
    return re


def feet_closed_form(U: UnitalModel, lam: int) -> PedalSet:
    """Canonical-frame pedal via the closed form, cross-checked against the
    equivalent representation [x, 2*alpha*x^2 + (beta-conj(beta))*N(x) + lam*e, 1]."""
    _require_nonclassical(U)
    ctx, plane = U.ctx, U.plane
    p = U.params
    xs = foot_parameters(U, lam)
    add, mul, neg = ctx.add_t, ctx.mul_t, ctx.neg_t

    ax2 = mul[p.alpha, mul[xs, xs]]
    lam_eps = ctx.pack(0, lam)
    y1 = add[ctx.trace_t[ax2], neg[lam_eps]]
    ids = plane.point_ids_vec(xs, y1, np.ones_like(xs))

    two = ctx.scalar(2)
    b_minus_bbar = ctx.sub(p.beta, ctx.conj(p.beta))
    y2 = add[add[mul[two, ax2], mul[b_minus_bbar, ctx.norm_t[xs]]], lam_eps]
    ids2 = plane.point_ids_vec(xs, y2, np.ones_like(xs))
    if not np.array_equal(ids, ids2):
        raise InternalConsistencyError("the two closed-form foot representations disagree")
    if not bool(np.all(U.mask[ids])):
        raise InternalConsistencyError("closed-form feet are not all unital points")

    base = canonical_base_point(U, lam)
    order = np.argsort(ids)
    feet = tuple(int(i) for i in ids[order])
    params_sorted = tuple(int(x) for x in xs[order])
    return PedalSet(
        base=base,
        feet=feet,
        collinear=plane.collinear(ids),
        lam=lam,
        foot_params=tuple(sorted(params_sorted)),
        param_point={int(x): int(i) for x, i in zip(xs, ids)},
    )


# -- censuses -----------------------------------------------------------------


def _census_of_point_set(plane, points, witness_min: int = 2) -> IntersectionCensus:
    pts = np.asarray(points, dtype=np.int32)
    counts = np.bincount(plane.incidence[pts].ravel(), minlength=plane.size)
    freq = np.bincount(counts)
    histogram = {int(s): int(c) for s, c in enumerate(freq) if c}
    in_set = np.zeros(plane.size, dtype=bool)
    in_set[pts] = True
    witnesses: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    for size in sorted(histogram):
        if size < witness_min:
            continue
        entries = []
        for lid in np.nonzero(counts == size)[0]:
            row = plane.incidence[lid]
            entries.append((int(lid), tuple(int(x) for x in row[in_set[row]])))
        witnesses[size] = entries
    return IntersectionCensus(
        histogram=histogram, witnesses=witnesses, lines_examined=plane.size
    )


def line_pedal_census(U: UnitalModel, pedal: PedalSet) -> IntersectionCensus:
    """|line ∩ pedal| for every line of the plane.  Requires alpha != 0 and a
    base off the line at infinity; any size outside {0, 1, 2, 4} raises."""
    _require_nonclassical(U)
    _require_external(U, pedal.base)
    if U.plane.incident(pedal.base, U.infinity_line):
        raise ValueError("census base point must not lie on the line at infinity")
    census = _census_of_point_set(U.plane, pedal.feet)
    if not census.support() <= {0, 1, 2, 4}:
        bad = sorted(census.support() - {0, 1, 2, 4})
        raise TheoremViolation(f"pedal census support contains {bad}; expected within 0,1,2,4")
    return census


# -- trace classes and the quadratic cross-check ----------------------------------


def trace_value(U: UnitalModel, x: int) -> int:
    """T(alpha * x^2) as a GF(q) code."""
    ctx = U.ctx
    return ctx.trace(ctx.mul(U.params.alpha, ctx.mul(x, x)))


def trace_level_line(U: UnitalModel, lam: int, x: int) -> LineId:
    """The line [0, -1, T(alpha*x^2) - lam*e]^t joining Q_x and Q_{-x}; every
    such line passes through [1, 0, 0]."""
    ctx = U.ctx
    c = ctx.sub(trace_value(U, x), ctx.pack(0, lam))
    return U.plane.line_id(0, ctx.neg(1), c)


def trace_classes(U: UnitalModel, lam: int) -> dict[int, tuple[int, ...]]:
    """Partition of the foot parameters by the value T(alpha*x^2)."""
    _require_nonclassical(U)
    xs = foot_parameters(U, lam)
    ctx = U.ctx
    tv = ctx.trace_t[ctx.mul_t[U.params.alpha, ctx.mul_t[xs, xs]]]
    classes: dict[int, list[int]] = {}
    for x, t in zip(xs, tv):
        classes.setdefault(int(t), []).append(int(x))
    return {t: tuple(sorted(v)) for t, v in sorted(classes.items())}


def same_trace_solutions(U: UnitalModel, lam: int, x: int) -> tuple[int, ...]:
    """All z with T(alpha*z^2) = T(alpha*x^2) and z a foot parameter,
    computed two independent ways:

    * a direct exhaustive scan of GF(q^2), and
    * the pair of GF(q)-coefficient quadratics in (z1, z2) obtained by
      splitting z = z1 + e*z2:

          A z1^2 + B z2^2 + C z1 z2 + D = 0
          E z1^2 + F z2^2 + G z1 z2 + H = 0

      with A = a1, B = a1 w, C = 2 a2 w, D = -T(alpha x^2)/2,
      E = a2 + b2, F = w (a2 - b2), G = 2 a1, H = lam,
      for alpha = a1 + e*a2 and beta = b1 + e*b2.  (F follows from dividing
      2 lam e + 2 e Im(alpha z^2) + (beta - conj(beta)) N(z) = 0 by 2e.)

    The two routes must agree exactly.
    """
    _require_nonclassical(U)
    _check_lambda(U, lam)
    ctx = U.ctx
    params = foot_parameters(U, lam)
    if x not in set(int(v) for v in params):
        raise ValueError(f"x = {ctx.format_fq2(x)} is not a foot parameter")
    target = trace_value(U, x)

    codes = np.arange(ctx.q2, dtype=np.int32)
    tr_all = ctx.trace_t[ctx.mul_t[U.params.alpha, ctx.mul_t[codes, codes]]]
    member = np.zeros(ctx.q2, dtype=bool)
    member[params] = True
    direct = np.nonzero((tr_all == target) & member)[0]

    qa, qm, qn = ctx.qadd_t, ctx.qmul_t, ctx.qneg_t
    a1, a2 = ctx.unpack(U.params.alpha)
    b2 = ctx.im(U.params.beta)
    w, two = ctx.w, ctx.scalar(2)
    A = a1
    B = ctx.qmul(a1, w)
    C = ctx.qmul(two, ctx.qmul(a2, w))
    D = ctx.qneg(ctx.qdiv(target, two))
    E = ctx.qadd(a2, b2)
    F = ctx.qmul(w, ctx.qsub(a2, b2))
    G = ctx.qmul(two, a1)
    H = lam
    z1 = np.arange(ctx.q, dtype=np.int32)[:, None]
    z2 = np.arange(ctx.q, dtype=np.int32)[None, :]
    sq1, sq2, cross = qm[z1, z1], qm[z2, z2], qm[z1, z2]
    eq1 = qa[qa[qa[qm[A, sq1], qm[B, sq2]], qm[C, cross]], D]
    eq2 = qa[qa[qa[qm[E, sq1], qm[F, sq2]], qm[G, cross]], H]
    hit1, hit2 = np.nonzero((eq1 == 0) & (eq2 == 0))
    system = np.sort(hit1 + ctx.q * hit2)

    if not np.array_equal(direct, system):
        raise InternalConsistencyError(
            "GF(q)-coordinate quadratic system disagrees with the direct scan "
            f"for x = {ctx.format_fq2(x)}"
        )
    return tuple(int(z) for z in direct)


# -- two-arc partition ----------------------------------------------------------


def two_arc_partition(U: UnitalModel, pedal: PedalSet) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the feet into two arcs.

    Canonical frame: each line through [1,0,0] meets the pedal in the feet of
    one trace class (2 or 4 of them, closed under x -> -x).  Classes of size
    two go wholly into the first part; a size-four class {u, -u, v, -v}
    contributes the sign pair with the smaller minimum code to the first part
    and the other pair to the second.  Both parts are then re-checked for
    three collinear points exhaustively.

    A pedal without canonical data is handled by locating the 4-point lines
    by brute force; any 2+2 split of each such line works, and the points are
    paired by sorted id.
    """
    plane = U.plane
    part1: list[int] = []
    part2: list[int] = []
    if pedal.lam is not None:
        for _, cls in trace_classes(U, pedal.lam).items():
            pts = {x: pedal.param_point[x] for x in cls}
            if len(cls) == 2:
                part1.extend(pts.values())
            elif len(cls) == 4:
                ctx = U.ctx
                pairs = {}
                for x in cls:
                    key = min(x, ctx.neg(x))
                    pairs.setdefault(key, []).append(pts[x])
                keys = sorted(pairs)
                if len(keys) != 2 or any(len(v) != 2 for v in pairs.values()):
                    raise TheoremViolation("size-4 trace class is not two sign pairs")
                part1.extend(pairs[keys[0]])
                part2.extend(pairs[keys[1]])
            else:
                raise TheoremViolation(f"trace class of size {len(cls)}; expected 2 or 4")
    else:
        feet = np.asarray(pedal.feet, dtype=np.int32)
        in_pedal = set(pedal.feet)
        four_lines: dict[int, list[int]] = {}
        seen = set()
        for i, j in combinations(range(feet.size), 2):
            lid = plane.join(PointId(int(feet[i])), PointId(int(feet[j])))
            if lid in seen:
                continue
            seen.add(lid)
            on = [int(pt) for pt in plane.points_on(LineId(lid)) if int(pt) in in_pedal]
            if len(on) > 4 or len(on) == 3:
                raise TheoremViolation(f"line meets pedal in {len(on)} points")
            if len(on) == 4:
                four_lines[int(lid)] = sorted(on)
        covered: set[int] = set()
        for lid in sorted(four_lines):
            on = four_lines[lid]
            if covered & set(on):
                raise TheoremViolation("4-point lines overlap on the pedal")
            covered.update(on)
            part2.extend(on[2:])
        part1.extend(int(f) for f in feet if int(f) not in set(part2))

    a1, a2 = tuple(sorted(part1)), tuple(sorted(part2))
    if set(a1) | set(a2) != set(pedal.feet) or set(a1) & set(a2):
        raise TheoremViolation("arc parts do not partition the feet")
    for part in (a1, a2):
        if plane.has_three_collinear(part):
            raise TheoremViolation("arc part contains three collinear points")
    return a1, a2


def is_single_arc(U: UnitalModel, pedal: PedalSet) -> bool:
    """True when the whole pedal has no three collinear points."""
    return not U.plane.has_three_collinear(pedal.feet)


# -- conics -------------------------------------------------------------------


@dataclass(frozen=True)
class Conic:
    """A ternary quadratic form c0 x^2 + c1 y^2 + c2 z^2 + c3 xy + c4 xz + c5 yz,
    canonicalized like line coordinates (first non-zero coefficient 1)."""

    coeffs: tuple[int, int, int, int, int, int]

    def evaluate(self, ctx, triple) -> int:
        a, b, c = triple
        c0, c1, c2, c3, c4, c5 = self.coeffs
        mul, add = ctx.mul, ctx.add
        total = 0
        for coef, val in (
            (c0, mul(a, a)),
            (c1, mul(b, b)),
            (c2, mul(c, c)),
            (c3, mul(a, b)),
            (c4, mul(a, c)),
            (c5, mul(b, c)),
        ):
            total = add(total, mul(coef, val))
        return total

    def contains(self, plane, point: PointId) -> bool:
        return self.evaluate(plane.ctx, plane.coords(point)) == 0

    def matrix(self, ctx) -> list[list[int]]:
        """The symmetric Gram matrix (valid since p is odd)."""
        c0, c1, c2, c3, c4, c5 = self.coeffs
        half = ctx.inv(ctx.scalar(2))
        h3, h4, h5 = (ctx.mul(half, c) for c in (c3, c4, c5))
        return [[c0, h3, h4], [h3, c1, h5], [h4, h5, c2]]

    def rank(self, ctx) -> int:
        return _gf_rank(ctx, [row[:] for row in self.matrix(ctx)])

    def is_degenerate(self, ctx) -> bool:
        """Rank < 3: the zero set contains a line (over the closure)."""
        return self.rank(ctx) < 3


def _gf_rank(ctx, rows) -> int:
    rows = [list(r) for r in rows]
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, v) for v in rows[rank]]
        for r in range(n_rows):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _gf_nullspace(ctx, rows) -> list[list[int]]:
    """Basis of the right nullspace of a small matrix over GF(q^2)."""
    rows = [list(r) for r in rows]
    n_cols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(n_cols) if c not in pivots]
    for fc in free:
        vec = [0] * n_cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = ctx.neg(rows[r][fc])
        basis.append(vec)
    return basis


def conic_through(plane, points) -> Conic:
    """The unique conic through five points (no four collinear); the 5x6
    homogeneous system must have nullity exactly one."""
    pts = [PointId(int(p)) for p in points]
    if len(pts) != 5 or len(set(pts)) != 5:
        raise DegenerateInput("conic_through expects five distinct points")
    ctx = plane.ctx
    rows = []
    for p in pts:
        a, b, c = plane.coords(p)
        rows.append(
            [
                ctx.mul(a, a),
                ctx.mul(b, b),
                ctx.mul(c, c),
                ctx.mul(a, b),
                ctx.mul(a, c),
                ctx.mul(b, c),
            ]
        )
    basis = _gf_nullspace(ctx, rows)
    if len(basis) != 1:
        raise DegenerateConfiguration(
            f"five points determine a conic pencil of dimension {len(basis)}; "
            "configuration is degenerate"
        )
    coeffs = basis[0]
    lead = next(v for v in coeffs if v != 0)
    inv = ctx.inv(lead)
    return Conic(tuple(ctx.mul(inv, v) for v in coeffs))


@dataclass(frozen=True)
class ConicFitResult:
    contained: bool
    conic: Conic | None
    status: str  # "ok" | "degenerate" | "small"
    off_point: int | None = None


def arc_in_conic(plane, arc) -> ConicFitResult:
    """Fit a conic to the first five arc points (encoding order), sliding the
    window past degenerate quintuples, then test the remaining points.

    Arcs with fewer than five points lie on some conic trivially.
    """
    ids = sorted(set(int(a) for a in arc))
    if len(ids) < 5:
        return ConicFitResult(contained=True, conic=None, status="small")
    conic = None
    for start in range(len(ids) - 4):
        try:
            conic = conic_through(plane, ids[start : start + 5])
            break
        except DegenerateConfiguration:
            continue
    if conic is None:
        return ConicFitResult(contained=False, conic=None, status="degenerate")
    for p in ids:
        if not conic.contains(plane, PointId(p)):
            return ConicFitResult(contained=False, conic=conic, status="ok", off_point=p)
    return ConicFitResult(contained=True, conic=conic, status="ok")


# -- secant partition ------------------------------------------------------------


def secant_partition(U: UnitalModel, line: LineId) -> list[tuple[PointId, PointId]]:
    """For a secant line, q+1 distinct pedals each meeting the line's unital
    points in exactly one foot, partitioning them.

    For each unital point A on the line, scan the external points of the
    tangent line at A in id order and take the first lying on no tangent of
    the other line points; a counting argument guarantees one exists for
    q >= 3.  Returns (external point, foot) pairs in foot order.
    """
    kind, _ = U.classify_line(line)
    if kind != "secant":
        raise ValueError("secant_partition requires a secant line")
    plane = U.plane
    on_line = plane.points_on(line)
    feet = on_line[U.mask[on_line]]
    tangents = np.array([U.tangent_line_at(PointId(int(a))) for a in feet], dtype=np.int32)
    # how many of these q+1 tangents pass through each plane point
    load = np.bincount(plane.incidence[tangents].ravel(), minlength=plane.size)
    out: list[tuple[PointId, PointId]] = []
    for foot, tang in zip(feet, tangents):
        candidates = plane.points_on(LineId(int(tang)))
        ok = candidates[(load[candidates] == 1) & (candidates != foot)]
        if ok.size == 0:
            raise TheoremViolation(
                f"no admissible pedal base for foot {plane.format_point(int(foot))}"
            )
        out.append((PointId(int(ok[0])), PointId(int(foot))))
    bases = [b for b, _ in out]
    if len(set(bases)) != len(bases):
        raise TheoremViolation("pedal bases in a secant partition must be distinct")
    return out
