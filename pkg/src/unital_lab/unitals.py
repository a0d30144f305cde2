"""Orthogonal-Buekenhout-Metz unitals and the classical Hermitian unital.

An OBM unital with parameters (alpha, beta) is the point set

    { [x, alpha*x^2 + beta*N(x) + r, 1] : x in GF(q^2), r in GF(q) }
    together with the point at infinity [0, 1, 0],

valid exactly when the discriminant 4*N(alpha) + (conj(beta) - beta)^2 is a
non-square of GF(q).  alpha = 0 gives a classical unital; beta = conj(beta)
marks the union-of-conics case.

Models keep their points as sorted ids plus a boolean membership mask, so
censuses reduce to numpy gathers over the plane's incidence array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidUnitalParameters, StructuralViolation
from .fields import FieldCtx
from .plane import LineId, PointId, ProjectivePlane


@dataclass(frozen=True)
class UnitalParams:
    alpha: int
    beta: int
    discriminant: int  # GF(q) code, guaranteed non-square
    classical: bool  # alpha == 0
    beta_real: bool  # beta == conj(beta)


def discriminant(ctx: FieldCtx, alpha: int, beta: int) -> int:
    """4*N(alpha) + (conj(beta) - beta)^2 as a GF(q) code."""
    four = ctx.scalar(4)
    d = ctx.sub(ctx.conj(beta), beta)
    dsq = ctx.mul(d, d)
    re, im = ctx.unpack(dsq)
    assert im == 0  # (conj(beta) - beta)^2 = 4*w*b2^2 always lies in GF(q)
    return ctx.qadd(ctx.qmul(four, ctx.norm(alpha)), re)


def validate_params(ctx: FieldCtx, alpha: int, beta: int) -> UnitalParams:
    disc = discriminant(ctx, alpha, beta)
    if ctx.is_square(disc):
        raise InvalidUnitalParameters(
            f"discriminant {disc} is a square in GF({ctx.q}); "
            f"(alpha, beta) = ({ctx.format_fq2(alpha)}, {ctx.format_fq2(beta)}) "
            "does not define a unital",
            discriminant=disc,
        )
    return UnitalParams(
        alpha=alpha,
        beta=beta,
        discriminant=disc,
        classical=(alpha == 0),
        beta_real=(ctx.conj(beta) == beta),
    )


def valid_parameter_pairs(ctx: FieldCtx, nonclassical_only: bool = False) -> list[UnitalParams]:
    """Every valid (alpha, beta), in ascending (alpha, beta) code order.

    The listing is exhaustive on purpose: no quotient by equivalences is
    attempted, so a sweep cannot miss a case.
    """
    codes = np.arange(ctx.q2, dtype=np.int32)
    four = ctx.scalar(4)
    n_alpha = ctx.qmul_t[four, ctx.norm_t[codes]]
    d = ctx.add_t[ctx.conj_t[codes], ctx.neg_t[codes]]
    dsq = ctx.mul_t[d, d] % ctx.q  # purely real
    disc = ctx.qadd_t[n_alpha[:, None], dsq[None, :]]
    valid = ~ctx.square_mask[disc]
    if nonclassical_only:
        valid[0, :] = False
    out = []
    for a, b in np.argwhere(valid):
        a, b = int(a), int(b)
        out.append(
            UnitalParams(
                alpha=a,
                beta=b,
                discriminant=int(disc[a, b]),
                classical=(a == 0),
                beta_real=(ctx.conj(b) == b),
            )
        )
    return out


@dataclass(frozen=True)
class BlockingReport:
    blocking: bool  # every line of the plane meets the set
    minimal: bool  # every point lies on some tangent line
    attains_bound: bool  # |U| equals the q^3 + 1 maximum for minimal blocking sets
    size: int
    bound: int


class UnitalModel:
    """A unital point set with O(1) membership and cached line statistics.

    Construct through :func:`build_obm_unital` or :func:`build_hermitian`;
    the raw constructor exists so tests can fabricate corrupted sets.
    Immutable after construction (caches excepted).
    """

    def __init__(self, ctx, plane, points, params=None, kind="obm", generators=None):
        self.ctx: FieldCtx = ctx
        self.plane: ProjectivePlane = plane
        self.points = np.unique(np.asarray(points, dtype=np.int32))
        self.params: UnitalParams | None = params
        self.kind = kind
        self.mask = np.zeros(plane.size, dtype=bool)
        self.mask[self.points] = True
        self.infinity_point: PointId = plane.infinity_point
        self.infinity_line: LineId = plane.infinity_line
        # (point ids, x codes, r codes), aligned; affine points only
        self.generators: tuple[np.ndarray, np.ndarray, np.ndarray] | None = generators
        self._point_set: frozenset | None = None
        self._gen_pairs: dict | None = None
        self._line_counts: np.ndarray | None = None
        self._touch: np.ndarray | None = None

    # -- basics ------------------------------------------------------------

    @property
    def size(self) -> int:
        return int(self.points.size)

    @property
    def classical(self) -> bool:
        return self.kind == "hermitian" or (self.params is not None and self.params.classical)

    @property
    def point_set(self) -> frozenset:
        if self._point_set is None:
            self._point_set = frozenset(int(i) for i in self.points)
        return self._point_set

    def __contains__(self, point) -> bool:
        return bool(self.mask[int(point)])

    @property
    def gen_pairs(self) -> dict:
        if self._gen_pairs is None:
            if self.generators is None:
                self._gen_pairs = {}
            else:
                ids, xs, rs = self.generators
                self._gen_pairs = {
                    int(i): (int(x), int(r)) for i, x, r in zip(ids, xs, rs)
                }
        return self._gen_pairs

    def generating_pair(self, point: PointId) -> tuple[int, int]:
        """(x, r) with point = [x, alpha*x^2 + beta*N(x) + r, 1]."""
        return self.gen_pairs[int(point)]

    # -- line statistics ------------------------------------------------------

    @property
    def line_counts(self) -> np.ndarray:
        """|l ∩ U| for every line id, via one bincount over the incidence rows
        of the unital's points."""
        if self._line_counts is None:
            hit = self.plane.incidence[self.points].ravel()
            self._line_counts = np.bincount(hit, minlength=self.plane.size).astype(np.int32)
        return self._line_counts

    @property
    def touch_points(self) -> np.ndarray:
        """touch_points[l] = the unital point of tangent line l, else -1."""
        if self._touch is None:
            q = self.ctx.q
            rows = self.plane.incidence[self.points]
            flags = self.line_counts[rows] == 1
            per_point = flags.sum(axis=1)
            if not bool(np.all(per_point == 1)):
                raise StructuralViolation(
                    "some point does not lie on exactly one tangent line; "
                    "the set is not a unital"
                )
            touch = np.full(self.plane.size, -1, dtype=np.int32)
            touch[rows[flags]] = self.points
            self._touch = touch
        return self._touch

    def classify_line(self, line: LineId) -> tuple[str, int]:
        count = int(self.line_counts[line])
        if count == 1:
            return "tangent", 1
        if count == self.ctx.q + 1:
            return "secant", count
        raise StructuralViolation(
            f"line {self.plane.format_line(line)} meets the set in {count} points; "
            f"expected 1 or {self.ctx.q + 1}"
        )

    def verify_unital_axiom(self) -> dict[int, int]:
        """Histogram {1: tangents, q+1: secants}; raises on any other count."""
        values, freq = np.unique(self.line_counts, return_counts=True)
        support = set(int(v) for v in values)
        if not support <= {1, self.ctx.q + 1}:
            bad = sorted(support - {1, self.ctx.q + 1})
            raise StructuralViolation(f"line intersection sizes {bad} violate the unital axiom")
        return {int(v): int(c) for v, c in zip(values, freq)}

    def tangent_count_through(self, point: PointId) -> tuple[int, int]:
        """(tangent, secant) line counts through an arbitrary plane point."""
        counts = self.line_counts[self.plane.lines_through(point)]
        tangents = int(np.count_nonzero(counts == 1))
        return tangents, int(counts.size - tangents)

    # -- tangent lines ------------------------------------------------------

    def tangent_line_at(self, point: PointId) -> LineId:
        """Closed-form tangent line at a unital point.

        OBM at [x, alpha*x^2 + beta*N(x) + r, 1]:
            [-2*alpha*x + (conj(beta) - beta)*conj(x), 1,
             alpha*x^2 - conj(beta)*N(x) - r]^t,
        and the line at infinity at [0,1,0].  The Hermitian model uses its
        unitary polarity: the tangent at an absolute point is its polar.
        """
        if point not in self:
            raise ValueError(f"{self.plane.format_point(point)} is not on the unital")
        if point == self.infinity_point:
            return self.infinity_line
        ctx = self.ctx
        if self.kind == "hermitian":
            a, b, c = self.plane.coords(point)
            return self.plane.line_id(ctx.conj(a), ctx.conj(b), ctx.conj(c))
        x, r = self.generating_pair(point)
        p = self.params
        two = ctx.scalar(2)
        u = ctx.add(
            ctx.neg(ctx.mul(two, ctx.mul(p.alpha, x))),
            ctx.mul(ctx.sub(ctx.conj(p.beta), p.beta), ctx.conj(x)),
        )
        zc = ctx.sub(
            ctx.sub(ctx.mul(p.alpha, ctx.mul(x, x)), ctx.mul(ctx.conj(p.beta), ctx.norm(x))),
            r,
        )
        return self.plane.line_id(u, 1, zc)

    def tangent_line_brute(self, point: PointId) -> LineId:
        """Oracle: scan the q^2+1 lines through the point for the unique
        1-point line (uses only incidence and membership)."""
        if point not in self:
            raise ValueError(f"{self.plane.format_point(point)} is not on the unital")
        lines = self.plane.lines_through(point)
        counts = self.mask[self.plane.incidence[lines]].sum(axis=1)
        hits = lines[counts == 1]
        if hits.size != 1:
            raise StructuralViolation(
                f"{hits.size} tangent lines through {self.plane.format_point(point)}"
            )
        return LineId(int(hits[0]))

    def tangent_lines_closed_form(self) -> tuple[np.ndarray, np.ndarray]:
        """(point ids, tangent line ids) for every unital point, vectorized
        through the closed form (the brute scan lives in the tests)."""
        ctx, plane = self.ctx, self.plane
        if self.kind == "hermitian":
            pts = self.points
            cc = ctx.conj_t[plane._coords[pts]]
            lids = plane.point_ids_vec(cc[:, 0], cc[:, 1], cc[:, 2])
            return pts.copy(), lids
        p = self.params
        pts, X, R = self.generators
        add, mul, neg, conj = ctx.add_t, ctx.mul_t, ctx.neg_t, ctx.conj_t
        two = ctx.scalar(2)
        bbar_minus_b = ctx.sub(ctx.conj(p.beta), p.beta)
        U = add[neg[mul[two, mul[p.alpha, X]]], mul[bbar_minus_b, conj[X]]]
        Zc = add[
            add[mul[p.alpha, mul[X, X]], neg[mul[ctx.conj(p.beta), ctx.norm_t[X]]]], neg[R]
        ]
        lids = plane.point_ids_vec(U, np.ones_like(U), Zc)
        pts = np.concatenate([pts, [self.infinity_point]])
        lids = np.concatenate([lids, [np.int32(self.infinity_line)]])
        return pts, lids

    # -- blocking-set verification ------------------------------------------------

    def verify_minimal_blocking_set(self) -> BlockingReport:
        counts = self.line_counts
        blocking = bool(np.all(counts >= 1))
        minimal = True
        if blocking:
            # removing a point only breaks blocking if some line meets the
            # set exactly in that point, i.e. every point needs a tangent
            rows = self.plane.incidence[self.points]
            minimal = bool(np.all((counts[rows] == 1).any(axis=1)))
        bound = self.ctx.q**3 + 1
        return BlockingReport(
            blocking=blocking,
            minimal=blocking and minimal,
            attains_bound=self.size == bound,
            size=self.size,
            bound=bound,
        )

    # -- reporting ------------------------------------------------------------

    def record(self) -> dict:
        ctx = self.ctx
        rec = {
            "p": ctx.p,
            "n": ctx.n,
            "w": ctx.w,
            "kind": self.kind,
            "unital_size": self.size,
        }
        if self.params is not None:
            rec.update(
                alpha=ctx.format_fq2(self.params.alpha),
                beta=ctx.format_fq2(self.params.beta),
                discriminant=self.params.discriminant,
                classical=self.params.classical,
                beta_real=self.params.beta_real,
            )
        return rec

    def __repr__(self):
        tag = self.kind
        if self.params is not None:
            tag += (
                f"(alpha={self.ctx.format_fq2(self.params.alpha)},"
                f" beta={self.ctx.format_fq2(self.params.beta)})"
            )
        return f"UnitalModel[{tag}, {self.size} points]"


def build_obm_unital(ctx: FieldCtx, plane: ProjectivePlane, params: UnitalParams) -> UnitalModel:
    """All q^3 affine points [x, alpha*x^2 + beta*N(x) + r, 1] plus [0,1,0]."""
    q, q2 = ctx.q, ctx.q2
    X = np.repeat(np.arange(q2, dtype=np.int32), q)
    R = np.tile(np.arange(q, dtype=np.int32), q2)
    add, mul = ctx.add_t, ctx.mul_t
    Y = add[add[mul[params.alpha, mul[X, X]], mul[params.beta, ctx.norm_t[X]]], R]
    ids = plane.point_ids_vec(X, Y, np.ones_like(X))
    if np.unique(ids).size != ids.size:
        raise StructuralViolation("generating map (x, r) -> point is not injective")
    points = np.concatenate([ids, [plane.infinity_point]])
    model = UnitalModel(
        ctx, plane, points, params=params, kind="obm", generators=(ids, X, R)
    )
    expected = q**3 + 1
    if model.size != expected:
        raise StructuralViolation(f"built {model.size} points, expected {expected}")
    return model


def build_hermitian(ctx: FieldCtx, plane: ProjectivePlane) -> UnitalModel:
    """Absolute points of the standard unitary polarity: N(x)+N(y)+N(z) = 0."""
    pc = plane._coords
    s = ctx.qadd_t[
        ctx.qadd_t[ctx.norm_t[pc[:, 0]], ctx.norm_t[pc[:, 1]]], ctx.norm_t[pc[:, 2]]
    ]
    points = np.nonzero(s == 0)[0].astype(np.int32)
    model = UnitalModel(ctx, plane, points, params=None, kind="hermitian")
    expected = ctx.q**3 + 1
    if model.size != expected:
        raise StructuralViolation(f"built {model.size} points, expected {expected}")
    return model
