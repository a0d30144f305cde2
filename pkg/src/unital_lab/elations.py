"""The elation group of an OBM unital: E_t : (x, y, z) -> (x, y + t*z, z)
for t in GF(q), with center [0,1,0] and axis the line at infinity.

Every E_t fixes the unital setwise (it shifts the generator r to r + t), so
orbits of pedals under the group are unions of q pairwise disjoint pedals,
and in the canonical frame the q lines [0, -1, s - lam*e]^t through [1,0,0]
partition the orbit of the pedal of [0, lam*e, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TheoremViolation
from .pedals import IntersectionCensus, PedalSet, _census_of_point_set, feet_of_many
from .plane import LineId, PointId
from .unitals import UnitalModel


class ElationGroup:
    """The group {E_t : t in GF(q)} acting on the plane; order q, composition
    is addition of parameters, and the action is semi-regular off the axis."""

    def __init__(self, U: UnitalModel):
        self.U = U
        self.ctx = U.ctx
        self.plane = U.plane

    @property
    def order(self) -> int:
        return self.ctx.q

    def elements(self) -> range:
        return range(self.ctx.q)

    def compose(self, t: int, s: int) -> int:
        return self.ctx.qadd(t, s)

    def inverse(self, t: int) -> int:
        return self.ctx.qneg(t)

    def apply_point(self, t: int, point: PointId) -> PointId:
        a, b, c = self.plane.coords(point)
        ctx = self.ctx
        return self.plane.point_id(a, ctx.add(b, ctx.mul(t, c)), c)

    def apply_points(self, t: int, points) -> np.ndarray:
        ctx = self.ctx
        pc = self.plane._coords[np.asarray(points, dtype=np.int32)]
        b = ctx.add_t[pc[..., 1], ctx.mul_t[t, pc[..., 2]]]
        return self.plane.point_ids_vec(pc[..., 0], b, pc[..., 2])

    def apply_line(self, t: int, line: LineId) -> LineId:
        """Inverse-transpose action: [x, y, z]^t -> [x, y, z - t*y]^t."""
        x, y, z = self.plane.coords(line)
        ctx = self.ctx
        return self.plane.line_id(x, y, ctx.sub(z, ctx.mul(t, y)))


@dataclass(frozen=True)
class OrbitSet:
    """The orbit of a pedal under the elation group: q disjoint pedals keyed
    by the elation parameter t, with their union."""

    base: PointId
    lam: int | None
    pedals: tuple[tuple[int, tuple[int, ...]], ...]  # (t, feet) in t order
    points: tuple[int, ...]  # sorted union

    @property
    def size(self) -> int:
        return len(self.points)


def orbit_of_pedal(U: UnitalModel, pedal: PedalSet) -> OrbitSet:
    """Build the orbit, verifying along the way that translating the feet
    matches the feet of the translated base and that the pedals are disjoint."""
    group = ElationGroup(U)
    base_feet = np.asarray(pedal.feet, dtype=np.int32)
    moved_bases = np.array(
        [group.apply_point(t, pedal.base) for t in group.elements()], dtype=np.int32
    )
    fresh, _ = feet_of_many(U, moved_bases)
    pedals = []
    for t in group.elements():
        image = np.sort(group.apply_points(t, base_feet))
        if not np.array_equal(image, fresh[t]):
            raise TheoremViolation(
                f"elation t={t} image of the feet differs from the feet of the image point"
            )
        pedals.append((t, tuple(int(i) for i in fresh[t])))
    union = np.unique(fresh)
    expected = U.ctx.q * (U.ctx.q + 1)
    if union.size != expected:
        raise TheoremViolation(f"orbit has {union.size} points; expected {expected}")
    return OrbitSet(
        base=pedal.base,
        lam=pedal.lam,
        pedals=tuple(pedals),
        points=tuple(int(i) for i in union),
    )


def partition_lines_for_orbit(U: UnitalModel, orbit: OrbitSet) -> list[LineId]:
    """The q lines [0, -1, s - lam*e]^t, s in GF(q), listed in s order.

    Each passes through [1, 0, 0], meets the orbit in exactly q+1 points,
    the q lines partition the orbit, and each line's unital points all lie
    in the orbit.
    """
    if orbit.lam is None:
        raise ValueError("partition lines are defined for canonical-frame orbits")
    ctx, plane = U.ctx, U.plane
    lam_eps = ctx.pack(0, orbit.lam)
    lines = [
        plane.line_id(0, ctx.neg(1), ctx.sub(s, lam_eps)) for s in range(ctx.q)
    ]
    corner = plane.point_id(1, 0, 0)
    in_orbit = np.zeros(plane.size, dtype=bool)
    in_orbit[np.asarray(orbit.points, dtype=np.int32)] = True
    covered: set[int] = set()
    for lid in lines:
        if not plane.incident(corner, lid):
            raise TheoremViolation("partition line misses [1,0,0]")
        row = plane.points_on(lid)
        hits = row[in_orbit[row]]
        if hits.size != ctx.q + 1:
            raise TheoremViolation(
                f"partition line meets the orbit in {hits.size} points; expected {ctx.q + 1}"
            )
        if covered & set(int(h) for h in hits):
            raise TheoremViolation("partition lines overlap on the orbit")
        covered.update(int(h) for h in hits)
        unital_hits = row[U.mask[row]]
        if not set(int(h) for h in unital_hits) <= set(orbit.points):
            raise TheoremViolation("a partition line meets the unital outside the orbit")
    if covered != set(orbit.points):
        raise TheoremViolation("partition lines do not cover the orbit")
    return lines


def orbit_line_census(U: UnitalModel, orbit: OrbitSet) -> IntersectionCensus:
    """Histogram of |line ∩ orbit| over every line of the plane."""
    return _census_of_point_set(U.plane, orbit.points)


def orbit_incidence_stats(U: UnitalModel, orbit: OrbitSet) -> dict:
    """Incidence statistics of the structure (orbit points, lines meeting the
    orbit in at least two points): line-size and point-degree distributions
    plus regularity flags (a tactical configuration needs both)."""
    plane = U.plane
    pts = np.asarray(orbit.points, dtype=np.int32)
    counts = np.bincount(plane.incidence[pts].ravel(), minlength=plane.size)
    sizes = counts[counts >= 2]
    degrees = (counts[plane.incidence[pts]] >= 2).sum(axis=1)
    size_dist = {int(s): int(c) for s, c in zip(*np.unique(sizes, return_counts=True))}
    degree_dist = {int(d): int(c) for d, c in zip(*np.unique(degrees, return_counts=True))}
    return {
        "points": int(pts.size),
        "lines": int(sizes.size),
        "line_size_distribution": size_dist,
        "point_degree_distribution": degree_dist,
        "line_regular": len(size_dist) == 1,
        "point_regular": len(degree_dist) == 1,
        "tactical": len(size_dist) == 1 and len(degree_dist) == 1,
    }
