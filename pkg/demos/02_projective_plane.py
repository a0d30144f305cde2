"""The plane PG(2, q^2): points, lines, incidence, join and meet.

Points and lines are integer ids over canonical normalized triples
(leftmost non-zero coordinate equal to 1); id i names both the point and
the line with that triple, and one incidence array serves both readings.
"""

from unital_lab import ProjectivePlane, build_field_ctx

ctx = build_field_ctx(3, 1)
plane = ProjectivePlane(ctx)
q = ctx.q

print(f"PG(2, {q}^2): {plane.size} points and {plane.size} lines  (q^4+q^2+1 = {q**4+q**2+1})")
print(f"each line carries q^2+1 = {plane.incidence.shape[1]} points")

P = plane.point_id(1, 2, ctx.eps)
print(f"\nnormalized id of [1,2,e] -> {P} = {plane.format_point(P)}")
print("scaling by any c != 0 gives the same id:",
      all(plane.point_id(ctx.mul(c, 1), ctx.mul(c, 2), ctx.mul(c, ctx.eps)) == P
          for c in range(1, ctx.q2)))

A, B = plane.point_id(1, 0, 0), plane.point_id(0, 1, 0)
line = plane.join(A, B)
print(f"\njoin([1,0,0], [0,1,0]) = {plane.format_line(line, human=True)}")
print("points on it:", ", ".join(plane.format_point(int(x)) for x in plane.points_on(line)))

m = plane.meet(plane.line_id(0, 0, 1), plane.line_id(0, 1, 0))
print(f"meet([0,0,1]^t, [0,1,0]^t) = {plane.format_point(m)}")

# Duality: the incidence form a*x + b*y + c*z is symmetric in the two
# triples, so "point i on line j" and "point j on line i" coincide.
print("\nduality spot check:",
      all(plane.incident(i, j) == plane.incident(j, i) for i in range(0, 91, 7) for j in range(0, 91, 5)))

print("lines through the infinity point [0,1,0]:",
      [plane.format_line(int(l), human=True) for l in plane.lines_through(plane.infinity_point)[:4]], "...")
