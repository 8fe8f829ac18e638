"""Rational simplicial fans given by ray directions and maximal cones.

Cones are sorted tuples of ray indices; the zero cone is the empty tuple.
All geometry is exact over the rationals. Completeness is decided by the
wall count, connectivity of the wall graph, and deterministic point probes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegenerateImage, Diagnostic


def _as_vector(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class SimplicialFan:
    ambient_dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(_as_vector(r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_dim:
                raise ValueError("ray has wrong length")
        cones = tuple(tuple(sorted(set(int(i) for i in c)))
                      for c in self.max_cones)
        for c in cones:
            for i in c:
                if not 0 <= i < len(rays):
                    raise ValueError(f"cone references unknown ray {i}")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    def faces(self):
        """All cones of the fan as a sorted list of ray-index tuples."""
        seen = {()}
        for c in self.max_cones:
            for k in range(1, len(c) + 1):
                for sub in itertools.combinations(c, k):
                    seen.add(sub)
        return sorted(seen, key=lambda f: (len(f), f))

    def is_face(self, cone) -> bool:
        cone = tuple(sorted(cone))
        return any(set(cone) <= set(c) for c in self.max_cones)

    def ray_matrix(self, cone):
        """Columns are the ray directions of the cone."""
        return [[self.rays[i][r] for i in cone] for r in range(self.ambient_dim)]

    def cone_coefficients(self, cone, point):
        """Coefficients of point over the cone's rays, or None.

        Returns the unique list a with point = sum a_i * ray_i and all
        a_i >= 0, or None when the point is outside the cone.
        """
        cone = tuple(sorted(cone))
        point = _as_vector(point)
        if not cone:
            return [] if all(x == 0 for x in point) else None
        sol = linalg.solve_exact(self.ray_matrix(cone), list(point))
        if sol is None or any(a < 0 for a in sol):
            return None
        return sol

    def minimal_cone(self, points):
        """Smallest cone containing every point, or None.

        The result is the cone spanned by the union of the supports of the
        points' coefficient vectors inside any containing maximal cone.
        """
        pts = [_as_vector(p) for p in points]
        for c in self.max_cones:
            coeffs = [self.cone_coefficients(c, p) for p in pts]
            if any(x is None for x in coeffs):
                continue
            support = set()
            for a in coeffs:
                support.update(c[i] for i, x in enumerate(a) if x != 0)
            return tuple(sorted(support))
        return None

    def link(self, cone):
        """Cones disjoint from the given one whose join with it is a face."""
        cone = tuple(sorted(cone))
        out = []
        for f in self.faces():
            if set(f) & set(cone):
                continue
            if self.is_face(tuple(sorted(set(f) | set(cone)))):
                out.append(f)
        return out

    def link_rays(self, cone):
        return tuple(sorted(i for (i,) in
                            (f for f in self.link(cone) if len(f) == 1)))

    def quotient(self, sigma, projection):
        """Image fan under a rational projection killing span(sigma).

        Returns (fan, link_rays): the quotient fan and the original indices
        of its rays in order. The identity is returned for the zero cone.
        """
        sigma = tuple(sorted(sigma))
        if not sigma:
            return self, tuple(range(self.num_rays))
        new_dim = len(projection)
        lrays = self.link_rays(sigma)
        new_rays = []
        for i in lrays:
            img = _as_vector(linalg.mat_vec(projection, list(self.rays[i])))
            if all(x == 0 for x in img):
                raise DegenerateImage(f"link ray {i} projects to zero")
            new_rays.append(img)
        pos = {i: j for j, i in enumerate(lrays)}
        new_cones = []
        for c in self.max_cones:
            if set(sigma) <= set(c):
                new_cones.append(tuple(pos[i] for i in c if i not in sigma))
        fan = SimplicialFan(new_dim, tuple(new_rays), tuple(new_cones))
        return fan, lrays

    def validate(self):
        """Structural checks; returns a list of Diagnostic findings."""
        out = []
        for i, r in enumerate(self.rays):
            if all(x == 0 for x in r):
                out.append(Diagnostic("NotSimplicial", f"ray {i} is zero"))
        for c in self.max_cones:
            if linalg.rank(self.ray_matrix(c)) != len(c):
                out.append(Diagnostic(
                    "NotSimplicial",
                    f"cone {c} has linearly dependent rays"))
        if out:
            return out
        for a in range(len(self.max_cones)):
            for b in range(a + 1, len(self.max_cones)):
                ca, cb = self.max_cones[a], self.max_cones[b]
                if set(ca) <= set(cb) or set(cb) <= set(ca):
                    out.append(Diagnostic(
                        "BadIntersection",
                        f"cones {ca} and {cb} are nested"))
                    continue
                if not self._meets_along_common_face(ca, cb):
                    out.append(Diagnostic(
                        "BadIntersection",
                        f"cones {ca} and {cb} do not meet along a face"))
        return out

    def _meets_along_common_face(self, ca, cb) -> bool:
        # intersection of the two cones must equal the cone on shared rays;
        # check every extreme ray of {(a,b) >= 0 : A a = B b} maps inside it
        common = tuple(sorted(set(ca) & set(cb)))
        amat = self.ray_matrix(ca)
        bmat = self.ray_matrix(cb)
        k1, k2 = len(ca), len(cb)
        rows = [[amat[r][i] for i in range(k1)] +
                [-bmat[r][j] for j in range(k2)]
                for r in range(self.ambient_dim)]
        for vec in _extreme_rays_nonneg_kernel(rows, k1 + k2):
            point = [sum(amat[r][i] * vec[i] for i in range(k1))
                     for r in range(self.ambient_dim)]
            if self.cone_coefficients(common, point) is None:
                return False
        return True

    def is_complete(self) -> bool:
        """Exact completeness test for a validated fan."""
        d = self.ambient_dim
        if d == 0:
            return () in self.max_cones
        if not self.max_cones:
            return False
        if any(len(c) != d for c in self.max_cones):
            return False
        walls = {}
        for idx, c in enumerate(self.max_cones):
            for w in itertools.combinations(c, d - 1):
                walls.setdefault(w, []).append(idx)
        if any(len(owners) != 2 for owners in walls.values()):
            return False
        adj = {i: set() for i in range(len(self.max_cones))}
        for owners in walls.values():
            a, b = owners
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                for j in adj[i]:
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        if len(seen) != len(self.max_cones):
            return False
        probes = [tuple(s) for s in itertools.product((-1, 1), repeat=d)]
        for i in range(d):
            e = [0] * d
            e[i] = 1
            probes.append(tuple(e))
            probes.append(tuple(-x for x in e))
        return all(self.minimal_cone([p]) is not None for p in probes)


def _extreme_rays_nonneg_kernel(rows, ncols):
    """Extreme rays of {x >= 0 : rows @ x = 0}, by minimal-support search."""
    rays = []
    supports = []
    for size in range(1, ncols + 1):
        for sub in itertools.combinations(range(ncols), size):
            if any(s <= set(sub) for s in supports):
                continue
            cols = [[row[j] for j in sub] for row in rows]
            null = linalg.nullspace(cols)
            if len(null) != 1:
                continue
            v = null[0]
            if all(x > 0 for x in v):
                pass
            elif all(x < 0 for x in v):
                v = [-x for x in v]
            else:
                continue
            full = [Fraction(0)] * ncols
            for j, x in zip(sub, v):
                full[j] = x
            rays.append(full)
            supports.append(set(sub))
    return rays
