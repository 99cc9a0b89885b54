"""Hyper-Fermat curves: generic lines, genus, branch parameters, moduli.

The curve is the preimage of a generic line T in projective n-space under
the coordinate-wise p-th power map.  It carries a C_p^n action with
signature (0; p^(n+1)); the branch points of the quotient are the
intersections of T with the coordinate hyperplanes, and their cross-ratio
coordinates are the moduli of the family.  The line is encoded by an
(n-1) x (n+1) matrix C with T = {X : CX = 0}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .cx import (DEFAULT_TOL, GaussianRational, Mobius, ProjPoint, cross_det,
                 exactify, is_exact_scalar, scalar_is_zero)
from .errors import PreconditionError
from .fp import is_prime


def _coerce_entries(entries):
    """Classify input scalars: all-rational data runs exactly, else complex."""
    flat = list(entries)
    if all(is_exact_scalar(x) for x in flat):
        return [exactify(x) for x in flat], True
    return [complex(x) for x in flat], False


@dataclass(frozen=True)
class LineMatrix:
    """(n-1) x (n+1) matrix whose kernel is a line in projective n-space."""

    rows: tuple[tuple[object, ...], ...]
    exact: bool

    @staticmethod
    def of(rows) -> "LineMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise PreconditionError("line matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise PreconditionError("line matrix rows have unequal length")
        if width != len(rows) + 2:
            raise PreconditionError(
                f"line matrix must be (n-1) x (n+1); got {len(rows)} x {width}")
        flat, exact = _coerce_entries(x for r in rows for x in r)
        it = iter(flat)
        coerced = tuple(tuple(next(it) for _ in range(width)) for _ in rows)
        return LineMatrix(coerced, exact)

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    def column(self, j: int):
        return [row[j] for row in self.rows]

    def to_json(self):
        out = []
        for row in self.rows:
            out.append([[complex(x).real, complex(x).imag] for x in row])
        return out


def vandermonde_line(w) -> LineMatrix:
    """Power rows (w_i^j, j = 0..n-2) of n+1 distinct parameters.

    Deleting any two columns leaves an invertible square Vandermonde matrix,
    so the resulting line is generic.
    """
    vals, exact = _coerce_entries(w)
    n = len(vals) - 1
    if n < 2:
        raise PreconditionError("need at least three parameters")
    for a, b in itertools.combinations(range(n + 1), 2):
        if vals[a] == vals[b]:
            raise PreconditionError(f"parameters {a} and {b} coincide")
    one = exactify(1) if exact else complex(1)
    rows = []
    power = [one] * (n + 1)
    for _ in range(n - 1):
        rows.append(tuple(power))
        power = [power[i] * vals[i] for i in range(n + 1)]
    return LineMatrix(tuple(rows), exact)


def _det(rows, exact: bool, tol: float):
    """Determinant by elimination; returns (value, hadamard_scale)."""
    m = [list(r) for r in rows]
    size = len(m)
    scale = 1.0
    for row in m:
        norm = sum(abs(complex(x)) ** 2 for x in row) ** 0.5
        scale *= max(norm, 1e-300)
    det = exactify(1) if exact else complex(1)
    sign = 1
    for c in range(size):
        piv = None
        if exact:
            for i in range(c, size):
                if not m[i][c].is_zero():
                    piv = i
                    break
        else:
            mags = [(abs(m[i][c]), i) for i in range(c, size)]
            best = max(mags)
            if best[0] > 0:
                piv = best[1]
        if piv is None:
            return (exactify(0) if exact else complex(0)), scale
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        det = det * m[c][c]
        invp = 1 / m[c][c]
        for i in range(c + 1, size):
            f = m[i][c] * invp
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det * sign, scale


def is_generic_line(line: LineMatrix, tol: float = DEFAULT_TOL) -> bool:
    """True iff every two-column deletion of C leaves an invertible matrix.

    Equivalently, the line misses all pairwise intersections of coordinate
    hyperplanes and lies in none of them.
    """
    n = line.n
    if n == 2:
        # a single 1 x 3 row: the three 1 x 1 minors are its entries
        return all(not scalar_is_zero(x, tol, max(abs(complex(y))
                                                  for y in line.rows[0]))
                   for x in line.rows[0])
    for drop in itertools.combinations(range(n + 1), 2):
        sub = [[row[j] for j in range(n + 1) if j not in drop]
               for row in line.rows]
        det, scale = _det(sub, line.exact, tol)
        if scalar_is_zero(det, tol, scale):
            return False
    return True


def hyper_fermat_genus(p: int, n: int) -> Fraction:
    """Genus of the degree-p^n cover of a generic line branched at n+1 points.

    Computed from the Riemann-Hurwitz relation
    2(sigma - 1) / p^n = -2 + (n+1)(1 - 1/p), i.e.
    sigma = 1 + p^(n-1) ((n-1) p - (n+1)) / 2.  (A frequently quoted variant
    with "+ (n+1)" instead of "- (n+1)" fails its own consistency checks:
    this form gives 1 for (p, n) = (3, 2) and 6 = (5-1)(5-2)/2 for (5, 2).)
    """
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    return 1 + Fraction(p ** (n - 1) * ((n - 1) * p - (n + 1)), 2)


def intersection_points(line: LineMatrix, tol: float = DEFAULT_TOL) -> list[list]:
    """For each i, the point Q_i spanning T meet {x_i = 0}.

    Q_i solves C Q = 0 with i-th coordinate zero; genericity makes it unique
    up to scale and keeps every other coordinate nonzero.  Scale is fixed by
    setting the first nonzero coordinate to 1.
    """
    if not is_generic_line(line, tol):
        raise PreconditionError("line is not generic")
    n = line.n
    out = []
    for i in range(n + 1):
        cols = [j for j in range(n + 1) if j != i]
        rows = [[row[j] for j in cols] for row in line.rows]
        sol = _nullspace_vector(rows, line.exact, tol)
        q = [None] * (n + 1)
        q[i] = exactify(0) if line.exact else complex(0)
        for idx, j in enumerate(cols):
            q[j] = sol[idx]
        first = next(j for j in range(n + 1)
                     if not scalar_is_zero(q[j], tol, _vec_scale(q)))
        inv = 1 / q[first]
        q = [x * inv for x in q]
        for j in range(n + 1):
            if j != i and scalar_is_zero(q[j], tol, _vec_scale(q)):
                raise PreconditionError(
                    f"intersection point {i} has an unexpected zero coordinate {j}")
        out.append(q)
    return out


def _vec_scale(vec) -> float:
    return max((abs(complex(x)) for x in vec if x is not None), default=1.0)


def _nullspace_vector(rows, exact: bool, tol: float):
    """One nonzero kernel vector of a k x (k+1) system of full row rank."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    assert ncols == nrows + 1
    scale = max((abs(complex(x)) for r in m for x in r), default=1.0)
    pivots = []
    prow = 0
    for c in range(ncols):
        piv = None
        if exact:
            for i in range(prow, nrows):
                if not m[i][c].is_zero():
                    piv = i
                    break
        else:
            mags = [(abs(m[i][c]), i) for i in range(prow, nrows)]
            if mags:
                best = max(mags)
                if best[0] > tol * max(scale, 1e-300):
                    piv = best[1]
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        invp = 1 / m[prow][c]
        m[prow] = [a * invp for a in m[prow]]
        for i in range(nrows):
            if i != prow:
                f = m[i][c]
                if not scalar_is_zero(f, 0.0 if exact else 1e-300, 1.0):
                    m[i] = [a - f * b for a, b in zip(m[i], m[prow])]
        pivots.append(c)
        prow += 1
    if prow != nrows:
        raise PreconditionError("system is rank deficient; line is not generic")
    free = next(c for c in range(ncols) if c not in pivots)
    sol = [exactify(0) if exact else complex(0)] * ncols
    sol[free] = exactify(1) if exact else complex(1)
    for rowi, c in enumerate(pivots):
        sol[c] = -m[rowi][free]
    return sol


def as_proj_point(x, exact: bool) -> ProjPoint:
    """Coerce a scalar or the string 'inf' onto the projective line."""
    if isinstance(x, ProjPoint):
        return x
    if isinstance(x, str) and x.strip() in ("inf", "oo", "infinity"):
        return ProjPoint.infinity(exact=exact)
    if exact and is_exact_scalar(x):
        return ProjPoint.finite(exactify(x))
    return ProjPoint(complex(x), complex(1))


@dataclass(frozen=True)
class BranchSet:
    """The n+1 branch parameters of the quotient map, with pin bookkeeping."""

    points: tuple[ProjPoint, ...]
    pins: tuple[ProjPoint, ...]
    pin_indices: tuple[int, int, int]
    u1: ProjPoint
    exact: bool
    tol: float

    @property
    def count(self) -> int:
        return len(self.points)

    def normalized_invariants(self) -> tuple[ProjPoint, ...]:
        """Images of the unpinned points after sending the pins to 0, 1, inf.

        These n - 2 values are a complete set of cross-ratio coordinates for
        the branch set: the dimension of the family.
        """
        i0, i1, i2 = self.pin_indices
        to_std = Mobius.to_standard(self.points[i0], self.points[i1],
                                    self.points[i2], tol=self.tol)
        return tuple(to_std.apply(pt) for i, pt in enumerate(self.points)
                     if i not in self.pin_indices)

    def to_json(self):
        return {"lambdas": [pt.to_json() for pt in self.points],
                "pins": [pt.to_json() for pt in self.pins],
                "pin_indices": list(self.pin_indices)}


def branch_points(line: LineMatrix, pins, tol: float = DEFAULT_TOL) -> BranchSet:
    """Branch parameters lambda_i with the first three pinned as requested.

    Writing Q_2 = c_2 Q_0 + d_2 Q_1, the parameterisation sending Q_0, Q_1,
    Q_2 to the pins carries (Q_1(i) : -Q_0(i)) to lambda_i; with finite pins
    this is exactly
    lambda_i = (lambda_1 u_1 Q_0(i) - lambda_0 Q_1(i)) / (u_1 Q_0(i) - Q_1(i))
    with u_1 = c_2 (lambda_0 - lambda_2) / (d_2 (lambda_2 - lambda_1)); pins
    at infinity are the projective limits of the same formula.
    """
    if len(pins) != 3:
        raise PreconditionError("exactly three pin values are required")
    pin_pts = tuple(as_proj_point(x, line.exact) for x in pins)
    for a, b in itertools.combinations(pin_pts, 2):
        if a.same_point(b, tol):
            raise PreconditionError("pin values must be pairwise distinct")
    q = intersection_points(line, tol)
    one = exactify(1) if line.exact else complex(1)
    zero = exactify(0) if line.exact else complex(0)
    c2 = q[2][1] / q[0][1]
    d2 = q[2][0] / q[1][0]
    src = (ProjPoint(one, zero), ProjPoint(zero, one), ProjPoint(c2, d2))
    mob = Mobius.through(src, pin_pts, tol=tol)
    pts = list(pin_pts)
    for i in range(3, line.n + 1):
        pts.append(mob.apply(ProjPoint(q[1][i], -1 * q[0][i])))
    for a, b in itertools.combinations(pts, 2):
        if a.same_point(b, tol):
            raise PreconditionError("branch parameters collide; data is degenerate")
    p0, p1, p2 = pin_pts
    u1 = ProjPoint(c2 * cross_det(p0, p2) * p1.den,
                   d2 * cross_det(p2, p1) * p0.den)
    return BranchSet(tuple(pts), pin_pts, (0, 1, 2), u1, line.exact, tol)


def residue_identity_check(w, s: int):
    """Magnitude of sum_{j>=1} w_j^s / prod_{k>=1, k!=j} (w_j - w_k).

    The sum of residues of z^s / prod (z - w_k) vanishes for s <= n - 2; at
    s = n - 1 it is generically 1 (the residue at infinity), which callers
    use as a negative control.  Exact inputs give an exact magnitude.
    """
    vals, exact = _coerce_entries(w)
    n = len(vals) - 1
    if s < 0:
        raise PreconditionError("s must be >= 0")
    total = exactify(0) if exact else complex(0)
    for j in range(1, n + 1):
        term = vals[j] ** s
        for k in range(1, n + 1):
            if k != j:
                term = term / (vals[j] - vals[k])
        total = total + term
    if exact:
        return total.magnitude_l1()
    return abs(total)


def moduli_equivalent(b1: BranchSet, b2: BranchSet, tol: float = DEFAULT_TOL) -> bool:
    """Whether some fractional linear map carries one branch set onto the other.

    Pins three points of the first set to every ordered triple of the second
    and compares images as sets; n = 2 (three points each) is always
    equivalent, reflecting the zero-dimensional moduli there.
    """
    if b1.count != b2.count:
        return False
    src = b1.points[:3]
    rest = b1.points
    for triple in itertools.permutations(range(b2.count), 3):
        try:
            mob = Mobius.through(src, tuple(b2.points[i] for i in triple), tol=tol)
        except PreconditionError:
            continue
        images = [mob.apply(pt) for pt in rest]
        used = [False] * b2.count
        ok = True
        for img in images:
            hit = next((j for j in range(b2.count)
                        if not used[j] and img.same_point(b2.points[j], tol)), None)
            if hit is None:
                ok = False
                break
            used[hit] = True
        if ok:
            return True
    return False


@dataclass(frozen=True)
class HyperFermatSpec:
    """A hyper-Fermat curve: prime degree, rank, and a generic line."""

    p: int
    n: int
    line: LineMatrix

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")
        if self.n < 2:
            raise PreconditionError("n must be >= 2")
        if self.line.n != self.n:
            raise PreconditionError(
                f"line matrix is for ambient dimension {self.line.n}, not {self.n}")
        if not is_generic_line(self.line):
            raise PreconditionError("line is not generic")

    @property
    def genus(self) -> Fraction:
        return hyper_fermat_genus(self.p, self.n)


def power_map_jacobian(line: LineMatrix, p: int, point) -> list[list[complex]]:
    """Gradient matrix of the defining equations sum_j c_ij x_j^p at a point."""
    x = [complex(v) for v in point]
    return [[p * complex(c) * x[j] ** (p - 1) for j, c in enumerate(row)]
            for row in line.rows]


@dataclass(frozen=True)
class SmoothnessReport:
    p: int
    n: int
    samples: int
    max_equation_residual: float
    min_jacobian_rank: int
    max_minor_identity_error: float
    failures: tuple[str, ...]
    seed: int

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "p": self.p, "n": self.n, "samples": self.samples,
            "max_equation_residual": self.max_equation_residual,
            "min_jacobian_rank": self.min_jacobian_rank,
            "max_minor_identity_error": self.max_minor_identity_error,
            "failures": list(self.failures), "seed": self.seed,
            "passed": self.passed,
        }


def sample_and_check_smoothness(spec: HyperFermatSpec, count: int = 50,
                                seed: int = 0, tol: float = 1e-7) -> SmoothnessReport:
    """Sample the curve through p-th root lifts and test the smoothness data.

    Each sample point X satisfies the defining equations by construction;
    the checks are that the residuals stay at rounding scale, that the
    gradient matrix has full rank n - 1, and that its two-column-deleted
    minors factor as p^(n-1) (prod x_j^(p-1)) det(C'').
    """
    import numpy as np

    rng = random.Random(seed)
    p, n = spec.p, spec.n
    cmat = np.array([[complex(c) for c in row] for row in spec.line.rows])
    q = intersection_points(spec.line)
    q0 = np.array([complex(v) for v in q[0]])
    q1 = np.array([complex(v) for v in q[1]])
    failures = []
    max_res = 0.0
    min_rank = n - 1
    max_minor = 0.0
    done = 0
    while done < count:
        t = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        pt = q0 + t * q1
        scale = float(np.max(np.abs(pt)))
        if scale < 1e-12 or float(np.min(np.abs(pt))) < 1e-6 * scale:
            continue  # too close to a branch point for a clean lift
        roots = np.array([
            v ** (1.0 / p) * np.exp(2j * np.pi * rng.randrange(p) / p)
            for v in pt])
        done += 1
        f = cmat @ (roots ** p)
        res = float(np.max(np.abs(f)) / max(scale, 1e-300))
        max_res = max(max_res, res)
        if res > tol:
            failures.append(f"sample {done}: equation residual {res:.3e}")
        g = p * cmat * (roots ** (p - 1))[None, :]
        svals = np.linalg.svd(g, compute_uv=False)
        rank = int(np.sum(svals > tol * svals[0])) if svals[0] > 0 else 0
        min_rank = min(min_rank, rank)
        if rank < n - 1:
            failures.append(f"sample {done}: gradient rank {rank} < {n - 1}")
        keep = sorted(np.argsort(np.abs(roots))[2:])
        gsub = g[:, keep]
        csub = cmat[:, keep]
        lhs = np.linalg.det(gsub)
        rhs = p ** (n - 1) * np.prod(roots[keep] ** (p - 1)) * np.linalg.det(csub)
        denom = max(abs(lhs), abs(rhs), 1e-300)
        err = float(abs(lhs - rhs) / denom)
        max_minor = max(max_minor, err)
        if err > tol:
            failures.append(f"sample {done}: minor identity error {err:.3e}")
    return SmoothnessReport(p, n, done, max_res, min_rank, max_minor,
                            tuple(failures), seed)
