"""Bundled arrangement corpus.

Most members are classical: Boolean, the essentialized rank-3 braid, and
generic arrangements with Vandermonde-style rows (every square submatrix of
maximal size is nonsingular, so genericity holds by construction and is also
verified through the lattice).

The nine-line pair is constructed, not copied: two line arrangements with
the same intersection lattice (six triple points, every line through exactly
two of them, the joins of the two classes of a 3+3 bipartite incidence
structure), distinguished by whether the six triple points lie on a conic.
Construction is only trusted after exact verification: the lattice must
consist of exactly six triple flats plus double points, the two lattices
must be isomorphic as labeled set systems, and the conic condition is an
exact 6x6 determinant test (zero for the on-conic member, nonzero for the
other).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from logarr.arrangement import (Arrangement, ArrangementError,
                                add_generic_hyperplane, build_lattice,
                                lattice_isomorphic)


def boolean(l: int) -> Arrangement:
    """Coordinate hyperplanes x_1 ... x_l."""
    rows = []
    for i in range(l):
        row = [0] * l
        row[i] = 1
        rows.append(row)
    return Arrangement.from_rows(rows, l=l)


def braid3() -> Arrangement:
    """Rank-3 essentialization of the braid arrangement on four strands:
    the six forms x_i - x_j written in root coordinates."""
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1),
            (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    return Arrangement.from_rows(rows)


def generic(n: int, l: int) -> Arrangement:
    """n hyperplanes in general position: moment-curve rows (1, s, s^2, ...),
    every min(k, l)-subset of rows has full rank (Vandermonde minors)."""
    if n < l:
        raise ArrangementError("generic arrangement needs n >= l")
    rows = [tuple(s ** k for k in range(l)) for s in range(1, n + 1)]
    return Arrangement.from_rows(rows)


def near_pencil(n: int) -> Arrangement:
    """n lines in rank 3 with n-1 through a common point: free, exponents
    (1, 1, n-2)."""
    rows = [(1, 0, 0), (0, 1, 0)] + [(1, k, 0) for k in range(1, n - 2)] + [(0, 0, 1)]
    return Arrangement.from_rows(rows)


# -- the nine-line pair ---------------------------------------------------------

def _conic_point(s):
    """Rational point (1, s, s^2) on the conic xz = y^2."""
    s = Fraction(s)
    return (Fraction(1), s, s * s)


def _join(P, Q):
    """Line through two projective points, as a primitive integer form."""
    a = P[1] * Q[2] - P[2] * Q[1]
    b = P[2] * Q[0] - P[0] * Q[2]
    c = P[0] * Q[1] - P[1] * Q[0]
    den = 1
    for x in (a, b, c):
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in (a, b, c)]
    from functools import reduce
    g = reduce(gcd, (abs(v) for v in ints))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


# the bipartite incidence structure: lines join each point of {0,1,2} to each
# point of {3,4,5}; every vertex lies on three lines, every line on two vertices
_EDGES = tuple((i, j) for i in (0, 1, 2) for j in (3, 4, 5))

# conic parameters for the on-conic member; the off-conic member moves the
# last point off the conic, keeping every designated triple intact (the lines
# are redefined as joins of the moved points)
_PARAMS = (0, 1, 2, 3, 4, 6)
_OFF_POINT = (Fraction(1), Fraction(6), Fraction(41))


def _nine_line_points(on_conic: bool):
    pts = [_conic_point(s) for s in _PARAMS]
    if not on_conic:
        pts[5] = _OFF_POINT
    return pts


def conic_determinant(points):
    """6x6 determinant of conic evaluations (x^2, xy, y^2, xz, yz, z^2);
    zero exactly when the six points lie on a conic."""
    m = [[Fraction(x * x), Fraction(x * y), Fraction(y * y),
          Fraction(x * z), Fraction(y * z), Fraction(z * z)]
         for (x, y, z) in points]
    det = Fraction(1)
    n = len(m)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for r in range(k + 1, n):
            if m[r][k]:
                f = m[r][k] * inv
                for cc in range(k, n):
                    m[r][cc] -= f * m[k][cc]
    return det


def _verify_nine_line_lattice(A: Arrangement):
    """Exactly six triple points (the designated ones) and 18 double points."""
    L = build_lattice(A)
    flats2 = L.flats_of_codim(2)
    triples = [f for f in flats2 if len(f.hyperplanes) == 3]
    doubles = [f for f in flats2 if len(f.hyperplanes) == 2]
    if len(triples) != 6 or len(doubles) != 18 or len(flats2) != 24:
        raise ArrangementError(
            f"nine-line construction degenerated: {len(triples)} triples, "
            f"{len(doubles)} doubles")
    expected = {frozenset(i for i, e in enumerate(_EDGES) if v in e)
                for v in range(6)}
    if {f.hyperplanes for f in triples} != expected:
        raise ArrangementError("triple points do not match the designated vertices")


@lru_cache(maxsize=None)
def nine_line_pair():
    """The verified pair (off-conic member, on-conic member).

    Raises if the lattices degenerate, fail to be isomorphic, or the conic
    determinant does not separate the two members."""
    members = []
    for on_conic in (False, True):
        pts = _nine_line_points(on_conic)
        rows = [_join(pts[i], pts[j]) for i, j in _EDGES]
        A = Arrangement.from_rows(rows, labels=[f"L{i}{j}" for i, j in _EDGES])
        _verify_nine_line_lattice(A)
        det = conic_determinant(pts)
        if on_conic and det != 0:
            raise ArrangementError("on-conic member: triple points are not on a conic")
        if not on_conic and det == 0:
            raise ArrangementError("off-conic member: triple points lie on a conic")
        members.append(A)
    if lattice_isomorphic(members[0], members[1]) is None:
        raise ArrangementError("nine-line pair: lattices are not isomorphic")
    return tuple(members)


def ziegler(i: int) -> Arrangement:
    """Member i of the nine-line pair: i = 1 off-conic, i = 2 on-conic."""
    if i not in (1, 2):
        raise ArrangementError("pair index must be 1 or 2")
    return nine_line_pair()[i - 1]


def ziegler_plus(i: int, seed: int = 0) -> Arrangement:
    """Cone of the pair member into one more dimension plus a verified
    generic tenth hyperplane: rank 4, ten hyperplanes."""
    return add_generic_hyperplane(ziegler(i), seed=seed)


CORPUS = {
    "boolean2": lambda: boolean(2),
    "boolean3": lambda: boolean(3),
    "boolean4": lambda: boolean(4),
    "braid3": braid3,
    "generic43": lambda: generic(4, 3),
    "generic53": lambda: generic(5, 3),
    "generic63": lambda: generic(6, 3),
    "generic73": lambda: generic(7, 3),
    "generic54": lambda: generic(5, 4),
    "generic64": lambda: generic(6, 4),
    "nearpencil5": lambda: near_pencil(5),
    "ziegler1": lambda: ziegler(1),
    "ziegler2": lambda: ziegler(2),
    "ziegler1+": lambda: ziegler_plus(1),
    "ziegler2+": lambda: ziegler_plus(2),
}


def load(name: str) -> Arrangement:
    try:
        return CORPUS[name]()
    except KeyError:
        raise ArrangementError(
            f"unknown corpus member {name!r}; available: {', '.join(sorted(CORPUS))}")
