"""Central hyperplane arrangements and their combinatorics.

An arrangement is an ordered list of n nonzero linear forms (rows) in l
variables, no two proportional.  All invariants downstream are driven by the
intersection lattice: flats ordered by reverse inclusion, identified by the
reduced row echelon basis of their stacked forms, with Mobius values from the
standard recursion mu(V) = 1, sum_{Y <= X} mu(Y) = 0.

Conventions:

* flats of codimension c are built by intersecting codim c-1 flats with
  single hyperplanes and deduplicating, not by scanning all 2^n subsets;
* the Poincare polynomial is sum_X mu(X) (-t)^codim(X), always with
  nonnegative integer coefficients, and divisible by (1+t) for a nonempty
  central arrangement; the projective Poincare polynomial is the quotient;
* "generic extension" means a new last coordinate plus a random hyperplane
  whose transversality against every existing flat is verified exactly
  (rank increase by one), retried with fresh randomness if it fails.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from logarr.exact.laurent import poly_divexact, poly_eval
from logarr.exact.linalg import RationalMatrix, rank as matrix_rank, sparse_rank


class ArrangementError(ValueError):
    pass


def _parse_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ArrangementError(f"cannot parse rational from {x!r}")


@dataclass(frozen=True)
class Arrangement:
    """Central simple arrangement: rows of defining linear forms."""

    l: int
    forms: tuple
    labels: tuple

    @classmethod
    def from_rows(cls, rows, labels=None, l=None):
        forms = tuple(tuple(_parse_rational(x) for x in row) for row in rows)
        if l is None:
            if not forms:
                raise ArrangementError("empty arrangement needs explicit dimension")
            l = len(forms[0])
        for row in forms:
            if len(row) != l:
                raise ArrangementError("row length differs from ambient dimension")
            if not any(row):
                raise ArrangementError("zero row is not a hyperplane")
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                if _proportional(forms[i], forms[j]):
                    raise ArrangementError(f"rows {i} and {j} are proportional")
        if labels is None:
            labels = tuple(f"H{i}" for i in range(len(forms)))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != len(forms):
                raise ArrangementError("label count mismatch")
        return cls(l=l, forms=forms, labels=labels)

    @property
    def n(self):
        return len(self.forms)

    def rank(self):
        return matrix_rank(RationalMatrix(self.forms)) if self.forms else 0

    def is_essential(self):
        return self.rank() == self.l

    def defining_polynomial(self):
        from logarr.exact.multipoly import MultiPoly
        f = MultiPoly.constant(self.l, 1)
        for row in self.forms:
            f = f * MultiPoly.linear_form(row)
        return f

    # -- JSON round trip ------------------------------------------------------

    def to_json(self):
        return json.dumps({
            "l": self.l,
            "hyperplanes": [[str(x) for x in row] for row in self.forms],
            "labels": list(self.labels),
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ArrangementError(f"invalid JSON at line {e.lineno}: {e.msg}") from e
        if not isinstance(data, dict) or "l" not in data or "hyperplanes" not in data:
            raise ArrangementError('input must be an object with fields "l" and "hyperplanes"')
        return cls.from_rows(data["hyperplanes"], labels=data.get("labels"), l=int(data["l"]))

    def __repr__(self):
        return f"Arrangement(n={self.n}, l={self.l})"


def _proportional(u, v):
    iu = next((i for i, x in enumerate(u) if x), None)
    iv = next((i for i, x in enumerate(v) if x), None)
    if iu != iv:
        return False
    c = v[iu] / u[iu]
    return all(x * c == y for x, y in zip(u, v))


def _rref_rows(rows, l):
    """Reduced row echelon basis of the row space, as tuples of Fractions."""
    work = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(l):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        work[r] = [x / lead for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                m = work[i][c]
                work[i] = [x - m * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def _in_rowspace(form, rref, pivots):
    """Does a linear form lie in the span of RREF rows?"""
    v = list(map(Fraction, form))
    for row, c in zip(rref, pivots):
        if v[c]:
            m = v[c]
            v = [x - m * y for x, y in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class Flat:
    """Closed flat: hyperplanes containing a subspace, with its codimension.

    Identity (hash/eq) is the canonical RREF basis of the stacked forms."""

    codim: int
    hyperplanes: frozenset
    basis: tuple      # RREF rows spanning the annihilator of the subspace
    kernel: tuple     # basis of the subspace itself

    def __repr__(self):
        hs = ",".join(str(i) for i in sorted(self.hyperplanes))
        return f"Flat(codim={self.codim}, H={{{hs}}})"


@dataclass(frozen=True)
class IntersectionLattice:
    arrangement: Arrangement
    flats: tuple              # all flats, by increasing codim
    mobius: tuple             # mu values, aligned with flats
    covers: tuple             # tuple of tuples of flat indices covered by each flat

    def flats_of_codim(self, c):
        return tuple(f for f in self.flats if f.codim == c)

    def mobius_of(self, flat):
        return self.mobius[self.flats.index(flat)]

    @property
    def rank(self):
        return max((f.codim for f in self.flats), default=0)


def _kernel_basis(rows, l):
    if not rows:
        ident = []
        for i in range(l):
            v = [Fraction(0)] * l
            v[i] = Fraction(1)
            ident.append(tuple(v))
        return tuple(ident)
    from logarr.exact.linalg import rank_and_kernel
    _, ker = rank_and_kernel(RationalMatrix(rows))
    return tuple(ker)


@lru_cache(maxsize=None)
def build_lattice(A: Arrangement) -> IntersectionLattice:
    """All intersections of subsets of hyperplanes, with closure and Mobius values."""
    l = A.l
    top = Flat(codim=0, hyperplanes=frozenset(),
               basis=(), kernel=_kernel_basis([], l))
    by_key = {(): top}
    layers = [[top]]
    r = A.rank()
    for c in range(1, r + 1):
        seen = {}
        for flat in layers[c - 1]:
            for h in range(A.n):
                if h in flat.hyperplanes:
                    continue
                stacked = [A.forms[i] for i in sorted(flat.hyperplanes)] + [A.forms[h]]
                rref, pivots = _rref_rows(stacked, l)
                if len(rref) != c:
                    continue
                if rref in seen:
                    continue
                members = frozenset(i for i in range(A.n)
                                    if _in_rowspace(A.forms[i], rref, pivots))
                seen[rref] = Flat(codim=c, hyperplanes=members, basis=rref,
                                  kernel=_kernel_basis(list(rref), l))
        layers.append(sorted(seen.values(), key=lambda f: sorted(f.hyperplanes)))
    flats = tuple(f for layer in layers for f in layer)
    index = {f: i for i, f in enumerate(flats)}
    # order: X <= Y iff hyperplanes(X) subset hyperplanes(Y) (closed flats)
    below = []
    for f in flats:
        below.append([index[g] for g in flats
                      if g.codim < f.codim and g.hyperplanes <= f.hyperplanes])
    mobius = [0] * len(flats)
    for i, f in enumerate(flats):
        if f.codim == 0:
            mobius[i] = 1
        else:
            mobius[i] = -sum(mobius[j] for j in below[i])
    covers = []
    for i, f in enumerate(flats):
        covers.append(tuple(j for j in below[i] if flats[j].codim == f.codim - 1))
    return IntersectionLattice(arrangement=A, flats=flats,
                               mobius=tuple(mobius), covers=tuple(covers))


def poincare_poly(L: IntersectionLattice):
    """pi(A, t) = sum_X mu(X) (-t)^codim(X), as an int coefficient list."""
    r = L.rank
    coeffs = [0] * (r + 1)
    for f, mu in zip(L.flats, L.mobius):
        coeffs[f.codim] += mu * (-1) ** f.codim
    if any(c < 0 for c in coeffs):
        raise ArrangementError("Poincare coefficients must be nonnegative")
    return coeffs


def poincare_proj(pi):
    """pi(PA, t) = pi(A, t)/(1+t); non-divisibility signals a non-central input."""
    try:
        q = poly_divexact(pi, [1, 1])
    except ValueError as e:
        raise ArrangementError("Poincare polynomial not divisible by (1+t)") from e
    return [int(c) for c in q]


def beta_invariant(pi_proj, l):
    """B = (-1)^(l-1) pi(PA, -1)."""
    return (-1) ** (l - 1) * poly_eval(pi_proj, -1)


def localization(A: Arrangement, flat: Flat) -> Arrangement:
    """Subarrangement of the hyperplanes containing the flat."""
    idx = sorted(flat.hyperplanes)
    if not idx:
        raise ArrangementError("localization at the ambient space is empty")
    return Arrangement.from_rows([A.forms[i] for i in idx],
                                 labels=[A.labels[i] for i in idx], l=A.l)


def flat_of(A: Arrangement, hyperplanes) -> Flat:
    """The closed flat spanned by a set of hyperplane indices."""
    L = build_lattice(A)
    hs = set(hyperplanes)
    cands = [f for f in L.flats if hs <= f.hyperplanes]
    cands.sort(key=lambda f: f.codim)
    for f in cands:
        if f.codim == matrix_rank(RationalMatrix([A.forms[i] for i in hs])):
            return f
    raise ArrangementError("no such flat")


def restriction(A: Arrangement, h: int) -> Arrangement:
    """Restriction to hyperplane h: substitute out one variable via its form,
    then deduplicate proportional images (the restriction is a set)."""
    if not 0 <= h < A.n:
        raise ArrangementError("hyperplane index out of range")
    alpha = A.forms[h]
    k = max(i for i, a in enumerate(alpha) if a)
    ak = alpha[k]
    rows, labels = [], []
    for i in range(A.n):
        if i == h:
            continue
        row = list(A.forms[i])
        ck = row[k]
        new = [row[j] - ck * alpha[j] / ak for j in range(A.l) if j != k]
        if not any(new):
            continue
        cand = _primitive(new)
        if all(not _proportional(cand, r) for r in rows):
            rows.append(cand)
            labels.append(A.labels[i])
    return Arrangement.from_rows(rows, labels=labels, l=A.l - 1)


def _primitive(row):
    lead = next(x for x in row if x)
    return tuple(Fraction(x) / lead for x in row)


def essentialize(A: Arrangement) -> Arrangement:
    """Quotient by the common center: rewrite every form over an RREF basis of
    the row space.  The intersection lattice is unchanged."""
    rref, pivots = _rref_rows(A.forms, A.l)
    r = len(rref)
    if r == A.l:
        return A
    # coordinates of each form over the RREF basis can be read off at pivots
    rows = [tuple(form[c] for c in pivots) for form in A.forms]
    return Arrangement.from_rows(rows, labels=A.labels, l=r)


def is_k_generic(A: Arrangement, k: int) -> bool:
    """True iff every codimension-k flat contains exactly k hyperplanes."""
    L = build_lattice(A)
    return all(len(f.hyperplanes) == k for f in L.flats_of_codim(k))


def add_generic_hyperplane(A: Arrangement, seed: int = 0, max_tries: int = 64) -> Arrangement:
    """Extend the ambient space by one coordinate and add a verified-generic
    hyperplane: its form must increase the rank of every existing flat by one.

    Genericity is certified exactly, never assumed; sampling retries with a
    growing coefficient range.
    """
    rng = random.Random(seed)
    L = build_lattice(A)
    lifted = [tuple(row) + (Fraction(0),) for row in A.forms]
    bound = 3
    for attempt in range(max_tries):
        new = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(A.l)) \
            + (Fraction(rng.randint(1, bound)),)
        ok = True
        for f in L.flats:
            if f.codim == 0:
                continue
            stacked = [lifted[i] for i in sorted(f.hyperplanes)] + [new]
            if matrix_rank(RationalMatrix(stacked)) != f.codim + 1:
                ok = False
                break
        if ok:
            return Arrangement.from_rows(list(lifted) + [new],
                                         labels=list(A.labels) + ["Hgen"],
                                         l=A.l + 1)
        if attempt % 8 == 7:
            bound *= 2
    raise ArrangementError("could not find a generic hyperplane")


def lattice_isomorphic(A: Arrangement, B: Arrangement):
    """Search for a hyperplane permutation matching the two lattices.

    Two central arrangements have isomorphic lattices iff some bijection of
    hyperplanes carries the codim-2..rank flat set system of one onto the
    other's.  Returns the permutation (tuple p with B's flat system equal to
    A's relabeled by i -> p[i]) or None.
    """
    if A.n != B.n or A.rank() != B.rank():
        return None
    LA, LB = build_lattice(A), build_lattice(B)

    def system(L):
        return {c: {frozenset(f.hyperplanes) for f in L.flats_of_codim(c)}
                for c in range(2, L.rank + 1)}

    SA, SB = system(LA), system(LB)
    if {c: len(s) for c, s in SA.items()} != {c: len(s) for c, s in SB.items()}:
        return None
    # backtracking on the codim-2 incidence structure
    n = A.n
    A2 = SA.get(2, set())
    B2 = SB.get(2, set())

    def degree_profile(sets, i):
        return sorted(len(s) for s in sets if i in s)

    profA = {i: degree_profile(A2, i) for i in range(n)}
    profB = {i: degree_profile(B2, i) for i in range(n)}
    cand = {i: [j for j in range(n) if profA[i] == profB[j]] for i in range(n)}
    perm = [-1] * n
    used = [False] * n

    def consistent(i):
        # every codim-2 flat fully mapped so far must appear in B's system
        for s in A2:
            if all(perm[x] >= 0 for x in s):
                if frozenset(perm[x] for x in s) not in B2:
                    return False
        return True

    order = sorted(range(n), key=lambda i: len(cand[i]))

    def backtrack(pos):
        if pos == n:
            mapped = {c: {frozenset(perm[x] for x in s) for s in SA[c]} for c in SA}
            return mapped == SB
        i = order[pos]
        for j in cand[i]:
            if not used[j]:
                perm[i] = j
                used[j] = True
                if consistent(i) and backtrack(pos + 1):
                    return True
                used[j] = False
                perm[i] = -1
        return False

    if backtrack(0):
        return tuple(perm)
    return None
