"""Graded pieces of the logarithmic modules, Hilbert series, freeness, and N.

Grading conventions (fixed once, calibrated against the free-case cancellation
and the generic value, see the test suite):

* deg x_i = 1, deg dx_i = 1, deg del_i = -1;
* a derivation delta = sum f_i del_i has degree coeffdeg(f_i) - 1, so the
  Euler field has degree 0 and the coordinate fields x_i del_i of a Boolean
  arrangement sit in degree 0;
* a logarithmic p-form omega = eta/f (f the defining product, eta with
  polynomial coefficients) has degree coeffdeg(eta) + p - n, so d log forms
  sit in degree 0 and the top form dx/f generates in degree l - n.

Membership conditions are assembled per hyperplane by eliminating one
variable (substituting the pivot variable of the form) and equating all
coefficients to zero; one graded piece is one exact rank computation.

The duality between derivations and 1-forms is degree-preserving under these
conventions, which makes the two Hilbert series directly comparable:

    N(A) = [ h(D,t) - h(Omega^1, 1/t)/(-t)^l ]  evaluated at t = 1,

computed exactly as a Laurent-polynomial quotient by (1-t)^l.  The quotient
failing to be a Laurent polynomial is a loud calibration failure, never a
silent wrong answer.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, gcd

from logarr.arrangement import (Arrangement, build_lattice, essentialize,
                                localization)
from logarr.exact.laurent import LaurentPoly
from logarr.exact.linalg import RrefSpan, sparse_kernel, sparse_rank
from logarr.exact.multipoly import MultiPoly, monomial_count, monomials


class StabilizationError(RuntimeError):
    """Hilbert numerator failed to stabilize below the degree cap."""

    def __init__(self, message, partial_numerator=None):
        super().__init__(message)
        self.partial_numerator = partial_numerator


class DegreeCapError(RuntimeError):
    """Generator search exceeded its degree cap (distinct from 'not free')."""


class GradingCalibrationError(RuntimeError):
    """The dual Hilbert series did not cancel to a Laurent polynomial."""

    def __init__(self, message, der_numerator, omega_numerator):
        super().__init__(message)
        self.der_numerator = der_numerator
        self.omega_numerator = omega_numerator


class NonFreeLocusError(RuntimeError):
    """A proper localization is not free, violating a precondition."""

    def __init__(self, message, flats=()):
        super().__init__(message)
        self.flats = tuple(flats)


class AmbiguousTwistsError(RuntimeError):
    """Twist lists cannot be read off the numerator (rank balance fails)."""


# -- integer forms and per-hyperplane reduction ------------------------------

def _primitive_int_form(row):
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = reduce(gcd, (abs(v) for v in ints))
    return tuple(v // g for v in ints)


class _Reducer:
    """Reduction of degree-c monomials modulo one integer linear form.

    reduce_mono(e) returns (dict reduced-monomial -> int, e_k) where the true
    coefficients carry an implicit denominator a_k^(e_k); rows built from
    these are rescaled uniformly so everything stays integral.
    """

    def __init__(self, alpha, l):
        self.l = l
        self.k = max(i for i, a in enumerate(alpha) if a)
        self.ak = alpha[self.k]
        self.sub = {i: -alpha[i] for i in range(l) if i != self.k and alpha[i]}
        self._powers = [{(0,) * l: 1}]

    def _power(self, e):
        while len(self._powers) <= e:
            prev = self._powers[-1]
            nxt = {}
            for m, c in prev.items():
                for i, a in self.sub.items():
                    m2 = list(m)
                    m2[i] += 1
                    m2 = tuple(m2)
                    nxt[m2] = nxt.get(m2, 0) + c * a
            self._powers.append({m: c for m, c in nxt.items() if c})
        return self._powers[e]

    def reduce_mono(self, e):
        ek = e[self.k]
        base = list(e)
        base[self.k] = 0
        out = {}
        for m, c in self._power(ek).items():
            mm = tuple(b + mi for b, mi in zip(base, m))
            out[mm] = out.get(mm, 0) + c
        return out, ek


def _der_rows(forms_int, l, c):
    """Sparse integer constraint rows for D(A) in coefficient degree c."""
    mons = monomials(l, c)
    nm = len(mons)
    rows = []
    for alpha in forms_int:
        red = _Reducer(alpha, l)
        emax = max((e[red.k] for e in mons), default=0)
        byred = {}
        for j, e in enumerate(mons):
            rm, ek = red.reduce_mono(e)
            s = red.ak ** (emax - ek)
            for m, cc in rm.items():
                v = cc * s
                tgt = byred.setdefault(m, {})
                for i in range(l):
                    ai = alpha[i]
                    if ai:
                        col = i * nm + j
                        tgt[col] = tgt.get(col, 0) + ai * v
        for row in byred.values():
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows, l * nm


@lru_cache(maxsize=None)
def der_graded_dim(A: Arrangement, d: int) -> int:
    """dim D(A)_d; the coefficient degree is d + 1."""
    c = d + 1
    if c < 0:
        return 0
    forms_int = [_primitive_int_form(row) for row in A.forms]
    rows, ncols = _der_rows(forms_int, A.l, c)
    return ncols - sparse_rank(rows)


def _omega_rows(forms_int, l, p, c):
    """Sparse integer constraint rows for Omega^p(A) with coefficient degree c."""
    mons = monomials(l, c)
    nm = len(mons)
    subsets = list(itertools.combinations(range(l), p))
    sidx = {s: i for i, s in enumerate(subsets)}
    jsubsets = list(itertools.combinations(range(l), p + 1))
    rows = []
    for alpha in forms_int:
        red = _Reducer(alpha, l)
        emax = max((e[red.k] for e in mons), default=0)
        reduced = []
        for e in mons:
            rm, ek = red.reduce_mono(e)
            s = red.ak ** (emax - ek)
            reduced.append({m: cc * s for m, cc in rm.items()})
        for J in jsubsets:
            byred = {}
            for pos, j in enumerate(J):
                aj = alpha[j]
                if not aj:
                    continue
                sign_aj = aj if pos % 2 == 0 else -aj
                I = tuple(x for x in J if x != j)
                blk = sidx[I] * nm
                for jm in range(nm):
                    for m, v in reduced[jm].items():
                        tgt = byred.setdefault(m, {})
                        col = blk + jm
                        tgt[col] = tgt.get(col, 0) + sign_aj * v
            for row in byred.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows, len(subsets) * nm, subsets, mons


@lru_cache(maxsize=None)
def omega_graded_dim(A: Arrangement, p: int, d: int) -> int:
    """dim Omega^p(A)_d; the numerator coefficient degree is d + n - p."""
    if not 1 <= p <= A.l:
        raise ValueError(f"p must be within 1..{A.l}")
    c = d + A.n - p
    if c < 0:
        return 0
    if p == A.l:
        # top forms: condition is vacuous, Omega^l = R (1/f) dx
        return monomial_count(A.l, c)
    forms_int = [_primitive_int_form(row) for row in A.forms]
    rows, ncols, _, _ = _omega_rows(forms_int, A.l, p, c)
    return ncols - sparse_rank(rows)


@lru_cache(maxsize=None)
def omega_basis(A: Arrangement, p: int, d: int):
    """Explicit basis of Omega^p(A)_d.

    Each element is a dict mapping an increasing index tuple I (|I| = p) to
    the MultiPoly coefficient of dx_I in the numerator eta (omega = eta/f);
    the numerator coefficient degree is d + n - p uniformly in p, so the
    basis of the degree-d functions is f times the degree-d monomials.
    """
    if p == 0:
        f = A.defining_polynomial()
        return tuple({(): f * MultiPoly.monomial(e)} for e in monomials(A.l, d))
    if not 1 <= p <= A.l:
        raise ValueError(f"p must be within 0..{A.l}")
    c = d + A.n - p
    if c < 0:
        return ()
    mons = monomials(A.l, c)
    nm = len(mons)
    subsets = list(itertools.combinations(range(A.l), p))
    if p == A.l:
        I = subsets[0]
        return tuple({I: MultiPoly.monomial(e)} for e in mons)
    forms_int = [_primitive_int_form(row) for row in A.forms]
    rows, ncols, subsets, mons = _omega_rows(forms_int, A.l, p, c)
    basis = []
    for v in sparse_kernel(rows, ncols):
        elem = {}
        for si, I in enumerate(subsets):
            terms = {}
            for j, e in enumerate(mons):
                x = v[si * nm + j]
                if x:
                    terms[e] = x
            if terms:
                elem[I] = MultiPoly(A.l, terms)
        basis.append(elem)
    return tuple(basis)


def contract_euler(form_elem, l):
    """iota_chi on a p-form numerator: g dx_I -> sum over i in I of
    (-1)^pos x_i g dx_(I minus i).  Degree-preserving on omega = eta/f."""
    out = {}
    for I, g in form_elem.items():
        for pos, i in enumerate(I):
            J = tuple(x for x in I if x != i)
            contrib = g.mul_var(i)
            if pos % 2 == 1:
                contrib = -contrib
            out[J] = out.get(J, MultiPoly.zero(l)) + contrib
    return {J: g for J, g in out.items() if not g.is_zero()}


def _form_vectors_to_rows(elems, l, p, c):
    """Express p-form numerator dicts in the raw coefficient space; returns
    sparse integer rows, one per element (columns = (subset, monomial))."""
    subsets = {s: i for i, s in enumerate(itertools.combinations(range(l), p))}
    mons = {e: j for j, e in enumerate(monomials(l, c))}
    nm = len(mons)
    rows = []
    for elem in elems:
        den = 1
        for g in elem.values():
            for coef in g.terms.values():
                den = den * coef.denominator // gcd(den, coef.denominator)
        row = {}
        for I, g in elem.items():
            blk = subsets[I] * nm
            for e, coef in g.terms.items():
                row[blk + mons[e]] = int(coef * den)
        if row:
            rows.append(row)
    return rows, len(subsets) * nm


@lru_cache(maxsize=None)
def omega0_basis(A: Arrangement, p: int, d: int):
    """Basis of Omega^p_0(A)_d = ker(iota_chi) inside Omega^p(A)_d."""
    base = omega_basis(A, p, d)
    if p == 0:
        return base  # contraction vanishes on functions
    if not base:
        return ()
    images = [contract_euler(elem, A.l) for elem in base]
    c_target = d + A.n - (p - 1)
    # kernel of the coefficient matrix (targets x basis)
    subsets = {s: i for i, s in enumerate(itertools.combinations(range(A.l), p - 1))}
    mons = {e: j for j, e in enumerate(monomials(A.l, c_target))}
    nm = len(mons)
    cols = {}
    for bidx, img in enumerate(images):
        for I, g in img.items():
            blk = subsets[I] * nm
            for e, coef in g.terms.items():
                cols.setdefault(blk + mons[e], {})[bidx] = coef
    rows = []
    for row in cols.values():
        den = 1
        for coef in row.values():
            den = den * coef.denominator // gcd(den, coef.denominator)
        rows.append({j: int(v * den) for j, v in row.items()})
    combos = sparse_kernel(rows, len(base))
    out = []
    for comb_v in combos:
        elem = {}
        for coef, b in zip(comb_v, base):
            if coef:
                for I, g in b.items():
                    elem[I] = elem.get(I, MultiPoly.zero(A.l)) + g * coef
        out.append({I: g for I, g in elem.items() if not g.is_zero()})
    return tuple(out)


def omega0_graded_dim(A: Arrangement, p: int, d: int) -> int:
    """dim Omega^p_0(A)_d, the kernel of contraction on an explicit basis.

    Satisfies dim Omega^p_d = dim Omega^p_0,d + dim Omega^(p-1)_0,d."""
    if p == 0:
        return monomial_count(A.l, d)
    if p == A.l:
        return 0  # contraction is injective on top forms
    base = omega_basis(A, p, d)
    if not base:
        return 0
    images = [contract_euler(elem, A.l) for elem in base]
    rows, _ = _form_vectors_to_rows(images, A.l, p - 1, d + A.n - (p - 1))
    # rank of the image = number of independent columns; transpose by rows
    # built per element, so rank over elements is what we need:
    return len(base) - sparse_rank(rows)


# -- Hilbert series -----------------------------------------------------------

@dataclass(frozen=True)
class GradedDims:
    """Degree-indexed dimensions of one graded module, from the structural
    floor upward."""
    tag: str
    d_min: int
    dims: tuple

    def dim(self, d):
        i = d - self.d_min
        if i < 0:
            return 0
        if i >= len(self.dims):
            raise IndexError(f"degree {d} not computed for {self.tag}")
        return self.dims[i]


@dataclass(frozen=True)
class HilbertSeries:
    """Numerator over (1-t)^ell; expanding it reproduces the stored dims."""
    numerator: LaurentPoly
    ell: int
    dims: GradedDims

    def dim_at(self, d):
        """Expand the closed form at one degree."""
        total = 0
        for e, c in self.numerator.terms.items():
            k = d - e
            if k >= 0:
                total += c * comb(k + self.ell - 1, self.ell - 1)
        assert total == int(total)
        return int(total)


def hilbert_series(oracle, ell, floor, scale, *, span=None, window=None,
                   cap=None, tag="") -> HilbertSeries:
    """Reconstruct the Hilbert numerator of a graded module from an exact
    degree -> dimension oracle.

    Starts at the structural floor, expands through [d_min, d_min + span],
    and keeps extending until the top ``window`` numerator coefficients are
    all zero; fails loudly (with the partial numerator) past the cap.
    ``scale`` sets the default span/cap (callers pass n, the number of
    hyperplanes).
    """
    if span is None:
        span = scale + ell + 4
    if window is None:
        window = ell + 2
    if cap is None:
        cap = 3 * (scale + ell)
    dims = []
    d = floor
    first = None
    while d <= floor + cap:
        v = oracle(d)
        dims.append(v)
        if v:
            first = d
            break
        d += 1
    if first is None:
        return HilbertSeries(LaurentPoly.zero(), ell,
                             GradedDims(tag, floor, tuple(dims)))
    top = first + span
    while True:
        while d < top:
            d += 1
            dims.append(oracle(d))
        num = _numerator(dims, floor, ell)
        # coefficients at exponents <= top are exact; above top they are
        # truncation artifacts and must be dropped
        if all(num[e] == 0 for e in range(top - window + 1, top + 1)):
            exact = LaurentPoly({e: c for e, c in num.terms.items()
                                 if e <= top - window})
            return HilbertSeries(exact, ell, GradedDims(tag, floor, tuple(dims)))
        if top >= first + cap:
            raise StabilizationError(
                f"Hilbert numerator for {tag or 'module'} did not stabilize "
                f"by degree {top}", partial_numerator=num)
        top += 1


def _numerator(dims, floor, ell):
    binl = [comb(ell, k) * (-1) ** k for k in range(ell + 1)]
    out = {}
    for i, dm in enumerate(dims):
        if dm:
            for k, b in enumerate(binl):
                e = floor + i + k
                out[e] = out.get(e, 0) + dm * b
    return LaurentPoly(out)


def der_hilbert_series(A: Arrangement, **kw) -> HilbertSeries:
    return hilbert_series(lambda d: der_graded_dim(A, d), A.l, -1, A.n,
                          tag="D", **kw)


def omega_hilbert_series(A: Arrangement, p: int = 1, **kw) -> HilbertSeries:
    return hilbert_series(lambda d: omega_graded_dim(A, p, d), A.l, p - A.n,
                          A.n, tag=f"Omega^{p}", **kw)


def omega0_hilbert_series(A: Arrangement, p: int = 1, **kw) -> HilbertSeries:
    """For p = 1 this is h(Omega^1) - h(R), by the Euler splitting."""
    if p == 1:
        h = omega_hilbert_series(A, 1, **kw)
        return HilbertSeries(h.numerator - LaurentPoly({0: 1}), h.ell, h.dims)
    return hilbert_series(lambda d: omega0_graded_dim(A, p, d), A.l, p - A.n,
                          A.n, tag=f"Omega^{p}_0", **kw)


# -- minimal generators of D(A) and Saito's criterion -------------------------

def _der_kernel_basis(A, d):
    """Kernel basis of the degree-d derivation system, as dense tuples."""
    c = d + 1
    if c < 0:
        return (), 0
    forms_int = [_primitive_int_form(row) for row in A.forms]
    rows, ncols = _der_rows(forms_int, A.l, c)
    return sparse_kernel(rows, ncols), ncols


def _shift_vector(v, l, c):
    """Multiply a degree-c derivation coefficient vector by each variable,
    yielding sparse vectors in the degree-(c+1) coordinate space."""
    mons_lo = monomials(l, c)
    idx_hi = {e: j for j, e in enumerate(monomials(l, c + 1))}
    nm_hi = len(idx_hi)
    out = []
    for var in range(l):
        w = {}
        for i in range(l):
            base = i * len(mons_lo)
            for j, e in enumerate(mons_lo):
                x = v[base + j]
                if x:
                    e2 = list(e)
                    e2[var] += 1
                    w[i * nm_hi + idx_hi[tuple(e2)]] = x
        out.append(w)
    return out


@dataclass(frozen=True)
class DerGenerator:
    degree: int
    coeffs: tuple  # l MultiPolys, the coefficients of del_0..del_(l-1)


@lru_cache(maxsize=None)
def der_generators(A: Arrangement, through_degree: int, idle_window: int = None):
    """Minimal generators of D(A) in degrees <= through_degree.

    Degree-by-degree graded Nakayama: a degree-d element is a new generator
    iff it is outside x_1 D_(d-1) + ... + x_l D_(d-1) inside D_d.  The scan
    stops early once ``idle_window`` consecutive degrees produced no new
    generator (default l + 2); pass through_degree to force a longer scan.
    """
    if idle_window is None:
        idle_window = A.l + 2
    gens = []
    prev_basis = ()
    idle = 0
    for d in range(-1, through_degree + 1):
        basis, _ = _der_kernel_basis(A, d)
        span = RrefSpan()
        for v in prev_basis:
            for w in _shift_vector(v, A.l, d):
                span.add(w)
        mons_d = monomials(A.l, d + 1)
        nm = len(mons_d)
        new_here = 0
        for v in basis:
            sparse = {j: x for j, x in enumerate(v) if x}
            if span.add(sparse):
                polys = []
                for i in range(A.l):
                    terms = {}
                    for j, e in enumerate(mons_d):
                        x = v[i * nm + j]
                        if x:
                            terms[e] = x
                    polys.append(MultiPoly(A.l, terms))
                gens.append(DerGenerator(degree=d, coeffs=tuple(polys)))
                new_here += 1
        prev_basis = basis
        idle = 0 if new_here else idle + 1
        if gens and idle >= idle_window:
            break
    return tuple(gens)


def _poly_det(matrix, l):
    total = MultiPoly.zero(l)
    n = len(matrix)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = MultiPoly.constant(l, sign)
        for i in range(n):
            term = term * matrix[i][perm[i]]
        total = total + term
    return total


@dataclass(frozen=True)
class FreenessResult:
    free: bool
    exponents: tuple  # multiset of coefficient degrees, when free
    evidence: str


def is_free_saito(A: Arrangement, cap: int = None) -> FreenessResult:
    """Saito's criterion via minimal generators of D(A).

    If exactly l generators appear, with coefficient degrees summing to n,
    the l x l coefficient determinant decides: equality with a nonzero scalar
    multiple of the defining polynomial certifies freeness.  More than l
    minimal generators, or degree sum exceeding n, certifies non-freeness.
    """
    l, n = A.l, A.n
    if cap is None:
        cap = n + 1
    gens = []
    prev_basis = ()
    for d in range(-1, cap + 1):
        basis, _ = _der_kernel_basis(A, d)
        span = RrefSpan()
        for v in prev_basis:
            for w in _shift_vector(v, l, d):
                span.add(w)
        mons_d = monomials(l, d + 1)
        nm = len(mons_d)
        for v in basis:
            sparse = {j: x for j, x in enumerate(v) if x}
            if span.add(sparse):
                polys = []
                for i in range(l):
                    terms = {e: v[i * nm + j] for j, e in enumerate(mons_d)
                             if v[i * nm + j]}
                    polys.append(MultiPoly(l, terms))
                gens.append(DerGenerator(degree=d, coeffs=tuple(polys)))
        prev_basis = basis
        if len(gens) > l:
            return FreenessResult(False, (), f"{len(gens)} minimal generators "
                                  f"by degree {d} (a free module has {l})")
        if len(gens) == l:
            degsum = sum(g.degree + 1 for g in gens)
            if degsum > n:
                return FreenessResult(False, (), "generator degrees sum to "
                                      f"{degsum} > n = {n}")
            if degsum == n:
                det = _poly_det([list(g.coeffs) for g in gens], l)
                f = A.defining_polynomial()
                mono = next(iter(f.terms))
                c = det.coefficient(mono) / f.coefficient(mono)
                if c and det == f * c:
                    exps = tuple(sorted(g.degree + 1 for g in gens))
                    return FreenessResult(True, exps, "Saito determinant equals "
                                          "a scalar multiple of the defining polynomial")
                return FreenessResult(False, (), "Saito determinant is not a "
                                      "scalar multiple of the defining polynomial")
            # degsum < n: more generators must appear at higher degree
    raise DegreeCapError(f"generator search passed degree {cap} without a verdict")


def arrangement_is_free(A: Arrangement) -> bool:
    """Freeness with the rank <= 2 shortcut (always free) for localizations."""
    B = essentialize(A)
    if B.l <= 2:
        return True
    return is_free_saito(B).free


# -- the invariant N ----------------------------------------------------------

def _check_zero_dim_nonfree_locus(A: Arrangement):
    """Every proper localization must be free."""
    L = build_lattice(A)
    bad = []
    for f in L.flats:
        if 0 < f.codim < L.rank:
            if f.codim <= 2:
                continue  # rank <= 2 arrangements are free
            if not arrangement_is_free(localization(A, f)):
                bad.append(f)
    if bad:
        raise NonFreeLocusError(
            "non-free locus is not zero-dimensional; non-free proper flats: "
            + ", ".join(repr(f) for f in bad), flats=bad)


def n_central(A: Arrangement, *, check_locus: bool = True, **kw) -> int:
    """N(A) for a central arrangement with zero-dimensional non-free locus,
    from the two Hilbert series.  Exact; result is a nonnegative integer."""
    A = essentialize(A)
    if check_locus:
        _check_zero_dim_nonfree_locus(A)
    hD = der_hilbert_series(A, **kw)
    hO = omega_hilbert_series(A, 1, **kw)
    diff = hD.numerator - hO.numerator.invert_variable()
    quot = diff
    try:
        for _ in range(A.l):
            quot = quot.divexact_one_minus_t()
    except ValueError as e:
        raise GradingCalibrationError(
            "h(D,t) - h(Omega^1,1/t)/(-t)^l is not a Laurent polynomial; "
            f"numerators {hD.numerator} and {hO.numerator}",
            hD.numerator, hO.numerator) from e
    value = quot.evaluate(1)
    if value != int(value) or value < 0:
        raise GradingCalibrationError(
            f"N evaluated to {value}, expected a nonnegative integer",
            hD.numerator, hO.numerator)
    return int(value)


def n_projective(A: Arrangement, **kw) -> int:
    """N(PA) = sum over codimension (l-1) flats of N of the essentialized
    localization.  Free localizations contribute zero."""
    A = essentialize(A)
    L = build_lattice(A)
    ell = L.rank
    total = 0
    for f in L.flats_of_codim(ell - 1):
        B = essentialize(localization(A, f))
        if B.l <= 2 or is_free_saito(B).free:
            continue
        try:
            total += n_central(B, **kw)
        except (StabilizationError, GradingCalibrationError, NonFreeLocusError) as e:
            e.args = (f"at flat {f!r}: {e.args[0]}",) + e.args[1:]
            raise
    return total


def n_generic_closed_form(L, ell: int) -> int:
    """Combinatorial closed form: over the top-codimension flats, sum
    binomial(#A_X - 1, ell).  Requires (ell-2)-genericity.

    For an essential generic arrangement this is binomial(n-1, ell) and
    agrees with n_central; the companion sum indexed by codim-(ell-1) flats
    (binomial(#A_X - 1, ell - 1) per flat, matching the localization formula
    for N(PA)) is exposed as ``n_projective_closed_form`` and cross-checked
    against n_projective in the verification suite.
    """
    from logarr.arrangement import is_k_generic
    A = L.arrangement
    if ell >= 2 and not is_k_generic(A, ell - 2):
        raise ValueError(f"arrangement is not {ell - 2}-generic")
    return sum(comb(len(f.hyperplanes) - 1, ell) for f in L.flats_of_codim(ell))


def n_projective_closed_form(L, ell: int) -> int:
    """Sum over codim-(ell-1) flats of binomial(#A_X - 1, ell - 1)."""
    return sum(comb(len(f.hyperplanes) - 1, ell - 1)
               for f in L.flats_of_codim(ell - 1))


# -- twist lists ---------------------------------------------------------------

def twist_lists(H, rank: int):
    """Read generator/relation twists off a Hilbert numerator.

    The numerator is split as P(t) - Q(t) with nonnegative disjoint-support
    parts; alpha collects exponents of P with multiplicity, beta those of Q.
    A minimal length-one resolution forces len(alpha) - len(beta) = rank;
    anything else means hidden cancellation and is rejected."""
    num = H.numerator if isinstance(H, HilbertSeries) else H
    alpha, beta = [], []
    for e, c in sorted(num.terms.items()):
        if c != int(c):
            raise AmbiguousTwistsError(f"non-integer numerator coefficient {c} at t^{e}")
        c = int(c)
        (alpha if c > 0 else beta).extend([e] * abs(c))
    if len(alpha) - len(beta) != rank:
        raise AmbiguousTwistsError(
            f"twist balance {len(alpha)} - {len(beta)} != rank {rank}; "
            "cancellation in the numerator cannot be ruled out")
    return tuple(alpha), tuple(beta)


# -- wedge defect ---------------------------------------------------------------

def _wedge_two(a, b, l):
    """Exterior product of two numerator dicts (indices I -> MultiPoly)."""
    out = {}
    for I, g in a.items():
        for J, h in b.items():
            if set(I) & set(J):
                continue
            K = tuple(sorted(I + J))
            # sign of the shuffle merging I and J
            merged = list(I + J)
            sign = 1
            for i in range(len(merged)):
                for j in range(i + 1, len(merged)):
                    if merged[i] > merged[j]:
                        sign = -sign
            term = g * h
            if sign < 0:
                term = -term
            out[K] = out.get(K, MultiPoly.zero(l)) + term
    return {K: g for K, g in out.items() if not g.is_zero()}


def _divide_by_defining(elem, A):
    out = {}
    for I, g in elem.items():
        q = g
        for row in A.forms:
            q = q.divexact_linear(row)
        out[I] = q
    return out


def wedge_defect(A: Arrangement, p: int, d: int) -> int:
    """dim Omega^p(A)_d minus the dimension of the degree-d piece of the
    image of the wedge map from the p-th exterior power of Omega^1(A)."""
    if p == 1:
        return 0
    if not 2 <= p <= A.l:
        raise ValueError("p out of range")
    dim_target = omega_graded_dim(A, p, d)
    if dim_target == 0:
        return 0
    # first degree where Omega^1 is nonzero; if p elements of minimal degree
    # already exceed total degree d, the image piece is zero
    e_min = 1 - A.n
    while omega_graded_dim(A, 1, e_min) == 0:
        e_min += 1
        if p * e_min > d:
            return dim_target
    e_max = d - (p - 1) * e_min
    bases = {dd: omega_basis(A, 1, dd) for dd in range(e_min, e_max + 1)}
    images = []
    for degs in itertools.combinations_with_replacement(range(e_min, e_max + 1), p):
        if sum(degs) != d:
            continue
        groups = []
        for dd, count in sorted({x: degs.count(x) for x in degs}.items()):
            groups.append(list(itertools.combinations(bases[dd], count)))
        for pick in itertools.product(*groups):
            elems = [x for grp in pick for x in grp]
            w = elems[0]
            for x in elems[1:]:
                w = _wedge_two(w, x, A.l)
                if not w:
                    break
            if not w:
                continue
            # eta_1/f ^ ... ^ eta_p/f = (eta_1 ^ ... ^ eta_p / f^(p-1)) / f
            for _ in range(p - 1):
                w = _divide_by_defining(w, A)
            images.append(w)
    if not images:
        return dim_target
    rows, _ = _form_vectors_to_rows(images, A.l, p, d + A.n - p)
    return dim_target - sparse_rank(rows)
