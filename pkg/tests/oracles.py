"""Independent oracles for the test suite.

Deliberately naive implementations (full subset enumeration, textbook row
reduction over Fraction) that share no code with the library internals;
expected values in the tests are computed or cross-checked against these.
"""

from fractions import Fraction
from itertools import combinations


def rref(rows, ncols):
    work = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(ncols):
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
        r += 1
    return tuple(tuple(row) for row in work[:r])


def brute_force_lattice(forms, l):
    """All intersection flats by full subset enumeration.

    Returns dict: frozenset(closed hyperplane set) -> (codim, mobius)."""
    n = len(forms)
    spans = {}
    for r in range(n + 1):
        for sub in combinations(range(n), r):
            key = rref([forms[i] for i in sub], l)
            spans.setdefault(key, set()).update(sub)
    # closure: every hyperplane whose form lies in the row space
    flats = {}
    for key in spans:
        closed = frozenset(i for i in range(n)
                           if len(rref(list(key) + [forms[i]], l)) == len(key))
        flats[closed] = len(key)
    # Mobius recursion on the reverse-inclusion order
    order = sorted(flats.items(), key=lambda kv: kv[1])
    mobius = {}
    for closed, codim in order:
        if codim == 0:
            mobius[closed] = 1
        else:
            mobius[closed] = -sum(mu for other, mu in mobius.items()
                                  if other < closed)
    return {closed: (codim, mobius[closed]) for closed, codim in flats.items()}


def brute_force_poincare(forms, l):
    flats = brute_force_lattice(forms, l)
    rank = max(c for c, _ in flats.values())
    coeffs = [0] * (rank + 1)
    for codim, mu in flats.values():
        coeffs[codim] += mu * (-1) ** codim
    return coeffs


def poly_divides(divisor, dividend):
    """Exact divisibility test for MultiPoly by naive long division in the
    last variable with a nonzero divisor coefficient."""
    from logarr.exact.multipoly import MultiPoly
    if dividend.is_zero():
        return True
    try:
        q = dividend.divexact(divisor)
    except ValueError:
        return False
    return q * divisor == dividend
