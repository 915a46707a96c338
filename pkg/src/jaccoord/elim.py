"""Exact elimination machinery: subresultant chains, resultants, bivariate
gcd, rational Gaussian elimination, and rational root extraction.

Polynomials in the elimination variable are dense coefficient lists over a
coefficient ring given by a small adapter, so the same pseudo-remainder code
serves Q, Q[x] and Q[x,c] coefficients.  All divisions performed by the
subresultant chain are exact by theory; an inexact division raises, it is
never silently rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import sympy

from ._ratback import RAT_ONE, RAT_ZERO, Rat, rat
from .qpoly import BiPoly, UniPoly, ZeroPolynomialError


# ---------------------------------------------------------------------------
# coefficient ring adapters


@dataclass(frozen=True)
class Ring:
    zero: object
    one: object
    is_zero: Callable
    add: Callable
    sub: Callable
    mul: Callable
    neg: Callable
    exact_div: Callable


RAT_RING = Ring(
    zero=RAT_ZERO,
    one=RAT_ONE,
    is_zero=lambda a: a == 0,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    neg=lambda a: -a,
    exact_div=lambda a, b: a / b,
)

UNIPOLY_RING = Ring(
    zero=UniPoly.zero(),
    one=UniPoly.const(1),
    is_zero=lambda a: a.is_zero(),
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    neg=lambda a: -a,
    exact_div=lambda a, b: a.exact_div(b),
)

BIPOLY_RING = Ring(
    zero=BiPoly.zero(),
    one=BiPoly.const(1),
    is_zero=lambda a: a.is_zero(),
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    neg=lambda a: -a,
    exact_div=lambda a, b: a.exact_div(b),
)


# dense polynomial-over-ring helpers; a poly is a list of ring elements


def pstrip(p: List, R: Ring) -> List:
    while p and R.is_zero(p[-1]):
        p.pop()
    return p


def pdeg(p: Sequence) -> int:
    return len(p) - 1


def plc(p: Sequence):
    return p[-1]


def pscale(p: Sequence, c, R: Ring) -> List:
    return pstrip([R.mul(a, c) for a in p], R)


def psub(p: Sequence, q: Sequence, R: Ring) -> List:
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else R.zero
        b = q[k] if k < len(q) else R.zero
        out.append(R.sub(a, b))
    return pstrip(out, R)

def pshift_mul(p: Sequence, k: int, c, R: Ring) -> List:
    """x^k * c * p."""
    return [R.zero] * k + [R.mul(a, c) for a in p]


def pseudo_rem(A: Sequence, B: Sequence, R: Ring) -> List:
    """prem(A, B): lc(B)^(degA-degB+1) * A mod B."""
    dA, dB = pdeg(A), pdeg(B)
    if dB < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    rem = list(A)
    lcB = plc(B)
    e = dA - dB + 1
    while pdeg(rem) >= dB:
        d = pdeg(rem)
        lead = plc(rem)
        rem = psub(pscale(rem, lcB, R), pshift_mul(B, d - dB, lead, R), R)
        e -= 1
        if pdeg(rem) >= d:  # defensive; cannot happen
            raise RuntimeError("pseudo-division failed to reduce degree")
    for _ in range(max(e, 0)):
        rem = pscale(rem, lcB, R)
    return rem


def pexact_div_scalar(p: Sequence, c, R: Ring) -> List:
    return [R.exact_div(a, c) for a in p]


def subresultant_prs(A: List, B: List, R: Ring) -> List[List]:
    """The subresultant polynomial remainder sequence, first entries included."""
    prs = [list(A), list(B)]
    g = R.one
    h = R.one
    a, b = list(A), list(B)
    while True:
        delta = pdeg(a) - pdeg(b)
        r = pseudo_rem(a, b, R)
        if not r:
            return prs
        divisor = R.mul(g, _ring_pow(h, delta, R))
        a, b = b, pexact_div_scalar(r, divisor, R)
        prs.append(b)
        g = plc(a)
        h = _pow_quotient(h, g, delta, R)
        if pdeg(b) == 0:
            return prs


def _ring_pow(a, n: int, R: Ring):
    out = R.one
    for _ in range(n):
        out = R.mul(out, a)
    return out


def _pow_quotient(h, g, delta: int, R: Ring):
    """h^(1-delta) * g^delta, via exact division when delta > 1."""
    if delta == 0:
        return h
    num = _ring_pow(g, delta, R)
    den = _ring_pow(h, delta - 1, R)
    return R.exact_div(num, den)


def resultant(A: List, B: List, R: Ring):
    """Resultant of A and B (in the list variable) over the ring R.

    Computed through the subresultant chain; exact up to sign conventions,
    which is all the root-hunting callers need.
    """
    A, B = pstrip(list(A), R), pstrip(list(B), R)
    if not A or not B:
        return R.zero
    dA, dB = pdeg(A), pdeg(B)
    if dA == 0 and dB == 0:
        return R.one
    if dA == 0:
        return _ring_pow(A[0], dB, R)
    if dB == 0:
        return _ring_pow(B[0], dA, R)
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
    g = R.one
    h = R.one
    a, b = A, B
    while True:
        delta = pdeg(a) - pdeg(b)
        r = pseudo_rem(a, b, R)
        if not r:
            return R.zero  # common factor
        divisor = R.mul(g, _ring_pow(h, delta, R))
        a, b = b, pexact_div_scalar(r, divisor, R)
        g = plc(a)
        h = _pow_quotient(h, g, delta, R)
        if pdeg(b) == 0:
            da = pdeg(a)
            # s_0 = lc(b)^da / h^(da-1)
            num = _ring_pow(b[0], da, R)
            den = _ring_pow(h, da - 1, R)
            return R.exact_div(num, den)


# ---------------------------------------------------------------------------
# bivariate gcd and squarefree part


def _unipoly_list_gcd(us: Sequence[UniPoly]) -> UniPoly:
    g = UniPoly.zero()
    for u in us:
        g = g.gcd(u) if not g.is_zero() else u.monic() if not u.is_zero() else g
    return g


def bipoly_content_y(f: BiPoly) -> UniPoly:
    """gcd in Q[x] of the y-coefficients (monic)."""
    return _unipoly_list_gcd(f.y_coeffs())


def bipoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """gcd in Q[x,y], normalized so the lex-leading coefficient is 1."""
    if f.is_zero():
        return _lex_normalize(g)
    if g.is_zero():
        return _lex_normalize(f)
    if f.degy == 0 and g.degy == 0:
        u = _unipoly_list_gcd([f.y_coeffs()[0], g.y_coeffs()[0]])
        return u.to_bipoly("x")
    cf, cg = bipoly_content_y(f), bipoly_content_y(g)
    cont = cf.gcd(cg)
    fp = [u.exact_div(cf) for u in f.y_coeffs()]
    gp = [u.exact_div(cg) for u in g.y_coeffs()]
    if pdeg(fp) < pdeg(gp):
        fp, gp = gp, fp
    if pdeg(gp) == 0:
        # primitive parts are coprime in y; gcd is the content only
        return cont.to_bipoly("x")
    prs = subresultant_prs(fp, gp, UNIPOLY_RING)
    last = prs[-1]
    if pdeg(last) == 0:
        # check it is truly a unit (no common factor in y)
        if not last[0].is_zero():
            return cont.to_bipoly("x")
        last = prs[-2]
    # primitive part of the last nonzero subresultant is the pp-gcd
    c = _unipoly_list_gcd(last)
    pp = [u.exact_div(c) for u in last]
    out = BiPoly.from_y_coeffs([u * cont for u in pp])
    return _lex_normalize(out)


def _lex_normalize(f: BiPoly) -> BiPoly:
    if f.is_zero():
        return f
    lead = max(e for e, _ in f.items())
    c = f.coeff(*lead)
    return f * (RAT_ONE / c)


def bipoly_squarefree_part(f: BiPoly) -> Tuple[BiPoly, bool]:
    """(squarefree part, was_already_squarefree) over Q[x,y], char 0."""
    if f.is_zero():
        raise ZeroPolynomialError("squarefree part of zero polynomial")
    g = bipoly_gcd(bipoly_gcd(f, f.diff_x()), f.diff_y())
    if g.is_constant():
        return f, True
    return f.exact_div(g), False


def bipoly_is_squarefree(f: BiPoly) -> bool:
    return bipoly_squarefree_part(f)[1]


# ---------------------------------------------------------------------------
# exact rational linear algebra


def rat_eliminate(rows: List[List]) -> Tuple[int, List[int], List[int]]:
    """In-place Gaussian elimination; returns (rank, pivot_rows, pivot_cols).

    Deterministic: scans columns left to right and picks the first row with
    a nonzero entry.
    """
    if not rows:
        return 0, [], []
    ncols = len(rows[0])
    order = list(range(len(rows)))  # original index of each physical row
    pivot_rows: List[int] = []
    pivot_cols: List[int] = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        order[r], order[sel] = order[sel], order[r]
        piv = rows[r][col]
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            ci = rows[i][col]
            if ci != 0:
                f = ci / piv
                ri = rows[i]
                for k in range(col, ncols):
                    ri[k] = ri[k] - f * prow[k]
        pivot_rows.append(order[r])
        pivot_cols.append(col)
        r += 1
    return r, pivot_rows, pivot_cols


def rat_rank(rows: List[List]) -> int:
    return rat_eliminate([list(r) for r in rows])[0]


def rat_det(rows: List[List]):
    """Determinant of a square rational matrix (fresh copy, exact)."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = RAT_ONE
    for col in range(n):
        sel = None
        for i in range(col, n):
            if m[i][col] != 0:
                sel = i
                break
        if sel is None:
            return RAT_ZERO
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            det = -det
        piv = m[col][col]
        det = det * piv
        prow = m[col]
        for i in range(col + 1, n):
            ci = m[i][col]
            if ci != 0:
                f = ci / piv
                ri = m[i]
                for k in range(col, n):
                    ri[k] = ri[k] - f * prow[k]
    return det


# ---------------------------------------------------------------------------
# rational roots and torus solvability (sympy-backed plumbing)

_SX, _SY, _ST = sympy.symbols("x y t")


def unipoly_to_sympy(u: UniPoly, sym) -> sympy.Poly:
    return sympy.Poly.from_list(
        [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(u.coeffs)]
        or [0],
        sym,
    )


def bipoly_to_sympy(f: BiPoly):
    expr = sympy.Integer(0)
    for (i, j), c in f.items():
        expr += (
            sympy.Rational(int(c.numerator), int(c.denominator))
            * _SX ** i
            * _SY ** j
        )
    return expr


def rational_roots(u: UniPoly) -> List:
    """All rational roots of a nonzero univariate polynomial."""
    if u.is_zero():
        raise ZeroPolynomialError("rational_roots of zero polynomial")
    if u.is_constant():
        return []
    p = unipoly_to_sympy(u, _ST)
    roots = []
    for r in p.ground_roots():
        rr = sympy.Rational(r)
        roots.append(rat(int(rr.p), int(rr.q)))
    return sorted(roots)


def strip_rational_roots(u: UniPoly) -> Tuple[List, UniPoly]:
    """(rational roots, monic cofactor with no rational roots)."""
    roots = rational_roots(u)
    rest = u.monic()
    for r in roots:
        lin = UniPoly([-r, RAT_ONE])
        while True:
            q, rem = rest.divmod(lin)
            if rem.is_zero():
                rest = q
            else:
                break
    return roots, rest.monic()


def has_common_torus_zero(polys: Sequence[BiPoly]) -> bool:
    """Whether the system has a common complex zero with x != 0 and y != 0.

    Decided exactly by a Groebner basis of the system saturated by x*y; the
    basis is [1] iff no such zero exists (Nullstellensatz).
    """
    exprs = [bipoly_to_sympy(f) for f in polys if not f.is_zero()]
    if not exprs:
        return True  # empty system: every torus point qualifies
    exprs.append(_SX * _SY * _ST - 1)
    G = sympy.groebner(exprs, _SX, _SY, _ST, order="grevlex")
    return not (len(G.exprs) == 1 and G.exprs[0] == 1)
