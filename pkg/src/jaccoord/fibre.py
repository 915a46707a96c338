"""Per-fibre invariants of P - c: absolute factor count, Newton
nondegeneracy, genus and branches at infinity, special value candidates.

The absolute irreducible factor count is the dimension of the rational
solution space of a first-order differential system (Ruppert/Gao): for
squarefree f, pairs (g, h) with g_y f - g f_y = h_x f - h f_x under the
degree bounds degx g <= degx f - 1, degy g <= degy f, degx h <= degx f,
degy h <= degy f - 1.  The bounds are validated against a constructive
oracle in the test suite.  Genus is the interior lattice point count of the
Newton polygon, reported only under full nondegeneracy and irreducibility;
everything outside those hypotheses is an explicit Unknown, never a guess.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ._ratback import RAT_ONE, RAT_ZERO, Rat, rat
from .qpoly import BiPoly, UniPoly, squarefree_part, substitute
from .newton import edge_faces, lattice_counts, newton_polygon
from .elim import (
    BIPOLY_RING,
    RAT_RING,
    UNIPOLY_RING,
    bipoly_gcd,
    bipoly_squarefree_part,
    has_common_torus_zero,
    rat_det,
    rat_eliminate,
    resultant,
    strip_rational_roots,
)


class ConstantInputError(ValueError):
    """The operation needs a nonconstant polynomial."""


class NotSquarefreeError(ValueError):
    """The caller must pass the squarefree part."""


@dataclass(frozen=True)
class Unknown:
    """A refused answer, with the failed gate named."""

    reason: str

    def __repr__(self):
        return f"Unknown({self.reason})"


MaybeInt = Union[int, Unknown]


# ---------------------------------------------------------------------------
# Ruppert/Gao linear system


def _ruppert_unknowns(m: int, n: int) -> Tuple[List[Tuple[str, int, int]], int]:
    unknowns = [("g", u, v) for u in range(m) for v in range(n + 1)]
    unknowns += [("h", u, v) for u in range(m + 1) for v in range(n)]
    return unknowns, len(unknowns)


def ruppert_rows(f_terms: Dict[Tuple[int, int], object], m: int, n: int, ring):
    """Coefficient matrix of the differential system, rows sorted by monomial.

    Works over any coefficient ring (rationals, or polynomials in the fibre
    value c when hunting rank drops).
    """
    unknowns, ncols = _ruppert_unknowns(m, n)
    columns: List[Dict[Tuple[int, int], object]] = []
    for kind, u, v in unknowns:
        col: Dict[Tuple[int, int], object] = {}

        def acc(i, j, coeff):
            if i < 0 or j < 0:
                return
            cur = col.get((i, j))
            col[(i, j)] = coeff if cur is None else ring.add(cur, coeff)

        for (i, j), c in sorted(f_terms.items()):
            if kind == "g":
                # g_y * f  -  g * f_y
                if v > 0:
                    acc(i + u, j + v - 1, ring.mul(c, _ring_int(ring, v)))
                if j > 0:
                    acc(i + u, j - 1 + v, ring.mul(c, _ring_int(ring, -j)))
            else:
                # -(h_x * f - h * f_x) = -h_x f + h f_x
                if u > 0:
                    acc(i + u - 1, j + v, ring.mul(c, _ring_int(ring, -u)))
                if i > 0:
                    acc(i - 1 + u, j + v, ring.mul(c, _ring_int(ring, i)))
        columns.append(col)
    monomials = sorted({e for col in columns for e in col})
    rows = []
    for e in monomials:
        rows.append([col.get(e, ring.zero) for col in columns])
    return rows, ncols


def _ring_int(ring, k: int):
    if ring is RAT_RING:
        return Rat(k)
    one = ring.one
    out = ring.zero
    step = one if k >= 0 else ring.neg(one)
    for _ in range(abs(k)):
        out = ring.add(out, step)
    return out


def absolute_factor_count(f: BiPoly) -> int:
    """Number of absolutely irreducible factors of a squarefree polynomial."""
    if f.is_constant():
        raise ConstantInputError("absolute_factor_count needs a nonconstant input")
    if not bipoly_squarefree_part(f)[1]:
        raise NotSquarefreeError("input must be squarefree")
    m, n = f.degx, f.degy
    rows, ncols = ruppert_rows(dict(f.items()), m, n, RAT_RING)
    rank, _, _ = rat_eliminate(rows)
    dim = ncols - rank
    assert dim >= 1, "solution space lost the logarithmic-derivative solutions"
    return dim


# ---------------------------------------------------------------------------
# Newton nondegeneracy


@dataclass(frozen=True)
class Nondegeneracy:
    ok: bool
    reason: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.ok


def nondegenerate(f: BiPoly) -> Nondegeneracy:
    """True iff every edge face is squarefree with both endpoint monomials
    present, and f, f_x, f_y share no zero with both coordinates nonzero."""
    if f.is_constant():
        raise ConstantInputError("nondegenerate needs a nonconstant input")
    N = newton_polygon(f)
    for face in edge_faces(f, N):
        e: UniPoly = face["e"]
        if e.is_zero() or e.coeffs[0] == 0 or e.deg < face["full_length"]:
            return Nondegeneracy(
                False, "FaceEndpointMissing", f"edge {face['v0']}-{face['v1']}"
            )
        if e.deg >= 1 and squarefree_part(e).deg != e.deg:
            return Nondegeneracy(
                False, "FaceNotSquarefree", f"edge {face['v0']}-{face['v1']}"
            )
    if has_common_torus_zero([f, f.diff_x(), f.diff_y()]):
        return Nondegeneracy(False, "TorusSingular", None)
    return Nondegeneracy(True)


# ---------------------------------------------------------------------------
# genus and branches at infinity


def _shift_to_nonzero_constant(f: BiPoly) -> Optional[Tuple[BiPoly, Tuple]]:
    """Seeded translation (x,y) -> (x+u, y+v) with f(u,v) != 0; None if the
    8 attempts all fail."""
    rng = random.Random(0)
    for _ in range(8):
        u = rat(rng.randint(-7, 7), rng.randint(1, 3))
        v = rat(rng.randint(-7, 7), rng.randint(1, 3))
        if f.eval(u, v) != 0:
            sx = BiPoly({(1, 0): RAT_ONE, (0, 0): u})
            sy = BiPoly({(0, 1): RAT_ONE, (0, 0): v})
            return substitute(f, sx, sy), (u, v)
    return None


def _genus_pipeline(
    f: BiPoly,
) -> Tuple[MaybeInt, Optional[BiPoly], Optional[Nondegeneracy]]:
    """Shared by genus() and fibre_report(): returns (genus, shifted poly
    actually analyzed, its nondegeneracy)."""
    if f.is_constant():
        raise ConstantInputError("genus needs a nonconstant input")
    g = f
    if f.constant_term() == 0:
        shifted = _shift_to_nonzero_constant(f)
        if shifted is None:
            return Unknown("ShiftFailed"), None, None
        g = shifted[0]
    if not bipoly_squarefree_part(g)[1]:
        return Unknown("NotSquarefree"), g, None
    nd = nondegenerate(g)
    if not nd.ok:
        return Unknown("Degenerate"), g, nd
    if absolute_factor_count(g) != 1:
        return Unknown("Reducible"), g, nd
    N = newton_polygon(g)
    if N.dim < 2:
        return Unknown("SegmentPolygon"), g, nd
    interior, _, _ = lattice_counts(N)
    return interior, g, nd


def genus(f: BiPoly) -> MaybeInt:
    """Geometric genus via interior lattice points; translation applied first
    when the constant term vanishes (the genus is translation invariant)."""
    return _genus_pipeline(f)[0]


def branches_at_infinity(f: BiPoly) -> MaybeInt:
    """Number of places at infinity, counted by boundary lattice lengths.

    Unlike the genus this is not translation invariant, so a zero constant
    term is refused rather than shifted away.
    """
    if f.is_constant():
        raise ConstantInputError("branches_at_infinity needs a nonconstant input")
    if f.constant_term() == 0:
        return Unknown("ZeroConstantTerm")
    nd = nondegenerate(f)
    if not nd.ok:
        return Unknown("Degenerate")
    N = newton_polygon(f)
    if N.dim == 2:
        total = 0
        for v0, v1 in N.edges():
            ux, uy = v1[0] - v0[0], v1[1] - v0[1]
            # CCW boundary: outward normal is the direction rotated by -90
            nu1, nu2 = uy, -ux
            if nu1 > 0 or nu2 > 0:
                total += _gcd(abs(ux), abs(uy))
        return total
    # segment through the origin: f = e(x^p y^q) with e(0) != 0
    faces = edge_faces(f, N)
    e: UniPoly = faces[0]["e"]
    p, q = faces[0]["dir"]
    s = squarefree_part(e).deg
    beta = 2 if (p >= 1 and q >= 1) else 1
    return s * beta


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# fibre report


@dataclass(frozen=True)
class FibreReport:
    c: object
    abs_factor_count: int
    multiplicity_reduced: bool
    nondegenerate: bool
    genus: MaybeInt
    branches_at_infinity: MaybeInt


def fibre_report(P: BiPoly, c) -> FibreReport:
    """All invariants of the fibre P = c, computed on the squarefree part."""
    if P.is_constant():
        raise ConstantInputError("fibre_report needs a nonconstant P")
    f = P - BiPoly.const(c)
    sq, reduced = bipoly_squarefree_part(f)
    count = absolute_factor_count(sq)
    if count != 1:
        nd = nondegenerate(sq)
        return FibreReport(c, count, reduced, nd.ok, Unknown("Reducible"), Unknown("Reducible"))
    g_val, analyzed, nd = _genus_pipeline(sq)
    nd_ok = nd.ok if nd is not None else False
    b_val = branches_at_infinity(sq)
    return FibreReport(c, count, reduced, nd_ok, g_val, b_val)


# ---------------------------------------------------------------------------
# special value candidates


@dataclass(frozen=True)
class SpecialValues:
    rational_candidates: Tuple
    irrational_witnesses: Tuple[UniPoly, ...]


def _c_poly(const_term, shift_c: bool) -> BiPoly:
    """Constant coefficient as a polynomial in c (axes (x, c))."""
    t = {}
    if const_term != 0:
        t[(0, 0)] = const_term
    if shift_c:
        t[(0, 1)] = -RAT_ONE
    return BiPoly(t)


def _yrep_minus_c(P: BiPoly) -> List[BiPoly]:
    """P - c as a polynomial in y whose coefficients live in Q[x, c]."""
    rows: List[Dict] = [dict() for _ in range(P.degy + 1)]
    for (i, j), coeff in P.items():
        rows[j][(i, 0)] = coeff
    out = [BiPoly(r) for r in rows]
    out[0] = out[0] + BiPoly({(0, 1): -RAT_ONE})
    return out


def _yrep_plain(P: BiPoly) -> List[BiPoly]:
    rows: List[Dict] = [dict() for _ in range(P.degy + 1)]
    for (i, j), coeff in P.items():
        rows[j][(i, 0)] = coeff
    return [BiPoly(r) for r in rows]


def _split_x_content(A: BiPoly) -> Tuple[UniPoly, BiPoly]:
    """A in Q[x, c] = cont(c) * pp; returns (content in c, primitive part)."""
    coeffs = A.x_coeffs()  # UniPoly in c per x power
    cont = UniPoly.zero()
    for u in coeffs:
        if not u.is_zero():
            cont = cont.gcd(u) if not cont.is_zero() else u.monic()
    pp = BiPoly.from_x_coeffs([u.exact_div(cont) for u in coeffs])
    return cont, pp


def _lagrange_interp(pts: Sequence[Tuple]) -> UniPoly:
    out = UniPoly.zero()
    for k, (xk, yk) in enumerate(pts):
        if yk == 0:
            continue
        num = UniPoly.const(1)
        den = RAT_ONE
        for j, (xj, _) in enumerate(pts):
            if j == k:
                continue
            num = num * UniPoly([-xj, RAT_ONE])
            den = den * (xk - xj)
        out = out + num * (yk / den)
    return out


def _ruppert_rank_drop_det(P: BiPoly) -> Optional[UniPoly]:
    """det(c) of a generically nonsingular maximal square submatrix of the
    differential-system matrix of P - c; its roots flag factor-count jumps."""
    terms: Dict[Tuple[int, int], UniPoly] = {}
    for (i, j), coeff in P.items():
        terms[(i, j)] = UniPoly.const(coeff)
    base = terms.get((0, 0), UniPoly.zero())
    terms[(0, 0)] = base + UniPoly([RAT_ZERO, -RAT_ONE])  # constant slot minus c
    m, n = P.degx, P.degy
    rows, ncols = ruppert_rows(terms, m, n, UNIPOLY_RING)
    if not rows:
        return None
    best = None
    for probe in (rat(17, 3), rat(-19, 5), rat(23, 7)):
        num_rows = [[u.eval(probe) for u in row] for row in rows]
        rank, prow, pcol = rat_eliminate(num_rows)
        if best is None or rank > best[0]:
            best = (rank, prow, pcol)
    rank, prow, pcol = best
    if rank == 0:
        return None
    sub = [[rows[i][j] for j in pcol] for i in prow]
    degbound = sum(max((u.deg for u in r if not u.is_zero()), default=0) for r in sub)
    pts = []
    for k in range(degbound + 1):
        ck = Rat(k)
        pts.append((ck, rat_det([[u.eval(ck) for u in r] for r in sub])))
    return _lagrange_interp(pts)


def special_value_candidates(P: BiPoly) -> SpecialValues:
    """Superset heuristic for values c where the fibre P = c is special.

    Union of (a) roots of the resultant-eliminated critical system
    {P - c, P_x, P_y} with c-contents collected at each stage, and (b) roots
    of the rank-drop determinant of the differential system of P - c.  May
    contain non-special values; irrational roots are reported through their
    squarefree minimal-polynomial cofactors.
    """
    if P.is_constant():
        raise ConstantInputError("special_value_candidates needs a nonconstant P")
    factors: List[UniPoly] = []
    Px, Py = P.diff_x(), P.diff_y()
    if P.degy >= 1:
        A = resultant(_yrep_minus_c(P), _yrep_plain(Py), BIPOLY_RING)
        _collect_xc(A, factors, Px, P)
    else:
        # P is univariate in x: critical values of a one-variable map
        coeffs = [UniPoly.const(u[0]) for u in P.x_coeffs()]
        coeffs[0] = coeffs[0] + UniPoly([RAT_ZERO, -RAT_ONE])
        dcoeffs = [UniPoly.const(u[0]) for u in Px.x_coeffs()] if not Px.is_zero() else []
        R = resultant(coeffs, dcoeffs, UNIPOLY_RING)
        factors.append(R)
    det = _ruppert_rank_drop_det(P)
    if det is not None:
        factors.append(det)
    cands = set()
    minpolys: List[UniPoly] = []
    for qpol in factors:
        if qpol is None or qpol.is_zero() or qpol.is_constant():
            continue
        sqf = squarefree_part(qpol)
        roots, rest = strip_rational_roots(sqf)
        cands.update(roots)
        if rest.deg >= 1 and rest not in minpolys:
            minpolys.append(rest)
    minpolys.sort(key=lambda u: (u.deg, u.coeffs))
    return SpecialValues(tuple(sorted(cands)), tuple(minpolys))


def _collect_xc(A: BiPoly, factors: List[UniPoly], Px: BiPoly, P: BiPoly) -> None:
    """Continue elimination of x from A(x,c) against Res_y(P - c, P_x)."""
    if A.is_zero():
        return
    contA, ppA = _split_x_content(A)
    factors.append(contA)
    if Px.is_zero():
        # no x dependence anywhere; ppA must be constant in x
        if ppA.degx == 0:
            factors.append(ppA.x_coeffs()[0])
        return
    B = resultant(_yrep_minus_c(P), _yrep_plain(Px), BIPOLY_RING)
    if B.is_zero():
        return
    contB, ppB = _split_x_content(B)
    factors.append(contB)
    if ppA.degx == 0:
        factors.append(ppA.x_coeffs()[0])
        return
    if ppB.degx == 0:
        factors.append(ppB.x_coeffs()[0])
        return
    R = resultant(ppA.x_coeffs(), ppB.x_coeffs(), UNIPOLY_RING)
    if R.is_zero():
        # shared factor in (x, c); fold it out and retry once
        G = bipoly_gcd(ppA, ppB)
        factors.append(_split_x_content(G)[0])
        ppA2 = ppA.exact_div(G)
        ppB2 = ppB.exact_div(G)
        if ppA2.degx == 0:
            factors.append(ppA2.x_coeffs()[0])
        elif ppB2.degx == 0:
            factors.append(ppB2.x_coeffs()[0])
        else:
            R2 = resultant(ppA2.x_coeffs(), ppB2.x_coeffs(), UNIPOLY_RING)
            factors.append(R2)
        return
    factors.append(R)
