"""Exact bivariate and univariate polynomial arithmetic over the rationals.

A :class:`BiPoly` is a sparse map from exponent pairs ``(i, j)`` (powers of
``x`` and ``y``) to nonzero rational coefficients; the zero polynomial is the
empty map.  A :class:`UniPoly` is a dense coefficient list from degree 0 up.
All values are immutable after construction and every operation is pure, so
instances can be shared freely across threads.
"""

from __future__ import annotations

import re
from typing import Dict, Iterator, List, Sequence, Tuple

from ._ratback import RAT_ONE, RAT_ZERO, Rat, rat, rat_str

Term = Tuple[int, int]


class ZeroPolynomialError(ValueError):
    """Raised when an operation requires a nonzero polynomial."""


class PolyParseError(SyntaxError):
    """Parse failure; carries the 0-based offset of the offending token."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial; coeffs[k] is the degree-k coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if not isinstance(c, int) else Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((Rat(c),))

    @classmethod
    def monomial(cls, c, k: int) -> "UniPoly":
        return cls((RAT_ZERO,) * k + (Rat(c),))

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self):
        if not self.coeffs:
            return RAT_ZERO
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RAT_ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] - other[k] for k in range(n)])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = Rat(other)
            return UniPoly([a * c for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [RAT_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        out = UniPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = [RAT_ZERO] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = other.deg
        lc = other.lc()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for t in range(d + 1):
                rem[k + t] -= f * other.coeffs[t]
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact univariate division")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = RAT_ONE / self.lc()
        return UniPoly([c * inv for c in self.coeffs])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def eval(self, v):
        acc = RAT_ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def strip_root_zero(self) -> Tuple["UniPoly", int]:
        """Split off the t^k factor: returns (p / t^k, k)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k >= len(self.coeffs):
            raise ZeroPolynomialError("zero polynomial")
        return UniPoly(self.coeffs[k:]), k

    def to_bipoly(self, axis: str = "x") -> "BiPoly":
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c != 0:
                terms[(k, 0) if axis == "x" else (0, k)] = c
        return BiPoly(terms)

    def to_str(self, var: str = "x") -> str:
        return self.to_bipoly("x").to_str(varnames=(var, var))

    def __repr__(self):
        return f"UniPoly({self.to_str('t')!r})"


def squarefree_part(u: UniPoly) -> UniPoly:
    """u / gcd(u, u'), monic; same roots with multiplicity one."""
    if u.is_zero():
        raise ZeroPolynomialError("squarefree_part of zero polynomial")
    g = u.gcd(u.derivative())
    return u.exact_div(g).monic()


# ---------------------------------------------------------------------------
# bivariate polynomials


class BiPoly:
    """Sparse exact polynomial in x, y over the rationals."""

    __slots__ = ("_t",)

    def __init__(self, terms: Dict[Term, object] | None = None, _trusted=False):
        if terms is None:
            self._t: Dict[Term, object] = {}
        elif _trusted:
            self._t = terms
        else:
            t = {}
            for (i, j), c in terms.items():
                c = Rat(c) if isinstance(c, int) else c
                if c != 0:
                    t[(int(i), int(j))] = c
            self._t = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "BiPoly":
        c = Rat(c) if not isinstance(c, type(RAT_ONE)) else c
        return cls({(0, 0): c}) if c != 0 else cls()

    @classmethod
    def var_x(cls) -> "BiPoly":
        return cls({(1, 0): RAT_ONE})

    @classmethod
    def var_y(cls) -> "BiPoly":
        return cls({(0, 1): RAT_ONE})

    @classmethod
    def monomial(cls, c, i: int, j: int) -> "BiPoly":
        return cls({(i, j): c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or set(self._t) == {(0, 0)}

    def support(self) -> List[Term]:
        return sorted(self._t)

    def items(self) -> Iterator[Tuple[Term, object]]:
        return iter(sorted(self._t.items()))

    def num_terms(self) -> int:
        return len(self._t)

    def coeff(self, i: int, j: int):
        return self._t.get((i, j), RAT_ZERO)

    def constant_term(self):
        return self._t.get((0, 0), RAT_ZERO)

    @property
    def degx(self) -> int:
        return max((i for i, _ in self._t), default=0)

    @property
    def degy(self) -> int:
        return max((j for _, j in self._t), default=0)

    def total_degree(self) -> int:
        return max((i + j for i, j in self._t), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self._t == other._t

    def __bool__(self):
        return bool(self._t)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self._t.items()}, _trusted=True)

    def __add__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s == 0:
                    del t[e]
                else:
                    t[e] = s
        return BiPoly(t, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return BiPoly.const(other) - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = Rat(other) if isinstance(other, int) else other
            if c == 0:
                return BiPoly.zero()
            return BiPoly({e: v * c for e, v in self._t.items()}, _trusted=True)
        if not self._t or not other._t:
            return BiPoly.zero()
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Term, object] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    out[e] = s + c1 * c2
        return BiPoly({e: c for e, c in out.items() if c != 0}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff_x(self) -> "BiPoly":
        return BiPoly(
            {(i - 1, j): c * i for (i, j), c in self._t.items() if i > 0},
            _trusted=True,
        )

    def diff_y(self) -> "BiPoly":
        return BiPoly(
            {(i, j - 1): c * j for (i, j), c in self._t.items() if j > 0},
            _trusted=True,
        )

    def eval(self, xv, yv):
        acc = RAT_ZERO
        for (i, j), c in self._t.items():
            acc += c * (xv ** i) * (yv ** j)
        return acc

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Exact multivariate division; raises ValueError if not divisible."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._t)
        (di, dj) = max(other._t)  # lex-leading term of the divisor
        dc = other._t[(di, dj)]
        out: Dict[Term, object] = {}
        while rem:
            (ri, rj) = max(rem)
            qi, qj = ri - di, rj - dj
            if qi < 0 or qj < 0:
                raise ValueError("inexact bivariate division")
            qc = rem[(ri, rj)] / dc
            out[(qi, qj)] = qc
            for (i, j), c in other._t.items():
                e = (i + qi, j + qj)
                s = rem.get(e, RAT_ZERO) - qc * c
                if s == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return BiPoly(out, _trusted=True)

    # -- views as a polynomial in one variable -----------------------------

    def y_coeffs(self) -> List[UniPoly]:
        """Coefficients as a polynomial in y over Q[x]; index = y-power."""
        rows: List[List] = [[] for _ in range(self.degy + 1)]
        for (i, j), c in self._t.items():
            row = rows[j]
            if len(row) <= i:
                row.extend([RAT_ZERO] * (i + 1 - len(row)))
            row[i] = c
        return [UniPoly(r) for r in rows]

    def x_coeffs(self) -> List[UniPoly]:
        """Coefficients as a polynomial in x over Q[y]; index = x-power."""
        rows: List[List] = [[] for _ in range(self.degx + 1)]
        for (i, j), c in self._t.items():
            row = rows[i]
            if len(row) <= j:
                row.extend([RAT_ZERO] * (j + 1 - len(row)))
            row[j] = c
        return [UniPoly(r) for r in rows]

    @classmethod
    def from_y_coeffs(cls, coeffs: Sequence[UniPoly]) -> "BiPoly":
        t = {}
        for j, u in enumerate(coeffs):
            for i, c in enumerate(u.coeffs):
                if c != 0:
                    t[(i, j)] = c
        return cls(t, _trusted=True)

    @classmethod
    def from_x_coeffs(cls, coeffs: Sequence[UniPoly]) -> "BiPoly":
        t = {}
        for i, u in enumerate(coeffs):
            for j, c in enumerate(u.coeffs):
                if c != 0:
                    t[(i, j)] = c
        return cls(t, _trusted=True)

    # -- printing ----------------------------------------------------------

    def to_str(self, varnames: Tuple[str, str] = ("x", "y")) -> str:
        """Canonical text: terms sorted by (i+j, i) descending."""
        if not self._t:
            return "0"
        vx, vy = varnames
        parts = []
        order = sorted(self._t, key=lambda e: (e[0] + e[1], e[0]), reverse=True)
        for idx, (i, j) in enumerate(order):
            c = self._t[(i, j)]
            neg = c < 0
            mag = -c if neg else c
            mono = []
            if i == 1:
                mono.append(vx)
            elif i > 1:
                mono.append(f"{vx}^{i}")
            if j == 1:
                mono.append(vy)
            elif j > 1:
                mono.append(f"{vy}^{j}")
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = rat_str(mag) + "*" + "*".join(mono)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"BiPoly({self.to_str()!r})"


# ---------------------------------------------------------------------------
# substitution and the Jacobian determinant


def substitute(P: BiPoly, sx: BiPoly, sy: BiPoly) -> BiPoly:
    """P(sx, sy), computed exactly by Horner over the term lattice."""
    if P.is_zero():
        return BiPoly.zero()
    x_is_id = sx == BiPoly.var_x()
    y_is_id = sy == BiPoly.var_y()
    if x_is_id and y_is_id:
        return P
    if y_is_id and not x_is_id:
        # Horner in x; the y-rows pass through unchanged.
        rows = P.x_coeffs()
        acc = BiPoly.zero()
        for u in reversed(rows):
            acc = acc * sx + u.to_bipoly("y")
        return acc
    # Horner in y with x-rows evaluated at sx via cached powers.
    rows = P.y_coeffs()
    powers = [BiPoly.const(1)]
    for _ in range(P.degx):
        powers.append(powers[-1] * sx)
    acc = BiPoly.zero()
    for u in reversed(rows):
        row_val = BiPoly.zero()
        for i, c in enumerate(u.coeffs):
            if c != 0:
                row_val = row_val + powers[i] * c
        acc = acc * sy + row_val
    return acc


def jacobian_det(P: BiPoly, Q: BiPoly) -> BiPoly:
    """P_x Q_y - P_y Q_x, exactly."""
    return P.diff_x() * Q.diff_y() - P.diff_y() * Q.diff_x()


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(\d+|[xy()+\-*/^])")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    # unicode minus is accepted as a convenience alias
    text = text.replace("−", "-")
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            bad = len(text) - len(text[pos:].lstrip())
            raise PolyParseError(f"unexpected character {text[bad]!r}", bad)
        tok = m.group(1)
        kind = "int" if tok[0].isdigit() else tok
        toks.append((kind, tok, m.start(1)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    """Recursive descent over: + - * ^ parentheses, x, y, integer and p/q."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str):
        t = self.next()
        if t[0] != kind:
            raise PolyParseError(f"expected {kind!r}, got {t[1]!r}", t[2])
        return t

    def parse(self) -> BiPoly:
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolyParseError(f"unexpected {t[1]!r}", t[2])
        return p

    def expr(self) -> BiPoly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.next()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in "+-":
            op = self.next()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> BiPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.next()
            acc = acc * self.factor()
        return acc

    def factor(self) -> BiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            t = self.expect("int")
            base = base ** int(t[1])
        return base

    def atom(self) -> BiPoly:
        kind, tok, pos = self.next()
        if kind == "int":
            num = int(tok)
            if self.peek()[0] == "/":
                self.next()
                dt = self.expect("int")
                den = int(dt[1])
                if den == 0:
                    raise PolyParseError("zero denominator", dt[2])
                return BiPoly.const(rat(num, den))
            return BiPoly.const(num)
        if kind == "x":
            return BiPoly.var_x()
        if kind == "y":
            return BiPoly.var_y()
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolyParseError(f"unexpected {tok!r}", pos)


def parse_poly(text: str) -> BiPoly:
    """Parse the expression grammar; parse-print-parse is the identity."""
    return _Parser(text).parse()
