"""Sparse multivariate polynomials over cyclotomic fields.

Variables are nonnegative integers (element ids). A monomial is a tuple of
(var, exp) pairs sorted by var with positive exponents; the empty tuple is 1.
Terms are kept in a dict monomial -> CycNum with no zero coefficients, all
coefficients embedded at the polynomial's cyclotomic order. The term order
everywhere is graded lexicographic on variable index.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import lcm

from .cyclotomic import CycNum, _coerce, _rat_str, parse_cyc
from .errors import (DimensionCap, ExactDivisionError, MissingVariable,
                     ParseError)

DEFAULT_CAP = 12


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_divides(a, b):
    """Does monomial a divide b."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b, a):
    """b / a, assuming divisibility."""
    da = dict(a)
    out = []
    for v, e in b:
        r = e - da.get(v, 0)
        if r:
            out.append((v, r))
    return tuple(out)


def mono_deg(m):
    return sum(e for _, e in m)


def mono_cmp(a, b):
    """Graded lex: higher total degree wins, then higher power of the
    least-index variable where they differ."""
    da, db = mono_deg(a), mono_deg(b)
    if da != db:
        return -1 if da < db else 1
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va < vb:
            return 1
        if vb < va:
            return -1
        if ea != eb:
            return 1 if ea > eb else -1
        i += 1
        j += 1
    if i < len(a):
        return 1
    if j < len(b):
        return -1
    return 0


_mono_key = cmp_to_key(mono_cmp)


def mono_str(m):
    parts = []
    for v, e in m:
        parts.append(f"x{v}" if e == 1 else f"x{v}^{e}")
    return "*".join(parts)


class Poly:
    """Sparse polynomial with CycNum coefficients at a shared order."""

    __slots__ = ("order", "terms")

    def __init__(self, order=1, terms=None):
        self.order = order
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(order=1):
        return Poly(order, {})

    @staticmethod
    def const(c, order=None):
        c = _coerce(c, order or 1) if not isinstance(c, CycNum) else c
        if order is not None and order != c.order:
            c = c.embed(lcm(order, c.order))
        if c.is_zero():
            return Poly(c.order, {})
        return Poly(c.order, {(): c})

    @staticmethod
    def variable(v, order=1):
        return Poly(order, {((v, 1),): CycNum.one(order)})

    def at_order(self, order):
        if order == self.order:
            return self
        return Poly(order, {m: c.embed(order) for m, c in self.terms.items()})

    @staticmethod
    def unify(a, b):
        if a.order == b.order:
            return a, b
        n = lcm(a.order, b.order)
        return a.at_order(n), b.at_order(n)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = Poly.const(other, self.order)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = Poly.unify(self, other)
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[m] == b.terms[m] for m in a.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = Poly.const(other, self.order)
        a, b = Poly.unify(self, other)
        terms = dict(a.terms)
        for m, c in b.terms.items():
            if m in terms:
                s = terms[m] + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
            else:
                terms[m] = c
        return Poly(a.order, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.order, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = Poly.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not isinstance(c, CycNum):
            c = _coerce(c, self.order)
        if c.is_zero():
            return Poly.zero(max(self.order, c.order))
        n = lcm(self.order, c.order)
        c = c.embed(n)
        return Poly(n, {m: x.embed(n) * c for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        a, b = Poly.unify(self, other)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        terms = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = mono_mul(ma, mb)
                c = ca * cb
                if m in terms:
                    s = terms[m] + c
                    if s.is_zero():
                        del terms[m]
                    else:
                        terms[m] = s
                elif not c.is_zero():
                    terms[m] = c
        return Poly(a.order, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def total_degree(self):
        if not self.terms:
            return 0
        return max(mono_deg(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {mono_deg(m) for m in self.terms}
        return len(degs) <= 1

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def leading(self):
        """(monomial, coefficient) maximal in graded lex order."""
        if not self.terms:
            raise ValueError("leading term of zero polynomial")
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def coefficient(self, m):
        return self.terms.get(m, CycNum.zero(self.order))

    def evaluate(self, point):
        """Evaluate at a map var -> int | Fraction | CycNum."""
        vars_needed = self.variables()
        missing = vars_needed - set(point)
        if missing:
            raise MissingVariable(f"no value for x{sorted(missing)[0]}")
        rational = self.order == 1 and all(
            isinstance(v, (int, Fraction)) for v in point.values())
        if rational:
            total = Fraction(0)
            for m, c in self.terms.items():
                v = c.as_fraction()
                for var, e in m:
                    v *= Fraction(point[var]) ** e
                total += v
            return CycNum.from_rational(total, 1)
        total = CycNum.zero(self.order)
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                p = point[var]
                if isinstance(p, CycNum):
                    v = v * p ** e
                else:
                    v = v * (Fraction(p) ** e)
            total = total + v
        return total

    def substitute(self, sub):
        """Substitute variables by polynomials; sub maps var -> Poly.
        Variables absent from sub are kept."""
        cache = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = sub[v] ** e
            return cache[key]

        out = Poly.zero(self.order)
        for m, c in self.terms.items():
            term = Poly.const(c, self.order)
            for v, e in m:
                if v in sub:
                    term = term * power(v, e)
                else:
                    term = term * Poly.variable(v, self.order) ** e
            out = out + term
        return out

    def to_str(self, names=None):
        """Canonical string, terms in descending graded lex order."""
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=_mono_key, reverse=True)
        parts = []
        for m in monos:
            c = self.terms[m]
            body, neg = _term_str(m, c, names)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.order}, {self.to_str()!r})"


def _term_str(m, c, names=None):
    """Return (body, negated) for one term in the canonical print."""
    def mstr():
        if names is None:
            return mono_str(m)
        parts = []
        for v, e in m:
            t = f"x_{names[v]}" if v < len(names) and names[v] else f"x{v}"
            parts.append(t if e == 1 else f"{t}^{e}")
        return "*".join(parts)

    if not m:
        if c.is_rational():
            q = c.as_fraction()
            return _rat_str(abs(q)), q < 0
        return "(" + c.to_str() + ")", False
    if c.is_rational():
        q = c.as_fraction()
        if abs(q) == 1:
            return mstr(), q < 0
        return f"{_rat_str(abs(q))}*{mstr()}", q < 0
    return f"({c.to_str()})*{mstr()}", False


@dataclass(frozen=True)
class LinForm:
    """A linear form sum(coeffs[v] * x_v); at least one nonzero coefficient."""
    order: int
    coeffs: tuple  # tuple of (var, CycNum) sorted by var

    @staticmethod
    def make(mapping, order=None):
        items = []
        n = order or 1
        for v, c in mapping.items():
            if not isinstance(c, CycNum):
                c = _coerce(c, 1)
            if not c.is_zero():
                n = lcm(n, c.order)
                items.append((v, c))
        if not items:
            raise ValueError("linear form needs a nonzero coefficient")
        items.sort(key=lambda p: p[0])
        return LinForm(n, tuple((v, c.embed(n)) for v, c in items))

    def to_poly(self):
        return Poly(self.order, {((v, 1),): c for v, c in self.coeffs})


def substitute_linear(p, sub):
    """Substitute each variable of p by a LinForm. sub: var -> LinForm;
    every variable of p must be present."""
    missing = p.variables() - set(sub)
    if missing:
        raise MissingVariable(f"no substitution for x{sorted(missing)[0]}")
    return p.substitute({v: lf.to_poly() for v, lf in sub.items()})


def divide_exact(f, d):
    """Exact polynomial quotient f / d; raises ExactDivisionError if the
    division leaves a remainder."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f, d = Poly.unify(f, d)
    if f.is_zero():
        return f
    md, cd = d.leading()
    q = Poly.zero(f.order)
    r = f
    while not r.is_zero():
        mr, cr = r.leading()
        if not mono_divides(md, mr):
            raise ExactDivisionError(
                f"leading term {mono_str(mr) or '1'} not divisible by {mono_str(md) or '1'}")
        m = mono_div(mr, md)
        c = cr / cd
        t = Poly(f.order, {m: c})
        q = q + t
        r = r - t * d
    return q


def det_poly_matrix(matrix, cap=DEFAULT_CAP):
    """Exact determinant of a square matrix of Poly. Cofactor expansion up
    to dimension 6, fraction-free Bareiss elimination beyond."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n > cap:
        raise DimensionCap(f"symbolic determinant of dimension {n} exceeds cap {cap}")
    order = 1
    for row in matrix:
        for p in row:
            order = lcm(order, p.order)
    matrix = [[p.at_order(order) for p in row] for row in matrix]
    if n <= 6:
        return _det_cofactor(matrix, list(range(n)), list(range(n)))
    return _det_bareiss(matrix)


def _det_cofactor(matrix, rows, cols):
    n = len(rows)
    order = matrix[rows[0]][cols[0]].order if n else 1
    if n == 1:
        return matrix[rows[0]][cols[0]]
    # expand along the column with the most zeros
    best_j, best_zeros = 0, -1
    for j in range(n):
        z = sum(1 for i in range(n) if matrix[rows[i]][cols[j]].is_zero())
        if z > best_zeros:
            best_j, best_zeros = j, z
    if best_zeros == n:
        return Poly.zero(order)
    col = cols[best_j]
    rest = cols[:best_j] + cols[best_j + 1:]
    total = Poly.zero(order)
    for i in range(n):
        entry = matrix[rows[i]][col]
        if entry.is_zero():
            continue
        minor = _det_cofactor(matrix, rows[:i] + rows[i + 1:], rest)
        term = entry * minor
        if (i + best_j) % 2:
            term = -term
        total = total + term
    return total


def _det_bareiss(matrix):
    n = len(matrix)
    m = [row[:] for row in matrix]
    order = m[0][0].order
    sign = 1
    prev = Poly.const(1, order)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(order)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
            m[i][k] = Poly.zero(order)
        prev = pivot
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


def poly_identity_test(p, q, mode="exact", seed=0, rounds=5):
    """Decide p == q. Exact mode compares canonical forms. Randomized mode
    evaluates at integer points in [-10^6, 10^6] and reports the
    Schwartz-Zippel failure bound; a nonzero evaluation is a definitive
    witness of inequality."""
    if mode == "exact":
        return {"equal": p == q, "mode": "exact", "rounds": 0, "seed": seed}
    import random as _random
    rng = _random.Random(seed)
    vars_all = sorted(p.variables() | q.variables())
    diff_deg = max(p.total_degree(), q.total_degree())
    for r in range(rounds):
        point = {v: rng.randint(-10 ** 6, 10 ** 6) for v in vars_all}
        if not (p.evaluate(point) == q.evaluate(point)):
            return {"equal": False, "mode": "randomized", "rounds": r + 1,
                    "seed": seed, "witness": point}
    bound = Fraction(diff_deg, 2 * 10 ** 6) ** rounds if diff_deg else Fraction(0)
    return {"equal": True, "mode": "randomized", "rounds": rounds,
            "seed": seed, "error_bound": str(bound)}


def parse_poly(text, order=1):
    """Parse the canonical Poly string form."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty polynomial literal")
    if s == "0":
        return Poly.zero(order)
    terms = _split_terms(s, text)
    total = Poly.zero(order)
    for sg, term in terms:
        total = total + _parse_term(term, sg, order, text)
    return total


def _split_terms(s, context):
    terms = []
    i, n = 0, len(s)
    while i < n:
        sign = 1
        if s[i] == "+":
            i += 1
        elif s[i] == "-":
            sign = -1
            i += 1
        j = i
        depth = 0
        while j < n:
            ch = s[j]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced parens in {context!r}")
            elif ch in "+-" and depth == 0:
                break
            j += 1
        if depth != 0 or j == i:
            raise ParseError(f"bad polynomial literal {context!r}")
        terms.append((sign, s[i:j]))
        i = j
    return terms


def _parse_term(term, sign, order, context):
    coeff = CycNum.one(order)
    mono = ()
    rest = term
    if rest.startswith("("):
        close = rest.index(")")
        coeff = parse_cyc(rest[1:close], order)
        rest = rest[close + 1:]
        if rest.startswith("*"):
            rest = rest[1:]
        elif rest:
            raise ParseError(f"bad term {term!r} in {context!r}")
    factors = [f for f in rest.split("*") if f] if rest else []
    seen = {}
    for f in factors:
        if f.startswith("x"):
            body = f[1:]
            if "^" in body:
                v_s, _, e_s = body.partition("^")
                if not v_s.isdigit() or not e_s.isdigit() or int(e_s) < 1:
                    raise ParseError(f"bad factor {f!r} in {context!r}")
                v, e = int(v_s), int(e_s)
            elif body.isdigit():
                v, e = int(body), 1
            else:
                raise ParseError(f"bad factor {f!r} in {context!r}")
            seen[v] = seen.get(v, 0) + e
        else:
            coeff = coeff * parse_cyc(f, order)
    mono = tuple(sorted(seen.items()))
    if sign < 0:
        coeff = -coeff
    return Poly(coeff.order, {mono: coeff}) if not coeff.is_zero() else Poly.zero(order)
