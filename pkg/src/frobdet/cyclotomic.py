"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value of order N is stored by its coordinates in the power basis
1, z, ..., z^(phi(N)-1) of Q[z]/(Phi_N), with Fraction coordinates, so two
values of equal order are equal iff their coordinate vectors are equal.
Values of different orders are compared and combined after embedding both
into Q(zeta_lcm) via zeta_N = zeta_M^(M/N).
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import OutOfRange, ParseError

MAX_ORDER = 10000

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_div_exact_int(num, den):
    """Quotient of integer coefficient lists, den monic; remainder must be 0."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dd]
        q[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    if any(num[:dd]):
        raise ArithmeticError("division not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order):
    """Integer coefficients of Phi_order, ascending, monic."""
    if not 1 <= order <= MAX_ORDER:
        raise OutOfRange(f"cyclotomic order {order} outside 1..{MAX_ORDER}")
    poly = [0] * order + [1]
    poly[0] = -1
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_div_exact_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _phi(order):
    return len(cyclotomic_polynomial(order)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(order):
    """Coordinates of z^k mod Phi_order for k in range(d, 2d-1)."""
    phi = cyclotomic_polynomial(order)
    d = len(phi) - 1
    rows = []
    row = [Fraction(-c) for c in phi[:d]]
    rows.append(tuple(row))
    for _ in range(d - 2):
        top = row[d - 1]
        row = [_ZERO] + row[: d - 1]
        if top:
            row = [row[i] - top * phi[i] for i in range(d)]
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_basis(order):
    """Coordinates of z^k mod Phi_order for every k in range(order)."""
    d = _phi(order)
    phi = cyclotomic_polynomial(order)
    rows = []
    row = [_ZERO] * d
    row[0] = _ONE
    rows.append(tuple(row))
    for _ in range(order - 1):
        top = row[d - 1]
        row = [_ZERO] + row[: d - 1]
        if top:
            row = [row[i] - top * phi[i] for i in range(d)]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce(coeffs, order):
    """Reduce a coefficient list of length <= 2d-1 mod Phi_order."""
    d = _phi(order)
    out = list(coeffs[:d])
    out += [_ZERO] * (d - len(out))
    if len(coeffs) > d:
        rows = _reduction_rows(order)
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = rows[k - d]
                for i in range(d):
                    out[i] += c * row[i]
    return out


class CycNum:
    """An element of Q(zeta_order) in canonical power-basis coordinates."""

    __slots__ = ("order", "coords")

    def __init__(self, order, coords):
        self.order = order
        self.coords = tuple(coords)

    @staticmethod
    def from_rational(q, order=1):
        q = Fraction(q)
        coords = [q] + [_ZERO] * (_phi(order) - 1)
        return CycNum(order, coords)

    @staticmethod
    def zero(order=1):
        return CycNum.from_rational(0, order)

    @staticmethod
    def one(order=1):
        return CycNum.from_rational(1, order)

    @staticmethod
    def root_of_unity(order, k=1):
        """zeta_order^k."""
        return CycNum(order, _power_basis(order)[k % order])

    def embed(self, order):
        if order == self.order:
            return self
        if order % self.order != 0:
            raise OutOfRange(f"cannot embed order {self.order} into {order}")
        step = order // self.order
        powers = _power_basis(order)
        d = _phi(order)
        out = [_ZERO] * d
        for j, c in enumerate(self.coords):
            if c:
                row = powers[(j * step) % order]
                for i in range(d):
                    out[i] += c * row[i]
        return CycNum(order, out)

    @staticmethod
    def unify(a, b):
        if a.order == b.order:
            return a, b
        n = lcm(a.order, b.order)
        return a.embed(n), b.embed(n)

    def __add__(self, other):
        other = _coerce(other, self.order)
        a, b = CycNum.unify(self, other)
        return CycNum(a.order, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-x for x in self.coords])

    def __sub__(self, other):
        return self + (-_coerce(other, self.order))

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.order, [x * q for x in self.coords])
        a, b = CycNum.unify(self, other)
        if len(a.coords) == 1:
            return CycNum(a.order, (a.coords[0] * b.coords[0],))
        conv = [_ZERO] * (2 * len(a.coords) - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        conv[i + j] += x * y
        return CycNum(a.order, _reduce(conv, a.order))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CycNum.from_rational(1 / self.coords[0], self.order)
        # extended Euclid against Phi_N in Q[z]; Phi_N is irreducible so the
        # last nonzero remainder is a constant
        r0 = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r1 = _trim(list(self.coords))
        s0, s1 = [_ZERO], [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod_frac(r0, r1)
            r = _trim(r)
            s = _poly_sub_frac(s0, _poly_mul_frac(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        c = r1[0]
        inv = [x / c for x in s1]
        return CycNum(self.order, _reduce(inv, self.order))

    def __truediv__(self, other):
        other = _coerce(other, self.order)
        a, b = CycNum.unify(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return _coerce(other, self.order) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNum.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        """Complex conjugation, zeta |-> zeta^(N-1)."""
        if len(self.coords) == 1:
            return self
        n = self.order
        powers = _power_basis(n)
        d = len(self.coords)
        out = [_ZERO] * d
        for j, c in enumerate(self.coords):
            if c:
                row = powers[(n - j) % n]
                for i in range(d):
                    out[i] += c * row[i]
        return CycNum(n, out)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_one(self):
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise OutOfRange(f"{self} is not rational")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = CycNum.unify(self, other)
        return a.coords == b.coords

    def __bool__(self):
        return not self.is_zero()

    def to_str(self):
        """Canonical string, a polynomial in z with descending powers."""
        if self.is_zero():
            return "0"
        parts = []
        for j in range(len(self.coords) - 1, -1, -1):
            c = self.coords[j]
            if c == 0:
                continue
            if j == 0:
                body = _rat_str(abs(c))
            else:
                mono = "z" if j == 1 else f"z^{j}"
                body = mono if abs(c) == 1 else f"{_rat_str(abs(c))}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"CycNum({self.order}, {self.to_str()!r})"


def _rat_str(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coerce(x, order):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x, order)
    raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_frac(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [_ZERO] * max(0, len(num) - dd)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dd] / lead
        q[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    return q, num[:dd] if dd else [_ZERO]


def _poly_mul_frac(a, b):
    if not a or not b:
        return [_ZERO]
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub_frac(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


_RAT_CHARS = set("0123456789/")


def parse_cyc(text, order=1):
    """Parse the canonical CycNum string form at the given order."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty cyclotomic literal")
    if s == "0":
        return CycNum.zero(order)
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
        while j < n and s[j] not in "+-":
            j += 1
        if j == i:
            raise ParseError(f"bad cyclotomic literal {text!r}")
        terms.append((sign, s[i:j]))
        i = j
    total = CycNum.zero(order)
    for sg, term in terms:
        if "z" in term:
            if "*" in term:
                coeff_s, _, mono = term.partition("*")
                coeff = _parse_rat(coeff_s, text)
            else:
                coeff, mono = _ONE, term
            if mono == "z":
                k = 1
            elif mono.startswith("z^") and mono[2:].isdigit():
                k = int(mono[2:])
            else:
                raise ParseError(f"bad cyclotomic literal {text!r}")
            if order <= 1:
                raise ParseError(f"power of z needs an order > 1: {text!r}")
            total = total + CycNum.root_of_unity(order, k) * (sg * coeff)
        else:
            total = total + CycNum.from_rational(sg * _parse_rat(term, text), order)
    return total


def _parse_rat(s, context):
    if not s or set(s) - _RAT_CHARS:
        raise ParseError(f"bad rational {s!r} in {context!r}")
    if "/" in s:
        nu, _, de = s.partition("/")
        if not nu.isdigit() or not de.isdigit():
            raise ParseError(f"bad rational {s!r} in {context!r}")
        return Fraction(int(nu), int(de))
    return Fraction(int(s))
