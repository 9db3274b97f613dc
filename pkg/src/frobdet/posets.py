"""Finite posets, Mobius functions, and semilattice determinants.

The semilattice determinant splits into linear factors indexed by the
elements: for a meet semilattice L the determinant of [x_{ab}] equals
prod_a sum_{b <= a} mu(b, a) x_b, after Wilf and Lindstrom.
"""

from dataclasses import dataclass
from math import gcd

from .cyclotomic import CycNum
from .errors import (ModeHypothesisFailed, NotAPartialOrder, NotSemilattice,
                     VerificationFailed)
from .factorization import Factorization, checked, random_table_check
from .linalg import int_det, unitriangular_inverse
from .poly import LinForm, Poly, det_poly_matrix


@dataclass(frozen=True)
class FinitePoset:
    n: int
    leq: tuple  # tuple of row tuples of bool, leq[a][b] means a <= b
    extension: tuple  # linear extension, minimal elements first

    @staticmethod
    def from_leq(leq):
        n = len(leq)
        rows = tuple(tuple(bool(v) for v in row) for row in leq)
        for a in range(n):
            if len(rows[a]) != n:
                raise NotAPartialOrder("ragged relation matrix")
            if not rows[a][a]:
                raise NotAPartialOrder(f"relation not reflexive at {a}")
        for a in range(n):
            for b in range(n):
                if a != b and rows[a][b] and rows[b][a]:
                    raise NotAPartialOrder(f"antisymmetry fails at ({a}, {b})")
                if rows[a][b]:
                    for c in range(n):
                        if rows[b][c] and not rows[a][c]:
                            raise NotAPartialOrder(
                                f"transitivity fails at ({a}, {b}, {c})")
        # pull out the least-index minimal element repeatedly
        remaining = list(range(n))
        ext = []
        while remaining:
            for a in remaining:
                if all(not rows[b][a] for b in remaining if b != a):
                    ext.append(a)
                    remaining.remove(a)
                    break
            else:
                raise NotAPartialOrder("no minimal element found")
        return FinitePoset(n, rows, tuple(ext))

    def zeta(self):
        """zeta[a][b] = 1 if a <= b else 0."""
        return [[1 if v else 0 for v in row] for row in self.leq]

    def down_set(self, a):
        return [b for b in range(self.n) if self.leq[b][a]]


def mobius(poset):
    """Mobius matrix: mu[a][b] with sum_{a<=c<=b} mu(a, c) = [a == b]."""
    return unitriangular_inverse(poset.zeta(), poset.extension)


def natural_order(S, mode):
    """Natural partial order on S under one of three hypotheses.

    semilattice: s <= t iff st = s, for commutative idempotent S.
    inverse: s <= t iff s = te for an idempotent e, for inverse S.
    central_idempotent: s <= t iff s = t s+, where s+ is the least
    idempotent identity on s; needs central idempotents and S.S = S.
    """
    n, t = S.n, S.table
    idem = [e for e in range(n) if t[e][e] == e]
    if mode == "semilattice":
        for a in range(n):
            if t[a][a] != a:
                raise ModeHypothesisFailed(f"{S.name_of(a)} is not idempotent")
            for b in range(n):
                if t[a][b] != t[b][a]:
                    raise ModeHypothesisFailed("multiplication not commutative")
        leq = [[t[a][b] == a for b in range(n)] for a in range(n)]
        return FinitePoset.from_leq(leq)
    if mode == "inverse":
        for s in range(n):
            weak = [u for u in range(n)
                    if t[t[s][u]][s] == s and t[t[u][s]][u] == u]
            if len(weak) != 1:
                raise ModeHypothesisFailed(
                    f"{S.name_of(s)} has {len(weak)} weak inverses, not 1")
        leq = [[any(t[b][e] == a for e in idem) for b in range(n)]
               for a in range(n)]
        return FinitePoset.from_leq(leq)
    if mode == "central_idempotent":
        splus = splus_map(S)
        leq = [[t[b][splus[a]] == a for b in range(n)] for a in range(n)]
        return FinitePoset.from_leq(leq)
    raise ModeHypothesisFailed(f"unknown order mode {mode!r}")


def splus_map(S):
    """For each s the least idempotent e with se = s, as a tuple.

    Exists whenever idempotents are central and every element has some
    idempotent identity; the least one is the product of them all.
    """
    n, t = S.n, S.table
    idem = [e for e in range(n) if t[e][e] == e]
    for e in idem:
        for a in range(n):
            if t[e][a] != t[a][e]:
                raise ModeHypothesisFailed(
                    f"idempotent {S.name_of(e)} is not central")
    splus = []
    for s in range(n):
        above = [e for e in idem if t[s][e] == s]
        if not above:
            raise ModeHypothesisFailed(
                f"no idempotent acts as identity on {S.name_of(s)}")
        p = above[0]
        for e in above[1:]:
            p = t[p][e]
        if t[p][p] != p or t[s][p] != s:
            raise ModeHypothesisFailed(
                f"idempotent identities on {S.name_of(s)} have no least one")
        splus.append(p)
    return tuple(splus)


def semilattice_linear_forms(S):
    """The factors of the semilattice determinant, one per element.

    Factor for a is sum over b <= a of mu(b, a) x_b; the product over all
    a is the determinant on the nose (constant 1).
    """
    poset = natural_order(S, "semilattice")
    mu = mobius(poset)
    forms = []
    for a in range(S.n):
        terms = {}
        for b in poset.down_set(a):
            if mu[b][a] != 0:
                terms[b] = CycNum.from_rational(mu[b][a])
        forms.append(LinForm.make(terms).to_poly())
    return forms


def factor_semilattice(S, verify_cap=8, seed=0):
    """Factor the determinant of a finite semilattice.

    Raises NotSemilattice unless S is commutative and idempotent. For
    |S| <= verify_cap the product is checked against the symbolic
    determinant exactly; larger cases carry a randomized check.
    """
    rep_ok = all(S.table[a][a] == a for a in range(S.n)) and \
        all(S.table[a][b] == S.table[b][a]
            for a in range(S.n) for b in range(a + 1, S.n))
    if not rep_ok:
        raise NotSemilattice("semigroup is not a commutative band")
    forms = semilattice_linear_forms(S)
    F = Factorization.of(CycNum.one(), [(f, 1) for f in forms],
                         "wilf-lindstrom")
    if S.n <= verify_cap:
        mat = [[Poly.variable(S.table[a][b]) for b in range(S.n)]
               for a in range(S.n)]
        ref = det_poly_matrix(mat, cap=max(12, S.n))
        return checked(ref, F, mode="exact", seed=seed)
    v = random_table_check(S, F, seed=seed)
    if not v["equal"]:
        raise VerificationFailed("semilattice factorization failed "
                                 "a randomized determinant check")
    return F.with_verification(v)


def smith_matrix(n):
    """The n by n matrix [gcd(i, j)] for 1 <= i, j <= n."""
    return [[gcd(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def smith_determinant(n):
    """det [gcd(i, j)] = prod_k phi(k), computed by integer elimination and
    cross-checked against the totient product."""
    det = int_det(smith_matrix(n))
    prod = 1
    for k in range(1, n + 1):
        prod *= sum(1 for a in range(1, k + 1) if gcd(a, k) == 1)
    if det != prod:
        raise VerificationFailed(
            f"gcd matrix determinant {det} disagrees with totient product {prod}")
    return det
