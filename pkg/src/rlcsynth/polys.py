"""Exact univariate polynomial algebra over rationals.

Everything the decision procedures need lives here: polynomial arithmetic
(generic enough to nest, so a Poly over rationals can also serve as the
coefficient ring for a Poly in a second variable), Bezoutian matrices,
Sylvester subresultants, the permanence/variation storage count, Sturm
isolation of real roots, and exact sign evaluation at isolated algebraic
numbers.  No floating point is used on any decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotCoprime
from .rat import ONE, ZERO, Rat, is_rat, rat_to_decimal, sign


# ---------------------------------------------------------------------------
# generic dense polynomials


class Poly:
    """Dense univariate polynomial; coeffs[i] multiplies the i-th power.

    Coefficients are exact rationals, or Polys themselves when a second
    variable is needed (the witness-parameter algebra).  Same-level
    polynomials combine with the usual operators; multiplication by a
    coefficient-ring element goes through scale().
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(tuple(Rat(c) if isinstance(c, int) else c for c in coeffs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly((c,))

    # -- structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coef(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly{self.coeffs}"

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            n = max(len(self.coeffs), len(other.coeffs))
            out = []
            for i in range(n):
                a = self.coeffs[i] if i < len(self.coeffs) else None
                b = other.coeffs[i] if i < len(other.coeffs) else None
                out.append(b if a is None else a if b is None else a + b)
            return Poly(out)
        if other == 0:
            return self
        return self + Poly((other,))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out: list = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                term = a * b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return Poly(tuple(t if t is not None else ZERO for t in out))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        """Multiply every coefficient by the ring element c."""
        if not c:
            return Poly()
        return Poly(tuple(co * c for co in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by the k-th power of the variable."""
        if not self.coeffs:
            return self
        zero = self.coeffs[0] - self.coeffs[0]
        return Poly((zero,) * k + self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        result = None
        base = self
        if n == 0:
            raise ValueError("use an explicit constant for power zero")
        while n:
            if n & 1:
                result = base if result is None else result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation ------------------------------------------------------

    def eval(self, x):
        """Horner evaluation; x may be a rational or a Poly (substitution)."""
        if not self.coeffs:
            return Poly() if isinstance(x, Poly) else ZERO
        acc = self.coeffs[-1]
        if isinstance(x, Poly) and not isinstance(acc, Poly):
            acc = Poly((acc,))
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def eval_neg(self, x):
        """Evaluate at -x without building an intermediate polynomial."""
        return Poly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))).eval(x)

    def derivative(self) -> "Poly":
        return Poly(tuple(c * Rat(i) for i, c in enumerate(self.coeffs) if i))

    # -- rational-coefficient helpers -------------------------------------

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Classical division; coefficients must form a field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn, dd = len(rem) - 1, other.degree
        if dn < dd:
            return Poly(), self
        inv_lead = ONE / other.lead
        quot = [ZERO] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = rem[dd + k] * inv_lead
            quot[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[j + k] -= oc * c
        return Poly(quot), Poly(rem[:dd])

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.lead)

    def content(self):
        """Positive rational c with self/c primitive integral (0 for zero)."""
        if self.is_zero():
            return ZERO
        from math import gcd, lcm

        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, abs(int(c.numerator)))
            den = lcm(den, int(c.denominator))
        return Rat(num, den)

    def primitive(self) -> "Poly":
        """Integer-coefficient scalar multiple with content one, same sign."""
        if self.is_zero():
            return self
        return self.scale(ONE / self.content())


def reverse_coeffs(p: Poly, n: int) -> Poly:
    """Map sum(a_i s^i), stated degree n, to sum(a_{n-i} s^i)."""
    if p.degree > n:
        raise ValueError("stated degree below actual degree")
    return Poly(tuple(p.coef(n - i) for i in range(n + 1)))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals; gcd(0, 0) is an error."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = a.primitive() if a else a, b.primitive() if b else b
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.primitive() if r else r
    return a.monic()


def square_free_part(p: Poly) -> Poly:
    """p with repeated roots collapsed to simple ones (primitive output)."""
    if p.degree <= 0:
        return p.monic() if p else p
    return p.exact_div(poly_gcd(p, p.derivative())).primitive()


def lift(p: Poly) -> Poly:
    """Re-read a rational-coefficient Poly as one with constant-Poly coeffs."""
    return Poly(tuple(Poly((c,)) for c in p.coeffs))


# ---------------------------------------------------------------------------
# small exact matrices


@dataclass(frozen=True)
class Matrix:
    """Row-major exact matrix; entries are rationals or Polys."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def trailing(self, k: int) -> "Matrix":
        """Submatrix of the final k rows and columns."""
        ent = []
        for i in range(self.rows - k, self.rows):
            ent.extend(self.row(i)[self.cols - k :])
        return Matrix(k, k, tuple(ent))

    def det(self):
        return det([list(self.row(i)) for i in range(self.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-e for e in self.entries))


def det(m: list[list]):
    """Determinant by fraction-free Bareiss elimination (exact divisions)."""
    n = len(m)
    if n == 0:
        return ONE
    m = [row[:] for row in m]
    rational = is_rat(m[0][0])
    sgn = 1
    prev = ONE if rational else None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sgn = -sgn
                    break
            else:
                return ZERO if rational else Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                if prev is None:
                    m[i][j] = num
                elif rational:
                    m[i][j] = num / prev
                else:
                    m[i][j] = num.exact_div(prev)
            m[i][k] = ZERO if rational else Poly()
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return -out if sgn < 0 else out


# ---------------------------------------------------------------------------
# Bezoutians and Sylvester subresultants


def _ring_zero(sample):
    return Poly() if isinstance(sample, Poly) else ZERO


def _ring_one(sample):
    if isinstance(sample, Poly):
        inner = _ring_one(sample.coeffs[0]) if sample.coeffs else ONE
        return Poly((inner,))
    return ONE


def bezoutian(q: Poly, p: Poly, n: int) -> Matrix:
    """Symmetric n-by-n matrix of the bilinear form
    (q(z)p(w) - p(z)q(w)) / (z - w), entries indexed from power zero.

    Works over nested-Poly coefficient rings too (used with a symbolic
    witness parameter); in that case lift both inputs first.
    """
    if n < 1:
        raise ValueError("bezoutian needs a degree bound of at least 1")
    if p.degree > n or q.degree > n:
        raise ValueError("degree exceeds the stated bound")
    sample = (p.coeffs or q.coeffs or (ZERO,))[0]
    zero = _ring_zero(sample)
    one = _ring_one(sample)
    # numerator as a polynomial in z whose coefficients are polynomials in w
    num_z = []
    for i in range(n + 1):
        qi, pi = q.coef(i), p.coef(i)
        if isinstance(sample, Poly):
            qi = qi if isinstance(qi, Poly) else Poly((qi,)) if qi else Poly()
            pi = pi if isinstance(pi, Poly) else Poly((pi,)) if pi else Poly()
        num_z.append(p.scale(qi) - q.scale(pi))
    # synthetic division by (z - w): quotient coefficients in z
    w = Poly((zero, one))
    quot: list[Poly] = [Poly()] * n
    carry = Poly()
    for k in range(n, 0, -1):
        carry = num_z[k] + w * carry
        quot[k - 1] = carry
    entries = []
    for i in range(n):
        row_poly = quot[i]
        for j in range(n):
            entries.append(row_poly.coef(j) if j <= row_poly.degree else zero)
    return Matrix(n, n, tuple(entries))


def sylvester_block(p: Poly, q: Poly, n: int, k: int) -> Matrix:
    """The 2(n-k)-square block of interleaved q/p coefficient rows."""
    m = 2 * (n - k)
    entries = []
    for t in range(n - k):
        for poly in (q, p):
            for j in range(m):
                d = n - (j - t)
                entries.append(poly.coef(d) if j >= t and 0 <= d <= n else ZERO)
    return Matrix(m, m, tuple(entries))


def subresultants(p: Poly, q: Poly, n: int) -> list:
    """[R_{n-1}, ..., R_1, R_0] via Sylvester block determinants."""
    if p.degree > n or q.degree > n:
        raise ValueError("degree exceeds the stated bound")
    return [sylvester_block(p, q, n, k).det() for k in range(n - 1, -1, -1)]


def subresultants_via_bezout(p: Poly, q: Poly, n: int) -> list:
    """Same sequence from trailing minors of the Bezoutian of (q, p)."""
    b = bezoutian(q, p, n)
    return [b.trailing(n - k).det() for k in range(n - 1, -1, -1)]


def resultant_r0(p: Poly, q: Poly, n: int):
    return sylvester_block(p, q, n, 0).det()


# ---------------------------------------------------------------------------
# sign bookkeeping


def same_sign(values, sig=sign) -> bool:
    """True when the nonzero members are all positive or all negative.

    Zeros are dropped first; an all-zero collection qualifies.
    """
    seen = 0
    for v in values:
        s = sig(v)
        if s == 0:
            continue
        if seen == 0:
            seen = s
        elif s != seen:
            return False
    return True


@dataclass(frozen=True)
class SignSummary:
    """Assigned sign sequence of 1, R_{n-1}, ..., R_0 plus its counts."""

    sequence: tuple[int, ...]
    permanences: int
    variations: int

    @property
    def capacitors(self) -> int:
        return self.permanences

    @property
    def inductors(self) -> int:
        return self.variations


def storage_counts(p: Poly, q: Poly) -> SignSummary:
    """Capacitor/inductor counts forced on any n-storage realization of p/q.

    Permanences in the subresultant sign sequence count capacitors,
    variations count inductors.  Zero entries inside the sequence take
    the sign (-1)^(j(j-1)/2) times the last nonzero entry, j positions
    back.  A vanishing R_0 means p, q were not coprime (or the function
    is outside every storage class) and raises.
    """
    n = max(p.degree, q.degree)
    if n < 1:
        raise ValueError("storage counts need degree at least 1")
    rs = subresultants(p, q, n)
    if not rs[-1]:
        raise NotCoprime("R_0 vanished: shared root or unrealizable input")
    values = [ONE] + rs
    signs: list[int] = []
    last_sign, last_idx = 1, 0
    for i, v in enumerate(values):
        s = sign(v)
        if i == 0:
            signs.append(1)
            last_sign, last_idx = 1, 0
            continue
        if s == 0:
            j = i - last_idx
            s = (-1) ** ((j * (j - 1)) // 2) * last_sign
        else:
            last_sign, last_idx = s, i
        signs.append(s)
    perms = sum(1 for a, b in zip(signs, signs[1:]) if a == b)
    return SignSummary(tuple(signs), perms, n - perms)


# ---------------------------------------------------------------------------
# Sturm sequences and real-root isolation


def sturm_chain(f: Poly) -> list[Poly]:
    chain = [f.primitive(), f.derivative().primitive()]
    while chain[-1]:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero():
            break
        chain.append((-r).primitive())
    return [c for c in chain if c]


def _variations(values) -> int:
    count, prev = 0, 0
    for v in values:
        s = sign(v)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain: list[Poly], x) -> int:
    return _variations(c.eval(x) for c in chain)


def sturm_count(chain: list[Poly], lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]; endpoints must not be
    roots of the first chain entry for the classical statement, which is
    how all call sites use it."""
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def cauchy_root_bound(f: Poly):
    """All real roots have magnitude below this rational bound."""
    lead = abs(f.lead)
    m = max((abs(c) for c in f.coeffs[:-1]), default=ZERO)
    return ONE + m / lead


@dataclass(frozen=True)
class RootLocus:
    """A real algebraic number: square-free defining polynomial plus an
    isolating closed interval.  lo == hi encodes an exact rational root."""

    defining: Poly
    lo: Rat
    hi: Rat

    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self):
        if not self.is_rational():
            raise ValueError("locus is not rational")
        return self.lo

    def refine(self) -> "RootLocus":
        """Halve the interval (no-op for rational loci)."""
        if self.is_rational():
            return self
        mid = (self.lo + self.hi) / 2
        fm = self.defining.eval(mid)
        if not fm:
            return RootLocus(self.defining, mid, mid)
        if sign(fm) == sign(self.defining.eval(self.lo)):
            return RootLocus(self.defining, mid, self.hi)
        return RootLocus(self.defining, self.lo, mid)

    def refine_below(self, width) -> "RootLocus":
        loc = self
        while not loc.is_rational() and loc.hi - loc.lo >= width:
            loc = loc.refine()
        return loc

    def approx(self, digits: int = 12) -> str:
        loc = self.refine_below(Rat(1, 10 ** (digits + 2)))
        mid = loc.lo if loc.is_rational() else (loc.lo + loc.hi) / 2
        return rat_to_decimal(mid, digits)

    def midpoint(self):
        return self.lo if self.is_rational() else (self.lo + self.hi) / 2


def _deflate_root(g: Poly, r) -> tuple[Poly, int]:
    """Divide out (x - r) as often as it divides g; returns (quotient, mult)."""
    linear = Poly((-r, ONE))
    mult = 0
    while g and not g.eval(r):
        g = g.exact_div(linear)
        mult += 1
    return g, mult


def sign_at(g: Poly, locus: RootLocus) -> int:
    """Exact sign of g at the algebraic number the locus isolates."""
    if g.is_zero():
        return 0
    if locus.is_rational():
        return sign(g.eval(locus.value))
    d = poly_gcd(g, locus.defining)
    if d.degree >= 1 and sign(d.eval(locus.lo)) != sign(d.eval(locus.hi)):
        return 0
    acc = 1
    loc = locus
    work = g
    chain = None
    while True:
        for endpoint, side in ((loc.lo, 1), (loc.hi, -1)):
            if work and not work.eval(endpoint):
                work, mult = _deflate_root(work, endpoint)
                if mult % 2:
                    acc *= side
                chain = None
        if work.degree <= 0:
            return acc * sign(work.lead if work else ZERO)
        if chain is None:
            chain = sturm_chain(work)
        if sturm_count(chain, loc.lo, loc.hi) == 0:
            return acc * sign(work.eval(loc.hi))
        loc = loc.refine()
        if loc.is_rational():
            return acc * sign(work.eval(loc.value))


def _rational_root_in(g: Poly, lo, hi) -> Rat | None:
    """Exact rational root of primitive-integer square-free g in (lo, hi),
    assuming exactly one root lives there and g(lo), g(hi) != 0."""
    lead = abs(int(g.lead.numerator))
    slo, shi = sign(g.eval(lo)), sign(g.eval(hi))
    while hi - lo >= Rat(1, lead) / 2:
        mid = (lo + hi) / 2
        sm = sign(g.eval(mid))
        if sm == 0:
            return mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    from .rat import floor_rat

    m = floor_rat(lo * lead) + 1
    while Rat(m, lead) < hi:
        if Rat(m, lead) > lo and not g.eval(Rat(m, lead)):
            return Rat(m, lead)
        m += 1
    return None


def isolate_real_roots(f: Poly, nonneg_only: bool = True) -> list[RootLocus]:
    """Isolating loci for the distinct real roots of f, sorted ascending.

    Multiple roots collapse to one locus (square-free reduction first);
    exact rational roots come back with lo == hi.
    """
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if f.degree == 0:
        return []
    g = square_free_part(f.primitive())
    roots: list[tuple] = []  # (sort key rational, locus)
    if not g.eval(ZERO):
        g, _ = _deflate_root(g, ZERO)
        roots.append((ZERO, RootLocus(Poly((ZERO, ONE)), ZERO, ZERO)))
    if g.degree >= 1:
        bound = cauchy_root_bound(g)
        from .rat import floor_rat

        hi0 = Rat(floor_rat(bound) + 1)
        lo0 = ZERO if nonneg_only else -hi0
        stack = [(lo0, hi0)]
        chain = sturm_chain(g)
        while stack:
            lo, hi = stack.pop()
            count = sturm_count(chain, lo, hi)
            if count == 0:
                continue
            if count == 1:
                r = _rational_root_in(g, lo, hi)
                if r is not None:
                    roots.append((r, RootLocus(g, r, r)))
                else:
                    roots.append(((lo + hi) / 2, RootLocus(g, lo, hi)))
                continue
            mid = (lo + hi) / 2
            if not g.eval(mid):
                roots.append((mid, RootLocus(g, mid, mid)))
                gg, _ = _deflate_root(g, mid)
                sub = sturm_chain(gg)
                for a, b in ((lo, mid), (mid, hi)):
                    if sturm_count(sub, a, b):
                        stack.append((a, b))
                g, chain = gg, sub
            else:
                stack.append((lo, mid))
                stack.append((mid, hi))
    roots.sort(key=lambda item: item[0])
    # separate any touching intervals so ordering keys were honest
    out = [loc for _, loc in roots]
    for i in range(len(out) - 1):
        while not out[i].is_rational() and not out[i + 1].is_rational() and out[i].hi > out[i + 1].lo:
            out[i] = out[i].refine()
            out[i + 1] = out[i + 1].refine()
    return out


def isolate_nonneg_roots(f: Poly) -> list[RootLocus]:
    return isolate_real_roots(f, nonneg_only=True)


def locus_cmp(a: RootLocus, b: RootLocus) -> int:
    """-1, 0, +1 ordering of two algebraic numbers, decided exactly."""
    if a.is_rational() and b.is_rational():
        return sign(a.value - b.value)
    if a.is_rational():
        return -locus_cmp(b, a)
    if b.is_rational():
        r = b.value
        if a.lo <= r <= a.hi and not a.defining.eval(r):
            return 0
        loc = a
        while loc.lo < r < loc.hi:
            loc = loc.refine()
            if loc.is_rational():
                return sign(loc.value - r)
        return -1 if loc.hi <= r else 1
    la, lb = a, b
    while True:
        if la.hi < lb.lo:
            return -1
        if lb.hi < la.lo:
            return 1
        ilo, ihi = max(la.lo, lb.lo), min(la.hi, lb.hi)
        g = poly_gcd(la.defining, lb.defining)
        if g.degree >= 1:
            chain = sturm_chain(g)
            hits = sturm_count(chain, ilo, ihi)
            if not g.eval(ilo):
                hits += 1
            if hits:
                return 0
        la, lb = la.refine(), lb.refine()
        if la.is_rational():
            return -locus_cmp(lb, la)
        if lb.is_rational():
            return locus_cmp(la, lb)


def merge_loci(loci: list[RootLocus]) -> list[RootLocus]:
    """Sort ascending and drop duplicates (exact equality of the numbers)."""
    out: list[RootLocus] = []
    for loc in loci:
        placed = False
        for i, have in enumerate(out):
            c = locus_cmp(loc, have)
            if c == 0:
                placed = True
                if loc.is_rational() and not have.is_rational():
                    out[i] = loc
                break
            if c < 0:
                out.insert(i, loc)
                placed = True
                break
        if not placed:
            out.append(loc)
    return out


@dataclass(frozen=True)
class AlgebraicValue:
    """Exact element value num(x)/den(x) at the algebraic number `locus`.

    Stays symbolic so set membership and round-trip verification remain
    exact; decimal output goes through approx().
    """

    num: Poly
    den: Poly
    locus: RootLocus

    def sign(self) -> int:
        return sign_at(self.num, self.locus) * sign_at(self.den, self.locus)

    def approx(self, digits: int = 12) -> str:
        loc = self.locus.refine_below(Rat(1, 10 ** (2 * digits + 8)))
        mid = loc.midpoint()
        val = self.num.eval(mid) / self.den.eval(mid)
        return rat_to_decimal(val, digits)


def make_value(num: Poly, den: Poly, locus: RootLocus):
    """Collapse num(x)/den(x) at the locus to a Rat when possible."""
    if locus.is_rational():
        return num.eval(locus.value) / den.eval(locus.value)
    if num.degree <= 0 and den.degree <= 0:
        return (num.coef(0) if num else ZERO) / den.coef(0)
    if sign_at(num, locus) == 0:
        return ZERO
    return AlgebraicValue(num, den, locus)
