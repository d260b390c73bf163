"""
Exact scalar arithmetic.

Elements of cyclotomic fields Q(zeta_N), finite fields F_q with discrete
logarithm tables, tame elements of F^x / (1 + p), the tame Hilbert symbol
and Gauss sums.  Every other module takes its scalars from here.

Conventions
-----------
* ``Cyclo(N, coeffs)`` stores a polynomial in ``zeta_N`` of degree
  ``< phi(N)``, reduced modulo the N-th cyclotomic polynomial.  Coefficients
  are kept as integer numerators over one positive common denominator.
* ``zeta_n`` sits inside ``Q(zeta_N)`` as ``zeta_N ** (N // n)``.
* The tame symbol is
  ``(a, b)_n = ((-1)**(ma*mb) * ua**mb * ub**(-ma)) ** ((q-1)/n)``, read in
  ``mu_n`` through ``g ** ((q-1)/n) -> zeta_n`` for the fixed generator ``g``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

__all__ = [
    "Cyclo",
    "Fq",
    "TameElement",
    "cyclotomic_poly",
    "hilbert_symbol",
    "epsilon",
    "gauss_sum",
    "sqrt_q",
    "ConfigurationError",
]


class ConfigurationError(ValueError):
    """Raised for inputs outside the tame setting (e.g. ``n`` not dividing ``q-1``)."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

def _poly_divexact(num, den):
    # exact division of integer polynomials, lowest degree first, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple:
    """Integer coefficients of the N-th cyclotomic polynomial, constant term first."""
    if N < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(N: int):
    # row k holds zeta_N**k reduced mod Phi_N, for 0 <= k < N
    phi = cyclotomic_poly(N)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(N):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(N: int):
    return tuple(k for k in range(1, N + 1) if math.gcd(k, N) == 1)


def _normalize(num, den):
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if den < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    return tuple(num), den


class Cyclo:
    """Element of the cyclotomic field Q(zeta_N).

    Parameters
    ----------
    N : int
        Conductor.
    coeffs : sequence of rationals, optional
        Coordinates in the power basis ``1, zeta_N, ..., zeta_N**(d-1)``,
        ``d = phi(N)``.  Longer sequences are reduced modulo ``Phi_N``.

    Examples
    --------
    >>> z = Cyclo.root(3)
    >>> z + z * z + 1 == 0
    True
    """

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N: int, coeffs=(), den: int = 1):
        N = int(N)
        table = _power_table(N)
        d = len(table[0])
        fr = [Fraction(c) for c in coeffs]
        common = 1
        for c in fr:
            common = common * c.denominator // math.gcd(common, c.denominator)
        acc = [0] * d
        for k, c in enumerate(fr):
            if c:
                v = c.numerator * (common // c.denominator)
                row = table[k % N]
                for j in range(d):
                    if row[j]:
                        acc[j] += v * row[j]
        self.N = N
        self.num, self.den = _normalize(acc, common * den)
        self._hash = None

    @classmethod
    def _raw(cls, N, num, den):
        obj = cls.__new__(cls)
        obj.N = N
        obj.num, obj.den = _normalize(num, den)
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, N: int = 1) -> "Cyclo":
        return cls(N)

    @classmethod
    def one(cls, N: int = 1) -> "Cyclo":
        return cls(N, [1])

    @classmethod
    def rational(cls, x, N: int = 1) -> "Cyclo":
        return cls(N, [x])

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclo":
        """``zeta_n ** k`` in Q(zeta_n)."""
        n = int(n)
        return cls(n, [0] * (k % n) + [1])

    # -- basic properties --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def lift(self, M: int) -> "Cyclo":
        """Image in Q(zeta_M) for a multiple ``M`` of the conductor."""
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"{M} is not a multiple of {self.N}")
        step = M // self.N
        table = _power_table(M)
        d = len(table[0])
        acc = [0] * d
        for k, c in enumerate(self.num):
            if c:
                row = table[(k * step) % M]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclo._raw(M, acc, self.den)

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.N == self.N:
                return self, other
            M = self.N * other.N // math.gcd(self.N, other.N)
            return self.lift(M), other.lift(M)
        if isinstance(other, (Integral, Rational)):
            return self, Cyclo(self.N, [other])
        return NotImplemented, NotImplemented

    def simplify(self) -> "Cyclo":
        """Same element in the smallest Q(zeta_M) that contains it, M | N."""
        N = self.N
        for p in sorted(_prime_factors(N)):
            while N % p == 0:
                M = N // p
                try:
                    cand = self._restrict(M)
                except ValueError:
                    break
                N = M
                self = cand
        return self

    def _restrict(self, M):
        # inverse of lift when the element lies in Q(zeta_M)
        step = self.N // M
        d = len(_power_table(M)[0])
        # solve by comparing against lifts of basis vectors
        basis = [Cyclo(M, [0] * j + [1]).lift(self.N) for j in range(d)]
        mat = [[Fraction(b.num[i], b.den) for b in basis] for i in range(self.degree)]
        rhs = [Fraction(c, self.den) for c in self.num]
        sol = _solve_rational(mat, rhs)
        if sol is None:
            raise ValueError("not in subfield")
        return Cyclo(M, sol)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return Cyclo._raw(a.N, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(self.N, [-c for c in self.num], self.den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        num = [x * b.den - y * a.den for x, y in zip(a.num, b.num)]
        return Cyclo._raw(a.N, num, a.den * b.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (Integral, Rational)) and not isinstance(other, Cyclo):
            fr = Fraction(other)
            return Cyclo._raw(self.N, [c * fr.numerator for c in self.num], self.den * fr.denominator)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        N = a.N
        d = len(a.num)
        if d == 1:
            return Cyclo._raw(N, [a.num[0] * b.num[0]], a.den * b.den)
        raw = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        raw[i + j] += x * y
        table = _power_table(N)
        acc = list(raw[:d])
        for k in range(d, 2 * d - 1):
            c = raw[k]
            if c:
                row = table[k % N]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclo._raw(N, acc, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclo":
        """Apply the automorphism ``zeta_N -> zeta_N**k`` (``gcd(k, N) = 1``)."""
        N = self.N
        if math.gcd(k, N) != 1:
            raise ValueError("k must be a unit mod N")
        table = _power_table(N)
        d = len(self.num)
        acc = [0] * d
        for e, c in enumerate(self.num):
            if c:
                row = table[(e * k) % N]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return Cyclo._raw(N, acc, self.den)

    def conj(self) -> "Cyclo":
        """Complex conjugate."""
        return self.galois(-1 % self.N if self.N > 1 else 1)

    def norm(self) -> Fraction:
        """Field norm to Q."""
        prod = Cyclo.one(self.N)
        for k in _units(self.N):
            prod = prod * self.galois(k)
        return prod.to_fraction()

    def inv(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclo(self.N, [1 / Fraction(self.num[0], self.den)])
        others = Cyclo.one(self.N)
        for k in _units(self.N):
            if k != 1:
                others = others * self.galois(k)
        nrm = (others * self).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other):
        if isinstance(other, Cyclo):
            return self * other.inv()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inv() ** (-e)
        out = Cyclo.one(self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (Integral, Rational)) and not isinstance(other, Cyclo):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._coerce(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self._hash is None:
            s = self.simplify()
            self._hash = hash((s.N, s.num, s.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        w = complex(math.cos(2 * math.pi / self.N), math.sin(2 * math.pi / self.N))
        acc = 0j
        p = 1 + 0j
        for c in self.num:
            acc += c * p
            p *= w
        return acc / self.den

    def to_complex(self) -> complex:
        return complex(self)

    def to_json(self):
        return {"N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.N}^{k}")
        return "Cyclo(" + (" + ".join(terms) if terms else "0") + ")"


def _prime_factors(n):
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _solve_rational(mat, rhs):
    # least-effort exact solve of an overdetermined consistent system
    rows = [list(r) + [b] for r, b in zip(mat, rhs)]
    ncol = len(mat[0]) if mat else 0
    piv_cols, r = [], 0
    for c in range(ncol):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def _factor_prime_power(q):
    ps = _prime_factors(q)
    if len(ps) != 1:
        raise ConfigurationError(f"q = {q} is not a prime power")
    p = ps.pop()
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    return p, f


class Fq:
    """The finite field with ``q = p**f`` elements.

    Elements are integer codes ``0 .. q-1``: the base-``p`` digits of a code
    are the coefficients of a polynomial in a root of a fixed primitive
    polynomial.  ``gen`` is a generator of the multiplicative group and
    ``log``/``exp`` are its discrete logarithm tables.

    Instances are cached per ``q``; use :meth:`get`.
    """

    _cache: dict = {}

    def __init__(self, q: int):
        q = int(q)
        if q < 2:
            raise ConfigurationError("q must be at least 2")
        self.q = q
        self.p, self.f = _factor_prime_power(q)
        if self.f == 1:
            self._init_prime()
        else:
            self._init_extension()
        self.log = {x: k for k, x in enumerate(self.exp)}
        if len(self.log) != q - 1:
            raise AssertionError("generator does not have order q-1")
        self.gen = self.exp[1] if q > 2 else 1
        self.minus_one = self.neg(1)

    @classmethod
    def get(cls, q: int) -> "Fq":
        q = int(q)
        if q not in cls._cache:
            cls._cache[q] = cls(q)
        return cls._cache[q]

    def _init_prime(self):
        p = self.p
        for g in range(1, p):
            seen, x = [], 1
            for _ in range(p - 1):
                seen.append(x)
                x = x * g % p
            if len(set(seen)) == p - 1:
                self.exp = tuple(seen)
                return
        raise AssertionError("no primitive root")

    def _digits(self, x):
        out = []
        for _ in range(self.f):
            out.append(x % self.p)
            x //= self.p
        return out

    def _code(self, digits):
        x = 0
        for d in reversed(digits):
            x = x * self.p + d % self.p
        return x

    def _init_extension(self):
        p, f = self.p, self.f
        # search monic polynomials x^f + c_{f-1} x^{f-1} + ... + c_0 with x primitive
        for tail in range(p ** f):
            c = [(tail // p ** i) % p for i in range(f)]
            if c[0] == 0:
                continue
            seen, cur = [], [1] + [0] * (f - 1)
            ok = True
            for _ in range(self.q - 1):
                code = self._code(cur)
                seen.append(code)
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [(a - top * b) % p for a, b in zip(cur, c)]
                if self._code(cur) == 1 and len(seen) < self.q - 1:
                    ok = False
                    break
            if ok and len(set(seen)) == self.q - 1:
                self.exp = tuple(seen)
                self.modulus = tuple(c) + (1,)
                return
        raise AssertionError("no primitive polynomial found")

    # -- field operations on codes -----------------------------------------
    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        return self._code([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return self._code([-x for x in self._digits(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a, e):
        if a == 0:
            return 0 if e > 0 else (1 if e == 0 else self.inv(0))
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def dlog(self, a) -> int:
        """Discrete logarithm of a nonzero element to the base ``gen``."""
        return self.log[a]

    def trace(self, a) -> int:
        """Absolute trace to F_p, returned as an integer in ``0 .. p-1``."""
        acc, x = 0, a
        for _ in range(self.f):
            acc = self.add(acc, x)
            x = self.power(x, self.p)
        return acc  # the code of an F_p element is the element itself

    def units(self):
        return [x for x in range(1, self.q)]

    def __repr__(self):
        return f"Fq({self.q})"


# ---------------------------------------------------------------------------
# tame elements, Hilbert symbol, Gauss sums
# ---------------------------------------------------------------------------

class TameElement:
    """``varpi**m * u`` in ``F^x / (1 + p)``, with ``u`` a unit code of F_q."""

    __slots__ = ("m", "u", "field")

    def __init__(self, m: int, u: int, field: Fq):
        if u == 0:
            raise ValueError("unit part must be nonzero")
        self.m = int(m)
        self.u = int(u)
        self.field = field

    @classmethod
    def uniformizer(cls, field: Fq, m: int = 1):
        return cls(m, 1, field)

    @classmethod
    def unit(cls, field: Fq, u: int):
        return cls(0, u, field)

    def __mul__(self, other):
        return TameElement(self.m + other.m, self.field.mul(self.u, other.u), self.field)

    def inv(self):
        return TameElement(-self.m, self.field.inv(self.u), self.field)

    def __eq__(self, other):
        return isinstance(other, TameElement) and (self.m, self.u, self.field.q) == (other.m, other.u, other.field.q)

    def __hash__(self):
        return hash((self.m, self.u, self.field.q))

    def __repr__(self):
        return f"TameElement(m={self.m}, u={self.u}, q={self.field.q})"


def _check_tame(q, n):
    if n < 1 or (q - 1) % n:
        raise ConfigurationError(f"n = {n} must divide q - 1 = {q - 1}")


def hilbert_symbol(a: TameElement, b: TameElement, q: int, n: int) -> int:
    """Tame Hilbert symbol ``(a, b)_n`` as an exponent ``k`` with value ``zeta_n**k``.

    Examples
    --------
    >>> F = Fq.get(5)
    >>> w = TameElement.uniformizer(F)
    >>> hilbert_symbol(w, w, 5, 4)
    2
    """
    _check_tame(q, n)
    F = a.field
    half = (q - 1) // 2 if q % 2 else 0
    L = a.m * b.m * half + b.m * F.dlog(a.u) - a.m * F.dlog(b.u)
    return L % n


def epsilon(q: int, n: int) -> int:
    """``(varpi, varpi)_n = (-1, varpi)_n``, which is ``(-1)**((q-1)/n)``."""
    _check_tame(q, n)
    if q % 2 == 0:
        return 1
    return -1 if ((q - 1) // n) % 2 else 1


def gauss_sum(q: int, n: int, k: int, c: int = 1) -> Cyclo:
    """Gauss sum ``sum_u psi(c u) * zeta_n**(k * dlog u)`` over ``u`` in F_q^x.

    ``psi(x) = zeta_p**Tr(x)``.  The result lies in Q(zeta_{p n}).

    Examples
    --------
    >>> g = gauss_sum(3, 2, 1)
    >>> g * g == -3
    True
    """
    _check_tame(q, n)
    F = Fq.get(q)
    if c == 0:
        raise ValueError("pinning scale must be a unit")
    N = F.p * n // math.gcd(F.p, n)
    coeffs = [0] * N
    sp, sn = N // F.p, N // n
    for u in F.units():
        e = F.trace(F.mul(c, u)) * sp + (k * F.dlog(u) % n) * sn
        coeffs[e % N] += 1
    return Cyclo(N, coeffs)


@lru_cache(maxsize=None)
def sqrt_q(q: int) -> Cyclo:
    """The positive square root of ``q`` as a cyclotomic number."""
    p, f = _factor_prime_power(q)
    base = p ** (f // 2)
    if f % 2 == 0:
        return Cyclo.rational(base)
    if p == 2:
        z = Cyclo.root(8)
        r = z + z.inv()
    else:
        # quadratic Gauss sum G has G**2 = (-1/p) p
        G = gauss_sum(p, 2, 1)
        r = G if p % 4 == 1 else -Cyclo.root(4) * G
    out = r * base
    assert out * out == q
    assert complex(out).real > 0
    return out
