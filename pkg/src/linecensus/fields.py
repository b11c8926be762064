"""Exact coefficient fields: Q, F_p, extensions F_p[t]/(m), Q[t]/(m), and
one level of rational-function fields K(s).

A field object owns the arithmetic; element values are plain immutable
Python data (Fraction, int, tuple, RatFunc) so they hash, pickle and
compare structurally.  All representations are canonical, so `==` on raw
values is field equality.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import univar
from .errors import (
    DegenerateInputError,
    StructureError,
    UnsupportedFieldError,
)


class Field:
    """Common interface; subclasses fill in raw-value arithmetic."""

    char: int
    order: int | None  # None when infinite

    @property
    def is_finite(self):
        return self.order is not None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values):
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def elements(self):
        raise UnsupportedFieldError(f"{self} is not finite; cannot enumerate elements")

    def random(self, rng):
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def sqrt(self, a):
        """A square root of a, or None when a is not a square."""
        raise NotImplementedError

    def __ne__(self, other):
        return not self.__eq__(other)


class RationalField(Field):
    """The rationals, backed by fractions.Fraction (always gcd-reduced,
    normalized sign, arbitrary precision)."""

    char = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return Fraction(fr)

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def sqrt(self, a):
        if a < 0:
            return None
        pn, pd = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if pn * pn == a.numerator and pd * pd == a.denominator:
            return Fraction(pn, pd)
        return None

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def to_str(self, a):
        return str(a)

    def spec_string(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _factorize(n):
    out = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class PrimeField(Field):
    """F_p with raw values the integers 0..p-1; p verified prime."""

    zero = 0
    one = 1

    def __init__(self, p):
        if not _is_prime(p):
            raise DegenerateInputError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self._generator = None

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, fr):
        return self.mul(self.from_int(fr.numerator), self.inv(self.from_int(fr.denominator)))

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def generator(self):
        """Smallest multiplicative generator of F_p^*."""
        if self._generator is None:
            factors = _factorize(self.p - 1)
            for g in range(2, self.p):
                if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                    self._generator = g
                    break
        return self._generator

    def sqrt(self, a):
        a %= self.p
        if a == 0:
            return 0
        if self.p == 2:
            return a
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        for x in range(1, self.p):
            if x * x % self.p == a:
                return x
        return None

    def nonresidue(self):
        for x in range(2, self.p):
            if pow(x, (self.p - 1) // 2, self.p) == self.p - 1:
                return x
        raise UnsupportedFieldError("no quadratic nonresidue (p = 2)")

    def _np_convolve(self, a, b):
        # exactness: entries < p and min(len) * p^2 stays well below 2^63
        import numpy as np

        if min(len(a), len(b)) * self.p * self.p >= (1 << 62):
            return None
        out = np.convolve(np.asarray(a, dtype="int64"), np.asarray(b, dtype="int64")) % self.p
        return univar.trim(self, [int(x) for x in out])

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def spec_string(self):
        return f"F{self.p}"

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_prime_cache = {}


def GF(p):
    if p not in _prime_cache:
        _prime_cache[p] = PrimeField(p)
    return _prime_cache[p]


class ExtField(Field):
    """K[t]/(m) for a base field K (F_p or Q) and monic irreducible m.

    Raw values are tuples of base raws of length exactly deg m
    (little-endian).  Irreducibility of m is verified at construction:
    a root scan for degree <= 3, a Frobenius gcd test over finite bases
    for higher degree.
    """

    def __init__(self, base, modulus, var="t"):
        if isinstance(base, (ExtField, FunctionField)):
            raise StructureError("extension base must be a prime field or Q")
        self.base = base
        self.var = var
        m = univar.trim(base, [base.from_int(c) if isinstance(c, int) else c for c in modulus])
        if univar.degree(m) < 2:
            raise DegenerateInputError("extension modulus must have degree >= 2")
        m = univar.monic(base, m)
        self.modulus = m
        self.k = univar.degree(m)
        self._check_irreducible()
        self.char = base.char
        self.order = None if base.order is None else base.order**self.k
        self.zero = tuple([base.zero] * self.k)
        one = [base.zero] * self.k
        one[0] = base.one
        self.one = tuple(one)
        self._gen_raw = tuple(
            base.one if i == 1 else base.zero for i in range(self.k)
        )
        self._generator = None

    def _check_irreducible(self):
        base, m, k = self.base, self.modulus, self.k
        if base.is_finite:
            if k <= 3:
                for x in base.elements():
                    if base.is_zero(univar.evaluate(base, m, x)):
                        raise DegenerateInputError("modulus has a root in the base field")
            else:
                # x^(q^i) - x shares a factor with m iff m has a factor of degree dividing i
                x = (base.zero, base.one)
                for i in range(1, k // 2 + 1):
                    frob = univar.pow_mod(base, x, base.order**i, m)
                    g = univar.gcd(base, univar.sub(base, frob, x), m)
                    if univar.degree(g) > 0:
                        raise DegenerateInputError("modulus is reducible over the base field")
        else:
            if k > 3:
                raise UnsupportedFieldError(
                    "irreducibility over Q is only verified up to degree 3"
                )
            # no rational roots: p/q with p | m0*den-lcm, q | lead; modulus is monic,
            # so candidate roots are integer divisors of the constant term after clearing
            den = math.lcm(*[c.denominator for c in m])
            zc = [c * den for c in m]
            c0 = int(zc[0])
            if c0 == 0:
                raise DegenerateInputError("modulus has the root 0")
            lead = int(zc[-1])
            for p_ in _divisors(abs(c0)):
                for q_ in _divisors(abs(lead)):
                    for sign in (1, -1):
                        cand = Fraction(sign * p_, q_)
                        if univar.evaluate(self.base, m, cand) == 0:
                            raise DegenerateInputError("modulus has a rational root")

    def _wrap(self, coeffs):
        coeffs = list(coeffs[: self.k])
        coeffs += [self.base.zero] * (self.k - len(coeffs))
        return tuple(coeffs)

    def embed(self, a):
        """Embed a base-field value."""
        out = [self.base.zero] * self.k
        out[0] = a
        return tuple(out)

    def gen(self):
        """The residue class of t."""
        return self._gen_raw

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        prod = univar.mul(self.base, univar.trim(self.base, a), univar.trim(self.base, b))
        rem = univar.divmod_(self.base, prod, self.modulus)[1]
        return self._wrap(rem)

    def inv(self, a):
        at = univar.trim(self.base, a)
        if not at:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in K[t]
        r0, r1 = self.modulus, at
        s0, s1 = (), (self.base.one,)
        while r1:
            q, r = univar.divmod_(self.base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, univar.sub(self.base, s0, univar.mul(self.base, q, s1))
        c = self.base.inv(r0[0])  # r0 is a nonzero constant for coprime inputs
        return self._wrap(univar.scale(self.base, s0, c))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def from_fraction(self, fr):
        return self.embed(self.base.from_fraction(fr))

    def elements(self):
        if not self.is_finite:
            raise UnsupportedFieldError("infinite extension field")
        for combo in itertools.product(list(self.base.elements()), repeat=self.k):
            yield tuple(combo)

    def random(self, rng):
        if self.is_finite:
            return tuple(self.base.random(rng) for _ in range(self.k))
        return self.embed(self.base.random(rng))

    def generator(self):
        if not self.is_finite:
            raise UnsupportedFieldError("multiplicative generator needs a finite field")
        if self._generator is None:
            factors = _factorize(self.order - 1)
            for cand in self.elements():
                if self.is_zero(cand):
                    continue
                if all(
                    not self.is_one(self.pow(cand, (self.order - 1) // q)) for q in factors
                ):
                    self._generator = cand
                    break
        return self._generator

    def sqrt(self, a):
        if self.is_zero(a):
            return a
        if self.is_finite:
            if self.order % 2 == 1 and not self.is_one(self.pow(a, (self.order - 1) // 2)):
                return None
            for x in self.elements():
                if self.mul(x, x) == a:
                    return x
            return None
        raise UnsupportedFieldError("square roots in infinite extensions are not supported")

    def sort_key(self, a):
        return tuple(self.base.sort_key(x) for x in a)

    def to_str(self, a):
        return univar.to_str(self.base, univar.trim(self.base, a), var=self.var)

    def spec_string(self):
        mod = univar.to_str(self.base, self.modulus, var=self.var).replace(" ", "")
        if isinstance(self.base, PrimeField):
            return f"F{self.base.p}^{self.k}/{mod}"
        return f"Q[{self.var}]/{mod}"

    def __repr__(self):
        return f"Ext({self.base!r}, {univar.to_str(self.base, self.modulus, self.var)})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))


def _divisors(n):
    out = []
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
    return sorted(out)


def quadratic_extension(field, disc, var="t"):
    """Field containing a square root of disc: the field itself when disc is
    a square, else K[t]/(t^2 - disc) with the embedding map.

    Returns (ext_field_or_same, sqrt_of_disc, embed_callable).
    """
    r = field.sqrt(disc) if field.is_finite or isinstance(field, RationalField) else None
    if r is not None:
        return field, r, lambda a: a
    mod = (field.neg(disc), field.zero, field.one)  # t^2 - disc
    ext = ExtField(field, mod, var=var)
    return ext, ext.gen(), ext.embed


class RatFunc:
    """Reduced fraction of univariate polynomials (monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc) and other.num == self.num and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


class FunctionField(Field):
    """K(s): fractions of univariate polynomials over a base field K.

    The base may not itself be a function field (one transcendental level
    covers every algorithm in this package).  Elements are reduced at each
    operation, so equality is structural.
    """

    order = None

    def __init__(self, base, var="s"):
        if isinstance(base, FunctionField):
            raise StructureError("function-field base must not be a function field")
        self.base = base
        self.var = var
        self.char = base.char
        self.zero = RatFunc((), (base.one,))
        self.one = RatFunc((base.one,), (base.one,))

    def _make(self, num, den):
        base = self.base
        if not num:
            return self.zero
        if univar.degree(den) == 0:
            if not base.is_one(den[0]):
                num = univar.scale(base, num, base.inv(den[0]))
            return RatFunc(num, (base.one,))
        g = univar.gcd(base, num, den)
        if univar.degree(g) > 0:
            num = univar.exact_div(base, num, g)
            den = univar.exact_div(base, den, g)
        lead = den[-1]
        if not base.is_one(lead):
            c = base.inv(lead)
            num = univar.scale(base, num, c)
            den = univar.scale(base, den, c)
        return RatFunc(num, den)

    def from_poly(self, coeffs):
        return self._make(univar.trim(self.base, coeffs), (self.base.one,))

    def gen(self):
        return self.from_poly((self.base.zero, self.base.one))

    def embed(self, a):
        return self.from_poly((a,))

    def add(self, a, b):
        base = self.base
        if a.den == b.den:
            return self._make(univar.add(base, a.num, b.num), a.den)
        num = univar.add(
            base, univar.mul(base, a.num, b.den), univar.mul(base, b.num, a.den)
        )
        return self._make(num, univar.mul(base, a.den, b.den))

    def neg(self, a):
        return RatFunc(univar.neg(self.base, a.num), a.den)

    def mul(self, a, b):
        if not a.num or not b.num:
            return self.zero
        return self._make(
            univar.mul(self.base, a.num, b.num), univar.mul(self.base, a.den, b.den)
        )

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return self._make(a.den, a.num)

    def is_zero(self, a):
        return not a.num

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def from_fraction(self, fr):
        return self.embed(self.base.from_fraction(fr))

    def random(self, rng):
        num = [self.base.random(rng) for _ in range(rng.randint(1, 3))]
        den = [self.base.random(rng) for _ in range(rng.randint(0, 2))] + [self.base.one]
        f = self._make(univar.trim(self.base, num), univar.trim(self.base, den))
        return f

    def evaluate(self, a, x):
        """Value at s = x (base raw); None when the denominator vanishes."""
        dv = univar.evaluate(self.base, a.den, x)
        if self.base.is_zero(dv):
            return None
        return self.base.div(univar.evaluate(self.base, a.num, x), dv)

    def sort_key(self, a):
        return (
            tuple(self.base.sort_key(c) for c in a.num),
            tuple(self.base.sort_key(c) for c in a.den),
        )

    def to_str(self, a):
        n = univar.to_str(self.base, a.num, var=self.var)
        if univar.degree(a.den) == 0:
            return n
        return f"({n})/({univar.to_str(self.base, a.den, var=self.var)})"

    def spec_string(self):
        return f"{self.base.spec_string()}({self.var})"

    def __repr__(self):
        return f"FunctionField({self.base!r}, {self.var})"

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("FunctionField", self.base, self.var))
