"""Sparse exact multivariate polynomials over any field from `fields`.

Terms are stored in a dict keyed by packed exponent vectors: exponent
e_i occupies bits [16*i, 16*i+16), so multiplying monomials is a single
integer addition and the packed value doubles as a lex monomial order
(last variable most significant).  Exponents must stay below 2^16,
which every computation in this package respects by a wide margin.

Coefficients are raw field values; no zero coefficient is ever stored.
"""

from __future__ import annotations

import heapq

from .errors import DegenerateInputError, StructureError

SHIFT = 16
MASK = (1 << SHIFT) - 1

_DENSE_PAIR_THRESHOLD = 30_000


def pack(exps):
    key = 0
    for i, e in enumerate(exps):
        key |= e << (SHIFT * i)
    return key


def unpack(key, nvars):
    return tuple((key >> (SHIFT * i)) & MASK for i in range(nvars))


def key_degree(key, nvars):
    return sum((key >> (SHIFT * i)) & MASK for i in range(nvars))


class Poly:
    __slots__ = ("field", "nvars", "data", "_homo")

    def __init__(self, field, nvars, data):
        """data: dict packed-key -> nonzero raw coefficient (not copied)."""
        self.field = field
        self.nvars = nvars
        self.data = data
        self._homo = None

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, value):
        if field.is_zero(value):
            return cls(field, nvars, {})
        return cls(field, nvars, {0: value})

    @classmethod
    def one(cls, field, nvars):
        return cls.constant(field, nvars, field.one)

    @classmethod
    def variable(cls, field, nvars, i, exp=1):
        if not 0 <= i < nvars:
            raise StructureError(f"variable index {i} out of range for {nvars} variables")
        return cls(field, nvars, {exp << (SHIFT * i): field.one})

    @classmethod
    def from_terms(cls, field, nvars, terms):
        """terms: mapping from exponent tuples to raw coefficients."""
        data = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise StructureError("exponent vector length does not match nvars")
            if any(e < 0 or e > MASK for e in exps):
                raise StructureError("exponent out of supported range")
            if field.is_zero(c):
                continue
            k = pack(exps)
            c0 = data.get(k)
            c = c if c0 is None else field.add(c0, c)
            if field.is_zero(c):
                data.pop(k, None)
            else:
                data[k] = c
        return cls(field, nvars, data)

    @classmethod
    def linear_form(cls, field, coeffs):
        """Sum of coeffs[i] * x_i."""
        data = {}
        for i, c in enumerate(coeffs):
            if not field.is_zero(c):
                data[1 << (SHIFT * i)] = c
        return cls(field, len(coeffs), data)

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return not self.data

    def terms(self):
        """Iterate (exponent tuple, coefficient)."""
        n = self.nvars
        for k, c in self.data.items():
            yield unpack(k, n), c

    def num_terms(self):
        return len(self.data)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.data:
            return -1
        n = self.nvars
        return max(key_degree(k, n) for k in self.data)

    def degree_in(self, i):
        if not self.data:
            return -1
        s = SHIFT * i
        return max((k >> s) & MASK for k in self.data)

    def is_homogeneous(self):
        if self._homo is None:
            if not self.data:
                self._homo = True
            else:
                n = self.nvars
                it = iter(self.data)
                d0 = key_degree(next(it), n)
                self._homo = all(key_degree(k, n) == d0 for k in it)
        return self._homo

    def coefficient(self, exps):
        return self.data.get(pack(exps), self.field.zero)

    def leading_key(self):
        return max(self.data)

    def constant_term(self):
        return self.data.get(0, self.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.data.items())))

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, Poly):
            raise StructureError("expected a Poly operand")
        if other.field != self.field or other.nvars != self.nvars:
            raise StructureError("polynomial operands differ in field or variable count")

    def __add__(self, other):
        self._check_compatible(other)
        field = self.field
        a, b = self.data, other.data
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            c0 = out.get(k)
            if c0 is None:
                out[k] = c
            else:
                s = field.add(c0, c)
                if field.is_zero(s):
                    del out[k]
                else:
                    out[k] = s
        return Poly(field, self.nvars, out)

    def __neg__(self):
        neg = self.field.neg
        return Poly(self.field, self.nvars, {k: neg(c) for k, c in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        field = self.field
        a, b = self.data, other.data
        if not a or not b:
            return Poly(field, self.nvars, {})
        if len(a) < len(b):
            a, b = b, a
        if (
            len(a) * len(b) > _DENSE_PAIR_THRESHOLD
            and self.nvars <= 4
            and type(field).__name__ == "PrimeField"
            and self.is_homogeneous()
            and other.is_homogeneous()
        ):
            out = _dense_homogeneous_mul(field, self.nvars, self, other)
            if out is not None:
                return out
        if type(field).__name__ == "PrimeField":
            p = field.p
            out = {}
            get = out.get
            for ka, ca in a.items():
                for kb, cb in b.items():
                    k = ka + kb
                    out[k] = (get(k, 0) + ca * cb) % p
            return Poly(field, self.nvars, {k: c for k, c in out.items() if c})
        out = {}
        add, mul, iszero = field.add, field.mul, field.is_zero
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                c0 = out.get(k)
                out[k] = mul(ca, cb) if c0 is None else add(c0, mul(ca, cb))
        return Poly(field, self.nvars, {k: c for k, c in out.items() if not iszero(c)})

    def scale(self, c):
        field = self.field
        if field.is_zero(c):
            return Poly(field, self.nvars, {})
        mul = field.mul
        return Poly(field, self.nvars, {k: mul(v, c) for k, v in self.data.items()})

    def __pow__(self, e):
        if e < 0:
            raise StructureError("negative polynomial power")
        result = Poly.one(self.field, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus and substitution ------------------------------------

    def derivative(self, i):
        """Formal partial derivative with respect to variable i."""
        field = self.field
        s = SHIFT * i
        out = {}
        for k, c in self.data.items():
            e = (k >> s) & MASK
            if e == 0:
                continue
            c2 = field.mul(c, field.from_int(e))
            if field.is_zero(c2):
                continue
            out[k - (1 << s)] = c2
        return Poly(field, self.nvars, out)

    def evaluate(self, values):
        """Value at the point given by raw field values."""
        if len(values) != self.nvars:
            raise StructureError("evaluation point has wrong length")
        field = self.field
        n = self.nvars
        powcache = [[field.one] for _ in range(n)]

        def power(i, e):
            cache = powcache[i]
            while len(cache) <= e:
                cache.append(field.mul(cache[-1], values[i]))
            return cache[e]

        total = field.zero
        for k, c in self.data.items():
            v = c
            for i in range(n):
                e = (k >> (SHIFT * i)) & MASK
                if e:
                    v = field.mul(v, power(i, e))
            total = field.add(total, v)
        return total

    def substitute_linear(self, rows):
        """Compose with a linear change of variables.

        rows is a matrix with self.nvars rows; row i lists the raw
        coefficients expressing old variable x_i in the new variables.
        All rows must share one length (the new variable count).
        """
        if len(rows) != self.nvars:
            raise StructureError("substitution matrix must have one row per variable")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise StructureError("substitution matrix rows differ in length")
        field = self.field
        linears = [Poly.linear_form(field, list(r)) for r in rows]

        def rec(items, var):
            if var == self.nvars:
                out = Poly.zero(field, ncols)
                for _k, c in items:
                    out = out + Poly.constant(field, ncols, c)
                return out
            s = SHIFT * var
            buckets = {}
            for k, c in items:
                e = (k >> s) & MASK
                buckets.setdefault(e, []).append((k - (e << s), c))
            degs = sorted(buckets)
            top = degs[-1]
            acc = rec(buckets[top], var + 1)
            lin = linears[var]
            for e in range(top - 1, -1, -1):
                acc = acc * lin
                if e in buckets:
                    acc = acc + rec(buckets[e], var + 1)
            return acc

        if not self.data:
            return Poly.zero(field, ncols)
        return rec(list(self.data.items()), 0)

    def partial_evaluate(self, assignments):
        """Substitute values for some variables: assignments maps variable
        index -> raw value; the result keeps the remaining variables,
        re-indexed in increasing original order."""
        field = self.field
        keep = [i for i in range(self.nvars) if i not in assignments]
        out = {}
        for k, c in self.data.items():
            v = c
            for i, val in assignments.items():
                e = (k >> (SHIFT * i)) & MASK
                if e:
                    v = field.mul(v, field.pow(val, e))
            if field.is_zero(v):
                continue
            nk = 0
            for j, i in enumerate(keep):
                nk |= ((k >> (SHIFT * i)) & MASK) << (SHIFT * j)
            c0 = out.get(nk)
            v = v if c0 is None else field.add(c0, v)
            if field.is_zero(v):
                out.pop(nk, None)
            else:
                out[nk] = v
        return Poly(field, len(keep), out)

    def map_coefficients(self, fn, new_field):
        out = {}
        for k, c in self.data.items():
            c2 = fn(c)
            if not new_field.is_zero(c2):
                out[k] = c2
        return Poly(new_field, self.nvars, out)

    def collect(self, i):
        """Bucket by the exponent of variable i: returns dict exponent ->
        Poly (same variable space, variable i cleared)."""
        s = SHIFT * i
        buckets = {}
        for k, c in self.data.items():
            e = (k >> s) & MASK
            buckets.setdefault(e, {})[k - (e << s)] = c
        return {e: Poly(self.field, self.nvars, d) for e, d in buckets.items()}

    def exact_div(self, divisor):
        """Exact quotient self / divisor; raises if the division has a
        remainder.  Divisor must be a nonzero Poly over the same field."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        if not self.data:
            return Poly.zero(field, self.nvars)
        dlead = max(divisor.data)
        dcoef = divisor.data[dlead]
        dinv = field.inv(dcoef)
        dexp = unpack(dlead, self.nvars)
        rem = dict(self.data)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot = {}
        while heap:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if c is None or field.is_zero(c):
                continue
            kexp = unpack(k, self.nvars)
            if any(ke < de for ke, de in zip(kexp, dexp)):
                raise DegenerateInputError("polynomial division is not exact")
            qk = k - dlead
            qc = field.mul(c, dinv)
            quot[qk] = qc
            for dk, dc in divisor.data.items():
                tk = qk + dk
                t = field.mul(qc, dc)
                c0 = rem.get(tk)
                if c0 is None:
                    rem[tk] = field.neg(t)
                    heapq.heappush(heap, -tk)
                else:
                    r = field.sub(c0, t)
                    if field.is_zero(r):
                        del rem[tk]
                    else:
                        rem[tk] = r
        if any(not field.is_zero(c) for c in rem.values()):
            raise DegenerateInputError("polynomial division is not exact")
        return Poly(field, self.nvars, quot)

    # -- rendering ----------------------------------------------------

    def to_str(self, names=None):
        if not self.data:
            return "0"
        field = self.field
        n = self.nvars
        if names is None:
            names = [f"x{i}" for i in range(n)]
        parts = []
        for k in sorted(self.data, reverse=True):
            c = self.data[k]
            exps = unpack(k, n)
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            cs = field.to_str(c)
            if factors and cs == "1":
                term = "*".join(factors)
            elif factors and cs == "-1":
                term = "-" + "*".join(factors)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]) or ("/" in cs and factors):
                    cs = f"({cs})"
                term = "*".join([cs] + factors)
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _dense_homogeneous_mul(field, nvars, a, b):
    """Product of homogeneous prime-field polynomials via a dense ndarray
    convolution over exponents of variables 1..nvars-1 (the exponent of
    variable 0 is implied by the total degree).  Returns None when the
    dense box would be unreasonably large."""
    try:
        import numpy as np
    except ImportError:  # pragma: no cover
        return None
    da, db = a.degree(), b.degree()
    ndim = nvars - 1
    shape_out = (da + db + 1,) * ndim
    size = 1
    for s in shape_out:
        size *= s
    if size > 2_000_000:
        return None
    big, small = (a, b) if a.num_terms() >= b.num_terms() else (b, a)
    dbig = big.degree()
    box = np.zeros((dbig + 1,) * ndim, dtype="int64")
    for k, c in big.data.items():
        idx = tuple((k >> (SHIFT * i)) & MASK for i in range(1, nvars))
        box[idx] = c
    # accumulation bound: nnz(small) * p^2 per cell must stay below 2^63
    if small.num_terms() * field.p * field.p >= (1 << 62):
        return None
    out = np.zeros(shape_out, dtype="int64")
    for k, c in small.data.items():
        idx = tuple((k >> (SHIFT * i)) & MASK for i in range(1, nvars))
        sl = tuple(slice(j, j + dbig + 1) for j in idx)
        out[sl] += box * c
    out %= field.p
    nz = np.nonzero(out)
    data = {}
    dtot = da + db
    coords = [nz[i] for i in range(ndim)]
    vals = out[nz]
    for t in range(len(vals)):
        exps = [int(coords[i][t]) for i in range(ndim)]
        e0 = dtot - sum(exps)
        if e0 < 0:
            raise DegenerateInputError("dense product exponent bookkeeping failed")
        key = e0
        for i, e in enumerate(exps):
            key |= e << (SHIFT * (i + 1))
        data[key] = int(vals[t])
    return Poly(field, nvars, data)
