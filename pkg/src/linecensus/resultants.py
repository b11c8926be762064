"""Resultant machinery: Sylvester determinants for binary forms (over a
field or a polynomial coefficient ring) and the eliminant of a linear,
a quadratic and a cubic ternary form.

The ternary eliminant parametrizes the line cut out by the linear form
with two cross-product basis vectors built from a pivot coefficient a,
takes the binary Sylvester resultant of the two restricted forms, and
divides out the known extraneous content a^6 exactly.
"""

from __future__ import annotations

from .errors import DegenerateInputError, StructureError
from .poly import Poly


class _FieldRing:
    """Ring adapter whose elements are raw field values."""

    def __init__(self, field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return self.field.add(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def is_zero(self, a):
        return self.field.is_zero(a)

    def from_int(self, n):
        return self.field.from_int(n)

    def exact_div(self, a, b):
        return self.field.div(a, b)

    def support(self, a):
        return 0 if self.field.is_zero(a) else 1


class _PolyRing:
    """Ring adapter whose elements are Poly values in a fixed variable set."""

    def __init__(self, field, nvars):
        self.field = field
        self.nvars = nvars
        self.zero = Poly.zero(field, nvars)
        self.one = Poly.one(field, nvars)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a.is_zero()

    def from_int(self, n):
        return Poly.constant(self.field, self.nvars, self.field.from_int(n))

    def exact_div(self, a, b):
        return a.exact_div(b)

    def support(self, a):
        return a.num_terms()


def det_ring(rows, ring):
    """Determinant of a square matrix with entries in `ring`, by a
    division-free expansion: dynamic programming over column subsets.
    Efficient for small or banded matrices (Sylvester matrices here)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise StructureError("determinant of a non-square matrix")
    states = {0: ring.one}
    for r in range(n):
        row = rows[r]
        nxt = {}
        for mask, val in states.items():
            if ring.is_zero(val):
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = row[j]
                if ring.is_zero(entry):
                    continue
                term = ring.mul(val, entry)
                # parity of already-chosen columns above j fixes the sign
                if bin(mask >> (j + 1)).count("1") & 1:
                    term = ring.neg(term)
                key = mask | bit
                cur = nxt.get(key)
                nxt[key] = term if cur is None else ring.add(cur, term)
        states = nxt
        if not states:
            return ring.zero
    return states.get((1 << n) - 1, ring.zero)


def det_field(rows, field):
    """Determinant over a field by Gaussian elimination with pivoting."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = field.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not field.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = field.neg(det)
        pv = m[col][col]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for r in range(col + 1, n):
            factor = field.mul(m[r][col], inv)
            if field.is_zero(factor):
                continue
            for c in range(col, n):
                m[r][c] = field.sub(m[r][c], field.mul(factor, m[col][c]))
    return det


def binary_form_coeffs(f):
    """Coefficient list [c_0..c_m] of a binary form, c_i the coefficient of
    u^(m-i) v^i.  Raises on non-binary or non-homogeneous input."""
    if f.nvars != 2:
        raise StructureError("expected a binary form (2 variables)")
    if f.is_zero():
        raise DegenerateInputError("zero binary form has no well-defined degree")
    if not f.is_homogeneous():
        raise StructureError("expected a homogeneous binary form")
    m = f.degree()
    out = [f.field.zero] * (m + 1)
    for (e0, e1), c in f.terms():
        out[e1] = c
    return out


def sylvester_matrix(qc, cc, ring):
    """Sylvester matrix rows for coefficient lists qc (degree m) and cc
    (degree n), coefficients highest-power-of-u first."""
    m = len(qc) - 1
    n = len(cc) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [ring.zero] * size
        for j, c in enumerate(qc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [ring.zero] * size
        for j, c in enumerate(cc):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(q, c):
    """Resultant of two binary forms over their common field; zero iff the
    forms share a projective root (over a field)."""
    qc = binary_form_coeffs(q)
    cc = binary_form_coeffs(c)
    if len(qc) < 2 or len(cc) < 2:
        raise StructureError("binary forms must have degree at least 1")
    field = q.field
    rows = sylvester_matrix(qc, cc, _FieldRing(field))
    return det_field(rows, field)


def sylvester_resultant_coeffs(qc, cc, ring):
    """Resultant from explicit coefficient lists over an arbitrary ring."""
    rows = sylvester_matrix(qc, cc, ring)
    return det_ring(rows, ring)


def _split_by_tail(f, tail):
    """Coefficients of f with respect to monomials in its last `tail`
    variables: dict (tail exponents) -> coefficient (raw value for
    nvars == tail, else Poly in the leading variables)."""
    head = f.nvars - tail
    out = {}
    for exps, c in f.terms():
        key = exps[head:]
        if head == 0:
            out[key] = c
        else:
            sub = out.setdefault(key, {})
            sub[exps[:head]] = c
    if head > 0:
        out = {k: Poly.from_terms(f.field, head, v) for k, v in out.items()}
    return out, head


def _tail_degree_split(f, expected):
    coeffs, head = _split_by_tail(f, 3)
    for key in coeffs:
        if sum(key) != expected:
            raise StructureError(
                f"expected a ternary form of degree {expected} in the last 3 variables"
            )
    return coeffs, head


def _binary_restrict(coeffs, deg, v1, v2, ring):
    """Restrict a ternary form (coefficient dict over `ring`) to the line
    parametrized by alpha*v1 + beta*v2: returns the binary coefficient
    list of length deg+1."""
    from math import comb

    out = [ring.zero] * (deg + 1)
    for key, coef in coeffs.items():
        # expand prod_a (alpha*v1[a] + beta*v2[a])^key[a] as a binary poly
        factor = [ring.one]
        for a in range(3):
            g = key[a]
            if g == 0:
                continue
            base = [ring.zero] * (g + 1)
            for t in range(g + 1):
                term = ring.from_int(comb(g, t))
                for _ in range(g - t):
                    term = ring.mul(term, v1[a])
                for _ in range(t):
                    term = ring.mul(term, v2[a])
                base[t] = term
            nxt = [ring.zero] * (len(factor) + g)
            for i, x in enumerate(factor):
                if ring.is_zero(x):
                    continue
                for j, y in enumerate(base):
                    if ring.is_zero(y):
                        continue
                    nxt[i + j] = ring.add(nxt[i + j], ring.mul(x, y))
            factor = nxt
        for i, x in enumerate(factor):
            if not ring.is_zero(x):
                out[i] = ring.add(out[i], ring.mul(coef, x))
    return out


def resultant_ternary_123(l, q, c):
    """Eliminant of a linear, a quadratic and a cubic form in the last three
    variables; the leading variables (if any) act as coefficient ring.

    Vanishes iff the three forms share a projective zero (over a field).
    Computed as the binary Sylvester resultant along the parametrized line
    {l = 0} with the pivot content a^6 divided out exactly.
    """
    if not (l.nvars == q.nvars == c.nvars) or l.field != q.field or l.field != c.field:
        raise StructureError("ternary resultant operands differ in field or variables")
    if l.nvars < 3:
        raise StructureError("need at least 3 variables")
    if l.is_zero():
        raise DegenerateInputError("linear form is zero")
    lc, head = _tail_degree_split(l, 1)
    qc, _ = _tail_degree_split(q, 2)
    cc, _ = _tail_degree_split(c, 3)
    field = l.field
    ring = _FieldRing(field) if head == 0 else _PolyRing(field, head)

    lvec = [ring.zero, ring.zero, ring.zero]
    for key, coef in lc.items():
        lvec[key.index(1)] = coef
    supports = [ring.support(x) for x in lvec]
    pivot = max(range(3), key=lambda i: supports[i])
    if supports[pivot] == 0:
        raise DegenerateInputError("linear form is zero")
    others = [i for i in range(3) if i != pivot]
    a = lvec[pivot]

    def basis_vector(j):
        v = [ring.zero, ring.zero, ring.zero]
        v[j] = a
        v[pivot] = ring.neg(lvec[j])
        return v

    v1 = basis_vector(others[0])
    v2 = basis_vector(others[1])

    qbin = _binary_restrict(qc, 2, v1, v2, ring)
    cbin = _binary_restrict(cc, 3, v1, v2, ring)
    det = sylvester_resultant_coeffs(qbin, cbin, ring)
    for _ in range(6):
        det = ring.exact_div(det, a)
    return det
