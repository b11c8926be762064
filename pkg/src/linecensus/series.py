"""Truncated power series and the order-by-order implicit-function solver
used for local surface parametrizations along a line."""

from __future__ import annotations

from dataclasses import dataclass

from . import univar
from .errors import PreconditionError, StructureError
from .fields import FunctionField


@dataclass(frozen=True)
class AtLeast:
    """An order query that saw only zeros up to the truncation: the true
    order is >= bound, and nothing finite may be concluded."""

    bound: int

    def __repr__(self):
        return f"AtLeast({self.bound})"


class Series:
    """Power series in one variable truncated at order N (inclusive).

    Coefficients are raw values of `field`.  Arithmetic never reports
    coefficients beyond the truncation.
    """

    __slots__ = ("field", "var", "trunc", "coeffs")

    def __init__(self, field, var, trunc, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > trunc + 1:
            raise StructureError("more coefficients than the truncation allows")
        coeffs += [field.zero] * (trunc + 1 - len(coeffs))
        self.field = field
        self.var = var
        self.trunc = trunc
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field, var, trunc):
        return cls(field, var, trunc, [])

    @classmethod
    def constant(cls, field, var, trunc, value):
        return cls(field, var, trunc, [value])

    def _check(self, other):
        if (
            not isinstance(other, Series)
            or other.field != self.field
            or other.var != self.var
            or other.trunc != self.trunc
        ):
            raise StructureError("series operands differ in field, variable or truncation")

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        return Series(
            self.field,
            self.var,
            self.trunc,
            [add(a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __neg__(self):
        neg = self.field.neg
        return Series(self.field, self.var, self.trunc, [neg(a) for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        field = self.field
        n = self.trunc
        out = [field.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if field.is_zero(a):
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if field.is_zero(b):
                    continue
                out[i + j] = field.add(out[i + j], field.mul(a, b))
        return Series(field, self.var, n, out)

    def scale(self, c):
        mul = self.field.mul
        return Series(self.field, self.var, self.trunc, [mul(a, c) for a in self.coeffs])

    def shift(self, k):
        """Multiply by var^k."""
        return Series(
            self.field, self.var, self.trunc, [self.field.zero] * k + list(self.coeffs)
        )

    def __pow__(self, e):
        result = Series.constant(self.field, self.var, self.trunc, self.field.one)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and other.field == self.field
            and other.var == self.var
            and other.trunc == self.trunc
            and other.coeffs == self.coeffs
        )

    def order(self):
        """Index of the first nonzero coefficient, or AtLeast(N+1) when all
        stored coefficients vanish (never silently a finite order)."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        return AtLeast(self.trunc + 1)

    def __repr__(self):
        parts = [
            f"{self.field.to_str(c)}*{self.var}^{i}"
            for i, c in enumerate(self.coeffs)
            if not self.field.is_zero(c)
        ]
        body = " + ".join(parts) if parts else "0"
        return f"Series({body} + O({self.var}^{self.trunc + 1}))"


def series_order(s):
    return s.order()


TRUNC_START = 8
TRUNC_CAP = 128


def implicit_series_solve(f, trunc, svar="s", uvar="u"):
    """Solve f(1, s, u, x3) = 0 for x3 = phi(s, u) with phi(s, 0) = 0.

    Assumes the line {x2 = x3 = 0} lies on V(f) and the chart x0 = 1;
    coefficients of phi live in the rational-function field K(s).  The
    solution is found by undetermined coefficients order by order and
    verified by back-substitution up to the truncation.
    """
    if f.nvars != 4:
        raise StructureError("expected a polynomial in 4 variables")
    K = f.field
    if not _vanishes_on_standard_line(f):
        raise PreconditionError("the line {x2=x3=0} does not lie on the zero set")
    f3 = f.derivative(3)
    g1 = _univar_on_line(f3)
    if not g1:
        raise PreconditionError(
            "d f / d x3 vanishes identically along the line; permute or shear x2, x3"
        )
    F = FunctionField(K, svar)
    g1_inv = F.inv(F.from_poly(g1))

    # f(1, s, u, x3) as a polynomial in x3 with coefficients converted to
    # series in u over K(s)
    three = f.partial_evaluate({0: K.one})  # variables now (s, u, x3)
    cm = {}
    for m, piece in three.collect(2).items():
        coeffs = [{} for _ in range(trunc + 1)]
        for (es, eu, _), c in piece.terms():
            if eu <= trunc:
                coeffs[eu][es] = c
        cm[m] = Series(
            F,
            uvar,
            trunc,
            [F.from_poly(_sparse_to_univar(K, d)) for d in coeffs],
        )
    degx3 = max(cm) if cm else 0

    phi = Series.zero(F, uvar, trunc)
    for k in range(1, trunc + 1):
        r = _eval_x3_poly(cm, degx3, phi)
        rk = r.coeffs[k]
        if F.is_zero(rk):
            continue
        a_k = F.neg(F.mul(rk, g1_inv))
        new = list(phi.coeffs)
        new[k] = a_k
        phi = Series(F, uvar, trunc, new)
    residue = _eval_x3_poly(cm, degx3, phi)
    if any(not F.is_zero(c) for c in residue.coeffs):
        raise PreconditionError("implicit solve failed to cancel all orders")
    return phi


def _eval_x3_poly(cm, degx3, phi):
    F, var, trunc = phi.field, phi.var, phi.trunc
    acc = Series.zero(F, var, trunc)
    for m in range(degx3, -1, -1):
        acc = acc * phi
        if m in cm:
            acc = acc + cm[m]
    return acc


def _vanishes_on_standard_line(f):
    for (e0, e1, e2, e3), _c in f.terms():
        if e2 == 0 and e3 == 0:
            return False
    return True


def _univar_on_line(g):
    """g(1, s, 0, 0) as a dense univariate tuple over the base field."""
    K = g.field
    out = {}
    for (e0, e1, e2, e3), c in g.terms():
        if e2 or e3:
            continue
        out[e1] = K.add(out.get(e1, K.zero), c)
    return _sparse_to_univar(K, out)


def _sparse_to_univar(K, d):
    if not d:
        return ()
    out = [K.zero] * (max(d) + 1)
    for e, c in d.items():
        out[e] = c
    return univar.trim(K, out)
