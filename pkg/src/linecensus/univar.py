"""Dense univariate polynomial helpers over an arbitrary coefficient field.

Polynomials are tuples of raw field elements, little-endian, with no
trailing zeros; the zero polynomial is the empty tuple.  Every function
takes the field object first so the same code serves F_p, Q, extension
fields and rational-function coefficients.
"""

from __future__ import annotations

from .errors import DegenerateInputError


def trim(field, coeffs):
    coeffs = list(coeffs)
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def degree(coeffs):
    """Degree, with the zero polynomial reported as -1."""
    return len(coeffs) - 1


def is_zero(coeffs):
    return not coeffs


def constant(field, value):
    return () if field.is_zero(value) else (value,)


def add(field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return trim(field, out)


def neg(field, a):
    return tuple(field.neg(x) for x in a)


def sub(field, a, b):
    return add(field, a, neg(field, b))


def scale(field, a, c):
    if field.is_zero(c):
        return ()
    return trim(field, [field.mul(x, c) for x in a])


def mul(field, a, b):
    if not a or not b:
        return ()
    fast = getattr(field, "_np_convolve", None)
    if fast is not None and len(a) * len(b) > 256:
        res = fast(a, b)
        if res is not None:
            return res
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(field, out)


def shift(field, a, k):
    """Multiply by x^k."""
    if not a:
        return ()
    return (field.zero,) * k + tuple(a)


def divmod_(field, a, b):
    """Quotient and remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    rem = list(a)
    db = len(b) - 1
    inv_lead = field.inv(b[-1])
    quot = [field.zero] * max(0, len(a) - db)
    while len(rem) - 1 >= db and rem:
        c = field.mul(rem[-1], inv_lead)
        k = len(rem) - 1 - db
        quot[k] = c
        for i in range(db + 1):
            rem[k + i] = field.sub(rem[k + i], field.mul(c, b[i]))
        while rem and field.is_zero(rem[-1]):
            rem.pop()
    return trim(field, quot), trim(field, rem)


def exact_div(field, a, b):
    q, r = divmod_(field, a, b)
    if r:
        raise ArithmeticError("univariate division was expected to be exact")
    return q


def monic(field, a):
    if not a:
        return ()
    return scale(field, a, field.inv(a[-1]))


def gcd(field, a, b):
    while b:
        a, b = b, divmod_(field, a, b)[1]
    return monic(field, a)


def evaluate(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def derivative(field, a):
    out = []
    for i in range(1, len(a)):
        out.append(field.mul(a[i], field.from_int(i)))
    return trim(field, out)


def pow_mod(field, a, e, m):
    """a^e modulo m, by binary powering."""
    result = (field.one,)
    base = divmod_(field, a, m)[1]
    while e > 0:
        if e & 1:
            result = divmod_(field, mul(field, result, base), m)[1]
        base = divmod_(field, mul(field, base, base), m)[1]
        e >>= 1
    return result


def root_multiplicity(field, a, x):
    """Multiplicity of the root x in a (0 if not a root); a must be nonzero."""
    if not a:
        raise DegenerateInputError("zero polynomial has no root multiplicity")
    mult = 0
    lin = (field.neg(x), field.one)
    while True:
        q, r = divmod_(field, a, lin)
        if r:
            return mult
        mult += 1
        a = q


def to_str(field, a, var="t"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if field.is_zero(c):
            continue
        cs = field.to_str(c)
        if i == 0:
            parts.append(cs)
        elif i == 1:
            parts.append(f"{var}" if cs == "1" else f"{cs}*{var}")
        else:
            parts.append(f"{var}^{i}" if cs == "1" else f"{cs}*{var}^{i}")
    return " + ".join(parts)
