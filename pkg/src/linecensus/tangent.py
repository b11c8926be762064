"""Contact machinery at a point of a smooth surface in P^3: the forms
obtained by contracting iterated derivatives with a direction vector,
tangent planes, the Hessian quadric, principal directions, contact
orders, fourfold-contact tests and the local diagonal multiplicity.

Conventions: the ambient 8-variable forms live in (w0..w3, z0..z3); the
j-th form is the literal sum over ordered derivative tuples, so
contracting both slots with the same vector w gives d(d-1)...(d-j+1)
times the surface form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import univar
from .errors import (
    DegenerateInputError,
    InconsistencyError,
    NotOnSurfaceError,
    PreconditionError,
    SingularPointError,
    StructureError,
    UnsupportedCharacteristicError,
)
from .fields import quadratic_extension
from .poly import Poly
from .projgeom import LineP3, ProjPoint, embed_line, embed_point, invert_matrix
from .resultants import sylvester_resultant_coeffs, _PolyRing


@dataclass(frozen=True)
class SmoothStatus:
    kind: str  # "assumed" | "probed" | "unknown"
    extension_degree: int | None = None

    def __repr__(self):
        if self.kind == "probed":
            return f"ProbedSmooth({self.extension_degree})"
        return {"assumed": "AssumedSmooth", "unknown": "Unknown"}[self.kind]


ASSUMED_SMOOTH = SmoothStatus("assumed")
UNKNOWN_SMOOTH = SmoothStatus("unknown")


class Surface:
    """A degree-d form in 4 variables with field metadata and validity flags.

    Construction checks homogeneity and d >= 3; the characteristic gate
    (p = 0 or p > d) is recorded and enforced by the operations that rely
    on it, so surfaces violating it can still be scanned for lines.
    """

    def __init__(self, f, smooth_status=ASSUMED_SMOOTH):
        if not isinstance(f, Poly) or f.nvars != 4:
            raise StructureError("a surface needs a polynomial in 4 variables")
        if f.is_zero():
            raise DegenerateInputError("the zero form defines no surface")
        if not f.is_homogeneous():
            raise DegenerateInputError("surface form must be homogeneous")
        d = f.degree()
        if d < 3:
            raise DegenerateInputError(f"surface degree must be at least 3, got {d}")
        self.f = f
        self.field = f.field
        self.d = d
        self.char_gate = f.field.char == 0 or f.field.char > d
        self.smooth_status = smooth_status
        self._tcache = {}
        self._gradient = None

    def require_char_gate(self):
        if not self.char_gate:
            raise UnsupportedCharacteristicError(self.field.char, self.d)

    def gradient(self):
        if self._gradient is None:
            self._gradient = tuple(self.f.derivative(i) for i in range(4))
        return self._gradient

    def contains_point(self, point):
        return self.field.is_zero(self.f.evaluate(list(point.coords)))

    def contains_line(self, line):
        return all(self.field.is_zero(c) for c in line_restriction(self.f, line))

    def with_status(self, status):
        s = Surface(self.f, smooth_status=status)
        s._tcache = self._tcache
        return s

    def __repr__(self):
        return f"Surface(d={self.d}, field={self.field!r})"


def line_restriction(f, line):
    """Coefficients [c_0..c_d] of f(alpha*row0 + beta*row1), c_i the
    coefficient of alpha^(d-i) beta^i."""
    a, b = line.span
    rows = [[a[i], b[i]] for i in range(4)]
    binary = f.substitute_linear(rows)
    d = f.degree()
    out = [f.field.zero] * (d + 1)
    for (e0, e1), c in binary.terms():
        out[e1] = c
    return out


def big_t_form(surface, j):
    """The contracted derivative form of order j in 8 variables (w, z):
    bihomogeneous of degree (d - j, j).  Requires the characteristic gate."""
    if j not in (1, 2, 3):
        raise StructureError("contact forms are defined for orders 1..3")
    surface.require_char_gate()
    if j not in surface._tcache:
        field = surface.field
        if 0 not in surface._tcache:
            surface._tcache[0] = Poly.from_terms(
                field, 8, {exps + (0, 0, 0, 0): c for exps, c in surface.f.terms()}
            )
        prev = big_t_form(surface, j - 1) if j > 1 else surface._tcache[0]
        nxt = Poly.zero(field, 8)
        for i in range(4):
            nxt = nxt + prev.derivative(i) * Poly.variable(field, 8, 4 + i)
        surface._tcache[j] = nxt
    return surface._tcache[j]


def _specialize_w(form8, point_coords):
    """Set the w variables to a point, leaving a polynomial in z (4 vars)."""
    assignments = {i: point_coords[i] for i in range(4)}
    return form8.partial_evaluate(assignments)


@dataclass(frozen=True)
class TangentData:
    """The three contact forms specialized at a smooth surface point:
    t1 linear (tangent plane), t2 quadratic (Hessian quadric), t3 cubic."""

    point: ProjPoint
    t1: Poly
    t2: Poly
    t3: Poly


def tangent_data(surface, point):
    field = surface.field
    if not surface.contains_point(point):
        raise NotOnSurfaceError("point does not lie on the surface")
    coords = list(point.coords)
    t1 = _specialize_w(big_t_form(surface, 1), coords)
    if t1.is_zero():
        raise SingularPointError("tangent form vanishes; the surface is singular here")
    t2 = _specialize_w(big_t_form(surface, 2), coords)
    t3 = _specialize_w(big_t_form(surface, 3), coords)
    return TangentData(point, t1, t2, t3)


class TangentFrame:
    """Coordinates adapted to a smooth point P: the tangent plane gets the
    chart that eliminates the pivot variable of t1, and the plane itself
    gets a basis whose first vector is P, so restricted forms become
    binary forms in the direction coordinates.

    Attributes:
      q2: (A, B, C) with t2 restricted to the tangent plane equal to
          A*b^2 + B*b*g + C*g^2 in direction coordinates (b, g).
      t3_mixed: (q20, q11, q02) -- coefficient of the y0-linear part.
      t3_cubic: (c30, c21, c12, c03) -- the y0-free binary cubic.
    """

    def __init__(self, surface_field, data):
        field = surface_field
        self.field = field
        self.point = data.point
        t1 = data.t1
        coeffs = [t1.coefficient(tuple(1 if j == i else 0 for j in range(4))) for i in range(4)]
        pivot = None
        for i in range(4):
            if not field.is_zero(coeffs[i]):
                pivot = i
                break
        if pivot is None:
            raise SingularPointError("tangent form vanishes")
        self.pivot = pivot
        inv_piv = field.inv(coeffs[pivot])
        nonpiv = [i for i in range(4) if i != pivot]
        # tangent-plane basis: b_i = e_i - (c_i / c_piv) e_pivot
        basis = []
        for i in nonpiv:
            v = [field.zero] * 4
            v[i] = field.one
            v[pivot] = field.neg(field.mul(coeffs[i], inv_piv))
            basis.append(v)
        self.nonpivot = nonpiv
        self.basis = basis
        p_y = [data.point.coords[i] for i in nonpiv]
        if all(field.is_zero(c) for c in p_y):
            raise InconsistencyError("point has no tangent-plane coordinates")
        self.p_y = p_y
        mpiv = next(i for i in range(3) if not field.is_zero(p_y[i]))
        others = [i for i in range(3) if i != mpiv]
        self.mpiv = mpiv
        self.adapted_cols = [p_y] + [
            [field.one if k == j else field.zero for k in range(3)] for j in others
        ]
        self.others = others
        rows_by = [[basis[j][i] for j in range(3)] for i in range(4)]
        rows_adapted = [
            [self.adapted_cols[c][r] for c in range(3)] for r in range(3)
        ]
        self._rows_by = rows_by
        self._rows_adapted = rows_adapted
        q_adapted = data.t2.substitute_linear(rows_by).substitute_linear(rows_adapted)
        c_adapted = data.t3.substitute_linear(rows_by).substitute_linear(rows_adapted)
        A = q_adapted.coefficient((0, 2, 0))
        B = q_adapted.coefficient((0, 1, 1))
        C = q_adapted.coefficient((0, 0, 2))
        rest = q_adapted - Poly.from_terms(
            field, 3, {(0, 2, 0): A, (0, 1, 1): B, (0, 0, 2): C}
        )
        if not rest.is_zero():
            raise InconsistencyError(
                "Hessian restriction is not singular at the point; the frame is broken"
            )
        self.q2 = (A, B, C)
        q20 = c_adapted.coefficient((1, 2, 0))
        q11 = c_adapted.coefficient((1, 1, 1))
        q02 = c_adapted.coefficient((1, 0, 2))
        c30 = c_adapted.coefficient((0, 3, 0))
        c21 = c_adapted.coefficient((0, 2, 1))
        c12 = c_adapted.coefficient((0, 1, 2))
        c03 = c_adapted.coefficient((0, 0, 3))
        rest3 = c_adapted - Poly.from_terms(
            field,
            3,
            {
                (1, 2, 0): q20,
                (1, 1, 1): q11,
                (1, 0, 2): q02,
                (0, 3, 0): c30,
                (0, 2, 1): c21,
                (0, 1, 2): c12,
                (0, 0, 3): c03,
            },
        )
        if not rest3.is_zero():
            raise InconsistencyError("third-order restriction has unexpected terms")
        self.t3_mixed = (q20, q11, q02)
        self.t3_cubic = (c30, c21, c12, c03)

    def direction_to_zvec(self, beta, gamma):
        """Tangent vector (in ambient coordinates) of the direction (beta:gamma)."""
        field = self.field
        j1, j2 = self.others
        z = [field.zero] * 4
        for i in range(4):
            z[i] = field.add(
                field.mul(beta, self.basis[j1][i]), field.mul(gamma, self.basis[j2][i])
            )
        return z

    def line_of_direction(self, beta, gamma):
        z = self.direction_to_zvec(beta, gamma)
        return LineP3.from_points(self.point, ProjPoint(self.field, z))

    def direction_of_point(self, zpoint):
        """Adapted direction (beta, gamma) of a tangent-plane point != P."""
        field = self.field
        y = [zpoint.coords[i] for i in self.nonpivot]
        # invert the adapted 3x3 change of basis on y
        V = [[self.adapted_cols[c][r] for c in range(3)] for r in range(3)]
        Vinv = invert_matrix(field, V)
        abg = [
            field.sum(field.mul(Vinv[r][c], y[c]) for c in range(3)) for r in range(3)
        ]
        beta, gamma = abg[1], abg[2]
        if field.is_zero(beta) and field.is_zero(gamma):
            raise DegenerateInputError("point is the frame origin; no direction defined")
        return beta, gamma

    def t3_on_direction(self, beta, gamma):
        """Coefficients of t3 restricted to the line through P with direction
        (beta:gamma): the restriction is alpha*s^2*Q(beta,gamma) + s^3*C(beta,gamma),
        so it vanishes identically iff both returned values are zero."""
        field = self.field
        q20, q11, q02 = self.t3_mixed
        c30, c21, c12, c03 = self.t3_cubic
        b2 = field.mul(beta, beta)
        bg = field.mul(beta, gamma)
        g2 = field.mul(gamma, gamma)
        qv = field.sum((field.mul(q20, b2), field.mul(q11, bg), field.mul(q02, g2)))
        cv = field.sum(
            (
                field.mul(c30, field.mul(b2, beta)),
                field.mul(c21, field.mul(b2, gamma)),
                field.mul(c12, field.mul(beta, g2)),
                field.mul(c03, field.mul(g2, gamma)),
            )
        )
        return qv, cv


def tangent_frame(surface, point):
    return TangentFrame(surface.field, tangent_data(surface, point))


@dataclass(frozen=True)
class PrincipalDirections:
    """The directions in the tangent plane with contact order >= 3: either
    at most two lines (possibly equal, possibly over a quadratic
    extension) or the whole tangent plane."""

    kind: str  # "two_lines" | "whole_plane"
    lines: tuple | None
    field: object
    is_double: bool = False

    @property
    def whole_plane(self):
        return self.kind == "whole_plane"


def principal_lines(surface, point):
    """Factor the Hessian restriction at a smooth point into its (at most
    two) directions; constructs the quadratic extension on demand."""
    surface.require_char_gate()
    frame = tangent_frame(surface, point)
    return _principal_from_frame(frame)


def _principal_from_frame(frame):
    field = frame.field
    A, B, C = frame.q2
    if all(field.is_zero(x) for x in (A, B, C)):
        return PrincipalDirections("whole_plane", None, field)
    roots, out_field, embed, double = _binary_quadratic_roots(field, A, B, C)
    if out_field is field:
        lines = tuple(frame.line_of_direction(b, g) for b, g in roots)
    else:
        frame2 = _embed_frame(frame, out_field, embed)
        lines = tuple(frame2.line_of_direction(b, g) for b, g in roots)
    return PrincipalDirections("two_lines", lines, out_field, is_double=double)


def _binary_quadratic_roots(field, A, B, C):
    """Projective roots of A b^2 + B b g + C g^2 (as pairs (beta, gamma)),
    over the field or a quadratic extension.  Requires (A,B,C) != 0."""
    if field.is_zero(A) and field.is_zero(B):
        # C g^2: double root (1 : 0)
        return [(field.one, field.zero)] * 2, field, (lambda a: a), True
    if field.is_zero(A):
        # g (B b + C g): roots (1:0) and (-C : B)
        return (
            [(field.one, field.zero), (field.neg(C), B)],
            field,
            (lambda a: a),
            False,
        )
    disc = field.sub(field.mul(B, B), field.mul(field.from_int(4), field.mul(A, C)))
    if field.is_zero(disc):
        b = field.neg(B)
        g = field.add(A, A)
        return [(b, g)] * 2, field, (lambda a: a), True
    ext, sq, embed = quadratic_extension(field, disc)
    if ext is field:
        roots = [
            (field.sub(sq, B), field.add(A, A)),
            (field.sub(field.neg(B), sq), field.add(A, A)),
        ]
        return roots, field, embed, False
    B_, A_ = embed(B), embed(A)
    roots = [
        (ext.sub(sq, B_), ext.add(A_, A_)),
        (ext.sub(ext.neg(B_), sq), ext.add(A_, A_)),
    ]
    return roots, ext, embed, False


def _embed_frame(frame, ext, embed):
    """A shallow frame over the extension, carrying just what direction
    construction needs."""
    out = TangentFrame.__new__(TangentFrame)
    out.field = ext
    out.point = embed_point(frame.point, ext, embed)
    out.pivot = frame.pivot
    out.nonpivot = frame.nonpivot
    out.basis = [[embed(c) for c in v] for v in frame.basis]
    out.p_y = [embed(c) for c in frame.p_y]
    out.mpiv = frame.mpiv
    out.others = frame.others
    out.adapted_cols = [[embed(c) for c in col] for col in frame.adapted_cols]
    out.q2 = tuple(embed(c) for c in frame.q2)
    out.t3_mixed = tuple(embed(c) for c in frame.t3_mixed)
    out.t3_cubic = tuple(embed(c) for c in frame.t3_cubic)
    return out


def contact_order(surface, line, point):
    """Order of vanishing of the surface form restricted to the line, at
    the point; infinity when the line lies on the surface."""
    field = surface.field
    alpha, beta = line.parameter_of(point)  # raises if the point is off the line
    coeffs = line_restriction(surface.f, line)
    if all(field.is_zero(c) for c in coeffs):
        return math.inf
    # restriction is sum c_i alpha^(d-i) beta^i; root multiplicity at (alpha:beta)
    if not field.is_zero(beta):
        t0 = field.div(alpha, beta)
        dense = univar.trim(field, list(reversed(coeffs)))
        return univar.root_multiplicity(field, dense, t0)
    mult = 0
    for c in coeffs:
        if field.is_zero(c):
            mult += 1
        else:
            break
    return mult


def is_flecnodal_point(surface, point):
    """True iff some line through the point has contact order >= 4 with the
    surface; returns (flag, witness line or None)."""
    surface.require_char_gate()
    frame = tangent_frame(surface, point)
    pd = _principal_from_frame(frame)
    field = frame.field
    if pd.whole_plane:
        return _flecnodal_whole_plane(frame)
    seen = set()
    for ln in pd.lines:
        if ln in seen:
            continue
        seen.add(ln)
        if pd.field is field:
            qv, cv = frame.t3_on_direction(*_direction_of_line(frame, ln))
        else:
            ext = pd.field
            emb_frame = _embed_frame(frame, ext, _embedding_into(field, ext))
            qv, cv = emb_frame.t3_on_direction(*_direction_of_line(emb_frame, ln))
        if pd.field.is_zero(qv) and pd.field.is_zero(cv):
            return True, ln
    return False, None


def _embedding_into(field, ext):
    return ext.embed


def _direction_of_line(frame, line):
    """Adapted direction of a line through the frame point."""
    for pt in line.points():
        if pt != frame.point:
            return frame.direction_of_point(pt)
    raise DegenerateInputError("line is a single point?")


def _flecnodal_whole_plane(frame):
    """Whole-plane case: every direction has contact >= 3; a fourfold
    direction is a common root of the two t3 restriction forms."""
    field = frame.field
    q = univar.trim(field, list(reversed(frame.t3_mixed)))
    c = univar.trim(field, list(reversed(frame.t3_cubic)))
    # treat binary forms as univariate in t = beta/gamma ... roots at infinity
    # correspond to leading-coefficient vanishing, so check (1:0) directly
    if field.is_zero(frame.t3_mixed[0]) and field.is_zero(frame.t3_cubic[0]):
        return True, frame.line_of_direction(field.one, field.zero)
    if not q and not c:
        return True, frame.line_of_direction(field.one, field.zero)
    if not q or not c:
        nz = c if not q else q
        root, ext, embed = _some_root(field, nz)
        if root is None:
            return True, None  # a root exists over an extension we do not build
        if ext is field:
            return True, frame.line_of_direction(root, field.one)
        fr = _embed_frame(frame, ext, embed)
        return True, fr.line_of_direction(root, ext.one)
    g = univar.gcd(field, q, c)
    if univar.degree(g) < 1:
        return False, None
    root, ext, embed = _some_root(field, g)
    if root is None:
        return True, None
    if ext is field:
        return True, frame.line_of_direction(root, field.one)
    fr = _embed_frame(frame, ext, embed)
    return True, fr.line_of_direction(root, ext.one)


def _some_root(field, poly):
    """A root of a nonzero univariate polynomial over the field or a
    quadratic extension; (None, field, id) when none is found there."""
    if field.is_finite:
        for x in field.elements():
            if field.is_zero(univar.evaluate(field, poly, x)):
                return x, field, (lambda a: a)
    if univar.degree(poly) == 2:
        A, B, C = poly[2], poly[1], poly[0]
        roots, ext, embed, _ = _binary_quadratic_roots(field, A, B, C)
        b, g = roots[0]
        if not ext.is_zero(g):
            return ext.div(b, g), ext, embed
    return None, field, (lambda a: a)


def residual_principal_line(surface, point, line):
    """The second direction of the Hessian restriction, obtained from the
    known direction of `line` by exact division; the line must pass
    through the point and lie on the surface."""
    surface.require_char_gate()
    if not surface.contains_line(line):
        raise NotOnSurfaceError("line does not lie on the surface")
    if not line.contains(point):
        raise PreconditionError("point does not lie on the line")
    frame = tangent_frame(surface, point)
    return _residual_from_frame(frame, line)[0]


def _residual_from_frame(frame, line):
    field = frame.field
    A, B, C = frame.q2
    if all(field.is_zero(x) for x in (A, B, C)):
        raise DegenerateInputError(
            "Hessian restriction vanishes on the whole tangent plane here"
        )
    b0, g0 = _direction_of_line(frame, line)
    # check (b0:g0) is a root, then divide the binary quadratic exactly
    val = field.sum(
        (
            field.mul(A, field.mul(b0, b0)),
            field.mul(B, field.mul(b0, g0)),
            field.mul(C, field.mul(g0, g0)),
        )
    )
    if not field.is_zero(val):
        raise InconsistencyError("line direction is not a Hessian direction")
    mb, mg = _divide_binary_quadratic(field, (A, B, C), (b0, g0))
    return frame.line_of_direction(field.neg(mg), mb), (field.neg(mg), mb)


def _divide_binary_quadratic(field, q2, root):
    """Write A b^2 + B bg + C g^2 = (g0 b - b0 g)(mb b + mg g); returns
    (mb, mg)."""
    A, B, C = q2
    b0, g0 = root
    if not field.is_zero(g0):
        inv = field.inv(g0)
        mb = field.mul(A, inv)
        mg = field.mul(field.add(B, field.mul(b0, mb)), inv)
        return mb, mg
    inv = field.inv(field.neg(b0))
    mg = field.mul(C, inv)
    mb = field.mul(field.add(B, field.mul(field.neg(g0), mg)), inv)
    return mb, mg


def diagonal_multiplicity(surface, point, rng=None, max_retries=5):
    """Intersection multiplicity at the point of the restricted Hessian
    and third-order curves inside the tangent plane; the generic value
    is 6 (a triple root along each of the two distinct directions)."""
    surface.require_char_gate()
    frame = tangent_frame(surface, point)
    field = frame.field
    pd = _principal_from_frame(frame)
    if pd.whole_plane:
        raise PreconditionError("Hessian restriction vanishes identically (degenerate point)")
    if pd.is_double:
        raise PreconditionError("principal directions coincide (not the generic situation)")
    flec, _ = is_flecnodal_point(surface, point)
    if flec:
        raise PreconditionError("point is flecnodal (third-order form vanishes on a direction)")
    import random as _random

    rng = rng or _random.Random(20210814)
    A, B, C = frame.q2
    q20, q11, q02 = frame.t3_mixed
    c30, c21, c12, c03 = frame.t3_cubic
    for _ in range(max_retries):
        if field.is_zero(C):
            # random shear y1 -> y1 + t*y2 fixes the origin and moves the
            # y2^2 coefficient to A t^2 + B t + C
            t = field.random_nonzero(rng)
            A, B, C = _shear_quadratic(field, (A, B, C), t)
            q20, q11, q02 = _shear_quadratic(field, (q20, q11, q02), t)
            c30, c21, c12, c03 = _shear_cubic(field, (c30, c21, c12, c03), t)
            continue
        ring = _PolyRing(field, 1)
        const = lambda c: Poly.constant(field, 1, c)  # noqa: E731
        y1 = Poly.variable(field, 1, 0)
        # q as a polynomial in y2 with K[y1] coefficients (highest power first):
        # C y2^2 + (B y1) y2 + A y1^2
        qc = [const(C), const(B) * y1, const(A) * y1 * y1]
        # c(1, y1, y2) = mixed quadratic + cubic part, collected by y2-degree
        cc = [
            const(c03),
            const(c12) * y1 + const(q02),
            const(c21) * y1 * y1 + const(q11) * y1,
            const(c30) * y1**3 + const(q20) * y1 * y1,
        ]
        res = sylvester_resultant_coeffs(qc, cc, ring)
        if res.is_zero():
            raise InconsistencyError(
                "restricted curves share a component despite the preconditions"
            )
        order = min(e for (e,), _c in res.terms())
        return order
    raise PreconditionError("no generic chart found after retries")


def _shear_quadratic(field, q, t):
    """(A', B', C') of q(y1 + t*y2, y2)."""
    A, B, C = q
    t2 = field.mul(t, t)
    C2 = field.sum((field.mul(A, t2), field.mul(B, t), C))
    B2 = field.add(B, field.mul(field.from_int(2), field.mul(A, t)))
    return A, B2, C2


def _shear_cubic(field, c, t):
    """Coefficients of c(y1 + t*y2, y2)."""
    c30, c21, c12, c03 = c
    t2 = field.mul(t, t)
    t3 = field.mul(t2, t)
    n21 = field.add(c21, field.mul(field.from_int(3), field.mul(c30, t)))
    n12 = field.sum(
        (
            c12,
            field.mul(field.from_int(2), field.mul(c21, t)),
            field.mul(field.from_int(3), field.mul(c30, t2)),
        )
    )
    n03 = field.sum(
        (
            c03,
            field.mul(c12, t),
            field.mul(c21, t2),
            field.mul(c30, t3),
        )
    )
    return c30, n21, n12, n03
