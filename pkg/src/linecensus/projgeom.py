"""Points, lines and planes of P^3 with canonical representatives.

Lines carry both a reduced-row-echelon 2x4 span and normalized Plucker
coordinates (p01, p02, p03, p12, p13, p23) with p_ij = a_i b_j - a_j b_i;
equality of lines is equality of normalized Plucker vectors.  The same
echelon canonical form drives the enumeration of all lines over a finite
field.
"""

from __future__ import annotations

import itertools

from .errors import (
    DegenerateInputError,
    StructureError,
    UnsupportedFieldError,
)


def normalize_coords(field, coords):
    """Scale so the first nonzero coordinate is 1; rejects the zero vector."""
    coords = list(coords)
    for c in coords:
        if not field.is_zero(c):
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in coords)
    raise DegenerateInputError("zero coordinate vector does not define a projective point")


class ProjPoint:
    """Point of P^3; coordinates normalized so the first nonzero entry is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        if len(coords) != 4:
            raise StructureError("a point of P^3 needs 4 coordinates")
        self.field = field
        self.coords = normalize_coords(field, coords)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and other.field == self.field
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return tuple(self.field.sort_key(c) for c in self.coords)

    def __repr__(self):
        return "(" + " : ".join(self.field.to_str(c) for c in self.coords) + ")"


def rref2x4(field, a, b):
    """Reduced row echelon form of the 2x4 matrix with rows a, b.
    Returns (rows, pivots); raises when the rank is below 2."""
    m = [list(a), list(b)]
    pivots = []
    row = 0
    for col in range(4):
        pr = None
        for r in range(row, 2):
            if not field.is_zero(m[r][col]):
                pr = r
                break
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        inv = field.inv(m[row][col])
        m[row] = [field.mul(x, inv) for x in m[row]]
        for r in range(2):
            if r != row and not field.is_zero(m[r][col]):
                factor = m[r][col]
                m[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == 2:
            break
    if row < 2:
        raise DegenerateInputError("span has rank below 2; not a line")
    return (tuple(m[0]), tuple(m[1])), tuple(pivots)


def plucker_from_span(field, a, b):
    out = []
    for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        out.append(field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i])))
    return tuple(out)


class LineP3:
    """Line of P^3: canonical RREF span plus normalized Plucker vector."""

    __slots__ = ("field", "span", "pivots", "plucker")

    def __init__(self, field, a, b):
        self.field = field
        self.span, self.pivots = rref2x4(field, a, b)
        pl = plucker_from_span(field, *self.span)
        self.plucker = normalize_coords(field, pl)
        p01, p02, p03, p12, p13, p23 = self.plucker
        lhs = field.add(
            field.sub(field.mul(p01, p23), field.mul(p02, p13)), field.mul(p03, p12)
        )
        if not field.is_zero(lhs):
            raise StructureError("Plucker quadric violated; span bookkeeping is broken")

    @classmethod
    def from_points(cls, a, b):
        """Line through two distinct points."""
        if a.field != b.field:
            raise StructureError("points live in different fields")
        if a == b:
            raise DegenerateInputError("two equal points do not span a line")
        return cls(a.field, a.coords, b.coords)

    @classmethod
    def from_plucker(cls, field, pl):
        """Reconstruct the line from a Plucker vector on the quadric."""
        pl = normalize_coords(field, pl)
        p = {}
        idx = 0
        for i in range(4):
            for j in range(i + 1, 4):
                p[(i, j)] = pl[idx]
                idx += 1

        def entry(i, j):
            if i == j:
                return field.zero
            return p[(i, j)] if i < j else field.neg(p[(j, i)])

        for i in range(4):
            row_i = [entry(i, j) for j in range(4)]
            if any(not field.is_zero(x) for x in row_i):
                for k in range(4):
                    row_k = [entry(k, j) for j in range(4)]
                    if k == i or all(field.is_zero(x) for x in row_k):
                        continue
                    try:
                        return cls(field, row_i, row_k)
                    except DegenerateInputError:
                        continue
        raise DegenerateInputError("Plucker vector does not determine a line")

    def points(self):
        """The two canonical spanning points."""
        return (ProjPoint(self.field, self.span[0]), ProjPoint(self.field, self.span[1]))

    def point_at(self, alpha, beta):
        """alpha * first span row + beta * second span row as a point."""
        field = self.field
        coords = [
            field.add(field.mul(alpha, x), field.mul(beta, y))
            for x, y in zip(self.span[0], self.span[1])
        ]
        return ProjPoint(field, coords)

    def contains(self, point):
        """Membership via rank: the point joined to the span stays rank 2."""
        field = self.field
        rows = (self.span[0], self.span[1], point.coords)
        return all(
            field.is_zero(_det3(field, rows, cols))
            for cols in itertools.combinations(range(4), 3)
        )

    def parameter_of(self, point):
        """(alpha, beta) with point = alpha*row0 + beta*row1; requires
        membership."""
        field = self.field
        a, b = self.span
        i0, i1 = self.pivots
        # rows are RREF, so the pivot coordinates read off the coefficients
        alpha = point.coords[i0]
        beta = point.coords[i1]
        recon = tuple(
            field.add(field.mul(alpha, x), field.mul(beta, y)) for x, y in zip(a, b)
        )
        if recon != point.coords:
            raise DegenerateInputError("point does not lie on the line")
        return alpha, beta

    def __eq__(self, other):
        return (
            isinstance(other, LineP3)
            and other.field == self.field
            and other.plucker == self.plucker
        )

    def __hash__(self):
        return hash(self.plucker)

    def sort_key(self):
        return tuple(self.field.sort_key(c) for c in self.plucker)

    def __repr__(self):
        return f"LineP3(plucker={[self.field.to_str(c) for c in self.plucker]})"


def _det3(field, rows, cols):
    m = [[rows[r][c] for c in cols] for r in range(3)]
    t1 = field.mul(m[0][0], field.sub(field.mul(m[1][1], m[2][2]), field.mul(m[1][2], m[2][1])))
    t2 = field.mul(m[0][1], field.sub(field.mul(m[1][0], m[2][2]), field.mul(m[1][2], m[2][0])))
    t3 = field.mul(m[0][2], field.sub(field.mul(m[1][0], m[2][1]), field.mul(m[1][1], m[2][0])))
    return field.add(field.sub(t1, t2), t3)


def lines_meet(l1, l2):
    """True iff the lines intersect (bilinear Plucker pairing vanishes)."""
    if l1.field != l2.field:
        raise StructureError("lines live in different fields")
    field = l1.field
    p = l1.plucker
    q = l2.plucker
    # pairing p01 q23 - p02 q13 + p03 q12 + p23 q01 - p13 q02 + p12 q03
    total = field.zero
    for (i, j, sign) in ((0, 5, 1), (1, 4, -1), (2, 3, 1), (5, 0, 1), (4, 1, -1), (3, 2, 1)):
        term = field.mul(p[i], q[j])
        total = field.add(total, term if sign == 1 else field.neg(term))
    return field.is_zero(total)


class PlaneP3:
    """Plane of P^3 given by a normalized linear form."""

    __slots__ = ("field", "form")

    def __init__(self, field, form):
        if len(form) != 4:
            raise StructureError("a plane form needs 4 coefficients")
        self.field = field
        self.form = normalize_coords(field, form)

    def value_at(self, point):
        field = self.field
        return field.sum(field.mul(c, x) for c, x in zip(self.form, point.coords))

    def contains_point(self, point):
        return self.field.is_zero(self.value_at(point))

    def contains_line(self, line):
        return all(self.contains_point(p) for p in line.points())

    def basis_columns(self):
        """Three spanning points of the plane, as columns for substitution."""
        field = self.field
        piv = next(i for i in range(4) if not field.is_zero(self.form[i]))
        cols = []
        for j in range(4):
            if j == piv:
                continue
            col = [field.zero] * 4
            col[j] = self.form[piv]
            col[piv] = field.neg(self.form[j])
            cols.append(col)
        return cols

    def __eq__(self, other):
        return (
            isinstance(other, PlaneP3)
            and other.field == self.field
            and other.form == self.form
        )

    def __hash__(self):
        return hash(self.form)

    def sort_key(self):
        return tuple(self.field.sort_key(c) for c in self.form)

    def __repr__(self):
        return f"PlaneP3({[self.field.to_str(c) for c in self.form]})"


def plane_through(l1, l2):
    """The unique plane containing two distinct meeting lines."""
    if l1 == l2:
        raise DegenerateInputError("equal lines span no unique plane")
    if not lines_meet(l1, l2):
        raise DegenerateInputError("skew lines span no plane")
    field = l1.field
    rows = None
    for cand in l2.span:
        test = [list(l1.span[0]), list(l1.span[1]), list(cand)]
        if _rank(field, test) == 3:
            rows = test
            break
    if rows is None:
        raise DegenerateInputError("lines do not span a plane")
    return _plane_from_nullspace(field, rows)


def _plane_from_nullspace(field, rows):
    """Null vector of a rank-3 3x4 matrix via signed 3x3 minors."""
    form = []
    for i in range(4):
        cols = [c for c in range(4) if c != i]
        det = _det3(field, rows, cols)
        if i % 2 == 1:
            det = field.neg(det)
        form.append(det)
    return PlaneP3(field, form)


def _rank(field, rows):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        pr = None
        for r in range(rank, len(m)):
            if not field.is_zero(m[r][col]):
                pr = r
                break
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(x, inv) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and not field.is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


ECHELON_SHAPES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _shape_free_columns(shape):
    j0, j1 = shape
    free0 = [c for c in range(4) if c > j0 and c != j1]
    free1 = [c for c in range(4) if c > j1]
    return free0, free1


def line_count(q):
    """Number of lines of P^3(F_q)."""
    return (q * q + 1) * (q * q + q + 1)


def all_lines(field, shapes=ECHELON_SHAPES):
    """Every line of P^3(F_q) exactly once, as canonical RREF spans.

    The echelon shape (the pivot-column pair) partitions the stream, so
    concurrent consumers can each take a subset of shapes.
    """
    if not field.is_finite:
        raise UnsupportedFieldError("line enumeration needs a finite field")
    elements = list(field.elements())
    for shape in shapes:
        yield from lines_of_shape(field, shape, elements)


def lines_of_shape(field, shape, elements=None):
    if elements is None:
        elements = list(field.elements())
    j0, j1 = shape
    free0, free1 = _shape_free_columns(shape)
    for vals0 in itertools.product(elements, repeat=len(free0)):
        row0 = [field.zero] * 4
        row0[j0] = field.one
        for c, v in zip(free0, vals0):
            row0[c] = v
        for vals1 in itertools.product(elements, repeat=len(free1)):
            row1 = [field.zero] * 4
            row1[j1] = field.one
            for c, v in zip(free1, vals1):
                row1[c] = v
            yield LineP3(field, row0, row1)


def standardize_line(line):
    """Invertible M (rows: old variable -> new variables) sending the
    standard line {x2 = x3 = 0} to `line` under substitution, i.e. the
    first two columns of M are the span rows.  Returns (M, M_inverse)."""
    field = line.field
    a, b = line.span
    others = [i for i in range(4) if i not in line.pivots]
    cols = [list(a), list(b)]
    for i in others:
        e = [field.zero] * 4
        e[i] = field.one
        cols.append(e)
    # M[i][j] = cols[j][i]
    M = [[cols[j][i] for j in range(4)] for i in range(4)]
    Minv = invert_matrix(field, M)
    return M, Minv


def invert_matrix(field, M):
    n = len(M)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        pr = None
        for r in range(col, n):
            if not field.is_zero(aug[r][col]):
                pr = r
                break
        if pr is None:
            raise DegenerateInputError("matrix is singular")
        aug[col], aug[pr] = aug[pr], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [field.mul(x, inv) for x in aug[col]]
        for r in range(n):
            if r != col and not field.is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def matrix_multiply(field, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = field.zero
            for t in range(k):
                acc = field.add(acc, field.mul(A[i][t], B[t][j]))
            out[i][j] = acc
    return out


def embed_point(point, ext, embed):
    return ProjPoint(ext, [embed(c) for c in point.coords])


def embed_line(line, ext, embed):
    a, b = line.span
    return LineP3(ext, [embed(c) for c in a], [embed(c) for c in b])
