"""Exact sparse linear algebra over a field.

A *row* is a dict mapping column keys to nonzero scalars.  Column keys can
be any hashable, sortable-by-str values; elimination picks pivots
deterministically, so every routine here is reproducible run to run.
"""


def _ckey(col):
    return (str(col), repr(col))


def row_scale(row, s, field):
    """Return ``s * row`` as a new dict, dropping zero entries."""
    if s == field.zero:
        return {}
    return {c: field.mul(s, v) for c, v in row.items()}


def row_axpy(dst, src, s, field):
    """In place ``dst += s * src``; returns dst."""
    if s == field.zero:
        return dst
    for c, v in src.items():
        w = field.add(dst.get(c, field.zero), field.mul(s, v))
        if w == field.zero:
            dst.pop(c, None)
        else:
            dst[c] = w
    return dst


class RowSolver:
    """Echelonized span of a list of sparse rows, with transform tracking.

    Supports rank, membership, solving ``x . rows = target`` and the left
    kernel ``{x : x . rows = 0}``.
    """

    def __init__(self, rows, field):
        self.field = field
        self.nrows = len(rows)
        # Echelon rows paired with the combination of inputs producing them.
        self.ech = []  # list of (pivot_col, row_dict, transform_dict)
        self.pivots = {}  # pivot_col -> index into self.ech
        self._zero_transforms = []
        for i, row in enumerate(rows):
            r = dict(row)
            t = {i: field.one}
            self._reduce(r, t)
            if r:
                piv = min(r, key=_ckey)
                s = field.inv(r[piv])
                r = row_scale(r, s, field)
                t = row_scale(t, s, field)
                self.pivots[piv] = len(self.ech)
                self.ech.append((piv, r, t))
            else:
                self._zero_transforms.append(t)

    def _reduce(self, r, t):
        field = self.field
        while True:
            hit = None
            for c in r:
                k = self.pivots.get(c)
                if k is not None:
                    hit = (c, k)
                    break
            if hit is None:
                return
            c, k = hit
            _, er, et = self.ech[k]
            s = field.neg(r[c])
            row_axpy(r, er, s, field)
            if t is not None:
                row_axpy(t, et, s, field)

    @property
    def rank(self):
        return len(self.ech)

    def residual(self, target):
        """Reduce ``target`` against the span; empty dict means membership."""
        r = dict(target)
        self._reduce(r, None)
        return r

    def contains(self, target):
        return not self.residual(target)

    def solve(self, target):
        """Return x (dict row-index -> scalar) with ``x . rows = target``.

        Returns None when the target is outside the span.
        """
        field = self.field
        r = dict(target)
        x = {}
        while True:
            hit = None
            for c in r:
                k = self.pivots.get(c)
                if k is not None:
                    hit = (c, k)
                    break
            if hit is None:
                break
            c, k = hit
            _, er, et = self.ech[k]
            s = r[c]
            row_axpy(r, er, field.neg(s), field)
            row_axpy(x, et, s, field)
        if r:
            return None
        return x

    def kernel(self):
        """Basis of the left kernel, as dicts over original row indices."""
        return [dict(t) for t in self._zero_transforms]


def rank_of_rows(rows, field):
    """Rank of the span of sparse rows, by deterministic elimination."""
    return RowSolver(rows, field).rank


def dense_to_rows(mat):
    """Convert a dense list-of-lists matrix to sparse rows keyed by column index."""
    return [{j: v for j, v in enumerate(row) if v != 0} for row in mat]


def dense_rank(mat, field):
    return rank_of_rows(dense_to_rows(mat), field)


def dense_left_kernel(mat, field):
    """Basis of ``{x : x . mat = 0}`` for a dense matrix, as dense row vectors."""
    nrows = len(mat)
    ker = RowSolver(dense_to_rows(mat), field).kernel()
    out = []
    for k in ker:
        out.append([k.get(i, field.zero) for i in range(nrows)])
    return out


def dense_mul(a, b, field):
    """Dense matrix product a . b."""
    if not a:
        return []
    n, m = len(a), len(a[0])
    assert m == len(b), "inner dimensions differ"
    p = len(b[0]) if b else 0
    out = [[field.zero] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            v = ai[k]
            if v == field.zero:
                continue
            bk = b[k]
            for j in range(p):
                if bk[j] != field.zero:
                    oi[j] = field.add(oi[j], field.mul(v, bk[j]))
    return out


def dense_invert(mat, field):
    """Inverse of a square dense matrix; None when singular."""
    n = len(mat)
    aug = [list(row) + [field.one if j == i else field.zero for j in range(n)]
           for i, row in enumerate(mat)]
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if aug[i][c] != field.zero:
                piv = i
                break
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        s = field.inv(aug[r][c])
        aug[r] = [field.mul(s, v) for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != field.zero:
                s = field.neg(aug[i][c])
                aug[i] = [field.add(v, field.mul(s, w))
                          for v, w in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def det_int(mat):
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    swap = i
                    break
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def intersection_dim(rows_u, rows_v, field):
    """Dimension of (span of rows_u) intersected with (span of rows_v)."""
    ru = rank_of_rows(rows_u, field)
    rv = rank_of_rows(rows_v, field)
    rs = rank_of_rows(list(rows_u) + list(rows_v), field)
    return ru + rv - rs
