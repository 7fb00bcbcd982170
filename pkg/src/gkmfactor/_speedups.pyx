# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Sparse exact integer elimination, compiled backend.

Same contract and canonical-form guarantees as
``gkmfactor._kernels_py``.  Rows cross the API boundary as dicts; the
echelon object stores them internally as parallel sorted lists
(columns, values), so pivot steps are C-level merges instead of dict
churn.  Values stay Python ints, keeping arbitrary precision.
"""

from math import gcd

BACKEND = "c"


cpdef object strip_content(dict row):
    """Divide a dict row in place by the gcd of its entries; return it."""
    cdef object g = 0
    cdef object v, c
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] = row[c] // g
    return row


cpdef dict combine(object a, dict row_a, object b, dict row_b):
    """Return ``a*row_a + b*row_b`` as a new content-stripped dict row."""
    cdef dict out = {}
    cdef object c, v, w
    for c, v in row_a.items():
        out[c] = a * v
    for c, v in row_b.items():
        w = out.get(c)
        if w is None:
            w = b * v
            if w != 0:
                out[c] = w
        else:
            w = w + b * v
            if w == 0:
                del out[c]
            else:
                out[c] = w
    strip_content(out)
    return out


cdef void _strip_vals(list vals):
    cdef object g = 0
    cdef Py_ssize_t i, n = len(vals)
    for i in range(n):
        g = gcd(g, vals[i])
        if g == 1:
            return
    if g > 1:
        for i in range(n):
            vals[i] = vals[i] // g


cdef tuple _from_dict(row):
    cdef list cols = sorted(row)
    cdef list vals = [row[c] for c in cols]
    return cols, vals


cdef dict _to_dict(list cols, list vals):
    cdef dict out = {}
    cdef Py_ssize_t i
    for i in range(len(cols)):
        out[cols[i]] = vals[i]
    return out


cdef Py_ssize_t _find(list cols, object col):
    """Binary search; -1 when absent."""
    cdef Py_ssize_t lo = 0, hi = len(cols), mid
    while lo < hi:
        mid = (lo + hi) // 2
        if cols[mid] < col:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(cols) and cols[lo] == col:
        return lo
    return -1


cdef tuple _merge(object a, list colsA, list valsA, object b, list colsB, list valsB):
    """a*A + b*B over sorted parallel lists, content stripped."""
    cdef list cols = []
    cdef list vals = []
    cdef Py_ssize_t i = 0, j = 0, na = len(colsA), nb = len(colsB)
    cdef object ca, cb, w
    while i < na and j < nb:
        ca = colsA[i]
        cb = colsB[j]
        if ca < cb:
            cols.append(ca)
            vals.append(a * valsA[i])
            i += 1
        elif cb < ca:
            cols.append(cb)
            vals.append(b * valsB[j])
            j += 1
        else:
            w = a * valsA[i] + b * valsB[j]
            if w != 0:
                cols.append(ca)
                vals.append(w)
            i += 1
            j += 1
    while i < na:
        cols.append(colsA[i])
        vals.append(a * valsA[i])
        i += 1
    while j < nb:
        cols.append(colsB[j])
        vals.append(b * valsB[j])
        j += 1
    _strip_vals(vals)
    return cols, vals


cdef class IntRREF:
    """Incremental reduced row echelon form over Q with integer rows."""

    cdef public dict pivot_pairs  # pivot col -> (cols list, vals list)

    def __init__(self):
        self.pivot_pairs = {}

    @property
    def rank(self):
        return len(self.pivot_pairs)

    @property
    def pivots(self):
        """Dict-of-dicts view of the stored rows (canonical RREF)."""
        cdef dict out = {}
        cdef object c
        for c in self.pivot_pairs:
            pair = self.pivot_pairs[c]
            out[c] = _to_dict(<list> pair[0], <list> pair[1])
        return out

    def pivot_columns(self):
        return sorted(self.pivot_pairs)

    def pivot_row(self, col):
        pair = self.pivot_pairs[col]
        return _to_dict(<list> pair[0], <list> pair[1])

    def pivot_items(self):
        return [
            (c, _to_dict(<list> self.pivot_pairs[c][0], <list> self.pivot_pairs[c][1]))
            for c in sorted(self.pivot_pairs)
        ]

    cdef tuple _reduce_pair(self, list cols, list vals):
        cdef dict pivots = self.pivot_pairs
        cdef list hit = [c for c in cols if c in pivots]
        cdef Py_ssize_t pos
        cdef object c, a, b, g
        for c in hit:
            pos = _find(cols, c)
            if pos < 0:
                continue
            b = vals[pos]
            pair = pivots[c]
            pcols = <list> pair[0]
            pvals = <list> pair[1]
            a = pvals[_find(pcols, c)]
            g = gcd(a, b)
            cols, vals = _merge(a // g, cols, vals, -(b // g), pcols, pvals)
        return cols, vals

    cpdef dict reduce(self, row):
        """Residual of a dict row modulo the current row space."""
        cdef list cols, vals
        cols, vals = _from_dict(row)
        cols, vals = self._reduce_pair(cols, vals)
        return _to_dict(cols, vals)

    cpdef object add(self, row):
        """Insert a dict row; return its pivot column, or None."""
        cdef list cols, vals, pcols, pvals
        cdef Py_ssize_t i, pos
        cdef object col, v, a, g
        cols, vals = _from_dict(row)
        cols, vals = self._reduce_pair(cols, vals)
        if not cols:
            return None
        col = cols[0]
        if vals[0] < 0:
            for i in range(len(vals)):
                vals[i] = -vals[i]
        _strip_vals(vals)
        a = vals[0]
        for c2 in list(self.pivot_pairs):
            pair = self.pivot_pairs[c2]
            pcols = <list> pair[0]
            pvals = <list> pair[1]
            pos = _find(pcols, col)
            if pos >= 0:
                v = pvals[pos]
                g = gcd(a, v)
                self.pivot_pairs[c2] = _merge(a // g, pcols, pvals, -(v // g), cols, vals)
        self.pivot_pairs[col] = (cols, vals)
        return col

    cpdef list nullspace(self, ncols):
        """Basis of the right kernel of the accumulated rows."""
        cdef list basis = []
        cdef list entries
        cdef dict vec
        cdef Py_ssize_t pos
        cdef object f, c, scale, d, lead
        cdef list pivcols = sorted(self.pivot_pairs)
        for f in range(ncols):
            if f in self.pivot_pairs:
                continue
            entries = []
            for c in pivcols:
                pair = self.pivot_pairs[c]
                pos = _find(<list> pair[0], f)
                if pos >= 0:
                    lead = (<list> pair[1])[_find(<list> pair[0], c)]
                    entries.append((c, (<list> pair[1])[pos], lead))
            scale = 1
            for c, d, lead in entries:
                scale = scale * lead // gcd(scale, lead)
            vec = {f: scale}
            for c, d, lead in entries:
                vec[c] = -d * (scale // lead)
            strip_content(vec)
            basis.append(vec)
        return basis


def echelon(rows):
    """Feed ``rows`` into a fresh IntRREF and return it."""
    rr = IntRREF()
    for row in rows:
        rr.add(row)
    return rr


def rank_of_rows(rows):
    return echelon(rows).rank


def nullspace_of_rows(rows, ncols):
    return echelon(rows).nullspace(ncols)
