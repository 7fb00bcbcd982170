"""Graded multivariate polynomial spaces over exact rationals.

Homogeneous polynomials are sparse dicts mapping an exponent tuple to an
integer (or Fraction) coefficient.  Degree-d components are coordinatized
by :func:`monomials`, which fixes a deterministic basis order.

The central tool is :class:`LinearFormReducer`: the image of a
homogeneous polynomial in the quotient ring S/(L) for a nonzero linear
form L, realized by eliminating one variable.  Congruence conditions
"s_x - s_y divisible by the edge label" throughout the package reduce to
kernels and images of these maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from . import kernels
from .linalg import ExactMatrix


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, lex descending."""
    if num_vars == 0:
        return ((),) if degree == 0 else ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(num_vars - 1, degree - k):
            out.append((k,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(num_vars, degree))}


@lru_cache(maxsize=None)
def reduced_monomials(num_vars: int, degree: int, pivot: int) -> tuple[tuple[int, ...], ...]:
    """Monomials with zero exponent at ``pivot``: a basis of S/(L) in degree d."""
    return tuple(m for m in monomials(num_vars, degree) if m[pivot] == 0)


@lru_cache(maxsize=None)
def reduced_monomial_index(num_vars: int, degree: int, pivot: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(reduced_monomials(num_vars, degree, pivot))}


def monomial_count(num_vars: int, degree: int) -> int:
    return comb(degree + num_vars - 1, num_vars - 1)


def poly_mul(p: dict, q: dict) -> dict:
    """Product of two sparse homogeneous polynomials."""
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            w = out.get(e, 0) + ca * cb
            if w:
                out[e] = w
            elif e in out:
                del out[e]
    return out


@dataclass(frozen=True)
class GradedPolySpace:
    """Polynomial ring in ``num_vars`` variables truncated at ``degree_bound``.

    For the moment-graph application the variables are the rank-many
    finite torus directions plus the loop direction delta; nothing here
    depends on that reading.
    """

    num_vars: int
    degree_bound: int

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if self.degree_bound < 0:
            raise ValueError("degree bound must be non-negative")

    def monomial_basis(self, degree: int) -> tuple[tuple[int, ...], ...]:
        if not 0 <= degree <= self.degree_bound:
            raise ValueError(f"degree {degree} outside [0, {self.degree_bound}]")
        return monomials(self.num_vars, degree)

    def dim(self, degree: int) -> int:
        return monomial_count(self.num_vars, degree)


def form_is_zero(form) -> bool:
    return all(c == 0 for c in form)


def forms_proportional(f, g) -> bool:
    """Whether two linear forms span the same line (2x2 minors vanish)."""
    n = len(f)
    for i in range(n):
        for j in range(i + 1, n):
            if f[i] * g[j] - f[j] * g[i] != 0:
                return False
    return True


def primitive_form(form) -> tuple[int, ...]:
    """Content-stripped, sign-normalized copy (first nonzero entry > 0)."""
    g = 0
    for c in form:
        g = gcd(g, c)
    if g == 0:
        raise ValueError("zero form has no primitive representative")
    vec = tuple(c // g for c in form)
    for c in vec:
        if c:
            return vec if c > 0 else tuple(-x for x in vec)
    raise AssertionError


class LinearFormReducer:
    """Reduction of homogeneous polynomials modulo a nonzero linear form.

    The quotient S/(L) is realized by eliminating the pivot variable,
    chosen as the variable whose coefficient in L has the largest
    absolute value (first such on ties), so the choice is deterministic
    and the pivot never degenerates.  To stay integral the reduction of
    a degree-d polynomial is scaled by pivot_coeff**d.  The scaling is
    uniform per degree and multiplicative across products
    (``red(p*q) = red(p)*red(q)``), so kernels, image dimensions and the
    module structure over the ambient ring are all unaffected.
    """

    def __init__(self, form, num_vars: int | None = None):
        form = tuple(form)
        if form_is_zero(form):
            raise ValueError("cannot reduce modulo the zero form")
        n = len(form) if num_vars is None else num_vars
        if len(form) != n:
            raise ValueError("form length disagrees with variable count")
        self.num_vars = n
        self.form = form
        pivot = 0
        best = abs(form[0])
        for i, c in enumerate(form):
            if abs(c) > best:
                pivot, best = i, abs(c)
        self.pivot = pivot
        self.pivot_coeff = form[pivot]
        # c * x_pivot == -sum_{i != pivot} form[i] * x_i on {L = 0}
        subst: dict = {}
        for i, c in enumerate(form):
            if i != pivot and c:
                e = [0] * n
                e[i] = 1
                subst[tuple(e)] = -c
        self._subst = subst
        self._subst_pows: list[dict] = [{tuple([0] * n): 1}, subst]
        self._mono_cache: dict[tuple[int, ...], dict] = {}
        self._var_forms: list[dict] | None = None

    def _subst_pow(self, k: int) -> dict:
        pows = self._subst_pows
        while len(pows) <= k:
            pows.append(poly_mul(pows[-1], self._subst))
        return pows[k]

    def reduce_monomial(self, exp: tuple[int, ...]) -> dict:
        """Scaled image of a monomial in S/(L), on the pivot-free basis."""
        cached = self._mono_cache.get(exp)
        if cached is not None:
            return cached
        k = exp[self.pivot]
        d = sum(exp)
        scale = self.pivot_coeff ** (d - k)
        if k == 0:
            out = {exp: scale}
        else:
            base = list(exp)
            base[self.pivot] = 0
            out = {}
            for e, c in self._subst_pow(k).items():
                m = tuple(x + y for x, y in zip(base, e))
                out[m] = c * scale
        self._mono_cache[exp] = out
        return out

    def reduce_poly(self, p: dict) -> dict:
        """Scaled image of a homogeneous polynomial in S/(L)."""
        out: dict = {}
        for exp, coef in p.items():
            for m, c in self.reduce_monomial(exp).items():
                w = out.get(m, 0) + coef * c
                if w:
                    out[m] = w
                elif m in out:
                    del out[m]
        return out

    def variable_form(self, i: int) -> dict:
        """Scaled image of the variable x_i, used for module multiplication."""
        if self._var_forms is None:
            forms = []
            for j in range(self.num_vars):
                e = [0] * self.num_vars
                e[j] = 1
                forms.append(self.reduce_monomial(tuple(e)))
            self._var_forms = forms
        return self._var_forms[i]


_REDUCERS: dict[tuple[int, tuple[int, ...]], LinearFormReducer] = {}


def reducer_for(form, num_vars: int) -> LinearFormReducer:
    """Shared reducer cache; labels repeat heavily across a moment graph."""
    key = (num_vars, tuple(form))
    red = _REDUCERS.get(key)
    if red is None:
        red = LinearFormReducer(form, num_vars)
        _REDUCERS[key] = red
    return red


def divisibility_conditions(space: GradedPolySpace, degree: int, form) -> ExactMatrix:
    """Linear conditions cutting out the degree-d multiples of a linear form.

    Rows are indexed by the pivot-free monomials of degree ``degree``,
    columns by the full monomial basis; the kernel of the returned
    matrix is exactly the coefficient space of polynomials divisible by
    ``form``.  Raises on the zero form (the congruence is ill posed).
    """
    form = tuple(form)
    if form_is_zero(form):
        raise ValueError("divisibility modulo the zero form is ill posed")
    if degree > space.degree_bound:
        raise ValueError("degree exceeds the space's bound")
    n = space.num_vars
    red = reducer_for(form, n)
    cols = monomials(n, degree)
    ridx = reduced_monomial_index(n, degree, red.pivot)
    entries: dict[tuple[int, int], Fraction] = {}
    for j, exp in enumerate(cols):
        for m, c in red.reduce_monomial(exp).items():
            entries[(ridx[m], j)] = Fraction(c)
    return ExactMatrix(len(ridx), len(cols), entries)


class ClosureViolation(ValueError):
    """A per-degree family of subspaces is not closed under the variables."""


def graded_minimal_generators(per_degree_bases, num_vars: int) -> list[int]:
    """Minimal generator counts of a graded submodule given by bases.

    ``per_degree_bases[d]`` is a sequence of coefficient vectors over the
    degree-d monomial basis.  The module must be closed under
    multiplication by the variables up to the top listed degree; a
    product that leaves the given subspace raises :class:`ClosureViolation`.
    Generators in degree d are counted by graded Nakayama:
    ``dim B_d - dim(S_1 * B_{d-1})``.
    """

    def to_int_row(vec) -> dict:
        vals = [Fraction(v) for v in vec]
        denom = 1
        for v in vals:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        row = {}
        for j, v in enumerate(vals):
            w = v * denom
            if w:
                row[j] = int(w)
        return kernels.strip_content(row)

    def shift_rows(row: dict, d: int) -> list[dict]:
        src = monomials(num_vars, d)
        tgt = monomial_index(num_vars, d + 1)
        out = []
        for i in range(num_vars):
            new: dict = {}
            for j, c in row.items():
                e = list(src[j])
                e[i] += 1
                new[tgt[tuple(e)]] = c
            out.append(new)
        return out

    top = len(per_degree_bases) - 1
    bases_rr = []
    for d, basis in enumerate(per_degree_bases):
        rr = kernels.IntRREF()
        for vec in basis:
            rr.add(to_int_row(vec))
        bases_rr.append(rr)

    counts = []
    prev_rows: list[dict] = []
    for d, rr in enumerate(bases_rr):
        prod_rr = kernels.IntRREF()
        for row in prev_rows:
            for shifted in shift_rows(row, d - 1):
                if rr.reduce(shifted):
                    raise ClosureViolation(
                        f"a degree-{d - 1} element times a variable leaves the degree-{d} subspace"
                    )
                prod_rr.add(shifted)
        counts.append(rr.rank - prod_rr.rank)
        prev_rows = [row for _, row in rr.pivot_items()]
        if d == top:
            break
    return counts


def generators_stable(per_degree_bases, num_vars: int) -> bool:
    """Whether the generator profile has settled below the top degree.

    True when no minimal generator appears in the last two listed
    degrees, the same window the stalk engine enforces before reporting
    a rank.
    """
    counts = graded_minimal_generators(per_degree_bases, num_vars)
    if len(counts) < 2:
        return False
    return counts[-1] == 0 and counts[-2] == 0
