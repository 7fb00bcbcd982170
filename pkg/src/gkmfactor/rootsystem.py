"""Simply-laced root systems (types A, D, E) in integer realizations.

Realizations are chosen so that every root and every supported coweight
is an integer vector:

* ``A_l``: ambient ``Z^(l+1)``, simple roots ``e_i - e_(i+1)``.  The
  ambient lattice carries the GL-style weights, so the fundamental
  coweights ``e_1 + ... + e_i`` are integral.
* ``D_l``: ambient ``Z^l``, simple roots ``e_i - e_(i+1)`` and
  ``e_(l-1) + e_l``.
* ``E_6/7/8``: doubled Bourbaki coordinates in ``Z^8`` (every standard
  coordinate times two), which clears the half-integer entries of the
  spinor-type roots.  Pairings are normalized by the squared root
  length, so the doubling is invisible downstream.

Simply-laced systems are treated as self-dual: coroots are identified
with roots, and the pairing of a coweight ``v`` against a root ``a`` is
``2 (v, a) / (a, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = tuple[int, ...]

ROOT_COUNT = {
    "A": lambda l: l * (l + 1),
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
}


class UnsupportedRootSystem(ValueError):
    pass


def root_count(type_label: str, rank: int) -> int:
    """Closed-form root count with the same support validation as
    :func:`build`; cross-checked against reflection closure in tests."""
    if type_label == "A" and rank >= 1:
        return rank * (rank + 1)
    if type_label == "D" and rank >= 3:
        return 2 * rank * (rank - 1)
    if type_label == "E" and rank in (6, 7, 8):
        return {6: 72, 7: 126, 8: 240}[rank]
    raise UnsupportedRootSystem(
        f"unsupported system {type_label}{rank} (need A>=1, D>=3 or E6..E8)"
    )


def _simple_roots(type_label: str, rank: int) -> tuple[list[Vec], int]:
    if type_label == "A":
        if rank < 1:
            raise UnsupportedRootSystem("type A needs rank >= 1")
        m = rank + 1
        simples = []
        for i in range(rank):
            v = [0] * m
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        return simples, m
    if type_label == "D":
        if rank < 3:
            raise UnsupportedRootSystem("type D needs rank >= 3")
        m = rank
        simples = []
        for i in range(rank - 1):
            v = [0] * m
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        v = [0] * m
        v[rank - 2], v[rank - 1] = 1, 1
        simples.append(tuple(v))
        return simples, m
    if type_label == "E":
        if rank not in (6, 7, 8):
            raise UnsupportedRootSystem("type E needs rank 6, 7 or 8")
        all_eight = [
            (1, -1, -1, -1, -1, -1, -1, 1),
            (2, 2, 0, 0, 0, 0, 0, 0),
            (-2, 2, 0, 0, 0, 0, 0, 0),
            (0, -2, 2, 0, 0, 0, 0, 0),
            (0, 0, -2, 2, 0, 0, 0, 0),
            (0, 0, 0, -2, 2, 0, 0, 0),
            (0, 0, 0, 0, -2, 2, 0, 0),
            (0, 0, 0, 0, 0, -2, 2, 0),
        ]
        return [tuple(v) for v in all_eight[:rank]], 8
    raise UnsupportedRootSystem(f"unsupported type {type_label!r} (need A, D or E)")


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class RootSystem:
    """Immutable simply-laced root datum; build with :func:`build`."""

    type_label: str
    rank: int
    ambient_dim: int = field(compare=False)
    simple_roots: tuple[Vec, ...] = field(compare=False)
    positive_roots: tuple[Vec, ...] = field(compare=False)
    roots: tuple[Vec, ...] = field(compare=False)
    cartan_matrix: tuple[tuple[int, ...], ...] = field(compare=False)
    cartan_inverse: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False)
    highest_root: Vec = field(compare=False)
    root_norm_sq: int = field(compare=False)
    two_rho: Vec = field(compare=False)
    root_simple_coeffs: dict = field(compare=False, repr=False)
    _domrep_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _coeff_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def weyl_vector(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.two_rho)

    def __repr__(self):
        return f"RootSystem({self.type_label}{self.rank}, |Phi|={self.num_roots})"


def build(type_label: str, rank: int) -> RootSystem:
    """Construct the root system, closing the simple roots under reflection.

    Raises :class:`UnsupportedRootSystem` for anything outside
    (A, l >= 1), (D, l >= 3), (E, 6..8).  The root count is checked
    against the closed-form cardinality for the type.
    """
    simples, m = _simple_roots(type_label, rank)
    norm_sq = _dot(simples[0], simples[0])
    for a in simples:
        if _dot(a, a) != norm_sq:
            raise AssertionError("simple roots of unequal length in a simply-laced type")

    def reflect(v: Vec, a: Vec) -> Vec:
        k = 2 * _dot(v, a) // norm_sq
        return tuple(x - k * y for x, y in zip(v, a))

    roots = set(simples) | {tuple(-x for x in a) for a in simples}
    frontier = set(roots)
    while frontier:
        new = set()
        for r in frontier:
            for a in simples:
                s = reflect(r, a)
                if s not in roots:
                    new.add(s)
        roots |= new
        frontier = new

    expected = ROOT_COUNT[type_label](rank)
    if len(roots) != expected:
        raise AssertionError(
            f"reflection closure produced {len(roots)} roots, expected {expected}"
        )

    cartan = tuple(
        tuple(2 * _dot(a, b) // norm_sq for b in simples) for a in simples
    )
    for i, row in enumerate(cartan):
        for j, c in enumerate(row):
            ok = c == 2 if i == j else c in (0, -1)
            if not ok:
                raise AssertionError("Cartan matrix entry outside {2, 0, -1}")

    cartan_inv = _invert_fraction_matrix(cartan)

    # Simple-root coefficients per root via the Cartan inverse.
    coeffs: dict[Vec, tuple[int, ...]] = {}
    for r in roots:
        p = [2 * _dot(r, a) // norm_sq for a in simples]
        c = [
            sum(cartan_inv[i][j] * p[j] for j in range(rank))
            for i in range(rank)
        ]
        ci = tuple(int(x) for x in c)
        if any(x != y for x, y in zip(ci, c)):
            raise AssertionError("root with non-integer simple coefficients")
        coeffs[r] = ci

    positives = sorted(
        (r for r in roots if sum(coeffs[r]) > 0),
        key=lambda r: (sum(coeffs[r]), r),
    )
    if 2 * len(positives) != len(roots):
        raise AssertionError("roots do not split evenly into positive and negative")

    dominant = [
        r for r in roots
        if all(2 * _dot(r, a) >= 0 for a in simples)
    ]
    if len(dominant) != 1:
        raise AssertionError(f"expected a unique dominant root, found {len(dominant)}")

    two_rho = tuple(sum(col) for col in zip(*positives))

    return RootSystem(
        type_label=type_label,
        rank=rank,
        ambient_dim=m,
        simple_roots=tuple(simples),
        positive_roots=tuple(positives),
        roots=tuple(sorted(roots)),
        cartan_matrix=cartan,
        cartan_inverse=cartan_inv,
        highest_root=dominant[0],
        root_norm_sq=norm_sq,
        two_rho=two_rho,
        root_simple_coeffs=coeffs,
    )


def _invert_fraction_matrix(m) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    aug = [
        [Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def pairing(rs: RootSystem, v, root: Vec):
    """``<root, v-as-coroot-side>`` = 2 (v, root) / (root, root).

    Integer for integer coweights; exact Fraction otherwise.
    """
    num = 2 * _dot(v, root)
    if num % rs.root_norm_sq == 0 and not any(isinstance(x, Fraction) for x in v):
        return num // rs.root_norm_sq
    return Fraction(num, rs.root_norm_sq)


def reflect(rs: RootSystem, v, root: Vec):
    """Reflection of ``v`` in the hyperplane of ``root`` (self-dual convention)."""
    k = pairing(rs, v, root)
    return tuple(x - k * y for x, y in zip(v, root))


def simple_coefficients(rs: RootSystem, v: Vec):
    """Coefficients of ``v`` over the simple roots, or None if outside the span.

    Solved through the inverse Cartan matrix and verified by
    reconstruction, so membership in the root span is decided exactly.
    """
    cached = rs._coeff_cache.get(v)
    if cached is not None:
        return cached if cached != "out" else None
    p = [Fraction(2 * _dot(v, a), rs.root_norm_sq) for a in rs.simple_roots]
    c = tuple(
        sum(rs.cartan_inverse[i][j] * p[j] for j in range(rs.rank))
        for i in range(rs.rank)
    )
    recon = [Fraction(0)] * rs.ambient_dim
    for ci, a in zip(c, rs.simple_roots):
        for k, x in enumerate(a):
            recon[k] += ci * x
    if any(r != x for r, x in zip(recon, v)):
        rs._coeff_cache[v] = "out"
        return None
    rs._coeff_cache[v] = c
    return c


def projected_height(rs: RootSystem, v: Vec) -> Fraction:
    """Sum of the simple-root coefficients of the root-span projection.

    Linear in ``v`` and equal to the honest height on the root span, so
    dominance-comparable coweights always have strictly ordered values.
    """
    total = Fraction(0)
    for i in range(rs.rank):
        p = Fraction(2 * _dot(v, rs.simple_roots[i]), rs.root_norm_sq)
        total += sum(rs.cartan_inverse[j][i] * p for j in range(rs.rank))
    return total


def is_dominant(rs: RootSystem, v: Vec) -> bool:
    return all(_dot(v, a) >= 0 for a in rs.simple_roots)


def dominant_representative(rs: RootSystem, v: Vec) -> Vec:
    """The unique dominant vector in the Weyl orbit of ``v``."""
    cached = rs._domrep_cache.get(v)
    if cached is not None:
        return cached
    w = v
    while True:
        for a in rs.simple_roots:
            if _dot(w, a) < 0:
                w = reflect(rs, w, a)
                break
        else:
            break
    rs._domrep_cache[v] = w
    return w


def dominance_leq(rs: RootSystem, nu: Vec, lam: Vec) -> bool:
    """Whether ``lam - nu`` is a non-negative integer sum of simple coroots."""
    diff = tuple(a - b for a, b in zip(lam, nu))
    c = simple_coefficients(rs, diff)
    if c is None:
        return False
    return all(x.denominator == 1 and x >= 0 for x in map(Fraction, c))


def total_order_extension(coweights, rs: RootSystem) -> list[Vec]:
    """A deterministic linear extension of the dominance order.

    Sorts by (projected height, lexicographic coordinates).  Dominance
    strictly increases projected height, so no comparable pair is
    inverted; the lexicographic tie-break makes the output reproducible.
    """
    return sorted(coweights, key=lambda v: (projected_height(rs, v), v))


def w_orbit(rs: RootSystem, v) -> list:
    """Weyl orbit of a vector (entries may be Fractions), sorted."""
    seen = {tuple(v)}
    queue = [tuple(v)]
    while queue:
        x = queue.pop()
        for a in rs.simple_roots:
            y = reflect(rs, x, a)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def w_orbit_signed(rs: RootSystem, v) -> dict:
    """Weyl orbit of a regular vector with determinant signs.

    Raises if some orbit point is fixed by a simple reflection (the
    vector is not regular and signs would be ill-defined).
    """
    start = tuple(v)
    signs = {start: 1}
    queue = [start]
    while queue:
        x = queue.pop()
        s = signs[x]
        for a in rs.simple_roots:
            y = reflect(rs, x, a)
            if y == x:
                raise ValueError("vector is not regular, orbit signs undefined")
            if y not in signs:
                signs[y] = -s
                queue.append(y)
    return signs


def adjoint_weights(rs: RootSystem) -> dict[Vec, int]:
    """Weight multiset of the adjoint representation: all roots once,
    zero with multiplicity equal to the rank."""
    table = {r: 1 for r in rs.roots}
    table[tuple([0] * rs.ambient_dim)] = rs.rank
    return table


def zero_vec(rs: RootSystem) -> Vec:
    return tuple([0] * rs.ambient_dim)


def weights_of(rs: RootSystem, lam: Vec) -> list[Vec]:
    """The weight set of the irreducible with highest coweight ``lam``:
    all ``nu`` whose dominant conjugate is dominance-below ``lam``."""
    if not is_dominant(rs, lam):
        raise ValueError("highest coweight must be dominant")
    seen = {lam}
    queue = [lam]
    while queue:
        v = queue.pop()
        for a in rs.simple_roots:
            w = tuple(x - y for x, y in zip(v, a))
            if w in seen:
                continue
            if dominance_leq(rs, dominant_representative(rs, w), lam):
                seen.add(w)
                queue.append(w)
    return sorted(seen)


def dominant_weights_of(rs: RootSystem, lam: Vec) -> list[Vec]:
    return [v for v in weights_of(rs, lam) if is_dominant(rs, v)]


def fundamental_coweight(rs: RootSystem, i: int) -> Vec:
    """The i-th fundamental coweight (1-based) when it is integral in the
    realization; raises otherwise (e.g. D-type spinor nodes)."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"node index {i} outside 1..{rs.rank}")
    if rs.type_label == "A":
        return tuple([1] * i + [0] * (rs.ambient_dim - i))
    if rs.type_label == "D" and i <= rs.rank - 2:
        return tuple([1] * i + [0] * (rs.ambient_dim - i))
    # Root-span solution via the inverse Cartan matrix.
    coeffs = [rs.cartan_inverse[j][i - 1] for j in range(rs.rank)]
    vec = [Fraction(0)] * rs.ambient_dim
    for c, a in zip(coeffs, rs.simple_roots):
        for k, x in enumerate(a):
            vec[k] += c * x
    if any(x.denominator != 1 for x in vec):
        raise ValueError(
            f"fundamental coweight {i} of {rs.type_label}{rs.rank} is not integral "
            "in this realization"
        )
    return tuple(int(x) for x in vec)


def dual_coweight(rs: RootSystem, v: Vec) -> Vec:
    """Highest coweight of the dual representation: the dominant
    conjugate of ``-v``."""
    return dominant_representative(rs, tuple(-x for x in v))


def resolve_coweight(rs: RootSystem, name: str) -> Vec:
    """Resolve a symbolic coweight name against a root system.

    Accepts ``zero``, ``theta``, ``omega<k>``, ``omega<k>*`` (dual), or a
    comma-separated integer vector in the realization's coordinates.
    """
    name = name.strip()
    if name == "zero":
        return zero_vec(rs)
    if name == "theta":
        return rs.highest_root
    if name.startswith("omega"):
        rest = name[len("omega"):]
        dual = rest.endswith("*")
        if dual:
            rest = rest[:-1]
        try:
            k = int(rest)
        except ValueError:
            raise ValueError(f"cannot parse coweight name {name!r}") from None
        w = fundamental_coweight(rs, k)
        return dual_coweight(rs, w) if dual else w
    try:
        vec = tuple(int(part) for part in name.split(","))
    except ValueError:
        raise ValueError(f"cannot parse coweight name {name!r}") from None
    if len(vec) != rs.ambient_dim:
        raise ValueError(
            f"coweight vector needs {rs.ambient_dim} coordinates for {rs.type_label}{rs.rank}"
        )
    return vec
