"""Exact linear algebra over the integers.

Everything in this module is computed with arbitrary-precision integers;
there is no floating point anywhere.  It provides Smith normal form with
unimodular transforms, finitely generated abelian groups in canonical
invariant-factor form, homomorphisms between them, Ext groups, middle
groups of short exact sequences, and an exactness checker.  These are
the primitives every other module is built on.

All values are immutable after construction and all operations are pure,
so concurrent use needs no synchronization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import CompositionMismatch, UnsupportedShape


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        if not all(isinstance(x, int) for x in self.entries):
            raise ValueError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows_data) -> "IntMatrix":
        rows_data = [list(r) for r in rows_data]
        nrows = len(rows_data)
        ncols = len(rows_data[0]) if rows_data else 0
        if any(len(r) != ncols for r in rows_data):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(x for r in rows_data for x in r))

    @classmethod
    def from_columns(cls, columns, nrows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise ValueError("column length does not match row count")
        return cls(nrows, len(columns),
                   tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col_list(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row_list(i) for i in range(self.rows)]

    def columns(self) -> list:
        return [self.col_list(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix dimensions incompatible for product")
        out = []
        for i in range(self.rows):
            ri = self.row_list(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vector) -> list:
        """Matrix-times-column-vector product."""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum(self.at(i, k) * vector[k] for k in range(self.cols))
                for i in range(self.rows)]

    def diagonal(self) -> list:
        return [self.at(i, i) for i in range(min(self.rows, self.cols))]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in self.row_list(i))
                               for i in range(self.rows)) + "]"


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix: IntMatrix):
    """Diagonalize an integer matrix by unimodular transforms.

    Returns (U, D, V) with U * matrix * V == D, det(U), det(V) in {1, -1},
    D diagonal with nonnegative entries satisfying d1 | d2 | ... (zeros
    trail).  Pivots are chosen as the smallest nonzero absolute value,
    ties broken by lowest (row, col), so the transforms are deterministic.
    """
    m, n = matrix.rows, matrix.cols
    M = matrix.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    def add_row(i, j, q):  # row_i += q * row_j
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):  # col_i += q * col_j
        for row in M:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if M[t][t] < 0:
            negate_row(t)
        p = M[t][t]
        dirty = False
        for i in range(t + 1, m):
            if M[i][t]:
                add_row(i, t, -(M[i][t] // p))
                dirty = dirty or bool(M[i][t])
        for j in range(t + 1, n):
            if M[t][j]:
                add_col(j, t, -(M[t][j] // p))
                dirty = dirty or bool(M[t][j])
        if dirty:
            continue  # a smaller residue appeared; re-select the pivot
        stray = None
        for i in range(t + 1, m):
            if any(M[i][j] % p for j in range(t + 1, n)):
                stray = i
                break
        if stray is not None:
            add_row(t, stray, 1)  # pull the bad row in; gcd shrinks the pivot
            continue
        t += 1

    return (IntMatrix.from_rows(U) if m else IntMatrix(0, 0, ()),
            IntMatrix.from_rows(M) if m else IntMatrix(0, n, ()),
            IntMatrix.from_rows(V) if n else IntMatrix(0, 0, ()))


def matrix_rank(matrix: IntMatrix) -> int:
    _, d, _ = smith_normal_form(matrix)
    return sum(1 for x in d.diagonal() if x)


def kernel_columns(matrix: IntMatrix) -> list:
    """An integer basis (list of columns) of {x : matrix @ x = 0}."""
    _, d, v = smith_normal_form(matrix)
    rank = sum(1 for x in d.diagonal() if x)
    return [v.col_list(j) for j in range(rank, matrix.cols)]


def _lattice_solver(columns, dim):
    """Precompute a membership test for the Z-span of the given columns."""
    if not columns:
        return lambda vec: all(x == 0 for x in vec)
    mat = IntMatrix.from_columns(columns, dim)
    u, d, _ = smith_normal_form(mat)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)

    def contains(vec):
        y = u.apply(vec)
        for i in range(dim):
            if i < rank:
                if y[i] % diag[i]:
                    return False
            elif y[i]:
                return False
        return True

    return contains


def lattice_contains(columns, vector) -> bool:
    """Is the vector in the Z-span of the given columns?"""
    vector = list(vector)
    return _lattice_solver(list(columns), len(vector))(vector)


def _lattice_subset(cols_a, cols_b, dim) -> bool:
    contains = _lattice_solver(cols_b, dim)
    return all(contains(c) for c in cols_a)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in invariant-factor form.

    ``torsion`` lists the invariant factors d1 | d2 | ... with each di >= 2.
    Canonical form makes isomorphism decidable by structural equality:

    >>> FgAbGroup.of(cyclic=(2, 3)) == FgAbGroup.of(cyclic=(6,))
    True
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise ValueError("invariant factors must be integers >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def of(cls, free_rank: int = 0, cyclic=()) -> "FgAbGroup":
        """Canonicalize a direct sum of cyclic groups (0 means an infinite factor)."""
        finite = []
        free = free_rank
        for c in cyclic:
            c = abs(int(c))
            if c == 0:
                free += 1
            elif c > 1:
                finite.append(c)
        if not finite:
            return cls(free, ())
        k = len(finite)
        diag = IntMatrix(k, k, tuple(finite[i] if i == j else 0
                                     for i in range(k) for j in range(k)))
        _, d, _ = smith_normal_form(diag)
        return cls(free, tuple(x for x in d.diagonal() if x > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def generator_orders(self) -> tuple:
        """Orders of the canonical generators: free ones first (order 0)."""
        return (0,) * self.free_rank + self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return math.prod(self.torsion) if self.torsion else 1

    def direct_sum(self, *others) -> "FgAbGroup":
        free = self.free_rank + sum(g.free_rank for g in others)
        cyclic = list(self.torsion)
        for g in others:
            cyclic.extend(g.torsion)
        return FgAbGroup.of(free, cyclic)

    def to_text(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return "+".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "FgAbGroup":
        text = text.strip()
        if text == "0":
            return cls()
        free = 0
        cyclic = []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                cyclic.append(int(part[2:]))
            else:
                raise ValueError("cannot parse group %r" % text)
        return cls.of(free, cyclic)

    def __str__(self):
        return self.to_text()


TRIVIAL_GROUP = FgAbGroup()


def _relation_columns(group: FgAbGroup) -> list:
    """Presentation relations of the group in its canonical generators."""
    n = group.num_generators
    cols = []
    for idx, d in enumerate(group.torsion):
        col = [0] * n
        col[group.free_rank + idx] = d
        cols.append(col)
    return cols


def element_is_zero(group: FgAbGroup, vector) -> bool:
    vector = list(vector)
    orders = group.generator_orders()
    if len(vector) != len(orders):
        raise ValueError("vector length does not match generator count")
    return all((x == 0) if o == 0 else (x % o == 0) for x, o in zip(vector, orders))


def element_normal_form(group: FgAbGroup, vector) -> tuple:
    orders = group.generator_orders()
    return tuple(x if o == 0 else x % o for x, o in zip(vector, orders))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on canonical generators.

    Column j of ``matrix`` is the image of the j-th source generator in
    the target's canonical generators, so matrix shape is
    (target generators) x (source generators).
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.num_generators:
            raise ValueError("matrix row count does not match target generators")
        if self.matrix.cols != self.source.num_generators:
            raise ValueError("matrix column count does not match source generators")
        for j, d in enumerate(self.source.generator_orders()):
            if d == 0:
                continue
            scaled = [d * x for x in self.matrix.col_list(j)]
            if not element_is_zero(self.target, scaled):
                raise ValueError("homomorphism not well-defined on torsion generator %d" % j)

    def apply(self, vector) -> tuple:
        return element_normal_form(self.target, self.matrix.apply(vector))

    def is_zero(self) -> bool:
        return all(element_is_zero(self.target, c) for c in self.matrix.columns())


def zero_hom(source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    return GroupHom(source, target,
                    IntMatrix.zeros(target.num_generators, source.num_generators))


def identity_hom(group: FgAbGroup) -> GroupHom:
    return GroupHom(group, group, IntMatrix.identity(group.num_generators))


def compose_homs(second: GroupHom, first: GroupHom) -> GroupHom:
    """The composite second o first."""
    if first.target != second.source:
        raise CompositionMismatch("cannot compose: target(first) != source(second)")
    return GroupHom(first.source, second.target, second.matrix * first.matrix)


def check_exact(f: GroupHom, g: GroupHom) -> bool:
    """Exactness at the middle group: g o f == 0 and image(f) == kernel(g)."""
    if f.target != g.source:
        raise CompositionMismatch("check_exact needs target(f) == source(g)")
    middle = f.target
    n = middle.num_generators
    rel_mid = _relation_columns(middle)
    rel_tgt = _relation_columns(g.target)

    composite = g.matrix * f.matrix
    if not all(element_is_zero(g.target, composite.col_list(j))
               for j in range(composite.cols)):
        return False

    image = f.matrix.columns() + rel_mid

    # kernel of g as a lattice in Z^n: x with g.matrix @ x in the span of
    # the target relations; computed from the kernel of [g.matrix | rel_tgt]
    stacked = IntMatrix.from_columns(g.matrix.columns() + rel_tgt,
                                     g.target.num_generators)
    kernel = [col[:n] for col in kernel_columns(stacked)] + rel_mid

    return (_lattice_subset(image, kernel, n)
            and _lattice_subset(kernel, image, n))


def cokernel(relations: IntMatrix) -> FgAbGroup:
    """The group Z^rows modulo the column span of the relation matrix."""
    _, d, _ = smith_normal_form(relations)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    return FgAbGroup(relations.rows - rank, tuple(x for x in diag if x > 1))


def cokernel_with_projection(group: FgAbGroup, column_vectors):
    """Quotient of a group by the subgroup generated by the given columns.

    Returns (Q, proj) with proj a GroupHom from the group onto the
    canonical form Q of the quotient.
    """
    n = group.num_generators
    cols = [list(c) for c in column_vectors] + _relation_columns(group)
    mat = IntMatrix.from_columns(cols, n) if cols else IntMatrix(n, 0, ())
    u, d, _ = smith_normal_form(mat)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    free_rows = list(range(rank, n))
    torsion_rows = [i for i in range(rank) if diag[i] > 1]
    quotient = FgAbGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    proj_rows = [u.row_list(i) for i in free_rows + torsion_rows]
    proj_matrix = (IntMatrix.from_rows(proj_rows) if proj_rows
                   else IntMatrix(0, n, ()))
    return quotient, GroupHom(group, quotient, proj_matrix)


# ---------------------------------------------------------------------------
# Ext groups and extension middles


def ext_group(b: FgAbGroup, a: FgAbGroup) -> FgAbGroup:
    """Ext^1(B, A), additively over cyclic summands.

    Uses Ext(Z, -) = 0, Ext(Z/n, Z) = Z/n and Ext(Z/n, Z/m) = Z/gcd(n, m).
    """
    cyclic = []
    for d in b.torsion:
        cyclic.extend([d] * a.free_rank)
        cyclic.extend(math.gcd(d, m) for m in a.torsion)
    return FgAbGroup.of(cyclic=cyclic)


@dataclass(frozen=True)
class Extension:
    """One extension class 0 -> A -> X -> B -> 0, with X presented explicitly.

    The presentation has the lifted B-generators first and the A-generators
    last, so the inclusion of A sends its i-th generator to the basis vector
    at index a_offset + i.
    """

    group: FgAbGroup
    num_gens: int
    relations: IntMatrix
    a_offset: int
    a_gens: int

    def a_generator_divisible(self, index: int, divisor: int) -> bool:
        """Is the image of the A-generator divisible by ``divisor`` in X?"""
        if not 0 <= index < self.a_gens:
            raise ValueError("A-generator index out of range")
        n = self.num_gens
        cols = [[divisor * int(i == j) for i in range(n)] for j in range(n)]
        cols += self.relations.columns()
        target = [int(i == self.a_offset + index) for i in range(n)]
        return lattice_contains(cols, target)


ENUMERATION_BOUND = 64
_MAX_EXTENSION_CLASSES = 200_000


def enumerate_extensions(a: FgAbGroup, b: FgAbGroup):
    """Yield one Extension per class of Ext^1(B, A).

    Classes are enumerated through coset representatives of A/(d*A) for
    each torsion order d of B; the middle group is canonicalized from the
    explicit presentation.
    """
    for d in a.torsion + b.torsion:
        if d > ENUMERATION_BOUND:
            raise UnsupportedShape("torsion order %d exceeds the enumeration bound" % d)
    fa, ta = a.free_rank, a.torsion
    fb, tb = b.free_rank, b.torsion
    na = fa + len(ta)
    n = fb + len(tb) + na
    a_offset = fb + len(tb)

    reps_per_relation = []
    count = 1
    for d in tb:
        ranges = [range(d)] * fa + [range(math.gcd(d, m)) for m in ta]
        reps = list(itertools.product(*ranges))
        count *= len(reps)
        if count > _MAX_EXTENSION_CLASSES:
            raise UnsupportedShape("too many extension classes to enumerate")
        reps_per_relation.append(reps)

    a_relation_cols = []
    for j, m in enumerate(ta):
        col = [0] * n
        col[a_offset + fa + j] = m
        a_relation_cols.append(col)

    for phi in itertools.product(*reps_per_relation):
        cols = []
        for i, d in enumerate(tb):
            col = [0] * n
            col[fb + i] = d
            for j, c in enumerate(phi[i]):
                col[a_offset + j] -= c
            cols.append(col)
        cols += a_relation_cols
        relations = (IntMatrix.from_columns(cols, n) if cols
                     else IntMatrix(n, 0, ()))
        yield Extension(cokernel(relations), n, relations, a_offset, na)


def middle_group_candidates(a: FgAbGroup, b: FgAbGroup) -> frozenset:
    """Isomorphism classes of X admitting 0 -> A -> X -> B -> 0."""
    return frozenset(ext.group for ext in enumerate_extensions(a, b))


# ---------------------------------------------------------------------------
# kernels of multiplicative (unit-group) maps


def units_kernel(exponents: IntMatrix) -> FgAbGroup:
    """Kernel of the map (C^x)^m -> (C^x)^n with the given exponent matrix.

    Row i of ``exponents`` carries the powers of the i-th input coordinate,
    so the j-th output is prod_i x_i^(A[i][j]).  The kernel is reported as
    an abstract group: the count of full C^x factors appears as free_rank
    and each nonunit nonzero invariant factor d contributes a Z/d of roots
    of unity.
    """
    _, d, _ = smith_normal_form(exponents)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    return FgAbGroup(exponents.rows - rank, tuple(x for x in diag if x > 1))
