"""Exact integer linear algebra and the Katsura pipeline.

Smith normal form is computed over Python integers (no overflow) with a
deterministic pivot rule: smallest nonzero absolute value, ties broken by
row-major position.  The transforms U and V are accumulated from the same
elementary operations, so they are unimodular by construction, and every
call self-verifies U*A*V = D, the divisibility chain and |det| = 1.

A Katsura system (A, B) defines a graph with edges e_{i,j,m} for
0 <= m < A_ij pointing from j to i, and one generator a_i per vertex
acting by  a_i . e_{i,j,m} = e_{i,j,n}  with restriction a_j^l,  where
B_ij + m = l*A_ij + n and 0 <= n < A_ij.  The K-groups are
K0 = coker(I-A) + ker(I-B) and K1 = coker(I-B) + ker(I-A).
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton, Element, GeneratorRule
from .errors import ShapeMismatchError, ZeroBlockDivisionError
from .graphs import Graph


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(rows) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatchError("ragged rows")
        return IntMatrix(rows)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.of([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix.of([
            [sum(self[i, k] * other[k, j] for k in range(self.cols))
             for j in range(other.cols)]
            for i in range(self.rows)
        ])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatchError("shape mismatch")
        return IntMatrix.of([
            [self[i, j] - other[i, j] for j in range(self.cols)]
            for i in range(self.rows)
        ])

    def det(self) -> int:
        """Fraction-free Bareiss determinant (square matrices)."""
        if self.rows != self.cols:
            raise ShapeMismatchError("det needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def to_lists(self):
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """U*m*V = D with U, V unimodular and D diagonal, nonnegative, with the
    divisibility chain d1 | d2 | ...; self-verified before returning."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pos = pivot(t)
        if pos is None:
            break
        if pos[0] != t:
            swap_rows(t, pos[0])
        if pos[1] != t:
            swap_cols(t, pos[1])
        while True:
            # reduce the pivot column, then row, Euclid-style
            moved = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        moved = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        moved = True
            if not moved:
                break
        # pull in any entry the pivot does not divide yet
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    um, dm, vm = IntMatrix.of(u), IntMatrix.of(a), IntMatrix.of(v)
    res = SNFResult(um, dm, vm)
    _verify_snf(m, res)
    return res


def _verify_snf(m: IntMatrix, res: SNFResult):
    if (res.U @ m) @ res.V != res.D:
        raise AssertionError("SNF postcondition U*A*V = D failed")
    if abs(res.U.det()) != 1 or abs(res.V.det()) != 1:
        raise AssertionError("SNF transforms are not unimodular")
    d = res.diagonal()
    for i in range(res.D.rows):
        for j in range(res.D.cols):
            if i != j and res.D[i, j] != 0:
                raise AssertionError("SNF result is not diagonal")
    for x in d:
        if x < 0:
            raise AssertionError("SNF diagonal must be nonnegative")
    for x, y in zip(d, d[1:]):
        if x == 0 and y != 0:
            raise AssertionError("SNF zero entries must come last")
        if x != 0 and y % x != 0:
            raise AssertionError("SNF divisibility chain broken")


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant factors."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for x, y in zip(self.torsion, self.torsion[1:]):
            if y % x != 0:
                raise ValueError("torsion factors must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        factors = list(self.torsion) + list(other.torsion)
        if not factors:
            return AbelianGroup(self.rank + other.rank)
        n = len(factors)
        diag = IntMatrix.of([[factors[i] if i == j else 0 for j in range(n)]
                             for i in range(n)])
        snf = smith_normal_form(diag)
        torsion = tuple(x for x in snf.diagonal() if x > 1)
        return AbelianGroup(self.rank + other.rank, torsion)

    def as_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def cokernel(m: IntMatrix) -> AbelianGroup:
    """Z^rows / im(m), read off the Smith diagonal."""
    d = smith_normal_form(m).diagonal()
    nonzero = [x for x in d if x != 0]
    free = m.rows - len(nonzero)
    torsion = tuple(x for x in nonzero if x > 1)
    return AbelianGroup(free, torsion)


def kernel(m: IntMatrix) -> AbelianGroup:
    """ker(m) <= Z^cols is free of rank = number of zero Smith columns."""
    d = smith_normal_form(m).diagonal()
    rank = len([x for x in d if x != 0])
    return AbelianGroup(m.cols - rank)


def katsura_automaton(a: IntMatrix, b: IntMatrix) -> Automaton:
    """The self-similar groupoid action of the Katsura system (A, B).

    Edge e_{i,j,m} (named ``e<i>_<j>_<m>``) points from vertex j to vertex i;
    generator a_i fixes vertex i on both sides.  The modulus in the division
    B_ij + m = l*A_ij + n is A_ij, which is what the worked rules force.
    """
    if a.rows != a.cols or (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeMismatchError("A and B must be square of equal size")
    n = a.rows
    if any(a[i, j] < 0 for i in range(n) for j in range(n)):
        raise ShapeMismatchError("A must be nonnegative")
    for i in range(n):
        for j in range(n):
            if a[i, j] == 0 and b[i, j] != 0:
                raise ZeroBlockDivisionError(
                    f"A[{i + 1},{j + 1}] = 0 but B[{i + 1},{j + 1}] != 0")
    if any(all(a[i, j] == 0 for j in range(n)) for i in range(n)):
        raise ShapeMismatchError("A has a zero row: the graph would have a source")

    vertices = [str(i + 1) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            for m in range(a[i, j]):
                edges.append((f"e{i + 1}_{j + 1}_{m}", str(j + 1), str(i + 1)))
    graph = Graph(vertices, edges)

    gens = {}
    for i in range(n):
        rules = {}
        for j in range(n):
            for m in range(a[i, j]):
                l, r = divmod(b[i, j] + m, a[i, j])
                word = tuple((f"a{j + 1}", 1) for _ in range(l))
                rules[f"e{i + 1}_{j + 1}_{m}"] = (
                    f"e{i + 1}_{j + 1}_{r}", Element(str(j + 1), word))
        gens[f"a{i + 1}"] = GeneratorRule(str(i + 1), str(i + 1), rules)
    return Automaton(graph, gens)


def katsura_ktheory(a: IntMatrix, b: IntMatrix) -> tuple[AbelianGroup, AbelianGroup]:
    """K0 = coker(I-A) + ker(I-B);  K1 = coker(I-B) + ker(I-A)."""
    if a.rows != a.cols or (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeMismatchError("A and B must be square of equal size")
    ident = IntMatrix.identity(a.rows)
    k0 = cokernel(ident - a).direct_sum(kernel(ident - b))
    k1 = cokernel(ident - b).direct_sum(kernel(ident - a))
    return k0, k1
