"""Linear algebra over GF(2) using int bitsets, plus affine lines in (Z/2)^2.

Vectors are stored as Python ints (bit i = coordinate i), which makes
row operations single XORs.  Pivoting is always on the lowest free index
so every reduced basis is reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Gf2Vector:
    """Vector in GF(2)^length, coordinates packed into an int."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit in the stated length")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "Gf2Vector":
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "Gf2Vector":
        bits = 0
        for i, v in enumerate(values):
            if v & 1:
                bits |= 1 << i
        return cls(len(values), bits)

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def dot(self, other: "Gf2Vector") -> int:
        if self.length != other.length:
            raise ValueError("dimension mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if self.bit(i))

    def weight(self) -> int:
        return self.bits.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.length != other.length:
            raise ValueError("dimension mismatch")
        return Gf2Vector(self.length, self.bits ^ other.bits)

    def to_list(self) -> list[int]:
        return [self.bit(i) for i in range(self.length)]


def _reduce_rows(rows: list[int]) -> tuple[list[int], list[int]]:
    """Row-reduce in place (lowest pivot index first).

    Returns (reduced nonzero rows, pivot columns), both sorted by pivot.
    """
    basis: list[int] = []   # basis[k] has pivot pivots[k]
    pivots: list[int] = []
    for row in rows:
        for b, p in zip(basis, pivots):
            if (row >> p) & 1:
                row ^= b
        if row:
            p = (row & -row).bit_length() - 1
            # insert keeping pivots sorted, then back-substitute
            idx = 0
            while idx < len(pivots) and pivots[idx] < p:
                idx += 1
            basis.insert(idx, row)
            pivots.insert(idx, p)
            for k in range(len(basis)):
                if k != idx and (basis[k] >> p) & 1:
                    basis[k] ^= row
    return basis, pivots


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix; each row is an int bitset of width cols."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_bits) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row wider than cols")

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[Iterable[int]]) -> "Gf2Matrix":
        bits = []
        for row in rows:
            b = 0
            for j, v in enumerate(row):
                if v & 1:
                    b |= 1 << j
            bits.append(b)
        return cls(len(bits), cols, tuple(bits))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def mul_vector(self, v: Gf2Vector) -> Gf2Vector:
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, row in enumerate(self.row_bits):
            if (row & v.bits).bit_count() & 1:
                out |= 1 << i
        return Gf2Vector(self.rows, out)

    def rank(self) -> int:
        basis, _ = _reduce_rows(list(self.row_bits))
        return len(basis)


@dataclass(frozen=True)
class Gf2Subspace:
    """Linear subspace of GF(2)^ambient_dim with a reduced, ordered basis."""

    ambient_dim: int
    basis: tuple[Gf2Vector, ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Gf2Vector]) -> "Gf2Subspace":
        rows = [v.bits for v in vectors]
        reduced, _ = _reduce_rows(rows)
        return cls(ambient_dim, tuple(Gf2Vector(ambient_dim, r) for r in reduced))

    @classmethod
    def full(cls, ambient_dim: int) -> "Gf2Subspace":
        return cls(ambient_dim, tuple(Gf2Vector(ambient_dim, 1 << i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Gf2Vector) -> bool:
        if v.length != self.ambient_dim:
            raise ValueError("dimension mismatch")
        r = v.bits
        for b in self.basis:
            p = (b.bits & -b.bits).bit_length() - 1
            if (r >> p) & 1:
                r ^= b.bits
        return r == 0

    def enumerate(self) -> Iterator[Gf2Vector]:
        """All 2^dim elements; only sensible for small dimensions."""
        n = self.dim
        for mask in range(1 << n):
            bits = 0
            m = mask
            k = 0
            while m:
                if m & 1:
                    bits ^= self.basis[k].bits
                m >>= 1
                k += 1
            yield Gf2Vector(self.ambient_dim, bits)

    def intersect(self, other: "Gf2Subspace") -> "Gf2Subspace":
        """Intersection via the kernel of the stacked quotient maps."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")
        # x in both spaces  <=>  x satisfies the orthogonality constraints of both.
        cons = self.orthogonal_constraints() + other.orthogonal_constraints()
        flat = solve_affine([(c, 0) for c in cons], self.ambient_dim)
        assert flat is not None
        return flat.space

    def orthogonal_constraints(self) -> list[Gf2Vector]:
        """Rows c with c.x = 0 cutting out exactly this subspace."""
        n = self.ambient_dim
        rows = [b.bits for b in self.basis]
        reduced, pivots = _reduce_rows(rows)
        pivot_set = set(pivots)
        free = [j for j in range(n) if j not in pivot_set]
        out = []
        for j in free:
            c = 1 << j
            for b, p in zip(reduced, pivots):
                if (b >> j) & 1:
                    c |= 1 << p
            out.append(Gf2Vector(n, c))
        return out


@dataclass(frozen=True)
class AffineFlat:
    """Solution set offset + space of a consistent affine system over GF(2)."""

    offset: Gf2Vector
    space: Gf2Subspace

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_linear(self) -> bool:
        """True when the flat passes through 0 (it is a plain subspace)."""
        return self.space.contains(self.offset)

    def contains(self, v: Gf2Vector) -> bool:
        return self.space.contains(v ^ self.offset)

    def enumerate(self) -> Iterator[Gf2Vector]:
        for s in self.space.enumerate():
            yield s ^ self.offset


def kernel(m: Gf2Matrix) -> Gf2Subspace:
    """Basis of {v : m.v = 0}; dim = cols - rank, verified."""
    n = m.cols
    reduced, pivots = _reduce_rows(list(m.row_bits))
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = 1 << j
        for b, p in zip(reduced, pivots):
            if (b >> j) & 1:
                v |= 1 << p
        basis.append(Gf2Vector(n, v))
    space = Gf2Subspace.from_vectors(n, basis)
    assert space.dim + len(reduced) == n, "rank-nullity violated"
    return space


def solve_affine(
    constraints: Sequence[tuple[Gf2Vector, int]], ambient_dim: int | None = None
) -> AffineFlat | None:
    """Solve the system {c.x = b}; None when inconsistent.

    The result distinguishes the empty case (None), a linear solution
    space (flat.is_linear) and a proper affine flat.
    """
    if ambient_dim is None:
        if not constraints:
            raise ValueError("ambient_dim required when there are no constraints")
        ambient_dim = constraints[0][0].length
    n = ambient_dim
    for c, _ in constraints:
        if c.length != n:
            raise ValueError("mixed ambient dimensions")
    # augmented rows: constraint bits plus rhs in bit n
    aug = [c.bits | ((b & 1) << n) for c, b in constraints]
    reduced, pivots = _reduce_rows(aug)
    particular = 0
    for b, p in zip(reduced, pivots):
        if p == n:
            return None  # row 0 = 1
        if (b >> n) & 1:
            particular |= 1 << p
    hom = Gf2Matrix(len(constraints), n, tuple(c.bits for c, _ in constraints))
    return AffineFlat(Gf2Vector(n, particular), kernel(hom))


_LINE_NORMALS = {(1, 0): (0, 1), (0, 1): (1, 0), (1, 1): (1, 1)}


@dataclass(frozen=True)
class PhaseLine:
    """1-dimensional affine line {a, a + direction} in (Z/2)^2.

    Stored canonically: rep is the lexicographically smaller element.
    """

    rep: tuple[int, int]
    direction: tuple[int, int]

    def __post_init__(self):
        r = (self.rep[0] & 1, self.rep[1] & 1)
        d = (self.direction[0] & 1, self.direction[1] & 1)
        if d == (0, 0):
            raise ValueError("phase line needs a nonzero direction")
        other = (r[0] ^ d[0], r[1] ^ d[1])
        object.__setattr__(self, "rep", min(r, other))
        object.__setattr__(self, "direction", d)

    @property
    def elements(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a = self.rep
        d = self.direction
        return (a, (a[0] ^ d[0], a[1] ^ d[1]))

    def contains(self, eps: tuple[int, int]) -> bool:
        e = (eps[0] & 1, eps[1] & 1)
        return e in self.elements

    def translate(self, eps: tuple[int, int]) -> "PhaseLine":
        return PhaseLine((self.rep[0] ^ (eps[0] & 1), self.rep[1] ^ (eps[1] & 1)), self.direction)

    @property
    def level(self) -> int:
        """Invariant bit rep.n for n the normal of the direction class.

        Together with the direction it pins the line down completely.
        """
        n = _LINE_NORMALS[self.direction]
        return (self.rep[0] * n[0] + self.rep[1] * n[1]) & 1

    @classmethod
    def from_level(cls, direction: tuple[int, int], level: int) -> "PhaseLine":
        d = (direction[0] & 1, direction[1] & 1)
        n = _LINE_NORMALS[d]
        for a in ((0, 0), (1, 0), (0, 1), (1, 1)):
            if (a[0] * n[0] + a[1] * n[1]) & 1 == (level & 1):
                return cls(a, d)
        raise AssertionError("unreachable")
