"""Finite-dimensional spaces, sparse bilinear operations, maps and tensors.

Vectors are sparse dicts {basis index: scalar}.  Bilinear operations are
stored by structure constants; linear maps and rank-2 tensors are dense
matrices.  Scalars may be rationals or truncated h-jets as long as each
object is homogeneous in the scalar type it carries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .scalars import Jet, rational, scalar_is_zero

ONE = Fraction(1)
HALF = Fraction(1, 2)


def _coerce_scalar(c):
    if isinstance(c, (Jet, Fraction)):
        return c
    return rational(c)


@dataclass(frozen=True)
class Space:
    """A based vector space: a dimension plus distinct basis labels."""

    dim: int
    labels: tuple[str, ...]

    @staticmethod
    def make(dim: int, labels=None, prefix: str = "e") -> "Space":
        if dim <= 0:
            raise ValueError("space dimension must be positive")
        if labels is None:
            labels = tuple(f"{prefix}{i + 1}" for i in range(dim))
        labels = tuple(labels)
        if len(labels) != dim:
            raise ValueError(f"{len(labels)} labels for dimension {dim}")
        if len(set(labels)) != dim:
            raise ValueError("basis labels must be distinct")
        return Space(dim, labels)

    def dual(self) -> "Space":
        # starring is an involution on label level
        if all(l.endswith("*") for l in self.labels):
            return Space(self.dim, tuple(l[:-1] for l in self.labels))
        return Space(self.dim, tuple(l + "*" for l in self.labels))

    def check_index(self, i: int):
        if not 0 <= i < self.dim:
            raise ValueError(f"basis index {i} out of range for dim {self.dim}")

    def label(self, i: int) -> str:
        return self.labels[i]


def direct_sum(a: Space, b: Space) -> Space:
    """Concatenate bases; the right block is primed until labels are distinct."""
    right = list(b.labels)
    taken = set(a.labels)
    while taken & set(right):
        right = [l + "'" for l in right]
    return Space(a.dim + b.dim, a.labels + tuple(right))


# ---------------------------------------------------------------------------
# sparse vectors

def vec_unit(i: int) -> dict:
    return {i: ONE}


def vec_clean(v: dict) -> dict:
    return {i: c for i, c in v.items() if not scalar_is_zero(c)}


def vec_iadd(acc: dict, v: Mapping, factor=None):
    for i, c in v.items():
        acc[i] = acc.get(i, 0) + (c if factor is None else factor * c)
    return acc


def vec_add(u: Mapping, v: Mapping) -> dict:
    return vec_clean(vec_iadd(dict(u), v))


def vec_sub(u: Mapping, v: Mapping) -> dict:
    acc = dict(u)
    for i, c in v.items():
        acc[i] = acc.get(i, 0) - c
    return vec_clean(acc)


def vec_scale(factor, v: Mapping) -> dict:
    return vec_clean({i: factor * c for i, c in v.items()})


def vec_is_zero(v: Mapping) -> bool:
    return all(scalar_is_zero(c) for c in v.values())


def vec_equal(u: Mapping, v: Mapping) -> bool:
    return vec_is_zero(vec_sub(u, v))


# ---------------------------------------------------------------------------

class BilinearOp:
    """One bilinear operation, stored by structure constants.

    entries maps (i, j, k) to the coefficient of out-basis k in
    op(left_i, right_j).  Zero coefficients are never stored.
    """

    __slots__ = ("left", "right", "out", "entries", "_by_ij")

    def __init__(self, left: Space, right: Space, out: Space, entries: Mapping):
        canon = {}
        by_ij = {}
        for (i, j, k), c in entries.items():
            left.check_index(i)
            right.check_index(j)
            out.check_index(k)
            c = _coerce_scalar(c)
            if scalar_is_zero(c):
                continue
            canon[(i, j, k)] = c
            by_ij.setdefault((i, j), []).append((k, c))
        self.left = left
        self.right = right
        self.out = out
        self.entries = canon
        self._by_ij = by_ij

    @classmethod
    def from_entries(cls, left, right, out, items: Iterable, combine: bool = False):
        """Build from (i, j, k, c) tuples; duplicates are an error unless
        combine is set, in which case they are summed."""
        acc = {}
        for i, j, k, c in items:
            key = (i, j, k)
            if key in acc:
                if not combine:
                    raise ValueError(f"duplicate structure constant at {key}")
                acc[key] = acc[key] + _coerce_scalar(c)
            else:
                acc[key] = _coerce_scalar(c)
        return cls(left, right, out, acc)

    @classmethod
    def zero(cls, left, right, out):
        return cls(left, right, out, {})

    @classmethod
    def on(cls, space: Space, items: Iterable, combine: bool = False):
        return cls.from_entries(space, space, space, items, combine=combine)

    def basis(self, i: int, j: int) -> dict:
        """op(e_i, e_j) as a sparse vector."""
        return dict(self._by_ij.get((i, j), ()))

    def apply(self, u: Mapping, v: Mapping) -> dict:
        acc = {}
        for i, ui in u.items():
            for j, vj in v.items():
                cell = self._by_ij.get((i, j))
                if not cell:
                    continue
                f = ui * vj
                for k, c in cell:
                    acc[k] = acc.get(k, 0) + f * c
        return vec_clean(acc)

    def add(self, other: "BilinearOp") -> "BilinearOp":
        self._require_same_spaces(other)
        acc = dict(self.entries)
        for key, c in other.entries.items():
            acc[key] = acc.get(key, 0) + c
        return BilinearOp(self.left, self.right, self.out, acc)

    def sub(self, other: "BilinearOp") -> "BilinearOp":
        return self.add(other.scale(-1))

    def scale(self, factor) -> "BilinearOp":
        return BilinearOp(
            self.left, self.right, self.out,
            {key: factor * c for key, c in self.entries.items()},
        )

    def neg(self) -> "BilinearOp":
        return self.scale(-1)

    def arg_swap(self) -> "BilinearOp":
        """The opposite operation op^op(x, y) = op(y, x)."""
        return BilinearOp(
            self.right, self.left, self.out,
            {(j, i, k): c for (i, j, k), c in self.entries.items()},
        )

    def map_scalars(self, fn) -> "BilinearOp":
        return BilinearOp(
            self.left, self.right, self.out,
            {key: fn(c) for key, c in self.entries.items()},
        )

    def is_zero(self) -> bool:
        return not self.entries

    def sorted_entries(self):
        return sorted(self.entries.items())

    def _require_same_spaces(self, other):
        if (self.left, self.right, self.out) != (other.left, other.right, other.out):
            raise ValueError("bilinear operations live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, BilinearOp):
            return NotImplemented
        return (
            (self.left, self.right, self.out) == (other.left, other.right, other.out)
            and self.entries == other.entries
        )

    __hash__ = None

    def __repr__(self):
        return f"BilinearOp({len(self.entries)} entries on dim {self.left.dim})"


# ---------------------------------------------------------------------------

class LinearMap:
    """Dense linear map; matrix[i][j] is the e_i-coefficient of f(e_j)."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Space, codomain: Space, matrix):
        rows = tuple(tuple(_coerce_scalar(c) for c in row) for row in matrix)
        if len(rows) != codomain.dim or any(len(r) != domain.dim for r in rows):
            raise ValueError(
                f"matrix shape {len(rows)}x{len(rows[0]) if rows else 0} does not "
                f"match codomain {codomain.dim} x domain {domain.dim}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = rows

    @classmethod
    def identity(cls, space: Space):
        n = space.dim
        return cls(space, space, [[ONE if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, domain: Space, codomain: Space):
        return cls(domain, codomain, [[0] * domain.dim for _ in range(codomain.dim)])

    @classmethod
    def diagonal(cls, space: Space, values):
        values = list(values)
        if len(values) != space.dim:
            raise ValueError("diagonal length does not match dimension")
        return cls(space, space,
                   [[values[i] if i == j else 0 for j in range(space.dim)]
                    for i in range(space.dim)])

    @classmethod
    def from_columns(cls, domain: Space, codomain: Space, columns):
        cols = list(columns)
        if len(cols) != domain.dim:
            raise ValueError("need one column per domain basis vector")
        matrix = [[cols[j].get(i, 0) for j in range(domain.dim)]
                  for i in range(codomain.dim)]
        return cls(domain, codomain, matrix)

    def apply(self, v: Mapping) -> dict:
        acc = {}
        for j, cj in v.items():
            self.domain.check_index(j)
            for i in range(self.codomain.dim):
                m = self.matrix[i][j]
                if not scalar_is_zero(m):
                    acc[i] = acc.get(i, 0) + m * cj
        return vec_clean(acc)

    def column(self, j: int) -> dict:
        return vec_clean({i: self.matrix[i][j] for i in range(self.codomain.dim)})

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition domain mismatch")
        n, m, p = self.codomain.dim, self.domain.dim, other.domain.dim
        a, b = self.matrix, other.matrix
        out = [[0] * p for _ in range(n)]
        for i in range(n):
            for t in range(m):
                c = a[i][t]
                if scalar_is_zero(c):
                    continue
                for j in range(p):
                    d = b[t][j]
                    if not scalar_is_zero(d):
                        out[i][j] = out[i][j] + c * d
        return LinearMap(other.domain, self.codomain, out)

    def power(self, s: int) -> "LinearMap":
        if self.domain != self.codomain:
            raise ValueError("powers need an endomorphism")
        acc = LinearMap.identity(self.domain)
        for _ in range(s):
            acc = self.compose(acc)
        return acc

    def add(self, other: "LinearMap") -> "LinearMap":
        self._require_same_spaces(other)
        return LinearMap(self.domain, self.codomain,
                         [[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.matrix, other.matrix)])

    def sub(self, other: "LinearMap") -> "LinearMap":
        return self.add(other.scale(-1))

    def scale(self, factor) -> "LinearMap":
        return LinearMap(self.domain, self.codomain,
                         [[factor * c for c in row] for row in self.matrix])

    def neg(self) -> "LinearMap":
        return self.scale(-1)

    def transpose(self, domain: Space = None, codomain: Space = None) -> "LinearMap":
        """Matrix transpose; by default the spaces dualize and swap."""
        if domain is None:
            domain = self.codomain.dual()
        if codomain is None:
            codomain = self.domain.dual()
        n, m = self.codomain.dim, self.domain.dim
        mat = [[self.matrix[i][j] for i in range(n)] for j in range(m)]
        return LinearMap(domain, codomain, mat)

    def commutes_with(self, other: "LinearMap") -> bool:
        return self.compose(other) == other.compose(self)

    def is_zero(self) -> bool:
        return all(scalar_is_zero(c) for row in self.matrix for c in row)

    def map_scalars(self, fn) -> "LinearMap":
        return LinearMap(self.domain, self.codomain,
                         [[fn(c) for c in row] for row in self.matrix])

    def block(self, rows: range, cols: range, domain: Space, codomain: Space) -> "LinearMap":
        mat = [[self.matrix[i][j] for j in cols] for i in rows]
        return LinearMap(domain, codomain, mat)

    def _require_same_spaces(self, other):
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError("linear maps live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return ((self.domain, self.codomain) == (other.domain, other.codomain)
                and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"LinearMap({self.domain.dim} -> {self.codomain.dim})"


def block_diag(a: LinearMap, b: LinearMap, space: Space = None) -> LinearMap:
    """Block-diagonal endomorphism on the direct sum of two endomorphism spaces."""
    if a.domain != a.codomain or b.domain != b.codomain:
        raise ValueError("block_diag expects endomorphisms")
    if space is None:
        space = direct_sum(a.domain, b.domain)
    n, m = a.domain.dim, b.domain.dim
    mat = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            mat[i][j] = a.matrix[i][j]
    for i in range(m):
        for j in range(m):
            mat[n + i][n + j] = b.matrix[i][j]
    return LinearMap(space, space, mat)


# ---------------------------------------------------------------------------

class TensorElement:
    """Element of left (x) right, stored as a dense matrix."""

    __slots__ = ("left", "right", "matrix")

    def __init__(self, left: Space, right: Space, matrix):
        rows = tuple(tuple(_coerce_scalar(c) for c in row) for row in matrix)
        if len(rows) != left.dim or any(len(r) != right.dim for r in rows):
            raise ValueError("tensor matrix shape does not match its spaces")
        self.left = left
        self.right = right
        self.matrix = rows

    @classmethod
    def zero(cls, left: Space, right: Space):
        return cls(left, right, [[0] * right.dim for _ in range(left.dim)])

    @classmethod
    def from_entries(cls, left: Space, right: Space, items: Iterable):
        mat = [[0] * right.dim for _ in range(left.dim)]
        for i, j, c in items:
            left.check_index(i)
            right.check_index(j)
            mat[i][j] = mat[i][j] + _coerce_scalar(c)
        return cls(left, right, mat)

    def entry(self, i: int, j: int):
        return self.matrix[i][j]

    def nonzero(self) -> Iterator[tuple]:
        for i, row in enumerate(self.matrix):
            for j, c in enumerate(row):
                if not scalar_is_zero(c):
                    yield i, j, c

    def add(self, other: "TensorElement") -> "TensorElement":
        self._require_same_spaces(other)
        return TensorElement(self.left, self.right,
                             [[a + b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.matrix, other.matrix)])

    def sub(self, other: "TensorElement") -> "TensorElement":
        return self.add(other.scale(-1))

    def scale(self, factor) -> "TensorElement":
        return TensorElement(self.left, self.right,
                             [[factor * c for c in row] for row in self.matrix])

    def neg(self) -> "TensorElement":
        return self.scale(-1)

    def twist(self) -> "TensorElement":
        if self.left != self.right:
            raise ValueError("twist needs equal left and right spaces")
        n = self.left.dim
        return TensorElement(self.left, self.right,
                             [[self.matrix[j][i] for j in range(n)] for i in range(n)])

    def sym(self) -> "TensorElement":
        return self.add(self.twist()).scale(HALF)

    def skew(self) -> "TensorElement":
        return self.sub(self.twist()).scale(HALF)

    def is_zero(self) -> bool:
        return all(scalar_is_zero(c) for row in self.matrix for c in row)

    def map_scalars(self, fn) -> "TensorElement":
        return TensorElement(self.left, self.right,
                             [[fn(c) for c in row] for row in self.matrix])

    def _require_same_spaces(self, other):
        if (self.left, self.right) != (other.left, other.right):
            raise ValueError("tensors live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return ((self.left, self.right) == (other.left, other.right)
                and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self):
        nz = sum(1 for _ in self.nonzero())
        return f"TensorElement({self.left.dim}x{self.right.dim}, {nz} nonzero)"


class Tensor3:
    """Sparse element of S1 (x) S2 (x) S3, used for residuals."""

    __slots__ = ("spaces", "entries")

    def __init__(self, spaces, entries: Mapping):
        s1, s2, s3 = spaces
        canon = {}
        for (i, j, k), c in entries.items():
            s1.check_index(i)
            s2.check_index(j)
            s3.check_index(k)
            c = _coerce_scalar(c)
            if not scalar_is_zero(c):
                canon[(i, j, k)] = c
        self.spaces = (s1, s2, s3)
        self.entries = canon

    @classmethod
    def zero(cls, spaces):
        return cls(spaces, {})

    def is_zero(self) -> bool:
        return not self.entries

    def sorted_entries(self):
        return sorted(self.entries.items())

    def low_order(self):
        """Minimal h-adic valuation over all entries, None when zero."""
        from .scalars import scalar_low_order
        lows = [scalar_low_order(c) for c in self.entries.values()]
        lows = [x for x in lows if x is not None]
        return min(lows) if lows else None

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.spaces == other.spaces and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"Tensor3({len(self.entries)} nonzero)"


# ---------------------------------------------------------------------------
# canonical identifications

def sharp(r: TensorElement) -> LinearMap:
    """Read r in W (x) V as a map V* -> W; the matrix is reused unchanged."""
    return LinearMap(r.right.dual(), r.left, r.matrix)


def unsharp(f: LinearMap) -> TensorElement:
    """Inverse of sharp: a map V -> W becomes sum_j f(e_j) (x) e_j^* in W (x) V*."""
    return TensorElement(f.codomain, f.domain.dual(), f.matrix)


def eta_embed(r: TensorElement, ambient: Space = None) -> TensorElement:
    """Embed V (x) W into (V + W) (x) (V + W), V-block first."""
    s = direct_sum(r.left, r.right)
    if ambient is not None:
        if ambient.dim != s.dim:
            raise ValueError("ambient dimension does not match V + W")
        s = ambient
    nv = r.left.dim
    out = [[0] * s.dim for _ in range(s.dim)]
    for i, j, c in r.nonzero():
        out[i][nv + j] = c
    return TensorElement(s, s, out)


def twist(r: TensorElement) -> TensorElement:
    return r.twist()
