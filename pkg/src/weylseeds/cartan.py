"""Cartan matrices, weights, roots and Weyl-group actions, in exact integer arithmetic.

Conventions, fixed once for the whole package:

* ``cartan[i][j]`` is c_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i); rows are
  indexed by coroots, Bourbaki node numbering per family.
* The simple root alpha_j expands in the fundamental-weight basis as the j-th
  *column* of the Cartan matrix: alpha_j = sum_i c_ij omega_i.  Consequently
  s_j omega_j = -omega_j - sum_{i != j} c_ij omega_i.
* On the root basis, s_j alpha_i = alpha_i - c_ji alpha_j.
* Words act right-to-left: apply_word((i1,...,il), x) = s_i1(s_i2(...s_il(x))).
* Multipliers d_i are squared root lengths, short roots normalized to 1, and
  satisfy d_i c_ij = d_j c_ji.

Node indices are 1-based everywhere in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Weight:
    """Integer vector in the fundamental-weight basis: sum r_i omega_i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int) -> "Weight":
        return Weight(tuple(scalar * a for a in self.coeffs))


@dataclass(frozen=True)
class RootVector:
    """Integer vector in the simple-root basis: sum m_i alpha_i."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(c != 0 for c in self.coeffs)

    def is_negative(self) -> bool:
        return all(c <= 0 for c in self.coeffs) and any(c != 0 for c in self.coeffs)

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-a for a in self.coeffs))

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))


def pos_neg_parts(w: Weight) -> tuple[Weight, Weight]:
    """Split w into (w+, w-) with w = w+ + w-, w+ dominant, w- anti-dominant."""
    plus = Weight(tuple(max(0, c) for c in w.coeffs))
    minus = Weight(tuple(min(0, c) for c in w.coeffs))
    return plus, minus


_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class CartanData:
    """Dynkin family + rank with its Cartan matrix and multipliers."""

    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    multipliers: tuple[int, ...]

    def __post_init__(self):
        n = self.rank
        c = self.cartan
        d = self.multipliers
        if len(c) != n or any(len(row) != n for row in c) or len(d) != n:
            raise ValueError("Cartan data has inconsistent dimensions")
        for i in range(n):
            if c[i][i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            for j in range(n):
                if i != j and c[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if (c[i][j] == 0) != (c[j][i] == 0):
                    raise ValueError("Cartan zero pattern must be symmetric")
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise ValueError("multipliers do not symmetrize the Cartan matrix")
        if any(di not in (1, 2, 3) for di in d):
            raise ValueError("multipliers must lie in {1, 2, 3}")

    # -- basic structure ---------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        """c_ij with 1-based node indices."""
        return self.cartan[i - 1][j - 1]

    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def neighbors(self, j: int) -> tuple[int, ...]:
        return tuple(i for i in self.nodes() if i != j and self.entry(i, j) != 0)

    def braid_order(self, i: int, j: int) -> int:
        """Coxeter exponent m_ij: order of s_i s_j."""
        p = self.entry(i, j) * self.entry(j, i)
        return {0: 2, 1: 3, 2: 4, 3: 6}[p]

    # -- weights and roots -------------------------------------------------

    def fundamental_weight(self, i: int) -> Weight:
        self._check_node(i)
        return Weight(tuple(1 if k == i - 1 else 0 for k in range(self.rank)))

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.rank)

    def simple_root(self, j: int) -> RootVector:
        self._check_node(j)
        return RootVector(tuple(1 if k == j - 1 else 0 for k in range(self.rank)))

    def alpha_as_weight(self, j: int) -> Weight:
        """alpha_j in the fundamental-weight basis: column j of the Cartan matrix."""
        self._check_node(j)
        return Weight(tuple(self.cartan[i][j - 1] for i in range(self.rank)))

    def root_as_weight(self, beta: RootVector) -> Weight:
        w = self.zero_weight()
        for j, m in enumerate(beta.coeffs, start=1):
            if m:
                w = w + m * self.alpha_as_weight(j)
        return w

    def reflect_weight(self, w: Weight, j: int) -> Weight:
        """s_j w = w - r_j alpha_j, with r_j the omega_j-coefficient of w."""
        self._check_node(j)
        r = w.coeffs[j - 1]
        if r == 0:
            return w
        return w - r * self.alpha_as_weight(j)

    def reflect_root(self, beta: RootVector, j: int) -> RootVector:
        """s_j beta, via s_j alpha_i = alpha_i - c_ji alpha_j."""
        self._check_node(j)
        coeff_j = sum(m * self.entry(j, i) for i, m in enumerate(beta.coeffs, start=1))
        out = list(beta.coeffs)
        out[j - 1] -= coeff_j
        result = RootVector(tuple(out))
        if not (result.is_positive() or result.is_negative()):
            raise ValueError(f"reflection produced a mixed-sign vector {result.coeffs}; input was not a root")
        return result

    def apply_word(self, word, x):
        """Apply s_i1 ... s_il to x (Weight or RootVector), rightmost letter first."""
        if isinstance(x, Weight):
            for j in reversed(word):
                x = self.reflect_weight(x, j)
            return x
        if isinstance(x, RootVector):
            for j in reversed(word):
                x = self.reflect_root(x, j)
            return x
        raise TypeError(f"apply_word expects Weight or RootVector, got {type(x).__name__}")

    def positive_roots(self) -> tuple[RootVector, ...]:
        """All of Phi+, sorted by height then coefficients."""
        return _positive_roots(self)

    def num_positive_roots(self) -> int:
        return len(self.positive_roots())

    # -- longest element ---------------------------------------------------

    def canonical_w0_word(self) -> tuple[int, ...]:
        """Fixed reduced word for w0: greedy smallest-ascent (gives 1,2,1,3,2,1,... in type A)."""
        return _canonical_w0_word(self)

    def dual_weight(self, w: Weight) -> Weight:
        """w* = -w0 w."""
        return -self.apply_word(self.canonical_w0_word(), w)

    def star(self, i: int) -> int:
        """The node i* with -w0 omega_i = omega_{i*}."""
        self._check_node(i)
        dual = self.dual_weight(self.fundamental_weight(i))
        for j in self.nodes():
            if dual == self.fundamental_weight(j):
                return j
        raise AssertionError("dual of a fundamental weight is not fundamental")

    def _check_node(self, j: int) -> None:
        if not 1 <= j <= self.rank:
            raise ValueError(f"node index {j} out of range 1..{self.rank}")


def build_cartan(family: str, rank: int) -> CartanData:
    """Standard Cartan matrix and multipliers for a finite family, Bourbaki numbering."""
    family = family.upper()
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {_FAMILIES}")
    n = rank
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 3,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }[family]
    if not ok:
        raise ValueError(f"invalid rank {n} for family {family}")

    edges: list[tuple[int, int]] = []  # 1-based simple edges; special bonds handled below
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    d = [1] * n

    def single_bond(i: int, j: int) -> None:
        c[i - 1][j - 1] = -1
        c[j - 1][i - 1] = -1

    if family in ("A", "B", "C"):
        edges = [(i, i + 1) for i in range(1, n)]
    elif family == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif family == "E":
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    elif family == "F":
        edges = [(1, 2), (2, 3), (3, 4)]
    elif family == "G":
        edges = [(1, 2)]
    for i, j in edges:
        single_bond(i, j)

    if family == "B":
        # alpha_n short, the rest long
        d = [2] * (n - 1) + [1]
        c[n - 2][n - 1] = -1
        c[n - 1][n - 2] = -2
    elif family == "C":
        # alpha_n long, the rest short
        d = [1] * (n - 1) + [2]
        c[n - 2][n - 1] = -2
        c[n - 1][n - 2] = -1
    elif family == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        d = [2, 2, 1, 1]
        c[1][2] = -1
        c[2][1] = -2
    elif family == "G":
        # alpha_1 short, alpha_2 long
        d = [1, 3]
        c[0][1] = -3
        c[1][0] = -1

    return CartanData(family, n, tuple(tuple(row) for row in c), tuple(d))


@lru_cache(maxsize=None)
def _positive_roots(cd: CartanData) -> tuple[RootVector, ...]:
    seen = {cd.simple_root(j).coeffs for j in cd.nodes()}
    frontier = list(seen)
    while frontier:
        new = []
        for coeffs in frontier:
            beta = RootVector(coeffs)
            for j in cd.nodes():
                img = cd.reflect_root(beta, j)
                if img.is_positive() and img.coeffs not in seen:
                    seen.add(img.coeffs)
                    new.append(img.coeffs)
        frontier = new
    ordered = sorted(seen, key=lambda t: (sum(t), t))
    return tuple(RootVector(t) for t in ordered)


@lru_cache(maxsize=None)
def _canonical_w0_word(cd: CartanData) -> tuple[int, ...]:
    total = cd.num_positive_roots()
    word: list[int] = []
    while len(word) < total:
        for i in cd.nodes():
            if cd.apply_word(word, cd.simple_root(i)).is_positive():
                word.append(i)
                break
        else:
            raise AssertionError("no ascent found before reaching w0")
    return tuple(word)
