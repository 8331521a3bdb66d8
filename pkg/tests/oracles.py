"""Independent oracles used to pin expected values before testing the package.

Everything here is derived from explicit Euclidean realizations of the root
systems (exact Fractions), never from the package's Cartan-matrix formulas:
reflections are geometric, lengths count sign changes of positive roots, and
reduced-word enumeration is a depth-first search over ascents.
"""

from __future__ import annotations

from fractions import Fraction as Q
from functools import lru_cache

Vec = tuple[Q, ...]


def dot(x: Vec, y: Vec) -> Q:
    return sum(a * b for a, b in zip(x, y, strict=True))


def vadd(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vscale(c: Q, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def simple_roots_euclid(family: str, rank: int) -> list[Vec]:
    """Explicit simple roots, Bourbaki numbering; ambient dim may exceed rank."""
    n = rank

    def e(i: int, dim: int) -> Vec:
        return tuple(Q(1) if k == i else Q(0) for k in range(dim))

    def diff(i, j, dim):
        return tuple(a - b for a, b in zip(e(i, dim), e(j, dim)))

    if family == "A":
        return [diff(i, i + 1, n + 1) for i in range(n)]
    if family == "B":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)]
    if family == "C":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [vscale(Q(2), e(n - 1, n))]
    if family == "D":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [vadd(e(n - 2, n), e(n - 1, n))]
    if family == "G":
        return [
            (Q(1), Q(-1), Q(0)),
            (Q(-2), Q(1), Q(1)),
        ]
    if family == "F":
        return [
            (Q(0), Q(1), Q(-1), Q(0)),
            (Q(0), Q(0), Q(1), Q(-1)),
            (Q(0), Q(0), Q(0), Q(1)),
            (Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)),
        ]
    raise ValueError(f"no Euclidean model for family {family}")


def oracle_cartan(family: str, rank: int) -> list[list[int]]:
    """c_ij = 2(a_i, a_j)/(a_i, a_i) from Euclidean dots."""
    roots = simple_roots_euclid(family, rank)
    out = []
    for ai in roots:
        row = []
        for aj in roots:
            val = 2 * dot(ai, aj) / dot(ai, ai)
            assert val.denominator == 1
            row.append(int(val))
        out.append(row)
    return out


def oracle_multipliers(family: str, rank: int) -> list[int]:
    """Squared lengths normalized so short roots get 1."""
    roots = simple_roots_euclid(family, rank)
    sq = [dot(a, a) for a in roots]
    short = min(sq)
    out = [x / short for x in sq]
    assert all(v.denominator == 1 for v in out)
    return [int(v) for v in out]


@lru_cache(maxsize=None)
def _weight_basis(family: str, rank: int) -> list[Vec]:
    """Fundamental weights in the Euclidean model: (w_i, a_j^v) = delta_ij,
    solved within the span of the simple roots."""
    roots = simple_roots_euclid(family, rank)
    n = rank
    # Gram matrix of coroots against roots: M[j][k] = (a_k, a_j^v)
    m = [[2 * dot(roots[k], roots[j]) / dot(roots[j], roots[j]) for k in range(n)] for j in range(n)]
    weights = []
    for i in range(n):
        coeffs = _solve(m, [Q(1) if j == i else Q(0) for j in range(n)])
        w = tuple(Q(0) for _ in roots[0])
        for k, c in enumerate(coeffs):
            w = vadd(w, vscale(c, roots[k]))
        weights.append(w)
    return weights


def _solve(m: list[list[Q]], rhs: list[Q]) -> list[Q]:
    n = len(m)
    a = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def weight_to_euclid(family: str, rank: int, coeffs) -> Vec:
    ws = _weight_basis(family, rank)
    v = tuple(Q(0) for _ in ws[0])
    for c, w in zip(coeffs, ws, strict=True):
        v = vadd(v, vscale(Q(c), w))
    return v


def euclid_to_weight(family: str, rank: int, v: Vec) -> tuple[int, ...]:
    """Read off coefficients by pairing with coroots."""
    roots = simple_roots_euclid(family, rank)
    out = []
    for a in roots:
        c = 2 * dot(v, a) / dot(a, a)
        assert c.denominator == 1
        out.append(int(c))
    return tuple(out)


def reflect_euclid(family: str, rank: int, v: Vec, j: int) -> Vec:
    """Geometric reflection in the hyperplane of alpha_j (1-based)."""
    a = simple_roots_euclid(family, rank)[j - 1]
    return vadd(v, vscale(-2 * dot(v, a) / dot(a, a), a))


def oracle_reflect_weight(family: str, rank: int, coeffs, j: int) -> tuple[int, ...]:
    v = weight_to_euclid(family, rank, coeffs)
    return euclid_to_weight(family, rank, reflect_euclid(family, rank, v, j))


def root_to_euclid(family: str, rank: int, coeffs) -> Vec:
    roots = simple_roots_euclid(family, rank)
    v = tuple(Q(0) for _ in roots[0])
    for c, a in zip(coeffs, roots, strict=True):
        v = vadd(v, vscale(Q(c), a))
    return v


def euclid_to_root(family: str, rank: int, v: Vec) -> tuple[int, ...]:
    """Expand v in the simple roots by solving the Gram system."""
    roots = simple_roots_euclid(family, rank)
    n = rank
    gram = [[dot(roots[i], roots[k]) for k in range(n)] for i in range(n)]
    rhs = [dot(v, roots[i]) for i in range(n)]
    sol = _solve(gram, rhs)
    assert all(c.denominator == 1 for c in sol)
    return tuple(int(c) for c in sol)


def oracle_reflect_root(family: str, rank: int, coeffs, j: int) -> tuple[int, ...]:
    v = root_to_euclid(family, rank, coeffs)
    return euclid_to_root(family, rank, reflect_euclid(family, rank, v, j))


def oracle_apply_word_root(family: str, rank: int, word, coeffs) -> tuple[int, ...]:
    v = root_to_euclid(family, rank, coeffs)
    for j in reversed(word):
        v = reflect_euclid(family, rank, v, j)
    return euclid_to_root(family, rank, v)


def oracle_apply_word_weight(family: str, rank: int, word, coeffs) -> tuple[int, ...]:
    v = weight_to_euclid(family, rank, coeffs)
    for j in reversed(word):
        v = reflect_euclid(family, rank, v, j)
    return euclid_to_weight(family, rank, v)


@lru_cache(maxsize=None)
def oracle_positive_roots(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Closure of the simple roots under geometric reflections, positives only."""
    simple = [euclid_to_root(family, rank, r) for r in simple_roots_euclid(family, rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for coeffs in frontier:
            for j in range(1, rank + 1):
                img = oracle_reflect_root(family, rank, coeffs, j)
                if all(c >= 0 for c in img) and img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    return tuple(sorted(seen))


def oracle_length(family: str, rank: int, word) -> int:
    """Coxeter length of the product: positive roots sent negative."""
    count = 0
    for alpha in oracle_positive_roots(family, rank):
        img = oracle_apply_word_root(family, rank, word, alpha)
        if all(c <= 0 for c in img):
            count += 1
    return count


def oracle_is_reduced_w0_word(family: str, rank: int, word) -> bool:
    k = len(oracle_positive_roots(family, rank))
    return len(word) == k and oracle_length(family, rank, word) == k


@lru_cache(maxsize=None)
def oracle_all_w0_words(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Every reduced word for w0, by DFS over length-increasing extensions."""
    k = len(oracle_positive_roots(family, rank))
    words = []

    def extend(word: tuple[int, ...]):
        if len(word) == k:
            words.append(word)
            return
        for i in range(1, rank + 1):
            cand = word + (i,)
            if oracle_length(family, rank, cand) == len(cand):
                extend(cand)

    extend(())
    return tuple(sorted(words))


def oracle_root_sequence(family: str, rank: int, word) -> list[tuple[int, ...]]:
    """beta_l = u_{l-1} alpha_{i_l}."""
    out = []
    for l in range(1, len(word) + 1):
        prefix = word[: l - 1]
        alpha = tuple(1 if t == word[l - 1] - 1 else 0 for t in range(rank))
        out.append(oracle_apply_word_root(family, rank, prefix, alpha))
    return out


def oracle_crossings(family: str, rank: int, word) -> tuple[int, ...]:
    """t_k = least l with u_l^{-1} alpha_k negative, by direct sign scan."""
    out = []
    for knode in range(1, rank + 1):
        alpha = tuple(1 if t == knode - 1 else 0 for t in range(rank))
        for l in range(1, len(word) + 1):
            img = oracle_apply_word_root(family, rank, tuple(reversed(word[:l])), alpha)
            if all(c <= 0 for c in img):
                out.append(l)
                break
        else:
            raise AssertionError("no crossing found; word is not a w0 word")
    return tuple(out)
