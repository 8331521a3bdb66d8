"""Exact-rational SL_n realization: Chevalley generators, Weyl-element lifts,
Gaussian decomposition, generalized minors, double-Bruhat sampling, exchange
checks, and the twist factorization.

Matrices are tuples of tuples of Fractions.  The simple-reflection lift is
the block [[0, -1], [1, 0]]; with it the factorization gamma = prod F_{i*}(b_l)
matches the direct flag-transporter computation exactly (verified in tests,
which is the arbiter for the sign convention).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData
from .seeds import Seed, build_conf3_quiver, build_conf4_quiver
from .words import check_w0_word, crossing_indices

Matrix = tuple[tuple[Fraction, ...], ...]


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def matprod(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m)
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    work = [list(row) for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col] * inv
                work[r] = [v - f * w for v, w in zip(work[r], work[col])]
    return det


def leading_minor(a: Matrix, k: int) -> Fraction:
    """Determinant of the top-left k x k submatrix; k = 0 gives 1."""
    if k == 0:
        return Fraction(1)
    return determinant(tuple(row[:k] for row in a[:k]))


def is_lower_unitriangular(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == (1 if i == j else 0) for i in range(n) for j in range(i, n))


def is_upper_triangular(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == 0 for i in range(n) for j in range(i))


# -- generators and lifts ------------------------------------------------------


def chevalley(n: int, kind: str, i: int, t) -> Matrix:
    """E_i(t) = 1 + t e_{i,i+1};  F_i(t) = 1 + t e_{i+1,i}."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"node {i} out of range 1..{n - 1}")
    rows = [list(r) for r in identity(n)]
    if kind == "E":
        rows[i - 1][i] = Fraction(t)
    elif kind == "F":
        rows[i][i - 1] = Fraction(t)
    else:
        raise ValueError("kind must be 'E' or 'F'")
    return mat(rows)


def lift_simple(n: int, i: int) -> Matrix:
    """Lift of s_i: identity with the block [[0, -1], [1, 0]] at rows i, i+1."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"node {i} out of range 1..{n - 1}")
    rows = [list(r) for r in identity(n)]
    rows[i - 1][i - 1] = Fraction(0)
    rows[i][i] = Fraction(0)
    rows[i - 1][i] = Fraction(-1)
    rows[i][i - 1] = Fraction(1)
    return mat(rows)


def lift_word(n: int, word) -> Matrix:
    out = identity(n)
    for i in word:
        out = matmul(out, lift_simple(n, i))
    return out


@lru_cache(maxsize=None)
def _w0_lift(n: int) -> Matrix:
    from .cartan import build_cartan

    return lift_word(n, build_cartan("A", n - 1).canonical_w0_word())


def central_element(n: int) -> Matrix:
    """s = (w0 lift)^2; asserts centrality and the parity of its order."""
    s = matmul(_w0_lift(n), _w0_lift(n))
    for i in range(1, n):
        for gen in (chevalley(n, "E", i, 1), chevalley(n, "F", i, 1)):
            if matmul(s, gen) != matmul(gen, s):
                raise AssertionError("central element does not commute with generators")
    if matmul(s, s) != identity(n):
        raise AssertionError("central element squared is not the identity")
    order = 1 if s == identity(n) else 2
    if order != (1 if n % 2 == 1 else 2):
        raise AssertionError("central element order does not match the parity of n")
    return s


# -- decompositions ------------------------------------------------------------


def gauss_decompose(x: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """x = x_minus x_0 x_plus (unit lower, diagonal, unit upper).

    Requires all leading principal minors nonzero; diagonal entries are the
    ratios of consecutive leading minors.
    """
    n = len(x)
    minors = [leading_minor(x, k) for k in range(n + 1)]
    if any(m == 0 for m in minors[1:]):
        raise ValueError("outside G0: zero leading principal minor")
    lower, upper = lu_unit_lower(x)
    diag = [upper[i][i] for i in range(n)]
    x0 = tuple(tuple(diag[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
    x_plus = tuple(tuple(upper[i][j] / diag[i] for j in range(n)) for i in range(n))
    return lower, x0, x_plus


def lu_unit_lower(x: Matrix) -> tuple[Matrix, Matrix]:
    """x = L R with L unit lower triangular and R upper triangular."""
    n = len(x)
    r = [list(row) for row in x]
    lower = [list(row) for row in identity(n)]
    for col in range(n):
        if r[col][col] == 0:
            raise ValueError("zero leading principal minor; no unit-lower LU")
        for row in range(col + 1, n):
            if r[row][col] != 0:
                f = r[row][col] / r[col][col]
                lower[row][col] = f
                r[row] = [v - f * w for v, w in zip(r[row], r[col])]
    return mat(lower), mat(r)


def ul_decompose(x: Matrix) -> tuple[Matrix, Matrix]:
    """x = P N with P upper triangular and N unit lower triangular.

    Exists iff the trailing principal minors of x are nonzero.
    """
    n = len(x)
    work = [list(row) for row in x]
    ops = [list(row) for row in identity(n)]  # accumulated right factor, unit lower
    for k in range(n - 1, -1, -1):
        if work[k][k] == 0:
            raise ValueError("zero trailing principal minor; no UL decomposition")
        for j in range(k):
            if work[k][j] != 0:
                f = work[k][j] / work[k][k]
                for row in range(n):
                    work[row][j] -= f * work[row][k]
                for row in range(n):
                    ops[row][j] -= f * ops[row][k]
    p = mat(work)
    ninv = mat(ops)
    if not is_upper_triangular(p):
        raise AssertionError("UL elimination failed to reach upper-triangular form")
    return p, inverse(ninv)


# -- generalized minors ---------------------------------------------------------


def generalized_minor(n: int, u_word, v_word, i: int, x: Matrix) -> Fraction:
    """The minor of (u w_i, v w_i) at x: the i-th leading principal minor of
    ubar^{-1} x vbar (the torus h sends h^{w_i} to h_1 ... h_i, telescoping)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"node {i} out of range 1..{n - 1}")
    y = matprod(inverse(lift_word(n, u_word)), x, lift_word(n, v_word))
    return leading_minor(y, i)


def minor_via_gauss(n: int, u_word, v_word, i: int, x: Matrix) -> Fraction:
    """Same minor through the Gaussian-decomposition definition; partial on G0."""
    y = matprod(inverse(lift_word(n, u_word)), x, lift_word(n, v_word))
    _, x0, _ = gauss_decompose(y)
    out = Fraction(1)
    for k in range(i):
        out *= x0[k][k]
    return out


# -- sampling -------------------------------------------------------------------


@dataclass(frozen=True)
class BruhatPoint:
    matrix: Matrix
    cell: str  # "w0e" or "w0w0"


def _random_diag_det1(n: int, rng) -> list[Fraction]:
    diag = [Fraction(rng.choice([v for v in range(-5, 6) if v != 0])) for _ in range(n - 1)]
    prod = Fraction(1)
    for v in diag:
        prod *= v
    diag.append(1 / prod)
    return diag


def sample_bruhat(cd: CartanData, cell: str, rng_seed: int, word=None) -> BruhatPoint:
    """Deterministic generic point of G^{w0,e} or G^{w0,w0} in SL_{rank+1}.

    Resamples until every cluster minor of the word is nonzero (and, for
    (w0, e), until the twist's flag decompositions exist).
    """
    if cd.family != "A":
        raise ValueError("matrix realization is implemented for type A only")
    n = cd.rank + 1
    rng = random.Random(rng_seed)
    if cell == "w0e":
        word = check_w0_word(cd, word if word is not None else cd.canonical_w0_word())
        for _ in range(1000):
            rows = [[Fraction(0)] * n for _ in range(n)]
            diag = _random_diag_det1(n, rng)
            for i in range(n):
                rows[i][i] = diag[i]
                for j in range(i):
                    rows[i][j] = Fraction(rng.randint(-5, 5))
            b = mat(rows)
            try:
                evaluate_cluster(cd, word, b)
                twist_gamma_direct(cd, b)
            except ValueError:
                continue
            return BruhatPoint(b, "w0e")
        raise ValueError("resampling exceeded 1000 attempts for cell (w0, e)")
    if cell == "w0w0":
        dword = word
        if dword is None:
            w0 = cd.canonical_w0_word()
            dword = tuple(-j for j in w0) + w0
        dword = tuple(dword)
        for _ in range(1000):
            lrows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            urows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(i):
                    lrows[i][j] = Fraction(rng.randint(-3, 3))
                    urows[j][i] = Fraction(rng.randint(-3, 3))
            diag = _random_diag_det1(n, rng)
            d = tuple(tuple(diag[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
            g = matprod(mat(lrows), d, mat(urows))
            try:
                evaluate_conf4_cluster(cd, dword, g)
            except ValueError:
                continue
            return BruhatPoint(g, "w0w0")
        raise ValueError("resampling exceeded 1000 attempts for cell (w0, w0)")
    raise ValueError(f"unknown cell {cell!r}")


# -- cluster evaluation ----------------------------------------------------------


def evaluate_cluster(cd: CartanData, word, x, seed: Seed | None = None,
                     require_nonzero: bool = True) -> dict:
    """Every Conf3 cluster variable at x in B^-: row vertices evaluate their
    minor, edge-12 circles take the value 1 on the B^- image.

    A vanishing cluster variable means the point left the cluster torus; by
    default that raises, naming the vertex.
    """
    if cd.family != "A":
        raise ValueError("matrix realization is implemented for type A only")
    if isinstance(x, BruhatPoint):
        x = x.matrix
    n = cd.rank + 1
    seed = seed if seed is not None else build_conf3_quiver(cd, word)
    out = {}
    for v in seed.vertices:
        if v.kind == "edge12":
            out[v.id] = Fraction(1)
        else:
            u_word, i = seed.minor_label(v.id)
            out[v.id] = generalized_minor(n, u_word, (), i, x)
        if require_nonzero and out[v.id] == 0:
            raise ValueError(f"pole: cluster variable at vertex {v.id!r} vanishes at the point")
    return out


def evaluate_conf4_cluster(cd: CartanData, dword, g, seed: Seed | None = None,
                           require_nonzero: bool = True) -> dict:
    """Conf4 cluster values on G^{w0,w0}: reduced minors of (u_l w_i, v_l w_i);
    circles and bullets take the value 1."""
    if cd.family != "A":
        raise ValueError("matrix realization is implemented for type A only")
    if isinstance(g, BruhatPoint):
        g = g.matrix
    n = cd.rank + 1
    seed = seed if seed is not None else build_conf4_quiver(cd, dword)
    out = {}
    for v in seed.vertices:
        if v.kind in ("edge12", "edge34"):
            out[v.id] = Fraction(1)
        else:
            u_word, v_word, i = seed.minor_label(v.id)
            out[v.id] = generalized_minor(n, u_word, v_word, i, g)
        if require_nonzero and out[v.id] == 0:
            raise ValueError(f"pole: cluster variable at vertex {v.id!r} vanishes at the point")
    return out


# -- twist -----------------------------------------------------------------------


def twist_coefficients(cd: CartanData, word, values: dict) -> list[Fraction]:
    """b_l = (a_{k-circle} if l = t_k) * prod_{i != j} a_i^{-c_ij} / (a_{j-} a_{j+})."""
    word = check_w0_word(cd, word)
    t = crossing_indices(cd, word)
    circle_at = {l: k for k, l in zip(cd.nodes(), t)}
    occ = {i: 0 for i in cd.nodes()}
    out = []
    for l, j in enumerate(word, start=1):
        num = Fraction(1)
        if l in circle_at:
            num *= values[f"{circle_at[l]}o"]
        for i in cd.nodes():
            if i == j:
                continue
            exp = -cd.entry(i, j)
            if exp:
                num *= values[f"{i}.{occ[i]}"] ** exp
        denom = values[f"{j}.{occ[j]}"] * values[f"{j}.{occ[j] + 1}"]
        if denom == 0:
            raise ValueError(f"zero denominator in twist coefficient b_{l}")
        out.append(num / denom)
        occ[j] += 1
    return out


def twist_gamma(cd: CartanData, word, b_vector) -> Matrix:
    """gamma = F_{i_1*}(b_1) F_{i_2*}(b_2) ... F_{i_K*}(b_K)."""
    n = cd.rank + 1
    if len(b_vector) != len(word):
        raise ValueError("need one coefficient per letter")
    out = identity(n)
    for j, b in zip(word, b_vector):
        out = matmul(out, chevalley(n, "F", cd.star(j), b))
    return out


def twist_gamma_direct(cd: CartanData, b: Matrix) -> Matrix:
    """The transporter gamma with gamma . (A3, B1) = (A3, B2), computed on flags.

    Steps: x = b w0bar; normalize by g = p^{-1} from x = p n (upper times unit
    lower), so the third flag becomes the standard opposite one; the first
    regular flag is then carried by N = g w0bar, and gamma = L^{-1} from the
    unit-lower/upper factorization N = L R.
    """
    n = cd.rank + 1
    w0l = _w0_lift(n)
    x = matmul(b, w0l)
    p, _ = ul_decompose(x)
    g = inverse(p)
    big_n = matmul(g, w0l)
    lower, _ = lu_unit_lower(big_n)
    gamma = inverse(lower)
    if not is_lower_unitriangular(gamma):
        raise AssertionError("transporter is not lower unitriangular")
    return gamma


def gamma_prime(cd: CartanData, word, b_vector) -> Matrix:
    """gamma' = E_{i_K}(b_K) ... E_{i_1}(b_1); asserts the conjugation relation
    gamma' = w0bar gamma^{-1} w0bar^{-1} exactly."""
    n = cd.rank + 1
    out = identity(n)
    for j, bl in zip(reversed(word), reversed(b_vector)):
        out = matmul(out, chevalley(n, "E", j, bl))
    gamma = twist_gamma(cd, word, b_vector)
    w0l = _w0_lift(n)
    conj = matprod(w0l, inverse(gamma), inverse(w0l))
    if out != conj:
        raise AssertionError("gamma' != w0bar gamma^{-1} w0bar^{-1}; lift convention broken")
    return out


# -- exchange relations ------------------------------------------------------------


def _commutation_class(cd: CartanData, word):
    seen = {tuple(word)}
    queue = [tuple(word)]
    while queue:
        w = queue.pop()
        for p in range(len(w) - 1):
            a, b = w[p], w[p + 1]
            if a != b and cd.braid_order(a, b) == 2:
                w2 = w[:p] + (b, a) + w[p + 2:]
                if w2 not in seen:
                    seen.add(w2)
                    queue.append(w2)
    return seen


def mutated_minor_label(cd: CartanData, word, vid: str):
    """Minor label of the variable created by mutating at vid, when the
    mutation matches a 3-move on some word in the commutation class.

    Returns (u_prefix, node) or None.  Candidates are filtered by requiring
    the braided word's grading to equal the mutated grading at vid.
    """
    from .gradings import assign_gradings, minor_grading, mutate_grading

    word = check_w0_word(cd, word)
    seed = build_conf3_quiver(cd, word)
    target = mutate_grading(seed, assign_gradings(seed), vid)[vid]
    row, occ = vid.split(".")
    row, occ = int(row), int(occ)
    for w2 in _commutation_class(cd, word):
        count = 0
        for p in range(len(w2) - 2):
            if w2[p] == row:
                count += 1
            if (w2[p], w2[p + 2]) != (row, row) or w2[p + 1] == row:
                continue
            b = w2[p + 1]
            if cd.braid_order(row, b) != 3 or count != occ:
                continue
            braided = w2[:p] + (b, row, b) + w2[p + 3:]
            label = (braided[: p + 1], b)
            if minor_grading(cd, *label) == target:
                return label
    return None


@lru_cache(maxsize=None)
def _division_certificate(cd: CartanData, word, vid: str) -> bool:
    """One-time symbolic Laurent check: (M+ + M-)/A_k on a parametrized B^- is
    regular away from the torus walls (denominator a monomial in the diagonal
    coordinates)."""
    import sympy as sp

    n = cd.rank + 1
    xs = {(i, j): sp.Symbol(f"x{i}{j}") for i in range(n) for j in range(i)}
    ts = [sp.Symbol(f"t{i}") for i in range(n - 1)]
    diag = list(ts) + [sp.Integer(1) / sp.prod(ts)]
    rows = [[sp.Integer(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = diag[i]
        for j in range(i):
            rows[i][j] = xs[(i, j)] * diag[j]
    bmat = sp.Matrix(rows)

    seed = build_conf3_quiver(cd, word)

    def sym_minor(u_word, i):
        lift = sp.Matrix([[sp.Rational(v) for v in row] for row in lift_word(n, u_word)])
        y = lift.inv() * bmat
        return sp.cancel(y[:i, :i].det())

    values = {}
    for v in seed.vertices:
        if v.kind == "edge12":
            values[v.id] = sp.Integer(1)
        else:
            u_word, i = seed.minor_label(v.id)
            values[v.id] = sym_minor(u_word, i)

    k = seed.index(vid)
    mplus, mminus = sp.Integer(1), sp.Integer(1)
    for jdx, v in enumerate(seed.vertices):
        bkj = seed.b2[k][jdx] // 2
        if bkj > 0:
            mplus *= values[v.id] ** bkj
        elif bkj < 0:
            mminus *= values[v.id] ** (-bkj)
    new_var = sp.cancel((mplus + mminus) / values[vid])
    _, den = sp.fraction(sp.together(new_var))
    return den.free_symbols <= set(ts)


def verify_exchange(cd: CartanData, word, point: BruhatPoint | Matrix, vid: str) -> bool:
    """Check A_k A'_k = M+ + M- exactly at the point, with A'_k identified
    through a braid-equivalent word when one matches, and otherwise defined by
    the relation itself under a symbolic regularity certificate."""
    x = point.matrix if isinstance(point, BruhatPoint) else point
    word = check_w0_word(cd, word)
    n = cd.rank + 1
    seed = build_conf3_quiver(cd, word)
    if seed.vertex(vid).frozen:
        raise ValueError(f"vertex {vid!r} is frozen")
    values = evaluate_cluster(cd, word, x, seed=seed)  # raises on a pole
    a_k = values[vid]
    k = seed.index(vid)
    mplus, mminus = Fraction(1), Fraction(1)
    for jdx, v in enumerate(seed.vertices):
        bkj = seed.b2[k][jdx] // 2
        if bkj > 0:
            mplus *= values[v.id] ** bkj
        elif bkj < 0:
            mminus *= values[v.id] ** (-bkj)
    label = mutated_minor_label(cd, word, vid)
    if label is not None:
        a_new = generalized_minor(n, label[0], (), label[1], x)
        return a_k * a_new == mplus + mminus
    if not _division_certificate(cd, word, vid):
        return False
    a_new = (mplus + mminus) / a_k
    return a_k * a_new == mplus + mminus
