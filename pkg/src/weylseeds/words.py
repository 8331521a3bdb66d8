"""Reduced words for w0, double reduced words for (w0, w0), root sequences,
and the crossing indices t_k / r_k at which each simple root changes sign.

Double words use signed letters: -j for the first Weyl copy (the u part),
+j for the second (the v part), as in the (w0, w0) shuffle convention.
"""

from __future__ import annotations

import os
import random

from .cartan import CartanData, RootVector

DEFAULT_MAX_ENUM_RANK = 3
DEFAULT_MAX_ENUM_LENGTH = 9


def prefix(word: tuple[int, ...], l: int) -> tuple[int, ...]:
    """First l letters; l = 0 gives the empty word."""
    if not 0 <= l <= len(word):
        raise ValueError(f"prefix length {l} out of range 0..{len(word)}")
    return tuple(word[:l])


def root_sequence(cd: CartanData, word) -> list[RootVector]:
    """beta_l = u_{l-1} alpha_{i_l}; a permutation of Phi+ iff the word is a
    reduced word for w0."""
    out = []
    for l, j in enumerate(word):
        out.append(cd.apply_word(word[:l], cd.simple_root(j)))
    return out


def is_reduced(cd: CartanData, word) -> bool:
    """True iff all beta_l are positive and pairwise distinct."""
    seen = set()
    for l, j in enumerate(word):
        if not 1 <= j <= cd.rank:
            raise ValueError(f"letter {j} out of range 1..{cd.rank}")
        beta = cd.apply_word(word[:l], cd.simple_root(j))
        if not beta.is_positive() or beta.coeffs in seen:
            return False
        seen.add(beta.coeffs)
    return True


def check_w0_word(cd: CartanData, word) -> tuple[int, ...]:
    """Validate a reduced word for w0, returning it as a tuple.

    Raises ValueError naming the first failing root-sequence step.
    """
    word = tuple(int(j) for j in word)
    seen = set()
    for l, j in enumerate(word):
        if not 1 <= j <= cd.rank:
            raise ValueError(f"letter {j} at position {l + 1} out of range 1..{cd.rank}")
        beta = cd.apply_word(word[:l], cd.simple_root(j))
        if not beta.is_positive():
            raise ValueError(
                f"not reduced: beta_{l + 1} = u_{l} alpha_{j} = {beta.coeffs} is not positive"
            )
        if beta.coeffs in seen:
            raise ValueError(f"not reduced: beta_{l + 1} = {beta.coeffs} repeats an earlier root")
        seen.add(beta.coeffs)
    k = cd.num_positive_roots()
    if len(word) != k:
        raise ValueError(f"word has length {len(word)}, but w0 needs length {k}")
    return word


def inverse_prefix_image(cd: CartanData, word, l: int, alpha: RootVector) -> RootVector:
    """u_l^{-1} alpha, where u_l is the length-l prefix."""
    return cd.apply_word(tuple(reversed(word[:l])), alpha)


def crossing_indices(cd: CartanData, word) -> tuple[int, ...]:
    """t_k = least l with u_l^{-1} alpha_k negative, for each node k."""
    word = check_w0_word(cd, word)
    out = []
    for k in cd.nodes():
        alpha = cd.simple_root(k)
        cur = alpha
        for l, j in enumerate(word, start=1):
            # u_l^{-1} = s_{i_l} u_{l-1}^{-1}, so push one reflection at a time
            cur = cd.reflect_root(cur, j)
            if cur.is_negative():
                out.append(l)
                break
        else:
            raise AssertionError("simple root never crossed; w0 word invalid")
    return tuple(out)


# -- double words for (w0, w0) ----------------------------------------------


def split_double_word(dword) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(u letters sign-stripped, v letters) in order of appearance."""
    u = tuple(-j for j in dword if j < 0)
    v = tuple(j for j in dword if j > 0)
    return u, v


def check_double_word(cd: CartanData, dword) -> tuple[int, ...]:
    """Validate a double reduced word for (w0, w0)."""
    dword = tuple(int(j) for j in dword)
    if any(j == 0 for j in dword):
        raise ValueError("double-word letters must be nonzero signed indices")
    u, v = split_double_word(dword)
    k = cd.num_positive_roots()
    if len(dword) != 2 * k:
        raise ValueError(f"double word has length {len(dword)}, expected 2K = {2 * k}")
    check_w0_word(cd, u)
    check_w0_word(cd, v)
    return dword


def double_crossing_indices(cd: CartanData, dword) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(t, r): global positions where u_l^{-1} alpha_k resp. v_l^{-1} alpha_k
    first becomes negative."""
    dword = check_double_word(cd, dword)
    t = [0] * cd.rank
    r = [0] * cd.rank
    cur_u = {k: cd.simple_root(k) for k in cd.nodes()}
    cur_v = {k: cd.simple_root(k) for k in cd.nodes()}
    for pos, letter in enumerate(dword, start=1):
        cur = cur_u if letter < 0 else cur_v
        out = t if letter < 0 else r
        j = abs(letter)
        for k in cd.nodes():
            if out[k - 1]:
                continue
            cur[k] = cd.reflect_root(cur[k], j)
            if cur[k].is_negative():
                out[k - 1] = pos
    assert all(t) and all(r)
    return tuple(t), tuple(r)


# -- enumeration and sampling via braid moves --------------------------------


def _braid_moves(cd: CartanData, word):
    """All single braid-move images of a word (2-, 3-, 4- and 6-moves)."""
    n = len(word)
    for p in range(n - 1):
        a, b = word[p], word[p + 1]
        if a == b:
            continue
        m = cd.braid_order(a, b)
        if p + m > n:
            continue
        pattern = tuple(a if t % 2 == 0 else b for t in range(m))
        if word[p:p + m] == pattern:
            flipped = tuple(b if t % 2 == 0 else a for t in range(m))
            yield word[:p] + flipped + word[p + m:]


def max_enum_rank() -> int:
    """Enumeration guard, liftable via the CSF_MAX_RANK environment variable."""
    raw = os.environ.get("CSF_MAX_RANK")
    if raw is None:
        return DEFAULT_MAX_ENUM_RANK
    return int(raw)


def enumerate_reduced_words(cd: CartanData, allow_large: bool = False) -> list[tuple[int, ...]]:
    """All reduced words for w0, by BFS closure under braid moves.

    Guarded to rank <= 3 and |Phi+| <= 9 unless allow_large or CSF_MAX_RANK.
    """
    limit = max_enum_rank()
    if not allow_large:
        if cd.rank > limit:
            raise ValueError(
                f"enumeration capped at rank {limit} (set CSF_MAX_RANK to lift); got rank {cd.rank}"
            )
        if cd.rank <= DEFAULT_MAX_ENUM_RANK and cd.num_positive_roots() > DEFAULT_MAX_ENUM_LENGTH:
            raise ValueError("enumeration capped at word length 9")
    start = cd.canonical_w0_word()
    seen = {start}
    queue = [start]
    while queue:
        w = queue.pop()
        for w2 in _braid_moves(cd, w):
            if w2 not in seen:
                seen.add(w2)
                queue.append(w2)
    return sorted(seen)


def sample_reduced_words(cd: CartanData, count: int, rng_seed: int) -> list[tuple[int, ...]]:
    """Distinct reduced words for w0 reached by random braid-move walks."""
    rng = random.Random(rng_seed)
    words = {cd.canonical_w0_word()}
    cur = cd.canonical_w0_word()
    attempts = 0
    while len(words) < count and attempts < 200 * count:
        attempts += 1
        moves = list(_braid_moves(cd, cur))
        cur = rng.choice(moves)
        words.add(cur)
    return sorted(words)[:count]


def parse_word(text: str) -> tuple[int, ...]:
    """Parse comma-separated letters, e.g. '1,2,1' or '-1,-2,1,2'."""
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}: {exc}") from None
