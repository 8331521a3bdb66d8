"""Seeds (quivers with multipliers and frozen vertices), amalgamation of
letter pieces, builders for the B^- / Conf3 / Conf4 quivers, and mutation.

The exchange matrix is stored doubled (b2 = 2B) so that half-arrows between
frozen vertices stay exact integers.  Arrow bookkeeping: an arrow from vertex
s to vertex t means b[t][s] > 0 and b[s][t] < 0, with magnitude given by the
multiplier color rule m(d_t, d_s); dotted arrows contribute half of that.

Letter pieces follow the double-word sign convention: the standard
orientation (solid j+ -> j-) is used for every letter of a single reduced
word and for the negative letters of a double word; the positive letters of
a double word (the v part) get every arrow reversed, with k-bullet vertices
in place of k-circles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .cartan import CartanData
from .words import (
    check_double_word,
    check_w0_word,
    crossing_indices,
    double_crossing_indices,
    split_double_word,
)


def arrow_magnitude(d_target: int, d_source: int) -> int:
    """|b_{ts}| for a solid arrow into t from s, per the color rule."""
    if d_target == 2 and d_source == 1:
        return 2
    if d_target == 3 and d_source == 1:
        return 3
    return 1


@dataclass(frozen=True)
class Vertex:
    id: str
    row: int              # Dynkin node of the vertex's row (k for k-circle/k-bullet)
    kind: str             # face | edge12 | edge13 | edge23 | edge14 | edge34
    frozen: bool
    d: int                # multiplier
    pos: int              # boundary index at creation (t_k resp. r_k for markers)


@dataclass
class _FragVertex:
    row: int
    pos: int
    marker: str | None = None   # None for row vertices, "o" = k-circle, "b" = k-bullet


@dataclass
class QuiverPiece:
    """A seed fragment with designated left/right boundary vertices per row."""

    cartan: CartanData
    vertices: list[_FragVertex]
    b2: dict[tuple[int, int], int]
    left: dict[int, int]
    right: dict[int, int]

    def add_arrow(self, src: int, dst: int, dotted: bool) -> None:
        ds = self.cartan.multipliers[self.vertices[src].row - 1]
        dt = self.cartan.multipliers[self.vertices[dst].row - 1]
        scale = 1 if dotted else 2
        self.b2[(dst, src)] = self.b2.get((dst, src), 0) + scale * arrow_magnitude(dt, ds)
        self.b2[(src, dst)] = self.b2.get((src, dst), 0) - scale * arrow_magnitude(ds, dt)
        for key in ((dst, src), (src, dst)):
            if self.b2[key] == 0:
                del self.b2[key]


def piece(cd: CartanData, letter: int, pos: int = 1, modified: int | None = None,
          v_part: bool = False) -> QuiverPiece:
    """The quiver piece of one simple reflection, n+1 vertices (n+2 if modified)."""
    j = abs(letter)
    if not 1 <= j <= cd.rank:
        raise ValueError(f"letter {letter} out of range 1..{cd.rank}")
    reverse = v_part and letter > 0
    frag = QuiverPiece(cd, [], {}, {}, {})
    for i in cd.nodes():
        frag.vertices.append(_FragVertex(row=i, pos=pos - 1))
        frag.left[i] = frag.right[i] = len(frag.vertices) - 1
        if i == j:
            frag.vertices.append(_FragVertex(row=i, pos=pos))
            frag.right[i] = len(frag.vertices) - 1
    jm, jp = frag.left[j], frag.right[j]
    marker_idx = None
    if modified is not None:
        if cd.multipliers[modified - 1] != cd.multipliers[j - 1]:
            raise ValueError("marker node must be Weyl-conjugate to the letter's node")
        frag.vertices.append(_FragVertex(row=modified, pos=pos, marker="b" if reverse else "o"))
        marker_idx = len(frag.vertices) - 1

    if not reverse:
        frag.add_arrow(jp, jm, dotted=False)
        for i in cd.neighbors(j):
            frag.add_arrow(jm, frag.left[i], dotted=True)
            frag.add_arrow(frag.left[i], jp, dotted=True)
        if marker_idx is not None:
            frag.add_arrow(jm, marker_idx, dotted=False)
            frag.add_arrow(marker_idx, jp, dotted=False)
    else:
        frag.add_arrow(jm, jp, dotted=False)
        for i in cd.neighbors(j):
            frag.add_arrow(jp, frag.left[i], dotted=True)
            frag.add_arrow(frag.left[i], jm, dotted=True)
        if marker_idx is not None:
            frag.add_arrow(jp, marker_idx, dotted=False)
            frag.add_arrow(marker_idx, jm, dotted=False)
    return frag


def amalgamate(left: QuiverPiece, right: QuiverPiece) -> QuiverPiece:
    """Identify the rightmost vertex of each row of `left` with the leftmost
    of `right`; exchange-matrix entries of identified vertices add."""
    if left.cartan != right.cartan:
        raise ValueError("cannot amalgamate fragments over different Cartan data")
    cd = left.cartan
    merged = QuiverPiece(cd, [v for v in left.vertices], dict(left.b2), dict(left.left), dict(left.right))
    remap: dict[int, int] = {}
    for idx, v in enumerate(right.vertices):
        if v.marker is None and right.left[v.row] == idx:
            remap[idx] = left.right[v.row]
        else:
            merged.vertices.append(v)
            remap[idx] = len(merged.vertices) - 1
    for (a, b), val in right.b2.items():
        key = (remap[a], remap[b])
        merged.b2[key] = merged.b2.get(key, 0) + val
        if merged.b2[key] == 0:
            del merged.b2[key]
    for row in cd.nodes():
        merged.right[row] = remap[right.right[row]]
    return merged


@dataclass(frozen=True)
class Seed:
    """An immutable seed: ordered vertices plus the doubled exchange matrix."""

    cartan: CartanData
    space: str                     # borel | conf3 | conf4 | fragment
    word: tuple[int, ...]
    vertices: tuple[Vertex, ...]
    b2: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = [v.d for v in self.vertices]
        for i in range(len(d)):
            for j in range(len(d)):
                if self.b2[i][j] * d[j] != -self.b2[j][i] * d[i]:
                    raise ValueError("b2 is not skew-symmetrizable by the multipliers")
                if self.b2[i][j] % 2 and not (self.vertices[i].frozen and self.vertices[j].frozen):
                    raise ValueError("half-integer exchange entry outside the frozen block")

    # -- lookups -------------------------------------------------------------

    def index(self, vid: str) -> int:
        for i, v in enumerate(self.vertices):
            if v.id == vid:
                return i
        raise KeyError(f"no vertex with id {vid!r}")

    def vertex(self, vid: str) -> Vertex:
        return self.vertices[self.index(vid)]

    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def unfrozen_ids(self) -> list[str]:
        return [v.id for v in self.vertices if not v.frozen]

    def b_entry(self, vid_i: str, vid_j: str) -> Fraction:
        """b_ij on the natural (un-doubled) scale."""
        return Fraction(self.b2[self.index(vid_i)][self.index(vid_j)], 2)

    def minor_label(self, vid: str):
        """(u-prefix, i) for single-word seeds, (u-prefix, v-prefix, i) for Conf4;
        None for k-circle / k-bullet vertices."""
        v = self.vertex(vid)
        if v.kind in ("edge12", "edge34"):
            return None
        if self.space == "conf4":
            u, vv = split_double_word(self.word[: v.pos])
            return (u, vv, v.row)
        return (tuple(self.word[: v.pos]), v.row)

    # -- mutation ------------------------------------------------------------

    def mutate(self, vid: str) -> "Seed":
        """Seed mutation at an unfrozen vertex; involution on b2."""
        k = self.index(vid)
        if self.vertices[k].frozen:
            raise ValueError(f"cannot mutate at frozen vertex {vid!r}")
        n = len(self.vertices)
        old = self.b2
        new = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == k or j == k:
                    new[i][j] = -old[i][j]
                elif old[i][k] * old[k][j] > 0:
                    # doubled scale: b2_ik is even since k is unfrozen
                    new[i][j] = old[i][j] + abs(old[i][k]) // 2 * old[k][j]
                else:
                    new[i][j] = old[i][j]
        return replace(self, b2=tuple(tuple(r) for r in new))

    # -- export ----------------------------------------------------------------

    def to_json_dict(self, gradings=None) -> dict:
        verts = []
        for v in self.vertices:
            entry = {"id": v.id, "row": v.row, "kind": v.kind, "frozen": v.frozen, "d": v.d}
            if gradings is not None:
                entry["grading"] = gradings[v.id].to_json_dict()
            verts.append(entry)
        return {
            "type": self.cartan.family,
            "rank": self.cartan.rank,
            "word": list(self.word),
            "vertices": verts,
            "b2": [list(r) for r in self.b2],
        }

    def to_json(self, gradings=None) -> str:
        return json.dumps(self.to_json_dict(gradings), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph seed {", "  rankdir=RL;"]
        for v in self.vertices:
            shape = "box" if v.frozen else "circle"
            fill = "black" if v.d == 1 else "white"
            font = "white" if v.d == 1 else "black"
            lines.append(
                f'  "{v.id}" [shape={shape}, style=filled, fillcolor={fill}, fontcolor={font}];'
            )
        n = len(self.vertices)
        for src in range(n):
            for dst in range(n):
                val = self.b2[dst][src]
                if val <= 0:
                    continue
                m = arrow_magnitude(self.vertices[dst].d, self.vertices[src].d)
                dashed = val == m
                attrs = []
                if dashed:
                    attrs.append("style=dashed")
                weight = Fraction(val, 2)
                if not (dashed and val == 1) and not (not dashed and val == 2):
                    attrs.append(f'label="{weight}"')
                suffix = f" [{', '.join(attrs)}]" if attrs else ""
                lines.append(f'  "{self.vertices[src].id}" -> "{self.vertices[dst].id}"{suffix};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def arrow_multiset(self) -> list[tuple[str, str, Fraction]]:
        """Sorted (source, target, b-value) triples for every arrow."""
        out = []
        n = len(self.vertices)
        for src in range(n):
            for dst in range(n):
                if self.b2[dst][src] > 0:
                    out.append((self.vertices[src].id, self.vertices[dst].id, Fraction(self.b2[dst][src], 2)))
        return sorted(out)


def _finalize(frag: QuiverPiece, space: str, word, marker_pos: dict[tuple[int, str], int]) -> Seed:
    """Order vertices canonically, assign ids/kinds/frozen flags, and add the
    dotted arrows between marker vertices."""
    cd = frag.cartan
    order = []
    for idx, v in enumerate(frag.vertices):
        if v.marker is None:
            order.append((0, v.pos, v.row, idx))
        elif v.marker == "o":
            order.append((1, v.row, 0, idx))
        else:
            order.append((2, v.row, 0, idx))
    order.sort()
    perm = [idx for (_, _, _, idx) in order]
    inv = {old: new for new, old in enumerate(perm)}

    # marker-to-marker dotted arrows: circles by t, bullets by r
    for sym, later_first in (("o", True), ("b", False)):
        markers = {v.row: i for i, v in enumerate(frag.vertices) if v.marker == sym}
        for k, ik in markers.items():
            for kp in cd.neighbors(k):
                if kp not in markers:
                    continue
                tk = marker_pos[(k, sym)]
                tkp = marker_pos[(kp, sym)]
                # circles: arrow k -> k' when t_{k'} < t_k; bullets: when r_k < r_{k'}
                if (tkp < tk) if later_first else (tk < tkp):
                    frag.add_arrow(ik, markers[kp], dotted=True)

    n = len(frag.vertices)
    b2 = [[0] * n for _ in range(n)]
    for (a, b), val in frag.b2.items():
        b2[inv[a]][inv[b]] = val

    first_pos = {row: min(v.pos for v in frag.vertices if v.marker is None and v.row == row)
                 for row in cd.nodes()}
    last_pos = {row: max(v.pos for v in frag.vertices if v.marker is None and v.row == row)
                for row in cd.nodes()}
    occ_counter = {row: 0 for row in cd.nodes()}
    verts = []
    for (_, _, _, old_idx) in order:
        fv = frag.vertices[old_idx]
        if fv.marker is None:
            occ = occ_counter[fv.row]
            occ_counter[fv.row] += 1
            frozen = fv.pos in (first_pos[fv.row], last_pos[fv.row])
            if fv.pos == first_pos[fv.row]:
                kind = "edge14" if space == "conf4" else "edge13"
            elif fv.pos == last_pos[fv.row]:
                kind = "edge23"
            else:
                kind = "face"
            verts.append(Vertex(
                id=f"{fv.row}.{occ}", row=fv.row, kind=kind, frozen=frozen,
                d=cd.multipliers[fv.row - 1], pos=fv.pos,
            ))
        else:
            kind = "edge12" if fv.marker == "o" else "edge34"
            suffix = "o" if fv.marker == "o" else "b"
            verts.append(Vertex(
                id=f"{fv.row}{suffix}", row=fv.row, kind=kind, frozen=True,
                d=cd.multipliers[fv.row - 1], pos=marker_pos[(fv.row, fv.marker)],
            ))
    return Seed(cd, space, tuple(word), tuple(verts), tuple(tuple(r) for r in b2))


def build_borel_quiver(cd: CartanData, word) -> Seed:
    """The n+K vertex quiver of a reduced word for w0, 2n frozen ends."""
    word = check_w0_word(cd, word)
    frag = None
    for l, j in enumerate(word, start=1):
        p = piece(cd, -j, pos=l)
        frag = p if frag is None else amalgamate(frag, p)
    return _finalize(frag, "borel", word, {})


def build_conf3_quiver(cd: CartanData, word) -> Seed:
    """The K+2n vertex quiver: modified pieces at the crossings t_1..t_n."""
    word = check_w0_word(cd, word)
    t = crossing_indices(cd, word)
    node_at = {l: k for k, l in zip(cd.nodes(), t)}
    frag = None
    for l, j in enumerate(word, start=1):
        p = piece(cd, -j, pos=l, modified=node_at.get(l))
        frag = p if frag is None else amalgamate(frag, p)
    marker_pos = {(k, "o"): t[k - 1] for k in cd.nodes()}
    return _finalize(frag, "conf3", word, marker_pos)


def build_conf4_quiver(cd: CartanData, dword) -> Seed:
    """The n+2K+2n vertex quiver of a double reduced word for (w0, w0)."""
    dword = check_double_word(cd, dword)
    t, r = double_crossing_indices(cd, dword)
    circle_at = {l: k for k, l in zip(cd.nodes(), t)}
    bullet_at = {l: k for k, l in zip(cd.nodes(), r)}
    frag = None
    for l, letter in enumerate(dword, start=1):
        modified = circle_at.get(l) if letter < 0 else bullet_at.get(l)
        p = piece(cd, letter, pos=l, modified=modified, v_part=letter > 0)
        frag = p if frag is None else amalgamate(frag, p)
    marker_pos = {(k, "o"): t[k - 1] for k in cd.nodes()}
    marker_pos.update({(k, "b"): r[k - 1] for k in cd.nodes()})
    return _finalize(frag, "conf4", dword, marker_pos)


def strip_markers(seed: Seed) -> Seed:
    """Delete all k-circle / k-bullet vertices and their incident arrows."""
    keep = [i for i, v in enumerate(seed.vertices) if v.kind not in ("edge12", "edge34")]
    verts = tuple(seed.vertices[i] for i in keep)
    b2 = tuple(tuple(seed.b2[i][j] for j in keep) for i in keep)
    space = "borel" if seed.space == "conf3" else seed.space
    return Seed(seed.cartan, space, seed.word, verts, b2)
