"""Link diagrams as PD codes, and the determinant of a link two ways.

A crossing ``X a b c d`` lists its four arc labels counterclockwise,
starting with the incoming under-strand. The Goeritz matrix of a
checkerboard shading presents H_1 of the double branched cover; the
Kauffman bracket at A = exp(i pi / 4) gives an independent route to the
same determinant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import isqrt

from .abelian import AbGroup, Matrix, determinant as int_determinant, group_from_presentation
from .tangle import AlgebraicTangle, RationalTangle

MAX_BRACKET_CROSSINGS = 24

Corner = tuple[int, int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Faces:
    """Faces of a diagram with a checkerboard coloring.

    Corner ``(i, k)`` is the sector of crossing ``i`` between positions
    ``k`` and ``k + 1`` counterclockwise; ``face_of[4 * i + k]`` is the face
    containing it. ``colors`` is a proper 2-coloring with face 0 colored 0.
    """

    face_of: tuple[int, ...]
    colors: tuple[int, ...]

    def __len__(self):
        return len(self.colors)

    @property
    def faces(self) -> list[list[Corner]]:
        out: list[list[Corner]] = [[] for _ in self.colors]
        for c, f in enumerate(self.face_of):
            out[f].append((c >> 2, c & 3))
        return out

    def face(self, crossing: int, position: int) -> int:
        return self.face_of[4 * crossing + position]


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    _faces: Faces = field(init=False, repr=False, compare=False, hash=False)
    # derived values (Goeritz data per shading, determinant), filled on demand
    _memo: dict = field(init=False, repr=False, compare=False, hash=False, default_factory=dict)

    def __post_init__(self):
        xs = tuple(tuple(map(int, x)) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        if any(len(x) != 4 for x in xs):
            raise DiagramError("every crossing needs exactly four arc labels")
        counts = Counter(a for x in xs for a in x)
        if counts and (min(counts) != 1 or max(counts) != len(counts)):
            raise DiagramError("arc labels must be exactly 1..n_arcs")
        if any(k != 2 for k in counts.values()):
            bad = sorted(a for a, k in counts.items() if k != 2)
            raise DiagramError(f"arc labels {bad} do not appear exactly twice")
        object.__setattr__(self, "_faces", _compute_faces(xs))

    @property
    def n_arcs(self) -> int:
        return 2 * len(self.crossings)

    def __len__(self):
        return len(self.crossings)

    def to_text(self) -> str:
        return "".join(f"X {a} {b} {c} {d}\n" for a, b, c, d in self.crossings)


def parse_pd(text: str) -> PDCode:
    """Read ``X a b c d`` records, one per line or separated by ``/``; ``#`` starts a comment."""
    crossings = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for chunk in line.split("#", 1)[0].split("/"):
            fields = chunk.split()
            if not fields:
                continue
            if fields[0] != "X" or len(fields) != 5:
                raise DiagramError(f"line {lineno}: expected 'X a b c d', got {chunk.strip()!r}")
            try:
                crossings.append(tuple(int(f) for f in fields[1:]))
            except ValueError:
                raise DiagramError(f"line {lineno}: arc labels must be integers") from None
    return PDCode(tuple(crossings))


# -- faces and checkerboard shading -------------------------------------------


def _compute_faces(xs) -> Faces:
    if not xs:
        return Faces((), (0, 1))
    n = len(xs)
    # corners and arc ends are both indexed 4 * crossing + position
    first: dict[int, int] = {}
    across = [0] * (4 * n)
    for e, a in enumerate(a for x in xs for a in x):
        if a in first:
            f = first.pop(a)
            across[e], across[f] = f, e
        else:
            first[a] = e

    face_of = [-1] * (4 * n)
    fs = []
    for start in range(4 * n):
        if face_of[start] >= 0:
            continue
        face = []
        c = start
        while face_of[c] < 0:
            face_of[c] = len(fs)
            face.append(c)
            # leave along this position; at the far end the face continues
            # in the sector clockwise of the arrival position
            e = across[c]
            c = e - 1 if e & 3 else e + 3
        if c != start:
            raise DiagramError("face tracing did not close up; the PD code is inconsistent")
        fs.append(face)
    if len(fs) - n != 2:
        raise DiagramError(
            f"Euler characteristic {len(fs) - n} != 2; the diagram is non-planar or split"
        )

    colors = [-1] * len(fs)
    colors[0] = 0
    stack = [0]
    while stack:
        f = stack.pop()
        for c in fs[f]:
            # the arc leaving corner c separates it from the sector clockwise of it
            g = face_of[c - 1 if c & 3 else c + 3]
            if colors[g] == -1:
                colors[g] = 1 - colors[f]
                stack.append(g)
            elif colors[g] == colors[f]:
                raise DiagramError("faces admit no checkerboard coloring")
    return Faces(tuple(face_of), tuple(colors))


def faces(d: PDCode) -> Faces:
    return d._faces


# -- Goeritz matrix -----------------------------------------------------------


@dataclass(frozen=True)
class GoeritzData:
    shaded_regions: int
    matrix: Matrix
    reduced: Matrix


def goeritz(d: PDCode, shade: int = 0) -> GoeritzData:
    """Goeritz matrix of the regions with color ``shade``.

    A crossing whose shaded sectors are 0 and 2 counts +1, otherwise -1.
    The correction term is left out; it does not change |det|.
    """
    key = ("goeritz", shade)
    if key not in d._memo:
        d._memo[key] = _goeritz(d, shade)
    return d._memo[key]


def _goeritz(d: PDCode, shade: int) -> GoeritzData:
    F = d._faces
    shaded = [f for f, c in enumerate(F.colors) if c == shade]
    index = {f: i for i, f in enumerate(shaded)}
    r = len(shaded)
    G = [[0] * r for _ in range(r)]
    fo = F.face_of
    for i in range(0, len(fo), 4):
        if F.colors[fo[i]] == shade:
            eta, f, g = 1, fo[i], fo[i + 2]
        else:
            eta, f, g = -1, fo[i + 1], fo[i + 3]
        if f != g:
            a, b = index[f], index[g]
            G[a][b] -= eta
            G[b][a] -= eta
            G[a][a] += eta
            G[b][b] += eta
    matrix = tuple(map(tuple, G))
    reduced = tuple(row[: r - 1] for row in matrix[: r - 1])
    return GoeritzData(r, matrix, reduced)


def determinant(d: PDCode, shade: int = 0) -> int:
    key = ("det", shade)
    if key not in d._memo:
        d._memo[key] = abs(int_determinant(goeritz(d, shade).reduced))
    return d._memo[key]


def double_cover_group(d: PDCode) -> AbGroup:
    """H_1 of the double branched cover, presented by the reduced Goeritz matrix."""
    g = goeritz(d)
    return group_from_presentation(g.reduced, g.shaded_regions - 1)


# -- Kauffman bracket at A^4 = -1 ---------------------------------------------
#
# With A = exp(i pi/4) the loop value -A^2 - A^-2 vanishes, so only states
# that smooth to a single loop survive, and each contributes A^(#A - #B)
# = A^n (-i)^(#B). The Gaussian integer sum of (-i)^(#B) has modulus det(L).


def _smooth_pairs(x):
    a, b, c, d = x
    return ((a, b), (c, d)), ((a, d), (b, c))


def _gauss_mul_minus_i(z):
    return (z[1], -z[0])


def bracket_state_sum(d: PDCode) -> tuple[int, int]:
    """Sum of (-i)^(#B) over single-loop states, as a Gaussian integer (re, im).

    Crossings are absorbed one at a time. A partial state is the pairing
    of its dangling arc ends; states with the same pairing are merged, and
    a state that closes a loop while anything else remains is dropped (it
    carries a factor of the vanishing loop value).
    """
    xs = d.crossings
    if not xs:
        return (1, 0)
    states: dict[tuple, tuple[int, int]] = {(): (1, 0)}
    last = len(xs) - 1
    for i, x in enumerate(xs):
        smoothings = _smooth_pairs(x)
        nxt: dict[tuple, tuple[int, int]] = {}
        for key, coeff in states.items():
            for s, pairs in enumerate(smoothings):
                state = dict(key)
                loops = 0
                for u, v in pairs:
                    if u == v:
                        loops += 1
                        continue
                    eu, ev = state.pop(u, None), state.pop(v, None)
                    if eu is None and ev is None:
                        state[u], state[v] = v, u
                    elif eu == v:
                        loops += 1
                    elif ev is None:
                        state[eu], state[v] = v, eu
                    elif eu is None:
                        state[ev], state[u] = u, ev
                    else:
                        state[eu], state[ev] = ev, eu
                if loops and (loops > 1 or state or i < last):
                    continue
                c = (coeff[1], -coeff[0]) if s else coeff
                k = tuple(sorted(state.items()))
                old = nxt.get(k)
                nxt[k] = c if old is None else (old[0] + c[0], old[1] + c[1])
        states = nxt
    return states.get((), (0, 0))


def bracket_state_sum_bruteforce(d: PDCode) -> tuple[int, int]:
    """Same sum by enumerating all 2^n states; for cross-checking small diagrams."""
    xs = d.crossings
    if not xs:
        return (1, 0)
    labels = {a for x in xs for a in x}
    total = [0, 0]
    for choice in product((0, 1), repeat=len(xs)):
        parent = {a: a for a in labels}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x, s in zip(xs, choice):
            for u, v in _smooth_pairs(x)[s]:
                parent[find(u)] = find(v)
        if len({find(a) for a in labels}) != 1:
            continue
        z = (1, 0)
        for _ in range(sum(choice)):
            z = _gauss_mul_minus_i(z)
        total[0] += z[0]
        total[1] += z[1]
    return tuple(total)


def _modulus(z) -> int:
    n2 = z[0] ** 2 + z[1] ** 2
    r = isqrt(n2)
    if r * r != n2:
        raise ArithmeticError(f"bracket value {z} does not have integer modulus")
    return r


def bracket_determinant(d: PDCode) -> int:
    if len(d.crossings) > MAX_BRACKET_CROSSINGS:
        raise ValueError(
            f"{len(d.crossings)} crossings exceeds the bracket limit of {MAX_BRACKET_CROSSINGS}"
        )
    return _modulus(bracket_state_sum(d))


# -- building diagrams from tangles ------------------------------------------
#
# Crossing slots, counterclockwise: 0 = NW, 1 = SW, 2 = SE, 3 = NE.
# Strands run 0-2 and 1-3. A positive crossing has the SW-NE strand on top.


class _Builder:
    def __init__(self):
        self.positive: list[bool] = []
        self.wires: dict[int, list[int]] = {}
        self._next_free = -1

    def _link(self, u, v):
        self.wires.setdefault(u, []).append(v)
        self.wires.setdefault(v, []).append(u)

    def _boundary(self):
        self._next_free -= 1
        return self._next_free

    def zero(self):
        nw, ne, sw, se = (self._boundary() for _ in range(4))
        self._link(nw, ne)
        self._link(sw, se)
        return (nw, ne, sw, se)

    def crossing(self, sign: int):
        i = len(self.positive)
        self.positive.append(sign > 0)
        return (4 * i, 4 * i + 3, 4 * i + 1, 4 * i + 2)

    def add(self, t, s):
        self._link(t[1], s[0])
        self._link(t[3], s[2])
        return (t[0], s[1], t[2], s[3])

    def stack(self, t, s):
        self._link(t[2], s[0])
        self._link(t[3], s[1])
        return (t[0], t[1], s[2], s[3])

    def rational(self, p: int, q: int):
        """Twist diagram of p/q built by one crossing per Euclid subtraction."""
        if q == 0:
            # infinity drawn with two crossings so no strand is crossingless
            return self.stack(self.add(self.zero(), self.crossing(1)), self.crossing(-1))
        if p == 0:
            return self.add(self.add(self.zero(), self.crossing(1)), self.crossing(-1))
        moves = []
        while p:
            s = 1 if p > 0 else -1
            if abs(p) >= q:
                moves.append(("h", s))
                p -= s * q
            else:
                moves.append(("v", s))
                q -= s * p
        t = self.zero()
        for kind, s in reversed(moves):
            t = self.add(t, self.crossing(s)) if kind == "h" else self.stack(t, self.crossing(s))
        return t

    def close(self, t, numerator: bool) -> PDCode:
        if numerator:
            self._link(t[0], t[1])
            self._link(t[2], t[3])
        else:
            self._link(t[0], t[2])
            self._link(t[1], t[3])
        return self.to_pd()

    def _far_end(self, port: int) -> int:
        prev, cur = port, self.wires[port][0]
        while cur < 0:
            a, b = self.wires[cur]
            prev, cur = cur, (b if a == prev else a)
        return cur

    def to_pd(self) -> PDCode:
        n = len(self.positive)
        partner = [self._far_end(p) for p in range(4 * n)]
        label = [0] * (4 * n)
        incoming = [False] * (4 * n)
        arc = 0
        for start in range(4 * n):
            if label[start]:
                continue
            out = start
            while True:
                arc += 1
                into = partner[out]
                label[out] = label[into] = arc
                incoming[into] = True
                out = into ^ 2
                if out == start:
                    break
        crossings = []
        for i in range(n):
            under = (1, 3) if not self.positive[i] else (0, 2)
            first = under[0] if incoming[4 * i + under[0]] else under[1]
            crossings.append(tuple(label[4 * i + (first + k) % 4] for k in range(4)))
        return PDCode(tuple(crossings))


def _build_sum(T: AlgebraicTangle, numerator: bool) -> PDCode:
    b = _Builder()
    pieces = [b.rational(t.p, t.q) for t in T.summands]
    acc = pieces[0]
    for s in pieces[1:]:
        acc = b.add(acc, s)
    return b.close(acc, numerator)


def numerator_closure(T: AlgebraicTangle) -> PDCode:
    """Close the sum top-to-top and bottom-to-bottom; determinant |num|."""
    return _build_sum(T, True)


def denominator_closure(T: AlgebraicTangle) -> PDCode:
    """Close the sum left-to-left and right-to-right; determinant |den|."""
    return _build_sum(T, False)


def two_bridge(p: int, q: int) -> PDCode:
    """Numerator closure of the rational tangle p/q; determinant p."""
    if (p, q) == (1, 0):
        return PDCode()
    if p < 1 or not 0 < q < p:
        raise ValueError(f"two-bridge fraction needs 0 < q < p, got {p}/{q}")
    return numerator_closure(AlgebraicTangle((RationalTangle.of(p, q),)))
