"""Cominuscule grid posets, straight shapes, and skew shapes.

Boxes are pairs ``(r, c)`` of 1-based grid coordinates ordered
componentwise: ``(r1, c1) <= (r2, c2)`` iff ``r1 <= r2`` and ``c1 <= c2``.
A poset is a finite set of boxes with the induced order.  Straight shapes
(lower order ideals) are encoded as bitmasks over a fixed row-major
ordering of the boxes, so shape arithmetic stays cheap inside exhaustive
tableau searches that hash millions of shapes.

Bounded families carry the order-reversing involution ``wx`` used for
Poincare duality: a 180 degree rotation for rectangles, odd quadrics,
even quadrics with even parameter, and the 16-box exceptional poset, and
a reflection in the south-west to north-east diagonal for staircases,
even quadrics with odd parameter, and the 27-box exceptional poset.

The two ambient families (the full grid and the shifted half grid) are
truncated to an explicit window; operations that could escape the window
raise :class:`~kjdt.errors.WindowExceeded` instead of silently clipping.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import PosetError

Box = tuple[int, int]


@dataclass(frozen=True)
class PosetFamily:
    """Tagged family descriptor: ``kind`` plus integer parameters.

    Kinds: ``a`` (m x k rectangle), ``og`` (shifted staircase with n-1
    rows), ``lg`` (staircase with n rows), ``qodd`` (single row of 2n-1
    boxes), ``qeven`` (two-row or row-plus-column layout of 2n boxes,
    split by the parity of n), ``e6`` (16 boxes), ``e7`` (27 boxes),
    ``grid`` (ambient rectangle window), ``shifted`` (ambient shifted
    window).
    """

    kind: str
    params: tuple[int, ...] = ()

    def spec(self) -> str:
        if self.params:
            return f"{self.kind}:{','.join(str(p) for p in self.params)}"
        return self.kind


# Exact embeddings of the two exceptional posets, {row: (first col, last col)}.
_E6_ROWS = {1: (1, 4), 2: (3, 6), 3: (3, 6), 4: (5, 8)}
_E7_ROWS = {
    1: (1, 5), 2: (4, 8), 3: (4, 8), 4: (6, 8),
    5: (7, 9), 6: (7, 9), 7: (9, 9), 8: (9, 9), 9: (9, 9),
}

ROTATION_KINDS = frozenset({"a", "qodd", "qeven_even", "e6"})
REFLECTION_KINDS = frozenset({"og", "lg", "qeven_odd", "e7"})


def _family_boxes(family: PosetFamily) -> list[Box]:
    kind, params = family.kind, family.params
    if kind == "a":
        m, k = params
        if m < 1 or k < 1:
            raise PosetError(f"rectangle needs positive sides, got {m}x{k}")
        return [(r, c) for r in range(1, m + 1) for c in range(1, k + 1)]
    if kind == "og":
        (n,) = params
        if n < 2:
            raise PosetError(f"og poset needs n >= 2, got {n}")
        return [(r, c) for r in range(1, n) for c in range(r, n)]
    if kind == "lg":
        (n,) = params
        if n < 1:
            raise PosetError(f"lg poset needs n >= 1, got {n}")
        return [(r, c) for r in range(1, n + 1) for c in range(r, n + 1)]
    if kind == "qodd":
        (n,) = params
        if n < 1:
            raise PosetError(f"qodd poset needs n >= 1, got {n}")
        return [(1, c) for c in range(1, 2 * n)]
    if kind == "qeven":
        (n,) = params
        if n < 2:
            raise PosetError(f"qeven poset needs n >= 2, got {n}")
        if n % 2 == 0:
            return [(1, c) for c in range(1, n + 1)] + [
                (2, c) for c in range(n - 1, 2 * n - 1)
            ]
        boxes = [(1, c) for c in range(1, n + 1)]
        boxes += [(2, n - 1), (2, n)]
        boxes += [(r, n) for r in range(3, n + 1)]
        return boxes
    if kind == "e6":
        return [(r, c) for r, (a, b) in _E6_ROWS.items() for c in range(a, b + 1)]
    if kind == "e7":
        return [(r, c) for r, (a, b) in _E7_ROWS.items() for c in range(a, b + 1)]
    if kind == "grid":
        rows, cols = params
        if rows < 1 or cols < 1:
            raise PosetError(f"grid window needs positive sides, got {rows}x{cols}")
        return [(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    if kind == "shifted":
        (cols,) = params
        if cols < 1:
            raise PosetError(f"shifted window needs positive size, got {cols}")
        return [(r, c) for r in range(1, cols + 1) for c in range(r, cols + 1)]
    raise PosetError(f"unknown poset family {kind!r}")


class MinusculePoset:
    """A finite set of grid boxes with the componentwise order.

    Boxes are stored in row-major order; sets of boxes (shapes, tableau
    supports) are bitmasks over that ordering.  All derived structure
    (covers, heights, the ``wx`` involution) is computed once at
    construction, and instances are immutable and safe to share.
    """

    def __init__(self, family: PosetFamily):
        self.family = family
        boxes = sorted(_family_boxes(family))
        if len(set(boxes)) != len(boxes):
            raise PosetError("duplicate boxes in family layout")
        self.boxes: tuple[Box, ...] = tuple(boxes)
        self.n = len(boxes)
        self.index: dict[Box, int] = {b: i for i, b in enumerate(boxes)}
        self.is_minuscule = family.kind in {"a", "og", "qeven", "e6", "e7"}
        self.is_ambient = family.kind in {"grid", "shifted"}

        # Inclusive up/down sets as masks: below[i] = {j : box_j <= box_i}.
        below = [0] * self.n
        above = [0] * self.n
        for i, (r1, c1) in enumerate(boxes):
            for j, (r2, c2) in enumerate(boxes):
                if r2 <= r1 and c2 <= c1:
                    below[i] |= 1 << j
                    above[j] |= 1 << i
        self.below: tuple[int, ...] = tuple(below)
        self.above: tuple[int, ...] = tuple(above)

        # Hasse diagram: j covers i iff nothing sits strictly between them.
        up = [[] for _ in range(self.n)]
        down = [[] for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                if i != j and below[j] & (1 << i):
                    if (above[i] & below[j]) == (1 << i) | (1 << j):
                        up[i].append(j)
                        down[j].append(i)
        self.up: tuple[tuple[int, ...], ...] = tuple(tuple(v) for v in up)
        self.down: tuple[tuple[int, ...], ...] = tuple(tuple(v) for v in down)
        self.nbr_mask: tuple[int, ...] = tuple(
            sum(1 << j for j in up[i]) | sum(1 << j for j in down[i])
            for i in range(self.n)
        )

        heights = [0] * self.n
        for i in range(self.n):  # row-major order is a linear extension
            heights[i] = 1 + max((heights[j] for j in down[i]), default=0)
        self.heights: tuple[int, ...] = tuple(heights)

        self.wx: tuple[int, ...] | None = None
        if not self.is_ambient:
            kind = family.kind
            if kind == "qeven":
                kind = "qeven_even" if family.params[0] % 2 == 0 else "qeven_odd"
            max_r = max(r for r, _ in boxes)
            max_c = max(c for _, c in boxes)
            if kind in ROTATION_KINDS:
                image = [(max_r + 1 - r, max_c + 1 - c) for r, c in boxes]
            elif kind in REFLECTION_KINDS:
                side = max(max_r, max_c)
                image = [(side + 1 - c, side + 1 - r) for r, c in boxes]
            else:
                raise PosetError(f"no involution rule for {kind!r}")
            self.wx = tuple(self.index[b] for b in image)

        self.full_mask = (1 << self.n) - 1
        rows = sorted({r for r, _ in boxes})
        self.row_numbers: tuple[int, ...] = tuple(rows)
        self.row_boxes: dict[int, tuple[int, ...]] = {
            r: tuple(i for i, (rr, _) in enumerate(boxes) if rr == r) for r in rows
        }
        self._expand_cache: dict[int, int] = {}

    # -- basic queries ---------------------------------------------------

    def __repr__(self):
        return f"MinusculePoset({self.family.spec()!r}, {self.n} boxes)"

    def __eq__(self, other):
        return isinstance(other, MinusculePoset) and self.family == other.family

    def __hash__(self):
        return hash(self.family)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] & (1 << i))

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.below[j] | self.above[j]) & (1 << i))

    def down_closure(self, mask: int) -> int:
        """Lower order ideal generated by the boxes of ``mask``."""
        out = 0
        m = mask
        while m:
            b = m & -m
            out |= self.below[b.bit_length() - 1]
            m ^= b
        return out

    def expand_neighbors(self, mask: int) -> int:
        """Union of Hasse neighbors of all boxes in ``mask`` (cached)."""
        try:
            return self._expand_cache[mask]
        except KeyError:
            out = 0
            m = mask
            while m:
                b = m & -m
                out |= self.nbr_mask[b.bit_length() - 1]
                m ^= b
            self._expand_cache[mask] = out
            return out

    def is_ideal(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def maximal_boxes(self, mask: int) -> list[int]:
        """Boxes of ``mask`` with no cover inside ``mask``."""
        return [
            i
            for i in bits(mask)
            if not any(mask & (1 << j) for j in self.up[i])
        ]

    def minimal_absent_boxes(self, mask: int) -> list[int]:
        """Minimal boxes of the complement of the ideal ``mask``."""
        return [
            i
            for i in range(self.n)
            if not mask & (1 << i)
            and all(mask & (1 << j) for j in self.down[i])
        ]

    def boundary_mask(self) -> int:
        """Boxes on the far window edge of an ambient poset."""
        if not self.is_ambient:
            return 0
        if self.family.kind == "grid":
            rows, cols = self.family.params
            return sum(
                1 << i for i, (r, c) in enumerate(self.boxes) if r == rows or c == cols
            )
        (cols,) = self.family.params
        return sum(1 << i for i, (_, c) in enumerate(self.boxes) if c == cols)

    # -- shapes ----------------------------------------------------------

    def shape(self, rows: "list[int] | tuple[int, ...] | str") -> "Shape":
        """Shape from its partition view (row lengths, or a text literal)."""
        if isinstance(rows, str):
            rows = [int(t) for t in rows.split(",") if t.strip()] if rows.strip() else []
        rows = [r for r in rows]
        while rows and rows[-1] == 0:
            rows.pop()
        mask = 0
        for k, length in enumerate(rows):
            if length < 0:
                raise PosetError(f"negative row length in {rows}")
            if k >= len(self.row_numbers):
                raise PosetError(f"shape {rows} has more rows than the poset")
            row = self.row_boxes[self.row_numbers[k]]
            if length > len(row):
                raise PosetError(f"row {k + 1} of shape {rows} exceeds the poset row")
            for i in row[:length]:
                mask |= 1 << i
        if not self.is_ideal(mask):
            raise PosetError(f"shape {rows} is not a lower order ideal here")
        return Shape(self, mask)

    def shape_of_mask(self, mask: int) -> "Shape":
        return Shape(self, mask)

    def empty_shape(self) -> "Shape":
        return Shape(self, 0)

    def full_shape(self) -> "Shape":
        return Shape(self, self.full_mask)

    def row_lengths(self, mask: int) -> tuple[int, ...]:
        lens = []
        for r in self.row_numbers:
            lens.append(sum(1 for i in self.row_boxes[r] if mask & (1 << i)))
        while lens and lens[-1] == 0:
            lens.pop()
        return tuple(lens)

    def to_json(self) -> dict:
        return {
            "family": self.family.kind,
            "params": list(self.family.params),
            "rows": [
                [list(self.boxes[i]) for i in self.row_boxes[r]]
                for r in self.row_numbers
            ],
        }


class Shape:
    """A lower order ideal of a poset, i.e. the index of a Schubert class."""

    __slots__ = ("poset", "mask")

    def __init__(self, poset: MinusculePoset, mask: int):
        self.poset = poset
        self.mask = mask

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def row_lengths(self) -> tuple[int, ...]:
        return self.poset.row_lengths(self.mask)

    def boxes(self) -> list[Box]:
        return [self.poset.boxes[i] for i in bits(self.mask)]

    def __eq__(self, other):
        return (
            isinstance(other, Shape)
            and self.poset is other.poset
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((id(self.poset), self.mask))

    def __le__(self, other: "Shape") -> bool:
        return (self.mask | other.mask) == other.mask

    def __repr__(self):
        return f"Shape({self.literal()!r})"

    def literal(self) -> str:
        return ",".join(str(x) for x in self.row_lengths)

    def dual(self) -> "Shape":
        """Poincare dual shape: the complement of the ``wx`` image."""
        wx = self.poset.wx
        if wx is None:
            raise PosetError("dual shapes need a bounded poset")
        image = 0
        for i in bits(self.mask):
            image |= 1 << wx[i]
        return Shape(self.poset, self.poset.full_mask & ~image)


@dataclass(frozen=True)
class SkewShape:
    """A nested pair of straight shapes; the support is outer minus inner."""

    outer: Shape
    inner: Shape

    def __post_init__(self):
        if self.outer.poset is not self.inner.poset:
            raise PosetError("skew shape needs both shapes on one poset")
        if self.inner.mask & ~self.outer.mask:
            raise PosetError("inner shape is not contained in outer shape")

    @property
    def mask(self) -> int:
        return self.outer.mask & ~self.inner.mask

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __repr__(self):
        return f"SkewShape({self.outer.literal()!r}/{self.inner.literal()!r})"


def bits(mask: int):
    """Iterate set bit positions of ``mask`` in increasing order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


# -- family constructors -------------------------------------------------

def type_a(m: int, k: int) -> MinusculePoset:
    return build_poset(PosetFamily("a", (m, k)))


def max_orthogonal(n: int) -> MinusculePoset:
    return build_poset(PosetFamily("og", (n,)))


def lagrangian(n: int) -> MinusculePoset:
    return build_poset(PosetFamily("lg", (n,)))


def quadric_odd(n: int) -> MinusculePoset:
    return build_poset(PosetFamily("qodd", (n,)))


def quadric_even(n: int) -> MinusculePoset:
    return build_poset(PosetFamily("qeven", (n,)))


def cayley_plane() -> MinusculePoset:
    return build_poset(PosetFamily("e6"))


def freudenthal() -> MinusculePoset:
    return build_poset(PosetFamily("e7"))


def ambient_grid(rows: int, cols: int) -> MinusculePoset:
    return build_poset(PosetFamily("grid", (rows, cols)))


def ambient_shifted(cols: int) -> MinusculePoset:
    return build_poset(PosetFamily("shifted", (cols,)))


_POSET_CACHE: dict[PosetFamily, MinusculePoset] = {}


def build_poset(family: PosetFamily) -> MinusculePoset:
    """Build (and cache) the poset of a family descriptor."""
    try:
        return _POSET_CACHE[family]
    except KeyError:
        poset = MinusculePoset(family)
        _POSET_CACHE[family] = poset
        return poset


def parse_poset(spec: str) -> MinusculePoset:
    """Parse the CLI mini-language, e.g. ``a:2,2``, ``og:5``, ``e6``."""
    spec = spec.strip().lower()
    if ":" in spec:
        kind, _, rest = spec.partition(":")
        try:
            params = tuple(int(t) for t in rest.split(","))
        except ValueError as exc:
            raise PosetError(f"bad poset parameters in {spec!r}") from exc
    else:
        kind, params = spec, ()
    return build_poset(PosetFamily(kind, params))


# -- shape enumeration and strips ----------------------------------------

def enumerate_shapes(poset: MinusculePoset) -> list[Shape]:
    """All straight shapes, each once, ordered by size then row lengths."""
    if poset.is_ambient:
        raise PosetError("shape enumeration is only meaningful on bounded posets")
    masks = {0}
    frontier = [0]
    while frontier:
        new = []
        for mask in frontier:
            for i in poset.minimal_absent_boxes(mask):
                grown = mask | (1 << i)
                if grown not in masks:
                    masks.add(grown)
                    new.append(grown)
        frontier = new
    shapes = [Shape(poset, m) for m in masks]
    shapes.sort(key=lambda s: (s.size, s.row_lengths))
    return shapes


def dual_shape(shape: Shape) -> Shape:
    return shape.dual()


def rook_strips_over(shape: Shape) -> list[Shape]:
    """Shapes ``nu >= shape`` whose added boxes are pairwise incomparable."""
    poset = shape.poset
    results = {shape.mask}
    stack = [(shape.mask, 0)]
    while stack:
        mask, added = stack.pop()
        for i in poset.minimal_absent_boxes(mask):
            bit = 1 << i
            if added & (poset.below[i] | poset.above[i]):
                continue
            grown = mask | bit
            if grown not in results:
                results.add(grown)
                stack.append((grown, added | bit))
    shapes = [Shape(poset, m) for m in results]
    shapes.sort(key=lambda s: (s.size, s.row_lengths))
    return shapes


def shape_from_json(data: dict) -> Shape:
    poset = build_poset(PosetFamily(data["family"], tuple(data["params"])))
    return poset.shape(data["rows"])


def shape_to_json(shape: Shape) -> dict:
    fam = shape.poset.family
    return {
        "family": fam.kind,
        "params": list(fam.params),
        "rows": list(shape.row_lengths),
    }


def shape_json_literal(shape: Shape) -> str:
    return json.dumps(shape_to_json(shape), sort_keys=True)
