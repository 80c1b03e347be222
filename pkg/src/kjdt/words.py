"""Word combinatorics: reading words, K-Knuth rewriting, the Hecke monoid.

The K-Knuth relation is generated by deleting or inserting a repeated
letter, the braid move aba ~ bab, and two order-constrained commutations
of adjacent letters inside a window of three.  Equivalence of two words
is searched bidirectionally through these moves; since rewriting may
need to pass through longer words and no length bound is known, the
search is budgeted and the verdict is three-valued: ``equivalent`` with
an explicit path, ``refuted`` when a computable invariant (Hecke
permutation, longest strictly increasing or decreasing subsequence)
differs, or ``inconclusive``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

Word = tuple[int, ...]


def lis(word) -> int:
    """Length of the longest strictly increasing subsequence."""
    tails: list[int] = []
    for x in word:
        lo, hi = 0, len(tails)
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(tails):
            tails.append(x)
        else:
            tails[lo] = x
    return len(tails)


def lds(word) -> int:
    """Length of the longest strictly decreasing subsequence."""
    return lis([-x for x in word])


def reverse_word(word) -> Word:
    return tuple(reversed(word))


def doubled_word(word) -> Word:
    """The palindromic composition: reverse(u) followed by u."""
    return tuple(reversed(word)) + tuple(word)


# -- permutations -----------------------------------------------------------

class Permutation:
    """Finite-support bijection of the integers, stored on a tight window.

    ``window`` is the first moved point minus one; ``images`` lists the
    values at window+1, ..., window+len(images).  Everything outside is
    fixed.
    """

    __slots__ = ("window", "images")

    def __init__(self, window: int, images: tuple[int, ...]):
        lo, hi = 0, len(images)
        while lo < hi and images[lo] == window + lo + 1:
            lo += 1
        while hi > lo and images[hi - 1] == window + hi:
            hi -= 1
        self.window = window + lo if hi > lo else 0
        self.images = tuple(images[lo:hi])

    @classmethod
    def identity(cls) -> "Permutation":
        return cls(0, ())

    @classmethod
    def transposition(cls, i: int) -> "Permutation":
        """The simple transposition s_i swapping i and i+1."""
        return cls(i - 1, (i + 1, i))

    @classmethod
    def from_one_line(cls, images, start: int = 1) -> "Permutation":
        return cls(start - 1, tuple(images))

    def __call__(self, x: int) -> int:
        k = x - self.window - 1
        if 0 <= k < len(self.images):
            return self.images[k]
        return x

    def support(self) -> tuple[int, int]:
        """Smallest interval [lo, hi] outside of which the map is the identity."""
        if not self.images:
            return (1, 0)
        return (self.window + 1, self.window + len(self.images))

    def is_identity(self) -> bool:
        return not self.images

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(x) = self(other(x))."""
        if not isinstance(other, Permutation):
            return NotImplemented
        lo = min(self.window, other.window)
        hi = max(self.window + len(self.images), other.window + len(other.images))
        return Permutation(lo, tuple(self(other(x)) for x in range(lo + 1, hi + 1)))

    def inverse(self) -> "Permutation":
        lo, hi = self.window + 1, self.window + len(self.images)
        inv = {self(x): x for x in range(lo, hi + 1)}
        return Permutation(self.window, tuple(inv[x] for x in range(lo, hi + 1)))

    def length(self) -> int:
        """Coxeter length: the number of inversions."""
        im = self.images
        return sum(
            1
            for i in range(len(im))
            for j in range(i + 1, len(im))
            if im[i] > im[j]
        )

    def __eq__(self, other):
        return (
            isinstance(other, Permutation)
            and self.window == other.window
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.window, self.images))

    def __repr__(self):
        if not self.images:
            return "Permutation(id)"
        return f"Permutation({self.window}:{list(self.images)})"

    def one_line(self) -> str:
        return f"{self.window}:[{','.join(str(x) for x in self.images)}]"


def hecke_mul_s(u: Permutation, i: int) -> Permutation:
    """Hecke product u . s_i: absorb the letter if it would shorten u."""
    if u(i) < u(i + 1):
        return u * Permutation.transposition(i)
    return u


def reduced_word(w: Permutation) -> Word:
    """One reduced word for ``w`` (peeled off right descents)."""
    word: list[int] = []
    while not w.is_identity():
        lo, hi = w.support()
        for i in range(lo, hi):
            if w(i) > w(i + 1):
                word.append(i)
                w = w * Permutation.transposition(i)
                break
    return tuple(reversed(word))


def hecke_product(u: Permutation, v: Permutation) -> Permutation:
    """Associative monoid product on permutations."""
    for i in reduced_word(v):
        u = hecke_mul_s(u, i)
    return u


def is_reduced_product(u: Permutation, v: Permutation) -> bool:
    return hecke_product(u, v).length() == u.length() + v.length()


def hecke_of_word(word) -> Permutation:
    """The Hecke permutation of a word of simple-reflection indices."""
    u = Permutation.identity()
    for a in word:
        u = hecke_mul_s(u, a)
    return u


def hecke_of_tableau(tab) -> Permutation:
    """Hecke permutation of a grid tableau (doubling a shifted one first)."""
    kind = tab.poset.family.kind
    if kind in {"shifted", "og"}:
        from .tableau import doubling

        tab = doubling(tab)
    elif kind not in {"grid", "a"}:
        raise ValueError("Hecke permutations are defined for grid tableaux")
    return hecke_of_word(tab.row_word())


def grassmannian_permutation(partition) -> Permutation:
    """The increasing-elsewhere permutation with w(i) = i + lambda_{l+1-i}."""
    lam = [p for p in partition if p > 0]
    ell = len(lam)
    if ell == 0:
        return Permutation.identity()
    head = [i + lam[ell - i] for i in range(1, ell + 1)]
    rest = [x for x in range(1, ell + lam[0] + 1) if x not in set(head)]
    return Permutation.from_one_line(head + rest)


# -- reading words -----------------------------------------------------------

def _tableau_boxes(tab) -> dict:
    if hasattr(tab, "as_dict"):
        return tab.as_dict()
    if hasattr(tab, "filling"):
        return dict(tab.filling)
    return dict(tab)


def reading_words(tab, limit: int | None = None):
    """All reading words of a (weakly) increasing hook-closed tableau.

    A reading word lists every box before all boxes north-east of it;
    a box equal to its upper neighbor comes before everything strictly
    north of it, and a box equal to its right neighbor comes before
    everything strictly east of it.  Yields distinct words lazily.
    """
    from .tableau import is_hook_closed

    filling = _tableau_boxes(tab)
    boxes = sorted(filling)
    if not is_hook_closed(boxes):
        raise ValueError("reading words need a hook-closed support")
    n = len(boxes)
    idx = {b: k for k, b in enumerate(boxes)}
    after: list[set[int]] = [set() for _ in range(n)]  # after[a]: boxes after a
    for b, k in idx.items():
        r, c = b
        for b2, k2 in idx.items():
            if b2 == b:
                continue
            r2, c2 = b2
            if r2 <= r and c2 >= c:
                after[k].add(k2)
        if (r - 1, c) in filling and filling[(r - 1, c)] == filling[b]:
            after[k].update(k2 for b2, k2 in idx.items() if b2[0] < r)
        if (r, c + 1) in filling and filling[(r, c + 1)] == filling[b]:
            after[k].update(k2 for b2, k2 in idx.items() if b2[1] > c)
    indeg = [0] * n
    for k in range(n):
        for k2 in after[k]:
            indeg[k2] += 1
    seen: set[Word] = set()
    emitted = 0

    def walk(avail: list[int], degs: list[int], prefix: list[int]):
        nonlocal emitted
        if limit is not None and emitted >= limit:
            return
        if not avail:
            word = tuple(prefix)
            if word not in seen:
                seen.add(word)
                emitted += 1
                yield word
            return
        for k in list(avail):
            nxt = [x for x in avail if x != k]
            degs2 = list(degs)
            for k2 in after[k]:
                degs2[k2] -= 1
                if degs2[k2] == 0:
                    nxt.append(k2)
            prefix.append(filling[boxes[k]])
            yield from walk(nxt, degs2, prefix)
            prefix.pop()

    start = [k for k in range(n) if indeg[k] == 0]
    yield from walk(start, indeg, [])


# -- K-Knuth rewriting --------------------------------------------------------

def kknuth_basic_moves(word, weak: bool = False, max_len: int | None = None):
    """All words one basic K-Knuth move away (both move directions)."""
    w = tuple(word)
    n = len(w)
    out = set()
    grow = max_len is None or n < max_len
    for i in range(n - 1):
        if w[i] == w[i + 1]:
            out.add(w[:i] + w[i + 1 :])  # drop a repeat
    if grow:
        for i in range(n):
            out.add(w[: i + 1] + (w[i],) + w[i + 1 :])  # insert a repeat
    for i in range(n - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        if a == c and a != b:
            out.add(w[:i] + (b, a, b) + w[i + 3 :])  # braid
        if min(b, c) < a < max(b, c):
            out.add(w[:i] + (a, c, b) + w[i + 3 :])  # swap last two
        if min(a, b) < c < max(a, b):
            out.add(w[:i] + (b, a, c) + w[i + 3 :])  # swap first two
    if weak and n >= 2 and w[0] != w[1]:
        out.add((w[1], w[0]) + w[2:])
    out.discard(w)
    return out


def _invariants(word, weak: bool):
    if weak:
        word = doubled_word(word)
    return (hecke_of_word(word), lis(word), lds(word))


@dataclass
class EquivalenceVerdict:
    """Outcome of a bounded equivalence search."""

    status: str  # "equivalent" | "refuted" | "inconclusive"
    path: list[Word] | None = None
    invariant: str | None = None
    explored: int = 0

    def __bool__(self):
        return self.status == "equivalent"


def kknuth_equiv(
    u,
    v,
    slack: int = 3,
    budget: int = 20000,
    weak: bool = False,
) -> EquivalenceVerdict:
    """Bidirectional bounded search for K-Knuth equivalence of two words.

    Intermediate words may exceed both input lengths by at most ``slack``
    letters, and at most ``budget`` words are explored in total; an
    undecided search returns ``inconclusive``.
    """
    u, v = tuple(u), tuple(v)
    if u == v:
        return EquivalenceVerdict("equivalent", path=[u])
    inv_u, inv_v = _invariants(u, weak), _invariants(v, weak)
    if inv_u != inv_v:
        names = ("hecke", "lis", "lds")
        which = next(n for n, a, b in zip(names, inv_u, inv_v) if a != b)
        if weak:
            which = f"{which} of reverse(w)+w"
        return EquivalenceVerdict("refuted", invariant=which)
    max_len = max(len(u), len(v)) + slack
    sides = ({u: None}, {v: None})  # word -> parent, per side
    frontiers = ([u], [v])
    explored = 2

    def path_through(meet: Word, fwd: dict, bwd: dict) -> list[Word]:
        left = []
        node = meet
        while node is not None:
            left.append(node)
            node = fwd[node]
        left.reverse()
        node = bwd[meet]
        while node is not None:
            left.append(node)
            node = bwd[node]
        if left and left[0] != u:
            left.reverse()
        return left

    while frontiers[0] or frontiers[1]:
        side = 0 if 0 < len(frontiers[0]) <= len(frontiers[1]) or not frontiers[1] else 1
        mine, theirs = sides[side], sides[1 - side]
        new = []
        for word in frontiers[side]:
            for nxt in kknuth_basic_moves(word, weak=weak, max_len=max_len):
                if nxt in mine:
                    continue
                mine[nxt] = word
                explored += 1
                if nxt in theirs:
                    fwd, bwd = (sides[0], sides[1]) if side == 0 else (sides[1], sides[0])
                    return EquivalenceVerdict(
                        "equivalent",
                        path=path_through(nxt, fwd, bwd),
                        explored=explored,
                    )
                new.append(nxt)
                if explored >= budget:
                    return EquivalenceVerdict("inconclusive", explored=explored)
        frontiers = (new, frontiers[1]) if side == 0 else (frontiers[0], new)
    return EquivalenceVerdict("inconclusive", explored=explored)


def weak_kknuth_equiv(u, v, slack: int = 3, budget: int = 20000) -> EquivalenceVerdict:
    """Bounded search for the weak relation (initial swaps allowed)."""
    return kknuth_equiv(u, v, slack=slack, budget=budget, weak=True)


def conjecture_search(
    max_len: int,
    max_letter: int,
    slack: int = 3,
    budget: int = 4000,
) -> dict:
    """Sweep word pairs comparing the weak relation against doubled words.

    For each pair (u, v) the weak equivalence verdict on (u, v) is
    compared with the plain verdict on (reverse(u)+u, reverse(v)+v).  A
    pair where one search proves equivalence while the other refutes it
    is a counterexample candidate; undecided pairs are tallied.
    """
    words: list[Word] = []
    for n in range(1, max_len + 1):
        words.extend(iter_product(range(1, max_letter + 1), repeat=n))
    groups: dict[tuple, list[Word]] = {}
    for w in words:
        groups.setdefault(_invariants(w, weak=True), []).append(w)
    report = {
        "pairs": 0,
        "searched": 0,
        "agree_equivalent": 0,
        "agree_refuted": 0,
        "inconclusive": 0,
        "counterexample_candidates": [],
    }
    total = len(words) * (len(words) - 1) // 2
    searched_pairs = sum(len(g) * (len(g) - 1) // 2 for g in groups.values())
    report["pairs"] = total
    report["agree_refuted"] = total - searched_pairs
    for group in groups.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                u, v = group[i], group[j]
                report["searched"] += 1
                weak_v = weak_kknuth_equiv(u, v, slack=slack, budget=budget)
                dbl_v = kknuth_equiv(
                    doubled_word(u), doubled_word(v), slack=slack, budget=budget
                )
                pair = (weak_v.status, dbl_v.status)
                if "refuted" in pair and "equivalent" in pair:
                    report["counterexample_candidates"].append((u, v, pair))
                elif pair == ("equivalent", "equivalent"):
                    report["agree_equivalent"] += 1
                elif pair == ("refuted", "refuted"):
                    report["agree_refuted"] += 1
                else:
                    report["inconclusive"] += 1
    return report
