"""Root systems and Weyl groups for independent verification of the posets.

Roots are integer coefficient vectors over the simple roots; the pairing
uses symmetrized Cartan data, so everything is exact integer arithmetic.
Weyl group elements act as signed permutations of the positive roots,
which keeps equality, length, and inversion sets uniform across types.

The box posets built in :mod:`kjdt.poset` are validated here from
scratch: the set of roots on which the marked simple root has
coefficient one is ordered by root-difference positivity and matched
against the grid poset by a backtracking order-isomorphism search.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
import random

from .errors import PosetError
from .poset import MinusculePoset, PosetFamily, Shape, bits, build_poset

Coeffs = tuple[int, ...]


def _cartan(kind: str, n: int) -> tuple[list[list[int]], list[int]]:
    """Cartan data ``M[i][j] = <alpha_i, alpha_j-coroot>`` and half norms."""
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        m[i][j] = a
        m[j][i] = b

    d = [1] * n
    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind == "B":  # last simple root short
        for i in range(n - 2):
            link(i, i + 1)
        if n >= 2:
            link(n - 2, n - 1, -2, -1)
        d = [2] * (n - 1) + [1]
    elif kind == "C":  # last simple root long
        for i in range(n - 2):
            link(i, i + 1)
        if n >= 2:
            link(n - 2, n - 1, -1, -2)
        d = [1] * (n - 1) + [2]
    elif kind == "D":
        if n < 3:
            raise PosetError("type D needs rank >= 3")
        for i in range(n - 3):
            link(i, i + 1)
        link(n - 3, n - 2)
        link(n - 3, n - 1)
    elif kind in {"E6", "E7"}:
        rank = 6 if kind == "E6" else 7
        if n != rank:
            raise PosetError(f"type {kind} has rank {rank}")
        chain = [0, 2, 3, 4, 5, 6][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    else:
        raise PosetError(f"unknown root system type {kind!r}")
    return m, d


class RootSystem:
    """Finite root system with positive roots as simple-root coefficient vectors."""

    def __init__(self, kind: str, rank: int):
        self.kind = kind
        self.rank = rank
        self.cartan, self.half_norm = _cartan(kind, rank)
        self.positive_roots: list[Coeffs] = self._close()
        self.index: dict[Coeffs, int] = {
            r: i for i, r in enumerate(self.positive_roots)
        }
        self.nroots = len(self.positive_roots)
        self._reflections: dict[tuple, int] | None = None

    def __repr__(self):
        return f"RootSystem({self.kind}{self.rank}, {self.nroots} positive roots)"

    def _close(self) -> list[Coeffs]:
        simple = [
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        ]
        known = set(simple)
        by_height = {1: list(simple)}
        h = 1
        while by_height.get(h):
            nxt = []
            for beta in by_height[h]:
                for i in range(self.rank):
                    pairing = sum(
                        c * self.cartan[j][i] for j, c in enumerate(beta) if c
                    )
                    down = 0
                    probe = list(beta)
                    while True:
                        probe[i] -= 1
                        if any(x < 0 for x in probe) or tuple(probe) not in known:
                            break
                        down += 1
                    if down - pairing > 0:
                        up = list(beta)
                        up[i] += 1
                        cand = tuple(up)
                        if cand not in known:
                            known.add(cand)
                            nxt.append(cand)
            h += 1
            if nxt:
                by_height[h] = nxt
        roots = sorted(known, key=lambda r: (sum(r), r))
        return roots

    # -- forms ------------------------------------------------------------

    def bilinear(self, a: Coeffs, b: Coeffs) -> int:
        """Symmetrized invariant form (scaled to integers)."""
        return sum(
            a[i] * b[j] * self.half_norm[j] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        )

    def pair_coroot(self, beta: Coeffs, alpha: Coeffs) -> int:
        """<beta, alpha-coroot> = 2 (beta, alpha) / (alpha, alpha)."""
        num = 2 * self.bilinear(beta, alpha)
        den = self.bilinear(alpha, alpha)
        q, r = divmod(num, den)
        if r:
            raise PosetError("non-integral coroot pairing")
        return q

    def reflect(self, beta: Coeffs, alpha: Coeffs) -> Coeffs:
        k = self.pair_coroot(beta, alpha)
        return tuple(b - k * a for b, a in zip(beta, alpha))

    def signed_index(self, root: Coeffs) -> int:
        """Index of a root among positive roots; negative means -root."""
        if root in self.index:
            return self.index[root] + 1
        neg = tuple(-x for x in root)
        if neg in self.index:
            return -(self.index[neg] + 1)
        raise PosetError(f"not a root: {root}")

    def dual(self) -> "RootSystem":
        """The dual root system (transposed Cartan matrix)."""
        dual_kind = {"B": "C", "C": "B"}.get(self.kind, self.kind)
        return root_system(dual_kind, self.rank)

    # -- Weyl elements ------------------------------------------------------

    def identity(self) -> "WeylElement":
        return WeylElement(self, tuple(range(1, self.nroots + 1)))

    def reflection(self, alpha: Coeffs) -> "WeylElement":
        images = tuple(
            self.signed_index(self.reflect(r, alpha)) for r in self.positive_roots
        )
        return WeylElement(self, images)

    def simple_reflection(self, i: int) -> "WeylElement":
        if not hasattr(self, "_simple_cache"):
            self._simple_cache = {}
        if i not in self._simple_cache:
            alpha = tuple(1 if j == i else 0 for j in range(self.rank))
            self._simple_cache[i] = self.reflection(alpha)
        return self._simple_cache[i]

    def reflections(self) -> dict[tuple, Coeffs]:
        if self._reflections is None:
            self._reflections = {
                self.reflection(alpha).images: alpha for alpha in self.positive_roots
            }
        return self._reflections

    def longest_element(self, avoid: int | None = None) -> "WeylElement":
        """Longest element of W, or of the parabolic W_P avoiding one node."""
        w = self.identity()
        moved = True
        while moved:
            moved = False
            for i in range(self.rank):
                if i == avoid:
                    continue
                alpha = tuple(1 if j == i else 0 for j in range(self.rank))
                if w.act(alpha)[0] > 0:
                    w = w * self.simple_reflection(i)
                    moved = True
        return w


@lru_cache(maxsize=None)
def root_system(kind: str, rank: int) -> RootSystem:
    return RootSystem(kind, rank)


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element as a signed permutation of the positive roots."""

    system: RootSystem
    images: tuple[int, ...]  # images[i] = +-(j+1): root_i -> +-root_j

    def act_index(self, i: int) -> int:
        return self.images[i]

    def act(self, root: Coeffs) -> tuple[int, int]:
        """Image of +-root as (sign, positive root index)."""
        si = self.system.signed_index(root)
        im = self.images[abs(si) - 1]
        sign = 1 if (si > 0) == (im > 0) else -1
        return sign, abs(im) - 1

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """(self * other) acts by other first, then self."""
        out = []
        for i in range(len(self.images)):
            j = other.images[i]
            k = self.images[abs(j) - 1]
            out.append(k if j > 0 else -k)
        return WeylElement(self.system, tuple(out))

    def inverse(self) -> "WeylElement":
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[abs(j) - 1] = (i + 1) if j > 0 else -(i + 1)
        return WeylElement(self.system, tuple(out))

    def length(self) -> int:
        return sum(1 for j in self.images if j < 0)

    def inversion_set(self) -> set[int]:
        """Positive-root indices sent to negative roots."""
        return {i for i, j in enumerate(self.images) if j < 0}

    def is_identity(self) -> bool:
        return all(j == i + 1 for i, j in enumerate(self.images))


# -- the marked-node poset ----------------------------------------------------

def is_cominuscule(system: RootSystem, node: int) -> bool:
    return all(abs(r[node]) <= 1 for r in system.positive_roots)


def is_minuscule(system: RootSystem, node: int) -> bool:
    return is_cominuscule(system.dual(), node)


def cominuscule_realization(system: RootSystem, node: int) -> tuple[RootSystem, int]:
    """Pass to the dual root system when the node is minuscule only."""
    if is_cominuscule(system, node):
        return system, node
    if is_minuscule(system, node):
        return system.dual(), node
    raise PosetError(
        f"node {node + 1} of {system.kind}{system.rank} is neither "
        "cominuscule nor minuscule"
    )


def lambda_from_root_data(system: RootSystem, node: int) -> list[Coeffs]:
    """Roots with coefficient one on the marked node, in root order."""
    system, node = cominuscule_realization(system, node)
    return [r for r in system.positive_roots if r[node] == 1]


def root_order_leq(a: Coeffs, b: Coeffs) -> bool:
    return all(x <= y for x, y in zip(a, b))


def grid_family_for(kind: str, rank: int, node: int) -> PosetFamily:
    """The Table-row family matching a marked Dynkin node (1-based node)."""
    if kind == "A":
        return PosetFamily("a", (node, rank + 1 - node))
    if kind == "B":
        if node == 1:
            return PosetFamily("qodd", (rank,))
        if node == rank:
            return PosetFamily("lg", (rank,))
    if kind == "C":
        if node == 1:
            return PosetFamily("qodd", (rank,))
        if node == rank:
            return PosetFamily("lg", (rank,))
    if kind == "D":
        if node == 1:
            return PosetFamily("qeven", (rank - 1,))
        if node in {rank - 1, rank}:
            return PosetFamily("og", (rank,))
    if kind == "E6" and node in {1, 6}:
        return PosetFamily("e6")
    if kind == "E7" and node == 7:
        return PosetFamily("e7")
    raise PosetError(f"no (co)minuscule grid family for {kind}{rank} node {node}")


def verify_poset_embedding(
    system: RootSystem, node: int, poset: MinusculePoset
) -> dict:
    """Search for an order isomorphism between the root poset and the grid.

    Returns a report with ``pass`` and either the isomorphism (as a list
    of root-to-box pairs) or a witness explaining the failure.
    """
    roots = lambda_from_root_data(system, node)
    report: dict = {"check": "poset_embedding", "pass": False}
    if len(roots) != poset.n:
        report["witness"] = f"size mismatch: {len(roots)} roots vs {poset.n} boxes"
        return report
    order = [[root_order_leq(a, b) for b in roots] for a in roots]
    base = min(sum(r) for r in roots)
    heights = [sum(r) - base + 1 for r in roots]
    if sorted(heights) != sorted(poset.heights):
        report["witness"] = "height multisets differ"
        return report
    by_height: dict[int, list[int]] = {}
    for i, h in enumerate(heights):
        by_height.setdefault(h, []).append(i)
    box_by_height: dict[int, list[int]] = {}
    for i, h in enumerate(poset.heights):
        box_by_height.setdefault(h, []).append(i)

    assign: dict[int, int] = {}

    def compatible(ri: int, bi: int) -> bool:
        for rj, bj in assign.items():
            if order[rj][ri] != poset.leq(bj, bi):
                return False
            if order[ri][rj] != poset.leq(bi, bj):
                return False
        return True

    levels = sorted(by_height)

    def backtrack(li: int) -> bool:
        if li == len(levels):
            return True
        level = levels[li]
        rs = by_height[level]
        for perm in permutations(box_by_height[level]):
            ok = True
            saved = []
            for ri, bi in zip(rs, perm):
                if not compatible(ri, bi):
                    ok = False
                    break
                assign[ri] = bi
                saved.append(ri)
            if ok and backtrack(li + 1):
                return True
            for ri in saved:
                assign.pop(ri, None)
        return False

    if backtrack(0):
        report["pass"] = True
        report["isomorphism"] = [
            [list(roots[ri]), list(poset.boxes[bi])] for ri, bi in sorted(assign.items())
        ]
        return report
    report["witness"] = "no order isomorphism found"
    return report


class MarkedRootData:
    """Root system with a marked cominuscule node and its grid poset."""

    def __init__(self, kind: str, rank: int, node: int):
        base = root_system(kind, rank)
        self.node1 = node  # 1-based
        self.system, self.node = cominuscule_realization(base, node - 1)
        self.poset = build_poset(grid_family_for(kind, rank, node))
        self.lambda_roots = lambda_from_root_data(self.system, self.node)
        report = verify_poset_embedding(self.system, self.node, self.poset)
        if not report["pass"]:
            raise PosetError(f"poset embedding failed: {report.get('witness')}")
        self.box_to_root: dict[int, Coeffs] = {}
        for root, box in report["isomorphism"]:
            self.box_to_root[self.poset.index[tuple(box)]] = tuple(root)
        self.w0 = self.system.longest_element()
        self.wx = self.system.longest_element(avoid=self.node)

    def weyl_of_shape(self, shape: Shape) -> WeylElement:
        """Product of box reflections along any linear extension."""
        w = self.system.identity()
        for i in bits(shape.mask):  # row-major is a linear extension
            w = w * self.system.reflection(self.box_to_root[i])
        return w

    def shape_root_indices(self, shape: Shape) -> set[int]:
        return {
            self.system.index[self.box_to_root[i]] for i in bits(shape.mask)
        }

    def in_wp(self, w: WeylElement) -> bool:
        """Minimal coset representative test: w sends other simples positive."""
        for i in range(self.system.rank):
            if i == self.node:
                continue
            alpha = tuple(1 if j == i else 0 for j in range(self.system.rank))
            if w.act(alpha)[0] < 0:
                return False
        return True

    def box_label(self, i: int) -> WeylElement:
        """Heap label of a box: the simple reflection of its one-box skew."""
        below = self.poset.below[i]
        lam = Shape(self.poset, below)
        mu = Shape(self.poset, below & ~(1 << i))
        return self.weyl_of_shape(lam) * self.weyl_of_shape(mu).inverse()


# -- the verification suite ----------------------------------------------------

def check_inversion_sets(data: MarkedRootData, shapes=None) -> dict:
    """For every straight shape: w is a minimal representative and I(w) = shape."""
    from .poset import enumerate_shapes

    shapes = shapes if shapes is not None else enumerate_shapes(data.poset)
    failures = []
    for shape in shapes:
        w = data.weyl_of_shape(shape)
        ok = data.in_wp(w) and w.inversion_set() == data.shape_root_indices(shape)
        ok = ok and w.length() == shape.size
        if not ok:
            failures.append(shape.literal())
    return {
        "check": "inversion_sets",
        "shapes": len(shapes),
        "pass": not failures,
        "failures": failures,
    }


def check_bruhat_containment(data: MarkedRootData, shapes=None) -> dict:
    """Covering Bruhat order matches containment of shapes."""
    from .poset import enumerate_shapes

    shapes = shapes if shapes is not None else enumerate_shapes(data.poset)
    refl = data.system.reflections()
    weyl = {s.mask: data.weyl_of_shape(s) for s in shapes}
    failures = []
    for mu in shapes:
        wmu_inv = weyl[mu.mask].inverse()
        for lam in shapes:
            if lam.size != mu.size + 1:
                continue
            cover = (wmu_inv * weyl[lam.mask]).images in refl
            if cover != (mu.mask | lam.mask == lam.mask):
                failures.append((mu.literal(), lam.literal()))
    return {"check": "bruhat", "pass": not failures, "failures": failures}


def check_poincare_duality(data: MarkedRootData, shapes=None) -> dict:
    """w of the dual shape equals w0 * w * wX."""
    from .poset import enumerate_shapes

    shapes = shapes if shapes is not None else enumerate_shapes(data.poset)
    failures = []
    for lam in shapes:
        lhs = data.weyl_of_shape(lam.dual())
        rhs = data.w0 * data.weyl_of_shape(lam) * data.wx
        if lhs != rhs:
            failures.append(lam.literal())
    return {"check": "poincare", "pass": not failures, "failures": failures}


def check_incomparable_orthogonal(data: MarkedRootData) -> dict:
    """Incomparable boxes carry orthogonal roots."""
    poset, system = data.poset, data.system
    failures = []
    for i in range(poset.n):
        for j in range(i + 1, poset.n):
            if not poset.comparable(i, j):
                if system.bilinear(data.box_to_root[i], data.box_to_root[j]) != 0:
                    failures.append((poset.boxes[i], poset.boxes[j]))
    return {"check": "orthogonality", "pass": not failures, "failures": failures}


def _linear_extensions(poset: MinusculePoset, mask: int, cap: int):
    """Yield up to ``cap`` linear extensions of the shape; None if truncated."""
    out = []

    def rec(remaining: int, prefix: list[int]):
        if len(out) > cap:
            return
        if not remaining:
            out.append(tuple(prefix))
            return
        for i in bits(remaining):
            if not (poset.below[i] & remaining & ~(1 << i)):
                prefix.append(i)
                rec(remaining & ~(1 << i), prefix)
                prefix.pop()
                if len(out) > cap:
                    return

    rec(mask, [])
    return out


def check_full_commutativity(
    data: MarkedRootData,
    shape: Shape,
    budget: int = 10**6,
    samples: int = 200,
    seed: int = 0,
) -> dict:
    """Every linear extension multiplies the box labels to the same reduced word.

    Exhaustive when the number of extensions fits the budget, otherwise a
    random sample of extensions is checked.
    """
    poset = data.poset
    labels = {i: data.box_label(i) for i in bits(shape.mask)}
    target = data.weyl_of_shape(shape)
    exts = _linear_extensions(poset, shape.mask, cap=budget)
    mode = "exhaustive"
    if len(exts) > budget:
        rng = random.Random(seed)
        chosen = []
        for _ in range(samples):
            remaining = shape.mask
            ext = []
            while remaining:
                minimal = [
                    i
                    for i in bits(remaining)
                    if not (poset.below[i] & remaining & ~(1 << i))
                ]
                pick = rng.choice(minimal)
                ext.append(pick)
                remaining &= ~(1 << pick)
            chosen.append(tuple(ext))
        exts = chosen
        mode = "sampled"
    failures = 0
    for ext in exts:
        w = data.system.identity()
        ok = True
        for i in ext:  # labels multiply on the left along the extension
            nxt = labels[i] * w
            if nxt.length() != w.length() + 1:
                ok = False
                break
            w = nxt
        if not ok or w != target:
            failures += 1
    return {
        "check": "full_commutativity",
        "shape": shape.literal(),
        "mode": mode,
        "extensions": len(exts),
        "pass": failures == 0,
        "failures": failures,
    }


def run_suite(kind: str, rank: int, node: int, with_bruhat: bool = True) -> dict:
    """The exhaustive per-(type, node) report used by tests and the CLI."""
    data = MarkedRootData(kind, rank, node)
    from .poset import enumerate_shapes

    shapes = enumerate_shapes(data.poset)
    checks = [
        verify_poset_embedding(data.system, data.node, data.poset),
        check_inversion_sets(data, shapes),
        check_poincare_duality(data, shapes),
        check_incomparable_orthogonal(data),
    ]
    if with_bruhat:
        checks.append(check_bruhat_containment(data, shapes))
    return {
        "type": f"{kind}{rank}",
        "node": node,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
