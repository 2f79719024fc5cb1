"""Type A simple Lie algebras in matrix form and their finite-dimensional modules.

``sl_{l+1}`` is realized by traceless ``(l+1) x (l+1)`` rational matrices with
the trace form, so every root has square length 2.  Weights are integer
tuples in the fundamental-weight basis; roots are integer tuples in the
simple-root basis.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, List, Tuple

from .linalg import EchelonBasis, axpy

Matrix = Tuple[Tuple[Fraction, ...], ...]
Weight = Tuple[int, ...]


def _unit(n: int, i: int, j: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n)
    )


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def _trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


@dataclass(frozen=True, eq=False)
class SimpleAlgebra:
    """``sl_{rank+1}`` with an ordered basis.

    The basis is: positive root vectors ``E_ij`` (i < j, ordered by height
    then row), the simple coroots ``h_1..h_l``, then the negative root
    vectors in the same order.  ``roots[k]`` is the root of basis element
    ``k`` in simple-root coordinates (zero tuple for Cartan elements).
    """

    rank: int
    basis: Tuple[Matrix, ...]
    roots: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    positive_roots: Tuple[Tuple[int, ...], ...]
    root_index: Dict[Tuple[int, ...], int] = field(repr=False)
    cartan_indices: Tuple[int, ...] = field(repr=False)
    form: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    structure: Dict[Tuple[int, int], Dict[int, Fraction]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.rank + 1

    def e(self, i: int) -> int:
        """Index of the Chevalley generator ``e_i`` (1-based ``i``)."""
        return self.root_index[_simple(self.rank, i)]

    def f(self, i: int) -> int:
        return self.root_index[tuple(-c for c in _simple(self.rank, i))]

    def h(self, i: int) -> int:
        return self.cartan_indices[i - 1]

    def bracket(self, a: int, b: int) -> Dict[int, Fraction]:
        return self.structure[(a, b)]

    def decompose(self, mat: Matrix) -> Dict[int, Fraction]:
        """Coordinates of a traceless matrix in the ordered basis."""
        n = self.n
        if _trace(mat) != 0:
            raise ValueError("matrix is not traceless")
        out: Dict[int, Fraction] = {}
        for i in range(n):
            for j in range(n):
                if i != j and mat[i][j]:
                    out[self.root_index[_root_of_unit(self.rank, i, j)]] = mat[i][j]
        running = Fraction(0)
        for k in range(self.rank):
            running += mat[k][k]
            if running:
                out[self.cartan_indices[k]] = running
        return out

    def compose(self, coords: Dict[int, Fraction]) -> Matrix:
        n = self.n
        acc = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        for k, c in coords.items():
            acc = tuple(
                tuple(x + c * y for x, y in zip(ra, rb)) for ra, rb in zip(acc, self.basis[k])
            )
        return acc

    def killing_pairing(self, a: int, b: int) -> Fraction:
        return self.form[a][b]

    def root_pairing(self, alpha, beta) -> Fraction:
        """``<alpha, beta>`` for roots given in simple-root coordinates."""
        cm = cartan_matrix(self.rank)
        return Fraction(
            sum(alpha[i] * cm[i][j] * beta[j] for i in range(self.rank) for j in range(self.rank))
        )


def _simple(rank: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def _root_of_unit(rank: int, i: int, j: int) -> Tuple[int, ...]:
    # E_ij has root eps_i - eps_j
    lo, hi = min(i, j), max(i, j)
    sign = 1 if i < j else -1
    return tuple(sign if lo <= k < hi else 0 for k in range(rank))


@functools.lru_cache(maxsize=None)
def cartan_matrix(rank: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )


@functools.lru_cache(maxsize=None)
def build_type_a(rank: int) -> SimpleAlgebra:
    if rank < 1:
        raise ValueError("rank must be positive")
    n = rank + 1
    pos = sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p[0]))
    basis: List[Matrix] = []
    labels: List[str] = []
    roots: List[Tuple[int, ...]] = []
    for i, j in pos:
        basis.append(_unit(n, i, j))
        labels.append(f"E{i + 1}{j + 1}")
        roots.append(_root_of_unit(rank, i, j))
    cartan = []
    for k in range(rank):
        basis.append(_mat_sub(_unit(n, k, k), _unit(n, k + 1, k + 1)))
        labels.append(f"h{k + 1}")
        roots.append(tuple(0 for _ in range(rank)))
        cartan.append(len(basis) - 1)
    for i, j in pos:
        basis.append(_unit(n, j, i))
        labels.append(f"E{j + 1}{i + 1}")
        roots.append(_root_of_unit(rank, j, i))
    if rank == 1:
        labels = ["e", "h", "f"]
    root_index = {r: k for k, r in enumerate(roots) if any(r)}
    form = tuple(
        tuple(_trace(_mat_mul(a, b)) for b in basis) for a in basis
    )
    alg = SimpleAlgebra(
        rank=rank,
        basis=tuple(basis),
        roots=tuple(roots),
        labels=tuple(labels),
        positive_roots=tuple(_root_of_unit(rank, i, j) for i, j in pos),
        root_index=root_index,
        cartan_indices=tuple(cartan),
        form=form,
        structure={},
    )
    for a, b in itertools.product(range(len(basis)), repeat=2):
        comm = _mat_sub(_mat_mul(basis[a], basis[b]), _mat_mul(basis[b], basis[a]))
        alg.structure[(a, b)] = alg.decompose(comm)
    return alg


def coroot(alg: SimpleAlgebra, alpha) -> Dict[int, Fraction]:
    """Coroot ``2 alpha / <alpha, alpha>`` as a Cartan element (basis coordinates)."""
    alpha = tuple(alpha)
    if alpha not in alg.root_index:
        raise ValueError(f"{alpha} is not a root")
    norm = alg.root_pairing(alpha, alpha)
    # alpha = sum c_i alpha_i  ->  alpha^vee = sum c_i (2/<alpha,alpha>) (<alpha_i,alpha_i>/2) h_i
    out = {}
    for i, c in enumerate(alpha):
        if c:
            out[alg.cartan_indices[i]] = Fraction(2 * c) / norm
    return out


def sl2_triple(alg: SimpleAlgebra, alpha) -> Tuple[int, Dict[int, Fraction], int]:
    """``(x_alpha^+, alpha^vee, x_alpha^-)`` for a positive root ``alpha``."""
    alpha = tuple(alpha)
    neg = tuple(-c for c in alpha)
    if alpha not in alg.positive_roots:
        raise ValueError(f"{alpha} is not a positive root")
    return alg.root_index[alpha], coroot(alg, alpha), alg.root_index[neg]


@dataclass(frozen=True)
class DominantWeight:
    """Values ``lambda(alpha_i^vee)`` plus the affine extension data."""

    coords: Tuple[int, ...]
    d0_value: Fraction = Fraction(0)
    k0_value: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "d0_value", Fraction(self.d0_value))
        object.__setattr__(self, "k0_value", Fraction(self.k0_value))
        if any(c < 0 for c in self.coords):
            raise ValueError("dominant weight needs non-negative coordinates")

    def pairing(self, alpha) -> int:
        """``lambda(alpha^vee)`` for a root in simple-root coordinates (type A)."""
        return sum(c * a for c, a in zip(self.coords, alpha))

    def is_zero(self) -> bool:
        return not any(self.coords) and not self.d0_value and not self.k0_value


@dataclass(eq=False)
class FiniteModule:
    """Finite-dimensional module with a weight basis.

    ``action[x]`` lists, for each basis column ``j``, the sparse image
    ``x . b_j`` as ``{row: coefficient}``; ``x`` runs over the algebra basis.
    """

    algebra: SimpleAlgebra
    dimension: int
    weight_of_basis: List[Weight]
    action: Dict[int, List[Dict[int, Fraction]]]
    highest_index: int = 0

    def act(self, x: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        cols = self.action[x]
        out: Dict[int, Fraction] = {}
        for j, c in vec.items():
            axpy(out, cols[j], c)
        return out

    def act_element(self, coords: Dict[int, Fraction], vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for x, c in coords.items():
            axpy(out, self.act(x, vec), c)
        return out

    def matrix(self, x: int) -> List[List[Fraction]]:
        m = [[Fraction(0)] * self.dimension for _ in range(self.dimension)]
        for j, col in enumerate(self.action[x]):
            for i, c in col.items():
                m[i][j] = c
        return m

    def weight_multiplicities(self) -> Dict[Weight, int]:
        out: Dict[Weight, int] = {}
        for w in self.weight_of_basis:
            out[w] = out.get(w, 0) + 1
        return out


def sl2_module(d: int) -> FiniteModule:
    """The irreducible ``d``-dimensional ``sl_2``-module in its weight basis."""
    if d < 1:
        raise ValueError("dimension must be positive")
    alg = build_type_a(1)
    e, h, f = alg.e(1), alg.h(1), alg.f(1)
    top = d - 1
    action = {
        h: [{j: Fraction(top - 2 * j)} if top - 2 * j else {} for j in range(d)],
        f: [{j + 1: Fraction(j + 1)} if j + 1 < d else {} for j in range(d)],
        e: [{j - 1: Fraction(d - j)} if j > 0 else {} for j in range(d)],
    }
    return FiniteModule(alg, d, [(top - 2 * j,) for j in range(d)], action, 0)


def weyl_dimension(alg: SimpleAlgebra, lam: DominantWeight) -> int:
    num = Fraction(1)
    for alpha in alg.positive_roots:
        # <rho, alpha^vee> is the height; <lambda + rho, alpha^vee> adds lambda's pairing
        height = sum(alpha)
        num *= Fraction(lam.pairing(alpha) + height, height)
    assert num.denominator == 1
    return int(num)


# -- lowering closure inside a tensor product of symmetric powers of fundamentals --


def _wedge_basis(n: int, k: int):
    return list(itertools.combinations(range(n), k))


def _wedge_act(a: int, b: int, subset: Tuple[int, ...]):
    """``E_ab`` on ``e_{s1} ^ ... ^ e_{sk}``; returns (sign, new subset) or None."""
    if b not in subset or (a != b and a in subset):
        return None
    if a == b:
        return 1, subset
    lst = [a if s == b else s for s in subset]
    # sign of sorting permutation
    sign = 1
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return sign, tuple(sorted(lst))


def _matrix_unit_terms(mat: Matrix):
    n = len(mat)
    return [(i, j, mat[i][j]) for i in range(n) for j in range(n) if mat[i][j]]


def _act_on_key(alg: SimpleAlgebra, x: int, key) -> Dict:
    """Derivation action of basis element ``x`` on a monomial key.

    A key is a tuple over fundamental slots ``k = 1..l``; slot ``k`` is a
    sorted tuple of wedge-basis subsets (a monomial in ``Sym(Lambda^k)``).
    """
    out: Dict = {}
    terms = _matrix_unit_terms(alg.basis[x])
    for slot, mono in enumerate(key):
        for pos in range(len(mono)):
            if pos > 0 and mono[pos] == mono[pos - 1]:
                continue
            mult = mono.count(mono[pos])
            rest = mono[:pos] + mono[pos + 1:]
            for a, b, c in terms:
                r = _wedge_act(a, b, mono[pos])
                if r is None:
                    continue
                sign, new = r
                new_mono = tuple(sorted(rest + (new,)))
                new_key = key[:slot] + (new_mono,) + key[slot + 1:]
                nv = out.get(new_key, 0) + c * sign * mult
                if nv:
                    out[new_key] = nv
                else:
                    out.pop(new_key, None)
    return out


def _act_on_vec(alg: SimpleAlgebra, x: int, vec: Dict, cache: Dict) -> Dict:
    out: Dict = {}
    for key, c in vec.items():
        img = cache.get((x, key))
        if img is None:
            img = _act_on_key(alg, x, key)
            cache[(x, key)] = img
        axpy(out, img, c)
    return out


def _key_weight(alg: SimpleAlgebra, key) -> Weight:
    n = alg.n
    eps = [0] * n
    for mono in key:
        for subset in mono:
            for s in subset:
                eps[s] += 1
    # fundamental coordinates: lambda(h_i) = eps_i - eps_{i+1}
    return tuple(eps[i] - eps[i + 1] for i in range(alg.rank))


@functools.lru_cache(maxsize=None)
def irreducible_module(alg: SimpleAlgebra, lam: DominantWeight) -> FiniteModule:
    """``V(lambda)`` as the cyclic span of a highest-weight vector.

    The ambient space is ``(x)_k Sym^{lambda_k}(Lambda^k C^{l+1})``; the
    highest-weight vector is the product of the top wedges.
    """
    if len(lam.coords) != alg.rank:
        raise ValueError("weight has the wrong rank")
    top_key = tuple(
        tuple([tuple(range(k + 1))] * lam.coords[k]) for k in range(alg.rank)
    )
    cache: Dict = {}
    spaces: Dict[Weight, EchelonBasis] = {}
    order: List[Tuple[Weight, int]] = []
    vectors: List[Dict] = []
    start = {top_key: Fraction(1)}
    w0 = _key_weight(alg, top_key)
    spaces[w0] = EchelonBasis()
    spaces[w0].add(start)
    order.append((w0, 0))
    vectors.append(start)
    queue = deque([0])
    lowering = [alg.f(i) for i in range(1, alg.rank + 1)]
    while queue:
        idx = queue.popleft()
        vec = vectors[idx]
        w = order[idx][0]
        for i, fi in enumerate(lowering):
            img = _act_on_vec(alg, fi, vec, cache)
            if not img:
                continue
            cm = cartan_matrix(alg.rank)
            nw = tuple(w[k] - cm[i][k] for k in range(alg.rank))
            space = spaces.setdefault(nw, EchelonBasis())
            if space.add(img):
                order.append((nw, len(space) - 1))
                vectors.append(img)
                queue.append(len(vectors) - 1)
    index_of = {(w, j): k for k, (w, j) in enumerate(order)}
    action: Dict[int, List[Dict[int, Fraction]]] = {}
    cm = cartan_matrix(alg.rank)
    for x in range(alg.dim):
        root = alg.roots[x]
        cols = []
        for k, vec in enumerate(vectors):
            img = _act_on_vec(alg, x, vec, cache)
            if not img:
                cols.append({})
                continue
            w = order[k][0]
            shift = tuple(sum(root[i] * cm[i][c] for i in range(alg.rank)) for c in range(alg.rank))
            nw = tuple(a + b for a, b in zip(w, shift))
            coords = spaces[nw].coordinates(img)
            cols.append({index_of[(nw, j)]: c for j, c in coords.items()})
        action[x] = cols
    return FiniteModule(alg, len(vectors), [w for w, _ in order], action, 0)


def root_to_weight(alg: SimpleAlgebra, root) -> Weight:
    cm = cartan_matrix(alg.rank)
    return tuple(sum(root[i] * cm[i][c] for i in range(alg.rank)) for c in range(alg.rank))


def weight_pairing(rank: int, a, b) -> Fraction:
    """``<a, b>`` for weights in fundamental coordinates (inverse Cartan matrix of A_l)."""
    n = rank + 1
    total = Fraction(0)
    for i in range(rank):
        for j in range(rank):
            if a[i] and b[j]:
                total += a[i] * b[j] * Fraction(min(i + 1, j + 1) * (n - max(i + 1, j + 1)), n)
    return total


def freudenthal_multiplicities(alg: SimpleAlgebra, lam: DominantWeight) -> Dict[Weight, int]:
    """Weight multiplicities of ``V(lambda)`` by Freudenthal's recursion."""
    rank = alg.rank
    lam_w = tuple(lam.coords)
    rho = tuple(1 for _ in range(rank))
    pos_w = [root_to_weight(alg, a) for a in alg.positive_roots]

    def add(a, b, k=1):
        return tuple(x + k * y for x, y in zip(a, b))

    norm_top = weight_pairing(rank, add(lam_w, rho), add(lam_w, rho))
    mult: Dict[Weight, int] = {lam_w: 1}
    level = [lam_w]
    simple_w = [root_to_weight(alg, _simple(rank, i)) for i in range(1, rank + 1)]
    while level:
        nxt = set()
        for w in level:
            for s in simple_w:
                nxt.add(add(w, s, -1))
        new_level = []
        for mu in sorted(nxt):
            if mu in mult:
                continue
            denom = norm_top - weight_pairing(rank, add(mu, rho), add(mu, rho))
            total = Fraction(0)
            for a in pos_w:
                k = 1
                while True:
                    up = add(mu, a, k)
                    if up not in mult:
                        # multiplicities vanish beyond the first missing step in a string
                        if k > _string_bound(lam_w, rank):
                            break
                        k += 1
                        continue
                    total += mult[up] * weight_pairing(rank, up, a)
                    k += 1
            if denom <= 0:
                continue
            m = 2 * total / denom
            assert m.denominator == 1
            if m > 0:
                mult[mu] = int(m)
                new_level.append(mu)
        level = new_level
    return mult


def _string_bound(lam_w, rank) -> int:
    return 2 * sum(lam_w) + 2


def reflect(alg: SimpleAlgebra, weight: Weight, i: int) -> Weight:
    """Simple reflection ``s_i`` (1-based) on a weight in fundamental coordinates."""
    s = root_to_weight(alg, _simple(alg.rank, i))
    c = weight[i - 1]
    return tuple(w - c * a for w, a in zip(weight, s))


def dominant_weights_up_to(alg: SimpleAlgebra, max_dim: int) -> List[DominantWeight]:
    """All dominant weights whose Weyl dimension is at most ``max_dim``."""
    out = []
    bound = max_dim
    for coords in itertools.product(range(bound), repeat=alg.rank):
        lam = DominantWeight(coords)
        if weyl_dimension(alg, lam) <= max_dim:
            out.append(lam)
    return out
