"""Explicit slope bounds, antisymmetrization maps, and invariant checks.

The minimal height of a nonzero invariant-defined class admits an explicit
lower bound in terms of the slopes of the factor lattices:

    h_min >= - sum_i b_i mu_i - sum_{rank_i >= 3} (|b_i| / 2) ell(rank_i),

with ell(n) = log(n!) / n <= log(n), asymptotically log(n) - 1, and
equality when every twisting exponent b_i vanishes.

The correction term comes from the norms of the antisymmetrization maps
eps_w on a rank-w space.  For w = 2 the map E tensor E -> End(E) tensor det
is an isometric isomorphism (operator norm 1); for w > 2 the map
t -> sum_R sum_gamma sign(gamma) t_R x_R tensor x_gamma^dual tensor det
has operator norm exactly sqrt(w!), which `epsilon_norm_check` certifies
numerically against that bound.

Invariants of products of conjugation actions are spanned by tensor
products of slot-permutation operators; `perm_invariant_check` verifies
their equivariance and trace pairing in exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    DimensionTooLargeError,
    InputError,
    LengthMismatchError,
    NonPositiveError,
    UnsupportedSizeError,
)
from .places import LogValue, RationalLike, as_fraction

MAX_TENSOR_DIM = 4096
CONVEX_LEMMA_VARIANTS = ("log3", "log_sqrt3")


def ell(n: int) -> float:
    """log(n!) / n, the per-rank archimedean defect.

    Exact big-integer factorial, one float log; ell(2) is bit-identical to
    0.5 * log(2).

    Examples:
        >>> ell(2) == 0.5 * math.log(2)
        True
    """
    if not isinstance(n, int) or n < 1:
        raise NonPositiveError(f"ell needs a positive integer, got {n!r}")
    return math.log(math.factorial(n)) / n


def explicit_lower_bound(
    multipliers: Sequence[RationalLike],
    slopes: Sequence[LogValue],
    ranks: Sequence[int],
) -> LogValue:
    """Lower bound for the minimal height after twisting.

    multipliers are the twisting exponents b_i, slopes the factor slopes
    mu_i (exact LogValues), ranks the factor ranks.  The bound is an
    equality when all multipliers vanish.

    Examples:
        >>> explicit_lower_bound([0], [LogValue({2: 1})], [2]).is_exact_zero
        True
    """
    if not (len(multipliers) == len(slopes) == len(ranks)):
        raise LengthMismatchError("multipliers, slopes and ranks must align")
    total = LogValue.zero()
    penalty = 0.0
    for b, mu, r in zip(multipliers, slopes, ranks):
        b = as_fraction(b)
        if not isinstance(r, int) or r < 1:
            raise NonPositiveError(f"rank must be a positive integer, got {r!r}")
        total = total - mu.scaled(b)
        if r >= 3 and b != 0:
            penalty += abs(float(b)) / 2.0 * ell(r)
    return total + LogValue.from_arch(-penalty)


# ---------------------------------------------------------------------------
# antisymmetrization maps
# ---------------------------------------------------------------------------

def _multi_indices(w: int):
    return itertools.product(range(w), repeat=w)


def _pack(digits: Sequence[int], base: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * base + d
    return idx


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def epsilon_map(w: int) -> sp.csr_matrix:
    """Matrix of the antisymmetrization map on a rank-w space.

    w = 2: the 4 x 4 isometric isomorphism E tensor E -> End(E) tensor det,
    whose inverse sends phi tensor (e1 wedge e2) to
    phi(e1) tensor e2 - phi(e2) tensor e1.

    w = 3, 4: the (w^2w) x (w^w) map sending the basis tensor x_R to
    sum_gamma sign(gamma) x_R tensor x_gamma^dual (tensor the volume form);
    rows are indexed by pairs (R, gamma-image) packed base w.

    Examples:
        >>> epsilon_map(3).shape
        (729, 27)
    """
    if not isinstance(w, int) or not 2 <= w <= 4:
        raise UnsupportedSizeError(f"implemented for sizes 2 to 4, got {w!r}")
    if w == 2:
        rows = [0, 1, 2, 3]
        cols = [1, 0, 3, 2]
        vals = [1, -1, 1, -1]
        return sp.csr_matrix((vals, (rows, cols)), shape=(4, 4), dtype=np.int8)
    size = w ** w
    rows, cols, vals = [], [], []
    perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(w))]
    for r_digits in _multi_indices(w):
        col = _pack(r_digits, w)
        for p, sign in perms:
            rows.append(col * size + _pack(p, w))
            cols.append(col)
            vals.append(sign)
    return sp.csr_matrix((vals, (rows, cols)), shape=(size * size, size), dtype=np.int8)


@dataclass(frozen=True)
class EpsilonNormResult:
    size: int
    norm: float
    bound: float
    ok: bool
    iterations: int


def epsilon_norm_check(w: int, tol: float = 1e-10, max_iters: int = 500) -> EpsilonNormResult:
    """Power iteration on the Gram matrix certifies the operator norm bound.

    The bound is sqrt(w!); the check passes when the computed norm is at
    most bound + 1e-8.  At w = 2 the map is an isometry, norm exactly 1.

    Examples:
        >>> epsilon_norm_check(3).ok
        True
    """
    m = epsilon_map(w).astype(np.float64)
    gram = np.asarray((m.T @ m).todense())
    v = np.ones(gram.shape[0]) / math.sqrt(gram.shape[0])
    lam_prev = 0.0
    iterations = 0
    for iterations in range(1, max_iters + 1):
        u = gram @ v
        lam = float(v @ u)
        nu = float(np.linalg.norm(u))
        if nu == 0.0:
            lam = 0.0
            break
        v = u / nu
        if abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            lam_prev = lam
            break
        lam_prev = lam
    norm = math.sqrt(max(lam_prev, 0.0))
    bound = math.sqrt(math.factorial(w))
    return EpsilonNormResult(w, norm, bound, norm <= bound + 1e-8, iterations)


# ---------------------------------------------------------------------------
# permutation invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermSpec:
    """Slot permutations of a product of tensor powers.

    Factor i is some space raised to the arities[i]-th tensor power and
    perms[i] permutes its slots (one-line notation, 0-based).  Underlying
    dimensions are supplied where an operator is actually built, so one
    spec serves every dimension vector.

    Examples:
        >>> PermSpec((3,), ((1, 2, 0),)).arities
        (3,)
    """

    arities: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        arities = tuple(int(a) for a in self.arities)
        perms = tuple(tuple(int(s) for s in p) for p in self.perms)
        if len(arities) != len(perms):
            raise LengthMismatchError("arities and perms must align")
        if not arities:
            raise InputError("need at least one tensor factor")
        for a, p in zip(arities, perms):
            if a < 1:
                raise NonPositiveError("arities must be positive")
            if sorted(p) != list(range(a)):
                raise InputError(f"{p} is not a permutation of 0..{a - 1}")
        object.__setattr__(self, "arities", arities)
        object.__setattr__(self, "perms", perms)

    def dim(self, dims: Sequence[int]) -> int:
        dims = tuple(int(d) for d in dims)
        if len(dims) != len(self.arities):
            raise LengthMismatchError("one dimension per tensor factor")
        if any(d < 1 for d in dims):
            raise NonPositiveError("dimensions must be positive")
        out = 1
        for d, a in zip(dims, self.arities):
            out *= d ** a
        if out > MAX_TENSOR_DIM:
            raise DimensionTooLargeError(
                f"tensor dimension {out} exceeds {MAX_TENSOR_DIM}"
            )
        return out


def _slot_index_map(dim: int, arity: int, perm: Sequence[int]) -> list[int]:
    """Basis index map of the operator permuting slots by perm.

    Sends e_t to e_u with u[s] = t[perm_inverse(s)]; indices packed base
    dim, slot 0 most significant.
    """
    inv = [0] * arity
    for s, img in enumerate(perm):
        inv[img] = s
    out = []
    for t in itertools.product(range(dim), repeat=arity):
        u = tuple(t[inv[s]] for s in range(arity))
        out.append(_pack(u, dim))
    return out


def permutation_operator(spec: PermSpec, dims: Sequence[int]) -> np.ndarray:
    """Dense 0/1 matrix of the tensor-product permutation operator."""
    dim = spec.dim(dims)
    full_map = _full_index_map(spec, dims)
    op = np.zeros((dim, dim), dtype=np.int8)
    for col, row in enumerate(full_map):
        op[row, col] = 1
    return op


def _random_sl(n: int, rng: random.Random) -> list[list[Fraction]]:
    g = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if n == 1:
        return g
    for _ in range(rng.randint(2, 3)):
        i = rng.randrange(n)
        j = rng.randrange(n)
        while j == i:
            j = rng.randrange(n)
        c = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
        # g <- g . (I + c E_ij): adds c * column i to column j
        for r in range(n):
            g[r][j] += c * g[r][i]
    return g


def perm_invariant_check(
    spec: PermSpec, dims: Sequence[int], trials: int = 4, seed: int = 0
) -> bool:
    """Exact equivariance and trace-pairing checks for slot permutations.

    Per trial: draw one SL(dims[i], Q) element per factor as a product of
    elementary shears and verify, factor by factor and entry by entry in
    exact rational arithmetic, that g^(tensor arity) commutes with the slot
    permutation (hence the full tensor operator is conjugation-invariant,
    Kronecker factors commute).  Then verify two trace identities computed
    by independent routes: the pairing of the operator against a random
    sparse rational matrix equals the trace of the composition with the
    inverse operator, and the trace of the composition with a second random
    slot permutation equals the product of dims^cycles closed form.
    """
    dims = tuple(int(d) for d in dims)
    dim = spec.dim(dims)
    rng = random.Random(seed)
    for _ in range(trials):
        for d, a, p in zip(dims, spec.arities, spec.perms):
            g = _random_sl(d, rng)
            size = d ** a
            mp = _slot_index_map(d, a, p)
            inv_mp = [0] * size
            for t, u in enumerate(mp):
                inv_mp[u] = t
            tuples = list(itertools.product(range(d), repeat=a))

            def kron_entry(u: int, t: int) -> Fraction:
                acc = Fraction(1)
                for us, ts in zip(tuples[u], tuples[t]):
                    acc *= g[us][ts]
                    if acc == 0:
                        break
                return acc

            for u in range(size):
                for t in range(size):
                    if kron_entry(u, mp[t]) != kron_entry(inv_mp[u], t):
                        return False
        # trace pairing on a random sparse rational matrix, two routes
        full_map = _full_index_map(spec, dims)
        inv_full = [0] * dim
        for t, u in enumerate(full_map):
            inv_full[u] = t
        phi = {}
        for _ in range(min(64, dim * dim)):
            phi[(rng.randrange(dim), rng.randrange(dim))] = Fraction(
                rng.randint(-5, 5), rng.randint(1, 4)
            )
        pairing = sum(
            (v for (u, t), v in phi.items() if u == full_map[t]), Fraction(0)
        )
        trace = sum(
            (phi.get((t, inv_full[t]), Fraction(0)) for t in range(dim)), Fraction(0)
        )
        if pairing != trace:
            return False
        # composite trace against a second permutation vs cycle count
        other = tuple(
            tuple(rng.sample(range(a), a)) for a in spec.arities
        )
        other_map = _full_index_map(PermSpec(spec.arities, other), dims)
        computed = sum(1 for t in range(dim) if other_map[inv_full[t]] == t)
        closed = 1
        for d, a, p, q in zip(dims, spec.arities, spec.perms, other):
            inv_p = [0] * a
            for s, img in enumerate(p):
                inv_p[img] = s
            composite = [q[inv_p[s]] for s in range(a)]
            seen = [False] * a
            cycles = 0
            for s in range(a):
                if not seen[s]:
                    cycles += 1
                    while not seen[s]:
                        seen[s] = True
                        s = composite[s]
            closed *= d ** cycles
        if computed != closed:
            return False
    return True


def _full_index_map(spec: PermSpec, dims: Sequence[int]) -> list[int]:
    dims = tuple(int(d) for d in dims)
    maps = [
        _slot_index_map(d, a, p)
        for d, a, p in zip(dims, spec.arities, spec.perms)
    ]
    sizes = [d ** a for d, a in zip(dims, spec.arities)]
    out = []
    for col in range(spec.dim(dims)):
        rest, parts = col, []
        for size in reversed(sizes):
            parts.append(rest % size)
            rest //= size
        parts.reverse()
        row = 0
        for size, part, mp in zip(sizes, parts, maps):
            row = row * size + mp[part]
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# one-variable convex minima
# ---------------------------------------------------------------------------

def _lemma_profile(variant: str):
    if variant == "log3":
        return lambda x: 2.0 * max(x, -2.0 * x) + 0.5 * math.log(
            4.0 * math.exp(-4.0 * x) + 4.0 * math.exp(2.0 * x) + math.exp(8.0 * x)
        )
    if variant == "log_sqrt3":
        return lambda x: max(0.0, -x) + 0.5 * math.log(2.0 + math.exp(2.0 * x))
    raise InputError(f"variant must be one of {CONVEX_LEMMA_VARIANTS}, got {variant!r}")


def _golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def convex_lemma_min(variant: str, grid_tol: float = 1e-10) -> float:
    """Global minimum of a named one-variable convex height profile.

    Both profiles take their minimum at 0: value log(3) for "log3" and
    log(sqrt(3)) for "log_sqrt3".

    Examples:
        >>> abs(convex_lemma_min("log3") - math.log(3)) < 1e-8
        True
    """
    return _golden_section(_lemma_profile(variant), -10.0, 10.0, grid_tol)[1]


def convex_lemma_argmin(variant: str, grid_tol: float = 1e-10) -> float:
    """Location of the minimum (0 for both shipped profiles)."""
    return _golden_section(_lemma_profile(variant), -10.0, 10.0, grid_tol)[0]
