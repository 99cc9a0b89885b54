"""Orbit-counting engines used by the class-counting operations.

Two deliberately different implementations are provided wherever counts
matter:

* a BFS that partitions canonical subspace keys under a set of moves
  (coordinate transpositions for the purely ramified count, symplectic
  generators for the unramified one), and
* a canonical-form count that enumerates raw objects and minimises over the
  fully enumerated acting group.

They are cross-checked in the test suite; production calls use the BFS,
which scales much further.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import CapExceededError
from . import fp
from .fp import FpVector

#: brute-force feasibility box for the purely ramified count
PURE_BRUTE_PRIMES = (2, 3, 5)
PURE_BRUTE_MAX_RANK = 4
PURE_BRUTE_MAX_PERIODS = 8

#: brute-force feasibility box for the unramified count
UNRAMIFIED_BRUTE_PRIMES = (2, 3, 5)
UNRAMIFIED_BRUTE_MAX_GENUS = 3
UNRAMIFIED_BRUTE_MAX_SUBSPACES = 100_000

def gaussian_binomial(m: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# batched row reduction


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int16)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def batch_rref(mats: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form of a batch of matrices over F_p.

    ``mats`` has shape (B, k, r); the result is uint8 of the same shape.
    """
    M = mats.astype(np.int16) % p
    B, k, r = M.shape
    inv = _inverse_table(p)
    piv = np.zeros(B, dtype=np.int64)
    rows = np.arange(k, dtype=np.int64)[None, :]
    for c in range(r):
        col = M[:, :, c]
        cand = (col != 0) & (rows >= piv[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        hb = np.nonzero(has)[0]
        pr = piv[hb]
        sr = cand[hb].argmax(axis=1)
        tmp = M[hb, pr, :].copy()
        M[hb, pr, :] = M[hb, sr, :]
        M[hb, sr, :] = tmp
        pivvals = M[hb, pr, c]
        M[hb, pr, :] = (M[hb, pr, :] * inv[pivvals][:, None]) % p
        colv = M[hb, :, c].copy()
        colv[np.arange(len(hb)), pr] = 0
        M[hb] = (M[hb] - colv[:, :, None] * M[hb, pr, :][:, None, :]) % p
        piv[hb] += 1
    return M.astype(np.uint8)


def _pack_keys(M: np.ndarray, p: int, drop_first_col: bool) -> np.ndarray:
    """Encode each matrix of the batch as one base-p integer key."""
    B = M.shape[0]
    D = M[:, :, 1:] if drop_first_col else M
    flat = D.reshape(B, -1).astype(np.uint64)
    nd = flat.shape[1]
    if p ** nd >= 2 ** 63:
        raise CapExceededError(f"subspace key of {nd} base-{p} digits does not pack")
    pows = np.uint64(p) ** np.arange(nd, dtype=np.uint64)
    return (flat * pows[None, :]).sum(axis=1, dtype=np.uint64)


def _zero_sum_hyperplane_basis(p: int, r: int) -> np.ndarray:
    B = np.zeros((r - 1, r), dtype=np.int64)
    for i in range(r - 1):
        B[i, i] = 1
        B[i, i + 1] = p - 1
    return B


def _enumerate_zero_sum_subspaces(p: int, r: int, k: int) -> np.ndarray:
    """Ambient RREFs of all k-subspaces of the zero-sum hyperplane of F_p^r."""
    W = _zero_sum_hyperplane_basis(p, r)
    d = r - 1
    chunks = []
    for pivots in itertools.combinations(range(d), k):
        free = [(i, j) for i in range(k) for j in range(d)
                if j > pivots[i] and j not in pivots]
        total = p ** len(free)
        base = np.zeros((k, d), dtype=np.uint8)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        mats = np.broadcast_to(base, (total, k, d)).copy()
        vals = np.arange(total, dtype=np.int64)
        for idx, (i, j) in enumerate(free):
            mats[:, i, j] = (vals // p ** idx) % p
        amb = np.einsum("bkd,dr->bkr", mats.astype(np.int64), W) % p
        chunks.append(batch_rref(amb, p))
    return np.concatenate(chunks, axis=0)


def _connected_component_count(n_nodes: int, src: np.ndarray, dst: np.ndarray) -> int:
    try:
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components
    except ImportError:  # pragma: no cover - scipy is a declared dependency
        parent = list(range(n_nodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in zip(src.tolist(), dst.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(n_nodes)})
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)),
                   shape=(n_nodes, n_nodes))
    return int(connected_components(g, directed=False)[0])


# ---------------------------------------------------------------------------
# purely ramified count: S_r-orbits of admissible zero-sum subspaces
#
# A valid (0; p^r)-generating tuple of C_p^k, taken up to basis change of the
# target, is the same thing as its row space: a k-dimensional subspace of
# F_p^r lying inside the zero-sum hyperplane with no identically-zero
# coordinate (columns of the reduced basis are the tuple entries).  Tuple
# reordering becomes the S_r action on coordinates, so class counting is
# orbit counting of admissible subspaces under S_r.


def check_pure_caps(p: int, k: int, r: int, cap: int | None = None) -> None:
    cap = fp.DEFAULT_ELEMENT_CAP if cap is None else cap
    if p not in PURE_BRUTE_PRIMES or k > PURE_BRUTE_MAX_RANK or r > PURE_BRUTE_MAX_PERIODS:
        raise CapExceededError(
            f"(p={p}, k={k}, r={r}) is outside the brute-force box "
            f"p in {PURE_BRUTE_PRIMES}, k <= {PURE_BRUTE_MAX_RANK}, r <= {PURE_BRUTE_MAX_PERIODS}")
    est = gaussian_binomial(r - 1, k, p)
    if est > cap:
        raise CapExceededError(
            f"(p={p}, k={k}, r={r}) needs {est} subspaces, above the cap {cap}")


@lru_cache(maxsize=None)
def count_pure_orbits_bfs(p: int, k: int, r: int) -> int:
    """S_r-orbit count of admissible k-subspaces, by transposition BFS."""
    check_pure_caps(p, k, r)
    if k < 1 or k > r - 1:
        return 0
    M = _enumerate_zero_sum_subspaces(p, r, k)
    admissible = (M != 0).any(axis=1).all(axis=1)
    M = M[admissible]
    B = len(M)
    if B == 0:
        return 0
    # admissible matrices always pivot in column 0, so the key may drop it
    keys = _pack_keys(M, p, drop_first_col=True)
    order = np.argsort(keys)
    U = keys[order]
    M = M[order]
    src = np.arange(B, dtype=np.int64)
    all_src, all_dst = [], []
    for c in range(r - 1):
        S = M.copy()
        S[:, :, [c, c + 1]] = S[:, :, [c + 1, c]]
        nk = _pack_keys(batch_rref(S, p), p, drop_first_col=True)
        ids = np.searchsorted(U, nk)
        if not (U[ids] == nk).all():
            raise AssertionError("neighbour subspace missing from enumeration")
        all_src.append(src)
        all_dst.append(ids)
    return _connected_component_count(B, np.concatenate(all_src), np.concatenate(all_dst))


# canonical-form route: enumerate zero-sum spanning multisets of nonzero
# vectors and minimise the sorted tuple over the fully enumerated GL(k, p).

CANONICAL_MAX_GROUP = 600
CANONICAL_MAX_RAW = 200_000


def _gl_permutations(k: int, p: int) -> list[tuple[int, ...]]:
    """Each element of GL(k, p) as a permutation of packed vector codes."""
    codes = []
    for code in range(p ** k):
        v, x = [], code
        for _ in range(k):
            v.append(x % p)
            x //= p
        codes.append(tuple(v))
    group = fp.group_closure(fp.gl_generators(k, p))
    perms = []
    for g in group:
        perm = []
        for v in codes:
            w = g.apply(FpVector(p, v)).coords
            perm.append(sum(c * p ** i for i, c in enumerate(w)))
        perms.append(tuple(perm))
    return perms


def pure_canonical_feasible(p: int, k: int, r: int) -> bool:
    order = 1
    for i in range(k):
        order *= p ** k - p ** i
    if order > CANONICAL_MAX_GROUP:
        return False
    raw = 1
    nvec = p ** k - 1
    for i in range(r):
        raw = raw * (nvec + i) // (i + 1)
    return raw <= CANONICAL_MAX_RAW


@lru_cache(maxsize=None)
def count_pure_orbits_canonical(p: int, k: int, r: int) -> int:
    """Independent count: canonical forms of vector multisets under GL x S_r."""
    if k < 1 or k > r - 1:
        return 0
    if not pure_canonical_feasible(p, k, r):
        raise CapExceededError(f"canonical-form count infeasible for (p={p}, k={k}, r={r})")
    n = p ** k
    decode = [tuple((code // p ** i) % p for i in range(k)) for code in range(n)]
    add = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            add[a][b] = sum(((x + y) % p) * p ** i
                            for i, (x, y) in enumerate(zip(decode[a], decode[b])))
    span_cache: dict[frozenset[int], bool] = {}

    def spans(codes: frozenset[int]) -> bool:
        got = span_cache.get(codes)
        if got is None:
            got = len(fp.rref([decode[c] for c in codes], p)) == k
            span_cache[codes] = got
        return got

    perms = _gl_permutations(k, p)
    canon = set()
    for multiset in itertools.combinations_with_replacement(range(1, n), r):
        total = 0
        for c in multiset:
            total = add[total][c]
        if total != 0:
            continue
        if not spans(frozenset(multiset)):
            continue
        best = min(tuple(sorted(perm[c] for c in multiset)) for perm in perms)
        canon.add(best)
    return len(canon)


# ---------------------------------------------------------------------------
# unramified count: Sp(2*rho, p)-orbits of kernels
#
# Epimorphisms from a genus-rho surface group onto C_p^k factor through mod-p
# homology, so classes correspond to surjections F_p^{2 rho} -> F_p^k modulo
# GL(k, p) on the target (i.e. their kernels) and the mapping class group
# image Sp(2 rho, p) on the source.


def check_unramified_caps(p: int, k: int, rho: int) -> None:
    if p not in UNRAMIFIED_BRUTE_PRIMES or rho > UNRAMIFIED_BRUTE_MAX_GENUS:
        raise CapExceededError(
            f"(p={p}, k={k}, rho={rho}) is outside the brute-force box "
            f"p in {UNRAMIFIED_BRUTE_PRIMES}, rho <= {UNRAMIFIED_BRUTE_MAX_GENUS}")
    est = gaussian_binomial(2 * rho, max(2 * rho - k, 0), p)
    if est > UNRAMIFIED_BRUTE_MAX_SUBSPACES:
        raise CapExceededError(
            f"(p={p}, k={k}, rho={rho}) needs {est} subspaces, above "
            f"{UNRAMIFIED_BRUTE_MAX_SUBSPACES}")


def _all_subspaces(p: int, n: int, d: int):
    """RREF keys of all d-dimensional subspaces of F_p^n (python path)."""
    if d == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), d):
        free = [(i, j) for i in range(d) for j in range(n)
                if j > pivots[i] and j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def count_kernel_orbits_bfs(p: int, k: int, rho: int) -> int:
    """Orbit count of codimension-k subspaces of F_p^{2 rho} under Sp."""
    check_unramified_caps(p, k, rho)
    if k < 0 or k > 2 * rho:
        return 0
    d = 2 * rho - k
    if d == 0:
        return 1
    n = 2 * rho
    gens = [g.rows for g in fp.sp_generators(rho, p)]
    keys = {}
    for key in _all_subspaces(p, n, d):
        keys[key] = len(keys)
    parent = list(range(len(keys)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for key, idx in keys.items():
        for g in gens:
            moved = [tuple(sum(row[t] * g[t][j] for t in range(n)) % p
                           for j in range(n)) for row in key]
            nid = keys[fp.rref(moved, p)]
            ra, rb = find(idx), find(nid)
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(len(keys))})


def witt_kernel_orbit_count(rho: int, k: int) -> int:
    """Closed form for the same orbit count.

    Orbits of d-dimensional subspaces under the symplectic group are
    classified by the rank 2t of the restricted form, with
    max(0, d - rho) <= t <= floor(d / 2); Witt extension gives transitivity
    within each class.  Independent of p.
    """
    if k < 0 or k > 2 * rho:
        return 0
    d = 2 * rho - k
    lo = max(0, d - rho)
    hi = d // 2
    return hi - lo + 1


CANONICAL_SP_MAX_GROUP = 52_000


def kernel_canonical_feasible(p: int, rho: int) -> bool:
    order = p ** (rho * rho)
    for i in range(1, rho + 1):
        order *= p ** (2 * i) - 1
    return order <= CANONICAL_SP_MAX_GROUP


@lru_cache(maxsize=None)
def _sp_closure_array(p: int, rho: int) -> np.ndarray:
    group = fp.group_closure(fp.sp_generators(rho, p))
    return np.array(sorted(g.rows for g in group), dtype=np.int64)


@lru_cache(maxsize=None)
def count_kernel_orbits_canonical(p: int, k: int, rho: int) -> int:
    """Independent count: minimise subspace keys over the full Sp closure."""
    if not kernel_canonical_feasible(p, rho):
        raise CapExceededError(f"canonical Sp count infeasible for (p={p}, rho={rho})")
    if k < 0 or k > 2 * rho:
        return 0
    d = 2 * rho - k
    if d == 0:
        return 1
    n = 2 * rho
    group = _sp_closure_array(p, rho)
    canon = set()
    for key in _all_subspaces(p, n, d):
        rows = np.array(key, dtype=np.int64)
        moved = np.einsum("di,gij->gdj", rows, group) % p
        keys = _pack_keys(batch_rref(moved, p), p, drop_first_col=False)
        canon.add(int(keys.min()))
    return len(canon)
