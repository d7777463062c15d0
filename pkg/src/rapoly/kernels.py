"""Hot inner loops.

Every kernel here is plain Python over numpy arrays; :func:`rapoly._accel.njit`
compiles it with numba unless ``RAP_NUMBA=0``.  The Lobachevskii array kernel
additionally has a vectorised numpy path that replaces the loop when numba is
off.  ``benchmarks/bench_kernels.py`` times both paths.
"""

import math
from fractions import Fraction

import numpy as np

from rapoly._accel import NUMBA_ENABLED, njit

# ---------------------------------------------------------------------------
# Clausen / Lobachevskii series
# ---------------------------------------------------------------------------


def _bernoulli_even(count):
    """|B_2|, |B_4|, ..., |B_{2 count}| as exact fractions (Akiyama-Tanigawa)."""
    size = 2 * count + 1
    a = [Fraction(0)] * (size + 1)
    out = []
    for m in range(size + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(abs(a[0]))
    return out


SERIES_TERMS = 26

# Cl_2(x) = x - x log|x| + sum_n CLAUSEN_COEFFS[n-1] * x^(2n+1), |x| < 2 pi
CLAUSEN_COEFFS = np.array(
    [
        float(b / (2 * n * math.factorial(2 * n + 1)))
        for n, b in enumerate(_bernoulli_even(SERIES_TERMS), start=1)
    ]
)


@njit
def _lobachevsky_loop(theta, coeffs):
    out = np.empty(theta.shape[0])
    pi = np.pi
    for i in range(theta.shape[0]):
        t = theta[i] - pi * np.floor(theta[i] / pi)
        if t >= 0.5 * pi:
            t -= pi
        x = 2.0 * t
        if x == 0.0:
            out[i] = 0.0
            continue
        x2 = x * x
        # Kahan-compensated sum of the power series part
        s = 0.0
        comp = 0.0
        p = x
        for n in range(coeffs.shape[0]):
            p *= x2
            y = coeffs[n] * p - comp
            tmp = s + y
            comp = (tmp - s) - y
            s = tmp
        out[i] = 0.5 * (x - x * np.log(abs(x)) + s)
    return out


def _lobachevsky_numpy(theta, coeffs):
    pi = np.pi
    t = np.mod(theta, pi)
    t = np.where(t >= 0.5 * pi, t - pi, t)
    x = 2.0 * t
    x2 = x * x
    # Horner on sum_n c_n x2^(n-1), multiplied by x^3 afterwards
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x2 + c
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 0.5 * (x - x * np.log(np.abs(x)) + acc * x2 * x)
    return np.where(x == 0.0, 0.0, val)


def lobachevsky_array(theta):
    """Vectorised Lobachevskii function over a float array."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    if NUMBA_ENABLED:
        return _lobachevsky_loop(theta, CLAUSEN_COEFFS)
    return _lobachevsky_numpy(theta, CLAUSEN_COEFFS)


# ---------------------------------------------------------------------------
# Oriented-map canonical code
# ---------------------------------------------------------------------------


@njit
def all_roots(deg):
    """Every directed edge, in both reading directions, as ``(v, i, dir)`` rows."""
    nv = deg.shape[0]
    total = 0
    for v in range(nv):
        total += deg[v]
    roots = np.empty((2 * total, 3), dtype=np.int64)
    r = 0
    for v in range(nv):
        for i in range(deg[v]):
            for direction in (1, -1):
                roots[r, 0] = v
                roots[r, 1] = i
                roots[r, 2] = direction
                r += 1
    return roots


@njit
def canonical_code(nbr, deg):
    """Lexicographically least BFS code of a rotation system.

    ``nbr[v, :deg[v]]`` lists the neighbours of ``v`` in cyclic rotation
    order.  Every directed edge is tried as root, with the rotation read
    forwards and backwards, so mirror images share a code.
    """
    return rooted_code(nbr, deg, all_roots(deg))


@njit
def rooted_code(nbr, deg, roots):
    """Least BFS code over the given ``(v, i, dir)`` roots."""
    nv = deg.shape[0]
    total = 0
    for v in range(nv):
        total += deg[v]
    length = total + nv
    best = np.empty(length, dtype=np.int64)
    cur = np.empty(length, dtype=np.int64)
    label = np.zeros(nv, dtype=np.int64)
    start = np.zeros(nv, dtype=np.int64)
    queue = np.zeros(nv, dtype=np.int64)
    have_best = False
    for r in range(roots.shape[0]):
        v0 = roots[r, 0]
        i0 = roots[r, 1]
        direction = roots[r, 2]
        for v in range(nv):
            label[v] = 0
        label[v0] = 1
        nxt = 2
        queue[0] = v0
        start[v0] = i0
        head = 0
        tail = 1
        pos = 0
        smaller = not have_best
        aborted = False
        while head < tail and not aborted:
            v = queue[head]
            head += 1
            d = deg[v]
            s = start[v]
            for j in range(d + 1):
                if j < d:
                    x = nbr[v, (s + direction * j) % d]
                    if label[x] == 0:
                        label[x] = nxt
                        nxt += 1
                        queue[tail] = x
                        tail += 1
                        for m in range(deg[x]):
                            if nbr[x, m] == v:
                                start[x] = m
                                break
                    val = label[x]
                else:
                    val = 0
                cur[pos] = val
                if not smaller:
                    if val > best[pos]:
                        aborted = True
                        break
                    if val < best[pos]:
                        smaller = True
                pos += 1
        if not aborted and smaller:
            for m in range(length):
                best[m] = cur[m]
            have_best = True
    return best


# ---------------------------------------------------------------------------
# Prismatic circuit enumeration
# ---------------------------------------------------------------------------


@njit
def prismatic_cycles(adj_ptr, adj_face, adj_edge, edge_u, edge_v, n_vertices, k, capacity):
    """Enumerate prismatic ``k``-circuits of the dual graph.

    Returns ``(count, edges, faces)``; row ``r`` holds the crossed edges
    ``e_0..e_{k-1}`` and faces ``F_0..F_{k-1}`` with ``e_i`` shared by
    ``F_{i-1}`` and ``F_i``.  ``F_0`` is the smallest face of the cycle and
    the direction is fixed by ``e_1 < e_0``.  ``count == -1`` signals that
    ``capacity`` rows were not enough.
    """
    n_faces = adj_ptr.shape[0] - 1
    out_e = np.empty((capacity, k), dtype=np.int64)
    out_f = np.empty((capacity, k), dtype=np.int64)
    count = 0
    vused = np.zeros(n_vertices, dtype=np.bool_)
    fused = np.zeros(n_faces, dtype=np.bool_)
    path_f = np.zeros(k, dtype=np.int64)
    path_e = np.zeros(k, dtype=np.int64)
    it = np.zeros(k, dtype=np.int64)
    for s in range(n_faces):
        path_f[0] = s
        fused[s] = True
        it[0] = adj_ptr[s]
        depth = 0
        while depth >= 0:
            f = path_f[depth]
            if it[depth] < adj_ptr[f + 1]:
                j = it[depth]
                it[depth] += 1
                g = adj_face[j]
                e = adj_edge[j]
                u = edge_u[e]
                w = edge_v[e]
                if depth == k - 1:
                    if g == s and not vused[u] and not vused[w] and path_e[1] < e:
                        if count == capacity:
                            return -1, out_e, out_f
                        out_e[count, 0] = e
                        out_f[count, 0] = path_f[0]
                        for i in range(1, k):
                            out_e[count, i] = path_e[i]
                            out_f[count, i] = path_f[i]
                        count += 1
                    continue
                if g <= s or fused[g] or vused[u] or vused[w]:
                    continue
                vused[u] = True
                vused[w] = True
                fused[g] = True
                depth += 1
                path_f[depth] = g
                path_e[depth] = e
                it[depth] = adj_ptr[g]
            else:
                fused[f] = False
                if depth > 0:
                    e = path_e[depth]
                    vused[edge_u[e]] = False
                    vused[edge_v[e]] = False
                depth -= 1
    return count, out_e, out_f
