"""Dense Hermitian kernels for the finite-dimensional guessing game.

Everything is explicit loops over complex128 arrays: the dimensions this
package needs stay tiny (n <= 16), eigendecomposition is done in-repo by
cyclic Jacobi so no external solver is load-bearing, and the loops compile
cleanly under numba (see _accel) while remaining valid interpreted numpy.
"""

import numpy as np

from ._accel import njit


@njit(cache=True)
def jacobi_eigh(mat):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.

    Returns (w, v) with w ascending and mat = v @ diag(w) @ v.conj().T
    up to floating error.  Input must be complex128 and Hermitian.
    """
    n = mat.shape[0]
    a = mat.copy()
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0 + 0j

    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += abs(a[i, j]) ** 2
    stop = 1e-30 * max(frob, 1e-300)

    for _ in range(100):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g <= 1e-300:
                    continue
                # w rotates column q so the off-diagonal entry becomes real
                w = a[p, q].conjugate() / g
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q] * w
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                    vip = v[i, p]
                    viq = v[i, q] * w
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
                wc = w.conjugate()
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j] * wc
                    a[p, j] = c * apj - s * aqj
                    a[q, j] = s * apj + c * aqj

    w_out = np.empty(n, dtype=np.float64)
    for i in range(n):
        w_out[i] = a[i, i].real
    order = np.argsort(w_out)
    w_sorted = np.empty(n, dtype=np.float64)
    v_sorted = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        w_sorted[k] = w_out[order[k]]
        for i in range(n):
            v_sorted[i, k] = v[i, order[k]]
    return w_sorted, v_sorted


@njit(cache=True)
def psd_sqrt_pinv(mat, rel_tol):
    """Inverse square root of a PSD matrix on its support.

    Eigenvalues below rel_tol * max-eigenvalue are treated as kernel
    directions and mapped to zero.
    """
    n = mat.shape[0]
    w, v = jacobi_eigh(mat)
    wmax = w[n - 1] if w[n - 1] > 0.0 else 0.0
    cut = rel_tol * wmax
    inv_sqrt = np.zeros(n, dtype=np.float64)
    for k in range(n):
        if w[k] > cut and w[k] > 0.0:
            inv_sqrt[k] = 1.0 / np.sqrt(w[k])
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            acc = 0.0 + 0j
            for k in range(n):
                acc += v[i, k] * inv_sqrt[k] * v[j, k].conjugate()
            out[i, j] = acc
    return out


@njit(cache=True)
def pgm_effects(states):
    """Square-root (pretty good) measurement for the given pure states.

    states has shape (m, n); the returned effects (m, n, n) are PSD and sum
    to the projection onto the span of the states, so together with the
    implicit completion effect they form a valid POVM.
    """
    m, n = states.shape
    rho = np.zeros((n, n), dtype=np.complex128)
    for x in range(m):
        for i in range(n):
            for j in range(n):
                rho[i, j] += states[x, i] * states[x, j].conjugate()
    root = psd_sqrt_pinv(rho, 1e-12)
    effects = np.zeros((m, n, n), dtype=np.complex128)
    for x in range(m):
        u = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0.0 + 0j
            for j in range(n):
                acc += root[i, j] * states[x, j]
            u[i] = acc
        for i in range(n):
            for j in range(n):
                effects[x, i, j] = u[i] * u[j].conjugate()
    return effects


@njit(cache=True)
def quadratic_form(vec, mat):
    """Re <vec, mat vec>."""
    n = vec.shape[0]
    acc = 0.0 + 0j
    for i in range(n):
        for j in range(n):
            acc += vec[i].conjugate() * mat[i, j] * vec[j]
    return acc.real


@njit(cache=True)
def guess_probabilities(states, effects):
    """g[x] = Re <psi_x, E_x psi_x> for each input."""
    m = states.shape[0]
    g = np.empty(m, dtype=np.float64)
    for x in range(m):
        g[x] = quadratic_form(states[x], effects[x])
    return g


@njit(cache=True)
def _mean(values):
    acc = 0.0
    for k in range(values.shape[0]):
        acc += values[k]
    return acc / values.shape[0]


@njit(cache=True)
def top_eigenvector(mat):
    """Unit eigenvector of the largest eigenvalue of a Hermitian matrix."""
    n = mat.shape[0]
    w, v = jacobi_eigh(mat)
    out = np.empty(n, dtype=np.complex128)
    nrm = 0.0
    for i in range(n):
        out[i] = v[i, n - 1]
        nrm += abs(out[i]) ** 2
    nrm = np.sqrt(nrm)
    for i in range(n):
        out[i] = out[i] / nrm
    return out


@njit(cache=True)
def seesaw(states0, max_iters, tol):
    """Alternating optimization of the guessing game from given start states.

    Measurement step: replace the POVM by the square-root measurement of
    the current states, kept only when the average guessing probability
    does not drop (the square-root rule alone is a heuristic, not a
    guaranteed ascent step).  State step: replace each state by the top
    eigenvector of its effect, kept per input only when its computed g(x)
    does not drop.  Both guards compare the same floating evaluations, so
    the returned history of per-iteration averages is non-decreasing.

    Returns (states, effects, history).
    """
    m = states0.shape[0]
    states = states0.copy()
    effects = pgm_effects(states)
    g_cur = guess_probabilities(states, effects)
    best = _mean(g_cur)

    history = np.empty(max_iters + 1, dtype=np.float64)
    history[0] = best
    count = 1

    for _ in range(max_iters):
        candidate = pgm_effects(states)
        g_cand = guess_probabilities(states, candidate)
        if _mean(g_cand) >= best:
            effects = candidate
            g_cur = g_cand
        for x in range(m):
            cand_state = top_eigenvector(effects[x])
            g_new = quadratic_form(cand_state, effects[x])
            if g_new >= g_cur[x]:
                states[x] = cand_state
                g_cur[x] = g_new
        best = _mean(g_cur)
        history[count] = best
        count += 1
        if best - history[count - 2] < tol:
            break

    return states, effects, history[:count]
