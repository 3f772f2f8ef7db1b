"""Numpy fallback for the compiled kernels in ``_ckernels.pyx``."""
import numpy as np


def _cluster_starts(s, merge_tol):
    # Chains break wherever consecutive sums are more than merge_tol apart. A chain
    # whose total span fits in merge_tol is one cluster; longer chains are split
    # by walking anchors, which is what the compiled kernel does.
    breaks = np.flatnonzero(np.diff(s) > merge_tol) + 1
    chain_start = np.concatenate(([0], breaks))
    chain_end = np.concatenate((breaks, [len(s)]))
    wide = np.flatnonzero(s[chain_end - 1] - s[chain_start] > merge_tol)
    if len(wide) == 0:
        return chain_start
    starts = []
    last = 0
    for c in wide:
        a, b = chain_start[c], chain_end[c]
        starts.append(chain_start[last:c])
        anchors = [a]
        anchor = s[a]
        for j in range(a + 1, b):
            if s[j] - anchor > merge_tol:
                anchors.append(j)
                anchor = s[j]
        starts.append(np.asarray(anchors, dtype=np.intp))
        last = c + 1
    starts.append(chain_start[last:])
    return np.concatenate(starts)


def convolve_sorted(xa, pa, xb, pb, merge_tol, max_points):
    s = np.add.outer(xa, xb).ravel()
    w = np.multiply.outer(pa, pb).ravel()
    order = np.argsort(s, kind="stable")
    s = s[order]
    w = w[order]
    starts = _cluster_starts(s, merge_tol)
    if len(starts) > max_points:
        return None
    return s[starts].copy(), np.add.reduceat(w, starts)


def log_moment_shifted(x, p, theta, shift):
    live = p > 0.0
    return float(np.log(np.sum(p[live] * np.exp(theta * (x[live] - shift)))))
