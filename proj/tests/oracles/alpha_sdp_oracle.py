#!/usr/bin/env python3
"""Regenerates tests/unit/oracle_alpha.inc.

Solves the inf-max for alpha^2 as a semidefinite program. In Q-orthonormal
coordinates a positive plane is the graph of L with |L| < 1, and
(a+)^2 <= t is the LMI [[t, u^T, 0], [u, I, L^T], [0, L, I]] >= 0 with
u = x - L^T y.
"""
import cvxpy as cp
import numpy as np

rng = np.random.default_rng(20240611)


def random_unimodular_form(n):
    while True:
        p = int(rng.integers(1, n + 1))
        d = np.diag([1] * p + [-1] * (n - p))
        u = np.eye(n, dtype=np.int64)
        for _ in range(3 * n):
            i, j = rng.choice(n, 2, replace=False)
            u[i] += int(rng.integers(-1, 2)) * u[j]
        q = u.T @ d @ u
        if np.abs(q).max() <= 6:
            return q


def inf_max(q, classes):
    w, v = np.linalg.eigh(q.astype(float))
    neg = v[:, w < 0] / np.sqrt(-w[w < 0])
    pos = v[:, w > 0] / np.sqrt(w[w > 0])
    bp, bm = pos.shape[1], neg.shape[1]
    xs = [pos.T @ q @ a for a in classes]
    ys = [-(neg.T @ q @ a) for a in classes]
    if bm == 0:
        return max(float(x @ x) for x in xs)
    t = cp.Variable()
    lmat = cp.Variable((bm, bp))
    cons = []
    for x, y in zip(xs, ys):
        u = cp.reshape(x - lmat.T @ y, (bp, 1), order="F")
        block = cp.bmat([
            [cp.reshape(t, (1, 1), order="F"), u.T, np.zeros((1, bm))],
            [u, np.eye(bp), lmat.T],
            [np.zeros((bm, 1)), lmat, np.eye(bm)],
        ])
        cons.append(0.5 * (block + block.T) >> 0)
    prob = cp.Problem(cp.Minimize(t), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
    return float(t.value)


def main():
    cases = []
    while len(cases) < 24:
        n = int(rng.integers(2, 6))
        q = random_unimodular_form(n)
        k = int(rng.integers(1, 5))
        classes = [rng.integers(-2, 3, n) for _ in range(k)]
        if any(not a.any() for a in classes):
            continue
        cases.append((q, classes, inf_max(q, classes)))
    print("// Generated by tests/oracles/alpha_sdp_oracle.py; do not edit.")
    print("inline const std::vector<OracleAlphaCase> kOracleAlpha = {")
    for q, classes, value in cases:
        gram = ", ".join(str(int(x)) for x in q.flatten())
        cls = ", ".join("{" + ", ".join(str(int(x)) for x in a) + "}" for a in classes)
        print("    {%d, {%s}, {%s}, %.12g}," % (q.shape[0], gram, cls, value))
    print("};")


if __name__ == "__main__":
    main()
