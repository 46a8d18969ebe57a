#!/usr/bin/env python3
"""Regenerates conic_fixtures.json.

Random cone programs in the standard form

    minimize    c'x
    subject to  Ax + s = b,  s in {0}^z x R+^l x SOC(q_1) x ...

with reference optimal values computed by cvxpy/CLARABEL at tight tolerances.
Problems are built around a known interior point so that every instance is
feasible and bounded.
"""

import json

import cvxpy as cp
import numpy as np


def build_problem(rng, num_vars, zero, nonneg, socs):
    rows = zero + nonneg + sum(socs)
    a = rng.standard_normal((rows, num_vars))
    x0 = rng.standard_normal(num_vars)
    s0 = np.zeros(rows)
    at = zero
    s0[at:at + nonneg] = rng.uniform(0.5, 2.0, nonneg)
    at += nonneg
    for q in socs:
        w = rng.standard_normal(q - 1) if q > 1 else np.zeros(0)
        s0[at] = np.linalg.norm(w) + rng.uniform(0.5, 1.5)
        s0[at + 1:at + q] = w
        at += q
    b = a @ x0 + s0
    # Bounded objective: c = -A'y0 for a strictly dual-feasible y0.
    y0 = np.zeros(rows)
    y0[:zero] = rng.standard_normal(zero)
    at = zero
    y0[at:at + nonneg] = rng.uniform(0.5, 2.0, nonneg)
    at += nonneg
    for q in socs:
        w = rng.standard_normal(q - 1) if q > 1 else np.zeros(0)
        y0[at] = np.linalg.norm(w) + rng.uniform(0.5, 1.5)
        y0[at + 1:at + q] = w
        at += q
    c = -a.T @ y0
    return a, b, c


def solve_reference(a, b, c, zero, nonneg, socs):
    n = a.shape[1]
    x = cp.Variable(n)
    s = b - a @ x
    cons = []
    at = 0
    if zero:
        cons.append(s[at:at + zero] == 0)
        at += zero
    if nonneg:
        cons.append(s[at:at + nonneg] >= 0)
        at += nonneg
    for q in socs:
        if q == 1:
            cons.append(s[at] >= 0)
        else:
            cons.append(cp.SOC(s[at], s[at + 1:at + q]))
        at += q
    prob = cp.Problem(cp.Minimize(c @ x), cons)
    prob.solve(solver=cp.CLARABEL)
    assert prob.status == cp.OPTIMAL, prob.status
    value = float(prob.value)
    # Cross-check with a second solver before freezing.
    prob.solve(solver=cp.SCS, eps=1e-9, max_iters=200000)
    assert prob.status == cp.OPTIMAL, prob.status
    assert abs(float(prob.value) - value) <= 1e-7 * (1 + abs(value))
    return value


def main():
    rng = np.random.default_rng(20240817)
    shapes = [
        (3, 0, 4, []),
        (4, 2, 3, []),
        (2, 0, 0, [3]),
        (5, 0, 2, [4]),
        (6, 1, 3, [3, 3]),
        (8, 2, 4, [5]),
        (10, 3, 5, [4, 1]),
        (12, 0, 6, [6, 3]),
        (7, 2, 0, [3, 3, 2]),
        (15, 4, 8, [7]),
    ]
    fixtures = []
    for num_vars, zero, nonneg, socs in shapes:
        a, b, c = build_problem(rng, num_vars, zero, nonneg, socs)
        value = solve_reference(a, b, c, zero, nonneg, socs)
        rows, cols = a.shape
        fixtures.append({
            "problem": {
                "c": list(c),
                "b": list(b),
                "A": {"rows": rows, "cols": cols, "dense": [list(r) for r in a]},
                "cones": {"zero": zero, "nonneg": nonneg, "soc": socs},
            },
            "optimal_value": value,
        })
    with open("conic_fixtures.json", "w") as f:
        json.dump(fixtures, f, indent=1, sort_keys=True)
    print(f"wrote {len(fixtures)} fixtures")


if __name__ == "__main__":
    main()
