"""Recompute the pinned Krawtchouk d=2 values by brute force and write them
as a fixture.

Deliberately independent of the package: plain Fraction lists, the split
matrices built by hand, idempotents from the product formula, and the
intersection numbers read off A after a change of basis.  No closed forms.

    python3 scripts/krawtchouk_fixture.py [--out tests/fixtures/krawtchouk_d2.json]
"""

import argparse
import json
from fractions import Fraction as F
from pathlib import Path

THETA = [F(0), F(1), F(2)]
THETA_STAR = [F(0), F(1), F(2)]
VARPHI = [F(-4), F(-4)]
PHI = [F(-2), F(-2)]


def matmul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


def eye(n):
    return [[F(int(i == j)) for j in range(n)] for i in range(n)]


def idempotents(M, eigs):
    n = len(M)
    out = []
    for i, ti in enumerate(eigs):
        P = eye(n)
        for j, tj in enumerate(eigs):
            if j != i:
                shifted = [[M[r][c] - (tj if r == c else 0) for c in range(n)] for r in range(n)]
                P = [[x / (ti - tj) for x in row] for row in matmul(P, shifted)]
        out.append(P)
    return out


def inverse(M):
    n = len(M)
    aug = [list(row) + eye(n)[i] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests/fixtures/krawtchouk_d2.json"))
    args = ap.parse_args()
    d = 2
    n = d + 1
    # split form: A lower bidiagonal, A* upper bidiagonal
    A = [[THETA[i] if i == j else (F(1) if i == j + 1 else F(0)) for j in range(n)] for i in range(n)]
    As = [[THETA_STAR[i] if i == j else (VARPHI[i] if j == i + 1 else F(0)) for j in range(n)] for i in range(n)]
    E = idempotents(A, THETA)
    Es = idempotents(As, THETA_STAR)
    # xi: a nonzero column of E_0; standard basis E*_i xi
    col = next(j for j in range(n) if any(E[0][r][j] for r in range(n)))
    xi = [[E[0][r][col]] for r in range(n)]
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        v = matmul(Es[i], xi)
        for r in range(n):
            S[r][i] = v[r][0]
    R = matmul(matmul(inverse(S), A), S)
    Rs = matmul(matmul(inverse(S), As), S)
    assert all(Rs[i][j] == (THETA_STAR[i] if i == j else 0) for i in range(n) for j in range(n))
    a = [R[i][i] for i in range(n)]
    b = [R[i][i + 1] for i in range(d)]
    c = [R[i][i - 1] for i in range(1, n)]
    vartheta = [F(0)] + [VARPHI[i - 1] - (THETA_STAR[i] - THETA_STAR[0]) * (THETA[i - 1] - THETA[d]) for i in range(1, n)] + [F(0)]
    phi2_from_c1 = (c[0] - a[0] + THETA[1]) * (THETA_STAR[2] - THETA_STAR[0])
    doc = {
        "parray": {
            "field": "Q",
            "d": d,
            "theta": [str(x) for x in THETA],
            "theta_star": [str(x) for x in THETA_STAR],
            "varphi": [str(x) for x in VARPHI],
            "phi": [str(x) for x in PHI],
        },
        "A_standard": [[str(x) for x in row] for row in R],
        "a": [str(x) for x in a],
        "b": [str(x) for x in b],
        "c": [str(x) for x in c],
        "sum_a": str(sum(a)),
        "sum_theta": str(sum(THETA)),
        "vartheta": [str(x) for x in vartheta],
        "varphi2_from_c1": str(phi2_from_c1),
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(json.dumps(doc, indent=2))


if __name__ == "__main__":
    main()
