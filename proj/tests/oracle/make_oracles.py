"""Reference values computed independently with numpy.

Regenerate with:  python3 tests/oracle/make_oracles.py > tests/oracle_values.hpp
"""
import numpy as np


def sinkhorn_closed_form(a):
    # For a 2x2 positive matrix the doubly stochastic scaling is [[p, 1-p], [1-p, p]]
    # with p / (1-p) fixed by the cross ratio a00 a11 / (a01 a10).
    r = np.sqrt(a[0, 0] * a[1, 1])
    s = np.sqrt(a[0, 1] * a[1, 0])
    p = r / (r + s)
    return p


def bell_pt_min():
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    rho = np.outer(v, v)
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return np.linalg.eigvalsh(pt).min()


def diagonal_copula(p):
    # Classical scaling of the reshaped diagonal by plain alternating normalization.
    s = p.copy()
    for _ in range(10000):
        s /= s.sum(axis=1, keepdims=True)
        s /= s.sum(axis=0, keepdims=True)
    return s


def fmt(x):
    return repr(float(x))


def main():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    p = sinkhorn_closed_form(a)
    d = np.array([[0.1, 0.2], [0.3, 0.4]])
    s = diagonal_copula(d)
    lines = [
        "#pragma once",
        "",
        "// Generated by tests/oracle/make_oracles.py; do not edit.",
        "namespace oracle {",
        "",
        "// Doubly stochastic scaling of [[1,2],[3,4]]: [[p, 1-p], [1-p, p]].",
        f"inline constexpr double kSinkhorn1234P = {fmt(p)};",
        "",
        "// Smallest eigenvalue of the partial transpose of the Bell state.",
        f"inline constexpr double kBellPtMin = {fmt(bell_pt_min())};",
        "",
        "// Eigenvalues of Pauli-X.",
        f"inline constexpr double kPauliXEig[2] = {{{fmt(-1.0)}, {fmt(1.0)}}};",
        "",
        "// d_H(diag(2, 1), I).",
        f"inline constexpr double kDiag21Distance = {fmt(np.log(2.0))};",
        "",
        "// Doubly stochastic scaling of [[0.1, 0.2], [0.3, 0.4]] (diagonal-state reduction input).",
        f"inline constexpr double kDiagScaled[4] = {{{', '.join(fmt(x) for x in s.ravel())}}};",
        "",
        "}  // namespace oracle",
    ]
    print("\n".join(lines))


if __name__ == "__main__":
    main()
