"""Independent oracle for the frozen expansion values used by test_eig_deriv.

Eigenvalues of X + tH + t^2/2 W are computed at 120 digits for a tiny t and
the first and second directional derivatives are read off by Richardson
extrapolation. Nothing here shares code with the C++ library.
"""
import mpmath as mp

mp.mp.dps = 120


def spectrum(a):
    ev = mp.eigsy(mp.matrix(a), eigvals_only=True)
    return sorted([ev[i] for i in range(len(ev))], reverse=True)


def derivatives(x, h, w):
    n = len(x)
    t = mp.mpf("1e-30")

    def at(s):
        m = [[x[i][j] + s * h[i][j] + s * s / 2 * w[i][j] for j in range(n)] for i in range(n)]
        return spectrum(m)

    l0, l1, l2 = at(0), at(t), at(2 * t)
    d1 = [(4 * (l1[i] - l0[i]) - (l2[i] - l0[i])) / (2 * t) for i in range(n)]
    d2 = [((l2[i] - l0[i]) - 2 * (l1[i] - l0[i])) / (t * t) for i in range(n)]
    return d1, d2


CASES = {
    "double_block_3x3": (
        [[1, 0, 0], [0, 1, 0], [0, 0, -1]],
        [[0.3, 0.2, 0.5], [0.2, -0.1, 0.4], [0.5, 0.4, 0.7]],
        [[0.1, 0, 0.2], [0, 0.5, -0.3], [0.2, -0.3, 0.0]],
    ),
    "inner_repeat_4x4": (
        [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 0]],
        [[1, 0, 0, 0.5], [0, 1, 0, -0.25], [0, 0, -1, 0.75], [0.5, -0.25, 0.75, 0.2]],
        [[0.3, 0.1, 0, 0], [0.1, -0.2, 0.4, 0], [0, 0.4, 0.1, 0.6], [0, 0, 0.6, -0.5]],
    ),
}

if __name__ == "__main__":
    for name, (x, h, w) in CASES.items():
        x = [[mp.mpf(v) for v in r] for r in x]
        h = [[mp.mpf(str(v)) for v in r] for r in h]
        w = [[mp.mpf(str(v)) for v in r] for r in w]
        d1, d2 = derivatives(x, h, w)
        print(name)
        print("  d1 =", ", ".join(mp.nstr(v, 17) for v in d1))
        print("  d2 =", ", ".join(mp.nstr(v, 17) for v in d2))
