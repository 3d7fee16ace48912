"""Independent reference values for the frozen constants in the C++ tests.

Plain Python (fractions, mpmath); shares no code with the library. Run with
`python3 tests/oracles/oracles.py` and compare against the test constants.
"""
from fractions import Fraction as F
import math

from mpmath import mp, mpf, nint, sqrt, log


def katznelson(sched):
    M, N = sched[0]
    a = F(1, 1 + N * (M + 1))
    b = N * a
    U, V, W = (N + 1, M), (1, M + 1), (0, M + 1)
    eps = a
    out = [dict(alpha=a, beta=b, eps=eps, U=U, V=V, W=W, M=M, N=N)]
    for M, N in sched[1:]:
        c = F(1, N * (1 + M) + 1)
        d = F(N, N * (1 + M) + 1)
        a11, a12 = U[0] + c * W[0], U[1] + c * W[1]
        a21, a22 = V[0] + d * W[0], V[1] + d * W[1]
        det = a11 * a22 - a12 * a21
        s = (c * eps * a22 - a12 * d * eps) / det
        t = (a11 * d * eps - a21 * c * eps) / det
        e = s * U[0] + t * U[1]
        a, b = a + s, b + t
        Wn = (V[0] * (M + 1) + W[0], V[1] * (M + 1) + W[1])
        Un = ((N + 1) * U[0] + M * V[0] + W[0], (N + 1) * U[1] + M * V[1] + W[1])
        Vn = (U[0] + Wn[0], U[1] + Wn[1])
        U, V, W, eps = Un, Vn, Wn, e
        out.append(dict(alpha=a, beta=b, eps=eps, U=U, V=V, W=W, M=M, N=N, c=c))
    return out




def ds1_enumeration(st):
    # Expand U_2 letter by letter from the recursive definitions.
    M1, N1 = 32, 64
    M2, N2 = 256, 1024
    U1 = "x" * (N1 + 1) + "y" * M1
    V1 = "x" + "y" * (M1 + 1)
    W1 = "y" * (M1 + 1)
    W2 = V1 * (M2 + 1) + W1
    U2 = U1 * (N2 + 1) + V1 * M2 + W1
    a, b = st["alpha"], st["beta"]
    # Exact points over the common denominator.
    D = math.lcm(a.denominator, b.denominator)
    A, B = a.numerator * (D // a.denominator), b.numerator * (D // b.denominator)
    pos, pts = 0, {0}
    for ch in U2:
        pos = (pos + (A if ch == "x" else B)) % D
        pts.add(pos)
    pts = sorted(pts)
    eps = st["eps"]
    cells = {math.floor(F(p, D) / eps) for p in pts}
    gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)] + [D - pts[-1] + pts[0]]
    kept = [pts[0]]
    half = eps / 2
    for p in pts[1:]:
        if F(p - kept[-1], D) >= half:
            kept.append(p)
    if len(kept) > 1 and F(D - kept[-1] + kept[0], D) < half:
        kept.pop()
    return len(U2), len(pts), len(cells), F(min(gaps), D), len(kept)


def thin_desk():
    def iroot_ceil(x, n):
        lo, hi = 0, 1
        while F(hi) ** n < x:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if F(mid) ** n >= x:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def isqrt_ceil(n):
        r = math.isqrt(n)
        return r if r * r == n else r + 1

    def choose_L(N, T, buf=3):
        f = lambda L: (L + buf * isqrt_ceil(L)) * N
        lo, hi = 0, 1
        while f(hi) <= T:
            hi *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if f(mid) <= T:
                lo = mid
            else:
                hi = mid
        return lo

    m, eps, rho = 10, F(1, 2**40), 4
    a, b, k, l = F(1, 2) + eps / m, F(1, 2), m, m
    rows = []
    for n in (1, 2):
        Nn = k + l
        L = choose_L(Nn, iroot_ceil(1 / eps, n))
        r = isqrt_ceil(L)
        Vk, Vl = r * (2 * k - l), r * (2 * l + k)
        K, Lc = L * k + Vk, L * l + Vl
        R0 = K * a + Lc * b
        coef = K * l - Lc * k
        epsn = eps**rho
        gap = epsn - R0
        if coef < 0:
            gap = -gap
        t = (gap - math.floor(gap)) / abs(coef)
        a, b = a + t * l, b - t * k
        rows.append(dict(n=n, L=L, sqrtL=r, Vlen=Vk + Vl, Wlen=Nn, next_len=K + Lc))
        k, l, eps = K, Lc, epsn
    W2 = rows[1]["Wlen"]
    W3 = rows[1]["next_len"]
    L2 = rows[1]["L"]
    V1, V2 = rows[0]["Vlen"], rows[1]["Vlen"]
    d_above0 = max(F(V1, W2), F(L2 * V1 + V2, W3))
    d_above1 = F(V2, W3)
    return rows, a, b, d_above0, d_above1


def dioph():
    mp.prec = 256
    al, be = sqrt(2) - 1, sqrt(3) - 1
    nrm = lambda v: abs(v - nint(v))
    D, U = [None], [None]
    for n in range(1, 501):
        best = None
        for i in range(n + 1):
            v = nrm(i * al + (n - i) * be)
            if best is None or v < best[0]:
                best = (v, i)
        D.append(best[0])
        U.append((best[1], n - best[1]))
    mins, cur = [], None
    for n in range(1, 501):
        if cur is None or D[n] <= cur:
            mins.append(n)
            cur = D[n]
    hits = 0
    for i in range(1, 501):
        for j in range(1, 501):
            if i != j:
                r = D[j] / D[i]
                if r >= 0.5 and nrm(r) < mpf(2) ** -64:
                    hits += 1
    return mins, hits, D, U


def inverse_fixture():
    counts = {}
    for j in range(2, 9):
        m = 4**j
        counts[j] = len({(m // k) % m for k in range(1, 100001)})
    probes = {}
    pts = sorted(F(1, k) % 1 for k in range(1, 100001))
    for mm in (16, 64, 256):
        R = F(1, mm)
        cell = F(1, mm * mm)
        ext = pts + [p + 1 for p in pts]
        cells = [math.floor(p / cell) for p in ext]
        chg = [0] * len(ext)
        for i in range(1, len(ext)):
            chg[i] = chg[i - 1] + (cells[i] != cells[i - 1])
        n, j, best = len(pts), 0, 0
        for i in range(n):
            j = max(j, i)
            while j + 1 < i + n and ext[j + 1] <= ext[i] + R:
                j += 1
            best = max(best, 1 + chg[j] - chg[i])
        probes[mm] = best
    return counts, probes


if __name__ == "__main__":
    ds1 = katznelson([(32, 64), (256, 1024)])
    s2 = ds1[1]
    print("DS1 eps1", ds1[0]["eps"], "c2", s2["c"])
    print("DS1 eps2", s2["eps"])
    print("DS1 alpha2", s2["alpha"])
    print("DS1 beta2", s2["beta"])
    print("DS1 U2", s2["U"], "V2", s2["V"], "W2", s2["W"])
    print("DS1 enumeration |U2|, points, cells, min_gap, separated:", ds1_enumeration(s2))
    mp.prec = 128
    paper = katznelson([(2 ** ((2 * (n + 2)) ** 2), 2 ** ((2 * (n + 2) + 1) ** 2)) for n in range(1, 5)])
    lo = hi = mpf(1)
    for n, st in enumerate(paper, 1):
        lo *= st["N"]
        hi *= st["M"] + st["N"] + 2
        d = log(mpf(st["eps"].denominator) / st["eps"].numerator)
        print("paper bracket n=%d" % n, mp.nstr(log(lo) / d, 17), mp.nstr(log(hi) / d, 17))
    rows, a, b, d0, d1 = thin_desk()
    for r in rows:
        print("thin", r)
    print("thin alpha3 den bits", a.denominator.bit_length())
    print("thin upper density J_above_0", d0)
    print("thin upper density J_above_1", d1)
    mins, hits, D, U = dioph()
    print("dioph minimal", mins)
    print("dioph hits", hits)
    print("dioph delta_500", mp.nstr(D[500], 20), U[500], "delta_468", mp.nstr(D[468], 20), U[468])
    counts, probes = inverse_fixture()
    print("inverse grid counts", counts)
    print("inverse window best counts", probes)
