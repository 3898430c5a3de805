"""High-precision reference values frozen into the unit tests (mpmath, 50 digits)."""
import itertools
import mpmath as mp

mp.mp.dps = 50


def pds(d, x, lam):
    if x == 0:
        return mp.mpf(0)
    if d == 0:
        return 2 * x * mp.log(x / lam)
    return 2 / (d * (d + 1)) * x * ((x / lam) ** d - 1)


def poisson(r, lam):
    return mp.exp(r * mp.log(lam) - lam - mp.loggamma(r + 1))


def moments(h, lam):
    lam = mp.mpf(lam)
    R = int(lam + 40 * mp.sqrt(lam + 1) + 120)
    p = [poisson(r, lam) for r in range(R)]
    H = [h(r, lam) for r in range(R)]
    Eh = mp.fsum(a * b for a, b in zip(p, H))
    u = [x - Eh for x in H]
    v = [r - lam for r in range(R)]
    tau = mp.fsum(p[r] * u[r] * v[r] for r in range(R)) / lam
    g = [u[r] - tau * v[r] for r in range(R)]
    w = [(r - lam) ** 2 - r for r in range(R)]
    sg = mp.fsum(p[r] * g[r] ** 2 for r in range(R))
    sw = mp.fsum(p[r] * w[r] ** 2 for r in range(R))
    return Eh, sg, mp.fsum(p[r] * g[r] * w[r] for r in range(R)) / mp.sqrt(sg * sw)


def fr(s):
    if "/" in s:
        a, b = s.split("/")
        return mp.mpf(a) / mp.mpf(b)
    return mp.mpf(s)


D = ["-2/3", "-1/2", "-1/3", "0", "1/3", "1/2", "2/3", "1", "3/2", "2", "5/2", "3", "4", "5"]
L = ["0.05", "0.1", "0.5", "1", "1.5", "2", "3", "10", "20", "50"]

print("// |rho| grid")
for d in D:
    row = [abs(moments(lambda x, l: pds(fr(d), x, l), fr(l))[2]) for l in L]
    print("{" + ", ".join(mp.nstr(v, 15) for v in row) + "},")

print("// E h and sigma^2 for log-likelihood and Freeman-Tukey at lambda = 1, 3")
for d in ["0", "-1/2"]:
    for l in ["1", "3"]:
        Eh, s2, _ = moments(lambda x, lam: pds(fr(d), x, lam), fr(l))
        print(d, l, mp.nstr(Eh, 17), mp.nstr(s2, 17))

print("// indicator r=0 at lambda=1: rho, sigma^2")
Eh, s2, rho = moments(lambda x, lam: mp.mpf(1) if x == 0 else mp.mpf(0), mp.mpf(1))
print(mp.nstr(rho, 17), mp.nstr(s2, 17))


# Exact slope of the empty-cells statistic, from its two-branch closed form.
def empty_cells_slope(b0, lam):
    lam = mp.mpf(lam)

    def z_of(t):
        return mp.findroot(lambda z: z - lam * (mp.exp(t - z) + 1 - mp.exp(-z)), lam)

    def c(t):
        z = z_of(t)
        psi = mp.exp(t - z) + 1 - mp.exp(-z)
        return lam * mp.log(lam) - lam + z - lam * mp.log(z) + mp.log(psi)

    def cp(t):
        z = z_of(t)
        psi = mp.exp(t - z) + 1 - mp.exp(-z)
        return mp.exp(t - z) / psi

    t0 = mp.findroot(lambda t: cp(t) - b0, 0.5)
    return t0, t0 * b0 - c(t0), c(1)


for b0 in ["0.5", "0.6", "0.2"]:
    t0, J, c1 = empty_cells_slope(mp.mpf(b0), 1)
    print("empty cells b0", b0, "t0", mp.nstr(t0, 17), "J", mp.nstr(J, 17), "c(1)", mp.nstr(c1, 17))


def upsilon(b, lam, corrected=True):
    lam = mp.mpf(lam)
    m = len(b) - 1
    B = mp.fsum(b)
    M = mp.fsum(r * b[r] for r in range(m + 1))

    def tail(k, w):  # P(xi > k)
        return 1 - mp.fsum(poisson(r, w) for r in range(k + 1)) if k >= 0 else mp.mpf(1)

    f = lambda w: w * (1 - B) / (lam - M) - tail(m, w) / tail(m - 1, w)
    w = mp.findroot(f, lam)
    den = tail(m, w) if corrected else tail(m - 1, w)
    I = mp.fsum(b[r] * mp.log(b[r] / poisson(r, w)) for r in range(m + 1)) + (1 - B) * mp.log((1 - B) / den)
    J = lam - w + lam * mp.log(w / lam) + I
    a = [mp.log(b[r] / poisson(r, w)) - mp.log((1 - B) / tail(m, w)) for r in range(m + 1)]
    return w, I, J, a


for b, lam in [([mp.mpf("0.5")], 1), ([mp.mpf("0.45"), mp.mpf("0.30")], 1)]:
    for corrected in (True, False):
        w, I, J, a = upsilon(b, lam, corrected)
        print("upsilon", [str(x) for x in b], "corrected" if corrected else "printed", "omega",
              mp.nstr(w, 17), "I", mp.nstr(I, 17), "J", mp.nstr(J, 17), "a", [mp.nstr(x, 17) for x in a])

print("kullback example", mp.nstr(mp.mpf("0.5") * mp.log(mp.mpf("0.5") / mp.exp(-1))
                                   + mp.mpf("0.5") * mp.log(mp.mpf("0.5") / (1 - mp.exp(-1))), 17))


# Exact moments of mu_r by enumerating all allocations.
def enumerate_moments(n, N, r):
    total = mp.mpf(0)
    s1 = mp.mpf(0)
    s2 = mp.mpf(0)
    for cells in itertools.product(range(N), repeat=n):
        counts = [cells.count(k) for k in range(N)]
        mu = counts.count(r)
        total += 1
        s1 += mu
        s2 += mu * mu
    mean = s1 / total
    return mean, s2 / total - mean ** 2


for n, N, r in [(4, 3, 0), (4, 3, 1), (4, 3, 2), (5, 4, 1), (6, 3, 2)]:
    mean, var = enumerate_moments(n, N, r)
    print("count moments", n, N, r, mp.nstr(mean, 17), mp.nstr(var, 17))

e = mp.exp(-1)
print("sigma_0^2 at lambda=1", mp.nstr(e * (1 - e) - e ** 2, 17))
