"""Naive reference arithmetic for the tests.

Polynomials are plain ``{exponent: Fraction}`` dicts truncated below ``n``;
nothing here touches the package's series machinery.
"""

from fractions import Fraction


def pmul(a, b, n):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e < n:
                out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def padd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def geometric_inverse(c, e, n):
    """1 / (1 - c q^e) for e > 0, as sum (c q^e)^j."""
    assert e > 0
    out, j = {}, 0
    while j * e < n:
        out[j * e] = Fraction(c) ** j
        j += 1
    return out


def binom(c, e):
    return padd({0: Fraction(1)}, {e: -Fraction(c)})


def poch(c, e, base, count, n):
    """prod_{j<count} (1 - c q^(e + base j)) truncated below n."""
    out = {0: Fraction(1)}
    for j in range(count):
        out = pmul(out, binom(c, e + base * j), n)
    return out


def poch_inverse(c, e, base, count, n):
    out = {0: Fraction(1)}
    for j in range(count):
        out = pmul(out, geometric_inverse(c, e + base * j, n), n)
    return out


def coeff_list(p, n, step=1):
    out = []
    e = 0
    while e < n:
        out.append(p.get(e, 0))
        e += step
    return out


def psi(n):
    out, k = {}, 0
    while k * (k + 1) // 2 < n:
        out[k * (k + 1) // 2] = Fraction(1)
        k += 1
    return out


def count_t2(n):
    """Representations n = T_x + 4 T_y by a different walk than the package (fixed y first)."""
    count = 0
    for y in range(n + 1):
        r = n - 2 * y * (y + 1)
        if r < 0:
            break
        # T_x = r  <=>  8r + 1 is an odd square
        s = 8 * r + 1
        root = int(s ** 0.5)
        while root * root > s:
            root -= 1
        while (root + 1) ** 2 <= s:
            root += 1
        if root * root == s:
            count += 1
    return count
