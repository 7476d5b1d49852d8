#!/usr/bin/env python3
"""Regenerate the primitive-polynomial tables embedded in src/gf.cpp.

For p in {2, 3} and each degree k up to 12 this finds the monic degree-k
polynomial over F_p that (a) is irreducible, (b) has x as a generator of the
multiplicative group of F_p[x]/(f), and (c) is minimal when its coefficient
vector (c_0, ..., c_{k-1}) is read as the base-p integer sum c_i * p^i.  The
tables are frozen in gf.cpp so builds need no generator step; run this script
only to audit them.  It prints the C++ initializer plus a small block of
arithmetic facts used as frozen cross-checks in tests/test_gf.cpp.
"""

MAX_DEGREE = 12


def poly_mulmod(a, b, f, p):
    """Product of coefficient lists a, b reduced mod (f, p); f monic."""
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * f[j]) % p
    prod = prod[:k]
    while len(prod) > 1 and prod[-1] == 0:
        prod.pop()
    return prod


def poly_powmod(base, e, f, p):
    acc = [1]
    while e:
        if e & 1:
            acc = poly_mulmod(acc, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return acc


def poly_trim(a):
    a = a[:]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_rem(a, b, p):
    """Remainder of a modulo b (b nonzero), coefficients mod p."""
    a, b = poly_trim(a), poly_trim(b)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a != [0]:
        c = (a[-1] * inv) % p
        sh = len(a) - len(b)
        for j in range(len(b)):
            a[sh + j] = (a[sh + j] - c * b[j]) % p
        a = poly_trim(a)
    return a


def poly_gcd(a, b, p):
    a, b = poly_trim(a), poly_trim(b)
    while b != [0]:
        a, b = b, poly_rem(a, b, p)
    return a


def is_irreducible(f, p):
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x and gcd(x^(p^(k/ell)) - x, f) = 1 for prime ell | k.
    t = poly_powmod(x, p ** k, f, p)
    if t != x:
        return False
    for ell in {d for d in range(2, k + 1) if k % d == 0 and is_prime(d)}:
        t = poly_powmod(x, p ** (k // ell), f, p)
        n = max(len(t), 2)
        diff = poly_trim([((t[i] if i < len(t) else 0) - (x[i] if i < 2 else 0)) % p
                          for i in range(n)])
        if len(poly_gcd(diff, f, p)) > 1:
            return False
    return True


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(f, p):
    if not is_irreducible(f, p):
        return False
    k = len(f) - 1
    n = p ** k - 1
    x = [0, 1]
    if poly_powmod(x, n, f, p) != [1]:
        return False
    return all(poly_powmod(x, n // ell, f, p) != [1] for ell in prime_factors(n))


def minimal_primitive(p, k):
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        f = low + [1]
        if is_primitive(f, p):
            return f
    raise AssertionError("no primitive polynomial found")


def poly_str(f, var="x"):
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            base = var if i == 1 else f"{var}^{i}"
            terms.append(base if c == 1 else f"{c}{base}")
    return " + ".join(terms) if terms else "0"


def main():
    tables = {}
    for p in (2, 3):
        tables[p] = [minimal_primitive(p, k) for k in range(1, MAX_DEGREE + 1)]

    print("// Coefficient lists c_0..c_k, one row per degree 1..12:")
    for p in (2, 3):
        print(f"// p = {p}")
        for f in tables[p]:
            body = ", ".join(str(c) for c in f)
            print(f"    {{{body}}},  // {poly_str(f)}")

    # Frozen multiplication/inverse facts (codes are base-p digit packings).
    print("\n// Frozen arithmetic facts (a, b, a*b, a^-1 as codes):")
    for p, k in ((2, 3), (2, 4), (3, 2), (3, 3)):
        f = tables[p][k - 1]

        def decode(code):
            return [(code // p ** i) % p for i in range(k)]

        def encode(poly):
            return sum(c * p ** i for i, c in enumerate(poly + [0] * k))

        n = p ** k - 1
        facts = []
        for a, b in ((3, 5), (5, 7), (4, 7)):
            ab = encode(poly_mulmod(decode(a), decode(b), f, p))
            ainv = encode(poly_powmod(decode(a), n - 1, f, p))
            facts.append((a, b, ab, ainv))
        print(f"  GF({p}^{k}), f = {poly_str(f)}: {facts}")


if __name__ == "__main__":
    main()
