"""Independent reference implementations used to freeze expected values.

Nothing here imports the package: arithmetic is naive polynomial schoolbook
code over GF(p), and every equation is checked with explicit loops over
Python lists of canonical indices.
"""

from itertools import product


class NaiveField:
    """GF(p^k) = GF(p)[t]/(poly); elements are canonical indices."""

    def __init__(self, p, poly=(0, 1)):
        self.p = p
        self.poly = list(poly)
        self.k = len(poly) - 1
        self.q = p**self.k

    def digits(self, i):
        return [(i // self.p**j) % self.p for j in range(self.k)]

    def index(self, ds):
        return sum(d * self.p**j for j, d in enumerate(ds))

    def add(self, a, b):
        return self.index([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.index([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k)
        for i, x in enumerate(self.digits(a)):
            for j, y in enumerate(self.digits(b)):
                prod[i + j] += x * y
        # reduce by the monic modulus from the top
        for top in range(2 * k - 1, k - 1, -1):
            c = prod[top] % p
            if c:
                for j, m in enumerate(self.poly):
                    prod[top - k + j] -= c * m
        return self.index([c % p for c in prod[:k]])


class NaiveZn:
    def __init__(self, n):
        self.p = n
        self.q = n

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return a * b % self.q


def cauchy(F, f):
    return [[F.sub(f[F.add(x, y)], F.add(f[x], f[y])) for y in range(F.q)] for x in range(F.q)]


def leibniz(F, f):
    return [[F.sub(f[F.mul(x, y)], F.add(F.mul(x, f[y]), F.mul(y, f[x]))) for y in range(F.q)] for x in range(F.q)]


def is_additive(F, f):
    return all(f[F.add(x, y)] == F.add(f[x], f[y]) for x in range(F.q) for y in range(F.q))


def is_leibniz(F, f):
    return all(
        f[F.mul(x, y)] == F.add(F.mul(x, f[y]), F.mul(y, f[x])) for x in range(F.q) for y in range(F.q)
    )


def all_tables(q):
    return [list(t) for t in product(range(q), repeat=q)]


def solves_E(F, f, g):
    return cauchy(F, f) == leibniz(F, g)


def brute_solutions_E(F):
    tabs = all_tables(F.q)
    C = {tuple(map(tuple, cauchy(F, f))): [] for f in tabs}
    for f in tabs:
        C[tuple(map(tuple, cauchy(F, f)))].append(tuple(f))
    out = []
    for g in tabs:
        key = tuple(map(tuple, leibniz(F, g)))
        for f in C.get(key, []):
            out.append((f, tuple(g)))
    return sorted(out)


def poly_roots(p, coeffs):
    return [x for x in range(p) if sum(c * x**i for i, c in enumerate(coeffs)) % p == 0]
