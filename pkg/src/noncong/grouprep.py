"""Monomial representations of the modular group induced from index-3 characters.

A finite-order character of the index-3 subgroup is the pair (n, r) with
chi(U) = e^{2 pi i r / n} together with a sign eps = chi(V).  Inducing gives
a 3-dimensional representation by generalized permutation matrices whose
entries are 2n-th roots of unity; everything here is computed exactly on
the exponents mod 2n, never in floating point.

The module also classifies the character into the four structural cases
(parity of n crossed with eps), computes the diagonal exponents and minimal
weight used by the q-expansion machinery, the structure of the image group,
the n | 24 congruence-kernel predicate, and the cusp/genus invariants of
the associated curves including the hyperelliptic model y^2 = x^n + 64.

All data is immutable; every operation is a pure function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InconsistencyError, PreconditionError, ReducibleRepresentationError


@dataclass(frozen=True)
class CharacterData:
    """The triple (n, r, eps): chi(U) = e^{2 pi i r/n}, chi(V) = eps.

    n = 1 is the trivial case and is encoded with r = 0; otherwise
    0 < r < n and gcd(r, n) = 1 so that the root of unity is primitive.
    """

    n: int
    r: int
    eps: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("n must be a positive integer")
        if self.eps not in (1, -1):
            raise PreconditionError("eps must be +1 or -1")
        if self.n == 1:
            if self.r != 0:
                raise PreconditionError("n = 1 requires r = 0")
        elif not (0 < self.r < self.n and gcd(self.r, self.n) == 1):
            raise PreconditionError("need 0 < r < n with gcd(r, n) = 1")


class ReductionCase(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class MonomialMatrix:
    """3x3 generalized permutation matrix with entries in mu_{2n} or 0.

    The entry in row perm[j], column j is zeta^exps[j] where
    zeta = e^{2 pi i / modulus}.  eps = -1 is representable because
    zeta^n = -1 when modulus = 2n.
    """

    perm: tuple[int, int, int]
    exps: tuple[int, int, int]
    modulus: int

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2]:
            raise PreconditionError("perm must be a permutation of (0, 1, 2)")
        if self.modulus < 1:
            raise PreconditionError("modulus must be positive")
        object.__setattr__(self, "exps", tuple(e % self.modulus for e in self.exps))

    @classmethod
    def identity(cls, modulus: int) -> "MonomialMatrix":
        return cls((0, 1, 2), (0, 0, 0), modulus)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.modulus != other.modulus:
            raise PreconditionError("moduli differ")
        perm = tuple(self.perm[other.perm[j]] for j in range(3))
        exps = tuple(other.exps[j] + self.exps[other.perm[j]] for j in range(3))
        return MonomialMatrix(perm, exps, self.modulus)

    def inverse(self) -> "MonomialMatrix":
        inv = [0, 0, 0]
        for j in range(3):
            inv[self.perm[j]] = j
        exps = tuple(-self.exps[inv[j]] for j in range(3))
        return MonomialMatrix(tuple(inv), exps, self.modulus)

    def __pow__(self, k: int) -> "MonomialMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = MonomialMatrix.identity(self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def order(self) -> int:
        acc = self
        ident = MonomialMatrix.identity(self.modulus)
        for k in range(1, 6 * self.modulus + 1):
            if acc == ident:
                return k
            acc = acc * self
        raise InconsistencyError("order exceeded the theoretical bound")

    def eigenvalue_exponents(self) -> tuple[Fraction, ...]:
        """Eigenvalues as exponent fractions x with eigenvalue e^{2 pi i x}, sorted.

        Computed per permutation cycle: a cycle of length L whose entries
        multiply to zeta^S contributes the L solutions of x^L = zeta^S.
        """
        seen = [False, False, False]
        out: list[Fraction] = []
        for j0 in range(3):
            if seen[j0]:
                continue
            j, length, total = j0, 0, 0
            while not seen[j]:
                seen[j] = True
                total += self.exps[j]
                j = self.perm[j]
                length += 1
            for k in range(length):
                out.append((Fraction(total, self.modulus) + k) / length % 1)
        return tuple(sorted(out))

    def as_complex(self) -> list[list[complex]]:
        import cmath
        import math

        zeta = cmath.exp(2j * math.pi / self.modulus)
        m = [[0j] * 3 for _ in range(3)]
        for j in range(3):
            m[self.perm[j]][j] = zeta ** self.exps[j]
        return m

    def to_json_dict(self) -> dict:
        return {"perm": list(self.perm), "exps": list(self.exps), "modulus": self.modulus}


@dataclass(frozen=True)
class ExponentData:
    """Diagonal exponents r1, r2, r3 of the T-image, minimal weight data.

    Invariants: k0 = 2e + 4 = 4(r1+r2+r3) - 2, r2 - r3 = -1/2, and the
    shifted exponents are a = r1 - k0/12 etc.
    """

    r1: Fraction
    r2: Fraction
    r3: Fraction
    e: int
    k0: int
    a: Fraction
    b: Fraction
    c: Fraction


@dataclass(frozen=True)
class CurveInvariants:
    """Cusp counts and genera of the curves attached to the character kernel."""

    case: ReductionCase
    cusps_H0: int
    cusps_H1: int
    genus_H0: int
    genus_H1: int
    genus_H: int | None
    hyperelliptic_eq: tuple[int, int] | None


def classify_case(chi: CharacterData) -> ReductionCase:
    """A: n odd, eps=-1; B: n odd, eps=+1; C: n even, eps=-1; D: n even, eps=+1."""
    if chi.n % 2 == 1:
        return ReductionCase.A if chi.eps == -1 else ReductionCase.B
    return ReductionCase.C if chi.eps == -1 else ReductionCase.D


def induced_rep(chi: CharacterData) -> tuple[MonomialMatrix, MonomialMatrix, MonomialMatrix]:
    """Images (rho(R), rho(S), rho(T)) as monomial matrices mod 2n.

    rho(R) is the 3-cycle; rho(S) = eps * antidiag(lambda, 1, conj(lambda));
    rho(T) = eps * (lambda at (1,1), swap of the last two coordinates with
    entries 1 and conj(lambda)); S*R = T and S^2 = R^3 = I hold exactly.
    """
    n, r = chi.n, chi.r
    mod = 2 * n
    s = 0 if chi.eps == 1 else n
    rho_r = MonomialMatrix((2, 0, 1), (0, 0, 0), mod)
    rho_s = MonomialMatrix((2, 1, 0), (s - 2 * r, s, s + 2 * r), mod)
    rho_t = MonomialMatrix((0, 2, 1), (s + 2 * r, s - 2 * r, s), mod)
    return rho_r, rho_s, rho_t


def exponent_data(chi: CharacterData) -> ExponentData:
    """Exponents in [0,1) of the diagonalized T-image and the minimal weight.

    e is -1 in cases A/C with r >= n/2, +1 in cases A/C with r < n/2 and 0
    in cases B/D; then r1 = (2r + e n)/(2n) and k0 = 2e + 4.
    """
    if 3 % chi.n == 0:
        raise ReducibleRepresentationError(
            f"n = {chi.n} divides 3: the representation is reducible"
        )
    n, r = chi.n, chi.r
    case = classify_case(chi)
    if case in (ReductionCase.A, ReductionCase.C):
        e = -1 if 2 * r >= n else 1
    else:
        e = 0
    k0 = 2 * e + 4
    r1 = Fraction(2 * r + e * n, 2 * n)
    r2 = Fraction(n - r, 2 * n)
    r3 = Fraction(2 * n - r, 2 * n)
    shift = Fraction(k0, 12)
    data = ExponentData(r1, r2, r3, e, k0, r1 - shift, r2 - shift, r3 - shift)
    if 4 * (r1 + r2 + r3) - 2 != k0:
        raise InconsistencyError("weight identity k0 = 4(r1+r2+r3) - 2 violated")
    return data


def _smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of a small integer matrix."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    diag: list[int] = []
    top = 0
    while top < min(nr, nc):
        # find the smallest nonzero entry in the remaining block
        pivot = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        m[top], m[i0] = m[i0], m[top]
        for row in m:
            row[top], row[j0] = row[j0], row[top]
        changed = True
        while changed:
            changed = False
            for i in range(top + 1, nr):
                q = m[i][top] // m[top][top]
                if q:
                    for j in range(top, nc):
                        m[i][j] -= q * m[top][j]
                if m[i][top]:
                    m[top], m[i] = m[i], m[top]
                    changed = True
            for j in range(top + 1, nc):
                q = m[top][j] // m[top][top]
                if q:
                    for i in range(top, nr):
                        m[i][j] -= q * m[i][top]
                if m[top][j]:
                    for i in range(top, nr):
                        m[i][top], m[i][j] = m[i][j], m[i][top]
                    changed = True
        diag.append(abs(m[top][top]))
        top += 1
    # enforce the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g if g else 0
    return diag


def _diagonal_subgroup_closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    """Additive closure of the given exponent vectors in (Z/n)^3."""
    seen = {tuple(0 for _ in range(3))}
    frontier = [tuple(x % n for x in g) for g in gens]
    for g in frontier:
        seen.add(g)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % n for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


class ImageStructure(tuple):
    """(order, abelian_invariants) of the image group."""

    __slots__ = ()

    def __new__(cls, order: int, invariants: tuple[int, int]):
        return super().__new__(cls, (order, invariants))

    @property
    def order(self) -> int:
        return self[0]

    @property
    def invariants(self) -> tuple[int, int]:
        return self[1]


def image_structure(chi: CharacterData) -> ImageStructure:
    """Order and abelian invariants of the image of the induced representation.

    The diagonal subgroup A is generated inside (Z/n)^3 by the exponent
    vectors (2r, -r, -r) and (r, r, -2r) of the squared-translation and
    parabolic generators; its invariant factors come from the Smith normal
    form of that 2x3 matrix, and the full image has order 6 |A|.  Both
    numbers are cross-checked by brute-force enumeration.
    """
    n, r = chi.n, chi.r
    gens = [(2 * r, -r, -r), (r, r, -2 * r)]
    d = _smith_diagonal([list(g) for g in gens])
    while len(d) < 2:
        d.append(0)
    invariants = (n // gcd(d[0], n), n // gcd(d[1], n))
    order = 6 * invariants[0] * invariants[1]

    enum_a = _diagonal_subgroup_closure(gens, n)
    if len(enum_a) != invariants[0] * invariants[1]:
        raise InconsistencyError("lattice and enumeration counts of A disagree")
    max_order = 1
    for v in enum_a:
        o = n // gcd(n, gcd(gcd(v[0], v[1]), v[2])) if any(v) else 1
        max_order = max(max_order, o)
    if max_order != max(invariants[0], 1):
        raise InconsistencyError("largest element order does not match invariants")

    rho_r, rho_s, _ = induced_rep(chi)
    seen = {MonomialMatrix.identity(2 * n)}
    frontier = [rho_r, rho_s]
    seen.update(frontier)
    while frontier:
        nxt = []
        for m in frontier:
            for g in (rho_r, rho_s):
                w = m * g
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(seen) != order:
        raise InconsistencyError(
            f"matrix enumeration found {len(seen)} elements, expected {order}"
        )
    return ImageStructure(order, invariants)


def kernel_is_congruence(n: int) -> bool:
    """Whether the kernel of the induced representation is a congruence subgroup."""
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    return 24 % n == 0


def curve_invariants(chi: CharacterData) -> CurveInvariants:
    """Cusp counts and genera of the curves cut out by the character kernel.

    The degree-2 quotient curve always has two cusps and genus 0; for odd n
    the kernel curve has three cusps and genus (n-1)/2, for even n four
    cusps and genus (n-2)/2.  In cases A, B, D the kernel curve is the
    hyperelliptic curve y^2 = x^n + 64; in case C the intermediate curve
    has genus floor(n/4).
    """
    case = classify_case(chi)
    n = chi.n
    if n % 2 == 1:
        cusps_h0, genus_h0 = 3, (n - 1) // 2
    else:
        cusps_h0, genus_h0 = 4, (n - 2) // 2
    genus_h = n // 4 if case is ReductionCase.C else None
    eq = (n, 64) if case is not ReductionCase.C else None
    return CurveInvariants(
        case=case,
        cusps_H0=cusps_h0,
        cusps_H1=2,
        genus_H0=genus_h0,
        genus_H1=0,
        genus_H=genus_h,
        hyperelliptic_eq=eq,
    )
