"""Number fields of degree <= 4 with exact element and ideal arithmetic.

A field is built from a monic irreducible integer polynomial. The maximal
order is computed by radical saturation at every prime whose square divides
the polynomial discriminant, and its correctness is certified afterwards:
the multiplication table over the integral basis must be integral and the
trace-pairing Gram determinant must equal the field discriminant.

Elements carry exact rational coordinates over the integral basis, so all
arithmetic (including norms, traces and ideal operations) is rounding-free.
Archimedean data lives in certified interval boxes only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import PrecisionUnreachable, UnsupportedDegree, ZeroIdeal
from .hnf import (fp_kernel, hnf_columns, kernel_int, lcm_list, mat_det,
                  mat_inverse, mat_vec, solve_upper)
from .intervals import Iv
from .polynomials import (certify_irreducible, count_real_roots, deg,
                          poly_discriminant, poly_divmod, poly_mul, root_bound)
from .roots import RootEnclosures, eval_interval


def _pb_mul(f_coeffs, a, b):
    """Multiply two power-basis coordinate vectors modulo the field polynomial."""
    prod = poly_mul(list(a), list(b))
    _, r = poly_divmod(prod, f_coeffs)
    r = list(r) + [Fraction(0)] * (deg(f_coeffs) - len(r))
    return [Fraction(c) for c in r[:deg(f_coeffs)]]


class NumberField:
    """Immutable number field; constructed through make_field."""

    def __init__(self, coeffs: list[int]):
        certify_irreducible(list(coeffs))
        self.coeffs = tuple(int(c) for c in coeffs)
        self.degree = deg(coeffs)
        n = self.degree
        bound = root_bound(list(coeffs))
        r1 = (1 if n == 1 else
              count_real_roots(list(coeffs), -bound, bound))
        self.signature = (r1, (n - r1) // 2)
        pd = poly_discriminant(list(coeffs))
        assert pd.denominator == 1 and pd != 0
        self.poly_disc = int(pd)
        basis_pb = _maximal_order(list(self.coeffs), self.poly_disc)
        self.basis_pb = tuple(tuple(row) for row in basis_pb)
        det_b = mat_det(basis_pb)
        self.index = int(1 / abs(det_b))  # [O : Z[theta]]
        self.discriminant = self.poly_disc // (self.index**2)
        # conversion matrices between integral-basis and power-basis coords
        bt = [[basis_pb[i][j] for i in range(n)] for j in range(n)]
        self._bt = bt
        self._bt_inv = mat_inverse(bt)
        # integer multiplication table over the integral basis
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod_pb = _pb_mul(list(self.coeffs), basis_pb[i], basis_pb[j])
                c = mat_vec(self._bt_inv, prod_pb)
                assert all(x.denominator == 1 for x in c), "basis not a ring"
                row.append(tuple(int(x) for x in c))
            table.append(tuple(row))
        self.mult_table = tuple(table)
        self._mt_by_basis = [self._mult_matrix_int(i) for i in range(n)]
        # trace of omega_i * omega_j certifies the discriminant
        gram = [[self._trace_int_coords(self.mult_table[i][j])
                 for j in range(n)] for i in range(n)]
        self.trace_gram = tuple(tuple(row) for row in gram)
        assert int(mat_det(gram)) == self.discriminant, \
            "trace Gram determinant does not certify the discriminant"
        self._roots: RootEnclosures | None = None
        self._pow_cache: dict = {}

    # -- low-level helpers -----------------------------------------------------

    def _mult_matrix_int(self, i):
        n = self.degree
        return [[self.mult_table[i][j][k] for j in range(n)] for k in range(n)]

    def _trace_int_coords(self, coords) -> int:
        n = self.degree
        return sum(sum(coords[i] * self._mt_by_basis[i][k][k] for i in range(n))
                   for k in range(n))

    def mult_matrix(self, coords):
        """Matrix of multiplication by the element with the given ib-coords."""
        n = self.degree
        return [[sum(Fraction(coords[i]) * self._mt_by_basis[i][k][j]
                     for i in range(n)) for j in range(n)] for k in range(n)]

    # -- public ----------------------------------------------------------------

    def element(self, coords) -> "FieldElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError("coordinate length mismatch")
        return FieldElement(self, coords)

    def zero(self):
        return self.element([0] * self.degree)

    def one(self):
        return self.element([1] + [0] * (self.degree - 1))

    def gen(self) -> "FieldElement":
        """The root of the defining polynomial as a field element."""
        pb = [Fraction(0)] * self.degree
        if self.degree == 1:
            return self.element([Fraction(-self.coeffs[0])])
        pb[1] = Fraction(1)
        return self.from_power_basis(pb)

    def from_power_basis(self, pb_coords) -> "FieldElement":
        c = mat_vec(self._bt_inv, [Fraction(x) for x in pb_coords])
        return FieldElement(self, tuple(c))

    def from_rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)] + [0] * (self.degree - 1))

    def roots(self) -> RootEnclosures:
        if self._roots is None:
            self._roots = RootEnclosures(list(self.coeffs))
        return self._roots

    def maximal_order(self) -> "FractionalIdeal":
        n = self.degree
        return FractionalIdeal(self, [[1 if i == j else 0 for j in range(n)]
                                      for i in range(n)], 1)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"NumberField({list(self.coeffs)})"


@lru_cache(maxsize=64)
def _make_field_cached(coeffs: tuple) -> NumberField:
    return NumberField(list(coeffs))


def make_field(coeffs) -> NumberField:
    """Number field defined by a monic integer polynomial, ascending coeffs."""
    if not coeffs:
        raise UnsupportedDegree("empty coefficient list")
    return _make_field_cached(tuple(int(c) for c in coeffs))


def _maximal_order(f_coeffs, disc_poly) -> list[list[Fraction]]:
    """Basis of the maximal order over the power basis (rows; HNF canonical).

    Radical saturation: at each p with p^2 | disc(f), repeatedly replace the
    order O by the multiplier ring of its p-radical until the index at p is
    stable. Primes whose square does not divide disc(f) are already maximal.
    """
    from .qmath import factorize

    n = deg(f_coeffs)
    basis = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    if n == 1:
        return basis
    for p, e in sorted(factorize(disc_poly).items()):
        if e < 2:
            continue
        while True:
            enlarged = _enlarge_at_p(f_coeffs, basis, p)
            if enlarged is None:
                break
            basis = enlarged
    return _hnf_basis(basis)


def _enlarge_at_p(f_coeffs, basis, p):
    """One multiplier-ring step at p; None when the order is p-maximal."""
    n = deg(f_coeffs)
    bt = [[basis[i][j] for i in range(n)] for j in range(n)]
    bt_inv = mat_inverse(bt)

    def to_order_coords(pb):
        return mat_vec(bt_inv, pb)

    def order_mul(ci, cj):
        pb_i = [sum(Fraction(ci[i]) * basis[i][j] for i in range(n)) for j in range(n)]
        pb_j = [sum(Fraction(cj[i]) * basis[i][j] for i in range(n)) for j in range(n)]
        return to_order_coords(_pb_mul(f_coeffs, pb_i, pb_j))

    pm = 1
    while pm < n:
        pm *= p
    # Frobenius-power matrix on O/pO
    frob_cols = []
    for i in range(n):
        acc = [Fraction(1 if k == 0 else 0) for k in range(n)]  # 1 in O-coords
        base = [Fraction(1 if k == i else 0) for k in range(n)]
        e = pm
        while e:
            if e & 1:
                acc = order_mul(acc, base)
            base = order_mul(base, base)
            e >>= 1
        assert all(x.denominator == 1 for x in acc)
        frob_cols.append([int(x) % p for x in acc])
    frob_rows = [[frob_cols[j][i] for j in range(n)] for i in range(n)]
    rad_kernel = fp_kernel(frob_rows, p)
    # radical lattice in O-coords: kernel lifts plus p*O
    rad_cols = [list(v) for v in rad_kernel]
    rad_cols += [[p if i == j else 0 for i in range(n)] for j in range(n)]
    rad = hnf_columns(rad_cols)
    rad_cols = [[rad[i][j] for i in range(n)] for j in range(n)]
    rad_inv = mat_inverse(rad)

    # y in O with y * rad <= p * rad, as a kernel over F_p
    rows = []
    for rj in rad_cols:
        images = []
        for i in range(n):
            ei = [Fraction(1 if k == i else 0) for k in range(n)]
            prod = order_mul(ei, [Fraction(c) for c in rj])
            rc = mat_vec(rad_inv, prod)
            assert all(x.denominator == 1 for x in rc), "radical is not an ideal"
            images.append([int(x) for x in rc])
        for k in range(n):
            rows.append([images[i][k] % p for i in range(n)])
    mult_kernel = fp_kernel(rows, p)
    new_cols = [list(v) for v in mult_kernel]
    new_cols += [[p if i == j else 0 for i in range(n)] for j in range(n)]
    m_lattice = hnf_columns(new_cols)
    det_m = 1
    for i in range(n):
        det_m *= m_lattice[i][i]
    if det_m == p**n:  # M = pO, no growth
        return None
    # O' = (1/p) M, expressed back in power-basis rows
    new_rows = []
    for j in range(n):
        coords = [Fraction(m_lattice[i][j], p) for i in range(n)]
        pb = [sum(coords[i] * basis[i][k] for i in range(n)) for k in range(n)]
        new_rows.append(pb)
    return _hnf_basis(new_rows)


def _hnf_basis(rows) -> list[list[Fraction]]:
    """Canonical HNF form of an order basis given by power-basis rows."""
    n = len(rows)
    den = lcm_list([c.denominator for row in rows for c in row] or [1])
    cols = [[int(rows[j][i] * den) for i in range(n)] for j in range(n)]
    h = hnf_columns(cols)
    return [[Fraction(h[i][j], den) for i in range(n)] for j in range(n)]
    # note: column j of h becomes basis row j


class FieldElement:
    """Element with exact rational coordinates over the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        return FieldElement(self.field, tuple(a + b for a, b in
                                              zip(self.coords, other.coords)))

    def __sub__(self, other):
        return FieldElement(self.field, tuple(a - b for a, b in
                                              zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            m = self.field.mult_matrix(self.coords)
            return FieldElement(self.field, tuple(mat_vec(m, other.coords)))
        q = Fraction(other)
        return FieldElement(self.field, tuple(c * q for c in self.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FieldElement":
        base = self if k >= 0 else self.inverse()
        out = self.field.one()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        m = self.field.mult_matrix(self.coords)
        inv = mat_inverse(m)
        one = [Fraction(1)] + [Fraction(0)] * (self.field.degree - 1)
        return FieldElement(self.field, tuple(mat_vec(inv, one)))

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def norm(self) -> Fraction:
        return mat_det(self.field.mult_matrix(self.coords))

    def trace(self) -> Fraction:
        m = self.field.mult_matrix(self.coords)
        return sum(m[k][k] for k in range(self.field.degree))

    def power_basis(self) -> list[Fraction]:
        return mat_vec(self.field._bt, list(self.coords))

    def denominator(self) -> int:
        """Least d > 0 with d * self integral."""
        return lcm_list([c.denominator for c in self.coords] or [1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def as_rational(self) -> Fraction:
        """The value when the element lies in Q; raises otherwise."""
        pb = self.power_basis()
        if any(c != 0 for c in pb[1:]):
            raise ValueError("element is not rational")
        return pb[0]


def elem_norm_trace(x: FieldElement):
    """Field norm and trace, both exact rationals."""
    return x.norm(), x.trace()


@dataclass(frozen=True)
class EmbeddingBox:
    """Certified enclosures of every archimedean embedding of an element."""
    reals: tuple
    complexes: tuple
    precision: Fraction

    def norm_interval(self) -> Iv:
        """Interval containing |field norm|: reals times squared moduli."""
        out = Iv.point(1)
        for r in self.reals:
            out = out * r.abs()
        for z in self.complexes:
            out = out * z.abs_sq()
        return out


def embed(x: FieldElement, precision) -> EmbeddingBox:
    """Boxes of width <= precision around each embedding.

    Deterministic in (x, precision): root enclosures only ever advance
    through canonical refinement levels, so the result never depends on
    what else has been computed in the process. Smaller precision gives
    nested boxes.
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    field = x.field
    roots = field.roots()
    pb = x.power_basis()
    level = 16
    for _ in range(80):
        roots.ensure_level(level)
        reals = [eval_interval(pb, box) for box in roots.real]
        comps = [eval_interval(pb, box) for box in roots.cplx]
        widths = [r.width for r in reals] + [c.width for c in comps]
        if not widths or max(widths) <= precision:
            return EmbeddingBox(tuple(reals), tuple(comps), precision)
        level += 6
    raise PrecisionUnreachable(f"embedding width target {precision} not met")


class FractionalIdeal:
    """Fractional ideal as an upper-triangular column HNF over the basis.

    The lattice is (1/den) * columns(hnf) in integral-basis coordinates; the
    representation is canonical, so equality is structural equality.
    """

    __slots__ = ("field", "hnf", "den")

    def __init__(self, field: NumberField, hnf_matrix, den: int, _checked=False):
        n = field.degree
        self.field = field
        g = den
        for row in hnf_matrix:
            for c in row:
                g = gcd(g, c)
        self.hnf = tuple(tuple(int(c // g) for c in row) for row in hnf_matrix)
        self.den = den // g
        if not _checked:
            self._verify()

    def _verify(self):
        n = self.field.degree
        for i in range(n):
            if self.hnf[i][i] <= 0:
                raise ValueError("HNF diagonal must be positive")
            for j in range(i):
                if self.hnf[i][j] != 0:
                    raise ValueError("HNF must be upper triangular")
            for j in range(i + 1, n):
                if not 0 <= self.hnf[i][j] < self.hnf[i][i]:
                    raise ValueError("entries right of diagonal not reduced")
        # O-module check: omega_i * b_j stays inside the lattice
        for j in range(n):
            bj = self.basis_element(j)
            for i in range(n):
                ei = self.field.element([1 if k == i else 0 for k in range(n)])
                if not self.contains(ei * bj):
                    raise ValueError("lattice is not an O-module")

    def basis_element(self, j) -> FieldElement:
        n = self.field.degree
        return self.field.element([Fraction(self.hnf[i][j], self.den)
                                   for i in range(n)])

    def basis_elements(self) -> list[FieldElement]:
        return [self.basis_element(j) for j in range(self.field.degree)]

    def contains(self, x: FieldElement) -> bool:
        t = solve_upper(self.hnf, [Fraction(c) * self.den for c in x.coords])
        return all(v.denominator == 1 for v in t)

    def coords_in_basis(self, x: FieldElement) -> list[Fraction]:
        """Exact coordinates of x over this ideal's HNF basis."""
        return solve_upper(self.hnf, [Fraction(c) * self.den for c in x.coords])

    def norm(self) -> Fraction:
        n = self.field.degree
        det = 1
        for i in range(n):
            det *= self.hnf[i][i]
        return Fraction(det, self.den**n)

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal) and self.field == other.field
                and self.hnf == other.hnf and self.den == other.den)

    def __hash__(self):
        return hash((self.hnf, self.den))

    def __repr__(self):
        return f"FractionalIdeal(hnf={[list(r) for r in self.hnf]}, den={self.den})"

    def __mul__(self, other):
        if isinstance(other, FractionalIdeal):
            prods = [bi * bj for bi in self.basis_elements()
                     for bj in other.basis_elements()]
            return ideal_from_gens(prods)
        return ideal_from_gens([b * other for b in self.basis_elements()])

    def __pow__(self, k: int):
        if k == 0:
            return self.field.maximal_order()
        if k < 0:
            return ideal_invert(self) ** (-k)
        cache = self.field._pow_cache.setdefault(("idealpow", self.hnf, self.den), {})
        if k in cache:
            return cache[k]
        half = self ** (k // 2)
        out = half * half
        if k % 2:
            out = out * self
        cache[k] = out
        return out

    def is_integral(self) -> bool:
        return self.den == 1


def ideal_from_gens(gens) -> FractionalIdeal:
    """Canonical HNF of the O-module generated by the given elements."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ZeroIdeal("all generators are zero")
    field = gens[0].field
    n = field.degree
    elems = []
    for g in gens:
        for i in range(n):
            ei = field.element([1 if k == i else 0 for k in range(n)])
            elems.append(g * ei)
    den = lcm_list([c.denominator for e in elems for c in e.coords])
    cols = [[int(c * den) for c in e.coords] for e in elems]
    h = hnf_columns(cols)
    return FractionalIdeal(field, h, den)


def ideal_norm(ideal: FractionalIdeal) -> Fraction:
    """det(hnf)/den^n; the lattice index |O/I| for integral I."""
    return ideal.norm()


def _conjugate_quadratic(x: FieldElement) -> FieldElement:
    """Galois conjugate in a degree-2 field."""
    field = x.field
    c0, c1, _ = field.coeffs
    pb = x.power_basis()
    # theta -> -c1 - theta
    conj_pb = [pb[0] - pb[1] * c1, -pb[1]]
    return field.from_power_basis(conj_pb)


def ideal_invert(ideal: FractionalIdeal) -> FractionalIdeal:
    """Inverse fractional ideal, verified by multiplying back to O.

    Quadratic fields use the conjugate-ideal identity I * conj(I) = (N(I));
    other degrees solve x * I <= O as an integer kernel problem.
    """
    field = ideal.field
    n = field.degree
    if n == 2:
        conj = ideal_from_gens([_conjugate_quadratic(b)
                                for b in ideal.basis_elements()])
        nrm = ideal.norm()
        inv = conj * field.from_rational(1 / nrm)
    elif n == 1:
        b = ideal.basis_element(0)
        inv = ideal_from_gens([b.inverse()])
    else:
        det_h = 1
        for i in range(n):
            det_h *= ideal.hnf[i][i]
        rows = []
        q = 1
        muls = []
        for j in range(n):
            m = field.mult_matrix(ideal.basis_element(j).coords)
            muls.append(m)
            q = lcm_list([q] + [c.denominator for row in m for c in row])
        m0 = det_h
        for m in muls:
            for row in m:
                rows.append([int(c * q) for c in row])
        # x = v / m0 satisfies B v in q*m0*Z for every stacked row block
        kern = kernel_int([row + [0] * 0 for row in _augment(rows, q * m0)])
        vs = [k[:n] for k in kern]
        vs = [v for v in vs if any(v)]
        cols = vs
        h = hnf_columns(cols)
        inv = FractionalIdeal(field, h, m0)
    assert ideal * inv == field.maximal_order(), "inverse verification failed"
    return inv


def _augment(rows, modulus):
    """Rows of [B | modulus * I] for the kernel-mod-lattice computation."""
    m = len(rows)
    out = []
    for i, row in enumerate(rows):
        out.append(list(row) + [modulus if k == i else 0 for k in range(m)])
    return out
