"""The compact quotient of the S-adele block by an ideal lattice.

Provides canonical reduction of field elements into the fundamental domain
(the half-open parallelepiped of the ideal's HNF basis times the local
integer rings), torsion coset representatives, finite unit orbits, the exact
character pairing into Q/Z, and the trace-dual ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import SearchExhausted
from .fields import (FieldElement, FractionalIdeal, NumberField,
                     ideal_from_gens, ideal_norm, mat_inverse)
from .hnf import lcm_list, solve_linear_mod_lattice
from .places import Place, SConfig, places_above, strip_s_part, valuation
from .polynomials import hensel_lift_blocks, pmod, pmul, trace_mod_pk


class QmodZ:
    """Exact element of Q/Z, stored as its representative in [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value):
        v = Fraction(value)
        self.value = v - floor(v)

    def __add__(self, other):
        return QmodZ(self.value + other.value)

    def __neg__(self):
        return QmodZ(-self.value)

    def __sub__(self, other):
        return QmodZ(self.value - other.value)

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self.value == other.value
        return self.value == QmodZ(Fraction(other)).value

    def __hash__(self):
        return hash(self.value)

    def is_zero(self):
        return self.value == 0

    def __repr__(self):
        return f"QmodZ({self.value})"


@dataclass(frozen=True)
class FundamentalDomain:
    """Half-open parallelepiped of the ideal basis times local integer rings."""
    ideal: FractionalIdeal            # the prime-to-S O-part
    sconfig: SConfig

    def basis(self):
        return self.ideal.basis_elements()

    def contains_rational(self, x: FieldElement) -> bool:
        """Exact membership test for K-points."""
        for v in self.sconfig.finite_places:
            if not x.is_zero() and valuation(x, v) < 0:
                return False
        coords = self.ideal.coords_in_basis(x)
        return all(0 <= c < 1 for c in coords)


@dataclass(frozen=True)
class AdelePoint:
    """A region of the S-adele block: one certified component per place.

    Archimedean components are intervals (a rectangle for complex places);
    finite components give a center known modulo P_v^k. Zero-width intervals
    plus an exact_tag describe the diagonal image of a field element.
    """
    arch_real: tuple          # Iv per real place
    arch_complex: tuple       # CIv per complex place
    finite: tuple             # (place, center FieldElement, precision k >= 0)
    exact_tag: object = None  # FieldElement when the point is diagonal

    def __post_init__(self):
        for _, _, k in self.finite:
            if k < 0:
                raise ValueError("finite precision exponents must be >= 0")


class TorusContext:
    """Cached working data for one (ideal, S) pair."""

    def __init__(self, a: FractionalIdeal, sconfig: SConfig):
        self.sconfig = sconfig
        self.field = a.field
        self.a_part = strip_s_part(a, sconfig)
        self.basis = self.a_part.basis_elements()
        self.s_norm_a = ideal_norm(self.a_part)
        self.domain = FundamentalDomain(self.a_part, sconfig)
        self._aux = {}

    def crt_lattice(self, exponents: dict) -> FractionalIdeal:
        """a-part times prod of P_v^{k_v} over the finite places of S."""
        key = tuple(sorted((v.p, v.gen_poly, k) for v, k in exponents.items()))
        cache = self._aux.setdefault("crt", {})
        if key not in cache:
            out = self.a_part
            for v, k in exponents.items():
                if k:
                    out = out * v.ideal_power(k)
            cache[key] = out
        return cache[key]


def torus_context(a: FractionalIdeal, sconfig: SConfig) -> TorusContext:
    cache = getattr(sconfig, "_torus_cache", None)
    if cache is None:
        cache = {}
        sconfig._torus_cache = cache
    key = (a.hnf, a.den)
    if key not in cache:
        cache[key] = TorusContext(a, sconfig)
    return cache[key]


def _solve_affine(col_lattice_a, col_lattice_w, target):
    """Integer solution u of A u = target - W w, all columns rational."""
    den = lcm_list([c.denominator for col in col_lattice_a for c in col]
                   + [c.denominator for col in col_lattice_w for c in col]
                   + [c.denominator for c in target])
    a_cols = [[int(c * den) for c in col] for col in col_lattice_a]
    w_cols = [[int(c * den) for c in col] for col in col_lattice_w]
    tgt = [int(c * den) for c in target]
    return solve_linear_mod_lattice(a_cols, w_cols, tgt)


def reduce_mod(a: FractionalIdeal, sconfig: SConfig, xi: FieldElement):
    """Canonical representative of xi modulo the S-ideal of a.

    Returns (rho, gamma) with xi = rho + gamma, gamma in the S-ideal,
    v(rho) >= 0 at every finite place of S, and the coordinates of rho over
    the ideal basis inside [0, 1). Idempotent by construction.
    """
    ctx = torus_context(a, sconfig)
    field = ctx.field
    rho = xi
    gamma = field.zero()
    neg = [v for v in sconfig.finite_places
           if not xi.is_zero() and valuation(xi, v) < 0]
    if neg:
        gamma = _clear_denominators(ctx, xi)
        rho = xi - gamma
        for v in sconfig.finite_places:
            assert rho.is_zero() or valuation(rho, v) >= 0, \
                "finite reduction failed"
    coords = ctx.a_part.coords_in_basis(rho)
    shift = field.zero()
    for c, b in zip(coords, ctx.basis):
        k = floor(c)
        if k:
            shift = shift + b * k
    rho = rho - shift
    gamma = gamma + shift
    return rho, gamma


def _vp(n: int, p: int) -> int:
    out = 0
    while n % p == 0:
        n //= p
        out += 1
    return out


def _clear_denominators(ctx: TorusContext, xi: FieldElement) -> FieldElement:
    return shift_into_depths(ctx, xi, (0,) * len(ctx.sconfig.finite_places))


def shift_into_depths(ctx: TorusContext, xi: FieldElement,
                      depths) -> FieldElement:
    """gamma in the S-ideal with v(xi - gamma) >= depths[v] at the S-places.

    gamma is searched as g / t with t an S-smooth integer large enough to
    clear xi's S-denominators and the requested depths, and g ranging over
    the a-part lattice made extra-divisible at sibling places above the same
    rational primes (so gamma stays inside the S-ideal). The congruence
    v(t*xi - g) >= depth + v(t) becomes an integral linear system after
    clearing every lattice to O; solvability follows from density of the
    S-ideal at the S-places.
    """
    field = ctx.field
    sconfig = ctx.sconfig
    d = xi.denominator()
    s_primes = sorted({v.p for v in sconfig.finite_places})
    t = 1
    for p in s_primes:
        need = _vp(d, p)
        for v, depth in zip(sconfig.finite_places, depths):
            if v.p == p and depth > 0:
                need = max(need, -(-depth // v.e) + _vp(d, p))
        t *= p**need
    d_rest = d
    for p in s_primes:
        while d_rest % p == 0:
            d_rest //= p
    # lattice for g: a-part, extra divisibility at sibling places above t
    lattice_a = ctx.a_part
    for p in s_primes:
        vp_t = _vp(t, p)
        if vp_t == 0:
            continue
        for w in places_above(field, p):
            if any(w.p == v.p and w.gen_poly == v.gen_poly
                   for v in sconfig.finite_places):
                continue
            lattice_a = lattice_a * w.ideal_power(vp_t * w.e)
    d0 = lattice_a.den
    # congruence modulus: P_v^{max(depth_v + v(t*d0), 0)} over v in S_0
    modulus = field.maximal_order()
    for v, depth in zip(sconfig.finite_places, depths):
        k = max(depth + (_vp(t, v.p) + _vp(d0, v.p)) * v.e, 0)
        if k:
            modulus = modulus * v.ideal_power(k)
    assert modulus.den == 1
    scale = d_rest * d0
    a_cols = [[c * scale for c in b.coords] for b in lattice_a.basis_elements()]
    w_cols = [list(b.coords) for b in modulus.basis_elements()]
    target = [c * (t * d_rest * d0) for c in xi.coords]
    u = _solve_affine(a_cols, w_cols, target)
    if u is None:
        raise SearchExhausted("finite shift system unsolvable (bug)")
    g = field.zero()
    for coef, b in zip(u, lattice_a.basis_elements()):
        if coef:
            g = g + b * coef
    gamma = g / t
    for v, depth in zip(sconfig.finite_places, depths):
        diff = xi - gamma
        assert diff.is_zero() or valuation(diff, v) >= depth
    return gamma


def torsion_reps(a: FractionalIdeal, m: int, sconfig: SConfig = None):
    """The m^n coset representatives of (1/m)a modulo a.

    Pure lattice quotient over the ideal's O-part: representatives have
    coordinates c/m in [0, 1) over the HNF basis, so they are exactly m^n
    distinct reduced points of the parallelepiped.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if sconfig is not None:
        basis = torus_context(a, sconfig).basis
    else:
        basis = a.basis_elements()
    field = basis[0].field
    n = field.degree
    out = []

    def rec(j, acc):
        if j == n:
            elem = field.zero()
            for c, b in zip(acc, basis):
                if c:
                    elem = elem + b * Fraction(c, m)
            out.append(elem)
            return
        for c in range(m):
            acc.append(c)
            rec(j + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def orbit(a: FractionalIdeal, sconfig: SConfig, xi: FieldElement):
    """The finite orbit of [xi] under the verified S-units, as reduced reps.

    Closure under forward multiplication by the generators and the torsion
    generator; this reaches the full group orbit because every generator
    permutes the finite set of classes with bounded denominator.
    """
    assert sconfig.verified, "orbit needs a verified S-unit basis"
    rho0, _ = reduce_mod(a, sconfig, xi)
    gens = list(sconfig.unit_gens)
    if sconfig.torsion is not None:
        gens.append(sconfig.torsion[0])
    seen = {rho0.coords: rho0}
    frontier = [rho0]
    while frontier:
        nxt = []
        for x in frontier:
            for u in gens:
                y, _ = reduce_mod(a, sconfig, u * x)
                if y.coords not in seen:
                    seen[y.coords] = y
                    nxt.append(y)
        frontier = nxt
    return sorted(seen.values(), key=lambda e: e.coords)


# -- character layer ----------------------------------------------------------


def _hensel_block_for_place(place: Place, k: int):
    """The p-adic factor block of the field polynomial at place, mod p^k."""
    field = place.field
    cache = field._pow_cache.setdefault(("hensel",), {})
    key = (place.p, k)
    if key not in cache:
        p = place.p
        fac = []
        for w in places_above(field, p):
            gp = pmod(list(w.gen_poly), p)
            blk = [1]
            for _ in range(w.e):
                blk = pmul(blk, gp, p)
            fac.append(((w.p, w.gen_poly), blk))
        blocks = [b for _, b in fac]
        lifted = hensel_lift_blocks(list(field.coeffs), blocks, p, k)
        cache[key] = {ident: lift for (ident, _), lift in zip(fac, lifted)}
    return cache[key][(place.p, place.gen_poly)]


def local_trace_polar(x: FieldElement, place: Place) -> Fraction:
    """Polar part (in [0,1)) of the local trace of x at a finite place."""
    if x.is_zero():
        return Fraction(0)
    pb = x.power_basis()
    den = lcm_list([c.denominator for c in pb])
    p = place.p
    a = 0
    dd = den
    while dd % p == 0:
        dd //= p
        a += 1
    if a == 0:
        return Fraction(0)
    h = [int(c * den) for c in pb]
    block = _hensel_block_for_place(place, a)
    t = trace_mod_pk(h, block, p, a)
    m_prime = dd  # den / p^a, invertible mod p^a
    pk = p**a
    polar = (t * pow(m_prime, -1, pk)) % pk
    return Fraction(polar, pk)


def char_pair(alpha: FieldElement, xi: FieldElement, sconfig: SConfig) -> QmodZ:
    """Exact phase of the standard character pairing of alpha and xi.

    The archimedean block of the character contributes the global trace;
    each finite place of S subtracts the polar part of the local trace.
    With that sign the character is trivial on the S-integers, which is
    what makes the trace-dual ideal the character dual.
    """
    prod = alpha * xi
    phase = QmodZ(prod.trace())
    for v in sconfig.finite_places:
        phase = phase - QmodZ(local_trace_polar(prod, v))
    return phase


def inverse_different(field: NumberField) -> FractionalIdeal:
    """Trace dual of the maximal order."""
    cache = field._pow_cache.setdefault(("invdiff",), {})
    if "value" not in cache:
        n = field.degree
        ginv = mat_inverse([list(r) for r in field.trace_gram])
        gens = [field.element([ginv[i][j] for i in range(n)]) for j in range(n)]
        cache["value"] = ideal_from_gens(gens)
    return cache["value"]


def s_trace_dual(a: FractionalIdeal, sconfig: SConfig) -> FractionalIdeal:
    """The dual ideal a^perp = a^{-1} * D^{-1}, prime-to-S convention."""
    from .fields import ideal_invert

    ctx = torus_context(a, sconfig)
    dual = ideal_invert(ctx.a_part) * inverse_different(a.field)
    return strip_s_part(dual, sconfig)
