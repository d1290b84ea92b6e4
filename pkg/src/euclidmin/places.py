"""Places of a number field, exact S-norms, and verified S-unit data.

Absolute values are normalized so the product formula holds exactly over Q:
real places contribute |x|, complex places the squared modulus, and a finite
place above p with residue degree f contributes (p^f)^(-v(x)). With that
normalization N_S of a nonzero element is an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (IndexDivisor, NotAnSUnit, NotPrime, RankDeficient,
                     RankUndetermined, SearchExhausted, ZeroElement)
from .fields import (FieldElement, FractionalIdeal, NumberField, embed,
                     ideal_from_gens, ideal_norm)
from .intervals import Iv
from .polynomials import deg, factor_mod_p
from .qmath import is_prime, ln_enclosure


@dataclass(frozen=True)
class Place:
    """A place of K: archimedean (real/complex) or finite prime."""
    field: NumberField
    kind: str                      # "real" | "complex" | "finite"
    index: int = 0                 # archimedean index into the root boxes
    p: int = 0                     # finite residue characteristic
    gen_poly: tuple = ()           # lifted irreducible factor of the field poly
    e: int = 0
    f: int = 0

    def __post_init__(self):
        if self.kind == "finite":
            if self.e * self.f > self.field.degree:
                raise ValueError("e*f exceeds the field degree")
            ideal = self.prime_ideal()
            if ideal_norm(ideal) != self.p**self.f:
                raise ValueError("prime ideal norm does not match p^f")

    def is_finite(self) -> bool:
        return self.kind == "finite"

    def residue_norm(self) -> int:
        """Size of the residue field, N(p) = p^f."""
        return self.p**self.f

    def second_generator(self) -> FieldElement:
        pb = [Fraction(c) for c in self.gen_poly]
        theta_pows = _gen_powers(self.field, len(pb))
        out = self.field.zero()
        for c, tp in zip(pb, theta_pows):
            out = out + tp * c
        return out

    def prime_ideal(self) -> FractionalIdeal:
        cache = self.field._pow_cache.setdefault(("place_ideal",), {})
        key = (self.p, self.gen_poly)
        if key not in cache:
            cache[key] = ideal_from_gens(
                [self.field.from_rational(self.p), self.second_generator()])
        return cache[key]

    def ideal_power(self, k: int) -> FractionalIdeal:
        cache = self.field._pow_cache.setdefault(
            ("place_power", self.p, self.gen_poly), {})
        if k not in cache:
            cache[k] = self.prime_ideal() ** k
        return cache[k]

    def uniformizer(self) -> FieldElement:
        """Element with valuation exactly 1 at this place."""
        cache = self.field._pow_cache.setdefault(("unif",), {})
        key = (self.p, self.gen_poly)
        if key not in cache:
            g = self.second_generator()
            p_elt = self.field.from_rational(self.p)
            candidates = [g, g + p_elt] if not g.is_zero() else []
            candidates.append(p_elt)
            for cand in candidates:
                if valuation(cand, self) == 1:
                    cache[key] = cand
                    break
            else:
                raise SearchExhausted("no uniformizer among standard candidates")
        return cache[key]

    def abs_value(self, x: FieldElement) -> Fraction:
        """Exact normalized absolute value at a finite place."""
        assert self.is_finite()
        if x.is_zero():
            return Fraction(0)
        return Fraction(self.residue_norm()) ** (-valuation(x, self))

    def __repr__(self):
        if self.is_finite():
            return f"Place(p={self.p}, e={self.e}, f={self.f})"
        return f"Place({self.kind}[{self.index}])"

    def sort_key(self):
        return (0 if self.kind == "real" else 1 if self.kind == "complex" else 2,
                self.p, self.f, self.e, self.gen_poly, self.index)


def _gen_powers(field: NumberField, count: int):
    cache = field._pow_cache.setdefault(("gen_powers",), {})
    if count not in cache:
        theta = field.gen()
        pows = [field.one()]
        for _ in range(count - 1):
            pows.append(pows[-1] * theta)
        cache[count] = pows
    return cache[count]


def archimedean_places(field: NumberField) -> list[Place]:
    r1, r2 = field.signature
    return ([Place(field, "real", index=i) for i in range(r1)]
            + [Place(field, "complex", index=i) for i in range(r2)])


def places_above(field: NumberField, p: int) -> list[Place]:
    """All finite places above p, via factorization of the field polynomial.

    Requires p prime and coprime to the index [O : Z[theta]], so the shape of
    the factorization mod p matches the splitting of p.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if field.index % p == 0:
        raise IndexDivisor(f"{p} divides the index [O : Z[theta]] = {field.index}")
    out = []
    total = 0
    for g, e in factor_mod_p(list(field.coeffs), p):
        # lift coefficients to the symmetric range for smaller generators
        lifted = tuple(c - p if c > p // 2 else c for c in g)
        out.append(Place(field, "finite", p=p, gen_poly=lifted, e=e, f=deg(g)))
        total += e * deg(g)
    assert total == field.degree, "sum of e*f does not match the degree"
    out.sort(key=lambda v: v.sort_key())
    return out


def valuation(x: FieldElement, place: Place) -> int:
    """Exact valuation of x at a finite place, via prime power membership."""
    if x.is_zero():
        raise ZeroElement("valuation of zero")
    assert place.is_finite()
    d = x.denominator()
    y = x * d
    vp_d = 0
    while d % place.p == 0:
        d //= place.p
        vp_d += 1
    v_den = place.e * vp_d
    nrm = abs(y.norm())
    assert nrm.denominator == 1
    a = 0
    num = nrm.numerator
    while num % place.p == 0:
        num //= place.p
        a += 1
    if a == 0:
        return -v_den
    k = 0
    bound = a // place.f
    while k < bound and place.ideal_power(k + 1).contains(y):
        k += 1
    return k - v_den


def s_norm(x: FieldElement, sconfig: "SConfig") -> Fraction:
    """Exact S-norm: product of normalized absolute values over S.

    Computed through the product formula: the archimedean block is |N(x)|
    and each finite place in S contributes (p^f)^(-v(x)). Returns 0 at 0.
    """
    if x.is_zero():
        return Fraction(0)
    out = abs(x.norm())
    for v in sconfig.finite_places:
        out *= v.abs_value(x)
    return out


def s_norm_ideal(ideal: FractionalIdeal, sconfig: "SConfig") -> Fraction:
    """S-norm of an ideal: norm of its prime-to-S part."""
    stripped = strip_s_part(ideal, sconfig)
    return ideal_norm(stripped)


def ideal_place_valuation(ideal: FractionalIdeal, place: Place) -> int:
    """min over a Z-basis of the element valuations."""
    return min(valuation(b, place) for b in ideal.basis_elements())


def strip_s_part(ideal: FractionalIdeal, sconfig: "SConfig") -> FractionalIdeal:
    """Remove all S-place components; canonical O-part of the O_S-ideal."""
    out = ideal
    for v in sconfig.finite_places:
        k = ideal_place_valuation(out, v)
        if k:
            out = out * v.ideal_power(-k)
    return out


class SConfig:
    """A finite set of places containing all archimedean ones, plus unit data."""

    def __init__(self, field: NumberField, finite_places, unit_gens=None,
                 torsion=None, verified=False):
        self.field = field
        self.arch_places = tuple(archimedean_places(field))
        fps = sorted(finite_places, key=lambda v: v.sort_key())
        self.finite_places = tuple(fps)
        seen = set()
        for v in fps:
            key = (v.p, v.gen_poly)
            if key in seen:
                raise ValueError("duplicate finite place")
            seen.add(key)
        self.places = self.arch_places + self.finite_places
        self.unit_gens = tuple(unit_gens) if unit_gens else ()
        self.torsion = torsion  # (generator, order)
        self.verified = verified
        self._log_cache = {}

    @property
    def size(self) -> int:
        return len(self.places)

    def rank(self) -> int:
        return self.size - 1

    def __repr__(self):
        return (f"SConfig(#S={self.size}, finite={[v.p for v in self.finite_places]}, "
                f"verified={self.verified})")


def default_unit_gens(field: NumberField, finite_places) -> list[FieldElement]:
    """Built-in S-unit generators for Q and quadratic fields.

    Q: the rational primes under the finite places. Quadratic fields: the
    fundamental unit (real case) plus a generator of the least principal
    power of each finite prime.
    """
    from .units import fundamental_unit, principal_power_generator

    gens = []
    if field.degree == 1:
        return [field.from_rational(v.p) for v in finite_places]
    if field.degree == 2:
        if field.signature == (2, 0):
            gens.append(fundamental_unit(field))
        for v in finite_places:
            _, alpha = principal_power_generator(v.prime_ideal())
            gens.append(alpha)
        return gens
    if finite_places or field.signature[0] + field.signature[1] > 1:
        raise SearchExhausted(
            "no built-in unit generators beyond Q and quadratic fields; "
            "supply unit generators explicitly")
    return []


def make_sconfig(field: NumberField, primes=(), unit_gens=None,
                 place_indices=None) -> SConfig:
    """Assemble and verify an S-configuration.

    primes: iterable of rational primes; all places above each are included
    unless place_indices[p] selects a subset by index into places_above.
    """
    finite = []
    for p in primes:
        places = places_above(field, p)
        if place_indices and p in place_indices:
            places = [places[i] for i in place_indices[p]]
        finite.extend(places)
    cfg = SConfig(field, finite)
    if unit_gens is None:
        unit_gens = default_unit_gens(field, cfg.finite_places)
    return verify_s_unit_basis(cfg, unit_gens)


def _log_abs_interval(sconfig: SConfig, x: FieldElement, place: Place,
                      err: Fraction) -> Iv:
    """Certified interval around ln|x|_place (normalized absolute value)."""
    if place.is_finite():
        w = valuation(x, place)
        lo, hi = ln_enclosure(Fraction(place.residue_norm()), err)
        return Iv(-w * hi, -w * lo) if w >= 0 else Iv(-w * lo, -w * hi)
    prec = err
    for _ in range(60):
        box = embed(x, prec)
        if place.kind == "real":
            iv = box.reals[place.index].abs()
        else:
            iv = box.complexes[place.index].abs_sq()
        if iv.lo > 0:
            llo = ln_enclosure(iv.lo, err / 2)[0]
            lhi = ln_enclosure(iv.hi, err / 2)[1]
            return Iv(llo, lhi)
        prec /= 16
    raise SearchExhausted("embedding magnitude would not separate from zero")


def verify_s_unit_basis(sconfig: SConfig, gens) -> SConfig:
    """Check the generators really are independent S-units; returns a
    verified configuration carrying them.

    Each generator must have its principal ideal supported exactly on the
    finite places of S, and the log-embedding matrix (one column per place)
    must have certified rank #S - 1.
    """
    from .units import torsion_generator

    field = sconfig.field
    gens = list(gens)
    need = sconfig.rank()
    if len(gens) < need:
        raise RankDeficient(f"need {need} generators, got {len(gens)}")
    if len(gens) > need:
        raise RankDeficient(f"expected exactly {need} generators, got {len(gens)}")
    for u in gens:
        if u.is_zero():
            raise NotAnSUnit("zero is not a unit")
        vals = [valuation(u, v) for v in sconfig.finite_places]
        expected = ideal_from_gens([u])
        prod = field.maximal_order()
        for v, w in zip(sconfig.finite_places, vals):
            if w:
                prod = prod * v.ideal_power(w)
        if prod != expected:
            raise NotAnSUnit(f"{u} has support outside S")
        if s_norm(u, sconfig) != 1:
            raise NotAnSUnit(f"{u} has S-norm != 1")
    if need:
        _certify_log_rank(sconfig, gens)
    torsion = torsion_generator(field)
    return SConfig(field, sconfig.finite_places, unit_gens=gens,
                   torsion=torsion, verified=True)


def _certify_log_rank(sconfig: SConfig, gens):
    """Interval determinant of the log matrix with one place column dropped."""
    err = Fraction(1, 2**16)
    for _ in range(8):
        rows = []
        for u in gens:
            rows.append([_log_abs_interval(sconfig, u, v, err)
                         for v in sconfig.places[:-1]])
        det = _interval_det_iv(rows)
        if not det.contains(0):
            return
        err /= 256
    raise RankUndetermined("log-rank certification ran out of precision")


def _interval_det_iv(m):
    n = len(m)
    if n == 0:
        return Iv.point(1)
    if n == 1:
        return m[0][0]
    out = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _interval_det_iv(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def shrinking_unit(sconfig: SConfig, w: Place) -> FieldElement:
    """An S-unit with |eps|_v < 1 at every place of S except w.

    Searched as integer exponent vectors on the verified generators in
    boxes of growing radius; every strict inequality is certified (exactly
    at finite places, by intervals at archimedean ones).
    """
    if not sconfig.verified:
        raise SearchExhausted("S-unit basis must be verified first")
    if sconfig.size < 2:
        raise SearchExhausted("need at least two places")
    gens = sconfig.unit_gens
    others = [v for v in sconfig.places if v != w]
    if len(others) == len(sconfig.places):
        raise ValueError("w must belong to S")
    # precompute exact finite-place valuations of the generators
    fin_vals = {v: [valuation(u, v) for u in gens]
                for v in sconfig.finite_places if v != w}
    for radius in range(1, 9):
        for ks in _exponent_vectors(len(gens), radius):
            ok = True
            for v, vals in fin_vals.items():
                if sum(k * val for k, val in zip(ks, vals)) <= 0:
                    ok = False
                    break
            if not ok:
                continue
            eps = sconfig.field.one()
            for k, u in zip(ks, gens):
                if k:
                    eps = eps * _unit_power(u, k)
            if _certify_small_everywhere(sconfig, eps, w):
                return eps
    raise SearchExhausted("no shrinking unit in the exponent search box")


def _unit_power(u: FieldElement, k: int) -> FieldElement:
    out = u.field.one()
    base = u if k > 0 else u.inverse()
    for _ in range(abs(k)):
        out = out * base
    return out


def _exponent_vectors(dim, radius):
    """Vectors with max-norm exactly radius, lexicographic order."""
    def rec(i, acc, hit):
        if i == dim:
            if hit:
                yield tuple(acc)
            return
        for k in range(-radius, radius + 1):
            acc.append(k)
            yield from rec(i + 1, acc, hit or abs(k) == radius)
            acc.pop()
    yield from rec(0, [], False)


def _certify_small_everywhere(sconfig: SConfig, eps: FieldElement,
                              w: Place) -> bool:
    for v in sconfig.places:
        if v == w:
            continue
        if v.is_finite():
            if v.abs_value(eps) >= 1:
                return False
            continue
        prec = Fraction(1, 2**10)
        decided = False
        for _ in range(20):
            box = embed(eps, prec)
            iv = (box.reals[v.index].abs() if v.kind == "real"
                  else box.complexes[v.index].abs_sq())
            if iv.hi < 1:
                decided = True
                break
            if iv.lo > 1:
                return False
            prec /= 16
        if not decided:
            return False
    return True
