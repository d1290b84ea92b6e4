"""Adelic boxes, certified norm bounds over them, and covering certificates.

A box is an axis-aligned half-open cell in the coordinates of the ideal
basis (the archimedean block) times one residue class per finite place of S
(a center known modulo P_v^{k_v}). Bounds over a box are computed by exact
interval evaluation at the archimedean places and ultrametric estimates at
the finite ones; a recorded (box, shift, bound) triple can be re-derived by
anyone from the box data alone, which is what makes certificates replayable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoCandidates, SearchExhausted
from .fields import FieldElement, embed
from .intervals import Iv
from .places import valuation
from .torus import AdelePoint, TorusContext, _solve_affine


@dataclass(frozen=True)
class CoverBox:
    """Half-open coordinate cell times finite residue classes."""
    lo: tuple        # Fractions, coordinates over the ideal basis
    hi: tuple
    center: tuple    # integral-basis coordinates (Fractions) of the class center
    exponents: tuple  # k_v >= 0 per finite place of S (in sconfig order)

    def volume_fraction(self, ctx: TorusContext) -> Fraction:
        vol = Fraction(1)
        for a, b in zip(self.lo, self.hi):
            vol *= b - a
        for v, k in zip(ctx.sconfig.finite_places, self.exponents):
            vol /= Fraction(v.residue_norm()) ** k
        return vol

    def center_element(self, ctx: TorusContext) -> FieldElement:
        return ctx.field.element(self.center)

    def sort_key(self):
        return (self.lo, self.hi, self.exponents, self.center)


def initial_box(ctx: TorusContext) -> CoverBox:
    n = ctx.field.degree
    return CoverBox(lo=tuple(Fraction(0) for _ in range(n)),
                    hi=tuple(Fraction(1) for _ in range(n)),
                    center=tuple(Fraction(0) for _ in range(n)),
                    exponents=tuple(0 for _ in ctx.sconfig.finite_places))


def normalize_center(ctx: TorusContext, center: FieldElement,
                     exponents) -> tuple:
    """Canonical representative of the center modulo prod P_v^{k_v}."""
    modulus = ctx.field.maximal_order()
    for v, k in zip(ctx.sconfig.finite_places, exponents):
        if k:
            modulus = modulus * v.ideal_power(k)
    coords = modulus.coords_in_basis(center)
    shift = ctx.field.zero()
    from math import floor
    for c, b in zip(coords, modulus.basis_elements()):
        f = floor(c)
        if f:
            shift = shift + b * f
    return tuple((center - shift).coords)


def split_arch(box: CoverBox, axis: int) -> list[CoverBox]:
    mid = (box.lo[axis] + box.hi[axis]) / 2
    lo1 = list(box.lo)
    hi1 = list(box.hi)
    hi1[axis] = mid
    lo2 = list(box.lo)
    lo2[axis] = mid
    return [CoverBox(tuple(lo1), tuple(hi1), box.center, box.exponents),
            CoverBox(tuple(lo2), tuple(box.hi), box.center, box.exponents)]


def _residue_reps(ctx: TorusContext, place) -> list[FieldElement]:
    cache = ctx._aux.setdefault("residues", {})
    key = (place.p, place.gen_poly)
    if key not in cache:
        prime = place.prime_ideal()
        n = ctx.field.degree
        h = prime.hnf
        reps = []

        def rec(i, acc):
            if i == n:
                reps.append(ctx.field.element(list(acc)))
                return
            for c in range(h[i][i]):
                acc.append(Fraction(c))
                rec(i + 1, acc)
                acc.pop()

        rec(0, [])
        assert len(reps) == place.residue_norm()
        cache[key] = reps
    return cache[key]


def _split_scale_element(ctx: TorusContext, place_idx: int,
                         exponents) -> FieldElement:
    """t with v(t) = k_v exactly and w(t) >= k_w at the other S-places."""
    cache = ctx._aux.setdefault("split_scale", {})
    key = (place_idx, tuple(exponents))
    if key not in cache:
        places = ctx.sconfig.finite_places
        v = places[place_idx]
        ideal = ctx.field.maximal_order()
        for w, k in zip(places, exponents):
            if k:
                ideal = ideal * w.ideal_power(k)
        for b in ideal.basis_elements():
            if valuation(b, v) == exponents[place_idx]:
                cache[key] = b
                break
        else:
            raise SearchExhausted("no exact-valuation element in split ideal")
    return cache[key]


def split_finite(ctx: TorusContext, box: CoverBox, place_idx: int) -> list[CoverBox]:
    """Partition the residue class at one finite place into N(p) children."""
    places = ctx.sconfig.finite_places
    v = places[place_idx]
    t = _split_scale_element(ctx, place_idx, box.exponents)
    center = box.center_element(ctx)
    out = []
    new_exp = list(box.exponents)
    new_exp[place_idx] += 1
    for rep in _residue_reps(ctx, v):
        child_center = center + rep * t
        out.append(CoverBox(box.lo, box.hi,
                            normalize_center(ctx, child_center, new_exp),
                            tuple(new_exp)))
    return out


# -- bounds --------------------------------------------------------------------


def _basis_rows(ctx: TorusContext, width: Fraction):
    from .enumerate import _embedding_rows

    cache = ctx._aux.setdefault("basis_rows", {})
    if width not in cache:
        cache[width] = [_embedding_rows(b, width) for b in ctx.basis]
    return cache[width]


def arch_intervals_for_box(ctx: TorusContext, box: CoverBox, width: Fraction):
    """Per-real-coordinate enclosures of the box's archimedean image."""
    basis_rows = _basis_rows(ctx, width)
    n = ctx.field.degree
    out = []
    for coord in range(n):
        acc = Iv.point(0)
        for j in range(n):
            acc = acc + Iv(box.lo[j], box.hi[j]) * basis_rows[j][coord]
        out.append(acc)
    return out


def _finite_factor(ctx: TorusContext, box: CoverBox, gamma: FieldElement) -> Fraction:
    """Exact upper bound on the product of finite absolute values of x-gamma."""
    out = Fraction(1)
    center = box.center_element(ctx)
    diff = center - gamma
    for v, k in zip(ctx.sconfig.finite_places, box.exponents):
        if diff.is_zero():
            m = k
        else:
            m = min(k, valuation(diff, v))
        out *= Fraction(v.residue_norm()) ** (-m)
    return out


def _gamma_embedding(ctx: TorusContext, gamma: FieldElement, width: Fraction):
    cache = ctx._aux.setdefault("gamma_embed", {})
    key = (gamma.coords, width)
    if key not in cache:
        if len(cache) > 4096:
            cache.clear()
        cache[key] = embed(gamma, width)
    return cache[key]


def box_bound(ctx: TorusContext, box: CoverBox, gamma: FieldElement,
              width=Fraction(1, 2**24)) -> Fraction:
    """Certified upper bound on sup over the box of N_S(x - gamma) / N_S(a).

    Deterministic in (box, gamma, width), which is what certificate replay
    relies on.
    """
    arch = arch_intervals_for_box(ctx, box, width)
    gbox = _gamma_embedding(ctx, gamma, width)
    r1, r2 = ctx.field.signature
    bound = _finite_factor(ctx, box, gamma)
    idx = 0
    for i in range(r1):
        iv = arch[idx] - gbox.reals[i]
        bound *= iv.abs().hi
        idx += 1
    for i in range(r2):
        re = arch[idx] - gbox.complexes[i].re
        im = arch[idx + 1] - gbox.complexes[i].im
        bound *= (re.sq() + im.sq()).hi
        idx += 2
    return bound / ctx.s_norm_a


def region_bound(ctx: TorusContext, region: AdelePoint, gamma: FieldElement,
                 width=Fraction(1, 2**24)) -> Fraction:
    """Upper bound of N_S(x - gamma)/N_S(a) over an adele region.

    Exact when the region is the diagonal image of a tagged field element.
    """
    from .places import s_norm

    if region.exact_tag is not None:
        return s_norm(region.exact_tag - gamma, ctx.sconfig) / ctx.s_norm_a
    gbox = embed(gamma, width)
    bound = Fraction(1)
    for iv, g in zip(region.arch_real, gbox.reals):
        bound *= (iv - g).abs().hi
    for civ, g in zip(region.arch_complex, gbox.complexes):
        bound *= ((civ.re - g.re).sq() + (civ.im - g.im).sq()).hi
    for place, center, k in region.finite:
        diff = center - gamma
        m = k if diff.is_zero() else min(k, valuation(diff, place))
        bound *= Fraction(place.residue_norm()) ** (-m)
    return bound / ctx.s_norm_a


def box_to_region(ctx: TorusContext, box: CoverBox,
                  width=Fraction(1, 2**24)) -> AdelePoint:
    arch = arch_intervals_for_box(ctx, box, width)
    r1, r2 = ctx.field.signature
    from .intervals import CIv
    reals = tuple(arch[:r1])
    comps = tuple(CIv(arch[r1 + 2 * i], arch[r1 + 2 * i + 1]) for i in range(r2))
    center = box.center_element(ctx)
    finite = tuple((v, center, k)
                   for v, k in zip(ctx.sconfig.finite_places, box.exponents))
    return AdelePoint(reals, comps, finite)


def m_upper_adele(a, sconfig, region: AdelePoint, candidates) -> Fraction:
    """Least certified upper bound over the candidate shifts."""
    from .torus import torus_context

    if not candidates:
        raise NoCandidates("no candidate shifts supplied")
    ctx = torus_context(a, sconfig)
    return min(region_bound(ctx, region, g) for g in candidates)


# -- candidate shifts ----------------------------------------------------------


def _profile_lattice(ctx: TorusContext, profile) -> tuple:
    """Affine candidate family for a congruence/denominator profile.

    profile[v] = m_v: m_v > 0 demands gamma = center mod P_v^{m_v} (and then
    |x-gamma|_v <= Np^{-m_v} over a box of depth k_v >= m_v); m_v <= 0 allows
    a denominator, with |x-gamma|_v <= Np^{-m_v}.
    """
    cache = ctx._aux.setdefault("profile_lattice", {})
    if profile not in cache:
        lattice = ctx.a_part
        for v, m in zip(ctx.sconfig.finite_places, profile):
            if m:
                lattice = lattice * v.ideal_power(m)
        cache[profile] = lattice
    return cache[profile]


def candidate_shifts(ctx: TorusContext, box: CoverBox, profile,
                     corner_radius: int = 1) -> list[FieldElement]:
    """Nearby elements of the S-ideal matching a congruence profile."""
    field = ctx.field
    n = field.degree
    lattice = _profile_lattice(ctx, profile)
    pos = {v: m for v, m in zip(ctx.sconfig.finite_places, profile) if m > 0}
    if pos:
        center = box.center_element(ctx)
        gamma0 = _congruent_point(ctx, center, profile)
        if gamma0 is None:
            return []
    else:
        gamma0 = field.zero()
    # arch target: the box midpoint as an exact element
    target = field.zero()
    for j, b in enumerate(ctx.basis):
        target = target + b * ((box.lo[j] + box.hi[j]) / 2)
    rel = target - gamma0
    coords = lattice.coords_in_basis(rel)
    base = [round(c) for c in coords]
    out = []

    def rec(j, acc):
        if j == n:
            g = gamma0
            for z, b in zip(acc, lattice.basis_elements()):
                if z:
                    g = g + b * z
            out.append(g)
            return
        for d in range(-corner_radius, corner_radius + 1):
            acc.append(base[j] + d)
            rec(j + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def _congruent_point(ctx: TorusContext, center: FieldElement, profile):
    """Element of the S-ideal congruent to center at the positive depths."""
    cache = ctx._aux.setdefault("congruent", {})
    key = (tuple(center.coords), profile)
    if key in cache:
        return cache[key]
    field = ctx.field
    neg_lattice = ctx.a_part
    for v, m in zip(ctx.sconfig.finite_places, profile):
        if m < 0:
            neg_lattice = neg_lattice * v.ideal_power(m)
    modulus = field.maximal_order()
    for v, m in zip(ctx.sconfig.finite_places, profile):
        if m > 0:
            modulus = modulus * v.ideal_power(m)
    d0 = neg_lattice.den
    mod_scaled = modulus
    if d0 > 1:
        extra = field.maximal_order()
        for v, m in zip(ctx.sconfig.finite_places, profile):
            if m > 0:
                k = 0
                dd = d0
                while dd % v.p == 0:
                    dd //= v.p
                    k += 1
                if k:
                    extra = extra * v.ideal_power(k * v.e)
        mod_scaled = modulus * extra
    a_cols = [[c * d0 for c in b.coords] for b in neg_lattice.basis_elements()]
    w_cols = [list(b.coords) for b in mod_scaled.basis_elements()]
    target = [c * d0 for c in center.coords]
    u = _solve_affine(a_cols, w_cols, target)
    if u is None:
        cache[key] = None
        return None
    g = field.zero()
    for coef, b in zip(u, neg_lattice.basis_elements()):
        if coef:
            g = g + b * coef
    cache[key] = g
    return g


def profiles_for_box(ctx: TorusContext, box: CoverBox, neg_depth: int = 2,
                     cap: int = 48):
    """Deterministic profile schedule, most congruent first.

    The menu per place keeps the deepest congruences, the free level, and a
    few denominator levels; intermediate depths are rarely optimal and only
    cost bound evaluations (never soundness).
    """
    places = ctx.sconfig.finite_places
    if not places:
        return [()]
    menus = []
    for v, k in zip(places, box.exponents):
        menu = sorted({k, max(k - 1, 0), max(k - 2, 0), 0, -1, -neg_depth},
                      reverse=True)
        menus.append([m for m in menu if m <= k])
    out = []

    def rec(i, acc):
        if i == len(menus):
            out.append(tuple(acc))
            return
        for m in menus[i]:
            acc.append(m)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    # most congruent profiles first: larger sum of depths first
    out.sort(key=lambda pr: (-sum(pr), pr))
    return out[:cap]


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CertEntry:
    box: CoverBox
    gamma_coords: tuple     # integral-basis coordinates of the shift
    bound: Fraction         # certified bound on sup N_S(x-gamma)/N_S(a)


@dataclass(frozen=True)
class CoveringCertificate:
    threshold: Fraction
    entries: tuple          # CertEntry, canonically sorted
    ideal_hnf: tuple
    ideal_den: int

    def __len__(self):
        return len(self.entries)


class Unresolved:
    """Covering attempt that ran out of budget; keeps the surviving boxes."""

    def __init__(self, boxes, processed: int):
        self.boxes = list(boxes)
        self.processed = processed

    def __repr__(self):
        return f"Unresolved({len(self.boxes)} boxes, processed={self.processed})"


def gamma_in_s_ideal(ctx: TorusContext, gamma: FieldElement) -> bool:
    """Membership of gamma in the S-ideal generated by the a-part."""
    if gamma.is_zero():
        return True
    lattice = ctx.a_part
    for v in ctx.sconfig.finite_places:
        w = valuation(gamma, v)
        if w < 0:
            lattice = lattice * v.ideal_power(w)
    return lattice.contains(gamma)


def verify_certificate(ctx: TorusContext, cert: CoveringCertificate,
                       threshold=None) -> None:
    """Replay a covering certificate; raises AssertionError on any defect.

    Checks: bounds below the threshold, bit-exact bound re-derivation from
    (box, gamma), shifts inside the S-ideal, boxes inside the fundamental
    domain, pairwise disjointness, and total measure exactly 1.
    """
    t = Fraction(threshold) if threshold is not None else cert.threshold
    if cert.threshold > t:
        raise AssertionError("certificate threshold exceeds requested one")
    if (cert.ideal_hnf, cert.ideal_den) != (ctx.a_part.hnf, ctx.a_part.den):
        raise AssertionError("certificate is for a different ideal")
    total = Fraction(0)
    n = ctx.field.degree
    nfin = len(ctx.sconfig.finite_places)
    for e in cert.entries:
        box = e.box
        if len(box.lo) != n or len(box.exponents) != nfin:
            raise AssertionError("box shape mismatch")
        for a, b in zip(box.lo, box.hi):
            if not (0 <= a < b <= 1):
                raise AssertionError("box outside the fundamental parallelepiped")
        if any(k < 0 for k in box.exponents):
            raise AssertionError("negative finite precision")
        center = box.center_element(ctx)
        if not center.is_integral():
            raise AssertionError("box center is not integral")
        if not e.bound < t:
            raise AssertionError(f"bound {e.bound} not below threshold {t}")
        gamma = ctx.field.element(e.gamma_coords)
        if not gamma_in_s_ideal(ctx, gamma):
            raise AssertionError("shift is not in the S-ideal")
        replayed = box_bound(ctx, box, gamma)
        if replayed != e.bound:
            raise AssertionError(
                f"bound replay mismatch: recorded {e.bound}, got {replayed}")
        total += box.volume_fraction(ctx)
    if total != 1:
        raise AssertionError(f"boxes measure {total}, expected exactly 1")
    _check_disjoint(ctx, cert.entries)


def _classes_compatible(ctx, box1, box2) -> bool:
    """Whether the two finite residue classes intersect."""
    diff = box1.center_element(ctx) - box2.center_element(ctx)
    for v, k1, k2 in zip(ctx.sconfig.finite_places, box1.exponents,
                         box2.exponents):
        k = min(k1, k2)
        if k == 0:
            continue
        if not diff.is_zero() and valuation(diff, v) < k:
            return False
    return True


def _check_disjoint(ctx, entries):
    """Pairwise disjointness via a sweep on the first coordinate."""
    idx = sorted(range(len(entries)), key=lambda i: entries[i].box.lo[0])
    compat_cache = {}
    active = []
    for i in idx:
        b = entries[i].box
        active = [j for j in active if entries[j].box.hi[0] > b.lo[0]]
        for j in active:
            ob = entries[j].box
            if all(a < d and c < b_ for a, b_, c, d in
                   zip(b.lo, b.hi, ob.lo, ob.hi)):
                key = (b.center, b.exponents, ob.center, ob.exponents)
                if key not in compat_cache:
                    compat_cache[key] = _classes_compatible(ctx, b, ob)
                if compat_cache[key]:
                    raise AssertionError("overlapping boxes in certificate")
        active.append(i)
