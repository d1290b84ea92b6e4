"""Exact Euclidean minima, certified coverings, and the decision procedure.

The exact minimum of N_S(xi - gamma)/N_S(a) over the S-ideal is computable
for xi in K because three finiteness mechanisms line up:

  1. the value set is discrete: every attainable value is an integer
     multiple of N_S(a)/N_S(d), with d clearing xi into the ideal;
  2. the orbit of the class of xi under the verified S-units is finite, so
     the infinite unit sweep collapses to finitely many cosets;
  3. any difference eta = xi' - gamma with N_S(eta) <= B has a unit
     translate whose every normalized absolute value is at most
     B^(1/#S) * prod_i max(|u_i|_v, |u_i|_v^-1)^(1/2), the half-sum bound
     of the generator log vectors, so one compact box per orbit coset
     contains a representative of every candidate value.

Enumerating those boxes exactly and taking the least S-norm therefore
yields the global minimum, not an approximation.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .covering import (CertEntry, CoverBox, CoveringCertificate, Unresolved,
                       box_bound, candidate_shifts, initial_box,
                       profiles_for_box, split_arch, split_finite)
from .enumerate import elements_in_box, real_box_targets
from .errors import UnverifiedUnits
from .fields import FieldElement, FractionalIdeal, embed
from .places import s_norm, valuation
from .qmath import nth_root_upper, sqrt_upper
from .torus import (TorusContext, reduce_mod, shift_into_depths,
                    torus_context)


@dataclass(frozen=True)
class MinimumValue:
    value: Fraction                 # normalized: N_S(xi - shift) / N_S(a)
    attaining_shift: FieldElement   # gamma in the S-ideal
    search_box: dict                # the certified enumeration region used


@dataclass(frozen=True)
class MReport:
    lower: Fraction
    witness: FieldElement
    witness_minimum: MinimumValue
    upper: Fraction | None          # least certified upper bound, if any
    certificate: CoveringCertificate | None
    exact: bool
    witness_orbit_size: int
    effort: dict


@dataclass(frozen=True)
class EuclideanVerdict:
    verdict: str                    # "euclidean" | "not_euclidean" | "undecided"
    certificate: CoveringCertificate | None
    witness: FieldElement | None
    witness_minimum: MinimumValue | None
    effort: dict

    def replays(self, a, sconfig) -> bool:
        from .covering import verify_certificate

        ctx = torus_context(a, sconfig)
        if self.verdict == "euclidean":
            verify_certificate(ctx, self.certificate, Fraction(1))
            return True
        if self.verdict == "not_euclidean":
            again = m_exact(a, sconfig, self.witness)
            return again.value == self.witness_minimum.value and again.value >= 1
        return False


# -- the exact minimum ---------------------------------------------------------


def _orbit_with_units(ctx: TorusContext, xi: FieldElement):
    """Reduced orbit representatives with the unit carrying xi onto each."""
    sconfig = ctx.sconfig
    rho0, _ = reduce_mod(ctx.a_part, sconfig, xi)
    gens = list(sconfig.unit_gens)
    if sconfig.torsion is not None:
        gens.append(sconfig.torsion[0])
    seen = {rho0.coords: (rho0, ctx.field.one())}
    frontier = [(rho0, ctx.field.one())]
    while frontier:
        nxt = []
        for x, u in frontier:
            for g in gens:
                y, _ = reduce_mod(ctx.a_part, sconfig, g * x)
                if y.coords not in seen:
                    pair = (y, g * u)
                    seen[y.coords] = pair
                    nxt.append(pair)
        frontier = nxt
    return sorted(seen.values(), key=lambda t: t[0].coords)


def _unit_box_factors(ctx: TorusContext) -> list[Fraction]:
    """Per place: certified upper bound of prod_i max(|u_i|_v, 1/|u_i|_v)^(1/2).

    These factors fatten the N_S^(1/#S) balance point into a box that is
    guaranteed to contain a fundamental-parallelepiped representative of
    every unit orbit in log space.
    """
    sconfig = ctx.sconfig
    cache = ctx._aux.setdefault("unit_factors", None)
    if cache is not None:
        return cache
    factors = []
    for place in sconfig.places:
        f = Fraction(1)
        for u in sconfig.unit_gens:
            if place.is_finite():
                w = abs(valuation(u, place))
                f *= sqrt_upper(Fraction(place.residue_norm()) ** w)
            else:
                prec = Fraction(1, 2**16)
                while True:
                    box = embed(u, prec)
                    iv = (box.reals[place.index].abs() if place.kind == "real"
                          else box.complexes[place.index].abs_sq())
                    if iv.lo > 0:
                        break
                    prec /= 16
                f *= sqrt_upper(max(iv.hi, 1 / iv.lo))
        factors.append(f)
    ctx._aux["unit_factors"] = factors
    return factors


def _min_exponent(np_: int, c: Fraction) -> int:
    """Smallest integer k with np_^(-k) <= c."""
    npf = Fraction(np_)
    k = 0
    while npf ** (-k) > c:
        k += 1
    while npf ** (-(k - 1)) <= c:
        k -= 1
    return k


def _s_norm_of_int(ctx: TorusContext, d: int) -> Fraction:
    return s_norm(ctx.field.from_rational(d), ctx.sconfig)


def m_exact(a: FractionalIdeal, sconfig, xi: FieldElement) -> MinimumValue:
    """The exact minimum of N_S(xi - gamma)/N_S(a) over the S-ideal of a."""
    if not sconfig.verified:
        raise UnverifiedUnits("m_exact requires a verified S-unit basis")
    ctx = torus_context(a, sconfig)
    field = ctx.field
    rho0, gamma0 = reduce_mod(a, sconfig, xi)
    if rho0.is_zero():
        return MinimumValue(Fraction(0), gamma0, {"trivial": True})
    orbit_pairs = _orbit_with_units(ctx, xi)
    # discreteness floor: d * rho0 lands in the a-part lattice
    from .hnf import lcm_list
    d = lcm_list([c.denominator for c in ctx.a_part.coords_in_basis(rho0)])
    floor_raw = ctx.s_norm_a / _s_norm_of_int(ctx, d)
    # initial best: corner shifts of every orbit representative
    best_raw = None
    best_eta = None
    best_unit = None
    best_rep = None
    corners = list(itertools.product((0, -1), repeat=field.degree))
    for rep, u in orbit_pairs:
        for corner in corners:
            shift = field.zero()
            for c, b in zip(corner, ctx.basis):
                if c:
                    shift = shift + b * c
            eta = rep + shift
            if eta.is_zero():
                continue
            val = s_norm(eta, sconfig)
            if best_raw is None or val < best_raw:
                best_raw, best_eta, best_unit, best_rep = val, eta, u, rep
    assert best_raw is not None
    search_info = {"branch": "corner-scan"}
    if best_raw > floor_raw:
        # full certified enumeration below the current best
        factors = _unit_box_factors(ctx)
        s = sconfig.size
        root = nth_root_upper(best_raw, s)
        r1, r2 = field.signature
        real_bounds = [root * factors[i] for i in range(r1)]
        cplx_bounds = [root * factors[r1 + i] for i in range(r2)]
        depths = []
        for i, v in enumerate(sconfig.finite_places):
            c_v = root * factors[r1 + r2 + i]
            depths.append(_min_exponent(v.residue_norm(), c_v))
        lattice = ctx.a_part
        for v, k in zip(sconfig.finite_places, depths):
            if k:
                lattice = lattice * v.ideal_power(k)
        targets = real_box_targets(field, real_bounds, cplx_bounds)
        basis = lattice.basis_elements()
        search_info = {
            "branch": "box-enumeration",
            "orbit_size": len(orbit_pairs),
            "raw_bound": best_raw,
            "finite_depths": tuple(depths),
        }
        for rep, u in orbit_pairs:
            if any(k > 0 for k in depths):
                need = [max(k, 0) for k in depths]
                if all(valuation(rep, v) >= k
                       for v, k in zip(sconfig.finite_places, need) if k > 0):
                    offset = rep
                else:
                    offset = rep - shift_into_depths(ctx, rep, tuple(need))
            else:
                offset = rep
            for eta in elements_in_box(basis, offset, targets):
                if eta.is_zero():
                    continue
                val = s_norm(eta, sconfig)
                if val < best_raw:
                    best_raw, best_eta, best_unit, best_rep = val, eta, u, rep
    # transport the best difference back to xi's own coset
    gamma = xi - best_eta * best_unit.inverse()
    value = best_raw / ctx.s_norm_a
    check = s_norm(xi - gamma, sconfig) / ctx.s_norm_a
    assert check == value, "attaining shift does not replay"
    from .covering import gamma_in_s_ideal
    assert gamma_in_s_ideal(ctx, gamma), "shift left the S-ideal"
    # the balanced representative keeps a small attaining shift around
    search_info["rep_coords"] = best_rep.coords
    search_info["rep_shift_coords"] = (best_rep - best_eta).coords
    return MinimumValue(value, gamma, search_info)


# -- covering proofs -----------------------------------------------------------


def _arch_factor(ctx, arch, gamma, width):
    """Product over archimedean places of the sup absolute value."""
    from .covering import _gamma_embedding

    gbox = _gamma_embedding(ctx, gamma, width)
    r1, r2 = ctx.field.signature
    out = Fraction(1)
    idx = 0
    for i in range(r1):
        out *= (arch[idx] - gbox.reals[i]).abs().hi
        idx += 1
    for i in range(r2):
        re = arch[idx] - gbox.complexes[i].re
        im = arch[idx + 1] - gbox.complexes[i].im
        out *= (re.sq() + im.sq()).hi
        idx += 2
    return out


def _certify_box(ctx: TorusContext, box: CoverBox, t: Fraction,
                 width=Fraction(1, 2**24)):
    """Try to certify one box below t; returns (entry | None, best bound).

    Candidates are screened with the cheap profile factor (the congruence
    depth bounds the finite contribution without valuation work); only a
    winning candidate gets the canonical exact-valuation bound that the
    certificate records, which is never larger than the screening bound.
    """
    from .covering import arch_intervals_for_box

    arch = arch_intervals_for_box(ctx, box, width)
    places = ctx.sconfig.finite_places
    best = None
    for profile in profiles_for_box(ctx, box):
        fin = Fraction(1)
        for v, m in zip(places, profile):
            fin *= Fraction(v.residue_norm()) ** (-m)
        for gamma in candidate_shifts(ctx, box, profile):
            quick = _arch_factor(ctx, arch, gamma, width) * fin / ctx.s_norm_a
            if best is None or quick < best:
                best = quick
            if quick < t:
                canonical = box_bound(ctx, box, gamma, width)
                assert canonical <= quick
                return CertEntry(box, tuple(gamma.coords), canonical), canonical
    return None, best


def _split_box(ctx: TorusContext, box: CoverBox, max_depth: int = 24):
    """Scale-balancing split: refine whichever factor is coarsest."""
    widths = [h - l for l, h in zip(box.lo, box.hi)]
    widest = max(widths)
    axis = widths.index(widest)
    finite_scales = [Fraction(v.residue_norm()) ** (-k)
                     for v, k in zip(ctx.sconfig.finite_places, box.exponents)]
    if finite_scales:
        coarsest = max(finite_scales)
        place_idx = finite_scales.index(coarsest)
        if (coarsest > widest and box.exponents[place_idx] < max_depth):
            return split_finite(ctx, box, place_idx)
    return split_arch(box, axis)


class CoveringState:
    """Resumable branch-and-bound state."""

    def __init__(self, entries=(), boxes=None, processed=0):
        self.entries = list(entries)
        self.boxes = list(boxes) if boxes is not None else None
        self.processed = processed


def covering_verify(a: FractionalIdeal, sconfig, t, budget: int = 20000,
                    workers: int = 1, resume: CoveringState | None = None):
    """Prove that every adele class admits a shift with norm ratio below t.

    Worst-bound-first branch and bound over the fundamental domain. Returns
    a CoveringCertificate on success, otherwise an Unresolved carrying the
    surviving boxes (which localize the high-minimum region) and a resumable
    state.
    """
    t = Fraction(t)
    assert t > 0
    ctx = torus_context(a, sconfig)
    entries = list(resume.entries) if resume else []
    heap = []
    counter = itertools.count()
    seeds = (resume.boxes if resume and resume.boxes is not None
             else [initial_box(ctx)])
    for box in seeds:
        heapq.heappush(heap, (Fraction(0), next(counter), box))
    processed = 0
    if workers > 1:
        return _covering_parallel(ctx, a, sconfig, t, budget, workers,
                                  heap, entries, counter)
    while heap:
        if processed >= budget:
            boxes = [item[2] for item in heap]
            state = CoveringState(entries, boxes, processed)
            unres = Unresolved(boxes, processed)
            unres.state = state
            return unres
        _, _, box = heapq.heappop(heap)
        processed += 1
        entry, bound = _certify_box(ctx, box, t)
        if entry is not None:
            entries.append(entry)
            continue
        for child in _split_box(ctx, box):
            priority = -bound if bound is not None else Fraction(0)
            heapq.heappush(heap, (priority, next(counter), child))
    entries.sort(key=lambda e: e.box.sort_key())
    return CoveringCertificate(threshold=t, entries=tuple(entries),
                               ideal_hnf=ctx.a_part.hnf,
                               ideal_den=ctx.a_part.den)


def _covering_parallel(ctx, a, sconfig, t, budget, workers, heap, entries,
                       counter):
    """Round-synchronous worker pool; output is order-canonicalized."""
    from concurrent.futures import ProcessPoolExecutor

    from .cli_worker import certify_box_task, worker_payload

    payload = worker_payload(a, sconfig, t)
    processed = 0
    with ProcessPoolExecutor(max_workers=workers,
                             initializer=_worker_init,
                             initargs=(payload,)) as pool:
        while heap:
            if processed >= budget:
                boxes = [item[2] for item in heap]
                state = CoveringState(entries, boxes, processed)
                unres = Unresolved(boxes, processed)
                unres.state = state
                return unres
            batch = []
            while heap and len(batch) < 4 * workers and \
                    processed + len(batch) < budget:
                batch.append(heapq.heappop(heap)[2])
            results = list(pool.map(certify_box_task,
                                    [_box_payload(b) for b in batch]))
            processed += len(batch)
            for box, res in zip(batch, results):
                status, data = res
                if status == "certified":
                    gamma_coords, bound = data
                    entries.append(CertEntry(box, gamma_coords, bound))
                else:
                    bound = data
                    for child in _split_box(ctx, box):
                        priority = -bound if bound is not None else Fraction(0)
                        heapq.heappush(heap, (priority, next(counter), child))
    entries.sort(key=lambda e: e.box.sort_key())
    return CoveringCertificate(threshold=t, entries=tuple(entries),
                               ideal_hnf=ctx.a_part.hnf,
                               ideal_den=ctx.a_part.den)


def _worker_init(payload):
    from . import cli_worker
    cli_worker.init_worker(payload)


def _box_payload(box: CoverBox):
    return (box.lo, box.hi, box.center, box.exponents)


def box_contains_rational(ctx: TorusContext, box: CoverBox,
                          x: FieldElement) -> bool:
    """Exact membership of a K-point's diagonal image in the box."""
    coords = ctx.a_part.coords_in_basis(x)
    for c, lo, hi in zip(coords, box.lo, box.hi):
        if not lo <= c < hi:
            return False
    diff = x - box.center_element(ctx)
    for v, k in zip(ctx.sconfig.finite_places, box.exponents):
        if k == 0:
            continue
        if not diff.is_zero() and valuation(diff, v) < k:
            return False
        if not x.is_zero() and valuation(x, v) < 0:
            return False
    return True


# -- search and the two-sided report -------------------------------------------


def _primitive_torsion_classes(ctx: TorusContext, m: int):
    """One representative per new class of denominator exactly m."""
    from math import gcd

    field = ctx.field
    n = field.degree
    out = []
    for coords in itertools.product(range(m), repeat=n):
        g = gcd(m, *coords) if coords else m
        if g != 1:
            continue
        elem = field.zero()
        for c, b in zip(coords, ctx.basis):
            if c:
                elem = elem + b * Fraction(c, m)
        out.append(elem)
    return out


def search_lower(a: FractionalIdeal, sconfig, denom_bound: int,
                 seen=None, effort=None):
    """Best exact minimum over torsion classes with denominator <= bound.

    Prunes by unit orbit: every class is evaluated once per orbit. Returns
    (witness, MinimumValue, orbit_size_of_witness).
    """
    ctx = torus_context(a, sconfig)
    from .torus import orbit as orbit_fn

    seen = seen if seen is not None else set()
    best = None
    for m in range(1, denom_bound + 1):
        for rep in _primitive_torsion_classes(ctx, m):
            rho, _ = reduce_mod(a, sconfig, rep)
            if rho.coords in seen:
                continue
            orb = orbit_fn(a, sconfig, rho)
            for o in orb:
                seen.add(o.coords)
            if effort is not None:
                effort["m_exact_calls"] = effort.get("m_exact_calls", 0) + 1
            mv = m_exact(a, sconfig, rho)
            if best is None or mv.value > best[1].value:
                best = (rho, mv, len(orb))
    if best is None:
        zero = ctx.field.zero()
        best = (zero, MinimumValue(Fraction(0), zero, {"trivial": True}), 1)
    return best


def compute_M(a: FractionalIdeal, sconfig, gap, budget: int = 40000,
              workers: int = 1) -> MReport:
    """Two-sided bounds on the supremum of the exact minimum over K.

    Alternates wider witness searches with covering attempts at
    lower + gap_k, shrinking gap_k geometrically down to the requested gap.
    The exact flag is set only under the conservative double condition:
    every covering attempt succeeded, and a deliberately under-budgeted run
    at a threshold slightly below the final upper bound leaves surviving
    boxes that still contain the whole witness orbit.
    """
    gap = Fraction(gap)
    assert gap > 0
    ctx = torus_context(a, sconfig)
    effort = {"covering_boxes": 0, "m_exact_calls": 0}
    seen = set()
    denom = 4
    witness, best_mv, orbit_size = search_lower(a, sconfig, denom, seen, effort)
    upper = None
    certificate = None
    spent = 0
    gap_k = Fraction(1, 2)
    failed_ts = []
    while spent < budget:
        t = best_mv.value + gap_k
        slice_budget = min(max(400, budget // 8), budget - spent)
        result = covering_verify(a, sconfig, t, budget=slice_budget,
                                 workers=workers)
        if isinstance(result, CoveringCertificate):
            upper = t
            certificate = result
            effort["covering_boxes"] += len(result.entries)
            spent += len(result.entries)
            if gap_k <= gap:
                break
            gap_k = max(gap_k / 4, gap)
        else:
            failed_ts.append(t)
            effort["covering_boxes"] += result.processed
            spent += result.processed
            denom = min(denom * 2, 64)
            w2, mv2, orb2 = search_lower(a, sconfig, denom, seen, effort)
            if mv2.value > best_mv.value:
                witness, best_mv, orbit_size = w2, mv2, orb2
    exact = False
    if certificate is not None and upper == best_mv.value + gap and \
            all(ft <= best_mv.value for ft in failed_ts):
        # localization evidence: a deliberately under-budgeted covering just
        # above the lower bound should get stuck exactly on the witness orbit
        t_loc = best_mv.value + min(gap / 8, (upper - best_mv.value) / 8)
        probe_budget = max(32, len(certificate.entries) // 2)
        probe = covering_verify(a, sconfig, t_loc, budget=probe_budget,
                                workers=workers)
        if isinstance(probe, Unresolved) and probe.boxes:
            from .torus import orbit as orbit_fn
            orb = orbit_fn(a, sconfig, witness)
            exact = all(
                any(box_contains_rational(ctx, box, o) for box in probe.boxes)
                for o in orb)
    return MReport(lower=best_mv.value, witness=witness,
                   witness_minimum=best_mv, upper=upper,
                   certificate=certificate, exact=exact,
                   witness_orbit_size=orbit_size, effort=effort)


def decide_norm_euclidean(a: FractionalIdeal, sconfig,
                          budget: int = 60000, workers: int = 1
                          ) -> EuclideanVerdict:
    """Interleaved decision: certified covering at threshold 1 against a
    witness search for a class with exact minimum at least 1.

    Sound for any S; termination is guaranteed when #S >= 3 or whenever the
    supremum differs from 1, otherwise the budget may run out (undecided).
    """
    if not sconfig.verified:
        raise UnverifiedUnits("decision requires a verified S-unit basis")
    effort = {"covering_boxes": 0, "m_exact_calls": 0}
    seen = set()
    denom = 2
    cover_state = None
    cover_slice = 400
    while effort["covering_boxes"] + effort["m_exact_calls"] < budget:
        witness, mv, orb = search_lower(a, sconfig, denom, seen, effort)
        if mv.value >= 1:
            return EuclideanVerdict("not_euclidean", None, witness, mv, effort)
        result = covering_verify(a, sconfig, Fraction(1),
                                 budget=cover_slice, workers=workers,
                                 resume=cover_state)
        if isinstance(result, CoveringCertificate):
            effort["covering_boxes"] += len(result.entries)
            return EuclideanVerdict("euclidean", result, None, None, effort)
        cover_state = result.state
        effort["covering_boxes"] += result.processed
        denom = min(denom * 2, 64)
        cover_slice = min(cover_slice * 2, budget)
    return EuclideanVerdict("undecided", None, None, None, effort)
