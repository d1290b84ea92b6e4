import dataclasses
import random
from fractions import Fraction as F

import pytest

from euclidmin import (CoveringCertificate, NoCandidates, Unresolved,
                       covering_verify, m_upper_adele, s_norm,
                       verify_certificate)
from euclidmin.covering import CoverBox, box_bound
from euclidmin.intervals import Iv
from euclidmin.minima import box_contains_rational
from euclidmin.torus import AdelePoint, torus_context


def test_covering_easy(field_q, s_q_inf):
    Z = field_q.maximal_order()
    cert = covering_verify(Z, s_q_inf, F(3, 5), budget=2000)
    assert isinstance(cert, CoveringCertificate)
    ctx = torus_context(Z, s_q_inf)
    verify_certificate(ctx, cert)
    # monotonicity: the same certificate verifies at any larger threshold
    verify_certificate(ctx, cert, F(7, 10))
    verify_certificate(ctx, cert, F(2))


def test_covering_below_sup_stays_unresolved(field_q, s_q_inf):
    Z = field_q.maximal_order()
    res = covering_verify(Z, s_q_inf, F(2, 5), budget=400)
    assert isinstance(res, Unresolved)
    mids = [(b.lo[0] + b.hi[0]) / 2 for b in res.boxes]
    assert all(F(1, 4) < m < F(3, 4) for m in mids)


def test_covering_qi(field_qi, s_qi_inf):
    Oi = field_qi.maximal_order()
    cert = covering_verify(Oi, s_qi_inf, F(1), budget=20000)
    assert isinstance(cert, CoveringCertificate)
    verify_certificate(torus_context(Oi, s_qi_inf), cert)


def test_covering_with_finite_places(field_q, s_q_23):
    Z = field_q.maximal_order()
    cert = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    assert isinstance(cert, CoveringCertificate)
    ctx = torus_context(Z, s_q_23)
    verify_certificate(ctx, cert)
    verify_certificate(ctx, cert, F(22, 100))


def test_covering_sampling_soundness(field_q, s_q_23):
    Z = field_q.maximal_order()
    ctx = torus_context(Z, s_q_23)
    cert = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    rng = random.Random(2024)
    for _ in range(300):
        q = rng.choice([1, 5, 7, 11, 13, 25, 35, 49])
        x = field_q.from_rational(F(rng.randrange(q), q))
        hits = [e for e in cert.entries if box_contains_rational(ctx, e.box, x)]
        assert len(hits) == 1
        gamma = field_q.element(hits[0].gamma_coords)
        val = s_norm(x - gamma, s_q_23) / ctx.s_norm_a
        assert val < F(21, 100) and val <= hits[0].bound


def test_tampered_certificates_rejected(field_q, s_q_23):
    Z = field_q.maximal_order()
    ctx = torus_context(Z, s_q_23)
    cert = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    entries = list(cert.entries)
    e0 = entries[0]

    def rejected(c):
        with pytest.raises(AssertionError):
            verify_certificate(ctx, c)

    rejected(dataclasses.replace(
        cert, entries=tuple([dataclasses.replace(e0, bound=e0.bound / 2)]
                            + entries[1:])))
    rejected(dataclasses.replace(
        cert, entries=tuple([dataclasses.replace(
            e0, gamma_coords=(e0.gamma_coords[0] + 1,))] + entries[1:])))
    b = e0.box
    moved = CoverBox((b.lo[0] + F(1, 64),), b.hi, b.center, b.exponents)
    rejected(dataclasses.replace(
        cert, entries=tuple([dataclasses.replace(e0, box=moved)] + entries[1:])))
    rejected(dataclasses.replace(cert, entries=tuple(entries[1:])))
    # duplicate box breaks disjointness even though the measure grows
    rejected(dataclasses.replace(cert, entries=tuple(entries + [e0])))


def test_covering_resume(field_qi, s_qi_inf):
    Oi = field_qi.maximal_order()
    partial = covering_verify(Oi, s_qi_inf, F(51, 100), budget=2)
    assert isinstance(partial, Unresolved)
    done = covering_verify(Oi, s_qi_inf, F(51, 100), budget=20000,
                           resume=partial.state)
    assert isinstance(done, CoveringCertificate)
    verify_certificate(torus_context(Oi, s_qi_inf), done)


def test_covering_workers_schedule_independent(field_q, s_q_23):
    Z = field_q.maximal_order()
    serial = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    parallel = covering_verify(Z, s_q_23, F(21, 100), budget=60000, workers=2)
    assert isinstance(parallel, CoveringCertificate)
    assert serial.entries == parallel.entries


def test_m_upper_adele(field_q, s_q_inf):
    Z = field_q.maximal_order()
    zero = field_q.zero()
    point = AdelePoint((Iv.point(0),), (), (), exact_tag=zero)
    assert m_upper_adele(Z, s_q_inf, point, [zero]) == 0
    half = field_q.from_rational(F(1, 2))
    point = AdelePoint((Iv.point(F(1, 2)),), (), (), exact_tag=half)
    cands = [zero, field_q.one()]
    assert m_upper_adele(Z, s_q_inf, point, cands) == F(1, 2)
    region = AdelePoint((Iv(0, 1),), (), ())
    bound = m_upper_adele(Z, s_q_inf, region, cands)
    assert bound >= F(1, 2)
    with pytest.raises(NoCandidates):
        m_upper_adele(Z, s_q_inf, region, [])


def test_box_bound_replay_determinism(field_q, s_q_23):
    Z = field_q.maximal_order()
    ctx = torus_context(Z, s_q_23)
    cert = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    for entry in cert.entries[:5]:
        gamma = field_q.element(entry.gamma_coords)
        assert box_bound(ctx, entry.box, gamma) == entry.bound
