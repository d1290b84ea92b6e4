"""Command line front end: JSON configs in, replayable JSON reports out.

Every rational in a report is serialized as an exact "numerator/denominator"
string, so reports and certificates replay bit-for-bit. Timing lives in its
own section outside the content hash; identical configs and commands produce
byte-identical payloads.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from .covering import CertEntry, CoverBox, CoveringCertificate, \
    verify_certificate
from .errors import EuclidMinError, IoError, ParseError, ValidationError
from .fields import ideal_from_gens, ideal_norm, make_field
from .forms import form_from_ideal, m_form
from .minima import (compute_M, covering_verify, decide_norm_euclidean,
                     m_exact, search_lower)
from .places import make_sconfig, s_norm
from .torus import orbit, s_trace_dual, torus_context

FORMAT_VERSION = 1

COMMANDS = ("info", "snorm", "m", "search", "cover", "M", "decide", "form",
            "orbit", "dual", "verify-cert")


# -- rationals -----------------------------------------------------------------


def rat_to_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def str_to_rat(s, path="") -> Fraction:
    try:
        if isinstance(s, int):
            return Fraction(s)
        if isinstance(s, str):
            return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    raise ValidationError(f"not a rational: {s!r}", path)


def coords_to_json(coords):
    return [rat_to_str(c) for c in coords]


# -- configuration --------------------------------------------------------------


class RunConfig:
    """Validated run configuration; builds the verified working objects."""

    def __init__(self, raw: dict):
        self.raw = raw
        if not isinstance(raw, dict):
            raise ValidationError("config must be a JSON object")
        field_spec = raw.get("field")
        if not isinstance(field_spec, dict) or "poly" not in field_spec:
            raise ValidationError("missing polynomial", "field.poly")
        poly = field_spec["poly"]
        if (not isinstance(poly, list) or not poly
                or not all(isinstance(c, int) for c in poly)):
            raise ValidationError("poly must be a list of integers", "field.poly")
        try:
            self.field = make_field(poly)
        except EuclidMinError as exc:
            raise ValidationError(str(exc), "field.poly")
        s_spec = raw.get("S", {})
        primes = []
        place_indices = {}
        for i, entry in enumerate(s_spec.get("primes", [])):
            path = f"S.primes[{i}]"
            if isinstance(entry, int):
                p = entry
            elif isinstance(entry, dict) and "p" in entry:
                p = entry["p"]
                if "indices" in entry:
                    place_indices[p] = list(entry["indices"])
            else:
                raise ValidationError("prime entries are ints or {p, indices}",
                                      path)
            if p in primes:
                raise ValidationError(f"duplicate prime {p}", path)
            primes.append(p)
        unit_gens = None
        if "units" in raw and raw["units"].get("gens"):
            unit_gens = [self.field.element(
                [str_to_rat(c, f"units.gens[{i}]") for c in vec])
                for i, vec in enumerate(raw["units"]["gens"])]
        try:
            self.sconfig = make_sconfig(self.field, primes,
                                        unit_gens=unit_gens,
                                        place_indices=place_indices or None)
        except EuclidMinError as exc:
            raise ValidationError(str(exc), "S")
        ideal_spec = raw.get("ideal", {"gens": [[1] + [0] * (self.field.degree - 1)]})
        gens = []
        for i, vec in enumerate(ideal_spec.get("gens", [])):
            path = f"ideal.gens[{i}]"
            if not isinstance(vec, list) or len(vec) != self.field.degree:
                raise ValidationError("generator has wrong length", path)
            gens.append(self.field.element([str_to_rat(c, path) for c in vec]))
        try:
            self.ideal = ideal_from_gens(gens)
        except EuclidMinError as exc:
            raise ValidationError(str(exc), "ideal.gens")
        params = raw.get("params", {})
        self.t = str_to_rat(params.get("t", 1), "params.t")
        self.gap = str_to_rat(params.get("gap", "1/100"), "params.gap")
        self.denom_bound = int(params.get("denom_bound", 20))
        self.budget = int(params.get("budget", 20000))
        self.workers = int(params.get("workers", 1))
        self.xi = None
        if "xi" in params:
            self.xi = self.field.element(
                [str_to_rat(c, "params.xi") for c in params["xi"]])
        self.x = None
        if "x" in params:
            self.x = self.field.element(
                [str_to_rat(c, "params.x") for c in params["x"]])
        self.point = None
        if "point" in params:
            self.point = tuple(str_to_rat(c, "params.point")
                               for c in params["point"])
        self.cert_path = params.get("cert_path")

    def echo(self) -> dict:
        return self.raw


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}")
    return RunConfig(raw)


# -- serialization of evidence ---------------------------------------------------


def certificate_to_json(cert: CoveringCertificate) -> dict:
    return {
        "kind": "covering",
        "threshold": rat_to_str(cert.threshold),
        "ideal_hnf": [list(r) for r in cert.ideal_hnf],
        "ideal_den": cert.ideal_den,
        "entries": [
            {
                "box": {
                    "lo": coords_to_json(e.box.lo),
                    "hi": coords_to_json(e.box.hi),
                    "center": coords_to_json(e.box.center),
                    "exponents": list(e.box.exponents),
                },
                "gamma": coords_to_json(e.gamma_coords),
                "bound": rat_to_str(e.bound),
            }
            for e in cert.entries
        ],
    }


def certificate_from_json(data: dict) -> CoveringCertificate:
    entries = []
    for e in data["entries"]:
        box = CoverBox(
            lo=tuple(str_to_rat(c) for c in e["box"]["lo"]),
            hi=tuple(str_to_rat(c) for c in e["box"]["hi"]),
            center=tuple(str_to_rat(c) for c in e["box"]["center"]),
            exponents=tuple(int(k) for k in e["box"]["exponents"]),
        )
        entries.append(CertEntry(box, tuple(str_to_rat(c) for c in e["gamma"]),
                                 str_to_rat(e["bound"])))
    return CoveringCertificate(
        threshold=str_to_rat(data["threshold"]),
        entries=tuple(entries),
        ideal_hnf=tuple(tuple(int(c) for c in row) for row in data["ideal_hnf"]),
        ideal_den=int(data["ideal_den"]))


def witness_to_json(xi, mv) -> dict:
    return {
        "kind": "witness",
        "xi": coords_to_json(xi.coords),
        "value": rat_to_str(mv.value),
        "shift": coords_to_json(mv.attaining_shift.coords),
    }


# -- commands ---------------------------------------------------------------------


def run_command(cfg: RunConfig, command: str) -> dict:
    """Execute one command; returns the report document (without timing)."""
    if command not in COMMANDS:
        raise ValidationError(f"unknown command {command!r}; "
                              f"choose from {', '.join(COMMANDS)}")
    field = cfg.field
    sconfig = cfg.sconfig
    doc = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config": cfg.echo(),
        "result": {},
        "evidence": None,
        "effort": {},
        "exit_code": 0,
    }
    result = doc["result"]
    if command == "info":
        ctx = torus_context(cfg.ideal, sconfig)
        result.update({
            "degree": field.degree,
            "signature": list(field.signature),
            "discriminant": field.discriminant,
            "index": field.index,
            "integral_basis_power_coords": [coords_to_json(r)
                                            for r in field.basis_pb],
            "places": [repr(v) for v in sconfig.places],
            "ideal_hnf": [list(r) for r in ctx.a_part.hnf],
            "ideal_den": ctx.a_part.den,
            "s_norm_of_ideal": rat_to_str(ctx.s_norm_a),
            "unit_gens": [coords_to_json(u.coords) for u in sconfig.unit_gens],
            "torsion_order": sconfig.torsion[1] if sconfig.torsion else 1,
        })
    elif command == "snorm":
        if cfg.x is None:
            raise ValidationError("snorm needs params.x")
        result["s_norm"] = rat_to_str(s_norm(cfg.x, sconfig))
    elif command == "m":
        if cfg.xi is None:
            raise ValidationError("m needs params.xi")
        mv = m_exact(cfg.ideal, sconfig, cfg.xi)
        result["value"] = rat_to_str(mv.value)
        result["attaining_shift"] = coords_to_json(mv.attaining_shift.coords)
        doc["evidence"] = witness_to_json(cfg.xi, mv)
    elif command == "search":
        xi, mv, orb = search_lower(cfg.ideal, sconfig, cfg.denom_bound)
        result["witness"] = coords_to_json(xi.coords)
        result["value"] = rat_to_str(mv.value)
        result["witness_orbit_size"] = orb
        doc["evidence"] = witness_to_json(xi, mv)
    elif command == "cover":
        res = covering_verify(cfg.ideal, sconfig, cfg.t, budget=cfg.budget,
                              workers=cfg.workers)
        if isinstance(res, CoveringCertificate):
            result["covered"] = True
            result["threshold"] = rat_to_str(cfg.t)
            result["boxes"] = len(res.entries)
            doc["evidence"] = certificate_to_json(res)
        else:
            result["covered"] = False
            result["surviving_boxes"] = len(res.boxes)
            doc["effort"]["processed"] = res.processed
            doc["exit_code"] = 2
    elif command == "M":
        rep = compute_M(cfg.ideal, sconfig, cfg.gap, budget=cfg.budget,
                        workers=cfg.workers)
        result["lower"] = rat_to_str(rep.lower)
        result["upper"] = rat_to_str(rep.upper) if rep.upper is not None else None
        result["witness"] = coords_to_json(rep.witness.coords)
        result["exact"] = rep.exact
        result["witness_orbit_size"] = rep.witness_orbit_size
        doc["effort"].update(rep.effort)
        evidence = {"witness": witness_to_json(rep.witness, rep.witness_minimum)}
        if rep.certificate is not None:
            evidence["certificate"] = certificate_to_json(rep.certificate)
        doc["evidence"] = evidence
    elif command == "decide":
        verdict = decide_norm_euclidean(cfg.ideal, sconfig, budget=cfg.budget,
                                        workers=cfg.workers)
        result["verdict"] = verdict.verdict
        doc["effort"].update(verdict.effort)
        if verdict.verdict == "euclidean":
            doc["evidence"] = certificate_to_json(verdict.certificate)
        elif verdict.verdict == "not_euclidean":
            doc["evidence"] = witness_to_json(verdict.witness,
                                              verdict.witness_minimum)
        else:
            doc["exit_code"] = 2
    elif command == "form":
        ctx = torus_context(cfg.ideal, sconfig)
        basis = ctx.a_part.basis_elements()
        form = form_from_ideal(ctx.a_part, (basis[0], basis[1]))
        result["form"] = [form.a, form.b, form.c]
        result["discriminant"] = form.disc
        result["primitive"] = form.is_primitive()
        if cfg.point is not None:
            result["point"] = [rat_to_str(c) for c in cfg.point]
            result["m_form"] = rat_to_str(m_form(form, cfg.point))
    elif command == "orbit":
        if cfg.xi is None:
            raise ValidationError("orbit needs params.xi")
        orb = orbit(cfg.ideal, sconfig, cfg.xi)
        result["size"] = len(orb)
        result["elements"] = [coords_to_json(o.coords) for o in orb]
    elif command == "dual":
        dual = s_trace_dual(cfg.ideal, sconfig)
        result["dual_hnf"] = [list(r) for r in dual.hnf]
        result["dual_den"] = dual.den
        result["dual_norm"] = rat_to_str(ideal_norm(dual))
    elif command == "verify-cert":
        if not cfg.cert_path:
            raise ValidationError("verify-cert needs --cert PATH")
        ok, detail = replay_report(cfg, cfg.cert_path)
        result["replay"] = "pass" if ok else "fail"
        result["detail"] = detail
        if not ok:
            doc["exit_code"] = 3
    return doc


def replay_report(cfg: RunConfig, path: str):
    """Independently re-derive the evidence of a previously emitted report."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            saved = json.load(fh)
    except OSError as exc:
        raise IoError(str(exc))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed report: {exc}")
    evidence = saved.get("evidence")
    if evidence is None:
        return False, "report carries no evidence"
    saved_cfg = RunConfig(saved["config"])
    ctx = torus_context(saved_cfg.ideal, saved_cfg.sconfig)

    def replay_one(ev):
        if ev.get("kind") == "covering":
            cert = certificate_from_json(ev)
            try:
                verify_certificate(ctx, cert)
            except AssertionError as exc:
                return False, f"covering replay failed: {exc}"
            return True, f"covering certificate with {len(cert.entries)} boxes"
        if ev.get("kind") == "witness":
            xi = saved_cfg.field.element([str_to_rat(c) for c in ev["xi"]])
            claimed = str_to_rat(ev["value"])
            shift = saved_cfg.field.element([str_to_rat(c) for c in ev["shift"]])
            again = m_exact(saved_cfg.ideal, saved_cfg.sconfig, xi)
            if again.value != claimed:
                return False, (f"witness value mismatch: recorded {ev['value']},"
                               f" recomputed {rat_to_str(again.value)}")
            direct = s_norm(xi - shift, saved_cfg.sconfig) / ctx.s_norm_a
            if direct != claimed:
                return False, "recorded shift does not reproduce the value"
            return True, "witness replayed"
        return False, f"unknown evidence kind {ev.get('kind')!r}"

    if "kind" in evidence:
        return replay_one(evidence)
    details = []
    for key, ev in sorted(evidence.items()):
        ok, detail = replay_one(ev)
        details.append(f"{key}: {detail}")
        if not ok:
            return False, "; ".join(details)
    return True, "; ".join(details)


# -- emission ----------------------------------------------------------------------


def canonical_payload_bytes(doc: dict) -> bytes:
    payload = {k: v for k, v in doc.items() if k != "timing"}
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def emit_report(doc: dict, path=None) -> bytes:
    """Serialize canonically (sorted keys, exact rationals); returns bytes."""
    body = dict(doc)
    body["content_hash"] = hashlib.sha256(canonical_payload_bytes(doc)).hexdigest()
    data = json.dumps(body, sort_keys=True, indent=1).encode() + b"\n"
    if path and path != "-":
        try:
            with open(path, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise IoError(str(exc))
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return data


# -- entry point --------------------------------------------------------------------


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="euclidmin",
        description="Exact S-Euclidean minima, norm-Euclidean decisions, "
                    "and replayable covering certificates.")
    ap.add_argument("--config", required=True, help="JSON config path")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--t", help="covering threshold (rational, e.g. 21/100)")
    ap.add_argument("--gap", help="target gap for M (rational)")
    ap.add_argument("--denom-bound", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--cert", help="report path for verify-cert")
    ap.add_argument("--output", help="report output path (default stdout)")
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise IoError(f"cannot read config: {exc}")
        cfg = parse_config(text)
        if args.t is not None:
            cfg.t = str_to_rat(args.t, "--t")
        if args.gap is not None:
            cfg.gap = str_to_rat(args.gap, "--gap")
        if args.denom_bound is not None:
            cfg.denom_bound = args.denom_bound
        if args.budget is not None:
            cfg.budget = args.budget
        if args.workers is not None:
            cfg.workers = args.workers
        if args.cert is not None:
            cfg.cert_path = args.cert
        doc = run_command(cfg, args.command)
    except EuclidMinError as exc:
        err_doc = {
            "format_version": FORMAT_VERSION,
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "exit_code": 1,
        }
        err_doc["timing"] = {"seconds": time.perf_counter() - started}
        emit_report(err_doc, args.output)
        return 1
    doc["timing"] = {"seconds": time.perf_counter() - started}
    emit_report(doc, args.output)
    return doc.get("exit_code", 0)


if __name__ == "__main__":
    sys.exit(main())
