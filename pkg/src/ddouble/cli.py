"""Command line front end: `python -m ddouble <area> <verb> [flags]`.

Every command prints one report (JSON by default).  Exit code 0 means the
command ran and every check passed, 1 means a verification failed (the
report carries the diagnosis), 2 means a usage error.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import autdg, bruhat, cohomology, galois, groups, hopf, lazy


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    area: str
    verb: str
    group: str = None
    table: str = None
    conductor: int = None
    variant: str = "double"
    format: str = "json"
    out: str = None
    seed: int = 0
    which: str = None
    input: str = None
    index: int = None
    list: bool = False


# ---- serialization ----------------------------------------------------------------------

def _plain(x):
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def emit_report(result, fmt="json"):
    """Deterministic bytes: sorted-key JSON, or a short key: value summary."""
    data = _plain(result)
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, indent=2) + "\n").encode()
    lines = []
    for k in sorted(data) if isinstance(data, dict) else []:
        v = data[k]
        if isinstance(v, (dict, list)):
            text = json.dumps(v, sort_keys=True)
            if len(text) > 100:
                text = text[:97] + "..."
            v = text
        lines.append(f"{k}: {v}")
    if not isinstance(data, dict):
        lines.append(json.dumps(data, sort_keys=True))
    return ("\n".join(lines) + "\n").encode()


# ---- helpers ------------------------------------------------------------------------------

def _group(spec):
    if not spec.group and not spec.table:
        raise UsageError("--group or --table is required")
    return groups.load_group(spec.group, spec.table)


def _load_input(spec):
    if not spec.input:
        return None
    with open(spec.input) as fh:
        return json.load(fh)


def _need_input(spec):
    data = _load_input(spec)
    if data is None:
        raise UsageError("--input FILE is required")
    return data


def _automorphism(spec, G):
    data = _load_input(spec)
    if data is not None:
        return autdg.from_json(G, data)
    if spec.index is None:
        raise UsageError("give --input FILE or --index K")
    elems = autdg.enumerate_all(G, spec.conductor)
    if not 0 <= spec.index < len(elems):
        raise UsageError(f"--index must be in [0, {len(elems)})")
    return elems[spec.index]


# ---- commands -----------------------------------------------------------------------------

def group_info(spec):
    G = _group(spec)
    inv = groups.invariants(G)
    Gab = inv["abelianization"]
    return {"name": G.name, "order": G.order, "exponent": inv["exponent"], "abelian": G.is_abelian(),
            "center": list(inv["center"]), "center_order": len(inv["center"]),
            "abelianization": groups.iso_type(Gab), "abelianization_order": Gab.order,
            "class_sizes": sorted(len(c) for c in inv["conjugacy_classes"]),
            "invariant_factors": groups.iso_type(G)}, True


def hopf_verify(spec):
    G = _group(spec)
    kinds = ["kG", "kdualG", "DG", "DGstar"] if spec.which in (None, "all") else [spec.which]
    out, ok = {"group": G.name, "conductor": spec.conductor or G.exponent(), "reports": {}}, True
    for k in kinds:
        if k not in ("kG", "kdualG", "DG", "DGstar"):
            raise UsageError(f"unknown Hopf algebra {k!r}")
        rep = hopf.verify_axioms(hopf.build(k, G, spec.conductor))
        out["reports"][k] = rep
        ok = ok and rep["all_pass"]
    return out, ok


def autdg_enumerate(spec):
    G = _group(spec)
    elems = autdg.enumerate_all(G, spec.conductor)
    out = {"group": G.name, "conductor": elems[0].N if elems else spec.conductor, "count": len(elems)}
    if spec.list:
        out["elements"] = [M.to_json() for M in elems]
    return out, True


def autdg_compose(spec):
    G = _group(spec)
    data = _need_input(spec)
    if not isinstance(data, list) or len(data) < 2:
        raise UsageError("compose expects a JSON list of automorphisms")
    Ms = [autdg.from_json(G, d) for d in data]
    prod = Ms[0]
    for M in Ms[1:]:
        prod = autdg.compose(prod, M)
    return {"group": G.name, "product": prod.to_json()}, True


def autdg_check(spec):
    G = _group(spec)
    data = _need_input(spec)
    try:
        M = autdg.from_json(G, data)
    except autdg.AutError as e:
        return {"group": G.name, "valid": False, "diagnosis": f"{type(e).__name__}: {e}"}, False
    return {"group": G.name, "valid": True, "bijective": autdg.is_bijective(M, exact=True),
            "phi_hash": M.phi_hash()}, True


def bruhat_decompose(spec):
    G = _group(spec)
    M = _automorphism(spec, G)
    cert = bruhat.decompose(M, spec.variant)
    res = bruhat.verify_certificate(cert, G, M)
    return {"certificate": cert.to_json(), "verified": res.ok, "diagnosis": res.diagnosis}, res.ok


def bruhat_census(spec):
    G = _group(spec)
    elems = autdg.enumerate_all(G, spec.conductor)
    rep = bruhat.census(G, elems, spec.variant)
    ok = rep["sum_ok"] and ("expected_sizes" not in rep or rep["expected_sizes"] == rep["sizes"])
    return rep, ok


def bruhat_verify(spec):
    G = _group(spec)
    cert = bruhat.DecompositionCert.from_json(_need_input(spec))
    res = bruhat.verify_certificate(cert, G)
    return {"ok": res.ok, "diagnosis": res.diagnosis, "index": res.index}, res.ok


def _cocycle(spec, G):
    data = _need_input(spec)
    N = data.get("conductor") or spec.conductor
    H = lazy.host(G, N, data.get("host", "DGstar"))
    return lazy.table_from_json(H, data)


def lazy_check(spec):
    G = _group(spec)
    sigma = _cocycle(spec, G)
    H = sigma.H
    defect = lazy.cocycle_defect(H, sigma)
    out = {"host": H.kind, "conductor": H.N, "cocycle": defect is None, "cocycle_defect": defect,
           "lazy_generic": lazy.is_lazy_cocycle(H, sigma, "generic")}
    if H.kind == "DGstar":
        out["lazy_basis_conditions"] = lazy.lazy_defect_dgstar(sigma) is None
        out["lazy_defect"] = lazy.lazy_defect_dgstar(sigma)
        out["symmetric"] = lazy.is_symmetric(sigma)
    return out, defect is None


def lazy_restrict(spec):
    G = _group(spec)
    sigma = _cocycle(spec, G)
    which = spec.which or "beta"
    res = lazy.restrict(sigma, which)
    if which == "alpha":
        res = lazy.table_to_json(res)
    return {"which": which, "lazy": lazy.is_lazy_cocycle(sigma.H, sigma), "restriction": res}, True


def lazy_embed(spec):
    G = _group(spec)
    N = spec.conductor or G.exponent()
    which = spec.which or "beta"
    data = _load_input(spec)
    if which == "beta":
        if data is not None:
            exps = data["exps"] if isinstance(data, dict) else data
        else:
            exps = lazy.invariant_betas(G, N)[spec.index or 0]
        datum = lazy.GroupCocycle.from_exps(G, N, exps)
    elif which in ("alpha", "alpha_central"):
        if data is not None:
            datum = lazy.table_from_json(lazy.host(G, N, "kdualG"), data)
        else:
            datum = lazy.central_alphas(G, N)[spec.index or 0]
    elif which in ("lambda", "lambda_central"):
        if data is not None:
            f = tuple(data["f"])
            datum = cohomology.LazyPairing(G, f, set(f) <= set(G.center()))
        else:
            datum = lazy.central_pairings(G)[spec.index or 0]
    else:
        raise UsageError(f"unknown embedding {which!r}")
    sigma = lazy.embed(datum, which, lazy.host(G, N))
    ok = lazy.is_cocycle(sigma.H, sigma) and lazy.is_lazy_cocycle(sigma.H, sigma)
    return {"which": which, "cocycle": lazy.table_to_json(sigma), "verified": ok}, ok


def lazy_trivialize(spec):
    G = _group(spec)
    data = _load_input(spec)
    if data is not None:
        sigma = _cocycle(spec, G)
    else:
        rng = random.Random(spec.seed)
        H = lazy.host(G, spec.conductor)
        sigma = lazy.coboundary(H, lazy.random_almost_lazy(G, rng, H.N))
    try:
        w = lazy.kernel_trivialize(sigma, random.Random(spec.seed))
    except (lazy.PreconditionFailed, lazy.SolveFailed) as e:
        return {"ok": False, "which": e.which, "diagnosis": str(e)}, False
    return {"ok": True, "witness": w, "sigma": lazy.table_to_json(sigma) if data is None else None}, True


def lazy_census(spec):
    G = _group(spec)
    return lazy.conjecture_census(G, spec.conductor), True


def _datum(spec, G):
    data = _load_input(spec)
    if data is None:
        if G.name not in ("C2xC2", "C2 x C2"):
            raise UsageError("give --input DATUM.json (the built-in datum is for C2xC2)")
        return galois.standard_klein_datum()
    return galois.GaloisDatum.from_json(G, data)


def galois_classify(spec):
    G = _group(spec)
    reps = galois.classify_lazy_kG(G, spec.conductor)
    return {"group": G.name, "count": len(reps), "data": reps}, True


def galois_verify(spec):
    G = _group(spec)
    d = _datum(spec, G)
    R = galois.build_R(d)
    ok_R = galois.galois_check(R)
    out = {"datum": d, "R_dim": R.dim, "R_galois": ok_R, "bigalois": galois.bigalois_criterion(d)}
    return out, ok_R


def galois_phi(spec):
    G = _group(spec)
    d = _datum(spec, G)
    res = galois.phi_iso(d)
    return {"datum": d, "phi": res}, res.ok


def cohom_h2(spec, invariant=False):
    G = _group(spec)
    res = cohomology.h2(G, spec.conductor, invariant=invariant)
    out = {"group": G.name, "h2": res}
    if invariant:
        N = res.N
        out["representatives_invariant"] = all(cohomology.is_invariant(G, r, N) for r in res.representatives)
        return out, out["representatives_invariant"]
    return out, True


def cohom_pairings(spec):
    G = _group(spec)
    kind = spec.which or "lazy"
    ps = cohomology.pairings(G, kind)
    return {"group": G.name, "kind": kind, "count": len(ps), "pairings": ps}, True


COMMANDS = {
    ("group", "info"): group_info,
    ("hopf", "verify"): hopf_verify,
    ("autdg", "enumerate"): autdg_enumerate,
    ("autdg", "compose"): autdg_compose,
    ("autdg", "check"): autdg_check,
    ("bruhat", "decompose"): bruhat_decompose,
    ("bruhat", "census"): bruhat_census,
    ("bruhat", "verify"): bruhat_verify,
    ("lazy", "check"): lazy_check,
    ("lazy", "restrict"): lazy_restrict,
    ("lazy", "embed"): lazy_embed,
    ("lazy", "trivialize"): lazy_trivialize,
    ("lazy", "census"): lazy_census,
    ("galois", "classify"): galois_classify,
    ("galois", "verify"): galois_verify,
    ("galois", "phi"): galois_phi,
    ("cohom", "h2"): cohom_h2,
    ("cohom", "h2inv"): lambda s: cohom_h2(s, invariant=True),
    ("cohom", "pairings"): cohom_pairings,
}


def parser():
    p = argparse.ArgumentParser(prog="ddouble", description="Drinfeld double toolkit")
    p.add_argument("area", choices=sorted({a for a, _ in COMMANDS}))
    p.add_argument("verb")
    p.add_argument("--group")
    p.add_argument("--table", help="group table JSON file")
    p.add_argument("--conductor", type=int)
    p.add_argument("--variant", choices=["double", "left", "right"], default="double")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--which")
    p.add_argument("--input", help="JSON input (automorphism, certificate, cocycle, datum)")
    p.add_argument("--index", type=int)
    p.add_argument("--list", action="store_true", help="include every element in enumerate reports")
    return p


def parse(argv):
    ns = parser().parse_args(argv)
    if (ns.area, ns.verb) not in COMMANDS:
        verbs = sorted(v for a, v in COMMANDS if a == ns.area)
        raise UsageError(f"unknown verb {ns.verb!r} for {ns.area}; choose from {verbs}")
    return JobSpec(**vars(ns))


def run(argv=None):
    """Run one job; returns the exit code."""
    try:
        spec = parse(sys.argv[1:] if argv is None else argv)
        result, ok = COMMANDS[(spec.area, spec.verb)](spec)
    except SystemExit as e:
        return 2 if e.code else 0
    except groups.SizeLimit as e:
        result, ok = {"ok": False, "error": type(e).__name__, "diagnosis": str(e)}, False
    except (UsageError, groups.GroupError, FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (lazy.LazyError, galois.GaloisError, autdg.AutError, bruhat.DecompositionError,
            hopf.NotInvertible, hopf.NotACocycle) as e:
        result, ok = {"ok": False, "error": type(e).__name__, "diagnosis": str(e)}, False
    payload = emit_report(result, spec.format)
    if spec.out:
        with open(spec.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return 0 if ok else 1


def main():
    sys.exit(run())
