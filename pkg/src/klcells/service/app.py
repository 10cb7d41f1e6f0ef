"""FastAPI service wrapping the core package.

The service keeps the expensive memoised tables (canonical bases, module
bases) warm in process state, keyed by Coxeter system, so repeated queries
against the same type reuse earlier work.  All payloads are built from
sorted structures and contain no timestamps: identical requests produce
identical bytes.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..antispherical import ASTable, bound_check
from ..cells import cell_orbit_diagnostic, cell_partition, check_P
from ..coxeter import (CoxElt, CoxeterSystem, UnsupportedTypeError,
                       build_system)
from ..hecke import KLTable
from ..modcyclic import FGLAlgebra, classify
from ..orbits import (hasse_dot, orbit_poset, prime_thick_ideals,
                      thick_ideal_lattice, unique_cover_check)
from ..rootdata import QuantumParam, RootDatum
from ..tilting import (b2_antichain_certificates, census, graded_hom,
                       ideal_lattice_A2, nilpotence_bound_check)
from . import schemas

app = FastAPI(title="klcells", version=__version__)


class _State:
    def __init__(self):
        self.systems: dict[tuple[str, bool], CoxeterSystem] = {}
        self.kl: dict[tuple[str, bool], KLTable] = {}
        self.asph: dict[tuple[str, bool], ASTable] = {}
        self.spherical: dict[tuple[str, bool], ASTable] = {}

    def system(self, label: str, affine: bool) -> CoxeterSystem:
        key = (label, affine)
        if key not in self.systems:
            try:
                self.systems[key] = build_system(label, affine)
            except UnsupportedTypeError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
        return self.systems[key]

    def kl_table(self, label: str, affine: bool) -> KLTable:
        key = (label, affine)
        if key not in self.kl:
            self.kl[key] = KLTable(self.system(label, affine))
        return self.kl[key]

    def as_table(self, label: str, spherical: bool = False) -> ASTable:
        cache = self.spherical if spherical else self.asph
        key = (label, True)
        if key not in cache:
            cache[key] = ASTable(self.system(label, True), spherical=spherical)
        return cache[key]


STATE = _State()


def _parse_word(sys: CoxeterSystem, text: str) -> CoxElt:
    try:
        return sys.element(CoxElt.from_str(text).word)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _vec_json(vec) -> dict:
    return {str(y): p.to_json()
            for y, p in sorted(vec.items(), key=lambda kv: (kv[0].length, kv[0].word))}


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/kl", response_model=schemas.KLResponse)
def kl(req: schemas.KLRequest) -> dict:
    sys = STATE.system(req.type, req.affine)
    table = STATE.kl_table(req.type, req.affine)
    cache_file = None
    if req.cache_dir:
        os.makedirs(req.cache_dir, exist_ok=True)
        cache_file = os.path.join(
            req.cache_dir, f"kl-{req.type}{'-affine' if req.affine else ''}.json")
        if os.path.exists(cache_file):
            table.load_json(cache_file)
    if req.x is not None:
        xs = [_parse_word(sys, req.x)]
    else:
        limit = req.max_length if req.affine else min(
            req.max_length, sys.longest_length)
        xs = sys.enumerate_ball(limit)
    basis = {str(x): _vec_json(table.canonical(x)) for x in xs}
    if cache_file:
        table.save_json(cache_file)
    return {"type": req.type, "affine": req.affine, "L": req.max_length,
            "basis": basis}


@app.post("/asph", response_model=schemas.AsphResponse)
def asph(req: schemas.AsphRequest) -> dict:
    sys = STATE.system(req.type, True)
    if req.cross_validate and not req.spherical:
        table = ASTable(sys, cross_validate=True, kl_table=STATE.kl_table(req.type, True))
    else:
        table = STATE.as_table(req.type, spherical=req.spherical)
    basis = {str(x): _vec_json(table.canonical(x))
             for x in table.coset_ball(req.max_length)}
    report = None
    if req.bound_check:
        report = bound_check(sys, req.max_length, n_table=None if req.spherical
                             else STATE.as_table(req.type))
    return {"type": req.type, "L": req.max_length,
            "basis_tag": "spherical" if req.spherical else "antispherical",
            "basis": basis, "bound_report": report}


@app.post("/bound", response_model=schemas.CheckResponse)
def bound(req: schemas.BoundRequest) -> dict:
    sys = STATE.system(req.type, True)
    report = bound_check(sys, req.max_length, n_table=STATE.as_table(req.type))
    return {"passed": not report["violations"], "report": report}


@app.post("/cells", response_model=schemas.CellsResponse)
def cells(req: schemas.CellsRequest) -> dict:
    sys = STATE.system(req.type, req.affine)
    kl_table = STATE.kl_table(req.type, req.affine)
    part = cell_partition(sys, req.side, req.max_length, kl_table)
    diag = None
    if req.diagnostic:
        if not req.affine:
            raise HTTPException(status_code=422,
                                detail="the orbit diagnostic needs an affine system")
        diag = cell_orbit_diagnostic(sys, req.max_length)
    return {
        "type": req.type,
        "side": part.side,
        "stability_margin": part.stability_margin,
        "classes": [[str(x) for x in cls] for cls in part.classes],
        "preorder": part.preorder,
        "provisional": [str(x) for x in part.provisional],
        "diagnostic": diag,
    }


@app.post("/duflo", response_model=schemas.DufloResponse)
def duflo(req: schemas.DufloRequest) -> dict:
    sys = STATE.system(req.type, False)
    report = check_P(sys)
    return {
        "duflo": report["duflo"],
        "P": "all pass" if report["all_pass"] else "failures",
        "a_values": {d: report["a_values"][d] for d in report["duflo"]},
    }


@app.post("/check-p", response_model=schemas.CheckResponse)
def check_p(req: schemas.DufloRequest) -> dict:
    sys = STATE.system(req.type, False)
    report = check_P(sys)
    return {"passed": report["all_pass"], "report": report}


@app.post("/tilt/hom", response_model=schemas.TiltHomResponse)
def tilt_hom(req: schemas.TiltHomRequest) -> dict:
    sys = STATE.system(req.type, True)
    rd = RootDatum(req.type)
    try:
        QuantumParam(req.ell).validate(rd)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    table = STATE.as_table(req.type)
    x = _parse_word(sys, req.x)
    y = _parse_word(sys, req.y)
    for w in (x, y):
        if not sys.in_min_coset(w):
            raise HTTPException(status_code=422,
                                detail=f"{w} is not a shortest coset representative")
    p = graded_hom(table, x, y).poly
    return {"type": req.type, "ell": req.ell, "x": str(x), "y": str(y),
            "poly": p.to_json(),
            "degree": None if p.is_zero() else p.degree,
            "constant_term": p.constant_term}


@app.post("/tilt/census", response_model=schemas.CheckResponse)
def tilt_census(req: schemas.CensusRequest) -> dict:
    sys = STATE.system(req.type, True)
    rd = RootDatum(req.type)
    try:
        report = census(sys, rd, req.ell, req.max_length,
                        STATE.as_table(req.type))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"passed": not report["contradictions"], "report": report}


@app.post("/tilt/nilpotence", response_model=schemas.CheckResponse)
def tilt_nilpotence(req: schemas.NilpotenceRequest) -> dict:
    sys = STATE.system(req.type, True)
    report = nilpotence_bound_check(sys, req.max_length, STATE.as_table(req.type))
    return {"passed": not report["violations"], "report": report}


@app.post("/lattice/a2", response_model=schemas.CheckResponse)
def lattice_a2(req: schemas.LatticeA2Request) -> dict:
    if req.ell is not None:
        sys = STATE.system("A2", True)
        rd = RootDatum("A2")
        try:
            QuantumParam(req.ell).validate(rd)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        report = ideal_lattice_A2(sys, rd, req.ell)
    else:
        report = ideal_lattice_A2()
    certified = all(rel.get("certified", True) for rel in report["relations"])
    return {"passed": report["count"] == 6 and certified, "report": report}


@app.post("/b2/family", response_model=schemas.CheckResponse)
def b2_family(req: schemas.B2FamilyRequest) -> dict:
    sys = STATE.system("B2", True)
    rd = RootDatum("B2")
    try:
        report = b2_antichain_certificates(sys, rd, req.ell,
                                           (req.i_min, req.i_max),
                                           STATE.as_table("B2"))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"passed": report["certified"], "report": report}


@app.post("/orbits", response_model=schemas.OrbitsResponse)
def orbits(req: schemas.OrbitsRequest) -> dict:
    try:
        poset = orbit_poset(req.algebra)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    ideals = thick_ideal_lattice(poset)
    primes = prime_thick_ideals(poset)
    return {
        "algebra": req.algebra,
        "nodes": list(poset.nodes),
        "covers": [list(c) for c in poset.covers],
        "ideals": [{"downset": sorted(i.downset), "prime": i.prime,
                    "principal": i.principal, "orbit": i.prime_orbit}
                   for i in ideals],
        "primes": [{"orbit": o, "downset": sorted(i.downset)}
                   for o, i in primes],
        "unique_cover": unique_cover_check(poset),
        "dot": hasse_dot(poset),
    }


@app.post("/cyclic/decompose", response_model=schemas.CheckResponse)
def cyclic_decompose(req: schemas.CyclicDecomposeRequest) -> dict:
    try:
        alg = FGLAlgebra(req.p, req.n, req.fgl)
        if req.a is not None and req.b is not None:
            table = {(req.a, req.b): alg.tensor_decompose(req.a, req.b)}
        elif req.a is None and req.b is None:
            table = alg.decomposition_table()
        else:
            raise ValueError("give both block sizes or neither")
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    report = {
        "p": req.p, "n": req.n, "fgl": alg.fgl_name,
        "table": {f"{a},{b}": list(t) for (a, b), t in sorted(table.items())},
    }
    return {"passed": True, "report": report}


@app.post("/cyclic/classify", response_model=schemas.CheckResponse)
def cyclic_classify(req: schemas.CyclicClassifyRequest) -> dict:
    try:
        alg = FGLAlgebra(req.p, req.n, req.fgl)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    report = classify(alg)
    return {"passed": report["all_pass"], "report": report}
