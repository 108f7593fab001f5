"""FastAPI application exposing the exact-computation suites.

Every endpoint is pure and deterministic for a given request, so the
service can run long-lived and serve several clients; per-context memo
tables are cached process-wide and are safe to recompute concurrently.
"""

from __future__ import annotations

from typing import Dict

from fastapi import FastAPI, HTTPException

from .. import loopmap, suites, weyl
from ..classify import hopf_class, hopf_classes, hopf_distinguisher, superalgebra_class
from ..exact import parse_rational
from ..rootdata import DiagramError, ParityDiagram, build_root_system
from ..yangian import (MinimalisticConstraintError, YangianAlgebra,
                       coproduct)
from . import models

_yangian_cache: Dict[tuple, YangianAlgebra] = {}


def _context(diagram: ParityDiagram, cap: int) -> YangianAlgebra:
    key = (diagram.parities, cap)
    if key not in _yangian_cache:
        _yangian_cache[key] = YangianAlgebra(diagram, cap)
    return _yangian_cache[key]


def _parse_diagram(text: str) -> ParityDiagram:
    try:
        return ParityDiagram.parse(text)
    except DiagramError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def create_app() -> FastAPI:
    app = FastAPI(
        title="superyangian",
        description="Exact verification service for truncated Drinfeld "
                    "super Yangians of type A",
        version="0.1.0",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/diagram", response_model=models.DiagramResponse)
    def diagram_info(req: models.DiagramRequest) -> models.DiagramResponse:
        d = _parse_diagram(req.diagram)
        rs = build_root_system(d)
        return models.DiagramResponse(
            diagram=d.text(), n_even=d.n_even, n_odd=d.n_odd,
            simple_root_parities=[rs.simple_parity(i)
                                  for i in range(1, rs.rank + 1)])

    @app.post("/api/diagram/distinguished", response_model=models.DiagramResponse)
    def distinguished(req: models.DistinguishedRequest) -> models.DiagramResponse:
        d = ParityDiagram.distinguished(req.n_even, req.n_odd)
        rs = build_root_system(d)
        return models.DiagramResponse(
            diagram=d.text(), n_even=d.n_even, n_odd=d.n_odd,
            simple_root_parities=[rs.simple_parity(i)
                                  for i in range(1, rs.rank + 1)])

    @app.post("/api/cartan", response_model=models.CartanResponse)
    def cartan(req: models.DiagramRequest) -> models.CartanResponse:
        d = _parse_diagram(req.diagram)
        rs = build_root_system(d)
        return models.CartanResponse(diagram=d.text(), cartan=rs.cartan)

    @app.post("/api/roots", response_model=models.RootsResponse)
    def roots(req: models.DiagramRequest) -> models.RootsResponse:
        d = _parse_diagram(req.diagram)
        rs = build_root_system(d)
        names, parities, heights = [], [], []
        for root in rs.positive_roots:
            lo, hi = root
            names.append(str(lo) if lo == hi else f"{lo}..{hi}")
            parities.append(rs.root_parity(root))
            heights.append(rs.root_height(root))
        return models.RootsResponse(diagram=d.text(), positive_roots=names,
                                    parities=parities, heights=heights)

    @app.post("/api/weyl", response_model=models.WeylResponse)
    def weyl_info(req: models.WeylRequest) -> models.WeylResponse:
        import math
        d = ParityDiagram.distinguished(req.n_even, req.n_odd)
        checks = suites.suite_weyl(req.n_even, req.n_odd)
        grades = [weyl.grade(weyl.transposition(len(d), i), d)
                  for i in range(1, len(d))]
        return models.WeylResponse(
            diagram=d.text(),
            group_order=weyl.weyl_group_order(d),
            complete_order=math.factorial(len(d)),
            generator_grades=grades,
            checks=[models.WeylCheck(**c) for c in checks],
            passed=suites.suite_passed(checks))

    @app.post("/api/series", response_model=models.SeriesResponse)
    def series(req: models.SeriesRequest) -> models.SeriesResponse:
        if req.kind == "G":
            s = loopmap.G_series(req.order)
        elif req.kind == "qnumber":
            if req.n is None:
                raise HTTPException(status_code=422,
                                    detail="qnumber needs the integer n")
            s = loopmap.qnumber_series(req.n, req.order)
        elif req.kind == "unit":
            s = loopmap.hbar_over_q_minus_qinv(req.order)
        else:
            from ..exact import series_sqrt_unit
            s = series_sqrt_unit(loopmap.hbar_over_q_minus_qinv(req.order))
        terms = {}
        for expo, c in sorted(s.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = " ".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(s.variables, expo) if k) or "1"
            terms[mono] = str(c)
        return models.SeriesResponse(kind=req.kind, order=req.order,
                                     text=s.render(), terms=terms)

    @app.post("/api/check/ge", response_model=models.GECheckResponse)
    def check_ge(req: models.GECheckRequest) -> models.GECheckResponse:
        if req.parity != 1:
            return models.GECheckResponse(
                passed=False, refused=True,
                detail="parity factor -1 lies outside the admissible diagrams")
        sign = req.sign == "plus"
        try:
            a = parse_rational(req.a)
        except (ValueError, ZeroDivisionError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        ok = loopmap.check_ge_identity(a, sign, 1, req.order)
        return models.GECheckResponse(passed=ok)

    @app.post("/api/verify", response_model=models.VerifyResponse)
    def verify(req: models.VerifyRequest) -> models.VerifyResponse:
        cfg: dict = {"cap": req.cap, "length": req.length,
                     "max_level": req.max_level, "jobs": req.jobs,
                     "words": req.words}
        if req.diagram:
            cfg["diagram"] = _parse_diagram(req.diagram)
            cfg["n_even"] = cfg["diagram"].n_even
            cfg["n_odd"] = cfg["diagram"].n_odd
        elif req.n_even and req.n_odd:
            cfg["n_even"], cfg["n_odd"] = req.n_even, req.n_odd
            cfg["diagram"] = ParityDiagram.distinguished(req.n_even, req.n_odd)
        else:
            raise HTTPException(status_code=422,
                                detail="need a diagram or both counts")
        try:
            checks = suites.run_suite(req.suite, cfg)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in checks:
            counts[str(c["status"])] += 1
        return models.VerifyResponse(
            suite=req.suite, diagram=cfg["diagram"].text(),
            cap=req.cap, length=req.length,
            checks=[models.CheckRecord(**c) for c in checks],
            passed=suites.suite_passed(checks), counts=counts)

    @app.post("/api/classify", response_model=models.ClassifyResponse)
    def classify(req: models.ClassifyRequest) -> models.ClassifyResponse:
        if req.mode == "super":
            d = ParityDiagram.distinguished(req.n_even, req.n_odd)
            return models.ClassifyResponse(
                mode="super", classes=[superalgebra_class(d)], witnesses=[])
        classes = hopf_classes(req.n_even, req.n_odd)
        witnesses = []
        for cls in classes:
            _, wits = hopf_class(ParityDiagram.parse(cls[0]))
            witnesses.extend(models.WitnessModel(**w.describe()) for w in wits)
        return models.ClassifyResponse(mode="hopf", classes=classes,
                                       witnesses=witnesses)

    @app.post("/api/classify/distinguish", response_model=models.DistinguishResponse)
    def distinguish(req: models.DistinguishRequest) -> models.DistinguishResponse:
        d1, d2 = _parse_diagram(req.first), _parse_diagram(req.second)
        result = hopf_distinguisher(d1, d2)
        return models.DistinguishResponse(
            verdict=str(result["verdict"]),
            reason=str(result.get("reason", "")),
            witnesses=[models.WitnessModel(**w)
                       for w in result.get("witnesses", [])])

    @app.post("/api/phi", response_model=models.ElementResponse)
    def phi(req: models.PhiRequest) -> models.ElementResponse:
        d = _parse_diagram(req.diagram)
        try:
            kind, i, r = req.generator.split(":")
            Y = _context(d, req.cap)
            element = loopmap.phi_generator(Y, kind, int(i), int(r))
        except (ValueError, loopmap.LoopConstraintError,
                MinimalisticConstraintError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return models.ElementResponse(diagram=d.text(), cap=req.cap,
                                      text=Y.render(element))

    @app.post("/api/delta", response_model=models.ElementResponse)
    def delta(req: models.DeltaRequest) -> models.ElementResponse:
        d = _parse_diagram(req.diagram)
        try:
            Y = _context(d, req.cap)
            element = Y.gen(req.generator)
            image = coproduct(Y, element)
        except (ValueError, MinimalisticConstraintError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return models.ElementResponse(diagram=d.text(), cap=req.cap,
                                      text=Y.render_tensor(image))

    return app
