"""FastAPI service exposing the symmetric-prime library.

One ``Workspace`` per process owns the sieve tables and grows them on
demand, so repeated queries amortize builds.  Error mapping:
invalid-argument -> 400, out-of-range (beyond the configured table
ceilings) -> 416, resource failures -> 507.  Error bodies always carry
``{"error": <kind>, "detail": <message>}`` so clients can translate to
exit codes without parsing prose.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, diagnostics, gcdsets, graph as graphmod, symmetry
from ..errors import InvalidArgumentError, OutOfRangeError, ResourceError
from ..symmetry import Convention
from ..workspace import Workspace
from . import models as m

LEAST_OUTSIDE_CAVEAT = (
    "window-relative observation: components can merge as the limit grows, "
    "and boundary vertices (2p > limit) are excluded"
)


def _convention(include_two: bool) -> Convention:
    return Convention(include_two=include_two)


def _certificate(cert) -> m.CertificateModel | None:
    if cert is None:
        return None
    return m.CertificateModel(p=cert.p, d=cert.d, q=cert.q, direction=cert.direction)


def _admissibility(report) -> m.AdmissibilityResponse:
    return m.AdmissibilityResponse(
        admissible=report.admissible,
        witnesses=[
            m.PrimeWitnessModel(
                prime=w.prime, avoiding_residue=w.avoiding_residue, covered=w.covered
            )
            for w in report.witnesses
        ],
        skipped_note=report.skipped_note,
    )


def create_app(workspace: Workspace | None = None) -> FastAPI:
    app = FastAPI(
        title="symprimes",
        version=__version__,
        description="Symmetric prime pairs: counts, survey tables, pair graphs, "
        "gcd-difference sets, and proof diagnostics.",
    )
    ws = workspace if workspace is not None else Workspace()
    app.state.workspace = ws

    @app.exception_handler(InvalidArgumentError)
    async def _invalid(request: Request, exc: InvalidArgumentError):
        return JSONResponse(
            status_code=400, content={"error": "invalid-argument", "detail": str(exc)}
        )

    @app.exception_handler(OutOfRangeError)
    async def _out_of_range(request: Request, exc: OutOfRangeError):
        return JSONResponse(
            status_code=416,
            content={
                "error": "out-of-range",
                "detail": str(exc),
                "required_bound": exc.required_bound,
            },
        )

    @app.exception_handler(ResourceError)
    async def _resource(request: Request, exc: ResourceError):
        return JSONResponse(
            status_code=507,
            content={
                "error": "resource",
                "detail": str(exc),
                "requested_bytes": exc.requested_bytes,
            },
        )

    # -- meta ---------------------------------------------------------

    @app.get("/health", response_model=m.HealthResponse)
    def health():
        return m.HealthResponse(
            status="ok",
            version=__version__,
            primality_bound=ws.primality_bound,
            factor_bound=ws.factor_bound,
        )

    @app.get("/eta", response_model=m.EtaResponse)
    def eta():
        return m.EtaResponse(eta=symmetry.eta())

    # -- symmetry -------------------------------------------------------

    @app.post("/symmetry/count", response_model=m.CountResponse)
    def count(req: m.CountRequest):
        tables = ws.for_count(req.x)
        value = symmetry.count_symmetric(
            tables,
            req.x,
            _convention(req.include_two),
            partner_cap=req.partner_cap,
            threads=req.threads,
        )
        return m.CountResponse(x=req.x, include_two=req.include_two, count=value)

    @app.post("/symmetry/tabulate", response_model=m.TabulateResponse)
    def tabulate(req: m.TabulateRequest):
        tables = ws.for_tabulate(req.max_n)
        rows = symmetry.tabulate(
            tables, req.max_n, _convention(req.include_two), threads=req.threads
        )
        return m.TabulateResponse(
            include_two=req.include_two,
            rows=[
                m.SurveyRowModel(n=r.n, p_n=r.p_n, s=r.s, ratio=r.ratio, model=r.model)
                for r in rows
            ],
        )

    @app.post("/symmetry/pair", response_model=m.PairResponse)
    def pair(req: m.PairRequest):
        tables = ws.for_pair(req.p, req.q)
        value = symmetry.is_symmetric_pair(
            tables, req.p, req.q, _convention(req.include_two)
        )
        return m.PairResponse(
            p=req.p, q=req.q, include_two=req.include_two, symmetric=value
        )

    @app.post("/symmetry/partners", response_model=m.PartnersResponse)
    def partners(req: m.PartnersRequest):
        tables = ws.for_partners(req.p)
        certs = symmetry.partners(tables, req.p, _convention(req.include_two))
        return m.PartnersResponse(
            p=req.p,
            include_two=req.include_two,
            certificates=[_certificate(c) for c in certs],
        )

    @app.post("/symmetry/certificate", response_model=m.SymmetricResponse)
    def certificate(req: m.PartnersRequest):
        tables = ws.for_partners(req.p)
        cert = symmetry.is_symmetric(tables, req.p, _convention(req.include_two))
        return m.SymmetricResponse(
            p=req.p,
            include_two=req.include_two,
            symmetric=cert is not None,
            certificate=_certificate(cert),
        )

    @app.post("/symmetry/boundary-report", response_model=m.BoundaryReportResponse)
    def boundary_report(req: m.BoundaryReportRequest):
        tables = ws.for_tabulate(req.n)
        report = symmetry.boundary_dependence(
            tables, req.n, _convention(req.include_two)
        )
        return m.BoundaryReportResponse(
            n=report.n,
            p_n=report.p_n,
            include_two=req.include_two,
            count_unrestricted=report.count_unrestricted,
            count_restricted=report.count_restricted,
            primes_only_certified_above=report.primes_only_certified_above,
        )

    @app.post("/symmetry/eisenstein", response_model=m.EisensteinResponse)
    def eisenstein(req: m.EisensteinRequest):
        return m.EisensteinResponse(
            q=req.q, p=req.p, count=symmetry.eisenstein_count(req.q, req.p)
        )

    @app.post("/symmetry/legendre", response_model=m.LegendreResponse)
    def legendre(req: m.LegendreRequest):
        return m.LegendreResponse(
            a=req.a, p=req.p, symbol=symmetry.legendre(req.a, req.p)
        )

    # -- graph ----------------------------------------------------------

    def _graph(limit: int, include_two: bool):
        tables = ws.for_graph(limit)
        return graphmod.build_graph(tables, limit, _convention(include_two))

    @app.post("/graph/components", response_model=m.ComponentsResponse)
    def components(req: m.GraphRequest):
        g = _graph(req.limit, req.include_two)
        summaries, _ = graphmod.components(g)
        return m.ComponentsResponse(
            limit=g.limit,
            include_two=req.include_two,
            vertex_count=len(g.vertices),
            edge_count=g.edge_count(),
            components=[
                m.ComponentModel(
                    representative=s.representative,
                    size=s.size,
                    min=s.min,
                    max=s.max,
                    is_boundary_touching=s.is_boundary_touching,
                )
                for s in summaries
            ],
            least_prime_outside_component_of_3=graphmod.least_prime_outside_component_of_3(g),
            caveat=LEAST_OUTSIDE_CAVEAT,
        )

    @app.post("/graph/edges", response_model=m.EdgesResponse)
    def edges(req: m.GraphRequest):
        g = _graph(req.limit, req.include_two)
        return m.EdgesResponse(
            limit=g.limit, include_two=req.include_two, edges=list(g.edges())
        )

    @app.post("/graph/cliques", response_model=m.CliquesResponse)
    def cliques(req: m.CliquesRequest):
        g = _graph(req.limit, req.include_two)
        found = graphmod.find_cliques(g, req.m, maximal_only=req.maximal_only)
        return m.CliquesResponse(
            m=req.m,
            limit=req.limit,
            include_two=req.include_two,
            cliques=[list(c.members) for c in found],
        )

    @app.post("/graph/m-symmetric-count", response_model=m.MSymmetricResponse)
    def m_symmetric(req: m.MSymmetricRequest):
        g = _graph(max(2 * req.x, 4), req.include_two)
        value = graphmod.m_symmetric_count(g, req.m, req.x)
        return m.MSymmetricResponse(
            m=req.m, x=req.x, include_two=req.include_two, count=value
        )

    # -- gcd-difference sets ---------------------------------------------

    @app.post("/sets/search", response_model=m.SetSearchResponse)
    def set_search(req: m.SetSearchRequest):
        found = gcdsets.search_gcd_diff_set(req.k, req.max_element)
        return m.SetSearchResponse(
            k=req.k,
            max_element=req.max_element,
            elements=list(found.elements) if found else None,
        )

    @app.post("/sets/search-prime", response_model=m.PrimeSetSearchResponse)
    def prime_set_search(req: m.PrimeSetSearchRequest):
        bound = req.prime_bound if req.prime_bound is not None else 1 << 20
        tables = ws.tables(bound, bound)
        found = gcdsets.search_prime_gcd_diff_set(
            tables, req.k, min_element=req.min_element, prime_bound=bound
        )
        return m.PrimeSetSearchResponse(
            k=req.k,
            min_element=req.min_element,
            elements=list(found.elements) if found else None,
        )

    @app.post("/sets/verify", response_model=m.SetVerifyResponse)
    def set_verify(req: m.SetVerifyRequest):
        return m.SetVerifyResponse(
            elements=req.elements, valid=gcdsets.verify_gcd_diff_set(req.elements)
        )

    @app.post("/sets/admissible", response_model=m.AdmissibilityResponse)
    def admissible(req: m.AdmissibilityRequest):
        report = gcdsets.is_admissible(
            [gcdsets.LinearForm(g=f.g, h=f.h) for f in req.forms]
        )
        return _admissibility(report)

    @app.post("/sets/maynard-tao", response_model=m.MaynardTaoResponse)
    def maynard_tao(req: m.MaynardTaoRequest):
        report = gcdsets.maynard_tao_hypothesis_check(
            [gcdsets.LinearForm(g=f.g, h=f.h) for f in req.forms]
        )
        return m.MaynardTaoResponse(
            all_positive=report.all_positive,
            nonpositive_indices=list(report.nonpositive_indices),
            determinants_nonzero=report.determinants_nonzero,
            vanishing_pairs=list(report.vanishing_pairs),
            admissibility=_admissibility(report.admissibility)
            if report.admissibility
            else None,
            passed=report.passed,
        )

    @app.post("/sets/bftb", response_model=m.BftbResponse)
    def bftb(req: m.BftbRequest):
        report = gcdsets.bftb_input_check(req.b, req.g)
        return m.BftbResponse(
            distinct=report.distinct,
            duplicate_values=list(report.duplicate_values),
            admissibility=_admissibility(report.admissibility),
            coprime=report.coprime,
            common_factors=list(report.common_factors),
            passed=report.passed,
        )

    @app.post("/sets/coprimality", response_model=m.CoprimalityResponse)
    def coprimality(req: m.CoprimalityRequest):
        return m.CoprimalityResponse(
            b=req.b, coprime=gcdsets.coprimality_lemma_check(req.b)
        )

    # -- diagnostics -------------------------------------------------------

    @app.post("/diagnostics/profile", response_model=m.ProfileResponse)
    def profile(req: m.ProfileRequest):
        tables = ws.for_diagnostics(req.x)
        prof = diagnostics.proof_profile(tables, req.x)
        exceptions = (
            diagnostics.smooth_exceptions(tables, req.x)
            if req.include_smooth_exceptions
            else None
        )
        return m.ProfileResponse(
            x=prof.x,
            L=prof.L,
            E=prof.E,
            smooth_threshold=prof.smooth_threshold,
            s1_count=prof.s1_count,
            s2_count=prof.s2_count,
            prime_count=prof.prime_count,
            omega_histogram=prof.omega_histogram,
            smooth_exceptions=exceptions,
        )

    @app.post("/diagnostics/decompose", response_model=m.DecomposeResponse)
    def decompose(req: m.DecomposeRequest):
        tables = ws.for_diagnostics(req.p)
        a, r = diagnostics.largest_prime_factor_decomposition(tables, req.p)
        return m.DecomposeResponse(p=req.p, a=a, r=r)

    return app


app = create_app()
