"""FastAPI application wrapping the exact-computation core."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..at_pipeline import I1, J1, J2, at_coeff
from ..errors import MathError, RankDeficientError, UsageError
from ..products import shuffle, stuffle
from ..reduction import build_reduction_table
from ..scalars import Scalar, render_scalar, scalar_to_terms
from ..verify import run_all
from ..words import parse_composition, parse_word, words_up_to
from . import models
from .state import ServiceState


def _auto_style(s: Scalar) -> str:
    return "pi_power" if all(k % 2 == 0 for k, _ in s.items()) else "two_pi_i"


def _record(word_text: str, family: str, value: Scalar, style) -> models.OutputRecord:
    chosen = style or _auto_style(value)
    return models.OutputRecord(
        word=word_text,
        family=family,
        terms=[models.ScalarTerm(**t) for t in scalar_to_terms(value)],
        rendered=render_scalar(value, chosen),
    )


def create_app(state: ServiceState | None = None) -> FastAPI:
    state = state or ServiceState()
    app = FastAPI(title="mzvassoc", version=__version__,
                  description="Exact multiple zeta values and Drinfeld associator coefficients")

    @app.exception_handler(UsageError)
    async def usage_handler(_req: Request, exc: UsageError):
        return JSONResponse(status_code=400,
                            content=models.ErrorBody(detail=str(exc), kind="usage").model_dump())

    @app.exception_handler(MathError)
    async def math_handler(_req: Request, exc: MathError):
        unreduced = [str(c) for c in exc.unreduced] if isinstance(exc, RankDeficientError) else []
        return JSONResponse(status_code=409,
                            content=models.ErrorBody(detail=str(exc), kind="math",
                                                     unreduced=unreduced).model_dump())

    @app.get("/health", response_model=models.HealthResponse)
    def health():
        return models.HealthResponse(status="ok", max_weight=state.max_weight)

    @app.post("/mzv/reduce", response_model=models.ReduceResponse)
    def mzv_reduce(req: models.ReduceRequest):
        comp = parse_composition(req.composition)
        expr = state.families().table.reduce(comp)
        terms = [models.ExprTerm(rational=str(c), atoms=list(m.atoms))
                 for m, c in expr.items()]
        return models.ReduceResponse(composition=list(comp.parts), weight=comp.weight,
                                     terms=terms, rendered=expr.render())

    @app.post("/mzv/shuffle", response_model=models.ShuffleResponse)
    def mzv_shuffle(req: models.ShuffleRequest):
        poly = shuffle(parse_word(req.u), parse_word(req.v))
        terms = [models.WordTerm(rational=str(c), word=str(w)) for w, c in poly.items()]
        return models.ShuffleResponse(terms=terms, rendered=poly.render())

    @app.post("/mzv/stuffle", response_model=models.StuffleResponse)
    def mzv_stuffle(req: models.StuffleRequest):
        poly = stuffle(parse_composition(req.u), parse_composition(req.v))
        terms = [models.CompositionTerm(rational=str(q), composition=list(c.parts))
                 for c, q in poly.items()]
        return models.StuffleResponse(terms=terms, rendered=poly.render())

    @app.post("/mzv/check-table", response_model=models.CheckTableResponse)
    def mzv_check_table(req: models.CheckTableRequest):
        w = req.max_weight if req.max_weight is not None else state.max_weight
        table = build_reduction_table(w, verify=False)
        deviation = table.verify_numeric(req.tolerance)
        return models.CheckTableResponse(max_weight=w, entries=len(table.entries),
                                         max_abs_deviation=deviation,
                                         tolerance=req.tolerance,
                                         ok=deviation <= req.tolerance)

    def _coefficient(which: str, word):
        fam = state.families()
        if which == "at":
            sols = {}
            if word.y_degree == 2 and word.length % 2 == 1:
                n = (word.length - 1) // 2
                sols[n] = state.at_solution(n)
            return at_coeff(word, sols, fam)
        return fam.coefficient(which, word)

    @app.post("/assoc/coeff", response_model=models.OutputRecord)
    def assoc_coeff(req: models.CoeffRequest):
        word = parse_word(req.word)
        value = _coefficient(req.which, word)
        return _record(str(word), req.which, value, req.style)

    @app.post("/assoc/table", response_model=models.TableResponse)
    def assoc_table(req: models.TableRequest):
        fam = state.families()
        if req.max_len > fam.table.max_weight:
            raise UsageError(
                f"max_len {req.max_len} exceeds the table depth {fam.table.max_weight}")
        records = []
        for w in words_up_to(req.max_len, 2, min_len=2):
            d = w.y_degree
            if d == 0 or d == w.length:
                continue
            value = _coefficient(req.which, w)
            records.append(_record(str(w), req.which, value, req.style))
        return models.TableResponse(which=req.which, max_len=req.max_len, records=records)

    @app.post("/assoc/verify-theorems", response_model=models.VerifyResponse)
    def assoc_verify():
        results = run_all(state.families(max(8, state.max_weight)))
        checks = [models.VerifyCheck(name=r.name, passed=r.passed, detail=r.detail)
                  for r in results]
        return models.VerifyResponse(passed=all(r.passed for r in results), checks=checks)

    @app.post("/at/solve", response_model=models.AtSolveResponse)
    def at_solve(req: models.AtSolveRequest):
        sol = state.at_solution(req.n, req.extended)
        cab = [models.CabEntry(alpha=a, beta=b,
                               terms=[models.ScalarTerm(**t) for t in scalar_to_terms(s)],
                               rendered=render_scalar(s))
               for (a, b), s in sorted(sol.cab.items())]
        return models.AtSolveResponse(n=req.n,
                                      c2n_terms=[models.ScalarTerm(**t)
                                                 for t in scalar_to_terms(sol.c2n)],
                                      c2n_rendered=render_scalar(sol.c2n),
                                      cab=cab)

    @app.post("/at/integrals", response_model=models.AtIntegralsResponse)
    def at_integrals(req: models.AtIntegralsRequest):
        if not 1 <= req.n <= 5:
            raise UsageError(f"n={req.n} out of range 1..5")
        values = []
        for j in range(1, req.n + 1):
            values.append(models.NamedValue(name=f"I1({j})", value=str(I1(j))))
        for j in range(1, req.n + 1):
            values.append(models.NamedValue(name=f"J1({j})", value=str(J1(j))))
        for l in range(1, req.n + 1):
            for m in range(1, req.n + 1):
                values.append(models.NamedValue(name=f"J2({l},{m})", value=str(J2(l, m))))
        return models.AtIntegralsResponse(n=req.n, values=values)

    return app


app = create_app()
