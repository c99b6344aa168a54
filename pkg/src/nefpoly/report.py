"""Assembly of the machine-readable verification report.

One block per family, each the outcome of up to five check suites
(two-ortho, full-ortho, bruno, recover, genfun) plus the printed-table
comparison for the cubic rows.  The report body is deterministic (byte
identical across runs), with the timestamp isolated in a header that golden
comparisons exclude.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, replace

from . import __version__
from .families import Family
from .genfun import (
    bilinear_identity,
    partial_sum_density,
    quadrature_crosscheck,
    sheffer_check,
)
from .nef_model import VarianceSpec, moment_table
from .ortho import (
    check_full_orthogonality,
    check_two_orthogonality,
    fit_recurrence,
    gram,
    recover_variance_from_gram,
)
from .polyseq import (
    PolySequence,
    compare_sequences,
    faa_di_bruno_sequence,
    recurrence_sequence,
)
from .ratpoly import RationalLike, rat
from .table1 import PRINTED_ROWS, compare_with_printed

ALL_CHECKS = ("two-ortho", "full-ortho", "bruno", "recover", "genfun")

INJECTABLE_TYPOS = ("table1-p2",)


@dataclass(frozen=True)
class VerifyOptions:
    """Tunable knobs of a verification run; defaults are the accepted ones."""

    exact_order: int = 12
    bruno_order: int = 10
    series_order: int = 30
    bilinear_order: int = 20
    abs_tol: float | None = None  # None: per-check defaults below
    rel_tol: float | None = None
    checks: tuple[str, ...] = ALL_CHECKS
    inject_typo: str | None = None
    m0: RationalLike | None = None

    # per-check baked-in absolute tolerances
    series_abs_tol: float = 1e-8
    bilinear_abs_tol: float = 1e-6
    quad_abs_tol: float = 1e-6

    def tol_series(self) -> float:
        return self.abs_tol if self.abs_tol is not None else self.series_abs_tol

    def tol_bilinear(self) -> float:
        return self.abs_tol if self.abs_tol is not None else self.bilinear_abs_tol

    def tol_quad(self) -> float:
        return self.abs_tol if self.abs_tol is not None else self.quad_abs_tol

    def tol_rel(self) -> float:
        return self.rel_tol if self.rel_tol is not None else 1e-6


def _default_anchor(family: Family) -> RationalLike:
    lo, hi = family.mean_domain
    return 0 if lo is None and hi is None else 1


def _probe_points(family: Family) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """(x values, mean offsets) for the series probes of one family."""
    if family.mean_domain == (None, None):
        xs = (-1.0, 0.0, 1.0)
    else:
        xs = (0.5, 1.0, 2.0)
    return xs, (0.05, 0.1)


def _genfun_block(
    family: Family,
    spec: VarianceSpec,
    opts: VerifyOptions,
) -> tuple[dict, bool]:
    forms = family.rebase(spec.m0)
    seq = recurrence_sequence(spec, opts.series_order)
    ok = True

    xs, dms = _probe_points(family)
    partial = []
    for dm in dms:
        for x in xs:
            probe = partial_sum_density(
                seq, forms, x=x, m=forms.m0 + dm,
                order=opts.series_order, abs_tol=opts.tol_series(),
            )
            partial.append(probe.to_json())
            ok = ok and probe.converged

    sheffer = []
    for z in (0.05, 0.1):
        for x in xs:
            probe = sheffer_check(
                seq, forms, t=rat("1/2"), z=z, x=x,
                order=opts.series_order, abs_tol=opts.tol_series(),
            )
            sheffer.append(probe.to_json())
            ok = ok and probe.converged

    g_bi = gram(
        recurrence_sequence(spec, opts.bilinear_order),
        moment_table(spec, 2 * opts.bilinear_order),
    )
    bilinear = []
    for dm in (-0.05, 0.0, 0.05):
        for dmp in (-0.05, 0.0, 0.05):
            probe = bilinear_identity(
                forms, g_bi, m=forms.m0 + dm, m_prime=forms.m0 + dmp,
                order=opts.bilinear_order, abs_tol=opts.tol_bilinear(),
            )
            bilinear.append(probe.to_json())
            ok = ok and probe.converged

    quadrature = None
    if forms.has_base_density and forms.support == (0.0, float("inf")):
        # quadrature scope is pinned at n + q <= 8, independent of --n
        seq_q = recurrence_sequence(spec, 8)
        g_q = gram(seq_q, moment_table(spec, 16))
        quadrature = []
        for n in range(0, 9):
            for q in range(n, 9 - n):
                res = quadrature_crosscheck(forms, seq_q, n, q)
                exact = g_q.entry(n, q)
                diff = abs(res.value - float(exact))
                entry_ok = res.converged and diff <= opts.tol_quad()
                quadrature.append(
                    {
                        "n": n,
                        "q": q,
                        "value": res.value,
                        "error_estimate": res.error_estimate,
                        "exact": str(exact),
                        "abs_diff": diff,
                        "pass": entry_ok,
                    }
                )
                ok = ok and entry_ok

    block = {
        "partial_sum": partial,
        "sheffer": sheffer,
        "bilinear": bilinear,
        "quadrature": quadrature,
        "pass": ok,
    }
    return block, ok


def _ortho_report_json(rep) -> dict:
    return {
        "verdict": rep.verdict,
        "checked_order": rep.checked_order,
        "violations": [
            {"n": v.n, "q": v.q, "value": str(v.value)} for v in rep.violations
        ],
        "recovered": (
            None
            if rep.recovered is None
            else {
                "a0": str(rep.recovered.a0),
                "a2": str(rep.recovered.a2),
                "a3": str(rep.recovered.a3),
            }
        ),
    }


def verify_family(family: Family, opts: VerifyOptions) -> tuple[dict, bool]:
    """Run the selected check suites on one family; returns (block, passed)."""
    m0 = rat(opts.m0) if opts.m0 is not None else rat(_default_anchor(family))
    spec = family.variance_at(m0)
    order = max(opts.exact_order, 4)
    seq = recurrence_sequence(spec, order)

    injected = False
    seq_ortho = seq
    if (
        opts.inject_typo == "table1-p2"
        and family.name in PRINTED_ROWS
        and m0 == 1
    ):
        polys = list(seq.polys)
        polys[2] = PRINTED_ROWS[family.name].p2
        seq_ortho = PolySequence(
            spec=spec, polys=tuple(polys), provenance="recurrence+injected-typo"
        )
        injected = True

    moments = moment_table(spec, 2 * order)
    g_ortho = gram(seq_ortho, moments)

    checks: dict[str, dict | None] = {name: None for name in ALL_CHECKS}
    passed = True

    if "two-ortho" in opts.checks:
        rep = check_two_orthogonality(g_ortho)
        ok = rep.verdict == "two_orthogonal"
        checks["two-ortho"] = {**_ortho_report_json(rep), "pass": ok}
        passed = passed and ok

    if "full-ortho" in opts.checks:
        rep = check_full_orthogonality(g_ortho)
        expect_diagonal = family.variance_class == "quadratic"
        ok = (rep.verdict == "fully_orthogonal") == expect_diagonal
        checks["full-ortho"] = {
            "verdict": rep.verdict,
            "checked_order": rep.checked_order,
            "violation_count": len(rep.violations),
            "expected_diagonal": expect_diagonal,
            "pass": ok,
        }
        passed = passed and ok

    if "bruno" in opts.checks:
        rec = recurrence_sequence(spec, opts.bruno_order)
        fdb = faa_di_bruno_sequence(spec, opts.bruno_order)
        diff = compare_sequences(rec, fdb)
        ok = diff.identical
        checks["bruno"] = {
            "order": opts.bruno_order,
            "diff_count": len(diff.mismatches),
            "diff_indices": [n for n, _, _ in diff.mismatches],
            "pass": ok,
        }
        passed = passed and ok

    if "recover" in opts.checks:
        fit = fit_recurrence(seq_ortho)
        fit_ok = fit.exact and fit.a == spec.a and fit.m0 == spec.m0
        rec = recover_variance_from_gram(g_ortho)
        rec_ok = (
            rec.a0 == spec.a0 and rec.a2 == spec.a2 and rec.a3 == spec.a3
        )
        ok = fit_ok and rec_ok
        checks["recover"] = {
            "fitted": {
                "m0": str(fit.m0),
                "a": [str(c) for c in fit.a],
                "residual_count": len(fit.residuals),
            },
            "from_gram": {
                "a0": str(rec.a0),
                "a2": str(rec.a2),
                "a3": str(rec.a3),
            },
            "pass": ok,
        }
        passed = passed and ok

    if "genfun" in opts.checks and family.closed_forms is not None:
        block, ok = _genfun_block(family, spec, opts)
        checks["genfun"] = block
        passed = passed and ok

    discrepancies: list[dict] = []
    if family.name in PRINTED_ROWS and m0 == 1:
        cmp = compare_with_printed(family)
        passed = passed and cmp.consistent
        if not cmp.p2_matches:
            discrepancies.append(
                {
                    "kind": "p2-misprint",
                    "printed": cmp.p2_printed.to_str(),
                    "generated": cmp.p2_generated.to_str(),
                    "defect_inner_product": str(cmp.p2_defect_inner_product),
                }
            )
        if not cmp.variance_text_matches:
            discrepancies.append(
                {
                    "kind": "variance-text",
                    "printed_at_unit": [str(c) for c in PRINTED_ROWS[family.name].variance_text],
                    "recurrence_row": [str(c) for c in spec.a],
                }
            )
        for note in cmp.notes:
            discrepancies.append({"kind": "note", "text": note})

    block = {
        "family": family.name,
        "params": {k: str(v) for k, v in family.params.items()},
        "m0": str(m0),
        "a": [str(c) for c in spec.a],
        "variance_class": family.variance_class,
        "checked_order": order,
        "injected_typo": opts.inject_typo if injected else None,
        "checks": checks,
        "table1_discrepancies": discrepancies,
        "pass": passed,
    }
    return block, passed


def build_report(families: list[Family], opts: VerifyOptions) -> tuple[dict, bool]:
    """Full verification report over the given families, in catalog order."""
    blocks = []
    overall = True
    for fam in families:
        block, ok = verify_family(fam, opts)
        blocks.append(block)
        overall = overall and ok
    report = {
        "header": {
            "tool": "nefpoly",
            "version": __version__,
            "generated": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
        "body": {
            "settings": {
                "exact_order": opts.exact_order,
                "bruno_order": opts.bruno_order,
                "series_order": opts.series_order,
                "bilinear_order": opts.bilinear_order,
                "abs_tol": opts.abs_tol,
                "rel_tol": opts.rel_tol,
                "checks": list(opts.checks),
                "inject_typo": opts.inject_typo,
                "m0": None if opts.m0 is None else str(rat(opts.m0)),
            },
            "families": blocks,
            "overall_pass": overall,
        },
    }
    return report, overall


def options_with(base: VerifyOptions | None = None, **kw) -> VerifyOptions:
    """Small helper for building option variants (used by the CLI)."""
    return replace(base or VerifyOptions(), **kw)
