"""Command-line entry point: compute, cross-check, and report.

Every subcommand derives parameters, builds the field, runs the requested
brute-force measurement next to its closed-form prediction, and writes a
deterministic report.json (no timings, no worker counts) into the output
directory. Exit codes: 0 all checks match, 1 usage error, 2 mismatch,
3 matches except for flagged tabulation errata.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .codes import (CODES, check_cyclicity, check_parity, code_dimension,
                    codeword_c1, codeword_c2, codeword_dump_lines,
                    h_polynomials, parity_check_mask, weight_distribution,
                    weight_distribution_formula)
from .distribution import VerificationError
from .expsum import (artin_schreier_points, gamma_sweep, gamma_sweep_formula,
                     moments, s_spectrum, s_spectrum_formula, t_spectrum,
                     t_spectrum_formula, t_sum)
from .field import (_gf2_polymod, build_field, derive_params, is_irreducible,
                    subfield_elements)
from .linearized import (bluher_counts, bluher_counts_formula, rank_of,
                         rank_profile, rank_profile_formula)
from .sequences import (build_family, check_inequivalence,
                        correlation_distribution,
                        correlation_distribution_formula, family_dump_lines)

__all__ = ["main", "CheckRecord", "VerificationReport", "DEFAULT_BUDGETS"]

MATCH = "match"
MISMATCH = "mismatch"
FLAGGED = "flagged-erratum"
SKIPPED = "skipped"

DEFAULT_BUDGETS = {
    "t_spectrum": 12,
    "s_spectrum": 10,
    "correlation": 8,
    "code_weights": 8,
    "rank_profile": 8,
    "bluher": 10,
    "artin_schreier": 8,
    "gamma_sweep": 6,
    "inequivalence": 6,
}

OUT_ENV = "KASAMILAB_OUT"


class UsageError(ValueError):
    """Bad flags or an out-of-budget direct request."""


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one named cross-check."""

    name: str
    status: str
    detail: str
    notes: tuple = ()

    def to_json_dict(self):
        return {"name": self.name, "status": self.status,
                "detail": self.detail, "notes": list(self.notes)}


@dataclass(frozen=True)
class VerificationReport:
    """Deterministic run summary; serializes identically across reruns."""

    command: str
    n: int
    k: int
    modulus: int
    case: str
    d: int
    d_prime: int
    records: tuple

    @property
    def exit_code(self):
        statuses = {r.status for r in self.records}
        if MISMATCH in statuses:
            return 2
        if FLAGGED in statuses:
            return 3
        return 0

    def to_json_dict(self):
        return {
            "command": self.command,
            "n": self.n,
            "k": self.k,
            "modulus": f"{self.modulus:#x}",
            "case": self.case,
            "d": self.d,
            "d_prime": self.d_prime,
            "records": [r.to_json_dict() for r in self.records],
            "exit_code": self.exit_code,
        }


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _resolve_outdir(arg):
    path = Path(arg or os.environ.get(OUT_ENV) or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _timed(label, fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    print(f"[time] {label}: {time.perf_counter() - start:.3f}s",
          file=sys.stderr)
    return result


def _compare(name, brute, formula):
    """Record equality of two distributions; formula-side notes mark errata."""
    delta = brute.diff(formula)
    notes = tuple(formula.notes)
    if delta:
        shown = "; ".join(f"value {v}: measured {a}, tabulated {b}"
                          for v, a, b in delta[:6])
        if len(delta) > 6:
            shown += f"; +{len(delta) - 6} more"
        return CheckRecord(name, MISMATCH, shown, notes)
    status = FLAGGED if notes else MATCH
    return CheckRecord(name, status,
                       f"{len(brute.entries)} values, total {brute.total}",
                       notes)


def _emit_comparison(outdir, stem, brute, formula, fmt):
    if fmt == "json":
        doc = {
            "brute": brute.to_json_dict(),
            "formula": formula.to_json_dict(),
            "diff": [{"v": v, "brute": a, "formula": b}
                     for v, a, b in brute.diff(formula)],
            "notes": list(formula.notes),
        }
        (outdir / f"{stem}.json").write_text(_dumps(doc))
    elif fmt == "csv":
        (outdir / f"{stem}.csv").write_text(brute.to_csv())
        (outdir / f"{stem}_formula.csv").write_text(formula.to_csv())
        delta = brute.diff(formula)
        if delta:
            lines = ["value,brute,formula"]
            lines += [f"{v},{a},{b}" for v, a, b in delta]
            (outdir / f"{stem}_diff.csv").write_text("\n".join(lines) + "\n")


def _print_dist(title, dist):
    print(f"== {title} ==")
    width = max((len(str(v)) for v, _ in dist.entries), default=1)
    for v, c in dist.entries:
        print(f"  {v:>{width}}  {c}")
    print(f"  total {dist.total}")
    for note in dist.notes:
        print(f"  note: {note}")


def _print_records(records):
    for rec in records:
        print(f"{rec.name}: {rec.status} ({rec.detail})")
        for note in rec.notes:
            print(f"  note: {note}")


def _finish(args, command, ctx, params, records, outdir):
    report = VerificationReport(
        command=command, n=params.n, k=params.k, modulus=ctx.modulus,
        case=params.case, d=params.d, d_prime=params.d_prime,
        records=tuple(records))
    (outdir / "report.json").write_text(_dumps(report.to_json_dict()))
    _print_records(records)
    return report.exit_code


def _budget(args, key):
    if args.budget_override:
        return None
    return DEFAULT_BUDGETS[key]


def _require_budget(args, key, what):
    cap = _budget(args, key)
    if cap is not None and args.n > cap:
        raise UsageError(
            f"{what} at n={args.n} exceeds the default budget (n <= {cap}); "
            f"pass --budget-override to run it anyway")


def _setup(args):
    params = derive_params(args.n, args.k)
    modulus = int(args.modulus, 0) if args.modulus else None
    ctx = build_field(args.n, modulus)
    return ctx, params


def cmd_spectrum(args):
    ctx, params = _setup(args)
    outdir = _resolve_outdir(args.out)
    records = []
    if args.only in ("t", "both"):
        _require_budget(args, "t_spectrum", "the T sweep")
        brute = _timed("t-spectrum sweep", t_spectrum, ctx, params,
                       workers=args.workers)
        formula = t_spectrum_formula(params)
        _emit_comparison(outdir, "t_spectrum", brute, formula, args.format)
        if args.format == "table":
            _print_dist("T spectrum (brute force)", brute)
            _print_dist("T spectrum (closed form)", formula)
        records.append(_compare("t-spectrum", brute, formula))
    if args.only in ("s", "both"):
        _require_budget(args, "s_spectrum", "the S sweep")
        brute = _timed("s-spectrum sweep", s_spectrum, ctx, params,
                       workers=args.workers)
        formula = s_spectrum_formula(params)
        _emit_comparison(outdir, "s_spectrum", brute, formula, args.format)
        if args.format == "table":
            _print_dist("S spectrum (brute force)", brute)
            _print_dist("S spectrum (closed form)", formula)
        records.append(_compare("s-spectrum", brute, formula))
    return _finish(args, "spectrum", ctx, params, records, outdir)


def cmd_code_weights(args):
    ctx, params = _setup(args)
    _require_budget(args, "code_weights", "codeword enumeration")
    outdir = _resolve_outdir(args.out)
    wanted = CODES if args.code == "both" else (args.code,)
    records = []
    for code in wanted:
        brute = _timed(f"{code} weight sweep", weight_distribution, ctx,
                       params, code, workers=args.workers)
        formula = weight_distribution_formula(params, code)
        _emit_comparison(outdir, f"{code}_weights", brute, formula,
                         args.format)
        if args.format == "table":
            _print_dist(f"{code} weight distribution (brute force)", brute)
            _print_dist(f"{code} weight distribution (closed form)", formula)
        records.append(_compare(f"code-weights-{code}", brute, formula))
        if args.dump_words:
            if params.n > 6:
                raise UsageError("codeword dumps are limited to n <= 6")
            lines = codeword_dump_lines(ctx, params, code)
            (outdir / f"{code}_words.txt").write_text("\n".join(lines) + "\n")
    return _finish(args, "code-weights", ctx, params, records, outdir)


def cmd_correlation(args):
    ctx, params = _setup(args)
    _require_budget(args, "correlation", "the correlation sweep")
    outdir = _resolve_outdir(args.out)
    family = _timed("family build", build_family, ctx, params)
    if args.dump_family:
        lines = family_dump_lines(family)
        (outdir / "family.txt").write_text("\n".join(lines) + "\n")
    brute = _timed("correlation sweep", correlation_distribution, family,
                   workers=args.workers)
    composed = correlation_distribution_formula(params)
    _emit_comparison(outdir, "correlation", brute, composed, args.format)
    if args.format == "table":
        _print_dist("correlation distribution (brute force)", brute)
        _print_dist("correlation distribution (composed)", composed)
    records = [_compare("correlation", brute, composed)]
    return _finish(args, "correlation", ctx, params, records, outdir)


def _within(args, key):
    cap = _budget(args, key)
    return cap is None or args.n <= cap


def _skip(name, records, why):
    records.append(CheckRecord(name, SKIPPED, why))
    print(f"[skip] {name}: {why}", file=sys.stderr)


def _guarded(name, records, fn):
    try:
        records.append(_timed(name, fn))
    except VerificationError as exc:
        records.append(CheckRecord(name, MISMATCH, str(exc)))


def cmd_verify(args):
    ctx, params = _setup(args)
    outdir = _resolve_outdir(args.out)
    q = ctx.q
    records = []

    records.append(CheckRecord(
        "parameters", MATCH,
        f"case={params.case}, d={params.d}, d'={params.d_prime}, "
        f"s={params.s}, modulus={ctx.modulus:#x}"))

    if _within(args, "bluher"):
        def check_bluher():
            bad = []
            for h in range(1, params.n):
                got = bluher_counts(ctx, h).as_tuple()
                want = bluher_counts_formula(params.n, h).as_tuple()
                if got != want:
                    bad.append(f"h={h}: counted {got}, predicted {want}")
            if bad:
                return CheckRecord("bluher-counts", MISMATCH, "; ".join(bad))
            return CheckRecord("bluher-counts", MATCH,
                               f"root-count quadruples match for "
                               f"h=1..{params.n - 1}")
        _guarded("bluher-counts", records, check_bluher)
    else:
        _skip("bluher-counts", records,
              f"n={params.n} exceeds budget {DEFAULT_BUDGETS['bluher']}")

    if _within(args, "rank_profile"):
        def check_rank():
            got = rank_profile(ctx, params)
            want = rank_profile_formula(params)
            trip = (got.n0, got.n2, got.n4)
            pred = (want.n0, want.n2, want.n4)
            if trip != pred:
                return CheckRecord("rank-profile", MISMATCH,
                                   f"counted {trip}, predicted {pred}")
            return CheckRecord("rank-profile", MATCH,
                               f"(n0, n2, n4) = {trip}")
        _guarded("rank-profile", records, check_rank)
    else:
        _skip("rank-profile", records,
              f"n={params.n} exceeds budget {DEFAULT_BUDGETS['rank_profile']}")

    if _within(args, "t_spectrum"):
        def check_moments():
            rep = moments(ctx, params, workers=args.workers)
            return CheckRecord("moments", MATCH,
                               f"m1={rep.m1}, m2={rep.m2}, m3={rep.m3}")
        _guarded("moments", records, check_moments)

        def check_t():
            return _compare("t-spectrum",
                            t_spectrum(ctx, params, workers=args.workers),
                            t_spectrum_formula(params))
        _guarded("t-spectrum", records, check_t)
    else:
        why = f"n={params.n} exceeds budget {DEFAULT_BUDGETS['t_spectrum']}"
        _skip("moments", records, why)
        _skip("t-spectrum", records, why)

    if _within(args, "s_spectrum"):
        def check_s():
            return _compare("s-spectrum",
                            s_spectrum(ctx, params, workers=args.workers),
                            s_spectrum_formula(params))
        _guarded("s-spectrum", records, check_s)
    else:
        _skip("s-spectrum", records,
              f"n={params.n} exceeds budget {DEFAULT_BUDGETS['s_spectrum']}")

    if _within(args, "gamma_sweep"):
        def check_gamma():
            pairs = 0
            for alpha in subfield_elements(ctx, params.m):
                for beta in range(q):
                    if alpha == 0 and beta == 0:
                        continue
                    _, rank = rank_of(ctx, params, alpha, beta)
                    got = gamma_sweep(ctx, params, alpha, beta)
                    want = gamma_sweep_formula(params, rank)
                    if got.diff(want):
                        return CheckRecord(
                            "gamma-sweep", MISMATCH,
                            f"pair ({alpha:#x}, {beta:#x}) deviates from the "
                            f"rank-{rank} law")
                    pairs += 1
            return CheckRecord("gamma-sweep", MATCH,
                               f"all {pairs} pairs follow the rank law")
        _guarded("gamma-sweep", records, check_gamma)
    else:
        _skip("gamma-sweep", records,
              f"n={params.n} exceeds budget {DEFAULT_BUDGETS['gamma_sweep']}")

    if params.d_prime != 2 * params.d:
        _skip("artin-schreier", records,
              "point-count identity applies to the d' = 2d case only")
    elif _within(args, "artin_schreier"):
        def check_as():
            scale = (1 << params.d) - 1
            pairs = 0
            for aprime in range(q):
                alpha = ctx.trace_rel(aprime, params.m, params.n)
                for beta in range(q):
                    if aprime == 0 and beta == 0:
                        continue
                    got = artin_schreier_points(ctx, params, aprime, beta)
                    want = (1 << params.n) + scale * t_sum(ctx, params,
                                                           alpha, beta)
                    if got != want:
                        return CheckRecord(
                            "artin-schreier", MISMATCH,
                            f"({aprime:#x}, {beta:#x}): {got} points, "
                            f"identity gives {want}")
                    pairs += 1
            return CheckRecord("artin-schreier", MATCH,
                               f"point counts match the sum identity on all "
                               f"{pairs} curves")
        _guarded("artin-schreier", records, check_as)
    else:
        _skip("artin-schreier", records,
              f"n={params.n} exceeds budget "
              f"{DEFAULT_BUDGETS['artin_schreier']}")

    def check_minpolys():
        h1, h2, h3 = h_polynomials(ctx, params)
        bad = []
        for label, poly, want_deg in (("h1", h1, params.n), ("h2", h2,
                                      params.n), ("h3", h3, params.m)):
            if poly.degree != want_deg:
                bad.append(f"{label} has degree {poly.degree}, "
                           f"expected {want_deg}")
            if not is_irreducible(poly.coeffs, poly.degree):
                bad.append(f"{label} is reducible")
            if _gf2_polymod((1 << ctx.order) | 1, poly.coeffs):
                bad.append(f"{label} does not divide x^{ctx.order} + 1")
        for code in CODES:
            mask = parity_check_mask(ctx, params, code)
            if mask.bit_length() - 1 != code_dimension(params, code):
                bad.append(f"{code} parity-check degree "
                           f"{mask.bit_length() - 1} != dimension "
                           f"{code_dimension(params, code)}")
        sub = subfield_elements(ctx, params.m)
        alpha = sub[1] if len(sub) > 1 else sub[0]
        if not check_parity(ctx, params, "c1",
                            codeword_c1(ctx, params, alpha, 1)):
            bad.append("a c1 word fails its parity-check product")
        if not check_parity(ctx, params, "c2",
                            codeword_c2(ctx, params, alpha, 1, 1)):
            bad.append("a c2 word fails its parity-check product")
        if bad:
            return CheckRecord("minimal-polynomials", MISMATCH, "; ".join(bad))
        return CheckRecord(
            "minimal-polynomials", MATCH,
            f"h1={h1.coeffs:#x}, h2={h2.coeffs:#x}, h3={h3.coeffs:#x}; "
            f"degrees ({params.n}, {params.n}, {params.m})")
    _guarded("minimal-polynomials", records, check_minpolys)

    if _within(args, "code_weights"):
        for code in CODES:
            def check_code(code=code):
                return _compare(f"code-weights-{code}",
                                weight_distribution(ctx, params, code,
                                                    workers=args.workers),
                                weight_distribution_formula(params, code))
            _guarded(f"code-weights-{code}", records, check_code)

        def check_cyclic():
            for code in CODES:
                if not check_cyclicity(ctx, params, code):
                    return CheckRecord("cyclicity", MISMATCH,
                                       f"{code} is not closed under cyclic "
                                       f"shift")
            how = "exhaustive" if params.n <= 6 else "sampled"
            return CheckRecord("cyclicity", MATCH,
                               f"shift closure holds for c1 and c2 ({how})")
        _guarded("cyclicity", records, check_cyclic)
    else:
        why = (f"n={params.n} exceeds budget "
               f"{DEFAULT_BUDGETS['code_weights']}")
        _skip("code-weights-c1", records, why)
        _skip("code-weights-c2", records, why)
        _skip("cyclicity", records, why)

    if _within(args, "correlation"):
        family = _timed("family build", build_family, ctx, params)

        def check_family():
            if params.n <= DEFAULT_BUDGETS["inequivalence"]:
                if not check_inequivalence(family):
                    return CheckRecord(
                        "family", MISMATCH,
                        "members are not full-period rotation-distinct")
                return CheckRecord("family", MATCH,
                                   f"size={family.size}; members full-period "
                                   f"and pairwise rotation-distinct")
            return CheckRecord("family", MATCH,
                               f"size={family.size} (rotation-distinctness "
                               f"check needs n <= 6)")
        _guarded("family", records, check_family)

        def check_corr():
            return _compare("correlation",
                            correlation_distribution(family,
                                                     workers=args.workers),
                            correlation_distribution_formula(params))
        _guarded("correlation", records, check_corr)
    else:
        why = f"n={params.n} exceeds budget {DEFAULT_BUDGETS['correlation']}"
        _skip("family", records, why)
        _skip("correlation", records, why)

    return _finish(args, "verify", ctx, params, records, outdir)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kasamilab",
        description="Cross-check brute-force sweeps against closed-form "
                    "tables for binary sequence families, their cyclic "
                    "codes, and the underlying exponential sums.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True,
                        help="field extension degree (even, 4..24)")
    common.add_argument("--k", type=int, required=True,
                        help="quadratic-term exponent parameter, k != n/2")
    common.add_argument("--modulus", default=None,
                        help="primitive modulus mask, e.g. 0x13 "
                             "(default: lexicographically smallest)")
    common.add_argument("--format", choices=("json", "csv", "table"),
                        default="json", help="artifact format")
    common.add_argument("--out", default=None,
                        help=f"output directory (default: ${OUT_ENV} or cwd)")
    common.add_argument("--workers", type=int, default=1,
                        help="thread count for sweeps")
    common.add_argument("--budget-override", action="store_true",
                        help="run sweeps beyond the default size budgets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common],
                       help="T/S exponential-sum distributions")
    p.add_argument("--only", choices=("t", "s", "both"), default="both")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("code-weights", parents=[common],
                       help="cyclic-code weight distributions")
    p.add_argument("--code", choices=("c1", "c2", "both"), default="both")
    p.add_argument("--dump-words", action="store_true",
                   help="write codewords as hex rows (n <= 6)")
    p.set_defaults(func=cmd_code_weights)

    p = sub.add_parser("correlation", parents=[common],
                       help="sequence-family correlation distribution")
    p.add_argument("--dump-family", action="store_true",
                   help="write the family as label,hex rows")
    p.set_defaults(func=cmd_correlation)

    p = sub.add_parser("verify", parents=[common],
                       help="full cross-check battery")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
