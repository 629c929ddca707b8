"""Command-line interface.

Output encodings are fixed for golden-file stability: exact rationals as
"p/q" in lowest terms, big integers as decimal strings, reals as decimal
text with 17 significant digits.  JSON payloads are single documents;
CSV always carries a header row.  No output is colorized, so NO_COLOR
needs no special handling.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import asymptotics, enumeration, newick, ranking, sampling
from .enumeration import Model
from .trees import TreeShape

__all__ = ["main", "entry"]

_FIGURE_MODELS = (Model.UNIFORM_UNORDERED, Model.UNIFORM_LABELED, Model.YULE_HARDING)


def _real(x: float) -> str:
    return format(x, ".17g")


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _model(name: str) -> Model:
    return Model.from_name(name)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise ValueError(f"bad --n-range {text!r}; expected a:b") from None
    if lo > hi:
        raise ValueError(f"bad --n-range {text!r}; expected a <= b")
    return lo, hi


def _print_csv(header: list[str], rows: list[list[str]], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# ---------------------------------------------------------------- commands


def _cmd_rank(args) -> int:
    text = sys.stdin.read() if args.newick == "-" else args.newick
    print(ranking.rank(newick.parse_newick(text)))
    return 0


def _cmd_unrank(args) -> int:
    k = int(args.k)
    print(newick.to_newick(ranking.unrank(k)))
    return 0


def _cmd_seq(args) -> int:
    h = args.max
    if h < 0:
        raise ValueError("--max must be >= 0")
    if args.which == "c":
        seqs = ranking.extremal_seqs(h)
        _print_csv(["h", "c_h"], [[str(i), str(v)] for i, v in enumerate(seqs.c)], sys.stdout)
    elif args.which == "d":
        seqs = ranking.extremal_seqs(h)
        _print_csv(["h", "d_h"], [[str(i + 2), str(v)] for i, v in enumerate(seqs.d)], sys.stdout)
    else:
        rows = [
            [str(i), str(ranking.count_by_height(i, "at_most")), str(ranking.count_by_height(i, "exactly"))]
            for i in range(h + 1)
        ]
        _print_csv(["h", "at_most", "exactly"], rows, sys.stdout)
    return 0


def _shape_rows(n: int) -> list[tuple[TreeShape, int]]:
    shapes = enumeration.enumerate_shapes(n, cap=enumeration.MAX_ENUMERATION_LEAVES)
    return [(t, ranking.rank(t)) for t in shapes]


def _cmd_enumerate(args) -> int:
    rows = _shape_rows(args.leaves)
    if args.format == "json":
        payload = {
            "leaves": args.leaves,
            "shapes": [
                {"rank": str(r), "height": t.height, "newick": newick.to_newick(t)}
                for t, r in rows
            ],
        }
        print(json.dumps(payload))
    else:
        _print_csv(
            ["rank", "height", "newick"],
            [[str(r), str(t.height), newick.to_newick(t)] for t, r in rows],
            sys.stdout,
        )
    return 0


def _cmd_probs(args) -> int:
    model = _model(args.model)
    rows = _shape_rows(args.leaves)
    out = [
        (str(r), str(t.height), _frac(enumeration.shape_probability(t, model)))
        for t, r in rows
    ]
    if args.format == "json":
        payload = {
            "leaves": args.leaves,
            "model": model.value,
            "shapes": [{"rank": a, "height": int(b), "probability": c} for a, b, c in out],
        }
        print(json.dumps(payload))
    else:
        _print_csv(["rank", "height", "probability"], [list(r) for r in out], sys.stdout)
    return 0


def _cmd_moments(args) -> int:
    model = _model(args.model)
    rep = enumeration.exact_moments(args.leaves, model)
    payload = {
        "n": rep.n,
        "model": rep.model.value,
        "e_f": _frac(rep.e_f) if rep.e_f is not None else None,
        "e_f2": _frac(rep.e_f2) if rep.e_f2 is not None else None,
        "v_f": _frac(rep.v_f) if rep.v_f is not None else None,
        "e_loglog_f": _real(rep.e_loglog_f),
        "e_height": _frac(rep.e_height),
        "caterpillar_prob": _frac(rep.caterpillar_prob),
    }
    print(json.dumps(payload))
    return 0


def _cmd_sample(args) -> int:
    model = _model(args.model)
    rep = sampling.monte_carlo(
        model,
        args.leaves,
        args.count,
        seed=args.seed,
        with_histogram=args.histogram,
        height_only=args.height_only,
    )
    if args.format == "csv":
        if rep.shape_histogram is None:
            raise ValueError("--format csv emits the histogram; pass --histogram")
        _print_csv(
            ["rank", "count"],
            [[str(r), str(c)] for r, c in sorted(rep.shape_histogram.items())],
            sys.stdout,
        )
        return 0
    payload = {
        "model": rep.model.value,
        "n": rep.n,
        "samples": rep.samples,
        "mean_loglog": None if rep.mean_loglog is None else _real(rep.mean_loglog),
        "se_loglog": None if rep.se_loglog is None else _real(rep.se_loglog),
        "mean_height": _real(rep.mean_height),
        "se_height": _real(rep.se_height),
        "caterpillar_freq": _real(rep.caterpillar_freq),
        "histogram": None
        if rep.shape_histogram is None
        else {str(r): c for r, c in sorted(rep.shape_histogram.items())},
    }
    print(json.dumps(payload))
    return 0


def _cmd_asym(args) -> int:
    what = args.what
    if what == "constants":
        c = asymptotics.CONSTANTS
        print(json.dumps({
            "gamma": _real(c.gamma),
            "lambda": _real(c.lam),
            "rho": _real(c.rho),
            "kappa": _real(c.kappa),
            "alpha": _real(c.alpha),
            "beta": _real(c.beta),
        }))
        return 0
    if what == "theta-cdf":
        if args.x is None:
            raise ValueError("--x is required for theta-cdf")
        print(json.dumps({"x": _real(args.x), "F": _real(asymptotics.theta_cdf(args.x))}))
        return 0
    if args.model is None:
        raise ValueError(f"--model is required for {what}")
    if args.n_range is None:
        raise ValueError(f"--n-range is required for {what}")
    model = _model(args.model)
    lo, hi = _parse_range(args.n_range)
    rows = []
    for n in range(lo, hi + 1):
        if what == "loglog":
            rows.append({"n": n, "value": _real(asymptotics.loglog_asymptotic(n, model))})
        elif what == "pi":
            pi = asymptotics.pi_asymptotic(n, model)
            rows.append({"n": n, "pi": _real(pi.value), "ln_pi": _real(pi.log_value)})
        else:  # mean-rank
            rec = asymptotics.mean_rank_asymptotic(n, model, variance=args.variance)
            rows.append({
                "n": n,
                "log2log_mean": _real(rec.log2log_mean),
                "exact_available": rec.exact_available,
                "mean": _frac(rec.mean) if rec.mean is not None else None,
            })
    print(json.dumps({"what": what, "model": model.value, "rows": rows}))
    return 0


def figure_table(which: int) -> tuple[list[str], list[list[str]]]:
    """Header and rows of the CSV behind figure 1, 2 or 3."""
    if which == 1:
        header = ["n", "model", "loglog_exact", "height_exact_frac", "height_exact", "loglog_asym"]
        rows = []
        for n in range(2, 21):
            for model in _FIGURE_MODELS:
                rep = enumeration.exact_moments(n, model, include_rank_moments=False)
                rows.append([
                    str(n),
                    model.value,
                    _real(rep.e_loglog_f),
                    _frac(rep.e_height),
                    _real(float(rep.e_height)),
                    _real(asymptotics.loglog_asymptotic(n, model)),
                ])
        return header, rows
    if which not in (2, 3):
        raise ValueError("--which must be 1, 2 or 3")
    variance = which == 3
    kind = "var" if variance else "mean"
    header = ["n", "model", f"{kind}_exact_frac", f"log2log_{kind}_exact",
              f"{kind}_asym_frac", f"log2log_{kind}_asym"]
    rows = []
    for n in range(2, 11):
        c = ranking.extremal_seqs(n - 1).c[n - 1]
        for model in _FIGURE_MODELS:
            rep = enumeration.exact_moments(n, model)
            exact = rep.v_f if variance else rep.e_f
            approx = enumeration.caterpillar_probability(n, model) * (c * c if variance else c)
            rows.append([
                str(n),
                model.value,
                _frac(exact),
                _real(math.log2(_ln_fraction(exact))) if exact > 1 else "",
                _frac(approx),
                _real(math.log2(_ln_fraction(approx))) if approx > 1 else "",
            ])
    return header, rows


def _ln_fraction(q: Fraction) -> float:
    return ranking.ln_big(q.numerator) - ranking.ln_big(q.denominator)


def _cmd_figures(args) -> int:
    header, rows = figure_table(args.which)
    if args.out == "-":
        _print_csv(header, rows, sys.stdout)
        return 0
    buf = io.StringIO()
    _print_csv(header, rows, buf)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())
    return 0


# ----------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cprank",
        description="Colijn-Plazzotta ranking of binary tree shapes. "
        "Logarithms in log-log statistics are log2 of the natural log of the rank.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("rank", help="rank of a Newick tree ('-' reads stdin)")
    q.add_argument("newick")
    q.set_defaults(func=_cmd_rank)

    q = sub.add_parser("unrank", help="Newick of the shape with a given rank")
    q.add_argument("k")
    q.set_defaults(func=_cmd_unrank)

    q = sub.add_parser("seq", help="extremal rank sequences and height counts")
    q.add_argument("which", choices=["c", "d", "height-counts"])
    q.add_argument("--max", type=int, required=True, help="largest height")
    q.set_defaults(func=_cmd_seq)

    q = sub.add_parser("enumerate", help="all shapes with a given leaf count")
    q.add_argument("--leaves", type=int, required=True)
    q.add_argument("--format", choices=["csv", "json"], default="csv")
    q.set_defaults(func=_cmd_enumerate)

    q = sub.add_parser("probs", help="exact per-shape probabilities under a model")
    q.add_argument("--leaves", type=int, required=True)
    q.add_argument("--model", required=True)
    q.add_argument("--format", choices=["csv", "json"], default="csv")
    q.set_defaults(func=_cmd_probs)

    q = sub.add_parser("moments", help="exact rank/height moments under a model")
    q.add_argument("--leaves", type=int, required=True)
    q.add_argument("--model", required=True)
    q.set_defaults(func=_cmd_moments)

    q = sub.add_parser("sample", help="seeded Monte Carlo report")
    q.add_argument("--model", required=True)
    q.add_argument("--leaves", type=int, required=True)
    q.add_argument("--count", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--histogram", action="store_true")
    q.add_argument("--height-only", action="store_true")
    q.add_argument("--format", choices=["json", "csv"], default="json")
    q.set_defaults(func=_cmd_sample)

    q = sub.add_parser("asym", help="asymptotic formulas and constants")
    q.add_argument("--what", required=True,
                   choices=["loglog", "pi", "mean-rank", "theta-cdf", "constants"])
    q.add_argument("--model")
    q.add_argument("--n-range", dest="n_range")
    q.add_argument("--x", type=float)
    q.add_argument("--variance", action="store_true",
                   help="mean-rank: approximate the second moment instead")
    q.set_defaults(func=_cmd_asym)

    q = sub.add_parser("figures", help="CSV data behind the survey figures")
    q.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    q.add_argument("--out", required=True, help="output path, '-' for stdout")
    q.set_defaults(func=_cmd_figures)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ValueError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
