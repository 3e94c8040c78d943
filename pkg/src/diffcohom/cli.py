"""``diffcohom`` command line: compute, sweep, verify, cocycle."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cochains import NonIntegerOffset, cochain_to_json, cochain_to_latex
from .cohomology import (
    ABSOLUTE_VECTP,
    SL2_MODE,
    ZeroCohomology,
    compute,
    explicit_cocycle,
    find_special_weights,
    make_profile,
)
from .exactalg import LAMBDA, MixedField, ScalarParseError, is_generic, normalize, parse_scalar, scalar_str
from .verify import SUITES

K_CAP = 24

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_FIELD = 3
EXIT_ZERO = 4

MODE_ALIASES = {"relative": "relative", "absolute": ABSOLUTE_VECTP, ABSOLUTE_VECTP: ABSOLUTE_VECTP,
                "sl2": SL2_MODE}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    mode: str = "relative"
    k_lo: int | None = None
    k_hi: int | None = None
    lambdas: list = field(default_factory=list)
    mu: object = None
    special: bool = False
    generic: bool = False
    fmt: str = "text"
    out: str | None = None
    cert: str = "certified"
    seed: int = 0
    suite: str | None = None
    jobs: int = 1
    verbose: bool = False


def parse_k_range(text: str) -> tuple[int, int]:
    """``"7"`` or ``"lo..hi"``; bounds must satisfy 0 <= lo <= hi <= 24."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad k or k-range {text!r}") from exc
    if not 0 <= lo <= hi <= K_CAP:
        raise UsageError(f"k-range must satisfy 0 <= lo <= hi <= {K_CAP}, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diffcohom",
                                description="Exact cohomology of vector fields on the line with "
                                            "coefficients in differential operators between densities.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, multi_lambda: bool):
        sp.add_argument("--mode", default="relative", choices=sorted(MODE_ALIASES))
        sp.add_argument("--k", dest="k", help="order k, or a range lo..hi")
        sp.add_argument("--k-range", dest="k_range", help="range lo..hi (0 <= lo <= hi <= 24)")
        sp.add_argument("--lambda", dest="lambdas", action="append", default=[], metavar="SCALAR",
                        help="weight: INT, INT/INT, RAT+RAT*sqrt(INT) or 'generic'" +
                             ("; repeatable" if multi_lambda else ""))
        sp.add_argument("--generic", action="store_true", help="use a symbolic lambda")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--cert", default="certified", choices=("certified", "fast"))
        sp.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("compute", help="dimension and basis of one cohomology space")
    common(c, False)
    c.add_argument("--mu", help="target weight; k is then mu - lambda")
    c.add_argument("--format", dest="fmt", default="text", choices=("text", "json", "latex", "csv"))

    s = sub.add_parser("sweep", help="table of dimensions over a k-range and a set of weights")
    common(s, True)
    s.add_argument("--special", choices=("auto",), help="add the special weights of each k")
    s.add_argument("--format", dest="fmt", default="csv", choices=("text", "json", "latex", "csv"))
    s.add_argument("--jobs", type=int, default=1, help="worker processes")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--verbose", action="store_true", help="print passing checks too")
    v.add_argument("--out")

    y = sub.add_parser("cocycle", help="print representative cocycles")
    common(y, False)
    y.add_argument("--mu", help="target weight; k is then mu - lambda")
    y.add_argument("--format", dest="fmt", default="text", choices=("text", "json", "latex"))
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    if ns.command == "verify":
        cfg.suite, cfg.verbose, cfg.out = ns.suite, ns.verbose, ns.out
        return cfg
    cfg.mode = MODE_ALIASES[ns.mode]
    cfg.fmt, cfg.out, cfg.cert, cfg.seed = ns.fmt, ns.out, ns.cert, ns.seed
    cfg.generic = ns.generic
    cfg.special = getattr(ns, "special", None) == "auto"
    cfg.jobs = max(1, getattr(ns, "jobs", 1))
    for text in ns.lambdas:
        try:
            cfg.lambdas.append(parse_scalar(text))
        except ScalarParseError as exc:
            raise UsageError(str(exc)) from exc
    if ns.k and ns.k_range:
        raise UsageError("give --k or --k-range, not both")
    spec = ns.k or ns.k_range
    if getattr(ns, "mu", None):
        try:
            cfg.mu = parse_scalar(ns.mu)
        except ScalarParseError as exc:
            raise UsageError(str(exc)) from exc
    if spec:
        cfg.k_lo, cfg.k_hi = parse_k_range(spec)
    elif cfg.mu is None:
        raise UsageError("--k or --k-range is required")
    return cfg


# --- formatting -------------------------------------------------------------------

def _generic_kw(cfg: RunConfig) -> dict:
    return {"generic_mode": "probabilistic" if cfg.cert == "fast" else "certified", "seed": cfg.seed}


def _certified(res) -> bool:
    return res.certificate.get("generic_mode", "exact") in ("certified", "exact")


def cochain_text(c) -> str:
    k = c.profile.k
    if not c.table:
        return "0"
    parts = []
    for (i, j), v in sorted(c.table.items()):
        parts.append(f"({scalar_str(v)}) [f^({i}) g^({j}) - f^({j}) g^({i})] phi^({k + 2 - i - j})")
    return " + ".join(parts)


def result_text(res) -> str:
    lines = [f"{res.mode} k={res.k} lambda={scalar_str(res.profile.lam)} "
             f"mu={scalar_str(res.profile.mu)}: dim H^2 = {res.dim}",
             f"  cocycles {res.cocycle_dim}, coboundaries {res.coboundary_dim}"]
    for n, c in enumerate(res.basis, 1):
        lines.append(f"  c{n}(X,Y,phi) = {cochain_text(c)}")
    return "\n".join(lines) + "\n"


def rows_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mode", "k", "lambda", "dim", "certified"])
    for res, _ in rows:
        w.writerow([res.mode, res.k, scalar_str(res.profile.lam), res.dim, str(_certified(res)).lower()])
    return buf.getvalue()


def rows_json(rows) -> str:
    out = []
    for res, tags in rows:
        obj = res.to_json()
        obj["tags"] = tags
        out.append(obj)
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def rows_latex(rows) -> str:
    lines = [r"\begin{tabular}{llll}", r"mode & $k$ & $\lambda$ & $\dim H^2$ \\ \hline"]
    for res, _ in rows:
        lam = scalar_str(res.profile.lam).replace("lambda", r"\lambda").replace("sqrt(", r"\sqrt{").replace(")", "}")
        lines.append(f"{res.mode} & {res.k} & ${lam}$ & {res.dim} \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def rows_text(rows) -> str:
    out = []
    for res, tags in rows:
        tag = f"  [{'; '.join(tags)}]" if tags else ""
        out.append(f"{res.mode:15} k={res.k:<3} lambda={scalar_str(res.profile.lam):<24} dim={res.dim}{tag}")
    return "\n".join(out) + "\n"


FORMATTERS = {"csv": rows_csv, "json": rows_json, "latex": rows_latex, "text": rows_text}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ---------------------------------------------------------------------

def _single_profile(cfg: RunConfig):
    lams = list(cfg.lambdas) + ([LAMBDA] if cfg.generic else [])
    if len(lams) != 1:
        raise UsageError("exactly one weight is needed (one --lambda or --generic)")
    lam = lams[0]
    if cfg.mu is not None:
        k = None if cfg.k_lo is None else cfg.k_lo
        prof = make_profile(lam, cfg.mu, k)
        return lam, prof.k
    if cfg.k_lo != cfg.k_hi:
        raise UsageError("this command takes a single k")
    return lam, cfg.k_lo


def cmd_compute(cfg: RunConfig) -> int:
    lam, k = _single_profile(cfg)
    res = compute(cfg.mode, lam, k, **_generic_kw(cfg))
    if cfg.fmt == "json":
        text = json.dumps(res.to_json(), indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        text = rows_csv([(res, [])])
    elif cfg.fmt == "latex":
        text = "".join(cochain_to_latex(c) + "\n" for c in res.basis) or rows_latex([(res, [])])
    else:
        text = result_text(res)
    _emit(text, cfg.out)
    return EXIT_OK


def _sweep_weights(cfg: RunConfig, k: int):
    """Weights for one k in a fixed order: explicit, then special (sorted), then generic."""
    seen, out = [], []

    def add(lam, tags):
        lam = normalize(lam)
        for n, old in enumerate(seen):
            if type(old) is type(lam) and old == lam:
                out[n] = (lam, sorted(set(out[n][1]) | set(tags)))
                return
        seen.append(lam)
        out.append((lam, list(tags)))

    for lam in cfg.lambdas:
        add(lam, [])
    if cfg.special and k >= 1:
        rep = find_special_weights(k)
        for r in rep.roots():
            add(r, rep.tags_for(r))
    if cfg.generic:
        add(LAMBDA, ["generic"])
    return out


def _sweep_one(args):
    mode, lam, k, kw = args
    return compute(mode, lam, k, **kw)


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.k_lo is None:
        raise UsageError("sweep needs --k lo..hi or --k-range")
    jobs = []
    for k in range(cfg.k_lo, cfg.k_hi + 1):
        for lam, tags in _sweep_weights(cfg, k):
            jobs.append(((cfg.mode, lam, k, _generic_kw(cfg)), tags))
    if not jobs:
        raise UsageError("no weights: give --lambda, --special auto or --generic")
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_sweep_one, [j for j, _ in jobs]))
    else:
        results = [_sweep_one(j) for j, _ in jobs]
    rows = [(res, tags) for res, (_, tags) in zip(results, jobs)]
    _emit(FORMATTERS[cfg.fmt](rows), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    lines, failed, total = [], 0, 0
    for check in SUITES[cfg.suite]():
        total += check.ok is not None
        failed += check.ok is False
        if cfg.verbose or check.ok is not True:
            lines.append(check.line())
    lines.append(f"{cfg.suite}: {total - failed}/{total} checks passed")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_cocycle(cfg: RunConfig) -> int:
    lam, k = _single_profile(cfg)
    reps = explicit_cocycle(cfg.mode, k, lam)
    if cfg.fmt == "json":
        text = json.dumps([cochain_to_json(c) for c in reps], indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "latex":
        text = "".join(cochain_to_latex(c) + "\n" for c in reps)
    else:
        text = "".join(f"c{n}(X,Y,phi) = {cochain_text(c)}\n" for n, c in enumerate(reps, 1))
    _emit(text, cfg.out)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "sweep": cmd_sweep, "verify": cmd_verify, "cocycle": cmd_cocycle}


_VALUE_FLAGS = ("--lambda", "--mu", "--k", "--k-range")


def _join_negative_values(argv):
    """Rewrite ``--lambda -1/2`` as ``--lambda=-1/2`` so argparse accepts negative weights."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = parser.parse_args(_join_negative_values(argv))  # argparse exits with status 2 on its own errors
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"diffcohom: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MixedField, NonIntegerOffset) as exc:
        print(f"diffcohom: field error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except ZeroCohomology as exc:
        print(f"diffcohom: {exc}", file=sys.stderr)
        return EXIT_ZERO


if __name__ == "__main__":
    sys.exit(main())
