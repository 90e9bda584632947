"""Command-line harness: ``qgalois verify | table | eval``.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad configuration or
literal, 3 an internal solver or construction turned out inconsistent.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import ConfigurationError, ParseError, VerificationError
from .galois import (
    IDENTITY_LABELS, GaloisObject, verify_cocycle, verify_galois_bijectivity,
    verify_identity_suite, verify_properties, verify_representation,
    verify_theta_definition,
)
from .hopf import verify_hopf_axioms
from .literals import format_value, parse_element, parse_scalar
from .qalgebra import Window
from .reflection import (
    Reflection, d_multiplier, dual_act, hat_delta, verify_bi_galois, verify_reflection,
)
from .report import Report
from .scalar import CyclotomicField

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# "all" runs these in this order; "bijectivity" is already part of "properties"
ALL_SUITES = ("hopf", "identities", "properties", "theta-def", "cocycle", "rep",
              "reflection", "bi-galois")
EXTRA_SUITES = ("bijectivity",)
KNOWN_SUITES = ALL_SUITES + EXTRA_SUITES + IDENTITY_LABELS


@dataclass
class RunConfig:
    n: int
    m: int
    lambda_exponent: int = 1
    mu_text: str = "1"
    window: int = 3
    suites: tuple = ALL_SUITES
    fmt: str = "text"
    out: str | None = None
    timing: bool = False
    mu: object = field(default=None, repr=False)

    def echo(self) -> dict:
        return {"n": self.n, "m": self.m, "lambda_exponent": self.lambda_exponent,
                "mu": format_value(self.mu), "window": self.window}


def parse_suites(text: str) -> tuple:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise ConfigurationError("empty suite selection")
    out: list = []
    for s in names:
        if s == "all":
            out.extend(ALL_SUITES)
        elif s in KNOWN_SUITES:
            out.append(s)
        else:
            raise ConfigurationError(
                f"unknown suite {s!r}; choose from all, {', '.join(KNOWN_SUITES)}")
    # identity labels collapse into one identity run at the first label's place
    labels = tuple(dict.fromkeys(s for s in out if s in IDENTITY_LABELS))
    result: list = []
    for s in out:
        if s in IDENTITY_LABELS:
            s = "identities" if "identities" in out else ("identities",) + labels
        if s not in result:
            result.append(s)
    return tuple(result)


def make_config(ns: argparse.Namespace) -> RunConfig:
    """Validate parsed flags; raises ConfigurationError or ParseError."""
    cfg = RunConfig(ns.n, ns.m, ns.lambda_exp, ns.mu, getattr(ns, "window", 3),
                    fmt=getattr(ns, "format", "text"), out=getattr(ns, "out", None),
                    timing=getattr(ns, "timing", False))
    if cfg.window < 0:
        raise ConfigurationError(f"window must be >= 0, got {cfg.window}")
    if cfg.n < 2:
        raise ConfigurationError(f"n must be >= 2, got {cfg.n}")
    cfg.mu = parse_scalar(cfg.mu_text, CyclotomicField(cfg.n))
    if hasattr(ns, "suite"):
        cfg.suites = parse_suites(ns.suite)
    # builds the presentations, which enforce the coprimality conditions
    GaloisObject(cfg.n, cfg.m, cfg.mu, cfg.lambda_exponent)
    return cfg


# -- suites -----------------------------------------------------------------------

class _Context:
    """Lazily built structures shared by the suites of one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._G = None
        self._R = None

    @property
    def G(self) -> GaloisObject:
        if self._G is None:
            c = self.cfg
            self._G = GaloisObject(c.n, c.m, c.mu, c.lambda_exponent)
        return self._G

    @property
    def R(self) -> Reflection:
        if self._R is None:
            self._R = Reflection(self.G)
        return self._R


def run_suite(ctx: _Context, suite) -> Report:
    w = Window(ctx.cfg.window)
    rep = Report()
    name = suite[0] if isinstance(suite, tuple) else suite
    start = time.perf_counter()
    if name == "hopf":
        verify_hopf_axioms(ctx.G.hopf, w, rep)
    elif name == "identities":
        labels = suite[1:] if isinstance(suite, tuple) else None
        verify_identity_suite(ctx.G, w, labels or None, rep)
    elif name == "properties":
        verify_properties(ctx.G, w, rep)
    elif name == "bijectivity":
        verify_galois_bijectivity(ctx.G, w, rep)
    elif name == "theta-def":
        verify_theta_definition(ctx.G, w, rep)
    elif name == "cocycle":
        verify_cocycle(ctx.G, ctx.cfg.window, rep)
    elif name == "rep":
        verify_representation(ctx.G, w, rep)
    elif name == "reflection":
        verify_reflection(ctx.R, w, rep)
    elif name == "bi-galois":
        verify_bi_galois(ctx.R, w, rep)
    else:  # pragma: no cover - parse_suites filters names
        raise ConfigurationError(f"unknown suite {name!r}")
    rep.timing[name] = time.perf_counter() - start
    return rep


def _worker(args) -> Report:
    cfg, suite = args
    return run_suite(_Context(cfg), suite)


def _threads() -> int:
    raw = os.environ.get("QGALOIS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigurationError(f"QGALOIS_THREADS must be an integer, got {raw!r}")


def cmd_verify(cfg: RunConfig) -> Report:
    report = Report(f"qgalois verify X({cfg.n},{cfg.m},z^{cfg.lambda_exponent},"
                    f"{format_value(cfg.mu)})", cfg.echo())
    report.config["suites"] = [s[0] if isinstance(s, tuple) else s for s in cfg.suites]
    workers = min(_threads(), len(cfg.suites))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, [(cfg, s) for s in cfg.suites]))
    else:
        ctx = _Context(cfg)
        parts = [run_suite(ctx, s) for s in cfg.suites]
    for part in parts:  # merge in selection order, whatever finished first
        report.merge(part)
    return report


def cmd_table(cfg: RunConfig) -> Report:
    ctx = _Context(cfg)
    report = Report(f"qgalois table X({cfg.n},{cfg.m},z^{cfg.lambda_exponent},"
                    f"{format_value(cfg.mu)})", cfg.echo())
    G = ctx.G
    report.add_row("A relations", G.A.relation_text())
    report.add_row("X relations", G.X.relation_text())
    G.describe(report)
    ctx.R.describe(report)
    return report


# -- eval ---------------------------------------------------------------------------

def _eval_maps(ctx: _Context) -> dict:
    """name -> (input algebra, function)."""
    G = ctx.G
    h = G.hopf
    A, X = G.A, G.X

    def C():
        return ctx.R.C

    return {
        "alpha": (lambda: X, G.alpha),
        "beta": (lambda: A, G.beta),
        "S": (lambda: A, h.antipode),
        "S_inv": (lambda: A, h.antipode_inv),
        "Delta": (lambda: A, h.coproduct),
        "eps": (lambda: A, h.counit),
        "phi": (lambda: A, h.left_integral),
        "psi": (lambda: A, h.right_integral),
        "sigma": (lambda: A, h.sigma),
        "sigma_X": (lambda: X, G.sigma_X),
        "theta_X": (lambda: X, G.theta_X),
        "phi_X": (lambda: X, G.phi_X),
        "psi_X": (lambda: X, G.psi_X),
        "section": (lambda: A, G.section),
        "section_inv": (lambda: A, G.section_inv),
        "hat_delta": (lambda: X, lambda x: dual_act(G, hat_delta(h), x)),
        "d": (lambda: X, lambda x: dual_act(G, d_multiplier(h), x)),
        "gamma": (lambda: X, lambda x: C().gamma(x)),
        "beta_C": (lambda: C().pres, lambda c: C().beta(c)),
        "Delta_C": (lambda: C().pres, lambda c: C().hopf.coproduct(c)),
        "S_C": (lambda: C().pres, lambda c: C().hopf.antipode(c)),
        "normal": (None, lambda e: e),
    }


EVAL_MAPS = ("alpha", "beta", "S", "S_inv", "Delta", "eps", "phi", "psi", "sigma",
             "sigma_X", "theta_X", "phi_X", "psi_X", "section", "section_inv",
             "hat_delta", "d", "gamma", "beta_C", "Delta_C", "S_C", "normal")


def _guess_algebra(ctx: _Context, expr: str):
    """For ``normal``: the algebra whose generator letters occur in expr."""
    letters = set(ch for ch in expr if ch.isalpha()) - {"z"}
    if letters & {"u", "w"}:
        return ctx.R.C.pres
    if letters & {"a", "b"}:
        return ctx.G.A
    return ctx.G.X


def cmd_eval(cfg: RunConfig, expr: str, map_name: str) -> str:
    ctx = _Context(cfg)
    source, fn = _eval_maps(ctx)[map_name]
    pres = _guess_algebra(ctx, expr) if source is None else source()
    return format_value(fn(parse_element(expr, pres)))


# -- argument handling ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qgalois",
        description="Exact verification of Galois objects over the quantum groups A(n,m,lambda).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, required=True, help="order of lambda (n >= 2)")
        sp.add_argument("--m", type=int, required=True, help="exponent m, coprime to n")
        sp.add_argument("--lambda-exp", type=int, default=1,
                        help="lambda = z^k for this k, coprime to n (default 1)")
        sp.add_argument("--mu", default="1", help="scalar literal for mu, e.g. 1, 0, z, 1/2-z^2")

    def output(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write the report to this file instead of stdout")
        sp.add_argument("--timing", action="store_true",
                        help="include per-suite timings (JSON is timing-free by default)")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--window", type=int, default=3, help="window bound P (default 3)")
    v.add_argument("--suite", default="all",
                   help="comma list of suites or 'all': " + ", ".join(KNOWN_SUITES))
    output(v)

    t = sub.add_parser("table", help="print the derived structure constants")
    common(t)
    output(t)

    e = sub.add_parser("eval", help="apply a structure map to an element literal")
    common(e)
    e.add_argument("expr", help="element literal, e.g. 'a*b' or 'y^2*x^-1'")
    e.add_argument("--map", dest="map_name", choices=EVAL_MAPS, default="normal")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(report: Report, cfg: RunConfig, table_only: bool = False) -> str:
    if cfg.fmt == "json":
        return report.to_json(include_timing=cfg.timing)
    if table_only:
        return "".join(f"{k} = {v}\n" for k, v in report.table)
    return report.to_text(include_timing=cfg.timing)


def _usage_error(msg: str) -> int:
    sys.stderr.write(f"qgalois: error: {msg}\n")
    return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        cfg = make_config(ns)
        if ns.command == "verify":
            report = cmd_verify(cfg)
            _emit(_render(report, cfg), cfg.out)
            return EXIT_OK if report.passed else EXIT_FAIL
        if ns.command == "table":
            _emit(_render(cmd_table(cfg), cfg, table_only=True), cfg.out)
            return EXIT_OK
        sys.stdout.write(cmd_eval(cfg, ns.expr, ns.map_name) + "\n")
        return EXIT_OK
    except ParseError as exc:
        text = exc.text or ""
        caret = f"\n  {text}\n  {' ' * exc.position}^" if text else ""
        return _usage_error(f"{exc}{caret}")
    except ConfigurationError as exc:
        return _usage_error(str(exc))
    except VerificationError as exc:
        sys.stderr.write(f"qgalois: internal inconsistency: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
