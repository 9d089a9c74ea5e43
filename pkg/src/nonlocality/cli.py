"""Command line front end.

    nonlocality scan [--config FILE] [flags]     theta sweep -> CSV
    nonlocality bounds                           table of classical/quantum/superquantum bounds
    nonlocality kappa3-models [--output FILE]    kappa_3 against <S> for three models -> CSV
    nonlocality verify [--seed N]                invariant suite
    nonlocality classify --theta T [flags]       cumulant report as JSON

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

import argparse
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .checks import DEFAULT_SEED, run_verify
from .cumulants import (
    KAPPA3_LHVT_BOUND,
    SKEWNESS_BOUND,
    chsh_witness,
    classify,
    cumulants_from_moments,
    kappa3_lhvt,
    kappa3_product,
    kappa3_singlet,
    lhvt_cumulant_bounds,
    skewness_witness,
)
from .linalg import DomainError, UsageError
from .models import (
    LHVT_CHSH_BOUND,
    NONSTEERING_QUADRATIC_BOUND,
    QUANTUM_CHSH_BOUND,
    QUANTUM_QUADRATIC_BOUND,
    lhvt_chsh_range,
    pr_box,
)
from .scenario import canonical_scenario, mean_s, moments, product_state, s_operator, singlet, werner_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

STATES = ("singlet", "product", "mixed")
SCAN_COLUMNS = (
    "theta", "mean_s", "abs_mean_s", "chsh_violated",
    "skew_witness", "skew_violated", "kappa2_qm", "kappa3_qm",
)


@dataclass
class ScanConfig:
    theta_start: float = 0.0
    theta_end: float = np.pi / 2
    steps: int = 101
    state: str = "singlet"
    bloch_a: list = field(default_factory=lambda: [0.0, 0.0, 1.0])
    bloch_b: list = field(default_factory=lambda: [0.0, 0.0, 1.0])
    visibility: float = 0.0
    max_order: int = 3
    output_path: str = "-"
    degrees: bool = False

    def validate(self):
        if self.degrees:
            self.theta_start = float(np.deg2rad(self.theta_start))
            self.theta_end = float(np.deg2rad(self.theta_end))
            self.degrees = False
        if int(self.steps) != self.steps or self.steps < 2:
            raise UsageError(f"steps must be an integer >= 2, got {self.steps}")
        self.steps = int(self.steps)
        if not self.theta_start < self.theta_end:
            raise UsageError("theta_start must be smaller than theta_end")
        if self.theta_start < 0.0 or self.theta_end > np.pi + 1e-12:
            raise UsageError("theta range must lie inside [0, pi]")
        self.theta_end = min(self.theta_end, np.pi)
        if self.state not in STATES:
            raise UsageError(f"state must be one of {STATES}, got {self.state!r}")
        if self.max_order not in (2, 3, 4):
            raise UsageError("max_order must be 2, 3 or 4")
        self.rho()  # raises DomainError on bad Bloch/visibility parameters
        return self

    def rho(self):
        if self.state == "singlet":
            return singlet()
        if self.state == "product":
            return product_state(self.bloch_a, self.bloch_b)
        return werner_state(self.visibility)

    def thetas(self):
        return np.linspace(self.theta_start, self.theta_end, self.steps)


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    value = float(value)
    if value == 0.0:
        value = 0.0  # no "-0"
    return f"{value:.12g}"


def write_csv(path, header, rows):
    text = io.StringIO()
    text.write(",".join(header) + "\n")
    for row in rows:
        text.write(",".join("" if v is None else fmt(v) for v in row) + "\n")
    data = text.getvalue()
    if path in (None, "-"):
        sys.stdout.write(data)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(data)


def scan_row(rho, theta, max_order):
    sc = canonical_scenario(theta)
    s = mean_s(rho, sc)
    kappa = cumulants_from_moments(moments(rho, s_operator(sc), max(3, max_order)))
    abs_s, chsh = chsh_witness(s)
    skew, skew_violated = skewness_witness(s)
    row = [theta, s, abs_s, chsh, skew, skew_violated, kappa[1], kappa[2]]
    if max_order == 4:
        row.append(kappa[3])
    return row


def run_scan(cfg, jobs=1):
    """Rows of a theta sweep, in grid order regardless of ``jobs``."""
    cfg.validate()
    rho = cfg.rho()
    thetas = cfg.thetas()
    header = list(SCAN_COLUMNS) + (["kappa4_qm"] if cfg.max_order == 4 else [])
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda t: scan_row(rho, t, cfg.max_order), thetas))
    return header, rows


def bounds_table():
    rows = []
    for n in (2, 3, 4):
        lo, hi = lhvt_cumulant_bounds(n)
        rows.append((f"LHV kappa_{n}(S) range" + (" (numeric)" if n == 4 else ""), f"[{fmt(lo)}, {fmt(hi)}]"))
    lo, hi = lhvt_chsh_range()
    rows += [
        ("LHV CHSH range", f"[{fmt(lo)}, {fmt(hi)}]"),
        ("LHV CHSH bound", fmt(LHVT_CHSH_BOUND)),
        ("quantum CHSH maximum", fmt(QUANTUM_CHSH_BOUND)),
        ("superquantum CHSH maximum (PR box)", fmt(pr_box().chsh_value())),
        ("non-steering quadratic bound", fmt(NONSTEERING_QUADRATIC_BOUND)),
        ("quantum quadratic bound", fmt(QUANTUM_QUADRATIC_BOUND)),
        ("skewness witness bound |<S>^3 - 8<S>|", fmt(SKEWNESS_BOUND)),
        ("LHV |kappa_3| bound 32 sqrt(3)/9", fmt(KAPPA3_LHVT_BOUND)),
    ]
    return rows


def run_bounds(out=None):
    out = out or sys.stdout
    rows = bounds_table()
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        out.write(f"{name:<{width}}  {value}\n")


def kappa3_grid(steps=201):
    """<S> grid on [-2 sqrt 2, 2 sqrt 2] plus the points +-2, +-sqrt(4/3) and 0."""
    ends = 2.0 * np.sqrt(2.0)
    extra = [-2.0, 2.0, -np.sqrt(4.0 / 3.0), np.sqrt(4.0 / 3.0), 0.0]
    grid = np.concatenate([np.linspace(-ends, ends, steps), extra])
    grid = np.unique(np.round(grid, 15))
    return grid


def run_kappa3_models(steps=201):
    rows = []
    for s in kappa3_grid(steps):
        classical = abs(s) <= 2.0 + 1e-12
        rows.append([
            s,
            kappa3_lhvt(s) if classical else None,
            kappa3_singlet(s),
            kappa3_product(s) if classical else None,
        ])
    return ["mean_s", "kappa3_lhvt", "kappa3_singlet", "kappa3_product"], rows


def _load_config(args):
    values = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            doc = json.load(fh)
        unknown = set(doc) - set(ScanConfig.__dataclass_fields__)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update(doc)
    for key in ScanConfig.__dataclass_fields__:
        flag = getattr(args, key, None)
        if flag is not None and flag is not False:
            values[key] = flag
    try:
        return ScanConfig(**values)
    except TypeError as exc:
        raise UsageError(str(exc)) from None


def _add_state_flags(p):
    p.add_argument("--state", choices=STATES)
    p.add_argument("--bloch-a", dest="bloch_a", nargs=3, type=float, metavar=("X", "Y", "Z"))
    p.add_argument("--bloch-b", dest="bloch_b", nargs=3, type=float, metavar=("X", "Y", "Z"))
    p.add_argument("--visibility", type=float, help="singlet weight of the mixed (Werner) state")
    p.add_argument("--max-order", dest="max_order", type=int, choices=(2, 3, 4))
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")


def build_parser():
    parser = argparse.ArgumentParser(prog="nonlocality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="theta sweep to CSV")
    p.add_argument("--config", help="JSON file with ScanConfig keys; flags override it")
    p.add_argument("--theta-start", dest="theta_start", type=float)
    p.add_argument("--theta-end", dest="theta_end", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--output", "-o", dest="output_path")
    p.add_argument("--jobs", type=int, default=1)
    _add_state_flags(p)

    sub.add_parser("bounds", help="print the table of bounds")

    p = sub.add_parser("kappa3-models", help="kappa_3 versus <S> for three models")
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--output", "-o", dest="output_path", default="-")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("classify", help="cumulant report for one angle, as JSON")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--config", help=argparse.SUPPRESS)
    _add_state_flags(p)
    return parser


def _cmd_scan(args):
    cfg = _load_config(args)
    header, rows = run_scan(cfg, jobs=args.jobs)
    write_csv(cfg.output_path, header, rows)
    return EXIT_OK


def _cmd_kappa3(args):
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    header, rows = run_kappa3_models(args.steps)
    write_csv(args.output_path, header, rows)
    return EXIT_OK


def _cmd_verify(args):
    results = run_verify(seed=args.seed, inject_fault=args.inject_fault)
    print(f"seed {args.seed}")
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print("failed: " + "; ".join(failed))
        return EXIT_FAIL
    return EXIT_OK


def _cmd_classify(args):
    theta = float(np.deg2rad(args.theta)) if args.degrees else args.theta
    args.degrees = False
    cfg = _load_config(args)
    cfg.validate()
    report = classify(cfg.rho(), canonical_scenario(theta), cfg.max_order)
    doc = {"theta": theta, "state": cfg.state, **report.to_dict()}
    print(json.dumps(doc, indent=2, default=float))
    return EXIT_OK


COMMANDS = {
    "scan": _cmd_scan,
    "bounds": lambda args: run_bounds() or EXIT_OK,
    "kappa3-models": _cmd_kappa3,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
