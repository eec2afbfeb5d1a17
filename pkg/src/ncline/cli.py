"""Batch command-line frontend: ``ncline {classify,hilbert,verify,probe}``.

Settings come from built-in defaults, then an optional ``--config`` file
(``key = value`` lines under an ``[ncline]`` section), then flags.
Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import random
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from .field_tower import INSTANCE_KEYS, CertifiedInfinite, ExceedsBound, Finite, get_instance
from .indexed_tensor import basis_over_start
from .localization import (
    ReachedGPower,
    center_probe,
    filtration_dims,
    ideal_saturation_probe,
)
from .sym_algebra import SymElement, g_chain, quotient_B_dim, relation_space
from .verification import SUITE_ORDER, run_suites

log = logging.getLogger("ncline")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class SuiteConfig:
    instance: str = "all"
    nmax: int | None = None
    seed: int = 0
    out: str | None = None
    suite: str = "all"
    depth: int = 4
    level: int = 6
    center_level: int = 2
    samples: int = 3
    gr_max_degree: int = 12

    def instance_keys(self):
        if self.instance == "all":
            return list(INSTANCE_KEYS)
        if self.instance not in INSTANCE_KEYS:
            raise UsageError(f"unknown instance {self.instance!r}; choose from {', '.join(INSTANCE_KEYS)} or all")
        return [self.instance]

    def degree_bound(self, instance):
        if self.nmax is not None:
            return self.nmax
        return 10 if instance.finite_dimensional else 6

    def suites(self):
        if self.suite == "all":
            return list(SUITE_ORDER)
        names = [s.strip() for s in self.suite.split(",") if s.strip()]
        unknown = [s for s in names if s not in SUITE_ORDER]
        if unknown or not names:
            raise UsageError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITE_ORDER)}")
        return names

    def validate(self):
        if self.nmax is not None and self.nmax < 4:
            raise UsageError("nmax must be at least 4")
        for name in ("depth", "level", "samples"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if self.center_level < 0:
            raise UsageError("center-level must be nonnegative")
        self.instance_keys()
        self.suites()


_INT_KEYS = {f.name for f in fields(SuiteConfig)} - {"instance", "out", "suite"}


def load_config(path):
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    section = parser["ncline"] if parser.has_section("ncline") else parser.defaults()
    values = {}
    known = {f.name for f in fields(SuiteConfig)}
    for raw_key, raw in section.items():
        key = raw_key.replace("-", "_")
        if key not in known:
            raise UsageError(f"unknown config key {raw_key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(raw)
            except ValueError as exc:
                raise UsageError(f"config key {raw_key!r} needs an integer") from exc
        else:
            values[key] = raw.strip()
    return values


# ---------------------------------------------------------------------------
# rendering


def element_text(x):
    inst = x.instance
    return "(" + ", ".join(inst.text(v) for v in x.slots) + f")[{x.start},{x.end}]"


def dump_json(document):
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(config, filename, text):
    sys.stdout.write(text)
    if config.out:
        target = Path(config.out)
        target.mkdir(parents=True, exist_ok=True)
        (target / filename).write_text(text, encoding="utf-8")


def _order_text(order):
    if isinstance(order, Finite):
        return f"finite, order {order.order}"
    if isinstance(order, CertifiedInfinite):
        return f"infinite ({order.reason})"
    if isinstance(order, ExceedsBound):
        return f"exceeds bound {order.bound}"
    return str(order)


# ---------------------------------------------------------------------------
# verbs


def cmd_classify(config):
    report = {}
    lines = []
    for key in config.instance_keys():
        inst = get_instance(key)
        gens = inst.generators()
        sigma = inst.sigma_automorphism()
        order = inst.sigma_order(64)
        label = inst.classify_algebraic()
        entry = {
            "description": inst.description,
            "subfield_generators": [inst.text(c) for c in inst.subfield_generators],
            "anti_invariants": [inst.text(w) for w in (inst.anti_invariant(0), inst.anti_invariant(1))],
            "involutions": {f"tau{i}": {inst.text(g): inst.text(inst.tau(i, g)) for g in gens} for i in (0, 1)},
            "sigma": {inst.text(g): inst.text(sigma(g)) for g in gens},
            "sigma_order": _order_text(order),
            "common_subfield_basis": [inst.text(c) for c in inst.common_subfield_basis or []],
            "classification": label.value,
        }
        report[key] = entry
        lines.append(f"{key}: {inst.description}")
        lines.append(f"  K0 generated by {entry['subfield_generators'][0]}, K1 by {entry['subfield_generators'][1]}")
        for name, images in entry["involutions"].items():
            lines.append(f"  {name}: " + ", ".join(f"{g} -> {v}" for g, v in images.items()))
        lines.append("  sigma = tau1 tau0: " + ", ".join(f"{g} -> {v}" for g, v in entry["sigma"].items()))
        lines.append(f"  sigma order: {entry['sigma_order']}")
        lines.append(f"  classification: {label.value}")
    sys.stdout.write("\n".join(lines) + "\n")
    if config.out:
        target = Path(config.out)
        target.mkdir(parents=True, exist_ok=True)
        (target / "classify.json").write_text(dump_json(report), encoding="utf-8")
    return EXIT_OK


def hilbert_rows(inst, nmax, gr_max_degree):
    """Rows ``(n, dim_T, dim_R, dim_A, dim_B, dim_gr, status)`` at start 0.

    Start 1 is computed too and any disagreement is flagged.  The graded
    localization column needs products in degree ``2n``, so it is filled
    only while ``2n`` stays within ``max(nmax, gr_max_degree)``.
    """
    gr_levels = max(nmax, gr_max_degree) // 2
    gr = filtration_dims(inst, min(gr_levels, nmax))
    rows = []
    for n in range(nmax + 1):
        measured = []
        for start in (0, 1):
            dim_t = len(basis_over_start(inst, start, start + n))
            dim_r = relation_space(inst, start, start + n).dimension if n >= 2 else 0
            dim_a = dim_t - dim_r
            dim_b = quotient_B_dim(inst, start, n)
            measured.append((dim_t, dim_r, dim_a, dim_b))
        expected = (1 << n, (1 << n) - n - 1, n + 1, 1 if n == 0 else 2)
        problems = []
        if measured[0] != expected:
            problems.append(f"start 0 gives {measured[0]}, expected {expected}")
        if measured[1] != measured[0]:
            problems.append(f"start 1 gives {measured[1]}")
        dim_gr = gr[n] if n < len(gr) else None
        if dim_gr is not None and dim_gr != (1 if n == 0 else 2):
            problems.append(f"graded localization piece has dimension {dim_gr}")
        rows.append((n, *measured[0], "" if dim_gr is None else dim_gr, "; ".join(problems) or "ok"))
    return rows


def cmd_hilbert(config):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["instance", "n", "dim_T", "dim_R", "dim_A", "dim_B", "dim_gr_Lambda00", "status"])
    failed = False
    for key in config.instance_keys():
        inst = get_instance(key)
        for row in hilbert_rows(inst, config.degree_bound(inst), config.gr_max_degree):
            writer.writerow([key, *row])
            failed |= row[-1] != "ok"
    emit(config, "hilbert.csv", buffer.getvalue())
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_verify(config):
    report = {"instances": {}}
    all_ok = True
    for key in config.instance_keys():
        inst = get_instance(key)
        nmax = config.degree_bound(inst)
        results = run_suites(inst, nmax, config.seed, config.suites())
        for r in results:
            log.info("%s %s: %d passed, %d failed in %.1fs", key, r.name, len(r.passed), len(r.failed), r.seconds)
        ok = all(r.ok for r in results)
        all_ok &= ok
        report["instances"][key] = {
            "nmax": nmax,
            "ok": ok,
            "suites": {r.name: r.to_json() for r in results},
        }
    report["ok"] = all_ok
    report["seed"] = config.seed
    emit(config, "verify.json", dump_json(report))
    return EXIT_OK if all_ok else EXIT_FAILURE


def _sample_degree_two(inst, rng):
    while True:
        coords = [inst.random_subfield_element(0, rng, height=2) for _ in range(3)]
        x = SymElement.from_coordinates(inst, 0, 2, coords)
        if not x.is_zero():
            return x


def simplicity_report(inst, config):
    rng = random.Random(f"{config.seed}:simplicity")
    inputs = [("g_bar_0", g_chain(inst, 0, 1))]
    inputs += [(f"sample_{k}", _sample_degree_two(inst, rng)) for k in range(config.samples)]
    runs = []
    sane = True
    for label, x in inputs:
        verdict, _ = ideal_saturation_probe(x, depth=config.depth, level_bound=config.level)
        if isinstance(verdict, ReachedGPower):
            entry = {
                "verdict": "ReachedGPower",
                "certificate": {
                    "k": verdict.k,
                    "start": verdict.start,
                    "saturation_passes": verdict.passes,
                    "chain": element_text(g_chain(inst, verdict.start, verdict.k)),
                },
            }
        else:
            entry = {"verdict": "Inconclusive", "certificate": {"depth": verdict.depth,
                                                                "level_bound": verdict.level_bound,
                                                                "saturation_passes": verdict.passes}}
        entry["input"] = label
        entry["element"] = element_text(x)
        runs.append(entry)
        if label == "g_bar_0" and not (isinstance(verdict, ReachedGPower) and verdict.k == 1):
            sane = False
    return runs, sane


def center_report(inst, level):
    levels = {}
    for L in sorted({0, level, level + 1}):
        r = center_probe(inst, L)
        levels[str(L)] = {
            "dimension_over_Q": r.dimension_over_rationals,
            "contains_common_subfield": r.contains_common_subfield,
            "basis": [element_text(z.numerator) + f" g^-{L}" for z in r.basis],
        }
    ok = levels["0"]["contains_common_subfield"]
    stable = levels[str(level)]["dimension_over_Q"] == levels[str(level + 1)]["dimension_over_Q"]
    return {"levels": levels, "same_dimension_at_next_level": stable}, ok


def cmd_probe(config, kind):
    keys = config.instance_keys()
    if kind == "center":
        finite = [k for k in keys if get_instance(k).finite_dimensional]
        if config.instance != "all" and not finite:
            raise UsageError(f"the center probe needs an instance of finite degree over Q, not {config.instance}")
        keys = finite
    document = []
    ok = True
    for key in keys:
        inst = get_instance(key)
        parameters = {"seed": config.seed}
        if kind == "simplicity":
            parameters.update(depth=config.depth, level_bound=config.level, samples=config.samples,
                              note="depth and level bound are engineering defaults; no truncation bound is known")
            verdict, sane = simplicity_report(inst, config)
        else:
            parameters.update(center_level=config.center_level,
                              note="dimensions are reported; no stabilization level is asserted")
            verdict, sane = center_report(inst, config.center_level)
        ok &= sane
        document.append({
            "instance": key,
            "probe": kind,
            "parameters": parameters,
            "verdict": verdict,
            "classification": inst.classify_algebraic().value,
        })
    emit(config, f"probe_{kind}.json", dump_json(document))
    return EXIT_OK if ok else EXIT_FAILURE


# ---------------------------------------------------------------------------
# argument handling


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with an [ncline] section")
    common.add_argument("--instance", help=f"one of {', '.join(INSTANCE_KEYS)}, or all")
    common.add_argument("--nmax", type=int, help="degree bound (default 10, or 6 for the function field)")
    common.add_argument("--seed", type=int, help="seed for every randomized check")
    common.add_argument("--out", help="directory for report files")
    common.add_argument("--suite", help=f"comma-separated subset of {', '.join(SUITE_ORDER)}, or all")
    common.add_argument("--depth", type=int, help="probe depth (conjugate family size)")
    common.add_argument("--level", type=int, help="probe level bound (largest g-chain length)")
    common.add_argument("--center-level", type=int, dest="center_level", help="filtration level for the center probe")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="ncline", description="Noncommutative symmetric algebras of field bimodules.")
    verbs = parser.add_subparsers(dest="verb", required=True)
    verbs.add_parser("classify", parents=[common], help="algebraic or non-algebraic verdict per instance")
    verbs.add_parser("hilbert", parents=[common], help="CSV table of graded dimensions")
    verbs.add_parser("verify", parents=[common], help="run the property suites; JSON summary")
    probe = verbs.add_parser("probe", parents=[common], help="simplicity or center probe; JSON report")
    probe.add_argument("kind", choices=["simplicity", "center"])
    return parser


def resolve_config(args):
    values = {}
    if args.config:
        values.update(load_config(args.config))
    for f in fields(SuiteConfig):
        given = getattr(args, f.name, None)
        if given is not None:
            values[f.name] = given
    config = SuiteConfig(**values)
    config.validate()
    return config


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        config = resolve_config(args)
        if args.verb == "classify":
            return cmd_classify(config)
        if args.verb == "hilbert":
            return cmd_hilbert(config)
        if args.verb == "verify":
            return cmd_verify(config)
        return cmd_probe(config, args.kind)
    except UsageError as exc:
        print(f"ncline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
