"""Command-line front end: ``torswide <command> [options]``.

Exit status: 0 success, 2 invalid input, 3 budget refusal, 4 a checked
identity failed (the counterexample goes to stderr).
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import BudgetExceeded, InvalidInput, InvariantViolation, SymbolicOnly
from .kronecker import (
    cosilting_catalog,
    hom_to_quasisimples,
    ringel_brick,
    ringel_ses_check,
    verify_theorem_c,
)
from .quiverrep import Quiver, cyclic_quiver, hom_dim, is_indecomposable, kronecker_quiver
from .torsops import (
    DEFAULT_HOM_BUDGET,
    DEFAULT_SUBSET_BUDGET,
    SubcatSet,
    TorsionPair,
    enumerate_torsion_classes,
    is_torsion_class,
    is_torsionfree_class,
    perp,
)
from .tubes import classify_wide_in_tube, tube_universe
from .universe import Universe, load_universe
from .widetors import alpha_tilde, beta_tilde, enumerate_wide, hasse, semibrick_of
from . import suites

EXIT_INVALID, EXIT_BUDGET, EXIT_VIOLATION = 2, 3, 4
BUILTINS = ("a2", "a3", "d4", "kronecker", "tube-2", "tube-3")
GOLDEN = {"a2": "a2_tors.ndjson", "a3": "a3_tors.ndjson", "d4": "d4_tors.ndjson"}


@dataclass
class Config:
    builtin: str | None
    quiver_path: str | None
    prime: int
    bound: int | None
    hom_budget: int
    subset_budget: int
    cache: str | None
    output: str | None
    fmt: str

    def __post_init__(self):
        if self.hom_budget <= 0 or self.subset_budget <= 0:
            raise InvalidInput("budgets must be positive")
        if self.builtin and self.quiver_path:
            raise InvalidInput("give either --builtin or --quiver, not both")
        if self.builtin and self.builtin not in BUILTINS:
            raise InvalidInput(f"unknown builtin {self.builtin!r}; choose from {', '.join(BUILTINS)}")


def data_path(*parts: str):
    return resources.files("torswide").joinpath("data", *parts)


def _quiver_spec(cfg: Config) -> dict:
    if cfg.builtin:
        return json.loads(data_path("quivers", f"{cfg.builtin}.json").read_text())
    if cfg.quiver_path:
        try:
            return json.loads(Path(cfg.quiver_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read quiver file: {exc}") from None
    raise InvalidInput("this command needs --builtin NAME or --quiver PATH")


def load(cfg: Config) -> Universe:
    spec = _quiver_spec(cfg)
    q = Quiver.from_json(spec, prime=cfg.prime)
    if not q.name:
        q.name = Path(cfg.quiver_path).stem if cfg.quiver_path else ""
    family = spec.get("family", "dynkin")
    params = dict(spec.get("params", {}))
    if cfg.bound is not None:
        params["bound"] = cfg.bound
    if family == "dynkin":
        params = {}
    return load_universe(q, family, params, cfg.cache)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{name} must be an integer, got {raw!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _ndjson(rows) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def _parse_class(u: Universe, text: str) -> SubcatSet:
    text = text.strip()
    if text in ("", "0", "none"):
        return SubcatSet(u)
    if text == "all":
        return SubcatSet.everything(u)
    labels, depth, cur = [], 0, ""
    for ch in text:
        depth += ch in "(["
        depth -= ch in ")]"
        if ch in ",;" and depth == 0:
            labels.append(cur)
            cur = ""
        else:
            cur += ch
    labels.append(cur)
    return SubcatSet.from_labels(u, [t.strip() for t in labels if t.strip()])


# ---------------------------------------------------------------------------
# commands; each returns (text, exit status)


def cmd_indecs(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    rows = [{"label": u.labels[k], "dim": list(o.dim), "brick": u.hom(k, k) == 1}
            for k, o in enumerate(u.objects)]
    if cfg.fmt == "text":
        return "".join(f"{r['label']}\t{r['dim']}\n" for r in rows), 0
    return _dump({"universe": u.quiver.name, "prime": u.p, "params": u.params, "indecomposables": rows}), 0


def _tors_rows(u: Universe, classes: list[SubcatSet]) -> list[dict]:
    return [{"id": k, "size": len(t), "torsion": t.labels(), "torsionfree": perp(t, (0,), "right").labels()}
            for k, t in enumerate(classes)]


def cmd_tors(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    classes = enumerate_torsion_classes(u, args.method, cfg.subset_budget)
    if cfg.fmt == "text":
        lines = [f"{len(classes)} torsion classes"] + [" ".join(t.labels()) or "0" for t in classes]
        return "\n".join(lines) + "\n", 0
    out = _ndjson(_tors_rows(u, classes))
    if args.bless:
        if cfg.builtin not in GOLDEN:
            raise InvalidInput("--bless is only defined for the a2, a3 and d4 builtins")
        _bless(GOLDEN[cfg.builtin], out)
    return out, 0


def _bless(name: str, text: str) -> None:
    target = Path(str(data_path("golden", name)))
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


def cmd_hasse(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    lattice = hasse(enumerate_torsion_classes(u, "cover_walk"))
    fmt = "json" if args.json else (args.hasse_format or ("json" if cfg.fmt == "text" else cfg.fmt))
    if fmt == "dot":
        return lattice.to_dot(), 0
    return _dump(lattice.to_json()), 0


def cmd_alpha(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    t = _parse_class(u, args.cls)
    if not is_torsion_class(t):
        raise InvalidInput(f"{t.labels()} is not a torsion class")
    a = alpha_tilde(t, None, cfg.hom_budget)
    return _dump({"torsion": t.labels(), "alpha": a.labels(),
                  "simples": semibrick_of(a, cfg.hom_budget).labels()}), 0


def cmd_beta(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    f = _parse_class(u, args.cls)
    if not is_torsionfree_class(f):
        raise InvalidInput(f"{f.labels()} is not a torsionfree class")
    b = beta_tilde(TorsionPair(perp(f, (0,), "left"), f), None, cfg.hom_budget)
    return _dump({"torsionfree": f.labels(), "beta": b.labels(),
                  "simples": semibrick_of(b, cfg.hom_budget).labels()}), 0


def cmd_wide(cfg: Config, args) -> tuple[str, int]:
    u = load(cfg)
    wides = enumerate_wide(u, cfg.hom_budget)
    rows = [{"id": k, "members": w.labels(), "simples": semibrick_of(w, cfg.hom_budget).labels()}
            for k, w in enumerate(wides)]
    if cfg.fmt == "text":
        return f"{len(wides)} wide subcategories\n" + "".join(" ".join(r["members"]) + "\n" for r in rows), 0
    return _ndjson(rows), 0


def cmd_kronecker(cfg: Config, args) -> tuple[str, int]:
    if args.sub == "catalog":
        cat = cosilting_catalog(cfg.prime, args.display_bound)
        if cfg.fmt == "text" and not args.json:
            return "".join(f"{c['descriptor']}\t{'widely generated' if c['widely_generated'] else 'not widely generated'}\n"
                           for c in cat), 0
        return _dump({"prime": cfg.prime, "pairs": cat}), 0
    if args.sub == "verify-theorem-c":
        bound = cfg.bound if cfg.bound is not None else 6
        u = load_universe(kronecker_quiver(cfg.prime), "kronecker", {"bound": bound}, cfg.cache)
        rep = verify_theorem_c(bound, cfg.prime, u)
        out = _dump(rep)
        if args.bless:
            _bless("theorem_c.json", out)
        return out, 0 if rep["ok"] else EXIT_VIOLATION
    # ringel
    if args.set is None:
        rep = suites.ringel_report(args.max_size, cfg.prime)
        return _dump(rep), 0 if rep["status"] == "pass" else EXIT_VIOLATION
    try:
        values = sorted(int(v) for v in args.set.split(",") if v.strip())
    except ValueError:
        raise InvalidInput(f"--set expects comma-separated integers, got {args.set!r}") from None
    b = ringel_brick(values, cfg.prime)
    sess = [ringel_ses_check(values, list(sub), cfg.prime)
            for r in range(len(values) + 1) for sub in itertools.combinations(values, r)]
    rep = {"I": values, "prime": cfg.prime, "dim": list(b.dim), "indecomposable": is_indecomposable(b),
           "end_dim": hom_dim(b, b), "hom_to_quasisimples": hom_to_quasisimples(values, cfg.prime),
           "sequences": sess, "ok": all(s["ok"] for s in sess)}
    return _dump(rep), 0 if rep["ok"] else EXIT_VIOLATION


def cmd_tube(cfg: Config, args) -> tuple[str, int]:
    if cfg.cache:
        u = load_universe(cyclic_quiver(args.rank, cfg.prime), "tube", {"bound": args.length}, cfg.cache)
    else:
        u = tube_universe(args.rank, args.length, cfg.prime)
    rep = classify_wide_in_tube(args.rank, args.length, cfg.hom_budget, u)
    out = _dump(rep)
    if rep["violations"]:
        first = rep["violations"][0]
        raise InvariantViolation(f"{len(rep['violations'])} wide subcategories break the tube shape check",
                                 counterexample={"first": first, "report": rep})
    return out, 0


def cmd_verify(cfg: Config, args) -> tuple[str, int]:
    name = args.suite
    opts = {"prime": cfg.prime, "pairs": args.pairs}
    u = None
    if name == "tube-shape":
        opts["rank"] = args.rank
        opts["bound"] = cfg.bound if cfg.bound is not None else 2 * args.rank
    elif name == "kronecker-tables":
        opts["bound"] = cfg.bound if cfg.bound is not None else 6
        u = load_universe(kronecker_quiver(cfg.prime), "kronecker", {"bound": opts["bound"]}, cfg.cache)
    elif name == "ringel":
        opts["max_size"] = args.max_size
    elif name in suites.SUITES:
        u = load(cfg)
    rep = suites.run_suite(name, u, cfg.hom_budget, **opts)
    out = _dump(rep)
    if rep["status"] != "pass":
        raise InvariantViolation(f"suite {name} failed", counterexample=rep["counterexample"] | {"report": rep})
    return out, 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--builtin", choices=BUILTINS, default=argparse.SUPPRESS)
    g.add_argument("--quiver", dest="quiver_path", metavar="PATH", default=argparse.SUPPRESS)
    g.add_argument("--prime", type=int, default=argparse.SUPPRESS)
    g.add_argument("--bound", type=int, default=argparse.SUPPRESS)
    g.add_argument("--hom-budget", type=int, default=argparse.SUPPRESS)
    g.add_argument("--subset-budget", type=int, default=argparse.SUPPRESS)
    g.add_argument("--cache", metavar="FILE", default=argparse.SUPPRESS)
    g.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS)
    g.add_argument("--output", "-o", metavar="PATH", default=argparse.SUPPRESS)
    g.add_argument("--format", dest="fmt", choices=("json", "dot", "text"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="torswide", parents=[common],
                                description="Torsion classes, wide subcategories and their finite checks.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("indecs", parents=[common], help="list the indecomposables of the universe")
    s = sub.add_parser("tors", parents=[common], help="enumerate torsion classes")
    s.add_argument("--method", choices=("cover_walk", "closure_scan"), default="cover_walk")
    s.add_argument("--bless", action="store_true", help="rewrite the shipped golden file")
    s = sub.add_parser("hasse", parents=[common], help="Hasse quiver of torsion classes")
    s.add_argument("--json", action="store_true")
    s.set_defaults(hasse_format=None)
    for name in ("alpha", "beta"):
        s = sub.add_parser(name, parents=[common],
                           help=f"{name}~ of a {'torsion' if name == 'alpha' else 'torsionfree'} class")
        s.add_argument("cls", metavar="CLASS", help="comma-separated member labels, '0' or 'all'")
    sub.add_parser("wide", parents=[common], help="enumerate wide subcategories")
    s = sub.add_parser("kronecker", parents=[common], help="Kronecker catalogue and table checks")
    s.add_argument("sub", choices=("catalog", "verify-theorem-c", "ringel"))
    s.add_argument("--json", action="store_true")
    s.add_argument("--display-bound", type=int, default=3)
    s.add_argument("--set", default=None, help="comma-separated points of F_p for P(I)")
    s.add_argument("--max-size", type=int, default=4)
    s.add_argument("--bless", action="store_true")
    s = sub.add_parser("tube", parents=[common], help="wide subcategories of a truncated tube")
    s.add_argument("rank", type=int)
    s.add_argument("length", type=int)
    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", choices=suites.SUITES)
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--pairs", type=int, default=500)
    s.add_argument("--max-size", type=int, default=4)
    return p


COMMANDS = {"indecs": cmd_indecs, "tors": cmd_tors, "hasse": cmd_hasse, "alpha": cmd_alpha,
            "beta": cmd_beta, "wide": cmd_wide, "kronecker": cmd_kronecker, "tube": cmd_tube,
            "verify": cmd_verify}


def make_config(args) -> Config:
    a = vars(args)
    cache = None if a.get("no_cache") else a.get("cache", os.environ.get("TORSWIDE_CACHE") or None)
    return Config(
        builtin=a.get("builtin"),
        quiver_path=a.get("quiver_path"),
        prime=a.get("prime", _env_int("TORSWIDE_PRIME", 5)),
        bound=a.get("bound"),
        hom_budget=a.get("hom_budget", _env_int("TORSWIDE_HOM_BUDGET", DEFAULT_HOM_BUDGET)),
        subset_budget=a.get("subset_budget", _env_int("TORSWIDE_SUBSET_BUDGET", DEFAULT_SUBSET_BUDGET)),
        cache=cache,
        output=a.get("output"),
        fmt=a.get("fmt", "json"),
    )


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "hasse" and getattr(args, "fmt", None) in ("dot", "json"):
        args.hasse_format = args.fmt
    try:
        cfg = make_config(args)
        text, status = COMMANDS[args.command](cfg, args)
    except (InvalidInput, SymbolicOnly) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        print(json.dumps(exc.counterexample, indent=2, sort_keys=True, default=str), file=sys.stderr)
        return EXIT_VIOLATION
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the interpreter's flush at exit
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
