"""``halfdesign`` command-line front end.

Exit codes: 0 success, 2 obstruction proven, 3 search exhausted without a
witness, 4 infeasible at the configured caps, 1 usage or input errors.
The default worker count comes from ``HALFDESIGN_THREADS``.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io
from .designs import (
    DEFAULT_KMAX,
    DEFAULT_SEED,
    is_harmonic_T_design,
    local_search_half,
    search_index,
    sum_vector,
    witness_to_half,
)
from .golay_leech import construct_leech_half, construct_tight7, generate_golay, generate_leech_min
from .harmonic import characteristic_matrix
from .points import HalfSelection, PointSet
from .roots import (
    ObstructionCertificate,
    RootFamily,
    SearchTooLarge,
    brute_force_half_search,
    construct_half,
    generate_roots,
)
from .schemes import E8_HALF_SPEC, LEECH_HALF_SPEC, ClassSpec, SpecCoverageError, half_parity_obstruction, inner_distribution

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTION, EXIT_EXHAUSTED, EXIT_INFEASIBLE = 0, 1, 2, 3, 4
THREADS_ENV = "HALFDESIGN_THREADS"


class UsageError(Exception):
    pass


# targets ------------------------------------------------------------------------------


def cross_polytope(n: int) -> PointSet:
    rows = np.vstack([np.eye(n, dtype=np.int64), -np.eye(n, dtype=np.int64)])
    pairs = np.stack([np.arange(n), np.arange(n, 2 * n)], axis=1)
    return PointSet(rows, 1, pairs=pairs, name=f"cross{n}")


def canonical_target(tokens: list[str] | str) -> str:
    """``["E", "8"]`` / ``"e8"`` -> ``"E8"``; named sets are lower case."""
    text = "".join(tokens) if isinstance(tokens, list) else tokens
    text = text.replace("_", "").replace(" ", "")
    low = text.lower()
    if low in ("golay", "leech", "tight7"):
        return low
    if low.startswith("cross") and low[5:].isdigit():
        return low
    try:
        return str(RootFamily.parse(text))
    except (ValueError, IndexError):
        raise UsageError(f"invalid target {text!r}") from None


def load_target(name: str) -> PointSet:
    if name == "leech":
        return generate_leech_min()
    if name == "tight7":
        return construct_tight7()
    if name.startswith("cross"):
        return cross_polytope(int(name[5:]))
    if name == "golay":
        raise UsageError("golay is a code, not a point set")
    return generate_roots(name)


def _resolve(arg: list[str]) -> tuple[str, PointSet]:
    """A target name, or a path to a point-set file."""
    if len(arg) == 1 and Path(arg[0]).is_file():
        return arg[0], io.read_pointset(arg[0])
    name = canonical_target(arg)
    return name, load_target(name)


def load_selection(path: str) -> tuple[io.SelectionFile, HalfSelection]:
    sf = io.parse_selection(Path(path).read_text())
    if sf.base:
        base_path = Path(sf.base)
        if not base_path.is_absolute():
            base_path = Path(path).parent / base_path
        X = io.read_pointset(base_path)
    else:
        X = load_target(sf.target)
    return sf, HalfSelection.from_indices(X, sf.indices)


def parse_indices(text: str) -> list[int]:
    """``"1,2,4"`` or ``"1..7"`` or a mix."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError("empty index list")
    return out


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _emit(report: dict, args) -> None:
    report.setdefault("timings", {})["total_s"] = round(time.perf_counter() - args._t0, 3)
    text = io.dump_report(report, getattr(args, "report", None))
    print(text)


def _write_selection(sel: HalfSelection, target: str, out: str | None, base: str | None = None) -> None:
    if out:
        Path(out).write_text(io.format_selection(io.SelectionFile(target, sel.indices, base)))


# commands -------------------------------------------------------------------------------


def cmd_generate(args) -> int:
    name = canonical_target(args.target)
    if name == "golay":
        code = generate_golay()
        if args.out:
            Path(args.out).write_text(io.format_code(code.codewords))
        _emit({"command": "generate", "target": name, "count": len(code.codewords),
               "weight_distribution": code.weight_distribution()}, args)
        return EXIT_OK
    X = load_target(name)
    if args.out:
        io.write_pointset(X, args.out)
    print(f"{name}: {len(X)} points, norm2 {io.format_fraction(X.norm2)}", file=sys.stderr)
    _emit({"command": "generate", "target": name, "count": len(X), "norm2": X.norm2, "dim": X.dim}, args)
    return EXIT_OK


def _certificate_dict(c: ObstructionCertificate) -> dict:
    return {
        "kind": c.kind,
        "functional": list(c.functional),
        "modulus": c.modulus,
        "residue": c.residue,
        "odd_terms": c.odd_terms,
        "rho_value": c.rho_value,
        "note": c.note,
    }


def cmd_half(args) -> int:
    target, X = _resolve(args.target)
    base = str(Path(target).resolve()) if Path(target).is_file() else None
    report = {"command": "half", "target": target, "method": args.method, "seed": args.seed}
    sel = None
    status = EXIT_OK
    if args.method == "construct":
        if target == "leech":
            sel = construct_leech_half()
        elif target[0] in "ADE" and base is None:
            out = construct_half(target)
            if isinstance(out, ObstructionCertificate):
                report.update(status="obstruction", certificate=_certificate_dict(out))
                _emit(report, args)
                return EXIT_OBSTRUCTION
            sel = out
        else:
            raise UsageError(f"no closed-form construction for {target}; try --method local-search")
    elif args.method == "local-search":
        sel = local_search_half(X, seed=args.seed, max_restarts=args.max_restarts)
        if sel is None:
            status = EXIT_EXHAUSTED
    else:
        try:
            sel = brute_force_half_search(X, limit=args.limit)
        except SearchTooLarge as e:
            report.update(status="infeasible", reason=str(e))
            _emit(report, args)
            return EXIT_INFEASIBLE
        if sel is None:
            status = EXIT_EXHAUSTED
    if sel is None:
        report["status"] = "exhausted"
        _emit(report, args)
        return status
    s = sum_vector(sel)
    report.update(status="ok" if s.is_zero() else "nonzero-sum", count=len(sel), sum_vector=s, zero_sum=s.is_zero())
    _write_selection(sel, target if base is None else Path(target).stem, args.out, base)
    _emit(report, args)
    return EXIT_OK if s.is_zero() else EXIT_EXHAUSTED


def _input_set(path: str) -> tuple[str, PointSet | HalfSelection]:
    kind = io.file_kind(path)
    if kind == "selection":
        sf, sel = load_selection(path)
        return sf.target, sel
    if kind == "pointset":
        return Path(path).stem, io.read_pointset(path)
    raise UsageError(f"{path}: expected a selection or point-set file")


def cmd_verify(args) -> int:
    target, obj = _input_set(args.file)
    T = parse_indices(args.indices)
    rep = is_harmonic_T_design(obj, T, threads=args.threads)
    _emit({
        "command": "verify",
        "file": args.file,
        "target": target,
        "count": len(obj),
        "sum_vector": sum_vector(obj),
        "moments": {str(i): m for i, m in rep.moments.items()},
        "verdicts": {str(i): v for i, v in rep.verdicts.items()},
        "is_design": rep.is_design,
    }, args)
    return EXIT_OK


def _search_dict(r) -> dict:
    res = r.result
    return {
        "index": r.index,
        "route": r.route,
        "rows": r.rows,
        "cols": r.cols,
        "status": res.status,
        "rank": res.rank,
        "kernel_dim": res.kernel_dim,
        "kernel_dim_exact": res.kernel_exact,
        "enumerated": res.enumerated,
    }


_SEARCH_EXIT = {"found": EXIT_OK, "none": EXIT_EXHAUSTED, "infeasible": EXIT_INFEASIBLE}


def cmd_search_index(args) -> int:
    sf, sel = load_selection(args.file)
    cp = io.Checkpoints(args.checkpoint_dir)
    key = io.content_key("search-index", sel.base.numer, sel.indices, args.index, args.kmax, args.route)
    report = {"command": "search-index", "file": args.file, "target": sf.target, "kmax": args.kmax}
    cached = cp.load(key)
    if cached is not None:
        report.update(cached, checkpoint="hit")
    else:
        r = search_index(sel, args.index, args.kmax, args.threads, args.route)
        report.update(_search_dict(r))
        if r.result.witness is not None:
            other = witness_to_half(sel, r.result.witness)
            report["witness_indices"] = other.indices
            report["witness_sum_zero"] = sum_vector(other).is_zero()
            _write_selection(other, sf.target, args.out, sf.base)
        cp.save(key, {k: v for k, v in report.items() if k not in ("command", "file")})
    _emit(report, args)
    return _SEARCH_EXIT[report["status"]]


def default_spec(target: str, X: PointSet) -> ClassSpec:
    if target == "E8":
        return E8_HALF_SPEC
    if target == "leech":
        return LEECH_HALF_SPEC
    vals = sorted((v for v in inner_distribution(X) if v != -1), reverse=True)
    return ClassSpec((Fraction(1), *vals))


def cmd_scheme(args) -> int:
    target, X = _resolve(args.target)
    spec = ClassSpec.parse(args.spec) if args.spec else default_spec(target, X)
    mode = args.mode or ("sampled" if len(X) > 20000 else "full")
    cp = io.Checkpoints(args.checkpoint_dir)
    key = io.content_key("scheme", X.numer, str(spec), mode)
    report = {"command": "scheme", "target": target, "spec": [*spec.values], "mode": mode}
    cached = cp.load(key) if mode == "full" else None
    if cached is not None:
        report.update(cached, checkpoint="hit")
    else:
        try:
            from .schemes import intersection_numbers

            table = intersection_numbers(X, spec.with_antipode(), mode)
            witnesses = half_parity_obstruction(X, spec, mode)
        except SpecCoverageError as e:
            raise UsageError(str(e)) from None
        rows = table.rows()
        report["table"] = [{"i": i, "j": j, "k": k, "p": v, "well_defined": w} for i, j, k, v, w in rows]
        report["pairs_checked"] = {str(k): v for k, v in table.pairs_checked.items()}
        report["witnesses"] = [
            {"i": w.i, "j": w.j, "k": w.k, "value": w.value, "well_defined": w.well_defined} for w in witnesses
        ]
        if mode == "full":
            cp.save(key, {k: v for k, v in report.items() if k != "command"})
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["i", "j", "k", "p", "well_defined"])
            for row in report["table"]:
                wr.writerow([row["i"], row["j"], row["k"], row["p"], int(row["well_defined"])])
    _emit(report, args)
    return EXIT_OBSTRUCTION if report["witnesses"] else EXIT_OK


def cmd_matrix(args) -> int:
    _, obj = _input_set(args.file)
    H = characteristic_matrix(obj, args.index)
    M = H.rational_stack()
    lines = ["# halfdesign matrix", f"rows {M.rows}", f"cols {M.cols}", f"denom {M.denom}",
             f"parts {1 if H.irr is None else 2}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.numer]
    Path(args.out).write_text("\n".join(lines) + "\n")
    _emit({"command": "matrix", "file": args.file, "index": args.index, "rows": M.rows, "cols": M.cols,
           "denom": M.denom, "out": args.out}, args)
    return EXIT_OK


def table1_rows(k_max: int = DEFAULT_KMAX, seed: int = DEFAULT_SEED, threads: int = 1, log=None) -> list[dict]:
    """Existence / nonexistence / infeasible cells for odd indices of halves
    of E8, the tight 7-design and the Leech minimal vectors."""
    say = log or (lambda msg: None)
    plans = [
        ("E8", lambda: construct_half("E8"), (3, 5)),
        ("tight7", lambda: local_search_half(construct_tight7(), seed=seed), (3, 5)),
        ("leech", construct_leech_half, (3, 5, 7, 9)),
    ]
    out = []
    for name, make, odd in plans:
        t0 = time.perf_counter()
        sel = make()
        row = {"design": name, "existence": [], "nonexistence": [], "infeasible": [], "searches": []}
        if sel is not None and sum_vector(sel).is_zero():
            row["existence"].append(1)
        say(f"{name}: half ready, zero sum = {bool(row['existence'])}")
        for i in odd:
            r = search_index(sel, i, k_max, threads)
            d = _search_dict(r)
            row["searches"].append(d)
            cell = {"found": "existence", "none": "nonexistence", "infeasible": "infeasible"}[r.result.status]
            row[cell].append(i)
            say(f"{name} index {i}: {r.result.status} (route {r.route}, k {r.result.kernel_dim})")
        row["seconds"] = round(time.perf_counter() - t0, 2)
        out.append(row)
    return out


def cmd_table1(args) -> int:
    rows = table1_rows(args.kmax, args.seed, args.threads, log=lambda m: print(m, file=sys.stderr))
    print(f"{'design':<8} {'existence':<12} {'nonexistence':<14} infeasible", file=sys.stderr)
    for r in rows:
        fmt = lambda xs: ",".join(map(str, xs)) or "-"
        print(f"{r['design']:<8} {fmt(r['existence']):<12} {fmt(r['nonexistence']):<14} {fmt(r['infeasible'])}",
              file=sys.stderr)
    _emit({"command": "table1", "seed": args.seed, "kmax": args.kmax, "rows": rows}, args)
    return EXIT_OK


# parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=default_threads(), help=f"workers (default ${THREADS_ENV} or 1)")
    common.add_argument("--report", help="also write the JSON report here")

    p = argparse.ArgumentParser(prog="halfdesign", description="Zero-sum halves of antipodal spherical designs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a canonical point set (or the Golay code)")
    g.add_argument("target", nargs="+", help="A l | D n | E m | golay | leech | tight7 | cross n")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    h = sub.add_parser("half", parents=[common], help="build or refute a zero-sum half")
    h.add_argument("target", nargs="+")
    h.add_argument("--method", choices=("construct", "local-search", "brute-force"), default="construct")
    h.add_argument("--seed", type=int, default=DEFAULT_SEED)
    h.add_argument("--max-restarts", type=int, default=1000)
    h.add_argument("--limit", type=int, default=30, help="brute-force pair cap")
    h.add_argument("--out", help="selection file")
    h.set_defaults(func=cmd_half)

    v = sub.add_parser("verify", parents=[common], help="exact Gegenbauer moments of a selection or point set")
    v.add_argument("file")
    v.add_argument("--indices", default="1")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search-index", parents=[common], help="look for another half of harmonic index {i}")
    s.add_argument("file")
    s.add_argument("--index", type=int, required=True)
    s.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    s.add_argument("--route", choices=("auto", "harmonic", "gram", "row-subset"), default="auto")
    s.add_argument("--checkpoint-dir")
    s.add_argument("--out", help="selection file for a witness half")
    s.set_defaults(func=cmd_search_index)

    c = sub.add_parser("scheme", parents=[common], help="intersection numbers and parity witnesses")
    c.add_argument("target", nargs="+")
    c.add_argument("--spec", help="comma separated class values, 1 first")
    c.add_argument("--mode", choices=("full", "sampled"))
    c.add_argument("--csv")
    c.add_argument("--checkpoint-dir")
    c.set_defaults(func=cmd_scheme)

    m = sub.add_parser("matrix", parents=[common], help="export a characteristic matrix")
    m.add_argument("file")
    m.add_argument("--index", type=int, required=True)
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_matrix)

    t = sub.add_parser("table1", parents=[common], help="odd-index existence table for the three designs")
    t.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    t.set_defaults(func=cmd_table1)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except (UsageError, io.FormatError, OSError) as e:
        print(f"halfdesign: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
