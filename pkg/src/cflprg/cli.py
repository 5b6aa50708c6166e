"""Command-line entry point: ``cflprg <command> ...``.

Every report is a JSON object ``{"command", "config", "result"}``; ``--format
csv`` flattens the result instead. Exit codes: 0 success, 2 bad configuration,
3 violated identity or lemma, 4 resource cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks, npda_swap
from .adversaries import builtin_language, load_language
from .core import BitString, words_upto
from .discrepancy import (CaseParams, build_t_matrix, case_bound_check, rectangle_bound_check,
                          words_from_hex)
from .errors import (CapExceeded, ConfigurationError, DomainError, IdentityViolation, LemmaViolation,
                     ResourceError)
from .generator import gen_parse, generate, generate_case, invert, range_stats, verify_range_equals_ip
from .iplang import IP, gap_stat, ip_dense, ip_member, ip_parse
from .npda_swap import (CAP_FACTOR, FIXTURE_MACHINES, FIXTURE_TRANSDUCERS, Caps, Npda, build_swap_family,
                        npda_from_dict, range_acceptor, transduce, verify_swapping)
from .prg_eval import equivalence_report, fool_exact, fool_sampled

EXIT_OK, EXIT_CONFIG, EXIT_VIOLATION, EXIT_RESOURCE = 0, 2, 3, 4


def rational(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    return obj


BUILTIN_ADVERSARIES = ("all", "empty", "parity", "first-bit", "dyck", "ip")


def _load_adversary(ref: str):
    """Builtin name or path to an adversary JSON file."""
    if ref in BUILTIN_ADVERSARIES:
        return builtin_language(ref)
    return load_language(ref)


def _load_machine(ref: str) -> Npda:
    if ref in FIXTURE_MACHINES:
        return FIXTURE_MACHINES[ref]()
    if ref in FIXTURE_TRANSDUCERS:
        return FIXTURE_TRANSDUCERS[ref]()
    try:
        spec = json.loads(Path(ref).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read machine file {ref}: {exc}") from exc
    return npda_from_dict(spec)


def _load_words(path: str) -> frozenset:
    try:
        return words_from_hex(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise ConfigurationError(f"cannot read word set {path}: {exc}") from exc


def _word(text: str) -> BitString:
    try:
        return BitString(text)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _fool_result(rep) -> dict:
    out = {"n": rep.n, "mode": rep.mode, "p_gen": rep.p_gen, "p_unif": rep.p_unif, "ell": rep.ell}
    if rep.mode == "sampled":
        out.update(samples=rep.samples, seed=rep.seed, delta=rep.delta, radius=rep.radius)
    return out


# ---------------------------------------------------------------- commands

def cmd_gen(args):
    if args.action == "apply":
        w = _word(args.word)
        res = {"input": w, "output": generate(w)}
        if len(w) >= 3:
            p = gen_parse(w)
            res.update(case=generate_case(p), parse={"a": p.a, "x": p.x, "y": p.y, "b": p.b, "z": p.z})
        return res
    if args.action == "invert":
        return {"input": _word(args.word), "preimages": sorted(invert(_word(args.word)))}
    if args.action == "range":
        st = range_stats(args.n)
        return {"n": args.n, "range_size": st.range_size, "tau": st.tau, "doubled": st.collisions}
    if args.action == "verify-range":
        equal = verify_range_equals_ip(args.n)
        return {"n": args.n, "equal": equal, "size": range_stats(args.n).range_size,
                "regime": "short-input" if args.n < 3 else "parsed"}
    raise ConfigurationError(f"unknown gen action {args.action}")


def cmd_ip(args):
    if args.action == "check":
        w = _word(args.word)
        p = ip_parse(w)
        return {"word": w, "member": ip_member(w), "parse": {"a": p.a, "x": p.x, "y": p.y, "z": p.z}}
    return {"n": args.n, "closed_form": args.closed_form, "dense": ip_dense(args.n, args.closed_form)}


def cmd_gap(args):
    st = gap_stat(IP, _load_adversary(args.adversary), args.n)
    return {"n": args.n, "gap": st.value, "u1": st.u1, "u0": st.u0}


def cmd_fool(args):
    lang = _load_adversary(args.adversary)
    if args.samples:
        return _fool_result(fool_sampled(lang, args.n, args.samples, args.seed, args.delta))
    return _fool_result(fool_exact(lang, args.n))


def cmd_equiv(args):
    rep = equivalence_report(_load_adversary(args.adversary), args.n, strict=False)
    res = {"n": rep.n, "ell": rep.ell, "gap": rep.gap, "u1": rep.u1, "u0": rep.u0,
           "doubled_in_adversary": rep.doubled_in_a, "identity_rhs": rep.identity_rhs,
           "bound": rep.bound, "identity_ok": rep.identity_ok, "bound_ok": rep.bound_ok}
    if not (rep.identity_ok and rep.bound_ok):
        raise _Violation(res)
    return res


def cmd_disc(args):
    if args.action == "rect":
        chk = rectangle_bound_check(_load_words(args.a), _load_words(args.b), args.n)
        return {"n": args.n, "disc": chk.disc, "bound_squared": chk.bound_sq, "ok": chk.ok}
    p = CaseParams(args.n, args.j, _load_words(args.a), _load_words(args.b), args.case)
    chk = case_bound_check(p)
    return {"n": args.n, "j": args.j, "case": args.case, "t_size": int(build_t_matrix(p).sum()),
            "disc": chk.disc, "bound": p.bound, "ok": chk.ok}


def cmd_swap(args):
    m = _load_machine(args.machine)
    caps = Caps.default(args.n, args.cap_factor)
    fam = build_swap_family(m, args.n, args.j0, args.k, caps)
    res = {"machine": m.name, "n": args.n, "j0": args.j0, "k": args.k, "indices": len(fam.indices()),
           "a_pairs": sum(len(v) for v in fam.A.values()), "b_words": sum(len(v) for v in fam.B.values()),
           "truncated": fam.truncated}
    if args.action == "verify":
        rep = verify_swapping(fam, m, args.n)
        res.update(shape_ok=rep.shape_ok, coverage_ok=rep.coverage_ok, swap_ok=rep.swap_ok,
                   counterexamples=[list(map(str, c)) for c in rep.counterexamples])
        if not rep.ok:
            raise _Violation(res)
    else:
        res["family"] = [{"index": list(e), "A": sorted(map(list, fam.A[e])), "B": sorted(fam.B[e])}
                         for e in fam.indices()]
    return res


def cmd_range_npda(args):
    t = _load_machine(args.transducer)
    acc = range_acceptor(t)
    image = sorted({o for x in words_upto(args.max_len) for o in transduce(t, x) if len(o) <= args.max_len})
    accepted = sorted(y for y in words_upto(args.max_len) if acc.accepts(y))
    res = {"transducer": t.name, "max_len": args.max_len, "acceptor_states": len(acc.states),
           "range_size": len(image), "accepted_size": len(accepted), "equal": image == accepted}
    if image != accepted:
        raise _Violation(res)
    return res


def cmd_report(args):
    rows = checks.run_all(args.max_n)
    res = {"max_n": args.max_n, "rows": rows, "all_ok": all(r["ok"] for r in rows)}
    if not res["all_ok"]:
        raise _Violation(res)
    return res


class _Violation(Exception):
    def __init__(self, result):
        super().__init__("violation")
        self.result = result


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cflprg", description="Exact finite checks for the inner-product generator and its adversaries.")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--cap-factor", type=int, default=CAP_FACTOR,
                        help="NPDA step/stack cap multiplier (env CFLPRG_CAP_FACTOR)")
    adv_help = f"builtin ({', '.join(BUILTIN_ADVERSARIES)}) or adversary JSON file"
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="apply, invert or enumerate the generator")
    gsub = gen.add_subparsers(dest="action", required=True)
    for name in ("apply", "invert"):
        gsub.add_parser(name).add_argument("word")
    for name in ("range", "verify-range"):
        gsub.add_parser(name).add_argument("--n", type=int, required=True)
    gen.set_defaults(func=cmd_gen)

    ip = sub.add_parser("ip", help="membership and density of IP")
    isub = ip.add_subparsers(dest="action", required=True)
    isub.add_parser("check").add_argument("word")
    dense = isub.add_parser("dense")
    dense.add_argument("--n", type=int, required=True)
    dense.add_argument("--closed-form", action="store_true")
    ip.set_defaults(func=cmd_ip)

    gap = sub.add_parser("gap", help="gap statistic of IP against an adversary")
    gap.add_argument("--adversary", required=True, help=adv_help)
    gap.add_argument("--n", type=int, required=True)
    gap.set_defaults(func=cmd_gap)

    fool = sub.add_parser("fool", help="fooling statistic, exact or sampled")
    fool.add_argument("--adversary", required=True, help=adv_help)
    fool.add_argument("--n", type=int, required=True)
    fool.add_argument("--samples", type=int, default=0)
    fool.add_argument("--seed", type=int, default=0)
    fool.add_argument("--delta", type=float, default=0.05)
    fool.set_defaults(func=cmd_fool)

    equiv = sub.add_parser("equiv", help="fooling statistic vs gap statistic identity")
    equiv.add_argument("--adversary", required=True, help=adv_help)
    equiv.add_argument("--n", type=int, required=True)
    equiv.set_defaults(func=cmd_equiv)

    disc = sub.add_parser("disc", help="inner-product discrepancy checks")
    dsub = disc.add_subparsers(dest="action", required=True)
    tset = dsub.add_parser("t-set")
    tset.add_argument("--case", type=int, choices=(1, 2), required=True)
    tset.add_argument("--j", type=int, required=True)
    rect = dsub.add_parser("rect")
    for p in (tset, rect):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", required=True, help="word set file (hex, see README)")
        p.add_argument("--b", required=True)
    disc.set_defaults(func=cmd_disc)

    swap = sub.add_parser("swap", help="swapping-property families of an NPDA")
    ssub = swap.add_subparsers(dest="action", required=True)
    for name in ("build", "verify"):
        p = ssub.add_parser(name)
        p.add_argument("--machine", required=True, help="NPDA JSON file or fixture name")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--j0", type=int, default=2)
        p.add_argument("--k", type=int, default=4)
    swap.set_defaults(func=cmd_swap)

    rn = sub.add_parser("range-npda", help="range acceptor of a transducer vs its enumerated range")
    rn.add_argument("--transducer", required=True, help="transducer JSON file or fixture name")
    rn.add_argument("--max-len", type=int, default=10)
    rn.set_defaults(func=cmd_range_npda)

    report = sub.add_parser("report", help="run every finite check")
    rsub = report.add_subparsers(dest="action", required=True)
    rsub.add_parser("all").add_argument("--max-n", type=int, default=11)
    report.set_defaults(func=cmd_report)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(command, config, result, fmt, out):
    if fmt == "json":
        out.write(json.dumps({"command": command, "config": config, "result": _jsonable(result)}, indent=2))
        out.write("\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    res = _jsonable(result)
    if isinstance(res, dict) and isinstance(res.get("rows"), list):
        writer.writerow(["check", "ok", "detail"])
        for row in res["rows"]:
            writer.writerow([row["check"], row["ok"], json.dumps(row["detail"], sort_keys=True)])
    else:
        writer.writerow(["key", "value"])
        for k, v in config.items():
            writer.writerow([f"config.{k}", v])
        for k, v in res.items():
            if isinstance(v, dict) and set(v) == {"num", "den"}:
                v = f"{v['num']}/{v['den']}"
            elif isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True)
            writer.writerow([k, v])
    out.write(buf.getvalue())


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(filter(None, [args.command, getattr(args, "action", None)]))
    config = _config(args)
    npda_swap.CAP_FACTOR = args.cap_factor
    try:
        result = args.func(args)
    except _Violation as v:
        _emit(command, config, v.result, args.format, out)
        return EXIT_VIOLATION
    except (IdentityViolation, LemmaViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CapExceeded, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(command, config, result, args.format, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
