"""Command-line interface: ``qaffine <subcommand> ...``.

Exit codes: 0 success, 1 a verification returned false, 2 a computation
exceeded its budget, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .braid import braid_word_apply
from .cartan import RootSystemError, build_root_system, decompose_character, parse_type
from .fm import FMIncomplete, NotCertified, classify, fm_run, weyl_module_qchar
from .krsys import (
    a3_witness,
    fermionic_character,
    format_nu,
    kr_identity_verify,
    kr_qchar,
    kr_small_criterion,
    node_class,
    parse_nu,
    s_factor_terms,
    t_system_verify,
)
from .lweight import (
    dumps,
    format_latex,
    format_monomial,
    format_polynomial,
    le_order,
    monomial_to_json,
    parse_monomial,
    polynomial_to_json,
    restrict,
    root_factorization,
)
from .minaff import SkewShape, jt_character, minaff_branch, minaff_qchar, minaff_weight
from .sl2core import q_factorize, sl2_simple_qchar, sl2_weyl_qchar

EXIT_OK, EXIT_FALSE, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# helpers


def _root_system(args):
    try:
        if args.rank is None:
            series, rank = parse_type(args.type)
        else:
            series, rank = args.type.strip().upper(), args.rank
            if len(series) > 1:
                series, rank = parse_type(series)
        return build_root_system(series, rank)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _ints(text, what):
    text = (text or "").strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from exc


def _mono(text, rs=None):
    try:
        return parse_monomial(text, rs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _char_text(ch):
    if not ch:
        return "0"
    parts = []
    for mu, c in sorted(ch.items(), reverse=True):
        body = f"e({','.join(map(str, mu))})"
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append((sign, mag + body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(f" {sg} {b}" for sg, b in parts[1:])


def _char_json(ch):
    return [{"weight": list(mu), "coeff": c} for mu, c in sorted(ch.items(), reverse=True)]


def _char_latex(ch):
    if not ch:
        return "0"
    parts = []
    for mu, c in sorted(ch.items(), reverse=True):
        w = " + ".join(f"{x}\\omega_{{{i}}}" for i, x in enumerate(mu, 1) if x) or "0"
        parts.append((f"{c} " if c != 1 else "") + f"e({w})")
    return " + ".join(parts)


def _poly_block(p, rs, fmt):
    if fmt == "json":
        return polynomial_to_json(p, rs)
    if fmt == "latex":
        return format_latex(p, rs)
    return format_polynomial(p, rs)


def _emit(fmt, text_lines, payload, latex_lines=None):
    if fmt == "json":
        print(dumps(payload))
    elif fmt == "latex":
        for line in (latex_lines if latex_lines is not None else text_lines):
            print(line)
    else:
        for line in text_lines:
            print(line)


def _budget(args):
    return getattr(args, "max_monomials", None), getattr(args, "max_height", None)


def _decomp_text(dec):
    return " + ".join(f"{m}*V({','.join(map(str, mu))})" if m != 1 else f"V({','.join(map(str, mu))})" for mu, m in dec)


# ---------------------------------------------------------------------------
# subcommands


def cmd_fm(args):
    rs = _root_system(args)
    pi = _mono(args.hw, rs)
    mm, mh = _budget(args)
    try:
        res = fm_run(rs, pi, mm, mh)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    info = classify(res) if res.completed else None
    payload = {
        "type": rs.name,
        "highest": monomial_to_json(pi),
        "character": _poly_block(res.character, rs, "json"),
        "dominants": [monomial_to_json(m, c) for m, c in res.dominants],
        "status": res.status,
        "stats": res.stats,
        "certified": res.certified,
    }
    if info:
        payload["classification"] = info
    text = [
        f"type: {rs.name}",
        f"highest: {format_monomial(pi)}",
        f"status: {res.status}",
        f"monomials: {res.stats['monomials']}",
        f"max_height: {res.stats['max_height']}",
        f"dominants: {', '.join(f'{c}*{format_monomial(m)}' if c != 1 else format_monomial(m) for m, c in res.dominants)}",
    ]
    if info:
        text.append(f"special: {str(info['special']).lower()}")
        text.append(f"quasi_minuscule: {str(info['quasi_minuscule']).lower()}")
    text.append(f"character: {format_polynomial(res.character, rs)}")
    latex = [format_latex(res.character, rs)]
    _emit(args.format, text, payload, latex)
    return EXIT_OK if res.completed else EXIT_BUDGET


def cmd_sl2(args):
    text_in = args.factorize or args.qchar or args.weyl
    pi = _mono(text_in)
    if any(i != 1 for i in pi.nodes()) or any(e < 0 for _, e in pi.items):
        raise UsageError("sl2 commands need a dominant monomial on node 1")
    rs = build_root_system("A", 1)
    mode = "factorize" if args.factorize else "weyl" if args.weyl else "qchar"
    if mode == "factorize":
        fac = q_factorize(pi)
        payload = {"monomial": monomial_to_json(pi), "factors": [
            {"length": f.length, "center": f.center, "orbit": f.orbit} for f in fac]}
        text = [" ".join(f"[len={f.length} center={f.center}" + (f" orbit={f.orbit}]" if f.orbit != "0" else "]")
                         for f in fac) or "1"]
        _emit(args.format, text, payload)
        return EXIT_OK
    p = sl2_weyl_qchar(pi) if mode == "weyl" else sl2_simple_qchar(pi)
    payload = {"monomial": monomial_to_json(pi), "kind": mode, "character": _poly_block(p, rs, "json")}
    _emit(args.format, [format_polynomial(p, rs)], payload, [format_latex(p, rs)])
    return EXIT_OK


def cmd_braid(args):
    rs = _root_system(args)
    word = _ints(args.word, "--word")
    m = _mono(args.mono, rs)
    try:
        img = braid_word_apply(rs, word, m)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"type": rs.name, "word": word, "input": monomial_to_json(m), "image": monomial_to_json(img)}
    _emit(args.format, [format_monomial(img)], payload)
    return EXIT_OK


def _node_args(args, rs):
    if not 1 <= args.node <= rs.rank:
        raise UsageError(f"--node must lie in 1..{rs.rank}")
    if args.k < 0:
        raise UsageError("--k must be nonnegative")


def cmd_kr(args):
    rs = _root_system(args)
    _node_args(args, rs)
    mm, mh = _budget(args)
    p = kr_qchar(rs, args.node, args.k, args.shift, max_monomials=mm, max_height=mh)
    payload = {"type": rs.name, "node": args.node, "k": args.k, "shift": args.shift,
               "character": _poly_block(p, rs, "json"),
               "restriction": _char_json(restrict(rs, p))}
    text = [f"W^({args.node})_{args.k} at shift {args.shift} on {rs.name}: {len(p)} monomials",
            format_polynomial(p, rs)]
    _emit(args.format, text, payload, [format_latex(p, rs)])
    return EXIT_OK


def _prefetch(rs, args, jobs):
    mm, mh = _budget(args)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            list(pool.map(lambda t: kr_qchar(rs, t[0], t[1], max_monomials=mm, max_height=mh), jobs))


def cmd_tsys(args):
    rs = _root_system(args)
    _node_args(args, rs)
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    i, k = args.node, args.k
    _prefetch(rs, args, [(i, k), (i, k + 1), (i, k - 1)] + [(j, lv) for j, lv, _ in s_factor_terms(rs, i, k)])
    mm, mh = _budget(args)
    ok, lhs, rhs = t_system_verify(rs, i, k, args.shift, mm, mh)
    verdict = "EQUAL" if ok else "NOT EQUAL"
    payload = {"type": rs.name, "node": i, "k": k, "shift": args.shift, "equal": ok,
               "lhs_terms": len(lhs), "rhs_terms": len(rhs)}
    if args.show:
        payload["lhs"] = _poly_block(lhs, rs, "json")
        payload["rhs"] = _poly_block(rhs, rs, "json")
    text = [verdict, f"terms: {len(lhs)} = {len(rhs)}" if ok else f"terms: {len(lhs)} vs {len(rhs)}"]
    if args.show:
        text += [f"lhs: {format_polynomial(lhs, rs)}", f"rhs: {format_polynomial(rhs, rs)}"]
    _emit(args.format, text, payload)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_fermionic(args):
    rs = _root_system(args)
    try:
        nu = parse_nu(args.nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if any(not 1 <= i <= rs.rank for i, _ in nu):
        raise UsageError("nu node out of range")
    if args.verify:
        _prefetch(rs, args, sorted(nu))
        mm, mh = _budget(args)
        ok, lhs, rhs = kr_identity_verify(rs, nu, mm, mh)
        payload = {"type": rs.name, "nu": format_nu(nu), "equal": ok,
                   "lhs": _char_json(lhs), "rhs": _char_json(rhs)}
        text = ["EQUAL" if ok else "NOT EQUAL", f"lhs: {_char_text(lhs)}", f"rhs: {_char_text(rhs)}"]
        _emit(args.format, text, payload, [_char_latex(lhs), _char_latex(rhs)])
        return EXIT_OK if ok else EXIT_FALSE
    ch = fermionic_character(rs, nu)
    payload = {"type": rs.name, "nu": format_nu(nu), "character": _char_json(ch)}
    _emit(args.format, [_char_text(ch)], payload, [_char_latex(ch)])
    return EXIT_OK


def cmd_small(args):
    rs = _root_system(args)
    _node_args(args, rs)
    info = node_class(rs, args.node)
    small = kr_small_criterion(rs, args.node, args.k)
    k_i = "inf" if info["k_i"] == float("inf") else int(info["k_i"])
    payload = {"type": rs.name, "node": args.node, "k": args.k, "small": small,
               "extremal": info["extremal"], "trivalent": info["trivalent"], "k_i": k_i}
    text = ["SMALL" if small else "NOT SMALL",
            f"extremal: {str(info['extremal']).lower()}", f"trivalent: {str(info['trivalent']).lower()}", f"k_i: {k_i}"]
    if args.witness:
        if rs.name != "A3":
            raise UsageError("--witness is available for A3 only")
        lower, upper = a3_witness()
        ratio = lower / upper
        ok = le_order(rs, lower, upper)
        fac = root_factorization(rs, ratio)
        payload["witness"] = {"lower": monomial_to_json(lower), "upper": monomial_to_json(upper),
                              "below": ok, "ratio": monomial_to_json(ratio)}
        text.append(f"witness: {format_monomial(lower)} <= {format_monomial(upper)}: {str(ok).lower()}")
        text.append("ratio: " + "*".join(f"A[{i};{k}]^{e}" for (i, o, k), e in sorted(fac.items())))
    _emit(args.format, text, payload)
    return EXIT_OK


def cmd_minaff(args):
    rs = _root_system(args)
    lam = tuple(_ints(args.lam, "--lambda"))
    if len(lam) != rs.rank or any(x < 0 for x in lam):
        raise UsageError(f"--lambda needs {rs.rank} nonnegative integers")
    mm, mh = _budget(args)
    try:
        pi = minaff_weight(rs, lam, args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    char, cert, res = minaff_qchar(rs, lam, args.variant, mm, mh)
    payload = {"type": rs.name, "lambda": list(lam), "variant": args.variant, "highest": monomial_to_json(pi),
               "status": res.status, "certified": cert, "character": _poly_block(char, rs, "json")}
    text = [f"highest: {format_monomial(pi)}", f"status: {res.status}", f"certified: {str(cert).lower()}",
            f"monomials: {len(char)}"]
    if not res.completed:
        _emit(args.format, text, payload)
        return EXIT_BUDGET
    if args.branch:
        if cert:
            dec = minaff_branch(rs, lam, args.variant, mm, mh)
            payload["branch"] = [{"weight": list(mu), "mult": m} for mu, m in dec]
            text.append(f"branch: {_decomp_text(dec)}")
        else:
            payload["branch"] = None
            text.append("branch: not reported (uncertified)")
    else:
        text.append(f"character: {format_polynomial(char, rs)}")
    _emit(args.format, text, payload, [format_latex(char, rs)])
    return EXIT_OK


def cmd_jt(args):
    n = args.rank
    if n < 2:
        raise UsageError("--rank must be at least 2 for type B")
    try:
        shape = SkewShape(tuple(_ints(args.shape, "--shape")), tuple(_ints(args.mu, "--mu")))
        p = jt_character(n, shape, args.shift)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rs = build_root_system("B", n)
    payload = {"rank": n, "shape": list(shape.lam), "mu": list(shape.mu), "shift": args.shift,
               "terms": len(p), "character": _poly_block(p, rs, "json")}
    _emit(args.format, [f"terms: {len(p)}", format_polynomial(p, rs)], payload, [format_latex(p, rs)])
    return EXIT_OK


def cmd_branch(args):
    rs = _root_system(args)
    pi = _mono(args.hw, rs)
    mm, mh = _budget(args)
    if args.weyl:
        p = weyl_module_qchar(rs, pi)
        status = "completed"
    else:
        res = fm_run(rs, pi, mm, mh)
        if not res.completed:
            _emit(args.format, [f"status: {res.status}"], {"status": res.status, "stats": res.stats})
            return EXIT_BUDGET
        p, status = res.character, res.status
    dec = decompose_character(rs, restrict(rs, p))
    payload = {"type": rs.name, "highest": monomial_to_json(pi), "weyl": args.weyl, "status": status,
               "branch": [{"weight": list(mu), "mult": m} for mu, m in dec]}
    _emit(args.format, [_decomp_text(dec)], payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = _Parser(prog="qaffine", description="Exact q-character computations for quantum affine algebras.")
    p.add_argument("--version", action="version", version=f"qaffine {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, typed=True, budget=False):
        if typed:
            sp.add_argument("--type", required=True, help="series letter (with --rank) or a name like B2")
            sp.add_argument("--rank", type=int, default=None)
        if budget:
            sp.add_argument("--max-monomials", type=int, default=None)
            sp.add_argument("--max-height", type=int, default=None)
        sp.add_argument("--format", choices=["text", "json", "latex"], default="text")
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("fm", help="run the Frenkel-Mukhin algorithm")
    common(sp, budget=True)
    sp.add_argument("--hw", required=True)
    sp.set_defaults(func=cmd_fm)

    sp = sub.add_parser("sl2", help="sl2 q-factorization and q-characters")
    common(sp, typed=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--factorize", metavar="MONO")
    g.add_argument("--qchar", metavar="MONO")
    g.add_argument("--weyl", metavar="MONO")
    sp.set_defaults(func=cmd_sl2)

    sp = sub.add_parser("braid", help="apply a braid word to a monomial")
    common(sp)
    sp.add_argument("--word", default="")
    sp.add_argument("--mono", required=True)
    sp.set_defaults(func=cmd_braid)

    sp = sub.add_parser("kr", help="q-character of a KR module")
    common(sp, budget=True)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--shift", type=int, default=0)
    sp.set_defaults(func=cmd_kr)

    sp = sub.add_parser("tsys", help="verify a T-system relation")
    common(sp, budget=True)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--shift", type=int, default=0)
    sp.add_argument("--show", action="store_true", help="print both sides")
    sp.set_defaults(func=cmd_tsys)

    sp = sub.add_parser("fermionic", help="fermionic character, optionally checked against KR characters")
    common(sp, budget=True)
    sp.add_argument("--nu", required=True, help="entries i:k=v separated by commas")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_fermionic)

    sp = sub.add_parser("small", help="smallness criterion for KR modules")
    common(sp)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--witness", action="store_true", help="check the A3 comparison witness")
    sp.set_defaults(func=cmd_small)

    sp = sub.add_parser("minaff", help="minimal affinizations")
    common(sp, budget=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--variant", type=int, choices=[1, 2], default=1)
    sp.add_argument("--branch", action="store_true")
    sp.set_defaults(func=cmd_minaff)

    sp = sub.add_parser("jt", help="type B Jacobi-Trudi tableau character")
    common(sp, typed=False)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--shape", required=True)
    sp.add_argument("--mu", default="")
    sp.add_argument("--shift", type=int, default=0)
    sp.set_defaults(func=cmd_jt)

    sp = sub.add_parser("branch", help="classical decomposition of an FM or Weyl-module character")
    common(sp, budget=True)
    sp.add_argument("--hw", required=True)
    sp.add_argument("--weyl", action="store_true", help="use the Weyl module instead of the simple module")
    sp.set_defaults(func=cmd_branch)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError(parser.format_usage().strip())
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print(parser.format_usage().strip(), file=sys.stderr)
        return EXIT_USAGE
    except FMIncomplete as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotCertified as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
