"""Command-line front end: ``spinlab <group> <command> [options]``.

Every command prints a JSON report to stdout (or to ``--report``) holding
the tolerance, the seed and the result.  Commands that produce a matrix
or bundle write it to ``--out`` when given and embed it in the report
otherwise.

Exit codes: 0 when the operation succeeds or the checked property holds,
1 when a verification fails (the report names the error kind), 2 for
usage errors and malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .braid import (
    DIMENSION_CAP,
    BraidWord,
    braid_relations_hold,
    braid_trace,
    build_rep,
    link_conditions,
    link_normalization,
    verify_braid_relations,
)
from .construct import (
    EquitablePartition,
    build_V,
    build_W,
    dim2_classify,
    extract_pair_from_V,
    induced_space,
    quotient_algebra,
    verify_NV_structure,
    verify_NW_structure,
)
from .core import Tolerance, kron, require_invertible, require_schur_invertible
from .errors import BadParameters, OrderMismatch, SpinlabError
from .jones import (
    JonesPair,
    check_jones_pair,
    from_four_weight,
    spin_index,
    symmetrize_even,
    symmetrize_odd,
    to_four_weight,
)
from .modular import (
    ModularInvarianceProblem,
    check_modular_invariance,
    check_twisted,
    imprimitive_index_sets,
    search_four_weight,
    solve_modular_invariance,
    solve_twisted,
    theta_images_from_pairing,
)
from .nomura import (
    check_formal_self_duality,
    duality_pairing,
    is_bose_mesner,
    nomura_algebra,
    scheme_from_space,
    theta_on_schur_basis,
    type_ii_nomura,
)
from .scheme import HYPER_CAP, TRIPLE_CAP, hyper_duality_check, triple_span_check, triply_regular_check, validate_scheme
from .spin import (
    cyclic_spin_model,
    hadamard_spin_model,
    potts,
    sylvester_hadamard,
    verify_spin_model,
    w_in_nomura_check,
)

log = logging.getLogger(__name__)

INPUT_ERRORS = (io.FormatError, OrderMismatch, BadParameters, FileNotFoundError, IsADirectoryError, ValueError)


class UsageError(Exception):
    """A flag is missing or has an unusable value."""


class Outcome:
    """What a command hands back: a result dict, a pass flag and an optional artifact."""

    def __init__(self, result: dict, ok: bool = True, artifact=None):
        self.result = result
        self.ok = ok
        self.artifact = artifact


# --------------------------------------------------------------------------
# argument helpers

def parse_number(text: str) -> complex:
    """``2``, ``-2``, ``1+2j`` or ``re,im``."""
    text = text.strip()
    if "," in text:
        re_part, im_part = text.split(",", 1)
        return complex(float(re_part), float(im_part))
    try:
        return complex(text.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot read {text!r} as a number") from exc


def parse_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected integers, got {text!r}") from exc


def parse_classes(text: str) -> list[list[int]]:
    return [parse_ints(part) for part in text.split(";") if part.strip()]


def tolerance_from(args) -> Tolerance:
    tol = Tolerance.from_env()
    if args.tol is not None:
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        tol = Tolerance(abs_eps=args.tol, rel_eps=args.tol, rank_eps=tol.rank_eps)
    return tol


def need(args, name: str):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


def load_pair(args, tol: Tolerance) -> JonesPair:
    sign = -1 if getattr(args, "d_sign", "+") == "-" else 1
    if getattr(args, "pair", None):
        A, B, d = io.read_pair_bundle(args.pair)
        if d is not None:
            sign = -1 if d.real < 0 else 1
    else:
        A = io.read_matrix(need(args, "a"))
        require_invertible(A, "A", tol)
        B = io.read_matrix(need(args, "b"))
    return check_jones_pair(A, B, tol, d_sign=sign)


def pair_summary(jp: JonesPair) -> dict:
    return {"n": jp.n, "one_sided": jp.one_sided, "two_sided": jp.two_sided, "invertible": jp.invertible,
            "d": jp.d, "a": jp.a, "residual": jp.residual}


def report_dict(rep) -> dict:
    out = rep.as_dict()
    out["values"] = {k: v for k, v in out["values"].items() if not isinstance(v, np.ndarray) or v.ndim <= 2}
    return out


def _scheme_from_file(path, tol: Tolerance):
    mats, pairing = io.read_scheme_bundle(path)
    return validate_scheme(mats, tol), pairing


# --------------------------------------------------------------------------
# nomura

def cmd_nomura(args, tol: Tolerance) -> Outcome:
    A = io.read_matrix(need(args, "a"))
    B = io.read_matrix(need(args, "b"))
    if args.schur_inverse_b:
        require_schur_invertible(B, "B", tol)
        B = 1.0 / B
    nd = nomura_algebra(A, B, tol)
    flags = nd.space.flags(tol).as_dict()
    result = {"dim": nd.dim, "flags": flags, "bose_mesner": is_bose_mesner(nd.space, tol).ok}
    return Outcome(result, True, io.nomura_bundle(nd))


# --------------------------------------------------------------------------
# jones

def cmd_jones_check(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    return Outcome(pair_summary(jp), jp.two_sided)


def cmd_jones_to4wt(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    model = to_four_weight(jp, tol)
    return Outcome({"n": jp.n, "d": model.d, "a": model.a}, True, io.four_weight_bundle(model))


def cmd_jones_from4wt(args, tol: Tolerance) -> Outcome:
    model = io.read_four_weight_bundle(need(args, "model"))
    jp = from_four_weight(model, tol)
    return Outcome(pair_summary(jp), True, io.pair_bundle(jp.A, jp.B, jp.d))


def cmd_jones_symmetrize(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    if args.even:
        out, Q = symmetrize_even(jp, tol)
        result = {"kind": "even", "P": Q}
    else:
        out, D1 = symmetrize_odd(jp, tol)
        result = {"kind": "odd", "D1": np.diag(D1)}
    result.update(pair_summary(out))
    return Outcome(result, out.two_sided, io.pair_bundle(out.A, out.B, out.d))


def cmd_jones_index(args, tol: Tolerance) -> Outcome:
    W, d = io.read_spin_bundle(need(args, "w"))
    verify_spin_model(W, d, tol)
    rep = spin_index(W, tol)
    return Outcome({"index": rep.index, "P": rep.P, "D": np.diag(rep.D)})


# --------------------------------------------------------------------------
# spin

def cmd_spin_verify(args, tol: Tolerance) -> Outcome:
    W, d = io.read_spin_bundle(need(args, "w"))
    if args.d is not None:
        d = parse_number(args.d)
    model = verify_spin_model(W, d, tol)
    member = w_in_nomura_check(W, tol)
    result = {"n": model.n, "d": model.d, "a": model.a, "residual": model.residual,
              "symmetric": bool(np.abs(W - W.T).max() <= tol.abs_eps),
              "w_in_nomura": member.in_algebra}
    return Outcome(result)


def _abelian_model(orders: list[int], tol: Tolerance):
    if not orders:
        raise UsageError("--orders needs at least one group order")
    parts = [cyclic_spin_model(m, tol=tol) for m in orders]
    W = kron(*(p.W for p in parts))
    d = complex(np.prod([p.d for p in parts]))
    return verify_spin_model(W, d, tol)


def cmd_spin_make(args, tol: Tolerance) -> Outcome:
    family = args.family
    if family == "potts":
        model = potts(need(args, "n"), args.root_choice, tol=tol)
    elif family == "cyclic":
        model = cyclic_spin_model(need(args, "n"), tol=tol)
    elif family == "abelian":
        model = _abelian_model(parse_ints(need(args, "orders")), tol)
    else:
        H = io.read_matrix(args.h) if args.h else sylvester_hadamard(need(args, "n"))
        model = hadamard_spin_model(H, args.eps, tol=tol)
    result = {"family": family, "n": model.n, "d": model.d, "a": model.a, "residual": model.residual}
    return Outcome(result, True, io.spin_bundle(model.W, model.d, model.a))


# --------------------------------------------------------------------------
# construct

def cmd_construct_w(args, tol: Tolerance) -> Outcome:
    wb = build_W(load_pair(args, tol), tol)
    rep = verify_NW_structure(wb, tol)
    return Outcome(report_dict(rep), rep.ok, io.matrix_to_json(wb.W))


def cmd_construct_v(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    vb = build_V(jp, tol)
    rep = verify_NV_structure(vb, tol)
    if args.scheme_out:
        sd = validate_scheme(scheme_from_space(vb.nomura.space, tol).schur_basis, tol)
        pairing = duality_pairing(sd, theta_on_schur_basis(vb.nomura, sd), tol)
        io.write_json(args.scheme_out, io.scheme_bundle(sd.schur_basis, pairing))
    return Outcome(report_dict(rep), rep.ok, io.spin_bundle(vb.V, 2 * vb.d))


def cmd_construct_extract(args, tol: Tolerance) -> Outcome:
    V, loop = io.read_spin_bundle(need(args, "v"))
    if args.d is not None:
        d = parse_number(args.d)
    elif loop is not None:
        d = loop / 2
    else:
        raise UsageError("--d is required when the V file carries no loop variable")
    jp = extract_pair_from_V(V, d, tol, variant=args.variant)
    return Outcome(pair_summary(jp), jp.invertible, io.pair_bundle(jp.A, jp.B, jp.d))


def _partition(args, n: int) -> EquitablePartition:
    if args.classes:
        return EquitablePartition.from_classes(parse_classes(args.classes), n)
    if args.four_blocks:
        if n % 4:
            raise UsageError("--four-blocks needs an order divisible by 4")
        return EquitablePartition.pairing(n // 4, [0, n // 2])
    if n % 2:
        raise UsageError("--classes is required for odd orders")
    return EquitablePartition.pairing(n // 2)


def cmd_construct_quotient(args, tol: Tolerance) -> Outcome:
    A = io.read_matrix(need(args, "a"))
    space = type_ii_nomura(A, tol).space
    part = _partition(args, space.n)
    q = quotient_algebra(space, part, tol)
    bm = is_bose_mesner(q, tol)
    return Outcome({"dim": space.dim, "quotient_dim": q.dim, "quotient_order": q.n, "bose_mesner": bm.ok,
                    "failing": list(bm.failing)}, bm.ok)


def cmd_construct_induce(args, tol: Tolerance) -> Outcome:
    A = io.read_matrix(need(args, "a"))
    space = type_ii_nomura(A, tol).space
    Y = parse_ints(need(args, "subset"))
    if any(y < 0 or y >= space.n for y in Y):
        raise UsageError(f"--subset entries must lie in 0..{space.n - 1}")
    sub, ok = induced_space(space, Y, tol)
    return Outcome({"dim": space.dim, "induced_dim": sub.dim, "bose_mesner": ok}, ok)


def cmd_construct_dim2(args, tol: Tolerance) -> Outcome:
    rep = dim2_classify(load_pair(args, tol), tol)
    result = {"n": rep.n, "values": list(rep.values), "k": rep.k, "lambda": rep.lam, "design": rep.design_ok,
              "N": rep.N}
    ok = rep.design_ok
    if rep.two_graph is not None:
        tg = rep.two_graph
        result["two_graph"] = {k: tg[k] for k in ("c", "scale", "plus_minus_one", "quadratic_minimal_polynomial",
                                                  "minimal_polynomial")}
        ok = ok and tg["plus_minus_one"] and tg["quadratic_minimal_polynomial"]
    return Outcome(result, ok)


# --------------------------------------------------------------------------
# modular invariance

def _problem(args, tol: Tolerance, twisted: bool = False) -> tuple[ModularInvarianceProblem, object]:
    sd, pairing = _scheme_from_file(need(args, "scheme"), tol)
    if pairing is None:
        raise UsageError("the scheme file has no theta_pairing; the modular equations need a duality")
    d = parse_number(need(args, "d"))
    index_sets = imprimitive_index_sets(sd, tol) if twisted else None
    theta = theta_images_from_pairing(sd, pairing)
    return ModularInvarianceProblem.from_scheme(sd, theta, d, index_sets, tol), sd


def cmd_mi_check(args, tol: Tolerance) -> Outcome:
    p, _ = _problem(args, tol, args.twisted)
    t = io.vector_from_json(io.read_json(need(args, "weights")))
    res = check_twisted(p, t, tol) if args.twisted else check_modular_invariance(p, t, tol)
    scale = max(1.0, abs(t[0] * p.d ** 3))
    return Outcome({"residual": res, "twisted": args.twisted}, res <= tol.angle_eps * scale)


def cmd_mi_solve(args, tol: Tolerance) -> Outcome:
    p, _ = _problem(args, tol, args.twisted)
    if args.twisted:
        sols = [v for v, _ in solve_twisted(p, tol, args.starts, args.seed)]
    else:
        sols = solve_modular_invariance(p, tol, args.starts, args.seed)
    rows = [{"t": io.vector_to_json(s.t), "residual": s.residual} for s in sols]
    return Outcome({"count": len(rows)}, True, {"solutions": rows})


def cmd_mi_search(args, tol: Tolerance) -> Outcome:
    sd, pairing = _scheme_from_file(need(args, "scheme"), tol)
    d = parse_number(need(args, "d"))
    theta = nomura = None
    if args.pair:
        nomura = build_V(load_pair(args, tol), tol, verify=False).nomura
    elif pairing is not None:
        theta = theta_images_from_pairing(sd, pairing)
    else:
        raise UsageError("give a scheme file with theta_pairing or --pair for the source pair")
    pairs, slog = search_four_weight(sd, d, theta_images=theta, nomura=nomura, tol=tol,
                                     starts=args.starts, seed=args.seed)
    result = {"found": len(pairs), "solutions": slog.solutions, "index_sets": slog.index_sets,
              "pairing": slog.pairing, "log": [list(row) for row in slog.outcomes]}
    artifact = {"pairs": [io.pair_bundle(jp.A, jp.B, jp.d) for jp in pairs]}
    return Outcome(result, bool(pairs), artifact)


# --------------------------------------------------------------------------
# braid

def cmd_braid_relations(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    rep = verify_braid_relations(build_rep(jp.A, jp.B, args.strands, args.cap, tol), tol)
    return Outcome(report_dict(rep), braid_relations_hold(rep))


def cmd_braid_trace(args, tol: Tolerance) -> Outcome:
    jp = load_pair(args, tol)
    word = BraidWord.parse(need(args, "word"), args.strands)
    rep = build_rep(jp.A, jp.B, args.strands, args.cap, tol)
    value = braid_trace(rep, word, normalize=args.normalize)
    result = {"trace": value, "normalized": args.normalize, "strands": args.strands, "word": list(word.letters)}
    if args.normalize:
        result["link_conditions"] = link_conditions(*link_normalization(jp.A, jp.B), tol).ok
    return Outcome(result)


# --------------------------------------------------------------------------
# scheme

def cmd_scheme_validate(args, tol: Tolerance) -> Outcome:
    sd, pairing = _scheme_from_file(need(args, "scheme"), tol)
    result = {"n": sd.n, "classes": sd.classes, "P": sd.P, "transpose": list(sd.T),
              "symmetric": all(i == j for i, j in enumerate(sd.T))}
    if pairing is not None:
        theta = theta_images_from_pairing(sd, pairing)
        dual = check_formal_self_duality(sd, theta, tol)
        result["duality"] = {"ok": dual.ok, "residual": dual.residual}
        return Outcome(result, dual.ok)
    return Outcome(result)


def cmd_scheme_triply(args, tol: Tolerance) -> Outcome:
    sd, _ = _scheme_from_file(need(args, "scheme"), tol)
    tr = triply_regular_check(sd, args.cap)
    result = {"n": sd.n, "triply_regular": tr.regular,
              "witness": list(tr.witness) if tr.witness else None,
              "types": [list(t) for t in tr.types]}
    if args.span:
        rep = triple_span_check(sd, tol, cap=args.span_cap)
        result["span_check"] = {"ok": rep.ok, "residual": rep.worst_residual()}
    return Outcome(result, tr.regular)


def cmd_scheme_hyperdual(args, tol: Tolerance) -> Outcome:
    W, d = io.read_spin_bundle(need(args, "w"))
    if args.d is not None:
        d = parse_number(args.d)
    rep = hyper_duality_check(W, d, cap=args.cap, tol=tol)
    return Outcome(report_dict(rep), rep.ok)


# --------------------------------------------------------------------------
# parser

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute and relative tolerance (default: SPINLAB_TOL or 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized starts and probes (default 0)")
    common.add_argument("--out", help="write the produced matrix or bundle here")
    common.add_argument("--report", help="write the JSON report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return common


def _pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", help="pair bundle {A, B[, d]}")
    p.add_argument("--a", help="matrix file for A")
    p.add_argument("--b", help="matrix file for B")
    p.add_argument("--d-sign", choices=["+", "-"], default="+", help="sign of d = +-sqrt(n)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="spinlab", description="Nomura algebras, Jones pairs and spin models.")
    groups = parser.add_subparsers(dest="group", required=True)

    p = groups.add_parser("nomura", parents=[common], help="Nomura algebra of a pair")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--schur-inverse-b", action="store_true", help="use the Schur inverse of B")
    p.set_defaults(func=cmd_nomura)

    jones = groups.add_parser("jones", help="Jones pairs").add_subparsers(dest="command", required=True)
    for name, func, doc in (("check", cmd_jones_check, "certify a pair"),
                            ("to4wt", cmd_jones_to4wt, "four-weight model of an invertible pair"),
                            ("symmetrize", cmd_jones_symmetrize, "gauge to a symmetric A (or B with --even)")):
        p = jones.add_parser(name, parents=[common], help=doc)
        _pair_args(p)
        p.set_defaults(func=func)
        if name == "symmetrize":
            p.add_argument("--even", action="store_true")
    p = jones.add_parser("from4wt", parents=[common], help="pair of a four-weight model")
    p.add_argument("--model")
    p.set_defaults(func=cmd_jones_from4wt)
    p = jones.add_parser("index", parents=[common], help="index of a spin model")
    p.add_argument("--w")
    p.set_defaults(func=cmd_jones_index)

    spin = groups.add_parser("spin", help="spin models").add_subparsers(dest="command", required=True)
    p = spin.add_parser("verify", parents=[common], help="check conditions (I)-(III)")
    p.add_argument("--w")
    p.add_argument("--d")
    p.set_defaults(func=cmd_spin_verify)
    p = spin.add_parser("make", parents=[common], help="build a model from a family")
    p.add_argument("family", choices=["potts", "cyclic", "hadamard", "abelian"])
    p.add_argument("--n", type=int)
    p.add_argument("--root-choice", type=int, default=0)
    p.add_argument("--orders", help="cyclic group orders for the abelian family, e.g. '3 5'")
    p.add_argument("--h", help="Hadamard matrix file (default: Sylvester of order --n)")
    p.add_argument("--eps", type=int, choices=[1, -1], default=1)
    p.set_defaults(func=cmd_spin_make)

    con = groups.add_parser("construct", help="W and V constructions").add_subparsers(dest="command", required=True)
    for name, func in (("w", cmd_construct_w), ("v", cmd_construct_v), ("dim2", cmd_construct_dim2)):
        p = con.add_parser(name, parents=[common])
        _pair_args(p)
        p.set_defaults(func=func)
        if name == "v":
            p.add_argument("--scheme-out", help="write the scheme of N_V with its duality pairing")
    p = con.add_parser("extract", parents=[common], help="recover (A, B) from V or V'")
    p.add_argument("--v")
    p.add_argument("--d", help="loop variable of the pair (default: half that stored with V)")
    p.add_argument("--variant", choices=["V", "V'"], default="V")
    p.set_defaults(func=cmd_construct_extract)
    p = con.add_parser("quotient", parents=[common], help="quotient of N_A by an equitable partition")
    p.add_argument("--a")
    p.add_argument("--classes", help="classes separated by ';', e.g. '0 2;1 3'")
    p.add_argument("--four-blocks", action="store_true", help="pair i with i + n/4 inside each half")
    p.set_defaults(func=cmd_construct_quotient)
    p = con.add_parser("induce", parents=[common], help="principal submatrices of N_A")
    p.add_argument("--a")
    p.add_argument("--subset")
    p.set_defaults(func=cmd_construct_induce)

    mi = groups.add_parser("mi", help="modular invariance").add_subparsers(dest="command", required=True)
    for name, func in (("check", cmd_mi_check), ("solve", cmd_mi_solve), ("search", cmd_mi_search)):
        p = mi.add_parser(name, parents=[common])
        p.add_argument("--scheme")
        p.add_argument("--d")
        p.set_defaults(func=func)
        if name != "search":
            p.add_argument("--twisted", action="store_true", help="couple with the equation for V'")
        if name != "check":
            p.add_argument("--starts", type=int, default=None, help="Newton starts per seed family")
        if name == "check":
            p.add_argument("--weights", help="JSON list of weights")
        if name == "search":
            _pair_args(p)

    braid = groups.add_parser("braid", help="braid representations").add_subparsers(dest="command", required=True)
    for name, func in (("relations", cmd_braid_relations), ("trace", cmd_braid_trace)):
        p = braid.add_parser(name, parents=[common])
        _pair_args(p)
        p.add_argument("--strands", type=int, required=True)
        p.add_argument("--cap", type=int, default=DIMENSION_CAP)
        p.set_defaults(func=func)
        if name == "trace":
            p.add_argument("--word")
            p.add_argument("--normalize", action="store_true")

    sch = groups.add_parser("scheme", help="association schemes").add_subparsers(dest="command", required=True)
    p = sch.add_parser("validate", parents=[common])
    p.add_argument("--scheme")
    p.set_defaults(func=cmd_scheme_validate)
    p = sch.add_parser("triply", parents=[common])
    p.add_argument("--scheme")
    p.add_argument("--cap", type=int, default=TRIPLE_CAP)
    p.add_argument("--span", action="store_true", help="also run the operator span check")
    p.add_argument("--span-cap", type=int, default=16)
    p.set_defaults(func=cmd_scheme_triply)
    p = sch.add_parser("hyperdual", parents=[common])
    p.add_argument("--w")
    p.add_argument("--d")
    p.add_argument("--cap", type=int, default=HYPER_CAP)
    p.set_defaults(func=cmd_scheme_hyperdual)
    return parser


def _emit(report: dict, path: str | None) -> None:
    text = io.dumps(report)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    command = " ".join(x for x in (args.group, getattr(args, "command", None)) if x)
    report: dict = {"command": command, "seed": args.seed}
    try:
        tol = tolerance_from(args)
        report["tolerance"] = tol.as_dict()
        outcome = args.func(args, tol)
    except UsageError as exc:
        print(f"spinlab: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        report.setdefault("tolerance", None)
        report.update(ok=False, error={"kind": type(exc).__name__, "message": str(exc)})
        print(f"spinlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit(report, args.report)
        return 2
    except SpinlabError as exc:
        report.update(ok=False, error={"kind": exc.kind, "message": str(exc)})
        _emit(report, args.report)
        return 1
    report["ok"] = bool(outcome.ok)
    report["result"] = outcome.result
    if outcome.artifact is not None:
        if args.out:
            io.write_json(args.out, outcome.artifact)
            report["output"] = args.out
        else:
            report["artifact"] = outcome.artifact
    _emit(report, args.report)
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
