"""Command-line front end: ``moulcalc <group> <command> [options]``.

Exit codes: 0 on success (or a verified property), 2 when a check comes
out false (the report carries the counterexample), 1 on usage, input or
domain errors. JSON output has sorted keys and every scalar as a "p/q"
string, so runs with the same seed are byte-identical.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import arbor as A
from . import catalog as C
from . import localobj as L
from . import mould as Mo
from . import symmetry as S
from . import words as W
from .errors import MouldError, Resonant
from .mould import Alphabet

OK, USAGE, FALSE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fractions(text):
    if text is None:
        return None
    return [Fraction(x.strip()) for x in text.split(",") if x.strip()]


def _alphabet(args, letters=()):
    return Alphabet(letters, spectrum=_fractions(args.spectrum), multipliers=_fractions(args.multipliers))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise UsageError("%s is not valid JSON: %s" % (path, exc)) from exc


def _mould(args, name, path, letters=()):
    if path:
        return Mo.from_json(_load_json(path))
    if not name:
        raise UsageError("give a mould name or an input table")
    options = {}
    if name == "Sig":
        options = {"nvars": max(len(letters), 1), "degree": args.sig_degree}
        if args.multipliers:
            options["q"] = _fractions(args.multipliers)[0]
        else:
            raise UsageError("Sig needs --multipliers q")
    return C.make(name, _alphabet(args, letters), **options)


def _scalar(v):
    return v.to_json() if hasattr(v, "to_json") else str(v)


# --- mould ----------------------------------------------------------------


def cmd_mould_show(args):
    word = W.parse_word(args.word) if args.word is not None else None
    letters = W.parse_word(args.letters) if args.letters else tuple(dict.fromkeys(word or ()))
    M = _mould(args, args.name, args.input, letters)
    if args.export:
        if args.max_len is None:
            raise UsageError("--export needs --max-len")
        return OK, Mo.to_json(M, letters, args.max_len), None
    if word is None:
        raise UsageError("--word is required unless --export is given")
    value = M(word)
    return OK, {"mould": args.name or args.input, "value": _scalar(value), "word": W.format_word(word)}, str(value)


def cmd_mould_check(args):
    kind = args.symmetry or C.DECLARED_SYMMETRY.get(args.name)
    if kind is None:
        raise UsageError("no declared symmetry for %r; pass --symmetry" % args.name)
    if args.input:
        M = Mo.from_json(_load_json(args.input))
        report = S.check(kind, M, args.max_len)
    else:
        letter_kind = "var" if args.name == "Sig" else None
        if args.name == "Sig":
            build = lambda a: C.make("Sig", a, nvars=len(a.letters), degree=args.sig_degree)
        else:
            build = lambda a: C.make(args.name, a)
        report = S.generic_check(kind, build, args.max_len, samples=args.samples, seed=args.seed,
                                 letter_kind=letter_kind)
    data = report.to_json()
    data["mould"] = args.name or args.input
    data["seed"] = args.seed
    verdict = "holds" if report.holds else "FAILS"
    text = "%s %s up to length %d: %s" % (data["mould"], kind, args.max_len, verdict)
    if not report.holds:
        text += " (counterexample %s, residual %s)" % (data["counterexample"], data["residual"])
    return (OK if report.holds else FALSE), data, text


_UNARY = {
    "inverse": Mo.mul_inverse,
    "comp-inverse": Mo.comp_inverse,
    "exp": Mo.exp,
    "log": Mo.log,
    "nabla": Mo.nabla,
    "lang": Mo.lang,
    "retrograde": Mo.retrograde,
    "exp-nabla": Mo.exp_nabla,
}
_BINARY = {"add": Mo.add, "mul": Mo.mul, "compose": Mo.compose, "commutator": Mo.commutator}


def cmd_mould_op(args):
    word = W.parse_word(args.word) if args.word is not None else None
    letters = W.parse_word(args.letters) if args.letters else tuple(dict.fromkeys(word or ()))
    left = _mould(args, args.name, args.input, letters)
    if args.op in _UNARY:
        result = _UNARY[args.op](left)
    elif args.op in _BINARY:
        right = _mould(args, args.right, args.right_input, letters)
        result = _BINARY[args.op](left, right)
    else:
        raise UsageError("unknown operation %r" % args.op)
    if args.export:
        if args.max_len is None:
            raise UsageError("--export needs --max-len")
        return OK, Mo.to_json(result, letters, args.max_len), None
    if word is None:
        raise UsageError("--word is required unless --export is given")
    value = result(word)
    return OK, {"op": args.op, "value": _scalar(value), "word": W.format_word(word)}, str(value)


# --- field and diffeo -------------------------------------------------------


def _jets_text(label, jets):
    return "\n".join("%s_%d = %r" % (label, i, j) for i, j in enumerate(jets))


def cmd_field_linearize(args):
    X = L.field_from_json(_load_json(args.input))
    try:
        nf = L.linearize(X, args.degree)
    except Resonant as exc:
        return FALSE, {"resonant": W.format_word(exc.word) if _is_word(exc.word) else str(exc.word)}, str(exc)
    data = nf.to_json()
    lines = [_jets_text("h", nf.normalizer), _jets_text("Y", nf.conjugated)]
    code = OK
    if args.verify_oracle:
        try:
            oracle = L.oracle_normalize(X, args.degree)
            same = oracle.normalizer == nf.normalizer and oracle.conjugated == nf.conjugated
        except Resonant:
            same = False
        data["oracle_agrees"] = same
        lines.append("oracle agrees: %s" % same)
        code = OK if same else FALSE
    return code, data, "\n".join(lines)


def _is_word(w):
    return isinstance(w, tuple) and all(isinstance(x, tuple) for x in w)


def cmd_field_prenormal(args):
    X = L.field_from_json(_load_json(args.input))
    comps = L.prenormal_tram(X, args.degree)
    bad = L.nonresonant_monomials(X, comps)
    data = {
        "degree": args.degree,
        "nonresonant_terms": [{"direction": i, "exponents": list(m)} for i, m in bad],
        "prenormal": [c.to_json() for c in comps],
    }
    lines = [_jets_text("X_tram", comps), "non-resonant terms left: %d" % len(bad)]
    code = OK if not bad else FALSE
    if args.verify_lie:
        same = L.lie_prenormalize(X, args.degree) == comps
        data["lie_agrees"] = same
        lines.append("Lie-transform iteration agrees: %s" % same)
        code = code if same else FALSE
    return code, data, "\n".join(lines)


def cmd_field_scan(args):
    X = L.field_from_json(_load_json(args.input))
    found = L.resonance_scan(X, args.max_len)
    data = {"letters": [W.format_letter(x) for x in X.letters()], "max_len": args.max_len,
            "resonant": [W.format_word(w) for w in found]}
    text = "%d resonant words up to length %d\n%s" % (len(found), args.max_len,
                                                     "\n".join(W.format_word(w) for w in found))
    return OK, data, text.rstrip()


def cmd_diffeo_linearize(args):
    F = L.diffeo_from_json(_load_json(args.input), args.degree)
    try:
        nf = L.diffeo_linearize(F, args.degree)
    except Resonant as exc:
        return FALSE, {"resonant": str(exc.word)}, str(exc)
    data = nf.to_json()
    lines = [_jets_text("h", nf.normalizer), _jets_text("conj", nf.conjugated)]
    code = OK
    if args.verify_oracle:
        try:
            same = L.diffeo_oracle(F.source, args.degree) == nf.normalizer
        except Resonant:
            same = False
        data["oracle_agrees"] = same
        lines.append("oracle agrees: %s" % same)
        code = OK if same else FALSE
    return code, data, "\n".join(lines)


# --- arb --------------------------------------------------------------------


def cmd_arb_expand(args):
    w = W.parse_word(args.word)
    if not w or not all(isinstance(x, tuple) for x in w):
        raise UsageError("--word must be a non-empty word of degree vectors")
    rng = random.Random(args.seed)
    parts = {n: L.random_derivation(n, rng) for n in sorted(set(w))}
    nu = len(w[0])
    expansion = A.arb_expansion(w, parts)
    residual = A.nonzero_images(A.check_arb_identity(w, parts, args.degree), nu, args.degree)
    data = {
        "degree": args.degree,
        "forests": [{"forest": str(a), "proj": k, "successor": [s for s in a.successor]} for a, k in expansion],
        "residual_zero": not residual,
        "seed": args.seed,
        "word": W.format_word(w),
    }
    lines = ["%3d  %s" % (k, a) for a, k in expansion]
    lines.append("residual B_w - sum proj B_a on degree <= %d: %s" % (args.degree, "zero" if not residual else "NONZERO"))
    return (OK if not residual else FALSE), data, "\n".join(lines)


# --- driver -----------------------------------------------------------------


def build_parser():
    p = _Parser(prog="moulcalc", description="Exact mould calculus and normal forms.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report to this file")
    common.add_argument("--seed", type=int, default=0)
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def mould_opts(sp):
        sp.add_argument("--name", choices=C.NAMES)
        sp.add_argument("--input", help="mould table JSON")
        sp.add_argument("--word")
        sp.add_argument("--letters", help="letters for --export (default: letters of --word)")
        sp.add_argument("--max-len", type=int)
        sp.add_argument("--spectrum", help="comma-separated lambda for degree-vector letters")
        sp.add_argument("--multipliers", help="comma-separated q (e^lambda)")
        sp.add_argument("--sig-degree", type=int, default=6)
        sp.add_argument("--export", action="store_true")

    mould = groups.add_parser("mould").add_subparsers(dest="command", required=True, parser_class=_Parser)
    show = mould.add_parser("show", parents=[common])
    mould_opts(show)
    show.set_defaults(func=cmd_mould_show)
    chk = mould.add_parser("check", parents=[common])
    mould_opts(chk)
    chk.add_argument("--symmetry", choices=S.KINDS)
    chk.add_argument("--samples", type=int, default=S.TRIALS)
    chk.set_defaults(func=cmd_mould_check, max_len=4)
    op = mould.add_parser("op", parents=[common])
    mould_opts(op)
    op.add_argument("--op", required=True, choices=sorted(_UNARY) + sorted(_BINARY))
    op.add_argument("--right", choices=C.NAMES)
    op.add_argument("--right-input")
    op.set_defaults(func=cmd_mould_op)

    fld = groups.add_parser("field").add_subparsers(dest="command", required=True, parser_class=_Parser)
    lin = fld.add_parser("linearize", parents=[common])
    lin.add_argument("--input", required=True)
    lin.add_argument("--degree", type=int, default=5)
    lin.add_argument("--verify-oracle", action="store_true")
    lin.set_defaults(func=cmd_field_linearize)
    pre = fld.add_parser("prenormal", parents=[common])
    pre.add_argument("--input", required=True)
    pre.add_argument("--degree", type=int, default=4)
    pre.add_argument("--verify-lie", action="store_true")
    pre.set_defaults(func=cmd_field_prenormal)
    scan = fld.add_parser("scan", parents=[common])
    scan.add_argument("--input", required=True)
    scan.add_argument("--max-len", type=int, default=3)
    scan.set_defaults(func=cmd_field_scan)

    dif = groups.add_parser("diffeo").add_subparsers(dest="command", required=True, parser_class=_Parser)
    dlin = dif.add_parser("linearize", parents=[common])
    dlin.add_argument("--input", required=True)
    dlin.add_argument("--degree", type=int, default=4)
    dlin.add_argument("--verify-oracle", action="store_true")
    dlin.set_defaults(func=cmd_diffeo_linearize)

    arb = groups.add_parser("arb").add_subparsers(dest="command", required=True, parser_class=_Parser)
    exp = arb.add_parser("expand", parents=[common])
    exp.add_argument("--word", required=True)
    exp.add_argument("--degree", type=int, default=4)
    exp.set_defaults(func=cmd_arb_expand)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, data, text = args.func(args)
    except UsageError as exc:
        print("moulcalc: error: %s" % exc, file=stderr)
        return USAGE
    except MouldError as exc:
        print("moulcalc: %s: %s" % (type(exc).__name__, exc), file=stderr)
        return USAGE
    if args.format == "json" or text is None:
        out = json.dumps(data, sort_keys=True, indent=2)
    else:
        out = text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out, file=stdout)
    return code


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
