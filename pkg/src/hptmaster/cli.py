"""Command-line front end: problem files, run reports, subcommands.

Problem files are JSON documents with exact rationals written as strings
("3", "-1/2"); reports are JSON with sorted keys so that identical inputs
produce byte-identical output.  Exit codes: 0 all checks pass, 1 a
verification failed, 2 the input could not be parsed or was inconsistent.
Wall-clock timing goes to stderr only, never into the report bytes.
"""

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from .bv import (BVData, GerstenhaberAlgebra, addendum_382_flat_identity,
                 bracket_from_generator, kahler_formality_check,
                 theorem_38_pipeline, validate_bv)
from .complexes import ChainComplex, build_contraction
from .deformation import morgan_example, wedge_of_spheres
from .dgla import DgLieAlgebra, validate_dgla
from .graded import GradedMap, GradedVectorSpace, ONE
from .transfer import transfer, verify_master
from .words import enumerate_words

SCHEMA = "hptmaster/1"
EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _frac(text, where):
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("%s: bad rational %r (%s)" % (where, text, exc))
    return value


def frac_str(value):
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def load_problem(path):
    """Parse a problem file into ("dgla", DgLieAlgebra) or ("bv", BVData)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    try:
        doc = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError("%s: line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg))
    if not isinstance(doc, dict) or "basis" not in doc:
        raise InputError("%s: missing 'basis' section" % path)
    digest = hashlib.sha256(raw).hexdigest()
    kind = "bv" if ("product" in doc or "delta" in doc) else "dgla"
    grading = doc.get("grading",
                      "cohomological" if kind == "bv" else "homological")
    if grading not in ("homological", "cohomological"):
        raise InputError("grading must be homological or cohomological")

    basis = []
    for entry in doc["basis"]:
        if (not isinstance(entry, (list, tuple)) or len(entry) != 2
                or not isinstance(entry[1], int)):
            raise InputError("basis entries must be [label, integer degree]")
        basis.append((str(entry[0]), entry[1]))
    if len({lab for lab, _ in basis}) != len(basis):
        raise InputError("duplicate basis labels")
    # internal conventions: dgLa homological, BV cohomological
    flip = ((kind == "dgla" and grading == "cohomological")
            or (kind == "bv" and grading == "homological"))
    if flip:
        basis = [(lab, -deg) for lab, deg in basis]
    space = GradedVectorSpace(basis)
    index = space.index

    def look(label, where):
        if label not in index:
            raise InputError("%s: unknown label %r" % (where, label))
        return index[label]

    def sparse_map(section, degree):
        entries = {}
        for pos, entry in enumerate(doc.get(section, [])):
            where = "%s[%d]" % (section, pos)
            if len(entry) != 3:
                raise InputError("%s: expected [src, dst, coefficient]"
                                 % where)
            src, dst = look(entry[0], where), look(entry[1], where)
            key = (dst, src)
            entries[key] = entries.get(key, Fraction(0)) + _frac(entry[2],
                                                                 where)
        try:
            return GradedMap(space, space, degree, entries)
        except ValueError as exc:
            raise InputError("%s: %s" % (section, exc))

    def bilinear_table(section, shift, symmetric):
        table = {}
        for pos, entry in enumerate(doc.get(section, [])):
            where = "%s[%d]" % (section, pos)
            if len(entry) != 4:
                raise InputError("%s: expected [x, y, dst, coefficient]"
                                 % where)
            i, j = look(entry[0], where), look(entry[1], where)
            k = look(entry[2], where)
            c = _frac(entry[3], where)
            if i > j:
                pi, pj = space.degrees[i] + shift, space.degrees[j] + shift
                if symmetric:
                    sign = -ONE if (pi % 2 and pj % 2) else ONE
                else:
                    sign = ONE if (pi % 2 and pj % 2) else -ONE
                i, j, c = j, i, sign * c
            val = table.setdefault((i, j), {})
            val[k] = val.get(k, Fraction(0)) + c
        return {key: {k: c for k, c in val.items() if c != 0}
                for key, val in table.items()
                if any(c != 0 for c in val.values())}

    if kind == "dgla":
        d = sparse_map("differential", -1)
        # for a degree-0 Lie bracket the plain degrees govern the swap sign
        bracket = bilinear_table("bracket", 0, symmetric=False)
        try:
            g = DgLieAlgebra(ChainComplex(space, d), bracket)
        except (ValueError, AssertionError) as exc:
            raise InputError(str(exc))
        return kind, g, digest

    d = sparse_map("differential", 1)
    delta = sparse_map("delta", -1)
    product = bilinear_table("product", 0, symmetric=True)
    unit_label = doc.get("unit")
    unit_index = look(unit_label, "unit") if unit_label is not None else 0
    try:
        plain = GerstenhaberAlgebra(space, product, d=d,
                                    unit_index=unit_index)
        if "bracket" in doc:
            bracket = bilinear_table("bracket", -1, symmetric=False)
        else:
            bracket = bracket_from_generator(plain, delta)
        algebra = GerstenhaberAlgebra(space, product, bracket, d=d,
                                      unit_index=unit_index)
        bv = BVData(algebra, delta)
    except (ValueError, AssertionError) as exc:
        raise InputError(str(exc))
    return kind, bv, digest


# -- report serialization ----------------------------------------------------

def _word_key(word):
    return "*".join(word) if word else "1"


def _sparse_labels(space, val):
    return {space.labels[i]: frac_str(c) for i, c in sorted(val.items())}


def serialize_transfer(result):
    coalg = result.coalg
    g = result.g
    tau = {}
    for wi in sorted({s for (_, s) in result.tau.hom.entries}):
        val = result.tau.hom.apply_basis(wi)
        if val:
            tau[_word_key(coalg.words[wi])] = _sparse_labels(g.space, val)
    brackets = {}
    for k, table in sorted(result.brackets.brackets.items()):
        out = {}
        for word, val in sorted(table.items()):
            if val:
                out[_word_key(word)] = _sparse_labels(
                    result.contraction.small.space, val)
        if out:
            brackets["l%d" % k] = out
    coder = {}
    for b, comp in sorted(result.D.components.items()):
        out = {}
        for word, val in sorted(comp.items()):
            if val:
                out[_word_key(word)] = {
                    coalg.gen_space.labels[i]: frac_str(c)
                    for i, c in sorted(val.items())}
        if out:
            coder["arity_%d" % b] = out
    return {
        "truncation": result.truncation,
        "homology_basis": [[lab, deg] for lab, deg
                           in result.contraction.small.space.basis],
        "tau": tau,
        "coderivation": coder,
        "brackets": brackets,
    }


def serialize_mc(mc):
    return {
        "coordinates": list(mc.coordinates),
        "truncation": mc.truncation,
        "equations": {target: {_word_key(m): frac_str(c)
                               for m, c in sorted(poly.items())}
                      for target, poly in sorted(mc.equations.items())},
    }


def _emit(report, args, started):
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    sys.stderr.write("elapsed: %.3fs\n" % (time.monotonic() - started))


# -- subcommands -------------------------------------------------------------

def cmd_validate(args, started):
    kind, obj, digest = load_problem(args.file)
    if kind == "dgla":
        verdict = validate_dgla(obj)
    else:
        verdict = validate_bv(obj)
    report = {"schema": SCHEMA, "command": "validate", "kind": kind,
              "input_digest": digest, "verdict": verdict}
    _emit(report, args, started)
    return EXIT_OK if verdict["passed"] else EXIT_VERIFY


def cmd_transfer(args, started):
    if args.max_word_length < 2:
        raise InputError("--max-word-length must be at least 2")
    kind, g, digest = load_problem(args.file)
    if kind != "dgla":
        raise InputError("transfer expects a dg Lie algebra problem file")
    verdict = validate_dgla(g)
    report = {"schema": SCHEMA, "command": "transfer",
              "input_digest": digest,
              "max_word_length": args.max_word_length,
              "valid_input": verdict["passed"]}
    if not verdict["passed"]:
        report["verdict"] = verdict
        _emit(report, args, started)
        return EXIT_VERIFY
    con = build_contraction(g.complex)
    result = transfer(g, con, args.max_word_length)
    report["result"] = serialize_transfer(result)
    code = EXIT_OK
    if args.check:
        master = verify_master(result)
        report["checks"] = {
            "master_equation": master["passed"],
            "failing_word_lengths": master.get("failing_lengths", []),
            "sh_lie": master["sh_lie"]["passed"],
        }
        if not master["passed"]:
            code = EXIT_VERIFY
    _emit(report, args, started)
    return code


def cmd_bv(args, started):
    kind, bv, digest = load_problem(args.file)
    if kind != "bv":
        raise InputError("bv expects a problem file with product/delta")
    report = {"schema": SCHEMA, "command": "bv", "input_digest": digest,
              "pipeline": args.pipeline,
              "max_word_length": args.max_word_length}
    verdict = validate_bv(bv)
    report["axioms"] = verdict
    if not verdict["passed"]:
        _emit(report, args, started)
        return EXIT_VERIFY
    try:
        predicate = kahler_formality_check(bv)
        report["formality_predicate"] = predicate
        if not predicate["passed"]:
            _emit(report, args, started)
            return EXIT_VERIFY
        if args.pipeline == "flat-unit":
            result, pipe = addendum_382_flat_identity(
                bv, args.max_word_length)
        else:
            result, pipe = theorem_38_pipeline(bv, args.max_word_length)
    except ValueError as exc:
        report["error"] = str(exc)
        _emit(report, args, started)
        return EXIT_VERIFY
    report["pipeline_report"] = _plain(pipe)
    report["result"] = serialize_transfer(result)
    _emit(report, args, started)
    return EXIT_OK if pipe["passed"] else EXIT_VERIFY


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return frac_str(obj)
    return obj


def _parse_theta(args, words):
    if args.theta is None and args.seed is None:
        return None
    if args.theta == "zero":
        return {}
    if args.seed is not None and args.theta is None:
        rng = random.Random(args.seed)
        theta = {}
        while not any(theta.values()):
            theta = {w: Fraction(rng.randrange(-3, 4)) for w in words}
        return theta
    try:
        with open(args.theta, "rb") as fh:
            doc = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (args.theta, exc))
    except json.JSONDecodeError as exc:
        raise InputError("%s: line %d column %d: %s"
                         % (args.theta, exc.lineno, exc.colno, exc.msg))
    theta = {}
    for key, value in doc.items():
        word = tuple(sorted(key.split("*")))
        if word not in words:
            raise InputError("theta: %r is not a parameter word" % key)
        theta[word] = _frac(value, "theta")
    return theta


def cmd_massey(args, started):
    try:
        dims = [int(part) for part in args.spheres.split(",") if part]
    except ValueError:
        raise InputError("--spheres expects comma-separated integers")
    if not dims or any(n < 2 for n in dims):
        raise InputError("sphere dimensions must be integers >= 2")
    report = {"schema": SCHEMA, "command": "massey", "spheres": dims,
              "order": args.order}
    if sorted(dims) == [3, 3, 12]:
        sH = GradedVectorSpace([("sa", -2), ("sb", -2), ("sc", -11)])
        words = {w for w in enumerate_words(sH, 5)
                 if len(w) == 5 and all(lab != "sc" for lab in w)}
        theta = _parse_theta(args, words)
        try:
            instance, morgan = morgan_example(args.order, theta=theta)
        except ValueError as exc:
            raise InputError(str(exc))
        report["report"] = _plain(morgan)
        report["theta"] = {
            _word_key(w): frac_str(sum(v.values()))
            for w, v in sorted(instance.theta.component.items())}
        report["mc_equations"] = serialize_mc(instance.mc)
        _emit(report, args, started)
        return EXIT_OK if morgan["sh_lie"] else EXIT_VERIFY
    cap = max(args.order, 1)
    try:
        lie = wedge_of_spheres(dims, cap)
    except ValueError as exc:
        raise InputError(str(exc))
    report["free_lie"] = {
        "experimental_odd_generators": lie.experimental,
        "dimensions_by_length": {str(l): lie.dimension(l)
                                 for l in range(1, cap + 1)},
        "dimensions_by_degree": {str(d): n for d, n
                                 in lie.dimensions_by_degree().items()},
    }
    _emit(report, args, started)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hptmaster",
        description="Exact homotopy transfer for dg Lie and BV algebras.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", help="check the axioms of a problem file")
    p.add_argument("file")
    p.add_argument("--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transfer", help="transfer onto homology")
    p.add_argument("file")
    p.add_argument("--max-word-length", type=int, default=4)
    p.add_argument("--check", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("bv", help="formality pipeline for BV problem files")
    p.add_argument("file")
    p.add_argument("--pipeline", choices=("full", "flat-unit"),
                   default="full")
    p.add_argument("--max-word-length", type=int, default=4)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bv)

    p = sub.add_parser("massey", help="wedge-of-spheres example family")
    p.add_argument("--spheres", default="3,3,12")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--theta", default=None,
                   help="'zero' or a JSON file of word -> rational")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output")
    p.set_defaults(func=cmd_massey)
    return parser


def main(argv=None):
    started = time.monotonic()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, started)
    except InputError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
