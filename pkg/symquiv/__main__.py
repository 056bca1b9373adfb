import argparse
import json
import logging
import sys

import numpy as np
import pandas as pd

from symquiv import catalog, decomposition, oracle
from symquiv.config import Direction, Flavor, SymQuivConfig, TameKind, configure_logging
from symquiv.errors import MalformedInputError, NonCanonicalError, SymQuivError
from symquiv.files import dim_from, quiver_to_dict, read_quiver, read_representation, vector_to_dict
from symquiv.linalg import format_rational
from symquiv.quiver_core import build_canonical, classify, defect, euler_form
from symquiv.reflections import apply_sequence, coxeter_dim, is_canonical, reduce_to_canonical, region_of, tube_data

logger = logging.getLogger("symquiv")


class Result:
    def __init__(self, data, text, failed=False):
        self.data = data
        self.text = text
        self.failed = failed


def _table(rows, columns):
    if not rows:
        return "(empty)"
    return pd.DataFrame(rows, columns=columns).to_string(index=False)


def load_quiver(args):
    if args.quiver:
        return read_quiver(args.quiver)
    if not args.type:
        raise MalformedInputError("give --quiver FILE or --type with its parameters")
    kind = TameKind(args.type)
    if kind in (TameKind.D10, TameKind.D01):
        if args.m is None:
            raise MalformedInputError(f"{kind.label} needs --m")
        return build_canonical(kind, args.m)
    if kind is TameKind.A00:
        return build_canonical(kind, args.k)
    return build_canonical(kind, args.k, args.l)


def _dim(args, qs, attribute="dim"):
    value = getattr(args, attribute)
    if value is None:
        raise MalformedInputError(f"--{attribute.replace('_', '-')} is required")
    return dim_from(value, qs)


def canonical_with_dim(args, need_dim=True):
    qs = load_quiver(args)
    d = _dim(args, qs) if need_dim or args.dim is not None else None
    if is_canonical(qs):
        return qs, d
    sequence, _ = reduce_to_canonical(qs, args.max_states)
    logger.info("working on the canonical orientation reached by %s", list(sequence))
    return apply_sequence(qs, sequence, d)


def cmd_quiver_build(args):
    qs = load_quiver(args)
    data = quiver_to_dict(qs)
    rows = [(a.id, a.tail, a.head, qs.sigma_arrow(a.id), _part(qs, a.id)) for a in qs.arrows]
    return Result(data, f"{classify(qs)}\n" + _table(rows, ["arrow", "tail", "head", "σ", "part"]))


def _part(qs, arrow_id):
    if arrow_id in qs.fixed_arrows:
        return "fixed"
    return "plus" if arrow_id in qs.plus_arrows else "minus"


def cmd_quiver_classify(args):
    tame = classify(load_quiver(args))
    data = {"kind": tame.kind.value, "params": list(tame.params), "type": list(tame.type_tuple or ())}
    return Result(data, str(tame) + (f"  (s,t,k,l) = {tame.type_tuple}" if tame.type_tuple else ""))


def cmd_quiver_validate(args):
    qs = load_quiver(args)
    rows = [(x, qs.sigma(x), "fixed" if x in qs.fixed_vertices else "plus" if x in qs.plus_vertices else "minus")
            for x in qs.vertices]
    data = {"valid": True, "canonical": is_canonical(qs), "type": str(classify(qs))}
    return Result(data, f"valid, canonical={data['canonical']}\n" + _table(rows, ["vertex", "σ", "part"]))


def cmd_dim_euler(args):
    qs = load_quiver(args)
    value = euler_form(qs, _dim(args, qs), _dim(args, qs, "other"))
    return Result({"euler": int(value)}, str(value))


def cmd_dim_defect(args):
    qs = load_quiver(args)
    d = _dim(args, qs)
    value = defect(qs, d)
    region = region_of(qs, d)
    return Result({"defect": int(value), "region": region.value}, f"{value} ({region.value})")


def cmd_dim_coxeter(args):
    qs = load_quiver(args)
    image = coxeter_dim(qs, _dim(args, qs), Direction(args.direction))
    return Result(vector_to_dict(image), image.format())


def cmd_dim_delta(args):
    qs = load_quiver(args)
    image = qs.delta(_dim(args, qs))
    return Result(vector_to_dict(image), image.format())


def cmd_tube_data(args):
    qs, _ = canonical_with_dim(args, need_dim=False)
    tubes = tube_data(qs)
    rows, data = [], []
    for tube in tubes.tubes:
        entry = {"name": tube.name, "image": tube.image, "roots": [], "sigma_I": list(tube.sigma_index)}
        for i, root in enumerate(tube.roots, start=1):
            part = "fixed" if i in tube.fixed else "plus" if i in tube.plus else "minus"
            rows.append((tube.name, i, root.format(), tube.sigma_I(i), part))
            entry["roots"].append(vector_to_dict(root))
        data.append(entry)
    text = f"h = {tubes.h.format()}\n" + _table(rows, ["tube", "i", "e_i", "σ_I(i)", "part"])
    return Result({"h": vector_to_dict(tubes.h), "tubes": data}, text)


def cmd_reduce_canonical(args):
    qs = load_quiver(args)
    sequence, reduced = reduce_to_canonical(qs, args.max_states)
    data = {"sequence": list(sequence), "quiver": quiver_to_dict(reduced)}
    return Result(data, f"{len(sequence)} steps: {' '.join(sequence) or '(already canonical)'}")


def cmd_decomp_regular(args):
    qs, d = canonical_with_dim(args)
    regular = decomposition.regular_decompose(qs, d, args.flavor)
    rows = [(poly.name, " ".join(str(v) for v in poly.labels)) for poly in regular.polygons]
    data = {"p": regular.p, "labels": {k: list(v) for k, v in regular.labels.items()}}
    return Result(data, f"p = {regular.p}\n" + _table(rows, ["tube", "labels"]))


def _decomp(flavor):
    def run(args):
        qs, d = canonical_with_dim(args)
        result = decomposition.decompose(qs, d, flavor)
        data = {
            "p": result.p,
            "expression": result.format(),
            "convention_dependent": result.convention_dependent,
            "summands": [
                {"vector": vector_to_dict(s.vector), "multiplicity": s.multiplicity, "text": s.format()}
                for s in result.summands
            ],
        }
        return Result(data, result.format())

    return run


def cmd_gens_list(args):
    qs, d = canonical_with_dim(args)
    generators = catalog.list_generators(qs, d, args.flavor, args.seed)
    if not generators:
        return Result({"generators": []}, "trivial ring: constants")
    rows = [(g.kind.value, g.label, g.source, g.weight.format(), g.alpha.format()) for g in generators]
    data = {"generators": [
        {"kind": g.kind.value, "label": g.label, "source": g.source,
         "weight": vector_to_dict(g.weight), "alpha": vector_to_dict(g.alpha)}
        for g in generators
    ]}
    return Result(data, _table(rows, ["kind", "generator", "source", "weight", "α"]))


def cmd_gens_eval(args):
    qs = load_quiver(args)
    if not is_canonical(qs):
        raise NonCanonicalError("gens eval reads the representation on a canonical quiver; run reduce canonical first")
    if args.rep is None:
        raise MalformedInputError("--rep is required")
    W = read_representation(args.rep, qs)
    d = _dim(args, qs) if args.dim is not None else W.dim
    rows = []
    for g in catalog.list_generators(qs, d, args.flavor, args.seed):
        rows.append((g.label, format_rational(catalog.evaluate_generator(g, W))))
    return Result({label: value for label, value in rows}, _table(rows, ["generator", "value"]))


def cmd_gens_weights(args):
    qs, d = canonical_with_dim(args)
    table = catalog.weights_table(qs, d, args.flavor)
    rows = [(str(arc), weight.format()) for arc, weight in table.items()]
    return Result({str(arc): vector_to_dict(w) for arc, w in table.items()}, _table(rows, ["arc", "weight"]))


def cmd_verify_invariance(args):
    qs, d = canonical_with_dim(args)
    flavor = Flavor.parse(args.flavor)
    W = oracle.representation_space(qs, d, flavor).random_point(np.random.default_rng(args.seed))
    rows, failed = [], False
    for g in catalog.list_generators(qs, d, flavor, args.seed):
        report = oracle.invariance_test(g, W, args.trials, args.seed)
        failed |= not report.ok
        rows.append((g.label, "generator", report.passed, "ok" if report.ok else "FAIL"))
        if args.negative_control:
            bad = oracle.invariance_test(catalog.corrupted_descriptor(g), W, args.trials, args.seed)
            failed |= bad.ok
            rows.append((g.label, "corrupted", bad.passed, "caught" if not bad.ok else "MISSED"))
    data = [dict(zip(("generator", "role", "passed", "status"), r)) for r in rows]
    return Result(data, _table(rows, ["generator", "role", "passed", "status"]), failed)


def cmd_verify_pf(args):
    trials = oracle.pfaffian_trials(args.size, args.trials, args.seed)
    passed = sum(1 for t in trials if t.ok)
    data = {"size": args.size, "trials": len(trials), "passed": passed}
    return Result(data, f"{passed}/{len(trials)} exact pf² = det passes at size {args.size}", passed != len(trials))


def cmd_verify_oracle(args):
    qs, d = canonical_with_dim(args)
    flavor = Flavor.parse(args.flavor)
    expected = oracle.invariant_dims(qs, d, flavor, args.max_degree, args.budget)
    generators = catalog.list_generators(qs, d, flavor, args.seed)
    if generators:
        space = oracle.representation_space(qs, d, flavor)
        spanned = oracle.subalgebra_dims(generators, space, args.max_degree, args.budget)
    else:
        spanned = [1] + [0] * args.max_degree
    rows = [(k, a, b, "ok" if a == b else "FAIL") for k, (a, b) in enumerate(zip(expected, spanned))]
    data = {"invariants": expected, "generated": spanned}
    return Result(data, _table(rows, ["degree", "invariants", "generated", "status"]), expected != spanned)


COMMANDS = {
    ("quiver", "build"): cmd_quiver_build,
    ("quiver", "classify"): cmd_quiver_classify,
    ("quiver", "validate"): cmd_quiver_validate,
    ("dim", "euler"): cmd_dim_euler,
    ("dim", "defect"): cmd_dim_defect,
    ("dim", "coxeter"): cmd_dim_coxeter,
    ("dim", "delta"): cmd_dim_delta,
    ("tube", "data"): cmd_tube_data,
    ("reduce", "canonical"): cmd_reduce_canonical,
    ("decomp", "regular"): cmd_decomp_regular,
    ("decomp", "generic"): _decomp(Flavor.PLAIN),
    ("decomp", "symplectic"): _decomp(Flavor.SYMPLECTIC),
    ("decomp", "orthogonal"): _decomp(Flavor.ORTHOGONAL),
    ("gens", "list"): cmd_gens_list,
    ("gens", "eval"): cmd_gens_eval,
    ("gens", "weights"): cmd_gens_weights,
    ("verify", "invariance"): cmd_verify_invariance,
    ("verify", "pf"): cmd_verify_pf,
    ("verify", "oracle"): cmd_verify_oracle,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='symquiv',
        description='Semi-invariants and generic decompositions for symmetric quivers of tame type')
    parser.add_argument('-v', '--verbose', help='-v for info, -vv for debug logging', action='count', default=0)
    parser.add_argument('--format', help='output format', choices=['table', 'json'], default='table')
    parser.add_argument('--seed', help='seed of every random choice', type=int, default=SymQuivConfig.DEFAULT_SEED)

    parser.add_argument('--quiver', help='symmetric quiver JSON file')
    parser.add_argument('--type', help='canonical shape', choices=[k.value for k in TameKind])
    parser.add_argument('--k', help='k of Ã shapes (vertex count for A00)', type=int, default=0)
    parser.add_argument('--l', help='l of Ã shapes', type=int, default=2)
    parser.add_argument('--m', help='n of D̃_n', type=int)
    parser.add_argument('--dim', help='dimension vector: JSON object/list or a file')
    parser.add_argument('--other', help='second dimension vector for dim euler')
    parser.add_argument('--flavor', help='representation flavor', choices=[f.value for f in Flavor], default='plain')

    parser.add_argument('--rep', help='representation JSON file for gens eval')
    parser.add_argument('--direction', help='Coxeter direction', choices=['plus', 'minus'], default='plus')
    parser.add_argument('--trials', help='random trials', type=int, default=SymQuivConfig.DEFAULT_TRIALS)
    parser.add_argument('--size', help='matrix size for verify pf', type=int, default=8)
    parser.add_argument('--max-degree', help='top degree of the oracle', type=int, default=SymQuivConfig.DEFAULT_MAX_DEGREE)
    parser.add_argument('--budget', help='monomial budget of the oracle', type=int, default=SymQuivConfig.MONOMIAL_BUDGET)
    parser.add_argument('--max-states', help='orientations explored by reduce', type=int, default=SymQuivConfig.MAX_REDUCTION_STATES)
    parser.add_argument('--negative-control', help='also run corrupted recipes in verify invariance', action='store_true')

    parser.add_argument('group', choices=sorted({g for g, _ in COMMANDS}))
    parser.add_argument('action')
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    handler = COMMANDS.get((args.group, args.action))
    if handler is None:
        actions = sorted(a for g, a in COMMANDS if g == args.group)
        parser.error(f"{args.group} takes one of {', '.join(actions)}")
    for name in ('trials', 'max_degree', 'budget', 'max_states', 'size'):
        if getattr(args, name) < 0 or (name != 'max_degree' and getattr(args, name) == 0):
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        result = handler(args)
    except SymQuivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.format == 'json':
        payload = {"schema": SymQuivConfig.SCHEMA, "command": f"{args.group} {args.action}", "result": result.data}
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(result.text)
    return 3 if result.failed else 0


if __name__ == '__main__':
    sys.exit(main())
