"""Command-line front end: ``gradalg <module> <command> [options]``.

Text output is a small table; ``--json`` prints canonical JSON (sorted keys),
which every ``--spec`` / ``--form`` flag accepts back.
Exit status: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import GradAlgError


@dataclass
class CommandResult:
    status: int
    payload: object
    rendered: str


# -- helpers ------------------------------------------------------------------------

def _load(arg: str):
    """JSON from a file path, or inline JSON text."""
    text = arg
    p = Path(arg)
    if not arg.lstrip().startswith(("{", "[")) and p.exists():
        text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GradAlgError(f"cannot read JSON from {arg!r}: {exc}") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _dump(payload) -> str:
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2)


def _render(payload) -> str:
    if isinstance(payload, dict):
        width = max((len(str(k)) for k in payload), default=0)
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                v = json.dumps(_jsonable(v), sort_keys=True)
            lines.append(f"{str(k).ljust(width)}  {v}")
        return "\n".join(lines)
    return str(payload)


def _group(text: str | None, nvalues: int | None = None):
    from .groups import elementary_2, parse_group
    if text:
        return parse_group(text)
    if nvalues is None or nvalues & (nvalues - 1):
        raise GradAlgError("cannot infer the group; pass --group")
    return elementary_2(nvalues.bit_length() - 1)


def _form(args):
    """Quadratic form from --form FILE or --group/--values."""
    from .forms import QuadraticForm, parse_signs
    form = getattr(args, "form", None)
    if form:
        if set(form.strip()) <= set("+-, "):
            vals = parse_signs(form)
            return QuadraticForm(_group(args.group, len(vals)), vals)
        return QuadraticForm.from_json(_load(form))
    if not args.values:
        raise GradAlgError("need --values or --form")
    vals = parse_signs(args.values)
    return QuadraticForm(_group(args.group, len(vals)), vals)


def _form_payload(m) -> dict:
    from .groups import spec_string
    return {"group": spec_string(m.group), "values": m.signs}


# -- group / form ----------------------------------------------------------------

def cmd_group_info(args):
    from .groups import two_torsion
    g = _group(args.group)
    payload = {"group": str(g), "order": g.order, "exponent": g.exponent,
               "elements": g.names(),
               "element_orders": [g.element_order(t) for t in range(g.order)],
               "two_torsion": two_torsion(g).names()}
    return payload, _render(payload)


def cmd_form_arf(args):
    from .forms import arf
    m = _form(args)
    payload = dict(_form_payload(m), arf=arf(m))
    return payload, f"{payload['arf']:+d}" if payload["arf"] else "0"


def cmd_form_info(args):
    from .forms import arf, is_regular, polarization
    m = _form(args)
    b = polarization(m)
    rad, tag, f = b.radical()
    payload = dict(_form_payload(m), arf=arf(m), type=tag, radical=rad.names(),
                   f_beta=m.group.name(f) if f is not None else None,
                   regular=is_regular(m),
                   beta_generators=[[int(1 - x) for x in row] for row in b.gen_phases().tolist()])
    return payload, _render(payload)


def cmd_form_equivalent(args):
    from .forms import QuadraticForm, equivalent, parse_signs
    m1 = _form(args)
    m2 = QuadraticForm(m1.group, parse_signs(args.other))
    ok, witness = equivalent(m1, m2)
    g = m1.group
    payload = {"group": str(g), "values": m1.signs, "other": m2.signs, "equivalent": ok,
               "witness": [g.name(w) for w in witness] if witness else None}
    return payload, _render(payload)


def cmd_form_enumerate(args):
    from .forms import arf, enumerate_forms, polarization
    m = _form(args)
    rows = [{"values": h.signs, "arf": arf(h)} for h in enumerate_forms(polarization(m))]
    payload = {"group": str(m.group), "forms": rows}
    return payload, "\n".join(f"{r['values']}  {r['arf']:+d}" if r["arf"] else f"{r['values']}  0"
                              for r in rows)


def cmd_form_count(args):
    from .forms import type_one_arf_counts
    rows = []
    for m in range(1, args.max + 1):
        counts = type_one_arf_counts(m)
        expect = (2 ** (2 * m - 1) + 2 ** (m - 1), 2 ** (2 * m - 1) - 2 ** (m - 1))
        rows.append({"m": m, "bicharacters": sum(counts.values()),
                     "counts": [{"plus": p, "minus": q, "bicharacters": c}
                                for (p, q), c in sorted(counts.items())],
                     "expected": {"plus": expect[0], "minus": expect[1]},
                     "pass": set(counts) == {expect}})
    payload = {"rows": rows}
    text = "\n".join(f"m={r['m']}  beta={r['bicharacters']}  "
                     f"{[(c['plus'], c['minus']) for c in r['counts']]}  "
                     f"{'PASS' if r['pass'] else 'FAIL'}" for r in rows)
    return payload, text


# -- twisted ----------------------------------------------------------------------

def cmd_twisted_classify(args):
    from .twisted import build_twisted, classify_by_arf, describe
    m = _form(args)
    a = build_twisted(m.group, m)
    payload = dict(_form_payload(m), **describe(a))
    rad_ok = True
    try:
        payload["arf_class"] = classify_by_arf(m.group, m).label()
    except GradAlgError:
        rad_ok = False
    from .structure import AlgebraClass
    payload["label"] = AlgebraClass.from_json(payload).label()
    if rad_ok and payload["arf_class"] != payload["label"]:
        raise GradAlgError("Arf route and structural route disagree")
    return payload, _render(payload)


def cmd_twisted_product(args):
    from .twisted import build_twisted
    m = _form(args)
    a = build_twisted(m.group, m)
    x, y = a.parse(args.left), a.parse(args.right)
    payload = dict(_form_payload(m), left=str(x), right=str(y), product=str(x * y))
    return payload, payload["product"]


def cmd_oracle(args):
    from .twisted import oracle_crosscheck
    r = oracle_crosscheck(args.n, args.sample, args.seed)
    r["seed"] = args.seed
    r["sample"] = args.sample
    return r, f"{r['agree']}/{r['checked']} forms agree (n={r['n']}, skipped {r['skipped']} with radical > 2)"


# -- clifford -----------------------------------------------------------------------

def cmd_clifford_identify(args):
    from .clifford import arf_closed_form, identify_clifford
    args.p = args.p if args.p is not None else args.P
    args.q = args.q if args.q is not None else args.Q
    if args.p is None or args.q is None:
        raise GradAlgError("need P and Q")
    cls = identify_clifford((args.p, args.q))
    payload = dict(cls.to_json(), p=args.p, q=args.q, label=cls.label(),
                   arf=arf_closed_form((args.p, args.q)))
    if args.verify:
        from .clifford import clifford_build
        from .twisted import structural_identify
        payload["structural"] = structural_identify(clifford_build((args.p, args.q))).label()
    return payload, _render(payload)


def cmd_clifford_table(args):
    from .clifford import clifford_table
    grid = clifford_table(args.max)
    labels = [[c.label() for c in row] for row in grid]
    payload = {"max": args.max, "rows": "p", "columns": "q", "grid": labels}
    width = max(len(x) for row in labels for x in row)
    head = "p\\q " + " ".join(str(q).rjust(width) for q in range(args.max + 1))
    lines = [head] + [str(p).ljust(4) + " ".join(x.rjust(width) for x in row)
                      for p, row in enumerate(labels)]
    return payload, "\n".join(lines)


def cmd_clifford_periodicity(args):
    from .clifford import periodicity_check
    rows = []
    for total in range(args.max + 1):
        for p in range(total + 1):
            rows.extend(periodicity_check((p, total - p)))
    fails = [r for r in rows if not r["pass"]]
    payload = {"max": args.max, "checked": len(rows), "failures": fails}
    return payload, f"{len(rows) - len(fails)}/{len(rows)} periodicity checks pass"


def cmd_clifford_binomial(args):
    from .clifford import binomial_sums
    rows = []
    lo = args.N if args.N is not None else 1
    hi = args.N if args.N is not None else args.max
    for N in range(lo, hi + 1):
        d, c = binomial_sums(N)
        rows.append({"N": N, "direct": [str(x) for x in d.as_tuple()],
                     "closed": [str(x) for x in c.as_tuple()], "pass": d == c})
    payload = {"max": hi, "rows": rows, "pass": all(r["pass"] for r in rows)}
    bad = sum(not r["pass"] for r in rows)
    return payload, f"{len(rows) - bad}/{len(rows)} binomial sums agree"


def cmd_clifford_arf(args):
    from .clifford import arf_three_ways
    rows = []
    for total in range(args.max + 1):
        for p in range(total + 1):
            r = arf_three_ways((p, total - p))
            rows.append(dict(r, p=p, q=total - p, agree=len(set(r.values())) == 1))
    payload = {"max": args.max, "cases": len(rows), "agree": sum(r["agree"] for r in rows),
               "rows": rows}
    return payload, f"{payload['agree']}/{payload['cases']} signatures agree three ways"


# -- grading --------------------------------------------------------------------------

def _grading_from_spec(spec):
    from .catalog import example
    from .graded import from_matrices
    from .groups import GroupSpec
    if isinstance(spec, str):
        spec = _load(spec)
    if "example" in spec:
        return example(spec["example"])
    if "inner" in spec:
        return _graded_matrix_from_spec(spec)
    if "matrices" in spec:
        from .exact import GaussQ
        def entry(x):
            if isinstance(x, list):
                return GaussQ(Fraction(x[0]), Fraction(x[1]))
            return GaussQ(Fraction(x))
        mats = [[[entry(x) for x in row] for row in m] for m in spec["matrices"]]
        ga = from_matrices(mats, spec["degrees"], GroupSpec.from_json(spec["group"]))
        ga.meta["spec"] = {"matrices": spec["matrices"]}
        return ga
    raise GradAlgError("grading spec needs 'example' or 'matrices'")


def _graded_matrix_from_spec(spec):
    from .forms import Bicharacter, QuadraticForm
    from .graded import build_graded_matrix
    from .groups import GroupSpec
    from .twisted import build_complex_twisted, build_twisted
    inner = spec["inner"]
    T = GroupSpec.from_json(inner["group"])
    if "mu" in inner:
        D = build_twisted(T, QuadraticForm.from_signs(T, inner["mu"]))
    else:
        D = build_complex_twisted(T, Bicharacter.from_generator_phases(T, inner["generator_phases"]))
    G = GroupSpec.from_json(spec.get("ambient", inner["group"]))
    ga = build_graded_matrix(D, G, spec["degrees"], spec.get("embedding"))
    ga.meta["spec"] = {k: spec[k] for k in ("inner", "ambient", "embedding") if k in spec}
    return ga


def _grading_spec(args):
    if args.example:
        return {"example": args.example}
    if not args.spec:
        raise GradAlgError("need --spec or --example")
    return _load(args.spec[0])


def _grading_payload(ga) -> dict:
    from .graded import identify
    out = ga.to_json()
    out["group"] = str(ga.group)
    out["dim"] = ga.dim
    out["components"] = {ga.degree_name(g): n for g, n in ga.component_profile().items()}
    try:
        out["algebra"] = identify(ga).label()
    except GradAlgError:
        out["algebra"] = None
    return out


def cmd_grading_build(args):
    ga = _grading_from_spec(_grading_spec(args))
    payload = _grading_payload(ga)
    return payload, _render(payload)


def cmd_grading_check_division(args):
    from .graded import is_division_grading
    ga = _grading_from_spec(_grading_spec(args))
    payload = dict(_grading_payload(ga), division=is_division_grading(ga))
    return payload, _render(payload)


def cmd_grading_label(args):
    from .graded import label_division_grading, neutral_centralizer
    ga = _grading_from_spec(_grading_spec(args))
    lab = label_division_grading(ga)
    payload = dict(_grading_payload(ga), **lab.to_json())
    if lab.tag.startswith("2-") and lab.tag not in ("2-a", "2-b", "2-f"):
        payload["K"] = [ga.degree_name(t) for t in neutral_centralizer(ga).K.members]
    return payload, _render(payload)


def cmd_grading_tensor(args):
    from .graded import graded_tensor, is_division_grading, label_division_grading
    specs = [_load(s) for s in list(args.spec or []) + list(args.files or [])]
    if args.example:
        specs.insert(0, {"example": args.example})
    if len(specs) != 2:
        raise GradAlgError("tensor needs exactly two operands (--example, --spec or files)")
    a, b = (_grading_from_spec(s) for s in specs)
    t = graded_tensor(a, b)
    payload = _grading_payload(t)
    payload.pop("example", None)
    payload["factors"] = specs
    if is_division_grading(t):
        try:
            payload.update(label_division_grading(t).to_json())
        except GradAlgError:
            pass
    return payload, _render(payload)


def cmd_grading_list(args):
    from .catalog import EXAMPLES
    payload = {"examples": sorted(EXAMPLES)}
    return payload, "\n".join(payload["examples"])


# -- involutions ----------------------------------------------------------------------

def cmd_involution_classify(args):
    from .forms import QuadraticForm, parse_signs
    from .involutions import classify_involution_1a, classify_involution_1c
    mu_v, eta_v = parse_signs(args.mu), parse_signs(args.eta)
    g = _group(args.group, len(mu_v))
    mu, eta = QuadraticForm(g, mu_v), QuadraticForm(g, eta_v)
    fn = classify_involution_1a if args.case == "1a" else classify_involution_1c
    tag = fn(mu, eta)
    payload = {"group": str(g), "mu": mu.signs, "eta": eta.signs, "case": args.case, "class": tag}
    return payload, tag


def cmd_involution_split(args):
    from .forms import QuadraticForm, parse_signs
    from .involutions import split_class_identify
    vals = parse_signs(args.mu)
    g = _group(args.group, len(vals))
    cls = split_class_identify(g, QuadraticForm(g, vals))
    payload = dict(cls.to_json(), group=str(g), mu=args.mu, label=cls.label())
    return payload, cls.label()


def _second_kind_from_spec(spec):
    from .forms import Bicharacter
    from .groups import GroupSpec
    from .involutions import GradedInvolution, second_kind_from_generators
    from .twisted import build_complex_twisted
    g = GroupSpec.from_json(spec["group"])
    a = build_complex_twisted(g, Bicharacter.from_generator_phases(g, spec["generator_phases"]))
    if "eta_c" in spec:
        phi = GradedInvolution(a, eta_c=tuple(int(x) % 4 for x in spec["eta_c"]))
        phi.verify()
    elif "eta_c_generators" in spec:
        phi = second_kind_from_generators(a, spec["eta_c_generators"])
    else:
        raise GradAlgError("spec needs 'eta_c' or 'eta_c_generators'")
    return a, phi


def _second_kind_payload(a, phi) -> dict:
    from .involutions import involution_signature, s_invariant_2f
    from .groups import two_torsion
    S = s_invariant_2f(a, phi)
    return {"group": str(a.group), "generator_phases": a.bichar.gen_phases().tolist(),
            "eta_c": list(phi.eta_c), "S": S.names(), "T2": two_torsion(a.group).names(),
            "signature": involution_signature(a, phi)}


def cmd_involution_s_invariant(args):
    from .involutions import s_invariant_2f
    a, phi = _second_kind_from_spec(_load(args.spec))
    S = s_invariant_2f(a, phi)
    payload = {"group": str(a.group), "generator_phases": a.bichar.gen_phases().tolist(),
               "eta_c": list(phi.eta_c), "S": S.names(), "index": S.index}
    return payload, _render(payload)


def cmd_involution_signature(args):
    from .involutions import involution_signature
    a, phi = _second_kind_from_spec(_load(args.spec))
    payload = {"group": str(a.group), "generator_phases": a.bichar.gen_phases().tolist(),
               "eta_c": list(phi.eta_c), "signature": involution_signature(a, phi)}
    return payload, str(payload["signature"])


def cmd_involution_enumerate(args):
    from .forms import Bicharacter
    from .groups import GroupSpec
    from .involutions import enumerate_second_kind
    from .twisted import build_complex_twisted
    spec = _load(args.spec)
    g = GroupSpec.from_json(spec["group"])
    a = build_complex_twisted(g, Bicharacter.from_generator_phases(g, spec["generator_phases"]))
    rows = [_second_kind_payload(a, phi) for phi in enumerate_second_kind(a)]
    payload = {"group": str(g), "generator_phases": a.bichar.gen_phases().tolist(), "involutions": rows}
    text = "\n".join(f"eta_c={r['eta_c']}  S={r['S']}  signature={r['signature']}" for r in rows)
    return payload, text


# -- lie ------------------------------------------------------------------------------

def _lie_from_spec(spec):
    from . import lie
    from .groups import GroupSpec, make_group
    kind = spec.get("involution", "transpose")
    if "matrix" in spec:
        g = GroupSpec.from_json(spec["group"]) if "group" in spec else make_group(())
        r = lie.matrix_algebra(int(spec["matrix"]), spec.get("degrees"), g)
    else:
        r = _grading_from_spec(spec)
    maps = {"transpose": lie.transpose_involution, "symplectic": lie.symplectic_involution,
            "conj-transpose": lie.conj_transpose_involution}
    if kind not in maps:
        raise GradAlgError(f"unknown involution {kind!r}; choose from {sorted(maps)}")
    return r, maps[kind](r)


def cmd_lie_skew(args):
    from .lie import skew_lie
    spec = _load(args.spec)
    r, phi = _lie_from_spec(spec)
    L = skew_lie(r, phi)
    payload = dict(spec, **L.to_json())
    payload["jacobi"] = payload["graded"] = True  # skew_lie raises otherwise
    return payload, _render(payload)


def _params(arg):
    from .lie import SixParams
    obj = _load(arg)
    return SixParams.from_json(obj.get("params", obj))


def cmd_lie_six_param(args):
    from . import lie
    if args.action == "sample":
        if args.seed is None:
            raise argparse.ArgumentTypeError("sample needs --seed")
        import random
        from .groups import parse_group
        p = lie.random_six_params(parse_group(args.group or "Z2^2"), random.Random(args.seed))
        payload = p.to_json()
        return payload, _render(payload)
    if not args.file:
        raise GradAlgError("six-param build needs a parameter file")
    p = _params(args.file)
    R, phi = lie.build_six_param(p)
    L = lie.skew_lie(R, phi)
    payload = {"params": p.to_json(), "dim": R.dim, "lie_dim": L.dim,
               "components": {R.group.name(g): n for g, n in R.component_profile().items()},
               "invariants": {k: list(v) for k, v in lie.orbit_invariants(R, phi).items()}}
    return payload, _render(payload)


def cmd_lie_orbit_check(args):
    from .lie import same_orbit
    p1, p2 = _params(args.p1), _params(args.p2)
    ok, w = same_orbit(p1, p2)
    payload = {"same_orbit": ok,
               "witness": {"g": p1.G.name(w[0]), "flip": w[1]} if w else None}
    return payload, _render(payload)


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit canonical JSON")
    form_opts = argparse.ArgumentParser(add_help=False)
    form_opts.add_argument("--group", help="group such as Z2^2 or Z2xZ4")
    form_opts.add_argument("--values", help="signs in canonical element order, e.g. +++-")
    form_opts.add_argument("--form", help="JSON form file {group, values}")

    ap = argparse.ArgumentParser(prog="gradalg", description="Graded division algebras toolkit")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--json", action="store_true", help="emit canonical JSON")
    top = ap.add_subparsers(dest="module", required=True, metavar="module")

    def leaf(sub, name, fn, parents=(), **kw):
        p = sub.add_parser(name, parents=[common, *parents], **kw)
        p.set_defaults(fn=fn)
        return p

    # group
    g = top.add_parser("group", help="finite abelian groups").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "info", cmd_group_info, help="elements and orders")
    p.add_argument("--group", required=True)

    # form
    f = top.add_parser("form", help="quadratic forms").add_subparsers(dest="cmd", required=True)
    leaf(f, "arf", cmd_form_arf, [form_opts], help="Arf invariant")
    leaf(f, "info", cmd_form_info, [form_opts], help="polarization, radical, type")
    p = leaf(f, "equivalent", cmd_form_equivalent, [form_opts], help="equivalence test")
    p.add_argument("--other", required=True, help="second form's signs")
    leaf(f, "enumerate", cmd_form_enumerate, [form_opts], help="all forms with the same polarization")
    p = leaf(f, "count", cmd_form_count, help="Arf counts for type I polarizations on Z2^(2m)")
    p.add_argument("--max", type=int, default=3, help="largest m")

    # twisted
    t = top.add_parser("twisted", help="twisted group algebras").add_subparsers(dest="cmd", required=True)
    leaf(t, "classify", cmd_twisted_classify, [form_opts], help="identify the algebra of a form")
    p = leaf(t, "product", cmd_twisted_product, [form_opts], help="multiply two elements")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    oracle_opts = argparse.ArgumentParser(add_help=False)
    oracle_opts.add_argument("--n", type=int, required=True)
    oracle_opts.add_argument("--sample", type=int)
    oracle_opts.add_argument("--seed", type=int)
    leaf(t, "oracle-crosscheck", cmd_oracle, [oracle_opts], help="Arf route vs structural oracle")

    # clifford
    c = top.add_parser("clifford", help="Clifford algebras").add_subparsers(dest="cmd", required=True)
    p = leaf(c, "identify", cmd_clifford_identify, help="class of Cl(p,q)")
    p.add_argument("P", type=int, nargs="?")
    p.add_argument("Q", type=int, nargs="?")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--verify", action="store_true", help="also run the structural oracle")
    p = leaf(c, "table", cmd_clifford_table, help="class grid for 0 <= p, q <= max")
    p.add_argument("--max", type=int, default=8)
    p = leaf(c, "periodicity", cmd_clifford_periodicity, help="periodicity rules for p+q <= max")
    p.add_argument("--max", type=int, default=8)
    p = leaf(c, "binomial", cmd_clifford_binomial, help="binomial sums mod 4 for N <= max")
    p.add_argument("N", type=int, nargs="?")
    p.add_argument("--max", type=int, default=64)
    p = leaf(c, "arf", cmd_clifford_arf, help="three-way Arf agreement for p+q <= max")
    p.add_argument("--max", type=int, default=12)

    # grading
    gr = top.add_parser("grading", help="graded algebras").add_subparsers(dest="cmd", required=True)
    spec_opts = argparse.ArgumentParser(add_help=False)
    spec_opts.add_argument("--spec", action="append", help="JSON spec file or inline JSON")
    spec_opts.add_argument("--example", help="catalog example name")
    leaf(gr, "build", cmd_grading_build, [spec_opts], help="build and describe")
    leaf(gr, "check-division", cmd_grading_check_division, [spec_opts], help="division grading test")
    leaf(gr, "label", cmd_grading_label, [spec_opts], help="classification label")
    p = leaf(gr, "tensor", cmd_grading_tensor, [spec_opts], help="graded tensor product of two specs")
    p.add_argument("files", nargs="*")
    leaf(gr, "list", cmd_grading_list, help="catalog examples")

    # involution
    inv = top.add_parser("involution", help="graded involutions").add_subparsers(dest="cmd", required=True)
    p = leaf(inv, "classify", cmd_involution_classify, help="class of eta relative to mu")
    p.add_argument("--case", choices=["1a", "1c"], required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--group")
    p = leaf(inv, "split", cmd_involution_split, help="split algebra for mu(f_beta) = +1")
    p.add_argument("--mu", required=True)
    p.add_argument("--group")
    for name, fn in (("s-invariant", cmd_involution_s_invariant),
                     ("signature", cmd_involution_signature),
                     ("enumerate", cmd_involution_enumerate)):
        p = leaf(inv, name, fn, help=f"second-kind involution {name}")
        p.add_argument("--spec", required=True, help="{group, generator_phases, eta_c}")

    # lie
    li = top.add_parser("lie", help="Lie algebras of skew elements").add_subparsers(dest="cmd", required=True)
    p = leaf(li, "skew", cmd_lie_skew, help="skew elements under an involution")
    p.add_argument("--spec", required=True)
    p = leaf(li, "six-param", cmd_lie_six_param, help="six-parameter model")
    p.add_argument("action", choices=["build", "sample"])
    p.add_argument("file", nargs="?")
    p.add_argument("--group")
    p.add_argument("--seed", type=int)
    p = leaf(li, "orbit-check", cmd_lie_orbit_check, help="same orbit under the parameter action")
    p.add_argument("p1")
    p.add_argument("p2")

    # crosscheck
    cc = top.add_parser("crosscheck", help="oracle suites").add_subparsers(dest="cmd", required=True)
    leaf(cc, "oracle", cmd_oracle, [oracle_opts], help="Arf route vs structural oracle")
    return ap


def run(argv=None) -> CommandResult:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "sample", None) is not None and getattr(args, "seed", None) is None:
        parser.error("--sample requires --seed")
    if getattr(args, "action", None) == "sample" and args.seed is None:
        parser.error("six-param sample requires --seed")
    try:
        payload, text = args.fn(args)
    except GradAlgError as exc:
        msg = f"error: {type(exc).__name__}: {exc}"
        return CommandResult(1, {"error": type(exc).__name__, "message": str(exc)}, msg)
    except (KeyError, OSError) as exc:
        return CommandResult(1, {"error": type(exc).__name__, "message": str(exc)}, f"error: {exc}")
    rendered = _dump(payload) if args.json else text
    return CommandResult(0, _jsonable(payload), rendered)


def main(argv=None) -> int:
    res = run(argv)
    stream = sys.stdout if res.status == 0 else sys.stderr
    print(res.rendered, file=stream)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
