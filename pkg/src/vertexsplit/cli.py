"""Command-line interface.

Every command prints a JSON report::

    {"input": ..., "result": ..., "checks": [{"name", "status", "detail"}],
     "provenance": [{"value", "source"}]}

Exit status is 0 when all checks pass, 2 on bad input and 3 when a check
fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cohomology import (
    CurveError,
    RouteMismatch,
    SplittingError,
    boundary_values,
    closed_forms,
    h0_normal,
    h0_tangent,
    normal_oracle,
    normal_splitting,
    quadrics_through,
    tangent_splitting,
)
from .forms import FormError, parse_dual_form, parse_form
from .geometry import (
    GeometryError,
    dual_basis,
    hilbert_dim,
    scroll_detect,
    smoothness,
    vertex_from_parametrization,
)
from .search import enumerate_monomial, find_reducibility_witness, passes_prescreen, sample_random
from .vertex import Vertex, VertexError, cd_generated_part, inverse_profile, iterate, numerical_type, partial

COMMANDS = (
    "type", "tangent", "normal", "normal-splitting", "profile", "oracle-check", "smooth", "scroll",
    "quadrics", "convert", "hilbert-dim", "enumerate", "search-witness", "paper-example",
)

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 2, 3


class InputError(ValueError):
    pass


@dataclass
class Report:
    input: dict
    result: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})
        return ok

    def cite(self, value, source: str) -> None:
        self.provenance.append({"value": value, "source": source})

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)

    def as_dict(self) -> dict:
        return {"input": self.input, "result": self.result, "checks": self.checks, "provenance": self.provenance}


# ------------------------------------------------------------- inputs


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _parse_c(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in _split(text))
    except ValueError as exc:
        raise InputError(f"bad splitting list {text!r}") from exc


def vertex_from_args(args) -> Vertex:
    if (args.forms is None) == (args.dual_forms is None):
        raise InputError("give exactly one of --forms or --dual-forms")
    if args.forms is not None:
        if args.d is None:
            raise InputError("--forms needs --d")
        return Vertex.from_forms([parse_form(t, args.d) for t in _split(args.forms)], args.d)
    gs = [parse_dual_form(t, args.d) for t in _split(args.dual_forms)]
    if not gs:
        raise InputError("empty parametrization")
    if len({g.degree for g in gs}) != 1:
        raise InputError("parametrizing forms have different degrees")
    T = vertex_from_parametrization(gs)
    if T.d + 1 - T.dim != len(gs):
        raise InputError("parametrizing forms are linearly dependent")
    return T


def _forms(T: Vertex) -> list[str]:
    return [str(f) for f in T.forms()]


def _splitting_checks(rep: Report, st, label: str) -> None:
    for v in st.violations():
        rep.check(f"{label} invariants", False, v)
    if not st.violations():
        if st.kind == "normal":
            rep.check(f"{label}: sum(c_i + 1) = d + e", True, f"{sum(x + 1 for x in st.c)} = {st.d + st.e}")
            rep.check(f"{label}: sum(c_i) = 2(e + 1)", True, f"{sum(st.c)} = {2 * (st.e + 1)}")
            rep.check(f"{label}: min c_i >= 0", True, str(min(st.c, default=0)))
        else:
            rep.check(f"{label}: total degree (s + 1) d", True, str(sum(st.degrees)))


# ------------------------------------------------------------ commands


def cmd_type(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    nt = numerical_type(T)
    rep.result.update(
        numerical_type=str(nt),
        a=nt.a,
        b=list(nt.b),
        dim=T.dim,
        dim_dT=partial(T).dim if T.d else None,
        inverse_profile=inverse_profile(T),
    )
    if nt.a >= 0:
        rep.result["cd_generated_part"] = _forms(cd_generated_part(T))
    rep.check("r = dim dT - dim T", True, f"r = {nt.r}")
    rep.check("type dimension equals dim T", nt.dim == T.dim, f"{nt.dim} vs {T.dim}")
    rep.cite(str(nt), "differences of dim (d^-1)^j T")


def cmd_tangent(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    st = tangent_splitting(T)
    rep.result["tangent"] = st.as_dict()
    rep.result["numerical_type"] = str(numerical_type(T))
    for k, v in enumerate(st.profile):
        rep.check(f"k = {k}: ker D and d^-k T agree", True, f"h0 = {v}")
    _splitting_checks(rep, st, "tangent")
    rep.cite(str(st), "numerical type: one summand of degree b_i + d + 2 per block, the rest d + 1")


def _normal_report(T: Vertex, rep: Report, k_max: int | None = None) -> None:
    verdict = smoothness(T)
    st = normal_splitting(T, ordinary=verdict.status == "Smooth")
    rep.result["normal"] = st.as_dict()
    rep.result["profile"] = list(st.profile)
    rep.result["smoothness"] = verdict.status
    if not st.formal:
        rep.result["boundary_h0"] = {str(t): v for t, v in boundary_values(T, st).items()}
    if st.formal:
        rep.result["caveat"] = "curve not certified smooth; values are the formal linear-algebra quantities"
    top = len(st.profile) if k_max is None else k_max + 1
    for k in range(top):
        a, b = h0_normal(T, k, check=False), normal_oracle(T, k, check=False)
        rep.check(f"k = {k}: D^2 kernel equals direct section count", a == b, f"{a} vs {b}")
    cf = closed_forms(T)
    rep.check("closed forms for k = 0, 1, 2", cf.h0 == tuple(h0_normal(T, k, check=False) for k in range(3)), str(cf.h0))
    n_trivial = sum(1 for x in st.c if x == 0)
    rep.check("O(d+2) summand count = d - 1 - dim d^2 T", cf.trivial_summands == n_trivial, f"{n_trivial}")
    _splitting_checks(rep, st, "normal")
    rep.cite(list(st.profile), "dim ker D^2 on S^k U (x) T (k >= 2); d - 1 + dim T and 2 dim T for k = 0, 1")
    rep.cite(list(st.c), "second differences of the profile")


def cmd_normal(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    _normal_report(T, rep)


def cmd_profile(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    k_max = args.k_max if args.k_max is not None else 2 * T.e + 4
    normal = [h0_normal(T, k) for k in range(k_max + 1)]
    tangent = [h0_tangent(T, k) for k in range(k_max + 1)]
    rep.result.update(normal_h0=normal, tangent_h0=tangent, k_max=k_max)
    rep.check("normal profile non-increasing from k = 1", all(a >= b for a, b in zip(normal[1:], normal[2:])), str(normal))
    rep.cite(normal, "dim ker D^2 on S^k U (x) T")
    rep.cite(tangent, "dim ker D on S^k U (x) T, checked against dim (d^-1)^k T")


def cmd_oracle_check(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    k_max = args.k_max if args.k_max is not None else 2 * T.e + 4
    rows = []
    for k in range(k_max + 1):
        a, b = h0_normal(T, k), normal_oracle(T, k)
        rows.append({"k": k, "kernel": a, "oracle": b})
        rep.check(f"k = {k}", a == b, f"{a} vs {b}")
    rep.result["rows"] = rows


def cmd_smooth(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    v = smoothness(T, seed=args.seed)
    rep.result.update(v.as_dict())
    rep.cite(v.status, v.method)


def cmd_scroll(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    r = scroll_detect(T)
    rep.result.update(r.as_dict())
    if r.resident:
        _splitting_checks(rep, r.normal, "normal")
        _splitting_checks(rep, r.tangent, "tangent")


def cmd_quadrics(args, rep: Report) -> None:
    T = vertex_from_args(args)
    rep.input["forms"] = _forms(T)
    q = quadrics_through(T)
    s = T.s
    rep.result.update(quadrics=q, s=s)
    if T.d >= 2 * s + 1:
        bound = (s - 1) * (s - 2) // 2
        rep.check("at most (s-1)(s-2)/2 quadrics", q <= bound, f"{q} <= {bound}")
    rep.cite(q, "kernel of Sym^2(T^perp) -> S^2d U*")


def cmd_convert(args, rep: Report) -> None:
    T = vertex_from_args(args)
    if args.forms is not None:
        g = dual_basis(T)
        rep.result["dual_forms"] = [str(x) for x in g]
        back = vertex_from_parametrization(g)
    else:
        rep.result["forms"] = _forms(T)
        back = vertex_from_parametrization(dual_basis(T))
    rep.result["d"] = T.d
    rep.check("round trip", back == T, "")
    rep.cite(rep.result.get("forms") or rep.result["dual_forms"], "annihilator under the pairing <u^(d-i) v^i, x^(d-i) y^i> = i!(d-i)!")


def cmd_hilbert_dim(args, rep: Report) -> None:
    if args.dim_vp is None or args.s is None:
        raise InputError("hilbert-dim needs --dim-vp and --s")
    rep.input.update(dim_vp=args.dim_vp, s=args.s)
    try:
        v = hilbert_dim(args.dim_vp, args.s)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep.result["dimension"] = v
    rep.cite(v, "dim V_P + dim PGL(s+1) - 3")


def _records(args):
    if args.d is None or args.dim_t is None:
        raise InputError("needs --d and --dim-t")
    if args.count is not None:
        return sample_random(args.d, args.dim_t, args.count, args.seed)
    return enumerate_monomial(args.d, args.dim_t)


def _record_checks(rep: Report, recs) -> None:
    for r in recs:
        if r.normal is not None:
            ok = not r.normal.violations()
            rep.check(f"{r.source}: normal invariants", ok, str(r.normal))


def cmd_enumerate(args, rep: Report) -> None:
    recs = list(_records(args))
    rep.input.update(dim_t=args.dim_t, count=args.count)
    rep.result["records"] = [r.as_dict() for r in recs]
    counts: dict[str, int] = {}
    for r in recs:
        counts[r.numerical_type] = counts.get(r.numerical_type, 0) + 1
    rep.result["type_counts"] = counts
    _record_checks(rep, recs)


def cmd_search_witness(args, rep: Report) -> None:
    if args.d is None or args.dim_t is None:
        raise InputError("search-witness needs --d and --dim-t")
    target = _parse_c(args.target_c) if args.target_c else None
    rep.input.update(dim_t=args.dim_t, target_c=list(target) if target else None)
    if target is not None:
        rep.result["prescreen"] = passes_prescreen(target, args.d, args.dim_t)
    pair = find_reducibility_witness(args.d, args.dim_t, target, samples=args.count or 0, seed=args.seed)
    rep.result["witness"] = [r.as_dict() for r in pair] if pair else None
    if pair:
        rep.check("records revalidate", all(r.revalidate() for r in pair), "")
        rep.check("distinct tangent splittings", pair[0].tangent.c != pair[1].tangent.c, "")
        rep.check("equal normal splittings", pair[0].normal.c == pair[1].normal.c, "")


def cmd_paper_example(args, rep: Report) -> None:
    d = 11
    witnesses = {"T_B": (8, 6, 4), "T_A": (7, 4, 3)}
    out = {}
    for name, exps in witnesses.items():
        T = Vertex.monomial(d, exps)
        sub = Report({})
        _normal_report(T, sub)
        st = tangent_splitting(T)
        out[name] = {
            "forms": _forms(T),
            "numerical_type": str(numerical_type(T)),
            "dim_d2T": iterate(partial, T, 2).dim,
            "tangent": st.as_dict(),
            **sub.result,
        }
        rep.checks.extend({**c, "name": f"{name}: {c['name']}"} for c in sub.checks)
    TB, TA = out["T_B"], out["T_A"]
    rep.check("T_B profile 13, 6, 2, 0", TB["profile"] == [13, 6, 2, 0], str(TB["profile"]))
    rep.check("common normal splitting", TA["normal"]["c"] == TB["normal"]["c"] == [2, 2, 1, 1, 0, 0, 0], str(TB["normal"]["c"]))
    rep.check("types (1,0) and (0,0,0)", (TA["numerical_type"], TB["numerical_type"]) == ("(1,0)", "(0,0,0)"), "")
    rep.check("both smooth", TA["smoothness"] == TB["smoothness"] == "Smooth", "")
    counts = {"type (1,0)": 12 + 9, "type (0,0,0)": 15 + 6}
    dims = {k: hilbert_dim(v, 8) for k, v in counts.items()}
    rep.check("both families have dimension 98", set(dims.values()) == {98}, str(dims))
    pair = find_reducibility_witness(d, 3, (2, 2, 1, 1, 0, 0, 0))
    rep.check("monomial search finds a witness pair", pair is not None, "")
    E2 = vertex_from_parametrization([parse_dual_form(t, 5) for t in ("u^5", "u^2*v^3", "u^3*v^2", "v^5")])
    ex2 = {
        "forms": _forms(E2),
        "numerical_type": str(numerical_type(E2)),
        "tangent": str(tangent_splitting(E2)),
        "smoothness": smoothness(E2).status,
        "quadrics": quadrics_through(E2),
    }
    rep.check("second example: T = <x^4*y, x*y^4>", E2 == Vertex.monomial(5, (4, 1)), str(ex2["forms"]))
    rep.check("second example: T_f = O^2(7) + O(6)", ex2["tangent"] == "O^2(7) + O(6)", ex2["tangent"])
    rep.result.update(
        witnesses=out,
        parameter_counts=counts,
        hilbert_dims=dims,
        search=[(r.source[1], r.numerical_type) for r in pair] if pair else None,
        example_quadric=ex2,
    )
    rep.cite(98, "dim V_P + dim PGL(9) - 3 with dim V_P = 21")


HANDLERS = {
    "type": cmd_type,
    "tangent": cmd_tangent,
    "normal": cmd_normal,
    "normal-splitting": cmd_normal,
    "profile": cmd_profile,
    "oracle-check": cmd_oracle_check,
    "smooth": cmd_smooth,
    "scroll": cmd_scroll,
    "quadrics": cmd_quadrics,
    "convert": cmd_convert,
    "hilbert-dim": cmd_hilbert_dim,
    "enumerate": cmd_enumerate,
    "search-witness": cmd_search_witness,
    "paper-example": cmd_paper_example,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vertexsplit", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--d", type=int, help="degree of the forms in the vertex")
    p.add_argument("--forms", help="comma-separated binary forms spanning T")
    p.add_argument("--dual-forms", help="comma-separated dual forms spanning T^perp")
    p.add_argument("--k-max", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target-c", help="comma-separated normal twists, e.g. 2,2,1,1,0,0,0")
    p.add_argument("--dim-t", type=int, help="vertex dimension for enumerate/search-witness")
    p.add_argument("--count", type=int, help="sample this many random vertices instead of monomials")
    p.add_argument("--dim-vp", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--json-out", metavar="PATH")
    return p


def _input_echo(args) -> dict:
    keep = ("command", "d", "forms", "dual_forms", "k_max", "seed", "target_c")
    return {k: getattr(args, k) for k in keep if getattr(args, k) is not None}


def run(args) -> tuple[dict, int]:
    rep = Report(_input_echo(args))
    try:
        HANDLERS[args.command](args, rep)
    except (InputError, FormError, VertexError, GeometryError, CurveError) as exc:
        rep.result = {"error": type(exc).__name__, "message": str(exc)}
        return rep.as_dict(), EXIT_INPUT
    except (SplittingError, RouteMismatch) as exc:
        rep.check(type(exc).__name__, False, str(exc))
        return rep.as_dict(), EXIT_CHECK
    return rep.as_dict(), EXIT_CHECK if rep.failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, code = run(args)
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    print(text)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
