"""JSON jobs: validation, dispatch to the computational modules, and
report assembly.  Every report is plain JSON data with exact rationals
printed as ``"p/q"``; floats appear only in the Brjuno diagnostic."""

import json
from importlib import resources

from . import chern, foliation, geodesic, indices, localan
from .algebra import DEFAULT_ORDER, Laurent, MPoly, RatFunc, TSeries, as_scalar
from .errors import Inadmissible, InputError
from .expr import parse_expression
from .report import SCHEMA_VERSION, jsonable
from .symfun import SymPoly

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INADMISSIBLE = 0, 1, 2, 3


class JobError(InputError):
    """Malformed job document; the message starts with the schema path."""


# ---------------------------------------------------------------------------
# schema helpers


def _get(doc, path, key, kind=None, default=...):
    if not isinstance(doc, dict):
        raise JobError(f"{path}: expected an object")
    if key not in doc:
        if default is ...:
            raise JobError(f"{path}.{key}: required field missing")
        return default
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise JobError(f"{path}.{key}: expected {names}, got {type(value).__name__}")
    return value


def _scalar(value, path):
    if isinstance(value, bool):
        raise JobError(f"{path}: expected a rational")
    try:
        return as_scalar(value if not isinstance(value, str) else value.replace(" ", ""))
    except (TypeError, ValueError, ZeroDivisionError):
        raise JobError(f"{path}: {value!r} is not a rational") from None


def _expr(text, variables, path):
    if not isinstance(text, (str, int)):
        raise JobError(f"{path}: expected an expression string")
    try:
        return parse_expression(str(text), variables)
    except InputError as exc:
        raise JobError(f"{path}: {exc}") from None


def _vars(value, path):
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value) or not value:
        raise JobError(f"{path}: expected a nonempty list of variable names")
    if len(set(value)) != len(value):
        raise JobError(f"{path}: repeated variable name")
    return tuple(value)


def _ratexpr(value, variables, path):
    """Expression or ``{num, den}`` pair, as a rational function."""
    if isinstance(value, dict):
        num = _expr(_get(value, path, "num"), variables, f"{path}.num")
        den = _expr(_get(value, path, "den", default="1"), variables, f"{path}.den")
        if den.is_zero():
            raise JobError(f"{path}.den: zero denominator")
        return RatFunc(num, den)
    return RatFunc(_expr(value, variables, path))


def parse_exponent(key, nvars, path):
    text = str(key).strip().strip("()[]")
    try:
        exp = tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError:
        raise JobError(f"{path}: bad exponent {key!r}") from None
    if len(exp) != nvars:
        raise JobError(f"{path}: exponent {key!r} needs {nvars} entries")
    return exp


def series_from_doc(doc, path="series"):
    """``{vars, order, coeffs: {exponent: "p/q"}}`` or ``{vars, order, expr}``."""
    variables = _vars(_get(doc, path, "vars", default=["z"]), f"{path}.vars")
    order = _get(doc, path, "order", int, DEFAULT_ORDER)
    if "expr" in doc:
        return TSeries(_expr(doc["expr"], variables, f"{path}.expr"), order)
    coeffs = _get(doc, path, "coeffs", dict)
    terms = {parse_exponent(k, len(variables), f"{path}.coeffs"): _scalar(v, f"{path}.coeffs[{k}]")
             for k, v in coeffs.items()}
    return TSeries(MPoly(variables, terms), order)


def series_to_doc(s):
    if isinstance(s, Laurent):
        return {"var": s.var, "order": s.order, "weight": s.weight,
                "coeffs": {str(k): str(c) for k, c in sorted(s.coeffs.items())},
                "text": str(s)}
    return {"vars": list(s.variables), "order": s.order,
            "coeffs": {",".join(map(str, e)): str(c) for e, c in s.poly.sorted_terms()},
            "text": str(s)}


def laurent_from_doc(doc, path="laurent", weight=None):
    """``{var, order, coeffs: {k: "p/q"}}`` with integer (possibly negative) exponents."""
    var = _get(doc, path, "var", str, "z")
    order = _get(doc, path, "order", int, DEFAULT_ORDER)
    coeffs = _get(doc, path, "coeffs", dict)
    clean = {}
    for k, v in coeffs.items():
        try:
            kk = int(str(k).strip("() ,"))
        except ValueError:
            raise JobError(f"{path}.coeffs: bad exponent {k!r}") from None
        clean[kk] = _scalar(v, f"{path}.coeffs[{k}]")
    return Laurent(clean, order, var, weight)


def _phi(text, arity, path="phi"):
    if not isinstance(text, str):
        raise JobError(f"{path}: expected an expression in x1..x{arity}")
    try:
        return SymPoly.from_expression(text, arity)
    except InputError as exc:
        raise JobError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# manifolds and foliations


class Model:
    def __init__(self, ring, cTM, c1TF, echo):
        self.ring = ring
        self.cTM = cTM
        self.c1TF = c1TF
        self.echo = echo


def _ring_expr(ring, text, path):
    try:
        return ring.parse(str(text))
    except InputError as exc:
        raise JobError(f"{path}: {exc}") from None


def model_from_doc(job, default_c1=None, default_manifold=None):
    mdoc = job.get("manifold", default_manifold)
    if mdoc is None:
        raise JobError("job.manifold: required field missing")
    if "ring" in mdoc:
        ring = chern.RingPresentation.from_json(mdoc["ring"])
        cTM = _ring_expr(ring, _get(mdoc, "job.manifold", "tangent_class"), "job.manifold.tangent_class")
        kind = "custom"
    else:
        kind = _get(mdoc, "job.manifold", "kind", str)
        param = _get(mdoc, "job.manifold", "param", int)
        if param < 0 or (kind == "projective_space" and param < 1):
            raise JobError("job.manifold.param: out of range")
        try:
            ring = chern.builtin_ring(kind, param)
        except InputError as exc:
            raise JobError(f"job.manifold.kind: {exc}") from None
        cTM = chern.tangent_class(ring, kind, param)
    c1 = job.get("c1TF", default_c1)
    if c1 is None:
        raise JobError("job.c1TF: required field missing")
    c1TF = _ring_expr(ring, c1, "job.c1TF") if isinstance(c1, str) else c1
    if c1TF != c1TF.component(2):
        raise JobError("job.c1TF: must be homogeneous of degree 2")
    return Model(ring, cTM, c1TF, {"manifold": mdoc, "c1TF": str(c1TF), "c(TM)": str(cTM)})


class FoliationData:
    def __init__(self):
        self.charts = {}
        self.symbols = {}
        self.kind = None
        self.homogeneous = None
        self.candidates = []
        self.transitions = []


def foliation_from_doc(doc, path="job.foliation"):
    data = FoliationData()
    if "homogeneous" in doc:
        h = _get(doc, path, "homogeneous", dict)
        variables = _vars(_get(h, f"{path}.homogeneous", "vars"), f"{path}.homogeneous.vars")
        comps = _get(h, f"{path}.homogeneous", "components", list)
        if len(comps) != len(variables):
            raise JobError(f"{path}.homogeneous.components: need {len(variables)} entries")
        Zh = foliation.ChartField([_expr(c, variables, f"{path}.homogeneous.components[{i}]")
                                   for i, c in enumerate(comps)], "homogeneous")
        data.homogeneous = Zh
        cands = _get(doc, path, "singular_candidates", list, [])
        for i, p in enumerate(cands):
            if not isinstance(p, list):
                raise JobError(f"{path}.singular_candidates[{i}]: expected a list of rationals")
            data.candidates.append([_scalar(x, f"{path}.singular_candidates[{i}]") for x in p])
        return data
    charts = _get(doc, path, "charts", list)
    if not charts:
        raise JobError(f"{path}.charts: at least one chart is required")
    for i, ch in enumerate(charts):
        cp = f"{path}.charts[{i}]"
        name = _get(ch, cp, "name", str)
        variables = _vars(_get(ch, cp, "vars"), f"{cp}.vars")
        comps = _get(ch, cp, "components", list)
        if len(comps) != len(variables):
            raise JobError(f"{cp}.components: need {len(variables)} entries")
        try:
            data.charts[name] = foliation.ChartField(
                [_expr(c, variables, f"{cp}.components[{j}]") for j, c in enumerate(comps)], name)
        except InputError as exc:
            raise JobError(f"{cp}: {exc}") from None
    chris = doc.get("christoffel")
    if chris is not None:
        data.kind = _get(chris, f"{path}.christoffel", "kind", str)
        if data.kind not in (foliation.AFFINE, foliation.PROJECTIVE):
            raise JobError(f"{path}.christoffel.kind: must be affine or projective")
        for name, field in data.charts.items():
            if name in chris:
                data.symbols[name] = foliation.Christoffel(
                    data.kind, _expr(chris[name], field.variables, f"{path}.christoffel.{name}"))
    for i, t in enumerate(doc.get("transitions", [])):
        tp = f"{path}.transitions[{i}]"
        src, dst = _get(t, tp, "from", str), _get(t, tp, "to", str)
        for n in (src, dst):
            if n not in data.charts:
                raise JobError(f"{tp}: unknown chart {n!r}")
        variables = data.charts[dst].variables
        data.transitions.append((src, dst, _ratexpr(_get(t, tp, "multiplier"), variables, f"{tp}.multiplier")))
    first = next(iter(data.charts))
    for i, c in enumerate(_get(doc, path, "singular_candidates", list, [])):
        cp = f"{path}.singular_candidates[{i}]"
        if isinstance(c, dict):
            chart = _get(c, cp, "chart", str)
            point = _get(c, cp, "point", list)
        elif isinstance(c, list):
            chart, point = first, c
        else:
            raise JobError(f"{cp}: expected a point or {{chart, point}}")
        if chart not in data.charts:
            raise JobError(f"{cp}.chart: unknown chart {chart!r}")
        data.candidates.append((chart, [_scalar(x, cp) for x in point]))
    return data


def records_for(data, kind):
    """Singular records; ``kind`` is the symbol wanted (or ``None``)."""
    if data.homogeneous is not None:
        return foliation.homogeneous_records(data.homogeneous, data.candidates, kind)
    records = []
    by_chart = {}
    for chart, p in data.candidates:
        by_chart.setdefault(chart, []).append(p)
    for chart, pts in by_chart.items():
        W = data.charts[chart]
        symbol = None
        if kind is not None:
            if chart not in data.symbols:
                raise JobError(f"job.foliation.christoffel.{chart}: symbol missing")
            symbol = data.symbols[chart]
            if symbol.kind == foliation.AFFINE and kind == foliation.PROJECTIVE:
                symbol = foliation.affine_to_projective(symbol, W)
            elif symbol.kind != kind:
                raise JobError(f"job.foliation.christoffel.kind: a {kind} symbol is needed")
        records.extend(foliation.singular_record(W, symbol, pts))
    return records


def _homogeneous_defaults(data):
    if data.homogeneous is None:
        return None, None
    n = data.homogeneous.dim - 1
    d = foliation._homogeneous_degree(data.homogeneous)
    return f"{1 - d}*h", {"kind": "projective_space", "param": n}


# ---------------------------------------------------------------------------
# commands


def _index(job, options, which):
    data = foliation_from_doc(_get(job, "job", "foliation", dict))
    c1, manifold = _homogeneous_defaults(data)
    model = model_from_doc(job, c1, manifold)
    n = model.ring.dimension
    jobs = options.get("jobs", 1)
    phi_text = options.get("phi") or job.get("phi")
    if which == "affine":
        recs = records_for(data, foliation.AFFINE)
        rep = indices.verify_affine_index(model.ring, model.c1TF, recs, jobs)
        extra = {}
    elif which == "projective":
        if phi_text is None:
            raise JobError("job.phi: required for the projective index")
        phi = _phi(phi_text, n + 1)
        recs = records_for(data, foliation.PROJECTIVE)
        rep = indices.verify_projective_index(model.ring, model.c1TF, model.cTM, recs, phi, jobs)
        extra = {"phi": str(phi)}
    else:
        if phi_text is None:
            raise JobError("job.phi: required for Baum-Bott")
        phi = _phi(phi_text, n)
        recs = records_for(data, None)
        rep = indices.verify_baum_bott(model.ring, model.c1TF, model.cTM, recs, phi, jobs)
        extra = {"phi": str(phi)}
    result = rep.to_json()
    result["records"] = [r.to_json() for r in sorted(recs, key=lambda r: (r.chart, r.point))]
    result.update(model.echo)
    result.update(extra)
    return result, rep.exit_code


def _geodesic(job, options):
    fdoc = _get(job, "job", "foliation", dict)
    data = foliation_from_doc(fdoc)
    checks = []

    def add(name, ok, witness=None):
        checks.append({"identity": name, "ok": bool(ok), "witness": witness})

    if data.homogeneous is not None:
        Zh = data.homogeneous
        kind = job.get("kind", foliation.AFFINE)
        for k in range(Zh.dim):
            W, gamma = foliation.homogeneous_to_chart(Zh, k)
            data.charts[W.name] = W
            data.symbols[W.name] = gamma if kind == foliation.AFFINE else foliation.affine_to_projective(gamma, W)
        for k in range(Zh.dim):
            for l in range(Zh.dim):
                if k != l:
                    r = foliation.cross_chart_check(Zh, k, l)
                    add(f"chart {k}->{l}: W_l = g W_k", r["field"])
                    add(f"chart {k}->{l}: gamma transforms", r["christoffel"])
        fields, mults = geodesic.projective_space_cocycle_data(Zh)
        rep = geodesic.cocycle_check(fields, mults)
        for t in rep["inverse"] + rep["triple"]:
            add(f"cocycle {t.get('pair') or t.get('charts')}", t["ok"], t["witness"])
    for name, W in data.charts.items():
        sym = data.symbols.get(name)
        if sym is None:
            continue
        if sym.kind == foliation.AFFINE:
            X, H = geodesic.build_geodesic_affine(W, sym)
            for key, ok in geodesic.check_affine_relations(X, H).items():
                add(f"{name}: {key}", ok)
        else:
            X, H, Y = geodesic.build_geodesic_projective(W, sym)
            for key, ok in geodesic.check_sl2_relations(X, H, Y).items():
                add(f"{name}: {key}", ok)
            Fu, Fv = geodesic.projectivized_riccati(W, sym)
            ok, wit = geodesic.riccati_charts_agree(Fu, Fv)
            add(f"{name}: riccati charts agree under v = 1/u", ok, wit)
        add(f"{name}: base components are zeta*Z", geodesic.check_base_components(X, W))
    for src, dst, g in data.transitions:
        Zs, Zd = data.charts[src], data.charts[dst]
        if Zs.variables != Zd.variables:
            raise JobError("job.foliation.transitions: charts must share overlap coordinates")
        same = all(RatFunc(a) == g * b for a, b in zip(Zs.components, Zd.components))
        add(f"{src}->{dst}: Z_{src} = g Z_{dst}", same)
        sd = data.symbols.get(dst)
        ss = data.symbols.get(src)
        if sd is None:
            continue
        if sd.kind == foliation.AFFINE:
            moved = foliation.change_generator_affine(geodesic._rat_symbol(sd), g, Zd)
            ok, wit = geodesic.gluing_check_affine(Zd, sd, g)
        else:
            moved = foliation.change_generator_projective(geodesic._rat_symbol(sd), g, Zd)
            ok, wit = geodesic.gluing_check_projective(Zd, sd, g)
        if ss is not None:
            add(f"{src}->{dst}: declared symbol matches transported one", RatFunc(ss.symbol) == moved.symbol)
        add(f"{src}->{dst}: geodesic fields glue", ok, wit)
    if data.transitions:
        mults = {(dst, src): g for src, dst, g in data.transitions}
        fields = {n: foliation.ChartField([RatFunc(c) for c in f.components], n) for n, f in data.charts.items()}
        rep = geodesic.cocycle_check(fields, mults)
        for t in rep["inverse"] + rep["triple"]:
            add(f"cocycle {t.get('pair') or t.get('charts')}", t["ok"], t["witness"])
    if not checks:
        raise JobError("job.foliation: nothing to check (no Christoffel data)")
    ok = all(c["ok"] for c in checks)
    return {"checks": checks, "verdict": "pass" if ok else "fail"}, EXIT_OK if ok else EXIT_MISMATCH


def _series_arg(job, options, key="series"):
    doc = _get(job, "job", key)
    if isinstance(doc, str):
        var = job.get("var", "z")
        return TSeries(_expr(doc, (var,), f"job.{key}"), options.get("order", DEFAULT_ORDER))
    s = series_from_doc(doc, f"job.{key}")
    order = options.get("order")
    return s.with_order(min(order, s.order)) if order is not None else s


def _distortion(job, options):
    f = _series_arg(job, options)
    if f.nvars != 1:
        raise JobError("job.series.vars: one variable expected")
    if job.get("laurent"):
        f = Laurent.from_series(f)
    return {"distortion": series_to_doc(localan.affine_distortion(f))}, EXIT_OK


def _schwarzian(job, options):
    f = _series_arg(job, options)
    if f.nvars != 1:
        raise JobError("job.series.vars: one variable expected")
    if job.get("laurent"):
        f = Laurent.from_series(f)
    return {"schwarzian": series_to_doc(localan.schwarzian(f))}, EXIT_OK


def _angle(job, options):
    kind = _get(job, "job", "kind", str)
    if kind not in ("affine", "projective"):
        raise JobError("job.kind: must be affine or projective")
    weight = 1 if kind == "affine" else 2
    form = laurent_from_doc(_get(job, "job", "form", dict), "job.form", weight)
    if kind == "affine":
        theta, cls = localan.affine_angle(form)
        return {"residue": str(form.residue()), "class": cls.to_json()}, EXIT_OK
    t2, cls = localan.projective_angle(form)
    return {"quadratic_residue": str(form.quadratic_residue()), "class": cls.to_json()}, EXIT_OK


def _riccati(job, options):
    S = laurent_from_doc(_get(job, "job", "S", dict), "job.S", 2)
    branch = options.get("branch") or job.get("theta")
    if branch is None:
        raise JobError("job.theta: the branch theta is required")
    theta = _scalar(branch, "job.theta")
    u, sol = localan.riccati_projective_to_affine(S, theta, options.get("order", DEFAULT_ORDER), details=True)
    return {"theta": str(theta), "u": series_to_doc(u),
            "affine_symbol": series_to_doc(localan.affine_symbol_from_riccati(u)),
            "free_coefficients": [list(k) for k in sol.free],
            "residual_checked_to_order": sol.residual_order}, EXIT_OK


def _lambda(job):
    lam = _get(job, "job", "lambda")
    if isinstance(lam, str):
        lam = [x for x in lam.split(",") if x.strip()]
    if not isinstance(lam, list) or not lam:
        raise JobError("job.lambda: expected a nonempty list of rationals")
    return [_scalar(x, f"job.lambda[{i}]") for i, x in enumerate(lam)]


def _normalform(job, options):
    kind = _get(job, "job", "kind", str)
    lam = _lambda(job)
    variables = _vars(job.get("vars", ["z"] if len(lam) == 1 else [f"z{i + 1}" for i in range(len(lam))]),
                      "job.vars")
    if len(variables) != len(lam):
        raise JobError("job.vars: one variable per eigenvalue")
    order = options.get("order", DEFAULT_ORDER)
    symbol = TSeries(_expr(_get(job, "job", "symbol"), variables, "job.symbol"), order)
    if kind == "affine":
        f, sol = localan.normalize_affine(lam, symbol, order, details=True)
        return {"f": series_to_doc(f), "normalized_symbol": str(symbol.constant_term()),
                "free_coefficients": [list(k) for k in sol.free]}, EXIT_OK
    if kind == "projective":
        branch = options.get("branch") or job.get("branch")
        if branch is None:
            raise JobError("job.branch: a root of gamma0^2 = -2 rho(0) is required")
        g, sol = localan.normalize_projective(lam, symbol, _scalar(branch, "job.branch"), order, details=True)
        return {"gamma": series_to_doc(g), "free_coefficients": [list(k) for k in sol.free]}, EXIT_OK
    raise JobError("job.kind: must be affine or projective")


def _brjuno(job, options):
    lam = _lambda(job)
    mu = _scalar(_get(job, "job", "mu"), "job.mu")
    m_max = _get(job, "job", "m_max", int, 16)
    return localan.brjuno_diagnostic(lam, mu, m_max).to_json(), EXIT_OK


def _chern(job, options):
    model = model_from_doc(job)
    n = model.ring.dimension
    out = {"rhs_affine": str(chern.rhs_affine(model.ring, model.c1TF)),
           "c(TM-T_F)": str(chern.normal_class(model.ring, model.c1TF, model.cTM))}
    phi_text = options.get("phi") or job.get("phi")
    if phi_text:
        phi = _phi(phi_text, n + 1)
        out["phi"] = str(phi)
        out["rhs_projective"] = str(chern.rhs_projective(model.ring, model.c1TF, model.cTM, phi))
        out["rhs_projective_via_bundle"] = str(
            chern.rhs_projective_via_bundle(model.ring, model.c1TF, model.cTM, phi))
    out.update(model.echo)
    return out, EXIT_OK


def _surface(job, options):
    g = _get(job, "job", "genus", int)
    nv, nh = _get(job, "job", "n_v", int), _get(job, "job", "n_h", int)
    data = chern.product_surface_classes(g, nv, nh)
    a, b = data["components"]
    expected = (2 * nv + 2, 2 * nh - (2 * g - 2))
    return {"c1(K_F)": str(data["c1_KF"]), "c1(K_S)": str(data["c1_KS"]),
            "c1(K_F^2 (x) K_S^*)": str(data["c1_KF2_KSdual"]),
            "components": [str(a), str(b)], "int c1(T_F)^2": str(chern.rhs_affine(data["ring"], data["c1_TF"])),
            "matches_closed_form": (a, b) == expected}, EXIT_OK


def _signature(job, options):
    rep = chern.signature_report(_scalar(_get(job, "job", "c1sq"), "job.c1sq"),
                                 _scalar(_get(job, "job", "c2"), "job.c2"),
                                 None if job.get("c1sq_TF") is None else _scalar(job["c1sq_TF"], "job.c1sq_TF"))
    return rep, EXIT_OK


COMMANDS = {
    "index affine": lambda j, o: _index(j, o, "affine"),
    "index projective": lambda j, o: _index(j, o, "projective"),
    "index baumbott": lambda j, o: _index(j, o, "baumbott"),
    "geodesic check": _geodesic,
    "distortion": _distortion,
    "schwarzian": _schwarzian,
    "angle": _angle,
    "riccati": _riccati,
    "normalform": _normalform,
    "brjuno": _brjuno,
    "chern": _chern,
    "surface": _surface,
    "signature": _signature,
}


def run(job, options=None):
    """Execute a job document.  Returns ``(report, exit_code)``.

    Input problems give exit code 2 and inadmissible data exit code 3; the
    report then carries an ``error`` entry instead of a result.
    """
    options = dict(options or {})
    options.setdefault("order", DEFAULT_ORDER)
    options.setdefault("jobs", 1)
    report = {"schema_version": SCHEMA_VERSION, "convention": chern.CONVENTION}
    try:
        if not isinstance(job, dict):
            raise JobError("job: expected an object")
        command = _get(job, "job", "command", str)
        if command not in COMMANDS:
            raise JobError(f"job.command: unknown command {command!r}")
        report["command"] = command
        report["input"] = job
        report["options"] = {k: v for k, v in sorted(options.items()) if v is not None}
        result, code = COMMANDS[command](job, options)
        report["result"] = result
    except InputError as exc:
        report["error"] = {"type": "input", "message": str(exc)}
        code = EXIT_INPUT
    except Inadmissible as exc:
        report["error"] = {"type": "inadmissible", "message": str(exc)}
        mi = getattr(exc, "multi_index", None)
        if mi is not None:
            report["error"]["multi_index"] = list(mi)
        code = EXIT_INADMISSIBLE
    report["exit_code"] = code
    return jsonable(report), code


def load_job_text(text, source="job"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def example_names():
    return sorted(p.name[:-5] for p in resources.files("folcalc.data").iterdir() if p.name.endswith(".json"))


def load_example(name):
    path = resources.files("folcalc.data") / f"{name}.json"
    if not path.is_file():
        raise JobError(f"example {name!r} not found; available: {', '.join(example_names())}")
    return load_job_text(path.read_text(), name)


def render_text(report, indent=0):
    """Plain-text rendering of a report (same content as the JSON)."""
    lines = []
    pad = "  " * indent
    if isinstance(report, dict):
        for k in sorted(report):
            v = report[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_leaf(v)}")
    elif isinstance(report, list):
        for v in report:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_leaf(v)}")
    else:
        lines.append(f"{pad}{_leaf(report)}")
    return "\n".join(lines)


def _leaf(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)
