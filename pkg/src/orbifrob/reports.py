"""Report assembly and rendering.

Every report is a plain dict carrying schema_version and an input echo;
jsonify() makes it JSON-clean (rationals "p/q", phases "theta=p/q",
spectra as [q, qbar, group_index] triples) and render_text() produces the
aligned human view.  Builders are deterministic, so serializing twice
gives identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .catalog import Spectrum
from .exact import Scaled, UnitPhase
from .milnor import MilnorRing

SCHEMA_VERSION = 1


def frac_str(x) -> str:
    return str(Fraction(x))


def phase_str(ph: UnitPhase) -> str:
    return f"theta={ph.theta}"


def scaled_obj(v: Scaled):
    if v.is_zero:
        return {"mag": "0", "phase": "theta=0"}
    return {"mag": frac_str(v.mag), "phase": phase_str(v.ph)}


def elem_str(g) -> str:
    return "(" + ",".join(frac_str(x) for x in g) + ")"


def mono_str(mono, names) -> str:
    parts = []
    for e, name in zip(mono, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def jsonify(x):
    """Exact objects to JSON-clean values, recursively."""
    if isinstance(x, Spectrum):
        return x.json_obj()
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, UnitPhase):
        return phase_str(x)
    if isinstance(x, Scaled):
        return scaled_obj(x)
    if isinstance(x, dict):
        return {str(k): jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonify(v) for v in x]
    return str(x)


def report(kind: str, input_echo: dict, body: dict) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "kind": kind, "input": input_echo}
    out.update(body)
    return jsonify(out)


def to_json(rep: dict) -> str:
    return json.dumps(rep, indent=2) + "\n"


# ---------------------------------------------------------------------------
# builders


def analyze_report(ring: MilnorRing, input_echo) -> dict:
    basis = [
        {"monomial": mono_str(m, ring.vars), "degree": ring.degree(m)}
        for m in ring.basis
    ]
    return report("analyze", input_echo, {
        "variables": list(ring.vars),
        "weights": list(ring.weights),
        "mu": ring.mu,
        "mu_product_form": ring.mu_formula,
        "d": sum(1 - 2 * q for q in ring.weights),
        "basis": basis,
        "socle": mono_str(ring.socle_monomial, ring.vars),
        "pairing": ring.pairing_matrix(),
    })


def _sector_rows(module):
    rows = []
    for g in module.group:
        r = module.sector_row(g)
        r["g"] = elem_str(r["g"])
        r["nu"] = [frac_str(x) for x in r["nu"]]
        rows.append(r)
    return rows


def _invariant_rows(module):
    rows = []
    for c in module.invariants():
        names = [module.ring.vars[i] for i in module.sectors[c.g].fixed]
        rows.append({
            "sector": elem_str(c.g),
            "monomial": mono_str(c.mono, names),
            "q": c.bidegree[0],
            "qbar": c.bidegree[1],
        })
    return rows


def orbifold_report(module, spectrum, matches, input_echo) -> dict:
    return report("orbifold", input_echo, {
        "group_order": module.group.order,
        "sigma": [[elem_str(g), module.sigma[g]] for g in module.group],
        "sectors": _sector_rows(module),
        "invariants": _invariant_rows(module),
        "spectrum": spectrum,
        "matches": list(matches),
    })


def dualize_report(module, dual, classification, spectrum, matches,
                   involution_ok, input_echo) -> dict:
    names = module.ring.vars
    inv_rows = []
    for c in dual.invariants():
        u = dual.underlying(c.g)
        local = [names[i] for i in dual.ambient.sectors[u].fixed]
        inv_rows.append({
            "label": elem_str(c.g),
            "underlying": elem_str(u),
            "monomial": mono_str(c.mono, local),
            "q": c.bidegree[0],
            "qbar": c.bidegree[1],
        })
    shift_rows = []
    for g in dual.group:
        s, sb = dual.shifts[g]
        shift_rows.append({
            "label": elem_str(g),
            "underlying": elem_str(dual.underlying(g)),
            "rank": dual.sector_ring(g).mu,
            "s_check": s,
            "s_bar_check": sb,
        })
    return report("dualize", input_echo, {
        "classification": classification,
        "is_g_euler": dual.is_g_euler,
        "label_group_order": dual.group.order,
        "shifts": shift_rows,
        "invariants": inv_rows,
        "spectrum": spectrum,
        "module_spectrum": [list(b) for b in dual.module_spectrum()],
        "matches": list(matches),
        "involution_ok": involution_ok,
    })


def fold_report(res, input_echo) -> dict:
    ring = MilnorRing(res.f)
    rows = [
        {"monomial": mono_str(m, res.f.vars), "degree": ring.degree(m)}
        for m in res.invariant_monomials
    ]
    return report("fold", input_echo, {
        "rank": res.rank,
        "factors": [[frac_str(t) for t in fac] for fac in res.factors],
        "invariants": rows,
        "spectrum": res.spectrum,
        "matches": list(res.matches),
        "notes": list(res.notes),
    })


def axioms_report(ax, input_echo) -> dict:
    return report("axioms", input_echo, {
        "ok": ax.ok,
        "failure_count": len(ax.failures),
        "failures": [{"axiom": f.axiom, "witness": f.witness} for f in ax.failures],
        "summary": ax.summary(),
    })


def tables_report(results: dict, input_echo) -> dict:
    return report("tables", input_echo, {"tables": results})


# ---------------------------------------------------------------------------
# text rendering (operates on the jsonified dicts)


def _aligned(header, rows) -> list[str]:
    table = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    out = []
    for i, r in enumerate(table):
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return out


def _spec_str(spec) -> str:
    return " ".join(f"({q},{qb})" for q, qb, *_ in spec)


def _pf(ok) -> str:
    return "PASS" if ok else "FAIL"


def _render_analyze(rep):
    lines = [
        f"polynomial: {rep['input'].get('poly', '?')}",
        f"variables:  {', '.join(rep['variables'])}",
        f"weights:    {', '.join(rep['weights'])}",
        f"mu:         {rep['mu']} (product form {rep['mu_product_form']})",
        f"d:          {rep['d']}",
        f"socle:      {rep['socle']}",
        "basis:",
    ]
    lines += ["  " + s for s in _aligned(
        ["monomial", "degree"],
        [[b["monomial"], b["degree"]] for b in rep["basis"]])]
    lines.append("pairing (residue form on the basis):")
    for row in rep["pairing"]:
        lines.append("  [" + ", ".join(row) + "]")
    return lines


def _render_orbifold(rep):
    lines = [f"group order: {rep['group_order']}",
             "sigma: " + " ".join(f"{g}->{v}" for g, v in rep["sigma"]),
             "sectors:"]
    lines += ["  " + s for s in _aligned(
        ["g", "fixed f", "rank", "d_g", "s+", "s-", "s", "s_bar", "parity"],
        [[r["g"], r["fixed_polynomial"], r["rank"], r["degree"], r["s_plus"],
          r["s_minus"], r["s"], r["s_bar"], r["parity"]]
         for r in rep["sectors"]])]
    lines.append("invariants:")
    lines += ["  " + s for s in _aligned(
        ["sector", "monomial", "q", "qbar"],
        [[r["sector"], r["monomial"], r["q"], r["qbar"]]
         for r in rep["invariants"]])]
    lines.append("spectrum: " + _spec_str(rep["spectrum"]))
    lines.append("matches (cc): " + (", ".join(rep["matches"]) or "none"))
    return lines


def _render_dualize(rep):
    lines = [f"classification: {rep['classification']}",
             f"G-Euler: {rep['is_g_euler']}",
             f"label group order: {rep['label_group_order']}",
             "shifts:"]
    lines += ["  " + s for s in _aligned(
        ["label", "underlying", "rank", "s_check", "s_bar_check"],
        [[r["label"], r["underlying"], r["rank"], r["s_check"], r["s_bar_check"]]
         for r in rep["shifts"]])]
    lines.append("invariants:")
    lines += ["  " + s for s in _aligned(
        ["label", "underlying", "monomial", "q", "qbar"],
        [[r["label"], r["underlying"], r["monomial"], r["q"], r["qbar"]]
         for r in rep["invariants"]])]
    lines.append("spectrum: " + _spec_str(rep["spectrum"]))
    lines.append("module spectrum: "
                 + " ".join(f"({q},{qb})" for q, qb in rep["module_spectrum"]))
    lines.append("matches (ac): " + (", ".join(rep["matches"]) or "none"))
    lines.append(f"involution check: {_pf(rep['involution_ok'])}")
    return lines


def _render_fold(rep):
    lines = [f"rank: {rep['rank']}",
             "factors per generator: "
             + "; ".join("(" + ", ".join(f) + ")" for f in rep["factors"]),
             "invariants:"]
    lines += ["  " + s for s in _aligned(
        ["monomial", "degree"],
        [[r["monomial"], r["degree"]] for r in rep["invariants"]])]
    lines.append("spectrum: " + _spec_str(rep["spectrum"]))
    lines.append("matches (cc): " + (", ".join(rep["matches"]) or "none"))
    for n in rep["notes"]:
        lines.append("note: " + n)
    return lines


def _render_axioms(rep):
    lines = [f"result: {_pf(rep['ok'])}"]
    for f in rep["failures"]:
        lines.append(f"  [{f['axiom']}] {f['witness']}")
    if rep["ok"]:
        lines.append(rep["summary"])
    return lines


def _render_table1(t):
    lines = [f"table 1: {_pf(t['all_pass'])}"]
    rows = []
    for r in t["rows"]:
        printed = f"({r['printed'][0]}, {r['printed'][1]})"
        for c in r["cases"]:
            params = ",".join(f"{k}={v}" for k, v in c["params"].items()) or "-"
            rows.append([r["row"], r["label"], printed, params,
                         ",".join(c["source"]["matches"]) or "none",
                         ",".join(c["dual"]["matches"]) or "none",
                         _pf(c["pass"])])
    lines += ["  " + s for s in _aligned(
        ["row", "construction", "printed", "params", "cc match", "ac match", "ok"],
        rows)]
    for r in t["rows"]:
        for c in r["cases"]:
            for n in c["notes"]:
                lines.append(f"  note (row {r['row']}, {c['params']}): {n}")
    return lines


def _render_table2(t):
    lines = [f"table 2: {_pf(t['all_pass'])}"]
    rows = []
    for r in t["rows"]:
        params = ",".join(f"{k}={v}" for k, v in r["params"].items()) or "-"
        rows.append([
            r["label"], params,
            f"({','.join(r['stage1']['source']['matches'])} | "
            f"{','.join(r['stage1']['dual']['matches'])})",
            f"({','.join(r['stage2']['source']['matches'])} | "
            f"{','.join(r['stage2']['dual']['matches'])})",
            "yes" if r["swap"] else "no",
            _pf(r["pass"]),
        ])
    lines += ["  " + s for s in _aligned(
        ["construction", "params", "stage 1", "stage 2", "swap", "ok"], rows)]
    for r in t["rows"]:
        for n in r["notes"]:
            lines.append(f"  note ({r['label']}): {n}")
    return lines


def _render_table3(t):
    lines = [f"table 3: {_pf(t['all_pass'])}"]
    rows = [[r["source"], r["target"], r["rank"],
             ",".join(r["matches"]) or "none", _pf(r["pass"])]
            for r in t["rows"]]
    lines += ["  " + s for s in _aligned(
        ["source", "target", "rank", "matches", "ok"], rows)]
    for r in t["rows"]:
        for n in r["notes"]:
            lines.append(f"  note ({r['source']} -> {r['target']}): {n}")
    return lines


def _render_p8(t):
    lines = [f"p8 self-duality: {_pf(t['pass'])}",
             f"  stated:  {_spec_str(t['stated'])}",
             f"  source:  {_spec_str(t['source'])}  {_pf(t['source_pass'])}",
             f"  dual:    {_spec_str(t['dual'])}  {_pf(t['dual_pass'])}"]
    for n in t["notes"]:
        lines.append("  note: " + n)
    for d in t["diagnosis"]:
        lines.append("  diagnosis: " + d)
    return lines


def _render_tables(rep):
    lines = []
    renderers = {"1": _render_table1, "2": _render_table2,
                 "3": _render_table3, "p8": _render_p8}
    for key, t in rep["tables"].items():
        lines += renderers[key](t)
        lines.append("")
    while lines and not lines[-1]:
        lines.pop()
    return lines


def render_text(rep: dict) -> str:
    kind = rep["kind"]
    renderers = {
        "analyze": _render_analyze,
        "orbifold": _render_orbifold,
        "dualize": _render_dualize,
        "fold": _render_fold,
        "axioms": _render_axioms,
        "tables": _render_tables,
    }
    return "\n".join(renderers[kind](rep)) + "\n"


def emit(rep: dict, fmt: str, out=None) -> str:
    text = to_json(rep) if fmt == "json" else render_text(rep)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    return text
