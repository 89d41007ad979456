"""Command line: ``twohol --task TASK --cm CM --geometry NAME [options]``.

Crossed modules are builtin names or JSON files; geometries are gallery
names, files in ``$TWOHOL_GALLERY_DIR`` (which take precedence), or JSON
files.  Results go to stdout or ``--out`` as JSON or as an aligned table.
Errors are emitted as a JSON record naming the module and the failed
precondition, with exit status 2.
"""

import argparse
import json
import os
import sys
from collections import Counter
from fractions import Fraction

from . import polyhedron as ph
from . import ribbon as rb
from . import wilson as w
from .complex import TwoComplex, pachner_flip, pachner_merge, pachner_subdivide
from .errors import ManifestError, TwoholError
from .gauge import burnside_count, orbits
from .group_core import BUILTIN, CrossedModule, builtin, check_interchange, validate
from .holonomy import count_fake_flat, enumerate_fake_flat, total_surface_holonomy

TASKS = ("validate", "enumerate", "holonomy", "orbits", "evaluate", "compose", "sum", "pair",
         "partition", "move", "selftest")

COMPLEX_BUILDERS = {
    "triangle": ph.triangle,
    "square": ph.square,
    "fan3": lambda: ph.fan(3),
    "gamma_plus": ph.gamma_plus,
    "triple_point": ph.triple_point,
    "doubled_triangle": ph.doubled_triangle,
    "doubled_square": ph.doubled_square,
    "torus_partition": ph.torus_partition,
    "coordinate_planes_s3": ph.coordinate_planes_s3,
    "lens_spine": ph.lens_spine,
    "torus_filling": lambda: ph.stratify(rb.graph_filling(rb.torus_standard_graph())),
}

RIBBON_BUILDERS = {
    "b_times": rb.b_times,
    "b_plus": rb.b_plus,
    "cup": rb.cup,
    "cap": rb.cap,
    "house": rb.house,
    "birth": rb.birth,
    "saddle": rb.saddle,
    "cusp": rb.cusp,
    "fold_crossing": rb.fold_crossing,
    "crossing_change": rb.crossing_change,
    "reidemeister_i": rb.reidemeister_i,
    "reidemeister_ii": rb.reidemeister_ii,
    "reidemeister_iii": rb.reidemeister_iii,
    "triangle_ribbon": rb.triangle_ribbon,
}


def builtin_gallery():
    """Sorted listing of every named geometry with its kind, signature and cell counts."""
    out = []
    for name in sorted(set(COMPLEX_BUILDERS) | set(RIBBON_BUILDERS)):
        if name in RIBBON_BUILDERS:
            r = RIBBON_BUILDERS[name]()
            c, kind = r.body, "ribbon"
            sig = "%d->%d" % r.signature
        else:
            p = COMPLEX_BUILDERS[name]()
            c, kind, sig = p.body, "polyhedron", None
        out.append({"name": name, "kind": kind, "signature": sig,
                    "vertices": c.n_vertices, "edges": len(c.edges), "faces": len(c.faces)})
    return out


# -- reference resolution ---------------------------------------------------------------

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ManifestError("cannot read %s: %s" % (path, exc.strerror)) from exc
    except json.JSONDecodeError as exc:
        raise ManifestError("%s is not valid JSON: %s" % (path, exc), precondition="schema") from exc


def resolve_cm(ref):
    if ref is None:
        raise ManifestError("this task needs --cm", precondition="crossed module given")
    if ref in BUILTIN:
        return builtin(ref)
    if os.path.exists(ref):
        return CrossedModule.from_dict(_read_json(ref), name=os.path.basename(ref))
    raise ManifestError("unknown crossed module %r (builtins: %s)" % (ref, ", ".join(sorted(BUILTIN))))


def geometry_from_dict(data):
    """A ribbon record if it carries boundary maps, otherwise a polyhedron or plain complex."""
    if not isinstance(data, dict):
        raise ManifestError("geometry record must be a JSON object", precondition="schema")
    if "maps" in data:
        return rb.Ribbon.from_dict(data)
    try:
        c = TwoComplex.from_dict(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ManifestError("malformed complex record: %s" % exc, precondition="schema") from exc
    try:
        return ph.SimplePolyhedron.from_dict(data)
    except TwoholError:
        return c.validate()


def resolve_geometry(ref):
    if ref is None:
        raise ManifestError("this task needs --geometry", precondition="geometry given")
    gallery = os.environ.get("TWOHOL_GALLERY_DIR")
    if gallery:
        path = os.path.join(gallery, ref + ".json")
        if os.path.exists(path):
            return geometry_from_dict(_read_json(path))
    if ref in RIBBON_BUILDERS:
        return RIBBON_BUILDERS[ref]()
    if ref in COMPLEX_BUILDERS:
        return COMPLEX_BUILDERS[ref]()
    if os.path.exists(ref):
        return geometry_from_dict(_read_json(ref))
    raise ManifestError("unknown geometry %r" % ref)


def _body(geom):
    return geom.body if hasattr(geom, "body") else geom


def _ribbon(geom, flag="--geometry"):
    if not isinstance(geom, rb.Ribbon):
        raise ManifestError("%s must name a ribbon for this task" % flag, precondition="ribbon geometry")
    return geom


def _fixed(ref):
    if ref is None:
        return None
    data = _read_json(ref)
    try:
        items = data.items() if isinstance(data, dict) else data
        return {int(e): int(x) for e, x in items}
    except (TypeError, ValueError) as exc:
        raise ManifestError("boundary file must map edges to labels", precondition="schema") from exc


def _gerbe(ref):
    if ref is None:
        return None
    try:
        return ph.GerbeDatum.from_dict(_read_json(ref))
    except (AttributeError, TypeError, ValueError) as exc:
        raise ManifestError("gerbe file must map 'x,y,z' to [p, q]", precondition="schema") from exc


def _pairs(text):
    try:
        pairs = json.loads(text) if text else [[0, 0]]
        return tuple((int(a), int(b)) for a, b in pairs)
    except (TypeError, ValueError) as exc:
        raise ManifestError("--pairs must be a JSON list of [j, k] pairs", precondition="schema") from exc


def _site(text):
    if text is None:
        raise ManifestError("--move needs --site", precondition="move site given")
    try:
        return json.loads(text)
    except ValueError as exc:
        raise ManifestError("--site must be JSON", precondition="schema") from exc


# -- tasks ---------------------------------------------------------------------------

def _scalar(x):
    return w._scalar_to_json(x)


def _state(state):
    out = state.to_dict()
    out["normalization"] = state.weights.to_dict() if state.weights else None
    return out


def task_validate(m):
    cm = resolve_cm(m["cm"])
    bad = validate(cm)
    return {"violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in bad],
            "interchange": (not bad) and check_interchange(cm)}


def task_enumerate(m):
    cm, geom = resolve_cm(m["cm"]), resolve_geometry(m["geometry"])
    return {"count": count_fake_flat(cm, _body(geom), _fixed(m.get("fix_boundary")))}


def task_holonomy(m):
    cm, geom = resolve_cm(m["cm"]), resolve_geometry(m["geometry"])
    c = _body(geom)
    hist = Counter()
    for d in enumerate_fake_flat(cm, c, _fixed(m.get("fix_boundary"))):
        x = total_surface_holonomy(cm, c, d)
        hist[(x.h, x.g)] += 1
    return {"holonomy": [{"h": h, "g": g, "count": n} for (h, g), n in sorted(hist.items())]}


def task_orbits(m):
    cm, geom = resolve_cm(m["cm"]), resolve_geometry(m["geometry"])
    c, fixed = _body(geom), _fixed(m.get("fix_boundary"))
    obs = orbits(cm, c, fixed_boundary=True, fixed=fixed)
    out = {"orbits": len(obs), "sizes": sorted(len(o) for o in obs)}
    if fixed is None:
        out["burnside"] = _scalar(burnside_count(cm, c, fixed_boundary=True))
    return out


def task_evaluate(m):
    cm, geom = resolve_cm(m["cm"]), resolve_geometry(m["geometry"])
    gerbe, workers = _gerbe(m.get("gerbe")), m.get("workers") or 1
    if isinstance(geom, rb.Ribbon):
        return _state(w.evaluate(cm, geom, gerbe, workers=workers))
    return _state(w.evaluate(cm, w.complex_as_ribbon(_body(geom)), gerbe, workers=workers))


def _two_ribbons(m):
    r1 = _ribbon(resolve_geometry(m["geometry"]))
    r2 = _ribbon(resolve_geometry(m.get("r") or m["geometry"]), "--r")
    return r1, r2


def task_compose(m):
    cm, gerbe = resolve_cm(m["cm"]), _gerbe(m.get("gerbe"))
    r1, r2 = _two_ribbons(m)
    out = _state(w.compose_states(w.evaluate(cm, r1, gerbe), w.evaluate(cm, r2, gerbe)))
    out["matches_stack"] = w.compose_states(w.evaluate(cm, r1, gerbe), w.evaluate(cm, r2, gerbe)) == \
        w.evaluate(cm, rb.stack(r1, r2), gerbe)
    return out


def task_sum(m):
    cm = resolve_cm(m["cm"])
    r1, r2 = _two_ribbons(m)
    pairs = _pairs(m.get("pairs"))
    state = w.evaluate(cm, rb.connected_sum(r1, r2, pairs))
    out = _state(state)
    out["matches_collar"] = state == w.tensor_with_collar(cm, w.evaluate(cm, r1), w.evaluate(cm, r2),
                                                          w.collars(r1, r2, pairs))
    return out


def task_pair(m):
    cm, gerbe = resolve_cm(m["cm"]), _gerbe(m.get("gerbe"))
    r1, r2 = _two_ribbons(m)
    value = w.orientation_pairing(cm, w.evaluate(cm, rb.dagger1(r2), gerbe), w.evaluate(cm, r1, gerbe))
    return {"pairing": _scalar(value)}


def task_partition(m):
    cm, geom = resolve_cm(m["cm"]), resolve_geometry(m["geometry"])
    return {"partition": _scalar(w.partition_function(cm, geom, _gerbe(m.get("gerbe"))))}


MOVES = {
    "flip": lambda p, s: pachner_flip(_body(p), int(s)),
    "subdivide": lambda p, s: pachner_subdivide(_body(p), int(s)),
    "merge": lambda p, s: pachner_merge(_body(p), int(s)),
    "02": ph.handle_move_02,
    "20": ph.handle_move_20,
    "23": ph.handle_move_23,
    "32": ph.handle_move_32,
}


def task_move(m):
    name = m.get("move")
    if name not in MOVES:
        raise ManifestError("--move must be one of %s" % ", ".join(MOVES), precondition="known move")
    geom = resolve_geometry(m["geometry"])
    if isinstance(geom, rb.Ribbon):
        raise ManifestError("moves act on complexes and polyhedra", precondition="polyhedron geometry")
    after = MOVES[name](geom, _site(m.get("site")))
    before_c, after_c = _body(geom), _body(after)
    out = {"move": name, "geometry": after.to_dict(),
           "cells_before": [before_c.n_vertices, len(before_c.edges), len(before_c.faces)],
           "cells_after": [after_c.n_vertices, len(after_c.edges), len(after_c.faces)]}
    if m.get("cm"):
        cm = resolve_cm(m["cm"])
        if before_c.is_closed():
            a, b = w.partition_function(cm, before_c), w.partition_function(cm, after_c)
            out.update(before=_scalar(a), after=_scalar(b), equal=a == b)
        else:
            a, b = w.evaluate_complex(cm, before_c), w.evaluate_complex(cm, after_c)
            out.update(equal=a == b)
    return out


def task_selftest(m, report=None):
    from .acceptance import run_all

    results = run_all(report)
    return {"criteria": results, "passed": all(r["passed"] for r in results)}


TASK_FUNCS = {
    "validate": task_validate, "enumerate": task_enumerate, "holonomy": task_holonomy,
    "orbits": task_orbits, "evaluate": task_evaluate, "compose": task_compose, "sum": task_sum,
    "pair": task_pair, "partition": task_partition, "move": task_move, "selftest": task_selftest,
}


# -- output ------------------------------------------------------------------------------

def _cell(x):
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x):
        return str(Fraction(*x))
    if isinstance(x, (list, dict)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _align(rows):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in rows)


def render_table(task, result):
    """Aligned text: states as a beta0 / beta1 / value table, everything else as key / value."""
    if task == "evaluate" or "entries" in result:
        k, mm, order = result["src_edges"], result["tgt_edges"], result["order"]
        rows = [("beta0", "beta1", "value")]
        for i, j, v in result["entries"]:
            rows.append((" ".join(map(str, w._decode(i, k, order))), " ".join(map(str, w._decode(j, mm, order))),
                         _cell(v)))
        extra = [(key, _cell(val)) for key, val in sorted(result.items())
                 if key not in ("entries", "src_edges", "tgt_edges", "order")]
        return _align(rows) + ("\n\n" + _align(extra) if extra else "")
    if task == "selftest":
        from .acceptance import format_line

        return "\n".join(format_line(r) for r in result["criteria"])
    if task == "gallery":
        rows = [("name", "kind", "signature", "V", "E", "F")]
        rows += [(g["name"], g["kind"], g["signature"] or "-", str(g["vertices"]), str(g["edges"]),
                  str(g["faces"])) for g in result["gallery"]]
        return _align(rows)
    return _align([(key, _cell(val)) for key, val in sorted(result.items())])


def emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# -- entry points --------------------------------------------------------------------------

def run(manifest, report=None):
    """Execute one task.  Returns ``(status, result)``; errors become a record with status 2."""
    task = manifest.get("task")
    try:
        if task == "gallery":
            return 0, {"gallery": builtin_gallery()}
        if task not in TASK_FUNCS:
            raise ManifestError("task must be one of %s" % ", ".join(TASKS), precondition="known task")
        if task == "selftest":
            result = task_selftest(manifest, report)
            return (0 if result["passed"] else 1), result
        return 0, TASK_FUNCS[task](manifest)
    except TwoholError as exc:
        return 2, exc.record()
    except KeyError as exc:
        return 2, ManifestError("unresolved reference %s" % exc).record()


def build_parser():
    p = argparse.ArgumentParser(prog="twohol", description="Exact 2-holonomy state sums.")
    p.add_argument("--task", choices=TASKS + ("gallery",), help="what to compute")
    p.add_argument("--manifest", help="JSON file whose keys supply defaults for the flags below")
    p.add_argument("--cm", help="builtin crossed module name or JSON file")
    p.add_argument("--geometry", help="gallery name, gallery-dir entry, or JSON file")
    p.add_argument("--r", help="second ribbon for compose, sum and pair")
    p.add_argument("--fix-boundary", dest="fix_boundary", help="JSON file mapping boundary edges to labels")
    p.add_argument("--gerbe", help="JSON gerbe datum file")
    p.add_argument("--pairs", help='marking pairs for sum, e.g. "[[0, 0]]"')
    p.add_argument("--move", choices=sorted(MOVES), help="move to apply")
    p.add_argument("--site", help="JSON move site: a cell index, or tet/edge/face data for handle moves")
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="worker processes for evaluate (default: available CPUs)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    manifest = {}
    if args.manifest:
        try:
            manifest = _read_json(args.manifest)
        except ManifestError as exc:
            emit(json.dumps(exc.record(), sort_keys=True), None)
            return 2
    for key, val in vars(args).items():
        if key != "manifest" and (val is not None or key not in manifest):
            if key == "workers" and "workers" in manifest and val == build_parser().get_default("workers"):
                continue
            if key == "format" and "format" in manifest and val == "json":
                continue
            manifest[key] = val
    if manifest.get("task") is None:
        build_parser().error("--task is required (or a manifest with a task)")
    live = (lambda line: print(line, file=sys.stderr, flush=True)) if manifest["task"] == "selftest" else None
    status, result = run(manifest, live)
    if status == 2 or manifest.get("format") != "table":
        text = json.dumps(result, sort_keys=True, indent=2)
    else:
        text = render_table(manifest["task"], result)
    emit(text, manifest.get("out") if status != 2 else None)
    return status


if __name__ == "__main__":
    sys.exit(main())
