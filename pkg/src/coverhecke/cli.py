"""
Command-line front end.

Every command builds a cover from ``--type/--rank/--n/--Q`` (or ``--cover``
JSON), runs one computation and emits JSON, CSV or Markdown.  A config file
``{"jobs": [{"command": ..., <flag>: <value>, ...}]}`` runs several commands;
each job is parsed exactly like a command line, so unknown keys are rejected.

Exit codes: 0 success, 1 invalid configuration, 2 hypothesis not met under
``--strict``, 3 resource bound exceeded, 4 a verification reported failure.
The resource bound is read from ``COVERHECKE_MAX_ELEMENTS``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .cover import CoverSpec, TABLE_SWEEP, classify, make_cover, table_sweep
from .exact import ConfigurationError, Cyclo
from .heckemod import PreconditionError
from .rootdata import ResourceError

__all__ = ["main", "run", "build_parser", "EXIT_CONFIG", "EXIT_HYPOTHESIS", "EXIT_RESOURCE", "EXIT_FAILED"]

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_RESOURCE, EXIT_FAILED = 0, 1, 2, 3, 4

VERIFY_TARGETS = ("hecke", "propp", "unikey", "twist", "whequi", "sl2", "scatter")


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


class HypothesisError(RuntimeError):
    """A flagged computation was requested with ``--strict``."""


class VerificationFailed(RuntimeError):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _int_list(text):
    if text is None or text == "":
        return []
    try:
        return [int(x) for x in str(text).split(",")]
    except ValueError as exc:
        raise ConfigurationError(f"expected comma separated integers, got {text!r}") from exc


def _add_common(p, q=False):
    p.add_argument("--type", dest="cartan_type")
    p.add_argument("--rank", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--Q", default="1", help="Q on the short coroot, or one value per simple coroot")
    p.add_argument("--flavor", default=None)
    p.add_argument("--gl-pq", default=None, help="p,q for GL covers")
    p.add_argument("--cover", default=None, help="cover spec as JSON")
    if q:
        p.add_argument("--q", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--strict", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coverhecke", description=__doc__.split("\n\n")[1])
    parser.add_argument("--config", default=None, help="JSON job file")
    parser.add_argument("--format", choices=("json", "csv", "md"), default="json", dest="top_format")
    parser.add_argument("--output", default=None, dest="top_output")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("classify")
    _add_common(p)
    p.add_argument("--z", default=None)

    p = sub.add_parser("tables")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("orbits")
    _add_common(p)
    p.add_argument("--z", default=None)

    p = sub.add_parser("whittaker-reg")
    _add_common(p)
    p.add_argument("--phi", default=None, help="simple root indices in Phi_chi (default all)")

    for name in ("whittaker-uni", "zeta"):
        p = sub.add_parser(name)
        _add_common(p)
        p.add_argument("--rgroup", type=int, default=0, help="index into the R-group registry")

    p = sub.add_parser("verify")
    p.add_argument("target", choices=VERIFY_TARGETS)
    _add_common(p, q=True)
    p.add_argument("--z", default=None)
    p.add_argument("--rgroup", type=int, default=None)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=2, help="coordinate bound of the hecke test window")

    p = sub.add_parser("scattering")
    _add_common(p, q=True)
    p.add_argument("--word", required=True)
    p.add_argument("--chi", required=True, help="values on the Y_Qn basis: re:im or N/k (a root of unity)")
    p.add_argument("--z", default=None)
    return parser


def _cover(args) -> CoverSpec:
    if args.cover:
        try:
            obj = json.loads(args.cover) if isinstance(args.cover, str) else dict(args.cover)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"cover is not valid JSON: {exc}") from exc
        return CoverSpec.from_json(obj)
    if args.cartan_type is None or args.rank is None or args.n is None:
        raise ConfigurationError("a cover needs --type, --rank and --n (or --cover)")
    Q = _int_list(args.Q)
    Q = Q[0] if len(Q) == 1 else Q
    pq = tuple(_int_list(args.gl_pq)) if args.gl_pq else None
    flavor = args.flavor or ("GL" if pq else "sc")
    return make_cover(args.cartan_type, args.rank, args.n, Q=Q, flavor=flavor, gl_pq=pq)


def _z(text):
    if text in (None, "", "0"):
        return None
    if text in ("rho", "-rho"):
        return text
    return [Fraction(x) for x in str(text).split(",")]


def _require_q(args, c):
    if args.q is None:
        raise ConfigurationError("--q is required")
    if (args.q - 1) % c.n:
        raise ConfigurationError(f"n = {c.n} must divide q - 1")
    return args.q


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, Cyclo):
        return x.to_json()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


def _strict_rows(args, rows):
    if getattr(args, "strict", False) and any(r.get("hypotheses", "theorem") != "theorem" for r in rows):
        raise HypothesisError("flagged rows present")
    return rows


def cmd_classify(args):
    c = _cover(args)
    out = {"cover": c.to_json(), **classify(c, _z(args.z))}
    return out


def cmd_tables(args):
    rows = table_sweep(TABLE_SWEEP, args.n_max)
    return {"rows": rows, "all_match": all(r["match"] for r in rows), "_table": True}


def cmd_orbits(args):
    from .orbits import enumerate_orbits
    c = _cover(args)
    rows = []
    for o in enumerate_orbits(c, _z(args.z)):
        ok, wit = o.splitting, o.witness
        rows.append({"rep": [int(x) for x in o.rep], "size": o.size, "free": o.free,
                     "trivial": o.trivial, "splitting": ok,
                     "witness": None if wit is None else [int(x) for x in wit],
                     "hypotheses": "theorem" if ok else "flagged"})
    if args.strict and any(not r["splitting"] for r in rows):
        raise HypothesisError("non-splitting orbit present")
    return {"cover": c.to_json(), "rows": rows}


def cmd_whittaker_reg(args):
    from .wchar import regular_dimension_table
    c = _cover(args)
    phi = _int_list(args.phi) if args.phi is not None else list(range(c.datum.rank))
    return {"cover": c.to_json(), "rows": _strict_rows(args, regular_dimension_table(c, phi))}


def _rgroup(c, idx):
    from .wchar import rgroup_registry
    reg = rgroup_registry(c.datum.cartan_type, c.datum.rank)
    if not reg:
        raise ConfigurationError("no nontrivial R-group for this type")
    if idx is None:
        return reg
    if not 0 <= idx < len(reg):
        raise ConfigurationError(f"R-group index {idx} out of range 0..{len(reg) - 1}")
    return [reg[idx]]


def cmd_whittaker_uni(args):
    from .wchar import unitary_dimension_table
    c = _cover(args)
    rg = _rgroup(c, args.rgroup)[0]
    return {"cover": c.to_json(), "rgroup": rg.to_json(),
            "rows": _strict_rows(args, unitary_dimension_table(c, rg))}


def cmd_zeta(args):
    from .wchar import zeta_rho
    c = _cover(args)
    rg = _rgroup(c, args.rgroup)[0]
    z = zeta_rho(c, rg)
    W = c.datum.weyl_group
    rows = [{"w": list(W.elements[int(k)].word), "zeta": _jsonable(v)} for k, v in zip(z.support, z.values)]
    return {"cover": c.to_json(), "rgroup": rg.to_json(), "rows": rows}


def _verify_hecke(args, c):
    from .heckemod import GGModule, compare_induced, default_window, orbit_component, verify_gg_relations
    from .orbits import enumerate_orbits
    q = _require_q(args, c)
    M = GGModule(c, q)
    window = default_window(c, args.radius)
    reports = verify_gg_relations(M, window=window)
    for o in enumerate_orbits(c):
        reports.append(orbit_component(M, o, window))
        if o.splitting:
            reports.append(compare_induced(M, o))
        elif args.strict:
            raise HypothesisError("non-splitting orbit present")
    return reports


def _verify_scatter(args, c):
    from .scatter import cocycle_check, functional_equation_check, random_unitary_chi, support_check
    import random
    q = _require_q(args, c)
    z = _z(args.z)
    if c.datum.rank == 2:
        return [cocycle_check(c, q, samples=args.samples, zstar=z, seed=args.seed)]
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.samples):
        chi = random_unitary_chi(c, q, rng)
        out.append(support_check(c, chi, z))
        out.append(functional_equation_check(c, chi, z))
    return out


def cmd_verify(args):
    from . import wchar
    t = args.target
    if t == "propp":
        from .propp import propp_checks
        c = _cover(args)
        reports = propp_checks(_require_q(args, c), c.n, rank=c.datum.rank, cover=c, seed=args.seed)
    else:
        c = _cover(args)
        if t == "hecke":
            reports = _verify_hecke(args, c)
        elif t == "sl2":
            from .heckemod import sl2_special
            reports = [sl2_special(c, _require_q(args, c))]
        elif t == "unikey":
            reports = [wchar.verify_uni_key(c, rg) for rg in _rgroup(c, args.rgroup)]
        elif t == "twist":
            reports = [wchar.verify_twist_equiv(c, _z(args.z) or "rho")]
        elif t == "whequi":
            reports = [wchar.verify_wh_equi(c, rg) for rg in _rgroup(c, args.rgroup)]
        else:
            reports = _verify_scatter(args, c)
    status = "pass" if all(r.get("status") == "pass" for r in reports) else "fail"
    out = {"target": t, "cover": c.to_json(), "status": status, "reports": reports}
    if status != "pass":
        raise VerificationFailed(out)
    return out


def _parse_chi_value(tok):
    if "/" in tok:
        N, k = tok.split("/")
        return (int(N), int(k))
    if ":" in tok:
        re_, im = tok.split(":")
        return complex(float(re_), float(im))
    raise ConfigurationError(f"bad chi value {tok!r}; use re:im or N/k")


def cmd_scattering(args):
    from .scatter import ChiPoint, scattering_matrix
    c = _cover(args)
    q = _require_q(args, c)
    chi = ChiPoint(c, q, [_parse_chi_value(t) for t in args.chi.split(",")])
    M = scattering_matrix(c, _int_list(args.word), chi, _z(args.z))
    if args.format == "csv":
        return {"_csv": M.to_csv()}
    return {"cover": c.to_json(), "matrix": M.to_json()}


COMMANDS = {
    "classify": cmd_classify,
    "tables": cmd_tables,
    "orbits": cmd_orbits,
    "whittaker-reg": cmd_whittaker_reg,
    "whittaker-uni": cmd_whittaker_uni,
    "zeta": cmd_zeta,
    "verify": cmd_verify,
    "scattering": cmd_scattering,
}


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

def _flat(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return v


def _rows_of(payload):
    if isinstance(payload, dict):
        for key in ("rows", "reports"):
            if key in payload:
                return payload[key]
        return [payload]
    return payload


def emit_csv(payload) -> str:
    if isinstance(payload, dict) and "_csv" in payload:
        return payload["_csv"]
    rows = [_jsonable(r) for r in _rows_of(payload)]
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _flat(r.get(k, "")) for k in keys})
    return buf.getvalue()


def _md_tables(rows) -> str:
    """Predicates by type, in the layout of the saturation tables."""
    types = []
    for r in rows:
        key = f"{r['type']}{r['rank']}"
        if key not in types:
            types.append(key)
    lines = ["| | " + " | ".join(types) + " |", "|---" * (len(types) + 1) + "|"]
    for pred, label in (("saturated", "saturated"), ("very_saturated", "very saturated"), ("oasitic", "oasitic")):
        cells = []
        for key in types:
            ns = [str(r["n"]) for r in rows if f"{r['type']}{r['rank']}" == key and r[pred]]
            cells.append(",".join(ns) or "-")
        lines.append(f"| {label} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_md(payload) -> str:
    if isinstance(payload, dict) and payload.get("_table"):
        return _md_tables(payload["rows"])
    rows = [_jsonable(r) for r in _rows_of(payload)]
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in rows:
        lines.append("| " + " | ".join(str(_flat(r.get(k, ""))) for k in keys) + " |")
    return "\n".join(lines) + "\n"


def emit(payload, fmt: str) -> str:
    if fmt == "csv":
        return emit_csv(payload)
    if fmt == "md":
        return emit_md(payload)
    clean = payload
    if isinstance(payload, dict):
        clean = {k: v for k, v in payload.items() if not k.startswith("_")}
    return json.dumps(_jsonable(clean), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _job_argv(job: dict) -> list:
    if not isinstance(job, dict) or "command" not in job:
        raise ConfigurationError("each job needs a 'command'")
    argv = [str(job["command"])]
    if job["command"] == "verify":
        if "target" not in job:
            raise ConfigurationError("verify jobs need a 'target'")
        argv.append(str(job["target"]))
    for k, v in job.items():
        if k in ("command", "target"):
            continue
        flag = "--" + k.replace("_", "-")
        if k == "Q":
            flag = "--Q"
        if isinstance(v, bool):
            if v:
                argv.append(flag)
            continue
        if isinstance(v, (dict,)):
            v = json.dumps(v)
        elif isinstance(v, (list, tuple)):
            v = ",".join(str(x) for x in v)
        argv.extend([flag, str(v)])
    return argv


def _execute(args):
    return COMMANDS[args.command](args)


def run(argv=None, stdout=None) -> int:
    """Run the CLI with ``argv``; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            with open(args.config) as fh:
                cfg = json.load(fh)
            if not isinstance(cfg, dict) or set(cfg) != {"jobs"} or not isinstance(cfg["jobs"], list):
                raise ConfigurationError('config must be {"jobs": [...]}')
            jobs = [parser.parse_args(_job_argv(j)) for j in cfg["jobs"]]
            results = [{"job": i, "command": a.command, "result": _execute(a)} for i, a in enumerate(jobs)]
            text = emit({"rows": results} if args.top_format != "json" else {"jobs": results}, args.top_format)
            out_path = args.top_output
        else:
            if args.command is None:
                raise ConfigurationError("no command given")
            payload = _execute(args)
            text = emit(payload, args.format)
            out_path = args.output
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ResourceError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailed as exc:
        stdout.write(emit(exc.payload, "json"))
        return EXIT_FAILED
    except PreconditionError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (_ArgError, ValueError, OSError) as exc:
        # ConfigurationError and JSONDecodeError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
