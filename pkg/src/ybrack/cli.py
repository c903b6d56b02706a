"""Command-line surface: JSON in, deterministic JSON reports out.

Exit codes: 0 success, 1 mathematical negative (invalid algebra, failed
verification, obstructed deformation, hypothesis failure), 2 usage or format
error.  Reports are byte-identical across runs on identical input: keys are
sorted, rationals are serialized as strings, and no timestamps are emitted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .cohomology import LieCochain, ce_cohomology
from .liealg import LieAlgebra, catalog_get, catalog_names, validate
from .liealg import derivation_spaces, structure_report
from .perturb import (
    Obstructed,
    assemble_series,
    integrate_deformation,
    verify_series_sd,
    verify_ybe_mod,
)
from .rack import build_rack, sd_h2, verify_sd
from .ratlin import RatMatrix, as_scalar, rank, scalar_str
from .yb import YBOperator, build_yb, ternary_literal_matrix, verify_ybe, yb_h2_brute, yb_h2_structured


class UsageError(Exception):
    pass


class MathNegative(Exception):
    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}


# ---- JSON formats ----

def algebra_to_json(L: LieAlgebra) -> dict:
    from itertools import combinations

    brackets = []
    for idxs in combinations(range(L.dim), L.arity):
        vec = L.bracket_basis(*idxs)
        out = [{"k": k, "c": scalar_str(v)} for k, v in enumerate(vec) if v != 0]
        if out:
            brackets.append({"in": list(idxs), "out": out})
    return {
        "name": "-".join(L.names) if len(L.names) <= 4 else f"dim{L.dim}",
        "dim": L.dim,
        "arity": L.arity,
        "basis": list(L.names),
        "brackets": brackets,
    }


def algebra_from_json(obj: dict) -> LieAlgebra:
    try:
        dim = int(obj["dim"])
        arity = int(obj.get("arity", 2))
        basis = obj.get("basis") or [f"e{i+1}" for i in range(dim)]
        brackets = {}
        for ent in obj.get("brackets", []):
            idxs = tuple(int(i) for i in ent["in"])
            if list(idxs) != sorted(set(idxs)):
                raise UsageError(f"bracket indices {idxs} must be strictly increasing")
            out = {}
            for t in ent["out"]:
                out[int(t["k"])] = as_scalar(str(t["c"]))
            brackets[idxs] = out
        return LieAlgebra.from_brackets(dim, brackets, names=basis, arity=arity)
    except UsageError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise UsageError(f"malformed algebra file: {e}")


def matrix_to_json(M: RatMatrix) -> dict:
    rows = []
    for i in range(M.rows):
        rd = M.row_dict(i)
        rows.append([scalar_str(rd.get(j, 0)) for j in range(M.cols)])
    return {"rows": M.rows, "cols": M.cols, "entries": rows}


def matrix_from_json(obj: dict) -> RatMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        ent = {}
        for i, row in enumerate(obj["entries"]):
            for j, s in enumerate(row):
                v = as_scalar(str(s))
                if v != 0:
                    ent[(i, j)] = v
        return RatMatrix(rows, cols, ent)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed matrix: {e}")


def cochain_to_json(c: LieCochain) -> dict:
    entries = []
    for T, val in sorted(c.data.items()):
        if c.coefficients == "adjoint":
            out = [{"k": k, "c": scalar_str(v)} for k, v in enumerate(val) if v != 0]
        else:
            out = [{"k": None, "c": scalar_str(val)}]
        entries.append({"in": list(T), "out": out})
    return {"degree": c.degree, "coefficients": c.coefficients, "entries": entries}


def cochain_from_json(L: LieAlgebra, obj: dict) -> LieCochain:
    try:
        degree = int(obj["degree"])
        coeff = obj.get("coefficients", "adjoint")
        data = {}
        for ent in obj["entries"]:
            T = tuple(int(i) for i in ent["in"])
            if coeff == "adjoint":
                vec = [0] * L.dim
                for t in ent["out"]:
                    vec[int(t["k"])] = as_scalar(str(t["c"]))
                data[T] = tuple(vec)
            else:
                data[T] = as_scalar(str(ent["out"][0]["c"]))
        return LieCochain(L, degree, coeff, data)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise UsageError(f"malformed cochain file: {e}")


# ---- input resolution ----

def resolve_algebra(spec: str) -> tuple[LieAlgebra, dict]:
    """--algebra FILE or catalog:NAME[,param=value,...]"""
    if spec.startswith("catalog:"):
        body = spec[len("catalog:"):]
        parts = body.split(",")
        name = parts[0]
        params = {}
        for p in parts[1:]:
            if "=" not in p:
                raise UsageError(f"bad catalog parameter {p!r}")
            k, v = p.split("=", 1)
            try:
                params[k] = int(v)
            except ValueError:
                raise UsageError(f"catalog parameter {k} must be an integer")
        try:
            L = catalog_get(name, **params)
        except (KeyError, ValueError) as e:
            raise UsageError(str(e))
        return L, algebra_to_json(L)
    try:
        with open(spec) as fh:
            obj = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {spec}: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON in {spec}: {e}")
    return algebra_from_json(obj), obj


def input_hash(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def emit(command: str, hashed, results: dict) -> None:
    report = {
        "command": command,
        "input_hash": input_hash(hashed),
        "results": results,
        "versions": {"report_format": 1, "ybrack": __version__},
    }
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


# ---- subcommands ----

def cmd_catalog(args) -> dict:
    entries = {}
    for name in catalog_names():
        from .liealg import _CATALOG

        entries[name] = {"parameters": list(_CATALOG[name][1])}
    return {"catalog": entries}


def cmd_validate(L, args) -> dict:
    res = validate(L)
    results = {
        "valid": res.ok,
        "violations": [
            {
                "kind": v.kind,
                "indices": list(v.indices),
                "residual": [scalar_str(x) for x in v.residual],
            }
            for v in res.violations
        ],
    }
    if not res.ok:
        raise MathNegative("algebra fails validation", results)
    return results


def cmd_info(L, args) -> dict:
    res = validate(L)
    out = {"dim": L.dim, "arity": L.arity, "basis": list(L.names), "valid": res.ok}
    if not res.ok:
        out["violations"] = len(res.violations)
        raise MathNegative("algebra fails validation", out)
    if L.arity == 2:
        rep = structure_report(L)
        der = derivation_spaces(L)
        out.update(
            {
                "center_dim": rep.center.dim,
                "derived_dim": rep.derived_subalgebra.dim,
                "is_perfect": rep.is_perfect,
                "has_trivial_center": rep.has_trivial_center,
                "is_abelian": rep.is_abelian,
                "derivations_dim": der.derivations.dim,
                "inner_derivations_dim": der.inner_derivations.dim,
            }
        )
    return out


def cmd_cohomology(L, args) -> dict:
    if L.arity != 2:
        raise MathNegative("cohomology requires a binary Lie algebra")
    res = ce_cohomology(L, args.degree, args.coeff)
    out = {
        "degree": res.degree,
        "coefficients": res.coefficients,
        "dim_Z": res.dim_Z,
        "dim_B": res.dim_B,
        "dim_H": res.dim_H,
    }
    if args.emit_matrices:
        out["representatives"] = [cochain_to_json(c) for c in res.representatives]
    return out


def cmd_sd_cohomology(L, args) -> dict:
    if L.arity != 2:
        raise MathNegative("SD cohomology is implemented for binary algebras")
    X = build_rack(L)
    rep = verify_sd(X)
    if not rep.all_ok:
        raise MathNegative(f"rack verification failed: {rep.failures()}")
    res = sd_h2(X)
    out = {"dim_Z": res.dim_Z, "dim_B": res.dim_B, "dim_H": res.dim_H}
    if args.emit_matrices:
        out["representatives"] = [matrix_to_json(m) for m in res.representatives]
    return out


def cmd_yb_build(L, args) -> dict:
    X = build_rack(L)
    rep = verify_sd(X)
    out = {
        "arity": L.arity,
        "sd_checks": {k: getattr(rep, k) for k in (
            "coassociative", "counit_laws", "q_coalgebra_morphism", "q_counit",
            "sd_identity", "invertible", "inverse_two_sided")},
    }
    if not rep.all_ok:
        raise MathNegative(f"rack verification failed: {rep.failures()}", out)
    R = build_yb(X, check=False)
    ok = verify_ybe(R)
    out["space_dim"] = R.space_dim
    out["ybe_holds"] = ok
    out["full_rank"] = rank(R.matrix) == R.space_dim ** 2
    if L.arity == 3:
        out["reading"] = R.reading
        lit = ternary_literal_matrix(X)
        out["literal_reading"] = {
            "shape": [lit.rows, lit.cols],
            "ybe_well_typed": False,
            "note": "maps X(x)V -> V(x)X on a space that is not a tensor square",
        }
        if args.emit_matrices:
            out["literal_reading"]["matrix"] = matrix_to_json(lit)
    if args.emit_matrices:
        out["operator"] = matrix_to_json(R.matrix)
        out["q"] = matrix_to_json(X.q)
        out["delta"] = matrix_to_json(X.delta)
    if not ok:
        raise MathNegative("YBE verification failed", out)
    return out


def cmd_yb_verify(L, args) -> dict:
    if args.operator:
        try:
            with open(args.operator) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read operator file: {e}")
        results = obj.get("results", obj)
        mat = matrix_from_json(results.get("operator", results))
        import math

        d = math.isqrt(mat.rows)
        if d * d != mat.rows or mat.rows != mat.cols:
            raise UsageError("operator matrix is not an endomorphism of a tensor square")
        R = YBOperator(space_dim=d, matrix=mat)
        out = {"source": "operator-file", "space_dim": d}
    else:
        X = build_rack(L)
        R = build_yb(X)
        out = {"source": "algebra", "space_dim": R.space_dim}
    ok = verify_ybe(R)
    out["ybe_holds"] = ok
    out["full_rank"] = rank(R.matrix) == R.space_dim ** 2
    if not (ok and out["full_rank"]):
        raise MathNegative("YBE verification failed", out)
    return out


def cmd_yb_h2(L, args) -> dict:
    out = {}
    method = args.method
    if method in ("brute", "both"):
        X = build_rack(L)
        R = build_yb(X)
        res = yb_h2_brute(R, allow_large=args.max_dim_override)
        out["brute"] = {"dim_Z": res.dim_Z, "dim_B": res.dim_B, "dim_H": res.dim_H}
        if args.emit_matrices:
            out["brute"]["representatives"] = [
                matrix_to_json(m) for m in res.representatives
            ]
    if method in ("structured", "both"):
        try:
            sres = yb_h2_structured(L)
        except ValueError as e:
            raise MathNegative(str(e), out)
        out["structured"] = {
            "h2_lie_trivial": sres.h2_lie_trivial.dim_H,
            "script_H": {
                "dim_Z": sres.script_dim_Z,
                "dim_B": sres.script_dim_B,
                "dim_H": sres.script_dim_H,
            },
            "total_dim": sres.total_dim,
            "alpha_alternating_forced": sres.alpha_alternating_forced,
            "splitting_verified": sres.splitting_verified,
            "coboundaries_in_shape": sres.coboundaries_in_shape,
        }
    if method == "both":
        out["match"] = out["brute"]["dim_H"] == out["structured"]["total_dim"]
    return out


def cmd_deform(L, args) -> dict:
    if L.arity != 2:
        raise MathNegative("deformation integration requires a binary Lie algebra")
    if args.cocycle.startswith("index:"):
        try:
            k = int(args.cocycle[len("index:"):])
        except ValueError:
            raise UsageError("--cocycle index:<k> needs an integer")
        h2 = ce_cohomology(L, 2, "adjoint")
        if not 0 <= k < len(h2.representatives):
            raise UsageError(
                f"cocycle index {k} out of range (H^2 has {len(h2.representatives)} classes)"
            )
        phi1 = h2.representatives[k]
        source = {"index": k, "of": len(h2.representatives)}
    else:
        try:
            with open(args.cocycle) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read cocycle file: {e}")
        phi1 = cochain_from_json(L, obj)
        source = {"file": args.cocycle}
    out = {"order": args.order, "cocycle": source}
    res = integrate_deformation(L, phi1, args.order)
    if isinstance(res, Obstructed):
        out["obstructed_at"] = res.order
        out["rhs_is_cocycle"] = res.report.is_cocycle
        out["rhs_is_coboundary"] = res.report.is_coboundary
        out["rhs"] = cochain_to_json(res.report.rhs)
        raise MathNegative(f"obstructed at order {res.order}", out)
    H = assemble_series(L, res)
    out["integrated"] = True
    out["ybe_mod_hbar"] = verify_ybe_mod(H)
    out["sd_deformation"] = verify_series_sd(L, res)
    if args.emit_matrices:
        out["series"] = [
            {"hbar_degree": i, "matrix": matrix_to_json(c)}
            for i, c in enumerate(H.coefficients)
        ]
    if not (out["ybe_mod_hbar"] and out["sd_deformation"]):
        raise MathNegative("deformed operator failed verification", out)
    return out


# ---- driver ----

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ybrack",
        description="Exact Yang-Baxter operators from Lie algebras: build, verify, deform.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_algebra=True, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn, needs_algebra=needs_algebra)
        if needs_algebra:
            sp.add_argument(
                "--algebra",
                required=(name != "yb-verify"),
                help="algebra JSON file or catalog:NAME[,param=value]",
            )
        sp.add_argument("--emit-matrices", action="store_true")
        return sp

    add("catalog", cmd_catalog, needs_algebra=False, help="list built-in algebras")
    add("validate", cmd_validate, help="check the defining identities exactly")
    add("info", cmd_info, help="structural report")
    sp = add("cohomology", cmd_cohomology, help="Chevalley-Eilenberg cohomology")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--coeff", choices=["adjoint", "trivial"], default="adjoint")
    add("sd-cohomology", cmd_sd_cohomology, help="second SD cohomology of the rack")
    add("yb-build", cmd_yb_build, help="build the YB operator and verify everything")
    sp = add("yb-verify", cmd_yb_verify, help="verify the YBE (from algebra or emitted matrix)")
    sp.add_argument("--operator", help="report file with an emitted operator matrix")
    sp = add("yb-h2", cmd_yb_h2, help="second YB cohomology")
    sp.add_argument("--method", choices=["brute", "structured", "both"], default="both")
    sp.add_argument("--max-dim-override", action="store_true",
                    help="allow the brute-force computation above the size guard")
    sp = add("deform", cmd_deform, help="integrate a 2-cocycle into an hbar-series")
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--cocycle", default="index:0",
                    help="cochain JSON file or index:<k> into the H^2 basis")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.needs_algebra and getattr(args, "algebra", None):
            L, algebra_obj = resolve_algebra(args.algebra)
            hashed = {"algebra": algebra_obj, "command": args.command}
            results = args.fn(L, args)
        elif args.command == "yb-verify" and args.operator:
            hashed = {"operator": args.operator, "command": args.command}
            results = args.fn(None, args)
        elif not args.needs_algebra:
            hashed = {"command": args.command}
            results = args.fn(args)
        else:
            raise UsageError("--algebra is required")
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except MathNegative as e:
        results = dict(e.results)
        results["negative"] = str(e)
        emit(args.command, hashed, results)
        return 1
    emit(args.command, hashed, results)
    return 0


if __name__ == "__main__":
    sys.exit(main())
