"""Command-line front end: compute | verify | generate | info.

All machine output is UTF-8 JSON on stdout (or the --output file); human
summaries go to stderr.  Exit codes: 0 success, 2 input error, 3 resource
cap exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certificates as ct
from . import expansion as ex
from . import generators as gen
from .complexes import SimplicialComplex, load_complex, save_complex
from .spectral import spectral_gap
from .util import INF, InputError, ResourceError, json_value

QUANTITIES = ("lambda", "h", "h_prime", "h_tilde", "phi", "phi_prime", "C", "all")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheeger",
        description="Spectral gaps and Cheeger constants of simplicial complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p, default_gen=None):
        p.add_argument("--input", help="complex JSON file (1-based labels)")
        p.add_argument("--gen", default=default_gen,
                       choices=["complete", "rp2", "y_complex", "moebius_cyl", "graph", "random"],
                       help="builtin generator")
        p.add_argument("--n", type=int, help="vertex count for generators")
        p.add_argument("--k", type=int, help="dimension for generators")
        p.add_argument("--p", type=float, help="keep probability for --gen random")
        p.add_argument("--seed", type=int, default=0, help="seed for --gen random")
        p.add_argument("--thin", action="store_true",
                       help="thin unsupported lower faces in --gen random")
        p.add_argument("--edges", help="edge list for --gen graph, e.g. '1-2,2-3'")

    def add_caps(p):
        p.add_argument("--partition-cap", type=int, default=ex.PARTITION_CAP)
        p.add_argument("--subset-cap", type=int, default=ex.SUBSET_CAP)
        p.add_argument("--coset-cap", type=int, default=ex.COSET_CAP)
        p.add_argument("--dense-cap", type=int, default=4096)
        p.add_argument("--tolerance", type=float, default=1e-6)
        p.add_argument("--c-scan-all", action="store_true",
                       help="minimize C over every minimizing partition")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")

    p = sub.add_parser("compute", help="compute expansion constants or the spectral gap")
    add_source(p)
    add_caps(p)
    p.add_argument("--quantity", default="all", choices=QUANTITIES)

    p = sub.add_parser("verify", help="run certificate checks")
    add_source(p)
    add_caps(p)
    p.add_argument("--claim", choices=ct.CLAIM_IDS + ("all",), default="all")
    p.add_argument("--suite", choices=["paper-examples"])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--count", type=int, default=1,
                   help="number of random complexes for --gen random")

    p = sub.add_parser("generate", help="write a builtin complex as JSON")
    p.add_argument("name", choices=["complete", "rp2", "y_complex", "moebius_cyl", "graph", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--thin", action="store_true")
    p.add_argument("--edges")
    p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("info", help="print face counts and cohomology ranks")
    add_source(p)
    p.add_argument("-o", "--output")
    return parser


def _parse_edges(spec: str):
    edges = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            u, v = part.split("-")
            edges.append((int(u) - 1, int(v) - 1))
        except ValueError as exc:
            raise InputError(f"bad edge {part!r}; expected 'u-v' with 1-based labels") from exc
    return edges


def _require(value, flag: str, context: str):
    if value is None:
        raise InputError(f"{context} requires {flag}")
    return value


def _build_generated(name: str, args) -> SimplicialComplex:
    if name == "rp2":
        return gen.projective_plane()
    if name == "complete":
        return gen.complete_complex(
            _require(args.n, "--n", "complete"), _require(args.k, "--k", "complete")
        )
    if name == "y_complex":
        return gen.y_complex(_require(args.n, "--n", "y_complex"))
    if name == "moebius_cyl":
        return gen.moebius_cylinder(_require(args.n, "--n", "moebius_cyl"))
    if name == "graph":
        return gen.graph_complex(
            _require(args.n, "--n", "graph"),
            _parse_edges(_require(args.edges, "--edges", "graph")),
        )
    if name == "random":
        return gen.random_complex(
            _require(args.n, "--n", "random"),
            _require(args.k, "--k", "random"),
            _require(args.p, "--p", "random"),
            args.seed,
            thin=args.thin,
        )
    raise InputError(f"unknown generator {name}")


def _load_source(args) -> SimplicialComplex:
    if getattr(args, "input", None):
        return load_complex(args.input)
    if getattr(args, "gen", None):
        return _build_generated(args.gen, args)
    raise InputError("provide --input or --gen")


def _emit(payload, args) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _check_tolerance(args) -> None:
    tol = getattr(args, "tolerance", None)
    if tol is not None and not 0.0 < tol < 1e-2:
        raise InputError(f"tolerance {tol} outside (0, 1e-2)")


def _compute_quantity(X: SimplicialComplex, quantity: str, args) -> dict:
    out: dict = {}
    if quantity in ("lambda", "all"):
        gap, res = spectral_gap(X, dense_cap=args.dense_cap, orientation_seed=args.seed)
        out["lambda"] = res.to_json()
    if quantity in ("h", "C", "all"):
        h = ex.cheeger_constant(X, args.partition_cap)
        out["h"] = h.to_json()
        if quantity in ("C", "all"):
            if h.is_infinite:
                out["C"] = {"quantity": "C", "value": 0, "empty": True}
            elif args.c_scan_all:
                c, witness = ex.min_congestion_over_minimizers(X, args.partition_cap)
                out["C"] = {
                    "quantity": "C",
                    "value": c,
                    "witness_partition": witness.labels() if witness else None,
                    "scan_all": True,
                }
            else:
                c, _ = ex.congestion(X, h.witness_partition)
                out["C"] = {
                    "quantity": "C",
                    "value": c,
                    "witness_partition": h.witness_partition.labels(),
                    "scan_all": False,
                }
    if quantity in ("h_prime", "all"):
        out["h_prime"] = ex.restricted_expansion(X, args.subset_cap).to_json()
    if quantity in ("h_tilde", "all"):
        out["h_tilde"] = ex.cochain_expansion(X).to_json()
    if quantity in ("phi", "all"):
        out["phi"] = ex.coboundary_expansion(X, coset_cap=args.coset_cap).to_json()
    if quantity in ("phi_prime", "all"):
        out["phi_prime"] = ex.restricted_coboundary_expansion(
            X, args.subset_cap, args.coset_cap
        ).to_json()
    return out


def cmd_compute(args) -> int:
    _check_tolerance(args)
    X = _load_source(args)
    out = _compute_quantity(X, args.quantity, args)
    _emit(out if args.quantity == "all" else out[args.quantity], args)
    for key, val in out.items():
        if isinstance(val, dict) and "value" in val:
            print(f"{key} = {val['value']}", file=sys.stderr)
        elif isinstance(val, dict) and "lambda" in val:
            print(f"lambda = {val['lambda']}", file=sys.stderr)
    return 0


def _verify_certs(args) -> list:
    if args.suite == "paper-examples":
        return ct.paper_examples_suite(trials=args.trials)
    claims = ct.CLAIM_IDS if args.claim == "all" else (args.claim,)
    if args.claim == "PROP6":
        return [
            ct.verify_expansion_of_complete_complex(
                _require(args.n, "--n", "PROP6"), _require(args.k, "--k", "PROP6")
            )
        ]
    if getattr(args, "gen", None) == "random":
        return ct.random_suite(
            _require(args.n, "--n", "random"),
            _require(args.k, "--k", "random"),
            _require(args.p, "--p", "random"),
            args.count,
            seed=args.seed,
            trials=args.trials,
            thin=args.thin,
            claims=claims,
        )
    X = _load_source(args)
    certs = []
    if "THM2" in claims:
        certs.append(ct.verify_theorem2(X, args.partition_cap, args.c_scan_all, args.tolerance))
    if "THM3" in claims:
        certs.append(ct.verify_theorem3(X, args.subset_cap, args.tolerance))
    if "THM1_GENERAL" in claims:
        certs.append(ct.verify_theorem1_general(X, args.partition_cap, args.tolerance))
    lemma_claims = {"LEM2", "LEM3", "LEM5", "LEM6A", "LEM6B", "LEM7", "LEM8"}
    if lemma_claims & set(claims):
        h = ex.cheeger_constant(X, args.partition_cap)
        if not h.is_infinite:
            for cert in ct.verify_lemmas(X, h.witness_partition, args.trials, args.seed):
                if cert.claim in claims:
                    certs.append(cert)
    if "REL_PHI_HTILDE" in claims:
        certs.append(ct.verify_phi_htilde_relation(X, coset_cap=args.coset_cap))
    return certs


def exit_code_for(certs) -> int:
    return 0 if all(c.passed for c in certs) else 4


def cmd_verify(args) -> int:
    _check_tolerance(args)
    certs = _verify_certs(args)
    lines = "\n".join(c.to_json_line() for c in certs)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(lines + "\n")
    else:
        print(lines)
    failed = [c for c in certs if not c.passed]
    print(f"{len(certs)} certificates, {len(failed)} failed", file=sys.stderr)
    for c in failed:
        print(f"FAIL {c.claim} on {c.inputs}", file=sys.stderr)
    return exit_code_for(certs)


def cmd_generate(args) -> int:
    X = _build_generated(args.name, args)
    if args.output:
        save_complex(X, args.output)
        print(f"wrote {args.output}: {X!r}", file=sys.stderr)
    else:
        print(json.dumps(X.to_json_dict(), indent=1, sort_keys=True))
    return 0


def cmd_info(args) -> int:
    X = _load_source(args)
    from .cochains import coboundary_basis_z2, cocycle_basis_z2
    from .spectral import cycle_space_basis, matrix_rank
    from .cochains import coboundary_matrix

    k = X.dim
    info = {
        "n": X.n,
        "k": k,
        "faces": {str(d): X.num_faces(d) for d in range(0, k + 1)},
        "euler_characteristic": X.euler_characteristic(),
        "facets": len(X.facets()),
    }
    if k >= 1:
        dim_z2_z = len(cocycle_basis_z2(X, k - 1))
        dim_z2_b = len(coboundary_basis_z2(X, k - 1))
        rank_up = matrix_rank(coboundary_matrix(X, k - 1))
        _, dim_b = cycle_space_basis(X)
        info["cohomology"] = {
            "dim_Z_real": X.num_faces(k - 1) - rank_up,
            "dim_B_real": dim_b,
            "dim_Z_gf2": dim_z2_z,
            "dim_B_gf2": dim_z2_b,
            "h_top_minus_1_gf2_nontrivial": dim_z2_z > dim_z2_b,
        }
    _emit(info, args)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {
        "compute": cmd_compute,
        "verify": cmd_verify,
        "generate": cmd_generate,
        "info": cmd_info,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
