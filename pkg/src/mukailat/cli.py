"""Command-line front end.

Every verb emits a JSON report {command, inputs, outputs, verification,
status} on stdout; the verification block re-checks the mathematical claims
of the output and any failed assertion forces a nonzero exit.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 witness
search exhausted (the radius is echoed in the report).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import jsonio, linalg
from .characters import covariance, default_reference, orientation_char
from .elliptic import even_stabilizer
from .embeddings import DEFAULT_RADIUS, WitnessNotFound, embed_rank2, \
    verify_embedding
from .fourier_mukai import elliptic_phi, mon_twist, verify_sigma_tau_duality
from .lattices import (
    LatticeError,
    build_lattice,
    check_isometry,
    discriminant_group,
)
from .mukai import mukai_pairing
from .stabilizer import (
    ExtensionKind,
    classify_minus2,
    aplus_witness,
    disc_action,
    disc_group_order,
    factor,
    generator_family,
    in_gamma_v,
    vperp_model,
    w_membership,
)


def _parse_block_spec(text: str):
    spec = []
    for item in text.split(","):
        item = item.strip()
        if item.startswith("diag(") and item.endswith(")"):
            entries = tuple(int(x) for x in item[5:-1].split(":"))
            spec.append(("diag", entries))
        else:
            spec.append(item)
    return tuple(spec)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _default_radius(args) -> int:
    if getattr(args, "radius", None):
        return args.radius
    env = os.environ.get("MUKAI_SEARCH_RADIUS")
    return int(env) if env else DEFAULT_RADIUS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mukailat",
        description="Exact computations in the Mukai lattice of a K3 surface",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subcommands")
    sub = parser.add_subparsers(dest="verb", required=True)

    lat = sub.add_parser("lattice", help="build standard lattices")
    lat_sub = lat.add_subparsers(dest="action", required=True)
    lat_build = lat_sub.add_parser("build")
    lat_build.add_argument("--spec", required=True,
                           help="comma list of blocks, e.g. K3 or U,diag(-6)")
    lat_disc = lat_sub.add_parser("disc")
    lat_disc.add_argument("--spec", required=True)

    char = sub.add_parser("char", help="determinant and covariance characters")
    char.add_argument("--lattice", default="mukai")
    char.add_argument("--isometry", required=True, help="isometry JSON file")

    stab = sub.add_parser("stab", help="the stabilizer of v = (1,0,-m)")
    stab_sub = stab.add_subparsers(dest="action", required=True)
    stab_model = stab_sub.add_parser("model")
    stab_model.add_argument("--m", type=int, required=True)
    stab_classify = stab_sub.add_parser("classify")
    stab_classify.add_argument("--m", type=int, required=True)
    stab_classify.add_argument("--vector", required=True,
                               help="Mukai vector JSON file")
    stab_factor = stab_sub.add_parser("factor")
    stab_factor.add_argument("--m", type=int, required=True)
    stab_factor.add_argument("--isometry", required=True)
    stab_factor.add_argument("--normalize", action="store_true")
    stab_factor.add_argument("--radius", type=int)
    stab_order = stab_sub.add_parser("disc-order")
    stab_order.add_argument("--m", type=int, required=True)
    stab_aplus = stab_sub.add_parser("aplus")
    stab_aplus.add_argument("--m", type=int, required=True)
    stab_embed = stab_sub.add_parser("embed")
    stab_embed.add_argument("--lattice", default="k3")
    stab_embed.add_argument("--lambda1", required=True,
                            help="coordinate vector JSON file")
    stab_embed.add_argument("--target", required=True,
                            help="2a,b,2d")
    stab_embed.add_argument("--radius", type=int)
    stab_sample = stab_sub.add_parser("sample")
    stab_sample.add_argument("--m", type=int, required=True)
    stab_sample.add_argument("--length", type=int, default=4)

    fm = sub.add_parser("fm", help="Fourier-Mukai isometries")
    fm_sub = fm.add_subparsers(dest="action", required=True)
    fm_phi = fm_sub.add_parser("verify-phi")
    fm_phi.add_argument("--n", type=int, required=True)
    fm_sub.add_parser("verify-sigma-tau")
    fm_mon = fm_sub.add_parser("mon")
    fm_mon.add_argument("--m", type=int, required=True)
    fm_mon.add_argument("--isometry", required=True)

    ell = sub.add_parser("elliptic", help="elliptic-curve analogue")
    ell_sub = ell.add_subparsers(dest="action", required=True)
    ell_stab = ell_sub.add_parser("stab")
    ell_stab.add_argument("--v", required=True, help="r,d")
    ell_stab.add_argument("--test", help="2x2 matrix JSON file")

    return parser


def _report(command, inputs, outputs, verification):
    status = 0 if all(item["pass"] for item in verification) else 1
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "verification": verification,
        "status": status,
    }


def _check(name, condition):
    return {"name": name, "pass": bool(condition)}


def _run_lattice(args):
    spec = _parse_block_spec(args.spec)
    lattice = build_lattice(spec)
    if args.action == "build":
        pos, neg = lattice.signature()
        outputs = {
            "lattice": jsonio.lattice_to_json(lattice),
            "rank": lattice.rank,
            "signature": [pos, neg],
            "even": lattice.is_even,
            "determinant": lattice.determinant(),
        }
        verification = [
            _check("gram_symmetric",
                   lattice.gram == linalg.transpose(lattice.gram)),
            _check("signature_sums_to_rank", pos + neg == lattice.rank),
        ]
        return _report("lattice build", {"spec": args.spec}, outputs,
                       verification)
    dg = discriminant_group(lattice)
    outputs = {
        "divisors": list(dg.divisors),
        "order": dg.order,
        "q_values": [jsonio._fraction_to_str(q) for q in dg.q_values],
        "lifts": [[jsonio._fraction_to_str(x) for x in lift]
                  for lift in dg.lifts],
    }
    verification = [
        _check("order_equals_det", dg.order == abs(lattice.determinant())),
    ]
    return _report("lattice disc", {"spec": args.spec}, outputs, verification)


def _run_char(args):
    iso = jsonio.isometry_from_json(_load_json(args.isometry))
    det = iso.det()
    cov = orientation_char(default_reference(iso.lattice), iso)
    check = check_isometry(iso.lattice, iso.matrix)
    outputs = {"det": det, "cov": cov}
    verification = [
        _check("is_isometry", check.is_isometry),
        _check("det_is_unit", det in (1, -1)),
    ]
    return _report("char", {"lattice": args.lattice,
                            "isometry": args.isometry}, outputs, verification)


def _run_stab(args):
    if args.action == "model":
        model = vperp_model(args.m)
        dg = discriminant_group(model.lattice)
        outputs = {
            "m": args.m,
            "rank": model.lattice.rank,
            "gram_blocks": [b.name for b in model.lattice.blocks],
            "disc_divisors": list(dg.divisors),
            "disc_order": dg.order,
            "q_generator": jsonio._fraction_to_str(model.disc.q(1)),
        }
        verification = [
            _check("disc_cyclic_order_2m",
                   dg.divisors == (2 * args.m,) and dg.order == 2 * args.m),
            _check("w_square", model.lattice.gram[-1][-1] == -2 * args.m),
            _check("q_of_generator_is_minus_1_over_2m",
                   (model.disc.q(1) - Fraction(-1, 2 * args.m)) % 2 == 0),
        ]
        return _report("stab model", {"m": args.m}, outputs, verification)

    if args.action == "classify":
        model = vperp_model(args.m)
        v0 = jsonio.mukai_vector_from_json(_load_json(args.vector))
        orbit = classify_minus2(model, v0)
        outputs = {"orbit": orbit.value}
        verification = [
            _check("is_minus2", mukai_pairing(v0, v0) == -2),
            _check("orthogonal_to_v", mukai_pairing(v0, model.v) == 0),
        ]
        return _report("stab classify",
                       {"m": args.m, "vector": args.vector},
                       outputs, verification)

    if args.action == "factor":
        model = vperp_model(args.m)
        iso = jsonio.isometry_from_json(_load_json(args.isometry))
        word = factor(model, iso, normalize=args.normalize,
                      radius=_default_radius(args))
        product = word.product()
        outputs = {"word": jsonio.word_to_json(word),
                   "letters": len(word.letters)}
        verification = [
            _check("product_equals_input", product.matrix == iso.matrix),
            _check("fixes_v", product.fixes(model.v.coords())),
        ]
        if args.normalize:
            verification.append(_check(
                "tau_letters_rank_one",
                all(r in (1, -1) for r in word.tau_ranks()),
            ))
        return _report("stab factor",
                       {"m": args.m, "isometry": args.isometry,
                        "normalize": args.normalize},
                       outputs, verification)

    if args.action == "disc-order":
        data = disc_group_order(args.m)
        verification = [
            _check("order_is_2_to_rho", data["order"] == 2 ** data["rho"]),
        ]
        return _report("stab disc-order", {"m": args.m}, data, verification)

    if args.action == "aplus":
        witness = aplus_witness(args.m)
        if witness is None:
            outputs = {"result": "Impossible"}
            verification = [_check("m_not_1_mod_4", args.m % 4 != 1)]
        else:
            model = vperp_model(args.m)
            outputs = {"result": jsonio.mukai_vector_to_json(witness)}
            verification = [
                _check("square_minus2", mukai_pairing(witness, witness) == -2),
                _check("class_is_aplus",
                       classify_minus2(model, witness).value == "APlus"),
            ]
        return _report("stab aplus", {"m": args.m}, outputs, verification)

    if args.action == "embed":
        lattice = jsonio.resolve_lattice(args.lattice)
        lam1 = jsonio.vector_from_json(_load_json(args.lambda1))
        two_a, b, two_d = (int(x) for x in args.target.split(","))
        radius = _default_radius(args)
        lam2 = embed_rank2(lattice, lam1, (two_a, b, two_d), radius=radius)
        outputs = {"lambda2": jsonio.vector_to_json(lam2)}
        verification = [
            _check("embedding_contract",
                   verify_embedding(lattice, lam1, lam2, two_a, b, two_d)),
        ]
        return _report("stab embed",
                       {"lattice": args.lattice, "lambda1": args.lambda1,
                        "target": args.target, "radius": radius},
                       outputs, verification)

    if args.action == "sample":
        model = vperp_model(args.m)
        family = generator_family(args.m)
        rng = random.Random(args.seed)
        word = family.sample_word(rng, args.length)
        product = word.product()
        restricted = model.restrict(product)
        outputs = {"word": jsonio.word_to_json(word)}
        verification = [
            _check("fixes_v", product.fixes(model.v.coords())),
            _check("disc_action_trivial",
                   disc_action(model, restricted) == 1 % (2 * args.m)),
            _check("in_gamma_v",
                   in_gamma_v(model, restricted) is ExtensionKind.IN_GAMMA_V),
            _check("mon_image_in_W",
                   w_membership(model, mon_twist(model, product))),
        ]
        return _report("stab sample",
                       {"m": args.m, "length": args.length,
                        "seed": args.seed},
                       outputs, verification)

    raise LatticeError(f"unknown stab action {args.action!r}")


def _run_fm(args):
    if args.action == "verify-phi":
        phi, checks = elliptic_phi(args.n)
        outputs = {
            "phi": jsonio.isometry_to_json(phi.isometry, "mukai"),
        }
        verification = [_check(name, value)
                        for name, value in checks.items() if name != "all"]
        return _report("fm verify-phi", {"n": args.n}, outputs, verification)

    if args.action == "verify-sigma-tau":
        checks = verify_sigma_tau_duality()
        verification = [_check(name, value)
                        for name, value in checks.items() if name != "all"]
        return _report("fm verify-sigma-tau", {}, {}, verification)

    if args.action == "mon":
        model = vperp_model(args.m)
        iso = jsonio.isometry_from_json(_load_json(args.isometry))
        twisted = mon_twist(model, iso)
        outputs = {
            "cov": covariance(iso),
            "twisted": jsonio.isometry_to_json(twisted, f"vperp:{args.m}"),
        }
        verification = [
            _check("orientation_preserving",
                   orientation_char(default_reference(model.lattice),
                                    twisted) == 0),
            _check("in_W", w_membership(model, twisted)),
        ]
        return _report("fm mon", {"m": args.m, "isometry": args.isometry},
                       outputs, verification)

    raise LatticeError(f"unknown fm action {args.action!r}")


def _run_elliptic(args):
    r, d = (int(x) for x in args.v.split(","))
    stab = even_stabilizer((r, d))
    outputs = {"generator": [list(row) for row in stab.generator]}
    verification = [
        _check("generator_det_one", linalg.det(stab.generator) == 1),
        _check("generator_fixes_v",
               linalg.mat_vec(stab.generator, (r, d)) == (r, d)),
    ]
    if args.test:
        mat = linalg.freeze([[int(x) for x in row]
                             for row in _load_json(args.test)])
        k = stab.is_power(mat)
        outputs["is_power"] = k is not None
        outputs["exponent"] = k
        verification.append(
            _check("power_reproduces_matrix",
                   k is None or stab.power(k) == mat)
        )
    return _report("elliptic stab", {"v": args.v, "test": args.test},
                   outputs, verification)


def run(argv) -> tuple[dict, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"error": "usage", "status": 2}, 2
    try:
        if args.verb == "lattice":
            report = _run_lattice(args)
        elif args.verb == "char":
            report = _run_char(args)
        elif args.verb == "stab":
            report = _run_stab(args)
        elif args.verb == "fm":
            report = _run_fm(args)
        elif args.verb == "elliptic":
            report = _run_elliptic(args)
        else:
            return {"error": f"unknown verb {args.verb}", "status": 2}, 2
    except WitnessNotFound as exc:
        report = {
            "command": args.verb,
            "error": "WitnessNotFound",
            "radius": exc.radius,
            "status": 3,
        }
        return report, 3
    except (LatticeError, FileNotFoundError, KeyError, ValueError) as exc:
        return {"error": str(exc), "status": 2}, 2
    return report, report["status"]


def main() -> None:
    report, status = run(sys.argv[1:])
    print(json.dumps(report, indent=2))
    sys.exit(status)


if __name__ == "__main__":
    main()
