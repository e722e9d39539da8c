"""Command line interface: JSON in, canonical JSON out.

Exit status is 0 on success, 1 on invalid input (malformed JSON, invalid
group or biset) and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .biset import (
    bisets_isomorphic,
    compose_all,
    goursat_bouc,
    goursat_reconstruct,
    kleisli_compose,
    mackey_lhs,
    mackey_rhs,
    to_subgroup,
    transitive_classes,
)
from .errors import BisetError
from .grp import Subgroup, all_subgroup_classes, are_conjugate, direct_product, generating_set
from .oracle import explicit_from_pair, naive_compose, pair_from_explicit
from .serialize import (
    action_pair_from_json,
    action_pair_to_json,
    dumps,
    group_from_json,
    product_subgroup_from_json,
    subgroup_from_json,
)


class InputError(Exception):
    pass


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _subgroup_arg(G, table, arg: str) -> Subgroup:
    """A class index into the canonical table (``2`` or ``U=2``), or a JSON file of generators."""
    value = arg.split("=", 1)[1] if "=" in arg else arg
    if value.lstrip("-").isdigit():
        c = int(value)
        if not 0 <= c < table.size:
            raise BisetError(f"class index {c} out of range 0..{table.size - 1}")
        return table.reps[c]
    return subgroup_from_json(G, _load(value))


def _class_json(key: tuple) -> dict:
    degree = len(key[0])
    return {"order": len(key), "generators": [list(g) for g in generating_set(key, degree)]}


def cmd_subgroups(args) -> dict:
    G = group_from_json(_load(args.group))
    return all_subgroup_classes(G).to_json()


def cmd_marks(args):
    G = group_from_json(_load(args.group))
    return all_subgroup_classes(G).marks


def cmd_compose(args) -> dict:
    X = action_pair_from_json(_load(args.first))
    Y = action_pair_from_json(_load(args.second))
    return action_pair_to_json(kleisli_compose(X, Y))


def cmd_oracle_compose(args) -> dict:
    X = action_pair_from_json(_load(args.first))
    Y = action_pair_from_json(_load(args.second))
    if X.target != Y.source:
        raise BisetError("the target of the first biset is not the source of the second")
    B = naive_compose(explicit_from_pair(Y), explicit_from_pair(X))
    return action_pair_to_json(pair_from_explicit(B))


def cmd_iso(args) -> dict:
    X = action_pair_from_json(_load(args.first))
    Y = action_pair_from_json(_load(args.second))
    return {"isomorphic": bisets_isomorphic(X, Y)}


def cmd_goursat(args) -> dict:
    H, G, D = product_subgroup_from_json(_load(args.subgroup))
    data, five = goursat_bouc(H, G, D)
    composite = compose_all(five)
    P = direct_product(H, G)
    reconstruction = goursat_reconstruct(data) == D
    conjugate = composite.is_transitive() and are_conjugate(P.group, to_subgroup(composite), D)
    return {
        "goursat": data.to_json(),
        "elementary": dict(zip(["res", "def", "iso", "inf", "ind"], map(action_pair_to_json, five))),
        "composite": action_pair_to_json(composite),
        "reconstruction_equal": reconstruction,
        "composite_conjugate": conjugate,
        "verified": reconstruction and conjugate,
    }


def cmd_mackey(args) -> dict:
    G = group_from_json(_load(args.group))
    table = all_subgroup_classes(G)
    U = _subgroup_arg(G, table, args.U)
    V = _subgroup_arg(G, table, args.V)
    lhs = transitive_classes(mackey_lhs(G, U, V))
    summands = mackey_rhs(G, U, V)
    rhs = sorted(k for X in summands for k in transitive_classes(X))
    return {
        "equal": lhs == rhs,
        "summands": len(summands),
        "lhs": [_class_json(k) for k in lhs],
        "rhs": [_class_json(k) for k in rhs],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bisets", description="Compose, decompose and verify bisets of finite groups.")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    parser.add_argument("-o", "--output", default="-", help="output file (default: standard output)")
    # the same options after the subcommand; SUPPRESS keeps the top-level values when absent
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("subgroups", help="subgroup class table with normalizers and marks", parents=[common])
    p.add_argument("group")
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("marks", help="table of marks", parents=[common])
    p.add_argument("group")
    p.set_defaults(func=cmd_marks)

    for name, func, text in [
        ("compose", cmd_compose, "Kleisli composite of X: G->H and Y: H->K"),
        ("oracle-compose", cmd_oracle_compose, "composite through explicit sets (slow reference)"),
        ("iso", cmd_iso, "decide whether two bisets are isomorphic"),
    ]:
        p = sub.add_parser(name, help=text, parents=[common])
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(func=func)

    p = sub.add_parser("goursat", help="Goursat-Bouc decomposition of a subgroup of H x G", parents=[common])
    p.add_argument("subgroup")
    p.set_defaults(func=cmd_goursat)

    p = sub.add_parser("mackey", help="check the Mackey formula for subgroups U, V (class indices)", parents=[common])
    p.add_argument("group")
    p.add_argument("U")
    p.add_argument("V")
    p.set_defaults(func=cmd_mackey)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except InputError as exc:
        print(f"bisets: {exc}", file=sys.stderr)
        return 1
    except BisetError as exc:
        print(f"bisets: invalid input: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        print(f"bisets: invalid data: {exc}", file=sys.stderr)
        return 1
    text = dumps(payload, pretty=args.pretty)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
