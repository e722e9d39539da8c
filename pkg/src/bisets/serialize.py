"""JSON encodings of groups, subgroups, bisets and G-set data. All points are 0-based."""
from __future__ import annotations

import json

from .biset import ActionPair, from_subgroup
from .errors import BisetError
from .grp import Subgroup, direct_product
from .oracle import ExplicitBiset
from .perm import PermGroup


def dumps(payload, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def group_to_json(G: PermGroup) -> dict:
    return {"degree": G.degree, "generators": [list(g) for g in G.generators]}


def group_from_json(data) -> PermGroup:
    try:
        return PermGroup(data["generators"], degree=data.get("degree"))
    except (KeyError, TypeError, AttributeError) as exc:
        raise BisetError(f"invalid group description: {exc}") from None


def subgroup_from_json(G: PermGroup, gens) -> Subgroup:
    if isinstance(gens, dict):
        gens = gens["generators"]
    return Subgroup(G, gens)


def action_pair_to_json(X: ActionPair) -> dict:
    return {
        "source_group": group_to_json(X.source),
        "target_group": group_to_json(X.target),
        "multiplicities": list(X.multiplicities),
        "autos": [a.to_json() for a in X.autos],
    }


def action_pair_from_json(data) -> ActionPair:
    try:
        G = group_from_json(data["source_group"])
        H = group_from_json(data["target_group"])
        if "subgroup_of_product" in data:
            P = direct_product(H, G)
            return from_subgroup(H, G, Subgroup(P.group, data["subgroup_of_product"]))
        autos = [[(part["nu"], part["sigma"]) for part in auto] for auto in data["autos"]]
        return ActionPair(G, H, data["multiplicities"], autos)
    except (KeyError, TypeError) as exc:
        raise BisetError(f"invalid biset description: missing or malformed {exc}") from None


def product_subgroup_from_json(data) -> tuple[PermGroup, PermGroup, Subgroup]:
    """``{"source_group", "target_group", "subgroup_of_product"}`` -> ``(H, G, D)``."""
    try:
        G = group_from_json(data["source_group"])
        H = group_from_json(data["target_group"])
        P = direct_product(H, G)
        return H, G, Subgroup(P.group, data["subgroup_of_product"])
    except (KeyError, TypeError) as exc:
        raise BisetError(f"invalid subgroup description: missing or malformed {exc}") from None


def explicit_to_json(B: ExplicitBiset) -> dict:
    out = B.to_json()
    out["source_group"] = group_to_json(B.G)
    out["target_group"] = group_to_json(B.H)
    return out


def explicit_from_json(data) -> ExplicitBiset:
    G = group_from_json(data["source_group"])
    H = group_from_json(data["target_group"])
    return ExplicitBiset(H, G, data["size"], data["left"], data["right"])
