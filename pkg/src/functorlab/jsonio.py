"""JSON schemas for every object the package exchanges.

All indices are 1-based on the wire.  Integers beyond 2^53 - 1 in absolute
value are encoded as decimal strings (JSON numbers lose exactness past that
in common consumers), and any document containing such a string carries a
top-level "bigints": true marker.  Readers accept both encodings everywhere.
Serialization is deterministic: fixed key order, two-space indent, trailing
newline.
"""

import json

from .canonical import Block1, Block2, BlockForm, SqrtClassification
from .classify import (
    CommutingIdempotents,
    CyclicClassification,
    IdempotentClassification,
    NilpotencyVerdict,
    RootOfIdentity,
)
from .errors import InvalidInput
from .restrict import CartanVerdict, DescentReport, IndexSubset
from .solver import SearchConfig, SolutionSet
from .zmatrix import NatMatrix, Permutation, RelationPoly

_SAFE_INT = (1 << 53) - 1


def _encode_int(x, state):
    if abs(x) > _SAFE_INT:
        state["bigints"] = True
        return str(x)
    return x


def _decode_int(v, what):
    if isinstance(v, bool):
        raise InvalidInput(f"{what} must be an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise InvalidInput(f"{what} is not a decimal integer string: {v!r}") from None
    raise InvalidInput(f"{what} must be an integer or decimal string, got {v!r}")


def _require(obj, key, what):
    if not isinstance(obj, dict):
        raise InvalidInput(f"{what} must be a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise InvalidInput(f"{what} is missing the {key!r} field")
    return obj[key]


def _int_list(v, what):
    if not isinstance(v, list):
        raise InvalidInput(f"{what} must be a list")
    return [_decode_int(x, what) for x in v]


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


# -- matrices ----------------------------------------------------------------

def matrix_to_obj(m):
    state = {}
    rows = [[_encode_int(x, state) for x in row] for row in m.entries]
    obj = {"n": m.n, "rows": rows}
    if state:
        obj["bigints"] = True
    return obj


def matrix_from_obj(obj):
    n = _decode_int(_require(obj, "n", "matrix"), "matrix dimension")
    rows = _require(obj, "rows", "matrix")
    if not isinstance(rows, list) or len(rows) != n:
        raise InvalidInput(f"matrix rows must be a list of length n={n}")
    decoded = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise InvalidInput(f"each matrix row must be a list of length n={n}")
        decoded.append(tuple(_decode_int(x, "matrix entry") for x in row))
    return NatMatrix(tuple(decoded))


# -- relations ---------------------------------------------------------------

def relation_to_obj(rel):
    state = {}
    obj = {
        "g": [_encode_int(c, state) for c in rel.g],
        "h": [_encode_int(c, state) for c in rel.h],
    }
    if state:
        obj["bigints"] = True
    return obj


def relation_from_obj(obj):
    g = _int_list(_require(obj, "g", "relation"), "relation coefficient")
    h = _int_list(_require(obj, "h", "relation"), "relation coefficient")
    return RelationPoly(tuple(g), tuple(h))


# -- permutations and subsets ------------------------------------------------

def permutation_to_obj(p):
    return list(p.one_based())


def permutation_from_obj(obj):
    images = _int_list(obj, "permutation image")
    return Permutation.from_one_based(images)


def subset_to_obj(s):
    return {"n": s.n, "members": list(s.members)}


def subset_from_obj(obj):
    n = _decode_int(_require(obj, "n", "subset"), "subset dimension")
    members = _int_list(_require(obj, "members", "subset"), "subset member")
    return IndexSubset(n, tuple(members))


# -- block forms and square roots --------------------------------------------

def block_form_to_obj(form):
    state = {}
    blocks = []
    for block in form.blocks:
        if isinstance(block, Block1):
            blocks.append({"type": "b1", "a": _encode_int(block.a, state)})
        else:
            blocks.append(
                {
                    "type": "b2",
                    "a": _encode_int(block.a, state),
                    "b": _encode_int(block.b, state),
                }
            )
    obj = {
        "perm": permutation_to_obj(form.perm),
        "k": _encode_int(form.k, state),
        "blocks": blocks,
    }
    if state:
        obj["bigints"] = True
    return obj


def block_form_from_obj(obj):
    perm = permutation_from_obj(_require(obj, "perm", "block form"))
    k = _decode_int(_require(obj, "k", "block form"), "block form k")
    raw = _require(obj, "blocks", "block form")
    if not isinstance(raw, list):
        raise InvalidInput("block form blocks must be a list")
    blocks = []
    for entry in raw:
        kind = _require(entry, "type", "block")
        if kind == "b1":
            blocks.append(Block1(_decode_int(_require(entry, "a", "block"), "block a")))
        elif kind == "b2":
            blocks.append(
                Block2(
                    _decode_int(_require(entry, "a", "block"), "block a"),
                    _decode_int(_require(entry, "b", "block"), "block b"),
                )
            )
        else:
            raise InvalidInput(f"unknown block type {kind!r}")
    return BlockForm(perm, tuple(blocks), k)


def sqrt_to_obj(cls):
    return {
        "kind": "sqrt",
        "root": cls.root,
        "involution": permutation_to_obj(cls.involution),
    }


def sqrt_from_obj(obj):
    return SqrtClassification(
        _decode_int(_require(obj, "root", "sqrt classification"), "root"),
        permutation_from_obj(_require(obj, "involution", "sqrt classification")),
    )


# -- classification verdicts -------------------------------------------------

def idempotent_to_obj(cls):
    return {"kind": "idempotent", "n": cls.n, "support": list(cls.support)}


def commuting_to_obj(report):
    return {
        "kind": "commuting_idempotents",
        "n": report.n,
        "both": list(report.both),
        "a_only": list(report.a_only),
        "b_only": list(report.b_only),
        "neither": list(report.neither),
        "product": matrix_to_obj(report.product),
    }


def nilpotency_to_obj(verdict):
    if verdict.kind == "zero":
        return {"kind": "zero"}
    state = {}
    obj = {
        "kind": "not_nilpotent",
        "power": verdict.power,
        "position": list(verdict.position),
        "value": _encode_int(verdict.value, state),
    }
    if state:
        obj["bigints"] = True
    return obj


def cyclic_to_obj(cls):
    if cls.kind == "idempotent":
        return {"kind": "idempotent", "n": cls.n, "support": list(cls.support)}
    return {
        "kind": "partial_involution",
        "n": cls.n,
        "support": list(cls.support),
        "pairing": list(cls.pairing),
    }


def root_to_obj(cls):
    return {
        "kind": "root_of_identity",
        "permutation": permutation_to_obj(cls.permutation),
        "order": cls.order,
        "selfadjoint": cls.selfadjoint,
    }


def classification_from_obj(obj):
    kind = _require(obj, "kind", "classification")
    if kind == "sqrt":
        return sqrt_from_obj(obj)
    if kind == "idempotent":
        n = _decode_int(_require(obj, "n", "classification"), "n")
        support = _int_list(_require(obj, "support", "classification"), "support index")
        if "pairing" in obj:
            return CyclicClassification("idempotent", n, tuple(support))
        return IdempotentClassification(n, tuple(support))
    if kind == "partial_involution":
        return CyclicClassification(
            "partial_involution",
            _decode_int(_require(obj, "n", "classification"), "n"),
            tuple(_int_list(_require(obj, "support", "classification"), "support index")),
            tuple(_int_list(_require(obj, "pairing", "classification"), "pairing image")),
        )
    if kind == "zero":
        return NilpotencyVerdict("zero")
    if kind == "not_nilpotent":
        position = _int_list(_require(obj, "position", "verdict"), "position")
        if len(position) != 2:
            raise InvalidInput("position must have exactly two indices")
        return NilpotencyVerdict(
            "not_nilpotent",
            power=_decode_int(_require(obj, "power", "verdict"), "power"),
            position=tuple(position),
            value=_decode_int(_require(obj, "value", "verdict"), "value"),
        )
    if kind == "root_of_identity":
        return RootOfIdentity(
            permutation_from_obj(_require(obj, "permutation", "classification")),
            _decode_int(_require(obj, "order", "classification"), "order"),
            bool(_require(obj, "selfadjoint", "classification")),
        )
    if kind == "commuting_idempotents":
        return CommutingIdempotents(
            n=_decode_int(_require(obj, "n", "report"), "n"),
            both=tuple(_int_list(_require(obj, "both", "report"), "index")),
            a_only=tuple(_int_list(_require(obj, "a_only", "report"), "index")),
            b_only=tuple(_int_list(_require(obj, "b_only", "report"), "index")),
            neither=tuple(_int_list(_require(obj, "neither", "report"), "index")),
            product=matrix_from_obj(_require(obj, "product", "report")),
        )
    raise InvalidInput(f"unknown classification kind {kind!r}")


# -- search configuration and results ----------------------------------------

def config_to_obj(config):
    return {
        "n": config.n,
        "bound": config.bound,
        "symmetric_only": config.symmetric_only,
        "up_to_iso": config.up_to_iso,
        "limit": config.limit,
    }


def config_from_obj(obj):
    limit = obj.get("limit") if isinstance(obj, dict) else None
    return SearchConfig(
        n=_decode_int(_require(obj, "n", "search config"), "n"),
        bound=_decode_int(_require(obj, "bound", "search config"), "bound"),
        symmetric_only=bool(obj.get("symmetric_only", False)),
        up_to_iso=bool(obj.get("up_to_iso", False)),
        limit=None if limit is None else _decode_int(limit, "limit"),
    )


def solution_set_to_obj(result):
    return {
        "relation": relation_to_obj(result.relation),
        "config": config_to_obj(result.config),
        "count": result.count,
        "complete": result.complete,
        "solutions": [matrix_to_obj(m) for m in result.solutions],
    }


def solution_set_from_obj(obj):
    raw = _require(obj, "solutions", "solution set")
    if not isinstance(raw, list):
        raise InvalidInput("solutions must be a list")
    return SolutionSet(
        config=config_from_obj(_require(obj, "config", "solution set")),
        relation=relation_from_obj(_require(obj, "relation", "solution set")),
        solutions=tuple(matrix_from_obj(x) for x in raw),
        complete=bool(_require(obj, "complete", "solution set")),
    )


# -- restriction reports and Cartan verdicts ---------------------------------

def descent_to_obj(report):
    return {
        "kind": "descent",
        "ambient_satisfied": report.ambient_satisfied,
        "serre": None if report.serre is None else matrix_to_obj(report.serre),
        "quotient": None
        if report.quotient is None
        else matrix_to_obj(report.quotient),
    }


def descent_from_obj(obj):
    serre = _require(obj, "serre", "descent report")
    quotient = _require(obj, "quotient", "descent report")
    return DescentReport(
        bool(_require(obj, "ambient_satisfied", "descent report")),
        None if serre is None else matrix_from_obj(serre),
        None if quotient is None else matrix_from_obj(quotient),
    )


def cartan_verdict_to_obj(verdict):
    obj = {"verdict": verdict.kind}
    state = {}
    if verdict.kind == "pass":
        obj["scale"] = _encode_int(verdict.scale, state)
    elif verdict.kind == "fail_commutation":
        obj["functor"] = verdict.functor
        obj["position"] = list(verdict.position)
        obj["left"] = _encode_int(verdict.left, state)
        obj["right"] = _encode_int(verdict.right, state)
    elif verdict.kind == "reducible":
        obj["functor"] = verdict.functor
        obj["eigenvalue"] = _encode_int(verdict.eigenvalue, state)
        obj["basis"] = [[_encode_int(x, state) for x in vec] for vec in verdict.basis]
    elif verdict.kind == "inconsistent_input":
        obj["position"] = list(verdict.position)
    elif verdict.kind != "inconclusive":
        raise InvalidInput(f"unknown cartan verdict kind {verdict.kind!r}")
    if state:
        obj["bigints"] = True
    return obj


def cartan_verdict_from_obj(obj):
    kind = _require(obj, "verdict", "cartan verdict")
    if kind == "pass":
        return CartanVerdict("pass", scale=_decode_int(_require(obj, "scale", "verdict"), "scale"))
    if kind == "fail_commutation":
        position = _int_list(_require(obj, "position", "verdict"), "position")
        return CartanVerdict(
            "fail_commutation",
            functor=_decode_int(_require(obj, "functor", "verdict"), "functor"),
            position=tuple(position),
            left=_decode_int(_require(obj, "left", "verdict"), "left"),
            right=_decode_int(_require(obj, "right", "verdict"), "right"),
        )
    if kind == "reducible":
        raw = _require(obj, "basis", "verdict")
        if not isinstance(raw, list):
            raise InvalidInput("basis must be a list of vectors")
        return CartanVerdict(
            "reducible",
            functor=_decode_int(_require(obj, "functor", "verdict"), "functor"),
            eigenvalue=_decode_int(_require(obj, "eigenvalue", "verdict"), "eigenvalue"),
            basis=tuple(tuple(_int_list(vec, "basis entry")) for vec in raw),
        )
    if kind == "inconsistent_input":
        position = _int_list(_require(obj, "position", "verdict"), "position")
        return CartanVerdict("inconsistent_input", position=tuple(position))
    if kind == "inconclusive":
        return CartanVerdict("inconclusive")
    raise InvalidInput(f"unknown cartan verdict kind {kind!r}")


# -- errors ------------------------------------------------------------------

def error_to_obj(err):
    obj = {"error": err.code, "message": err.message}
    if err.details:
        obj["details"] = {
            k: list(v) if isinstance(v, tuple) else v for k, v in err.details.items()
        }
    return obj


def load_text(text, what="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{what} is not valid JSON: {exc}") from None
