"""Canonical JSON serialization for every value the CLI reads or writes.

Field descriptors: {"base":"Q"} | {"base":"Fp","p":5} and extensions
{"over":<desc>,"modulus":[c0,...,1]}.  Rationals travel as "num/den" strings
(always with the slash), prime-field elements as integers, etale elements as
coordinate lists.  Quaternions are 4-vectors [s,x,y,z]; matrices are row
grids.  Dumps are sorted-key compact JSON so reports diff cleanly.
"""

import json
from fractions import Fraction

from .errors import InputError
from .exact_algebra import EtaleAlgebra, PrimeField, Rationals
from .hermitian_pairs import GroupElement, HermitianPair, QuatMatrix
from .quaternion import Quaternion, QuaternionAlgebra


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- fields -----------------------------------------------------------------


def ser_field(ring):
    if isinstance(ring, Rationals):
        return {"base": "Q"}
    if isinstance(ring, PrimeField):
        return {"base": "Fp", "p": ring.p}
    if isinstance(ring, EtaleAlgebra):
        return {"over": ser_field(ring.base), "modulus": [ser_scalar(c) for c in ring.modulus]}
    raise InputError(f"unserializable ring {ring!r}")


def parse_field(obj, path="field"):
    if not isinstance(obj, dict):
        raise InputError("field descriptor must be an object", path)
    if "base" in obj:
        if obj["base"] == "Q":
            return Rationals()
        if obj["base"] == "Fp":
            p = obj.get("p")
            if not isinstance(p, int):
                raise InputError("Fp descriptor needs integer p", path)
            try:
                return PrimeField(p)
            except ValueError as exc:
                raise InputError(str(exc), path)
        raise InputError(f"unknown base {obj['base']!r}", path)
    if "over" in obj:
        base = parse_field(obj["over"], path + ".over")
        mod = obj.get("modulus")
        if not isinstance(mod, list):
            raise InputError("extension needs a modulus list", path)
        coeffs = [parse_scalar(base, c, f"{path}.modulus[{i}]") for i, c in enumerate(mod)]
        return EtaleAlgebra(base, coeffs)
    raise InputError("field descriptor needs 'base' or 'over'", path)


# -- scalars ------------------------------------------------------------------


def ser_scalar(elt):
    ring = elt.ring
    if isinstance(ring, Rationals):
        f = elt.data
        return f"{f.numerator}/{f.denominator}"
    if isinstance(ring, PrimeField):
        return elt.data
    return [ser_scalar(c) for c in elt.data]


def parse_scalar(ring, obj, path="scalar"):
    try:
        if isinstance(ring, Rationals):
            if isinstance(obj, str):
                return ring.coerce(Fraction(obj))
            if isinstance(obj, int):
                return ring.coerce(obj)
            raise InputError("rational must be 'num/den' or integer", path)
        if isinstance(ring, PrimeField):
            if isinstance(obj, int):
                return ring.coerce(obj)
            if isinstance(obj, str):
                return ring.coerce(int(obj))
            raise InputError("prime-field element must be an integer", path)
        if isinstance(ring, EtaleAlgebra):
            if isinstance(obj, (int, str)):
                return ring.coerce(parse_scalar(ring.base, obj, path))
            if isinstance(obj, list):
                return ring.from_coords(
                    [parse_scalar(ring.base, c, f"{path}[{i}]") for i, c in enumerate(obj)])
            raise InputError("etale element must be a coordinate list", path)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar: {exc}", path)
    raise InputError(f"no parser for ring {ring!r}", path)


# -- quaternion algebra / quaternions ------------------------------------------


def ser_algebra(alg):
    return {"a": ser_scalar(alg.a), "b": ser_scalar(alg.b)}


def parse_algebra(field, obj, path="B"):
    if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
        raise InputError("quaternion algebra descriptor needs a and b", path)
    a = parse_scalar(field, obj["a"], path + ".a")
    b = parse_scalar(field, obj["b"], path + ".b")
    try:
        return QuaternionAlgebra(field, a, b)
    except ValueError as exc:
        raise InputError(str(exc), path)


def ser_quaternion(q):
    return [ser_scalar(c) for c in q.coords]


def parse_quaternion(alg, ring, obj, path="q"):
    if not isinstance(obj, list) or len(obj) != 4:
        raise InputError("quaternion must be a 4-vector", path)
    coords = tuple(parse_scalar(ring, c, f"{path}[{i}]") for i, c in enumerate(obj))
    return Quaternion(alg, ring, coords)


def ser_quat_matrix(m):
    return [[ser_quaternion(e) for e in row] for row in m.rows]


def parse_quat_matrix(alg, ring, obj, path="m"):
    if not isinstance(obj, list) or not all(isinstance(r, list) and len(r) == len(obj) for r in obj):
        raise InputError("matrix must be a square row grid", path)
    rows = [[parse_quaternion(alg, ring, e, f"{path}[{i}][{j}]") for j, e in enumerate(row)]
            for i, row in enumerate(obj)]
    return QuatMatrix(alg, ring, rows)


def ser_pair(pair):
    return {"n": pair.n, "x1": ser_quat_matrix(pair.x1), "x2": ser_quat_matrix(pair.x2)}


def parse_pair(alg, ring, obj, path="pair"):
    if not isinstance(obj, dict) or "x1" not in obj or "x2" not in obj:
        raise InputError("pair needs x1 and x2", path)
    x1 = parse_quat_matrix(alg, ring, obj["x1"], path + ".x1")
    x2 = parse_quat_matrix(alg, ring, obj["x2"], path + ".x2")
    if "n" in obj and obj["n"] != x1.n:
        raise InputError("declared n does not match the matrices", path + ".n")
    try:
        return HermitianPair(x1, x2)
    except ValueError as exc:
        raise InputError(str(exc), path)


def ser_group(g):
    return {"g1": ser_quat_matrix(g.g1), "g2": [[ser_scalar(c) for c in row] for row in g.g2]}


def parse_group(alg, ring, obj, path="g"):
    if not isinstance(obj, dict) or "g1" not in obj or "g2" not in obj:
        raise InputError("group element needs g1 and g2", path)
    g1 = parse_quat_matrix(alg, ring, obj["g1"], path + ".g1")
    g2 = [[parse_scalar(ring, c, f"{path}.g2[{i}][{j}]") for j, c in enumerate(row)]
          for i, row in enumerate(obj["g2"])]
    return GroupElement(g1, g2)


# -- scalar matrices (cases a and b of the reducible module) -------------------


def ser_scalar_matrix(m):
    return [[ser_scalar(c) for c in row] for row in m]


def parse_scalar_matrix(ring, obj, path="m"):
    if not isinstance(obj, list) or not all(isinstance(r, list) and len(r) == len(obj) for r in obj):
        raise InputError("matrix must be a square row grid", path)
    return [[parse_scalar(ring, c, f"{path}[{i}][{j}]") for j, c in enumerate(row)]
            for i, row in enumerate(obj)]


def ser_case_pair(x):
    if x.case == "c":
        out = ser_pair(x.pair)
        out["case"] = "c"
        return out
    return {"case": x.case, "x1": ser_scalar_matrix(x.m1), "x2": ser_scalar_matrix(x.m2)}


def ser_case_group(g):
    if g.case == "c":
        out = ser_group(g.parts)
        out["case"] = "c"
        return out
    if g.case == "a":
        return {"case": "a", "g11": ser_scalar_matrix(g.parts[0]),
                "g12": ser_scalar_matrix(g.parts[1]), "g2": ser_scalar_matrix(g.parts[2])}
    return {"case": "b", "g1": ser_scalar_matrix(g.parts[0]),
            "g2": ser_scalar_matrix(g.parts[1])}


def parse_case_pair(ctx, obj, path="pair"):
    from .reducible import CasePair

    if ctx.case == "c":
        return CasePair("c", pair=parse_pair(ctx.alg, ctx.k, obj, path))
    ring = ctx.F if ctx.case == "b" else ctx.k
    m1 = parse_scalar_matrix(ring, obj.get("x1"), path + ".x1")
    m2 = parse_scalar_matrix(ring, obj.get("x2"), path + ".x2")
    try:
        return ctx.pair(m1, m2)
    except AssertionError:
        raise InputError("case (b) matrices must be sigma-Hermitian", path)
