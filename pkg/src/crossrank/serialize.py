"""Canonical JSON encoding for every persisted object.

Complex numbers are ``[re, im]`` pairs; a polynomial is the array of its
coefficient pairs indexed by the power of ``z``.  Serialization is
canonical (sorted keys, fixed indentation, round-trip-exact floats), so
identical data produce byte-identical files.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .algebra import AlgMatrix, CrossedElement, GroupSpec
from .elimination import BezoutCertificate, WindingObstruction
from .liftrank import LiftResult
from .moebius import FiniteCyclicSubgroup, RotationAction, SU11Element
from .poly import Poly


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_file(path: str | Path, obj: Any) -> Path:
    path = Path(path)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def read_file(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


# -- complex / polynomial / crossed element

def complex_to_obj(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_obj(obj) -> complex:
    re, im = obj
    return complex(float(re), float(im))


def poly_to_obj(f: Poly) -> list[list[float]]:
    return [complex_to_obj(c) for c in f.coeffs]


def poly_from_obj(obj) -> Poly:
    return Poly([complex_from_obj(pair) for pair in obj], trim=0.0)


def crossed_to_obj(x: CrossedElement) -> dict:
    return {"n": x.spec.n, "m": x.spec.m,
            "comps": [poly_to_obj(c) for c in x.comps]}


def crossed_from_obj(obj) -> CrossedElement:
    spec = GroupSpec(int(obj["n"]), int(obj["m"]))
    return CrossedElement(spec, [poly_from_obj(c) for c in obj["comps"]])


# -- certificates

def bezout_to_obj(cert: BezoutCertificate) -> dict:
    return {
        "type": "bezout",
        "n": cert.spec.n,
        "m": cert.spec.m,
        "epsilon": cert.epsilon,
        "tolerance": cert.tolerance,
        "seed": cert.seed,
        "inputs": {"x": crossed_to_obj(cert.x), "y": crossed_to_obj(cert.y)},
        "approximants": {"a": crossed_to_obj(cert.a), "b": crossed_to_obj(cert.b)},
        "cofactors": {"c": crossed_to_obj(cert.c), "d": crossed_to_obj(cert.d)},
        "residual": cert.residual,
        "distance_x": cert.distance_x,
        "distance_y": cert.distance_y,
    }


def bezout_from_obj(obj) -> BezoutCertificate:
    return BezoutCertificate(
        x=crossed_from_obj(obj["inputs"]["x"]),
        y=crossed_from_obj(obj["inputs"]["y"]),
        a=crossed_from_obj(obj["approximants"]["a"]),
        b=crossed_from_obj(obj["approximants"]["b"]),
        c=crossed_from_obj(obj["cofactors"]["c"]),
        d=crossed_from_obj(obj["cofactors"]["d"]),
        epsilon=float(obj["epsilon"]),
        residual=float(obj["residual"]),
        distance_x=float(obj["distance_x"]),
        distance_y=float(obj["distance_y"]),
        tolerance=float(obj["tolerance"]),
        seed=obj.get("seed"),
    )


def winding_to_obj(obs: WindingObstruction) -> dict:
    return {
        "type": "winding",
        "n": obs.spec.n,
        "m": obs.spec.m,
        "element": crossed_to_obj(obs.element),
        "circle_min": obs.circle_min,
        "winding": obs.winding,
        "samples": obs.samples,
        "delta": obs.delta,
        "trials": obs.trials,
        "trial_windings": list(obs.trial_windings),
        "trial_circle_min": obs.trial_circle_min,
        "seed": obs.seed,
    }


def winding_from_obj(obj) -> WindingObstruction:
    return WindingObstruction(
        element=crossed_from_obj(obj["element"]),
        circle_min=float(obj["circle_min"]),
        winding=int(obj["winding"]),
        samples=int(obj["samples"]),
        delta=float(obj["delta"]),
        trials=int(obj["trials"]),
        trial_windings=tuple(int(w) for w in obj["trial_windings"]),
        trial_circle_min=(None if obj.get("trial_circle_min") is None
                          else float(obj["trial_circle_min"])),
        seed=obj.get("seed"),
    )


# -- disk symmetries

def su11_to_obj(g: SU11Element) -> dict:
    return {"a": complex_to_obj(g.a), "b": complex_to_obj(g.b)}


def su11_from_obj(obj) -> SU11Element:
    return SU11Element(complex_from_obj(obj["a"]), complex_from_obj(obj["b"]))


def subgroup_to_obj(subgroup: FiniteCyclicSubgroup) -> dict:
    return {"type": "subgroup",
            "generator": su11_to_obj(subgroup.generator),
            "order": subgroup.order,
            "sign": subgroup.sign}


def subgroup_from_obj(obj) -> FiniteCyclicSubgroup:
    built = FiniteCyclicSubgroup.build(su11_from_obj(obj["generator"]),
                                       int(obj["order"]))
    if "sign" in obj and int(obj["sign"]) != built.sign:
        raise ValueError("stored sign flag disagrees with the generator")
    return built


def rotation_action_to_obj(action: RotationAction,
                           subgroup: FiniteCyclicSubgroup) -> dict:
    return {
        "type": "conjugation",
        "subgroup": subgroup_to_obj(subgroup),
        "h": su11_to_obj(action.conjugator),
        "residual": action.conjugation.residual,
        "rotation_angles": list(action.conjugation.rotation_angles),
        "order": action.conjugation.order,
        "derived_spec": {"n": action.spec.n, "m": action.spec.m},
        "intertwining_residual": action.intertwining_residual,
    }


# -- matrices and lifts

def matrix_to_obj(mat: AlgMatrix) -> dict:
    entries = []
    for row in mat.entries:
        for e in row:
            if isinstance(e, Poly):
                entries.append(poly_to_obj(e))
            elif isinstance(e, CrossedElement):
                entries.append(crossed_to_obj(e))
            else:
                raise TypeError(f"unsupported entry {type(e)!r}")
    return {"rows": mat.rows, "cols": mat.cols, "entries": entries}


def matrix_from_obj(obj) -> AlgMatrix:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    flat = []
    for entry in obj["entries"]:
        flat.append(crossed_from_obj(entry) if isinstance(entry, dict)
                    else poly_from_obj(entry))
    if len(flat) != rows * cols:
        raise ValueError("entry count does not match the declared shape")
    return AlgMatrix([flat[r * cols:(r + 1) * cols] for r in range(rows)])


def matrix_sha256(mat: AlgMatrix) -> str:
    return hashlib.sha256(dumps(matrix_to_obj(mat)).encode("utf-8")).hexdigest()


def lift_to_obj(result: LiftResult, input_matrix: AlgMatrix,
                seed: int | None = None) -> dict:
    return {
        "type": "lift",
        "input_sha256": matrix_sha256(input_matrix),
        "output": matrix_to_obj(result.output),
        "left_inverse": matrix_to_obj(result.left_inverse),
        "distance": result.distance,
        "residual": result.residual,
        "seed": seed,
    }


def lift_from_obj(obj) -> LiftResult:
    return LiftResult(
        output=matrix_from_obj(obj["output"]),
        left_inverse=matrix_from_obj(obj["left_inverse"]),
        distance=float(obj["distance"]),
        residual=float(obj["residual"]),
    )
