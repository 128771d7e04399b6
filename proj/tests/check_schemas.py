"""Validates CLI output against the published JSON schemas.

usage: check_schemas.py <fitsgeo binary> <docs dir>
"""
import json
import math
import pathlib
import random
import subprocess
import sys
import tempfile

import jsonschema


def run(binary, *args):
    return subprocess.run([binary, *args], check=True, capture_output=True, text=True).stdout


def random_surface(rng, sid):
    c = [rng.uniform(-5, 5) for _ in range(3)]
    kind = rng.choice(["SPH", "RPP", "RCC", "TRC", "TZ", "TX", "BOX", "WED", "REC", "PX", "P"])
    s = {"id": sid, "name": f"s{sid}", "kind": kind}
    if kind == "SPH":
        s.update(center=c, r=rng.uniform(0.1, 2))
    elif kind == "RPP":
        s.update(xmin=c[0], xmax=c[0] + 1, ymin=c[1], ymax=c[1] + 2, zmin=c[2], zmax=c[2] + 0.5)
    elif kind == "RCC":
        s.update(base=c, h=[0, rng.uniform(0.5, 2), 0], r=rng.uniform(0.1, 1))
    elif kind == "TRC":
        s.update(base=c, h=[rng.uniform(0.5, 2), 0, 0], r_base=1.0, r_top=rng.uniform(0, 0.9))
    elif kind in ("TZ", "TX"):
        s.update(center=c, a=2.0, b=rng.uniform(0.2, 1), c=rng.uniform(0.2, 1.5))
    elif kind in ("BOX", "WED"):
        t = rng.uniform(0, math.pi)
        e1 = [math.cos(t), math.sin(t), 0]
        e2 = [-2 * math.sin(t), 2 * math.cos(t), 0]
        s.update({"base" if kind == "BOX" else "vertex": c, "e1": e1, "e2": e2, "e3": [0, 0, 1.5]})
    elif kind == "REC":
        s.update(base=c, h=[0, 0, 2], v1=[1.5, 0, 0], v2=[0, 0.5, 0])
    elif kind == "PX":
        s.update(d=c[0])
    else:
        s.update(a=1, b=-1, c=0.5, d=c[2])
    s["color"] = rng.choice(["red", "blue", "pastelgreen", "gray"])
    s["opacity"] = round(rng.uniform(0, 1), 3)
    return s


def random_doc(rng, index):
    surfaces = [random_surface(rng, i + 1) for i in range(rng.randint(1, 6))]
    return {
        "title": f"random {index}",
        "surfaces": surfaces,
        "materials": [{"id": 1, "db": "water"}],
        "cells": [
            {"id": 1, "material": 1, "region": "-s1"},
            {"id": 2, "material": "outer", "region": "s1"},
        ],
    }


def main():
    binary, docs = sys.argv[1], pathlib.Path(sys.argv[2])
    scene_schema = json.loads((docs / "scene-schema.json").read_text())
    model_schema = json.loads((docs / "model-schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(scene_schema)
    jsonschema.Draft202012Validator.check_schema(model_schema)

    with tempfile.TemporaryDirectory() as tmp:
        snake = pathlib.Path(tmp) / "snake.json"
        run(binary, "example", "snake", "-o", str(snake))
        jsonschema.validate(json.loads(snake.read_text()), model_schema)
        for extra in ([], ["--labels"], ["--opacity", "0.25", "--resolution", "5"]):
            scene = json.loads(run(binary, "scene", str(snake), *extra))
            jsonschema.validate(scene, scene_schema)
            assert len(scene["objects"]) == 51, len(scene["objects"])

        rng = random.Random(7)
        for i in range(25):
            doc = random_doc(rng, i)
            jsonschema.validate(doc, model_schema)
            path = pathlib.Path(tmp) / f"m{i}.json"
            path.write_text(json.dumps(doc))
            scene = json.loads(run(binary, "scene", str(path), "--labels", "--resolution", "6"))
            jsonschema.validate(scene, scene_schema)
            assert [o["surface_id"] for o in scene["objects"]] == sorted(s["id"] for s in doc["surfaces"])
    print("schemas ok")


if __name__ == "__main__":
    main()
