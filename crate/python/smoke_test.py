"""Smoke test for the Python bindings.

Builds the extension with cargo if needed, loads it from a temporary
directory and checks a few known values.

    python3 python/smoke_test.py
"""

import importlib
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    try:
        return importlib.import_module("snarkdefect")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "snarkdefect-py"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libsnarkdefect.so"
    if not lib.exists():
        lib = ROOT / "target" / "release" / "libsnarkdefect.dylib"
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "snarkdefect.so")
    sys.path.insert(0, str(tmp))
    return importlib.import_module("snarkdefect")


def main():
    sd = load_module()

    p = sd.Graph("IheA@GUAo")
    assert (p.vertex_count, p.edge_count) == (10, 15)
    assert p.perfect_matching_count() == 6
    assert p.defect() == 3
    assert p.oddness() == 2
    assert p.density() == 1
    assert p.girth() == 5
    assert p.is_colourable() is False
    report = json.loads(p.measure())
    assert report["resistance"] == {"lower": 2, "upper": 2}

    k4 = sd.Graph.named("k4")
    assert k4.defect() == 0 and k4.is_colourable() is True

    g, bundle = sd.build_snark(6)
    assert g.vertex_count == 306 and g.girth() == 6
    assert sd.verify(g, bundle)
    claims = json.loads(bundle)["claims"]
    assert claims["oddness"] == 2 and claims["defect_at_least"] == 3

    try:
        sd.build_snark(5)
    except ValueError as e:
        assert "girth 5" in str(e)
    else:
        raise AssertionError("girth 5 should be refused")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
