"""Smoke test for the commvar extension module.

Install first with `pip install --no-build-isolation ./crates/python`, or run
this script directly: it falls back to building the library with cargo and
loading it from a temporary directory.
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile


def load():
    try:
        import commvar
        return commvar
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    subprocess.run(["cargo", "build", "--release", "-p", "commvar-py"], cwd=root, check=True)
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(root / "target" / "release" / "libcommvar.so", tmp / "commvar.so")
    sys.path.insert(0, str(tmp))
    import commvar
    return commvar


def main():
    commvar = load()
    su2 = commvar.GroupSpec("SU(2)")
    assert su2.rank == 1 and su2.weyl_order == 2 and su2.degrees == [2]

    assert commvar.poincare_total(su2, [0, 0]) == [1, 0, 1, 2]
    assert commvar.poincare_total(su2, [0, 0, 2, 3]) == [4, 4, 6, 8, 2]
    assert commvar.poincare_total(commvar.GroupSpec("U(1)"), [0, 0, 0]) == [1, 3, 3, 1]

    orbits = commvar.orbits(su2, [2, 3])
    assert len(orbits) == commvar.burnside_count(su2, [2, 3]) == 4
    assert sorted(o.orbit_size for o in orbits) == [1, 1, 2, 2]

    assert commvar.splitting_totals(su2, [0, 0, 2, 3]) == (
        "2*Thom(2) v 2*S^4 v 8*S^3 v 2*S^2 v 4*S^1 v 2*S^2_+ v S^0"
    )

    config = {"group": [{"kind": "SU", "size": 2}], "pi": {"presentation": [0, 0, 2, 3]}}
    report = json.loads(commvar.report(json.dumps(config)))
    assert report["splitting"]["totals"]["s0"] == 1
    assert "timing_ms" not in report["meta"]

    try:
        commvar.poincare_total(commvar.GroupSpec("SU(6)"), [7, 7], max_states=1000)
    except commvar.CapExceededError:
        pass
    else:
        raise AssertionError("cap was not enforced")

    try:
        commvar.GroupSpec("SO(3)")
    except ValueError:
        pass
    else:
        raise AssertionError("bad group accepted")

    print("commvar smoke test passed")


if __name__ == "__main__":
    main()
