#!/usr/bin/env python3
"""Smoke test for the octonary Python extension.

Builds nothing itself: it locates the compiled cdylib under target/ (release
preferred), stages it as an importable module, and exercises the bindings.

    cargo build -p octonary-python --release
    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> pathlib.Path:
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("liboctonary.so", "octonary.dll", "liboctonary.dylib")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p octonary-python --release")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="octonary_py_"))
    shutil.copy2(built, stage / f"octonary{suffix}")
    return stage


sys.path.insert(0, str(stage_module()))
import octonary  # noqa: E402

# generating functions
assert octonary.theta(5).coefficients() == ["1", "2", "0", "0", "2"]
assert octonary.borwein(8).coefficients() == ["1", "6", "0", "6", "6", "0", "0", "12"]
assert octonary.eta_quotient("1^2 2^2 3^2 6^2", 4).coefficients() == ["0", "1", "-2", "-3"]
assert octonary.expand("E4", 3) == ["1", "240", "2160"]

# series arithmetic: theta(z)^2 counts sums of two squares
theta2 = octonary.theta(10).mul(octonary.theta(10))
assert theta2.coefficients() == ["1", "4", "4", "0", "4", "8", "0", "0", "4", "4"]

# scalar kernel
assert octonary.kronecker(12, 11) == 1
assert octonary.kronecker(8, 3) == -1
assert octonary.kronecker(24, 2) == 0

# brute-force counts
assert octonary.count("A:1,1,1,1,1,1", 1) == 20
assert octonary.count("B:1,1,1,2", 2) == 114
assert len(octonary.forms()) == 109

# the solver pipeline at a small working precision
session = octonary.Session(48)
nu = session.solve("B:1,1,2")
assert nu[:5] == ["3/40", "-1/5", "-27/40", "0", "9/5"]
assert session.verify("A:1,1,2,3,1,1", 20) == []
assert session.basis("trivial")[0] == "E4(z)"

# the chi24 listing repair is reported
repairs = session.remediation("chi24")
assert [r[0] for r in repairs] == [9, 10]
assert repairs[0][2] == "3^2 4^-1 6^1 8^2 24^4"

# reference tables reproduce exactly
entries, mismatches = session.diff_table(5)
assert entries == 18 * 16 and mismatches == 0

print("octonary python bindings: all smoke checks passed")
