"""Smoke test for the efftop Python extension.

Build it first:

    cargo build -p efftop-py --features extension-module --release
"""

import json
import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    lib = ROOT / "target" / "release" / "libefftop.so"
    if not lib.exists():
        sys.exit(f"missing {lib}; build the extension first")
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "efftop.so")
    sys.path.insert(0, str(tmp))
    import efftop

    return efftop


def main():
    efftop = load()

    q = Fraction(efftop.approx("sqrt2", 20))
    assert abs(q * q - 2) < Fraction(1, 2**18), q

    assert efftop.member("rat:1/2", "(0/1,1/1)") is not None
    assert efftop.member("rat:2/1", "(0/1,1/1)", fuel=100_000) is None

    assert efftop.wso_position([(2, 0)]) == 3
    assert efftop.wso_position([(3, 0), (2, 1)]) == 4
    assert efftop.wso_position([(3, 1)]) is None

    [line] = efftop.run(["real", "approx", "--x", "rat:1/3", "--bits", "10"])
    assert json.loads(line)["q"] == "1/3"

    try:
        efftop.run(["real", "approx", "--x", "sqrt2", "--bits", "10", "--fuel", "0"])
    except efftop.OutOfFuel:
        pass
    else:
        raise AssertionError("zero fuel should run out")

    try:
        efftop.approx("pi", 4)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown real accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
