"""Drive the command-line interface in-process, end to end.

Generates an instance file, solves it with the fast path and the
oracle, and sweeps a tiny benchmark grid, all through the same entry
point the installed `sparsekis` script uses.
"""

import tempfile
from pathlib import Path

from sparsekis.cli import main

with tempfile.TemporaryDirectory() as td:
    work = Path(td)
    hgr = work / "demo.hgr"
    report = work / "report.json"
    bench = work / "bench.csv"

    print("$ sparsekis gen random-hgr --n 12 --gamma3 1.4 --seed 5 --out demo.hgr")
    main(["gen", "random-hgr", "--n", "12", "--gamma3", "1.4",
          "--seed", "5", "--out", str(hgr)])
    for line in hgr.read_text().splitlines()[:4]:
        print(f"  {line}")
    print("  ...")

    print("$ sparsekis solve-kis demo.hgr -k 4 --count --witness --json report.json")
    main(["solve-kis", str(hgr), "-k", "4", "--count", "--witness",
          "--json", str(report)])
    print(f"  report: {report.read_text().strip()}")

    print("$ sparsekis oracle kis demo.hgr -k 4 --count")
    main(["oracle", "kis", str(hgr), "-k", "4", "--count"])

    print("$ sparsekis bench --recipe random-hgr --n 10,12 --gamma 1.5 "
          "-k 3 --solver ie --out bench.csv")
    main(["bench", "--recipe", "random-hgr", "--n", "10,12", "--gamma", "1.5",
          "-k", "3", "--solver", "ie", "--out", str(bench)])
    for line in bench.read_text().splitlines():
        print(f"  {line}")
