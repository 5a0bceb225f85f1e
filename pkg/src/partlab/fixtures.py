"""Published Partition Sort timing tables, embedded verbatim as CSV text.

Times are seconds, each a mean over 50 runs on the original authors'
machine, printed with the original digits (e.g. ``0.1487`` keeps four
decimals). ``TABLE3_SS`` holds the published sums of squares of the 3x3x3
factorial ANOVA computed from ``TABLE2``.
"""

from __future__ import annotations

import csv
import hashlib
import io

import numpy as np

TABLE1_CSV = """\
n,time
10000,0.05168
20000,0.10816
30000,0.1487
40000,0.17218
50000,0.20494
60000,0.24078
70000,0.2659
80000,0.31322
90000,0.35128
100000,0.39496
"""

TABLE2_CSV = """\
n,m,p,time
50000,100,0.2,0.07248
50000,100,0.5,0.07968
50000,100,0.8,0.07314
50000,1000,0.2,0.09662
50000,1000,0.5,0.10186
50000,1000,0.8,0.09884
50000,1500,0.2,0.10032
50000,1500,0.5,0.10618
50000,1500,0.8,0.10212
100000,100,0.2,0.16502
100000,100,0.5,0.1734
100000,100,0.8,0.16638
100000,1000,0.2,0.21394
100000,1000,0.5,0.22318
100000,1000,0.8,0.21468
100000,1500,0.2,0.22194
100000,1500,0.5,0.23084
100000,1500,0.8,0.22356
150000,100,0.2,0.26242
150000,100,0.5,0.27632
150000,100,0.8,0.26322
150000,1000,0.2,0.33988
150000,1000,0.5,0.35744
150000,1000,0.8,0.34436
150000,1500,0.2,0.35648
150000,1500,0.5,0.37
150000,1500,0.8,0.35572
"""

TABLE3_CSV = """\
source,df,seq_ss
n,2,0.731167
m,2,0.056680
p,2,0.001440
n*m,4,0.011331
n*p,4,0.000283
m*p,4,0.000034
n*m*p,8,0.000046
Error,54,0.000001
Total,80,0.800982
"""

TABLE4_CSV = """\
m,time
100,0.07968
300,0.09066
500,0.09586
700,0.09968
900,0.10154
1100,0.10438
1300,0.10282
1500,0.10618
"""

TABLE5_CSV = """\
p,time
0.1,0.09084
0.2,0.09662
0.3,0.09884
0.4,0.10198
0.5,0.10186
0.6,0.10034
0.7,0.0989
0.8,0.09884
0.9,0.09096
"""

FIXTURES = {
    "table1": TABLE1_CSV,
    "table2": TABLE2_CSV,
    "table3": TABLE3_CSV,
    "table4": TABLE4_CSV,
    "table5": TABLE5_CSV,
}


def checksum(name: str) -> str:
    return hashlib.sha256(FIXTURES[name].encode("utf-8")).hexdigest()


def load(name: str) -> dict[str, np.ndarray]:
    """Columns of a fixture as arrays (``source`` stays a string column)."""
    rows = list(csv.DictReader(io.StringIO(FIXTURES[name])))
    out = {}
    for key in rows[0]:
        values = [row[key] for row in rows]
        out[key] = np.array(values) if key == "source" else np.array([float(v) for v in values])
    return out


def table1():
    t = load("table1")
    return t["n"], t["time"]


def table2_cells(replicates: int = 3) -> np.ndarray:
    """Cell means as an ``(n, m, p, r)`` array, each mean repeated ``replicates`` times."""
    t = load("table2")
    cells = t["time"].reshape(3, 3, 3)
    return np.repeat(cells[..., None], replicates, axis=3)


def table3_ss() -> dict[str, float]:
    t = load("table3")
    return dict(zip(t["source"].tolist(), t["seq_ss"].tolist()))


def table4():
    t = load("table4")
    return t["m"], t["time"]


def table5():
    t = load("table5")
    return t["p"], t["time"]
