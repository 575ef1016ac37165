#!/usr/bin/env python3
"""Recomputes worked values with sympy and compares them with dimgroup output."""

import json
import subprocess
import sys

import sympy as sp

DIMGROUP = sys.argv[1] if len(sys.argv) > 1 else "dimgroup"
FAILURES = []


def run(*args):
    out = subprocess.run([DIMGROUP, *args, "--json"], check=True, capture_output=True, text=True).stdout
    return json.loads(out)["result"]


def num(s):
    return sp.nsimplify(sp.sympify(s))


def same(a, b):
    return sp.expand(sp.sympify(a) - sp.sympify(b)) == 0


def check(name, cond, detail=""):
    print(f"{'ok  ' if cond else 'FAIL'} {name}" + (f"  [{detail}]" if detail and not cond else ""))
    if not cond:
        FAILURES.append(name)


class Map:
    def __init__(self, partition, branches):
        self.a = [num(x) for x in partition]
        self.b = [(num(s), num(t)) for s, t in branches]

    def tau_hat(self, x):
        vals = set()
        for i, (s, t) in enumerate(self.b):
            if self.a[i] <= x <= self.a[i + 1]:
                vals.add(sp.expand(s * x + t))
        return vals

    def value(self, x):
        for i, (s, t) in enumerate(self.b):
            if self.a[i] <= x < self.a[i + 1] or (i == len(self.b) - 1 and x == 1):
                return sp.expand(s * x + t)
        raise ValueError(x)

    def image(self, lo, hi):
        for i, (s, t) in enumerate(self.b):
            if self.a[i] <= lo and hi <= self.a[i + 1]:
                y0, y1 = sp.expand(s * lo + t), sp.expand(s * hi + t)
                return (y0, y1) if y0 < y1 else (y1, y0)
        raise ValueError((lo, hi))

    def preimages(self, y):
        out = set()
        for i, (s, t) in enumerate(self.b):
            x = sp.expand((y - t) / s)
            if self.a[i] <= x <= self.a[i + 1]:
                out.add(x)
        return out


def closure(m, seeds):
    seen, todo = set(), [num(s) for s in seeds]
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(m.tau_hat(x))
    return sorted(seen, key=lambda v: float(v))


def incidence(m, pts):
    n = len(pts) - 1
    rows = []
    for i in range(n):
        img = image_union(m, [(pts[i], pts[i + 1])])
        rows.append([1 if any(lo <= pts[j] and pts[j + 1] <= hi for lo, hi in img) else 0 for j in range(n)])
    return rows


def merge(intervals):
    out = []
    for lo, hi in sorted((iv for iv in intervals if iv[0] < iv[1]), key=lambda iv: float(iv[0])):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi, key=float))
        else:
            out.append((lo, hi))
    return out


def image_union(m, union):
    imgs = []
    for lo, hi in union:
        for i in range(len(m.b)):
            l2, h2 = max(lo, m.a[i], key=float), min(hi, m.a[i + 1], key=float)
            if l2 < h2:
                imgs.append(m.image(l2, h2))
    return merge(imgs)


def presentation_charpoly(rows):
    a = sp.Matrix(rows)
    n = a.shape[0]
    r = (a ** n).rank()
    x = sp.symbols("x")
    p = sp.Poly(a.charpoly(x).as_expr(), x)
    q, rem = sp.div(p, sp.Poly(x ** (n - r), x))
    assert rem.is_zero
    return [c for c in reversed(q.all_coeffs())]


def parse_interval(s):
    inner = s[s.index("(") + 1 : s.rindex(")")]
    lo, hi = inner.split(",")
    return num(lo), num(hi)


sqrt2 = sp.sqrt(2)
c2 = 1 - sqrt2 / 2
p2 = 2 - sqrt2
g = (sp.sqrt(5) - 1) / 2
tent = Map(["0", "1/2", "1"], [("2", "0"), ("-2", "2")])
triangle = Map(["0", "1/3", "1/2", "2/3", "1"], [("2", "1/3"), ("2", "-2/3"), ("2", "-1/3"), ("2", "-4/3")])
rt_sqrt2 = Map(["0", str(c2), "1"], [(str(sqrt2), str(2 - sqrt2)), (str(-sqrt2), str(sqrt2))])
rt_32 = Map(["0", "1/3", "1"], [("3/2", "1/2"), ("-3/2", "3/2")])
jump = Map(["0", "1/3", "1"], [("2", "0"), ("-1", "4/3")])
golden = Map(["0", str(1 - g), "1"], [("1", str(g)), ("1", str(g - 1))])
four_fold = Map(["0", "1/4", "1/2", "3/4", "1"], [("2", "0"), ("-2", "1"), ("1", "-1/2"), ("-1", "1")])

# Generalized orbits.
pts = closure(rt_sqrt2, rt_sqrt2.a)
got = [num(x) for x in run("orbit", "--preset", "restricted_tent:sqrt2")["points"]]
check("sqrt(2) restricted tent orbit is {0, c, p, 1}",
      len(got) == 4 and all(same(a, b) for a, b in zip(pts, got)) and same(pts[2], p2), f"{got}")
x, want = sp.Rational(1, 3), []
for _ in range(30):
    x = rt_32.value(x)
    want.append(x)
seeds = run("orbit", "--preset", "restricted_tent:3/2", "--bound", "30")["seeds"]
crit = next(s for s in seeds if same(s["seed"], "1/3"))
levels = [num(l[0]) for l in crit["levels"][1:31]]
check("slope 3/2 critical orbit, 30 iterates", levels == want)
check("slope 3/2 critical orbit numerators odd",
      all((want[n - 1] * 2 ** (n - 2)).q == 1 and (want[n - 1] * 2 ** (n - 2)).p % 2 == 1 for n in range(3, 31)))
check("slope 3/2 orbit open at bound", crit["status"] == "open_at_bound")

# Incidence matrices.
check("full tent incidence", run("markov", "--preset", "tent:2")["matrix"] == incidence(tent, closure(tent, tent.a)))
tri_pts = [num(v) for v in ["0", "1/3", "2/3", "1"]]
check("triangle incidence", run("markov", "--example", "triangle")["matrix"] == incidence(triangle, tri_pts))
check("sqrt(2) restricted tent incidence",
      run("markov", "--preset", "restricted_tent:sqrt2")["matrix"] == incidence(rt_sqrt2, pts))
jump_pts = closure(jump, jump.a)
check("jump map incidence", run("markov", "--example", "jump")["matrix"] == incidence(jump, jump_pts))

# Eventual range.
r = [[(sp.Integer(0), sp.Integer(1))]]
for _ in range(3):
    r.append(image_union(four_fold, r[-1]))
er = run("dimgroup", "--example", "four_fold")["eventual_range"]
check("four-fold map: R1 = R2 = [0, 1/2]", r[1] == r[2] == [(0, sp.Rational(1, 2))] and r[0] != r[1])
check("four-fold map: reported range and level",
      er["stabilized_at"] == 1 and [tuple(num(v) for v in iv) for iv in er["range"]] == r[1])

# Transfer operator.
t = run("transfer", "--preset", "tent:2", "--term", "0,1,1")["iterates"][1]
check("L 1 = 2 on the full tent", t["cuts"] == [] and t["values"] == [2])
t = run("transfer", "--preset", "tent:2", "--term", "1/2,1,1")["iterates"][1]
check("L chi_I(1/2,1) = chi_I(0,1)", t["cuts"] == [] and t["values"] == [1])
lo, hi = golden.image(sp.Integer(0), 1 - g)
t = run("transfer", "--preset", "interval_exchange:golden", "--term", f"0,{1 - g},1")["iterates"][1]
check("golden exchange pushes I(0, 1-g) to I(g, 1)",
      same(lo, g) and same(hi, 1) and len(t["cuts"]) == 1 and same(t["cuts"][0], g) and t["values"] == [0, 1])
t = run("transfer", "--preset", "tent:2", "--term", "0,1/4,1", "--steps", "2")["iterates"]
check("L chi_I(0,1/4) = chi_I(0,1/2)", [num(c) for c in t[1]["cuts"]] == [sp.Rational(1, 2)] and t[1]["values"] == [1, 0])

# Presentations.
for label, args, rows in [
    ("full tent", ["--preset", "tent:2"], incidence(tent, closure(tent, tent.a))),
    ("sqrt(2) restricted tent", ["--preset", "restricted_tent:sqrt2"], incidence(rt_sqrt2, pts)),
    ("triangle", ["--example", "triangle"], incidence(triangle, tri_pts)),
    ("jump", ["--example", "jump"], incidence(jump, jump_pts)),
]:
    pres = run("dimgroup", *args)["presentation"]
    want = presentation_charpoly(rows)
    got = [num(c) for c in pres["characteristic_polynomial"]]
    check(f"{label}: action characteristic polynomial", got == want, f"{got} vs {want}")
    check(f"{label}: rank", pres["rank"] == len(want) - 1)
act = sp.Matrix([[num(v) for v in row] for row in run("dimgroup", "--preset", "restricted_tent:sqrt2")["presentation"]["action"]])
check("sqrt(2) restricted tent: action squared is 2 Id and trace 0", act * act == 2 * sp.eye(2) and act.trace() == 0)

# Generators.
def generators(m):
    c = list(m.a)
    hat = set()
    for x in c:
        hat |= m.tau_hat(x)
    pts_ = sorted(set(c) | {min(hat, key=float)}, key=float)
    out = [(pts_[i], pts_[i + 1]) for i in range(len(pts_) - 1)]
    for i in range(1, len(m.a) - 1):
        s0, t0 = m.b[i - 1]
        s1, t1 = m.b[i]
        y0, y1 = sp.expand(s0 * m.a[i] + t0), sp.expand(s1 * m.a[i] + t1)
        iv = (y0, y1) if y0 < y1 else (y1, y0)
        if iv[0] != iv[1] and iv not in out:
            out.append(iv)
    return out


for label, args, m in [("jump", ["--example", "jump"], jump), ("full tent", ["--preset", "tent:2"], tent),
                       ("golden exchange", ["--example", "golden_exchange"], golden)]:
    got = [parse_interval(s) for s in run("dimgroup", *args)["generators"]]
    want = generators(m)
    check(f"{label}: module generators", len(got) == len(want) and all(
        same(a[0], b[0]) and same(a[1], b[1]) for a, b in zip(got, want)), f"{got} vs {want}")

# Bratteli multiplicities.
def count_preimages(m, x, n):
    if n == 0:
        return 1
    return sum(count_preimages(m, y, n - 1) for y in m.preimages(x))


levels = run("bratteli", "--preset", "restricted_tent:sqrt2", "--levels", "4")["levels"]
ok = True
for n, level in enumerate(levels):
    for v in level["vertices"]:
        mid = (num(v["lo"]) + num(v["hi"])) / 2
        ok = ok and v["k"] == count_preimages(rt_sqrt2, sp.expand(mid), n)
check("sqrt(2) restricted tent multiplicities are preimage counts", ok)
l3 = levels[3]["vertices"]
check("sqrt(2) restricted tent level 3: [0, p] k=2, [p, 1] k=4",
      len(l3) == 2 and same(l3[0]["hi"], p2) and l3[0]["k"] == 2 and l3[1]["k"] == 4)
tl = run("bratteli", "--preset", "tent:2", "--levels", "6")["levels"]
check("full tent multiplicities 2^n", [lv["vertices"][0]["k"] for lv in tl] == [2 ** n for n in range(7)])

# Orbit condition for the rotation.
x, seen = 1 - g, set()
for _ in range(201):
    seen.add(x)
    x = sp.expand(x + g if x < 1 - g else x + g - 1)
check("golden rotation: orbit of 1 - g has 201 distinct points", len(seen) == 201)
cls = run("classify", "--example", "golden_exchange")
check("golden exchange classification is conditional at 200",
      cls["tag"] == "ExchangeForm" and cls["conditional"] and cls["bound"] == 200)

if FAILURES:
    print(f"{len(FAILURES)} oracle checks failed")
    sys.exit(1)
print("all oracle checks passed")
