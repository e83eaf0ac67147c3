"""Exit criteria.  Each test prints one PASS/FAIL line in the terminal summary.

All tolerances are exact (integer combinatorics); time limits are hard.
"""

import io
import itertools
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from bhgsets import setfile
from bhgsets.cli import main
from bhgsets.constructions import base_digits, golomb_set, modular_reduce, moment_curve, translate_union
from bhgsets.finite_field import FieldSpec, parse_element, primitive_elements
from bhgsets.groups import BhgSet, GroupSpec
from bhgsets.search import bound_gap_report, exhaustive_max
from bhgsets.symmetric import power_sum_collision, power_sums, roots_from_sigma, sigma_from_power_sums
from bhgsets.verifier import min_g, rep_profile

from conftest import ACCEPTANCE_LINES

REF_A_F9 = [("0", "0"), ("1", "1"), ("2", "1"), ("t", "2t+1"), ("t+1", "t+2"),
              ("t+2", "2"), ("2t", "2t+1"), ("2t+1", "2"), ("2t+2", "t+2")]
REF_B_Z3_4 = [(0, 0, 0, 0), (0, 1, 0, 1), (0, 2, 0, 1), (1, 0, 2, 1), (1, 1, 1, 2),
                (1, 2, 0, 2), (2, 0, 2, 1), (2, 1, 0, 2), (2, 2, 1, 2)]
REF_UNION = (1, 2, 7, 9, 10, 15, 25, 26, 31)
REF_BASE2 = [(0, 0, 0, 0, 1), (0, 0, 0, 1, 0), (0, 0, 1, 1, 1), (0, 1, 0, 0, 1), (0, 1, 0, 1, 0),
               (0, 1, 1, 1, 1), (1, 1, 0, 0, 1), (1, 1, 0, 1, 0), (1, 1, 1, 1, 1)]
REF_BASE6 = [(0, 1), (0, 2), (1, 1), (1, 3), (1, 4), (2, 3), (4, 1), (4, 2), (5, 1)]
REF_G = [(1, 14), (2, 10), (3, 2), (4, 1), (5, 4), (6, 13), (7, 15), (8, 6),
           (9, 12), (10, 7), (11, 11), (12, 5), (13, 3), (14, 8), (15, 9)]
REF_REDUCED = [(1, 6), (2, 2), (3, 2), (4, 1), (5, 4), (6, 5), (7, 7), (0, 6),
                 (1, 4), (2, 7), (3, 3), (4, 5), (5, 3), (6, 0), (7, 1)]


@contextmanager
def criterion(number, title, limit):
    """Run one criterion under a hard time limit and record its line."""
    start = time.perf_counter()
    notes = []
    try:
        yield notes
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number} FAIL  {title} ({elapsed:.2f}s / {limit}s): {exc}")
        raise
    extra = ("; " + "; ".join(notes)) if notes else ""
    ACCEPTANCE_LINES.append(f"criterion {number} PASS  {title} ({elapsed:.2f}s / {limit}s){extra}")


def cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_01_example_f9_reproduction():
    with criterion(1, "moment curve over F_9 (sets A and B)", 1.0) as notes:
        f9 = FieldSpec(3, 2, (1, 1, 2))
        code, out = cli("construct", "moment", "--p", "3", "--n", "2", "--h", "2", "--modulus", "1,1,2")
        assert code == 0
        A = setfile.parse(out)
        assert set(A.elements) == {tuple(parse_element(f9, c) for c in pair) for pair in REF_A_F9}
        assert len(A) == 9
        code, out = cli("construct", "moment", "--p", "3", "--n", "2", "--h", "2", "--modulus", "1,1,2", "--vectorize")
        assert code == 0
        B = setfile.parse(out)
        assert list(B.elements) == sorted(REF_B_Z3_4)
        assert min_g(A, 2) == 1 and min_g(B, 2) == 1
        notes.append("min_g(A)=min_g(B)=1")


def test_02_moment_curve_sweep():
    with criterion(2, "moment curve is B_h for p in {5,7,11,13}, h in {2,3}; GF(9), GF(25) at h=2", 10.0) as notes:
        checked = 0
        for p, h in itertools.product((5, 7, 11, 13), (2, 3)):
            assert p > h
            A = moment_curve(FieldSpec(p), h)
            assert len(A) == p and min_g(A, h) == 1
            checked += 1
        for q in (9, 25):
            A = moment_curve(FieldSpec.of_order(q), 2)
            assert len(A) == q and min_g(A, 2) == 1
            checked += 1
        notes.append(f"{checked} instances")


def test_03_newton_round_trip():
    with criterion(3, "power sums -> Newton -> roots round trip over GF(7), GF(11)", 5.0) as notes:
        total = 0
        for p in (7, 11):
            spec = FieldSpec(p)
            els = list(spec.elements())
            for n in (1, 2, 3):
                for ms in itertools.combinations_with_replacement(els, n):
                    sigma = sigma_from_power_sums(spec, power_sums(spec, ms, n))
                    assert roots_from_sigma(spec, sigma) == ms
                    total += 1
        a, b = power_sum_collision(FieldSpec(2), 2)
        assert a != b
        notes.append(f"{total} multisets; GF(2) n=2 collision {[x.coeffs[0] for x in a]} vs {[x.coeffs[0] for x in b]}")


def test_04_digit_lifting_example():
    with criterion(4, "translate union and its base-2 / base-6 liftings", 1.0):
        B = translate_union([1, 2, 7], 8, [0, 1, 3])
        assert B.ints() == REF_UNION
        two = base_digits(B, 2, 5)
        six = base_digits(B, 6, 2)
        assert list(two.elements) == REF_BASE2
        assert list(six.elements) == REF_BASE6
        assert min_g(B, 2) == min_g(two, 2) == min_g(six, 2) == 2


def test_05_digit_lifting_property():
    with criterion(5, "min_g([A]_N) <= min_g(A) and |[A]_N| = |A| on 100 random sets", 30.0) as notes:
        rnd = random.Random(20240501)
        strict = 0
        for _ in range(100):
            N, d = rnd.randint(2, 6), rnd.choice((2, 3))
            size = rnd.randint(1, min(N**d, 14))
            vals = rnd.sample(range(N**d), size)
            A = BhgSet.integers(vals, GroupSpec.box(1, N**d))
            g = min_g(A, 2)
            lifted = base_digits(BhgSet(A.spec, A.elements, h=2, g=g), N, d)
            assert len(lifted) == len(A)
            lg = min_g(lifted, 2)
            assert lg <= g
            strict += lg < g
        notes.append(f"{strict} of 100 strictly improved")


def test_06_golomb():
    with criterion(6, "Golomb set for q=17 and |G| = q-2 for all primitive pairs", 10.0) as notes:
        code, out = cli("construct", "golomb", "--q", "17", "--alpha", "3", "--beta", "5", "--a", "1")
        assert code == 0
        G = setfile.parse(out)
        assert list(G.elements) == REF_G
        assert min_g(G, 2) == 1
        pairs = 0
        for q in (4, 5, 7, 8, 9, 11, 13, 16, 17):
            spec = FieldSpec.of_order(q)
            prims = primitive_elements(spec)
            for alpha, beta in itertools.product(prims, repeat=2):
                assert len(golomb_set(spec, alpha, beta, spec.one())) == q - 2
                pairs += 1
        notes.append(f"{pairs} (alpha, beta) pairs")


def test_07_modular_reduction():
    with criterion(7, "q=17 Golomb set reduced by (2,2)", 1.0) as notes:
        f17 = FieldSpec(17)
        G = golomb_set(f17, f17.element(3), f17.element(5), f17.one())
        R = modular_reduce(G, (2, 2))
        assert set(R.elements) == set(REF_REDUCED) and len(R) == len(REF_REDUCED)
        assert R.spec == GroupSpec.product(8, 8)
        assert R.certificate.guaranteed_g == 4
        measured = min_g(R, 2)
        assert measured <= 4
        notes.append(f"measured min_g={measured}, certificate g=4, collisions={R.certificate.params['collisions']}")
        notes.append("ambient group Z_8 x Z_8, not Z_16 x Z_16")


def test_08_extremal_values():
    with criterion(8, "F_2(Z_3^2)=3, F_2(Z_5^2)=5, F_2(Z_7)=F_2(Z_8)=3", 60.0):
        for spec, want in [(GroupSpec.product(3, 3), 3), (GroupSpec.product(5, 5), 5),
                           (GroupSpec.product(7), 3), (GroupSpec.product(8), 3)]:
            res = exhaustive_max(spec, 2, 1)
            assert res.exhaustive and res.best_size == want, (str(spec), res.best_size)


def test_09_gap_inequality():
    with criterion(9, "F_2(N^2) <= F_2^2(N) for N in {2,3,4}", 120.0) as notes:
        for N in (2, 3, 4):
            rep = bound_gap_report(N, 2, 2, 1)
            assert rep.one_dim.exhaustive and rep.multi_dim.exhaustive
            assert rep.holds
            notes.append(f"N={N}: {rep.one_dim.best_size} <= {rep.multi_dim.best_size}")


def naive_max(spec, h, g):
    els = list(spec.elements())
    best = 0
    for mask in range(1, 1 << len(els)):
        size = bin(mask).count("1")
        if size > best and min_g(BhgSet(spec, tuple(e for i, e in enumerate(els) if mask >> i & 1)), h) <= g:
            best = size
    return best


def test_10_oracle_equivalence():
    with criterion(10, "exhaustive_max == all-subsets scan on Z_m, m <= 12, g in {1,2}", 60.0) as notes:
        values = {}
        for m in range(2, 13):
            for g in (1, 2):
                spec = GroupSpec.product(m)
                fast = exhaustive_max(spec, 2, g)
                assert fast.exhaustive and fast.best_size == naive_max(spec, 2, g), (m, g)
                values[m, g] = fast.best_size
        notes.append("g=1: " + " ".join(str(values[m, 1]) for m in range(2, 13)))


GOLDEN = [
    ["construct", "golomb", "--q", "17", "--alpha", "3", "--beta", "5", "--a", "1"],
    ["construct", "moment", "--p", "3", "--n", "2", "--h", "2", "--modulus", "1,1,2", "--vectorize"],
    ["construct", "moment", "--p", "3", "--n", "2", "--h", "2", "--modulus", "1,1,2"],
    ["construct", "union", "--elements", "1,2,7", "--m", "8", "--coeffs", "0,1,3"],
    ["verify", "--elements", "1,2,7,9,10,15,25,26,31", "--h", "2", "--g", "2"],
    ["verify", "--elements", "1,2,7,9,10,15,25,26,31", "--h", "2", "--g", "1"],
    ["verify", "--elements", "0", "--h", "2", "--g", "1"],
    ["search", "max", "--group", "product:3,3", "--h", "2", "--g", "1"],
    ["search", "max", "--group", "product:7", "--h", "2", "--g", "1"],
    ["search", "greedy", "--h", "2", "--g", "1", "--count", "5"],
]

THREADED = [
    ["search", "max", "--group", "product:5,5", "--h", "2", "--g", "1"],
    ["search", "max", "--group", "product:12", "--h", "2", "--g", "2"],
    ["search", "gap", "--N", "3", "--d", "2"],
    ["verify", "--elements", "1,2,7,9,10,15,25,26,31", "--h", "3"],
]


def _strip_witness(text):
    return [l for l in text.splitlines() if not l.startswith("witness")]


def test_11_determinism():
    with criterion(11, "byte-identical golden output; --threads 4 changes no number", 120.0) as notes:
        for argv in GOLDEN:
            assert cli(*argv) == cli(*argv), argv
        # fresh interpreters with different hash seeds
        env = dict(os.environ)
        outs = []
        for seed in ("1", "2"):
            env["PYTHONHASHSEED"] = seed
            outs.append([subprocess.run([sys.executable, "-m", "bhgsets", *argv], capture_output=True,
                                        env=env, check=False).stdout for argv in GOLDEN[:8]])
        assert outs[0] == outs[1]
        assert outs[0][0].decode() == cli(*GOLDEN[0])[1]
        for argv in THREADED:
            one = cli(*argv)
            four = cli(*argv, "--threads", "4")
            assert one[0] == four[0]
            assert _strip_witness(one[1]) == _strip_witness(four[1]), argv
        notes.append(f"{len(GOLDEN)} golden commands, {len(THREADED)} threaded comparisons")
