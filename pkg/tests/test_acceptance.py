"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest,
where the lines are repeated in the terminal summary.
"""
import itertools
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

from gradalg.catalog import example  # noqa: E402
from gradalg.clifford import arf_three_ways, binomial_sums, clifford_table, periodicity_check  # noqa: E402
from gradalg.errors import DegenerateBicharacter  # noqa: E402
from gradalg.forms import (Bicharacter, QuadraticForm, agreement_subgroup, enumerate_forms,  # noqa: E402
                           iter_all_forms, iter_sign_bicharacters, orthogonal_sum, perp, polarization,
                           type_one_arf_counts)
from gradalg.graded import identify, label_division_grading, neutral_centralizer  # noqa: E402
from gradalg.groups import elementary_2, index_le2_subgroups, parse_group, two_torsion  # noqa: E402
from gradalg.involutions import (classify_involution_1a, classify_involution_1c,  # noqa: E402
                                 enumerate_second_kind, involution_signature, s_invariant_2f)
from gradalg.lie import (build_six_param, matrix_algebra, orbit_invariants, param_action,  # noqa: E402
                         random_six_params, same_orbit, skew_lie, symplectic_involution,
                         transpose_involution)
from gradalg.structure import AlgebraClass  # noqa: E402
from gradalg.twisted import build_complex_twisted, build_twisted, oracle_crosscheck  # noqa: E402

RESULTS: list[str] = []


def report(k, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    tag = "PASS" if ok and within else "FAIL"
    budget = "exact" if limit is None else f"{elapsed:.2f}s < {limit}s"
    line = f"{tag} criterion {k:2d}: {detail} ({budget})"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


class timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# -- independent references --------------------------------------------------------------

def mod8_arf(p, q):
    r = (p - q + 1) % 8
    return 1 if r in (1, 2, 3) else (0 if r in (0, 4) else -1)


def expected_clifford(p, q):
    """Class of Cl(p,q) from the mod-8 Arf rule and the Arf-to-class dictionary."""
    N, a = p + q, mod8_arf(p, q)
    if N % 2 == 0:
        return AlgebraClass.mat("R", 2 ** (N // 2)) if a == 1 else AlgebraClass.mat("H", 2 ** (N // 2 - 1))
    if a == 0:
        return AlgebraClass.mat("C", 2 ** ((N - 1) // 2))
    if a == 1:
        n = 2 ** ((N - 1) // 2)
        return AlgebraClass((("R", n), ("R", n)))
    n = 2 ** ((N - 3) // 2)
    return AlgebraClass((("H", n), ("H", n)))


def form(text, g):
    return QuadraticForm.from_signs(g, text)


# -- criteria -------------------------------------------------------------------------

def test_criterion_01_clifford_table():
    with timer() as t:
        grid = clifford_table(8)
        bad = [(p, q) for p in range(9) for q in range(9) if grid[p][q] != expected_clifford(p, q)]
        anchors = {(0, 1): "C", (0, 2): "H", (1, 1): "M2(R)", (1, 0): "RxR", (3, 0): "M2(C)", (0, 3): "HxH"}
        bad += [pq for pq, lab in anchors.items() if grid[pq[0]][pq[1]].label() != lab]
    report(1, not bad, t.elapsed, 1, f"81 cells and 6 anchors, {len(bad)} mismatches")


def test_criterion_02_three_way_arf():
    with timer() as t:
        cases = [(p, N - p) for N in range(13) for p in range(N + 1)]
        bad = []
        for p, q in cases:
            r = arf_three_ways((p, q))
            if len(set(r.values())) != 1 or r["closed"] != mod8_arf(p, q):
                bad.append((p, q))
    report(2, len(cases) == 91 and not bad, t.elapsed, 5, f"{len(cases)} cases, {len(bad)} disagreements")


def test_criterion_03_periodicity():
    with timer() as t:
        rows = [row for N in range(9) for p in range(N + 1) for row in periodicity_check((p, N - p))]
        fails = [r for r in rows if not r["pass"]]
    report(3, len(rows) == 3 * 45 and not fails, t.elapsed, 1, f"{len(rows)} rule checks, {len(fails)} failures")


def test_criterion_04_binomial():
    with timer() as t:
        bad = []
        for N in range(1, 65):
            direct, closed = binomial_sums(N)
            if direct != closed or list(direct.as_tuple()) != oracles.binomial_sums_direct(N):
                bad.append(N)
    report(4, not bad, t.elapsed, 1, f"N = 1..64, {len(bad)} mismatches")


def test_criterion_05_oracle_equivalence():
    with timer() as t:
        mismatches, checked = 0, 0
        counts_ok = True
        for n in range(1, 5):
            r = oracle_crosscheck(n)
            mismatches += len(r["mismatches"])
            checked += r["checked"]
            counts_ok &= r["checked"] + r["skipped"] == 2 ** (n * (n + 1) // 2)
        r = oracle_crosscheck(5, sample=1000, seed=2024)
        mismatches += len(r["mismatches"])
        checked += r["checked"]
        counts_ok &= r["checked"] + r["skipped"] == 1000
    report(5, counts_ok and mismatches == 0, t.elapsed, 120,
           f"{checked} forms checked (N <= 4 exhaustive, N = 5 sampled), {mismatches} mismatches")


def _direct_minus_counts(m):
    """Per type I bicharacter on Z2^(2m), the number of forms with Arf -1, by evaluating every form."""
    n = 2 * m
    xs = np.array(list(itertools.product((0, 1), repeat=n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    prods = np.stack([xs[:, i] * xs[:, j] for i, j in pairs], axis=1)
    lin = (np.array(list(itertools.product((0, 1), repeat=n))) @ xs.T) % 2  # (2^n forms, 2^n points)
    out = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        A = np.zeros((n, n), dtype=np.int64)
        for (i, j), b in zip(pairs, bits):
            A[i, j] = A[j, i] = b
        if not oracles._det_mod2(A):
            continue
        quad = (prods @ np.array(bits)) % 2
        ones = (quad[None, :] ^ lin).sum(axis=1)
        out.append(int((ones > 2 ** (n - 1)).sum()))
    return out


def test_criterion_06_counting_laws():
    with timer() as t:
        got = []
        ok = True
        for m in (1, 2, 3):
            want = 2 ** (2 * m - 1) - 2 ** (m - 1)
            counts = type_one_arf_counts(m)
            ok &= {minus for (_, minus) in counts} == {want}
            direct = _direct_minus_counts(m)
            ok &= set(direct) == {want} and len(direct) == sum(counts.values())
            got.append(direct[0])
    report(6, ok and got == [1, 6, 28], t.elapsed, 10, f"Arf -1 counts {got} for m = 1, 2, 3")


def test_criterion_07_involution_partitions():
    with timer() as t:
        Z2, Z22 = elementary_2(1), elementary_2(2)
        ok = True
        sizes_1a = []
        for m, mu in ((1, form("+++-", Z22)), (2, orthogonal_sum(form("+++-", Z22), form("+++-", Z22)))):
            etas = enumerate_forms(polarization(mu))
            classes = {}
            for e in etas:
                classes.setdefault(classify_involution_1a(mu, e), set()).add(e.values)
            want = [1, 2 ** (2 * m - 1) + 2 ** (m - 1) - 1, 2 ** (2 * m - 1) - 2 ** (m - 1)]
            got = [len(classes[k]) for k in ("1a-1", "1a-2", "1a-3")]
            ok &= got == want
            perms = oracles.stabilizer(mu.values, 2 * m, oracles.gl2_mod2(2 * m))
            orbs = oracles.orbits([e.values for e in etas], perms)
            ok &= sorted(map(frozenset, classes.values()), key=len) == sorted(map(frozenset, orbs), key=len)
            sizes_1a.append(got)
        mu = orthogonal_sum(form("+++-", Z22), form("+-", Z2))
        c = {}
        for e in enumerate_forms(polarization(mu)):
            tag = classify_involution_1c(mu, e)
            c[tag] = c.get(tag, 0) + 1
        split_1c = [c.get(k, 0) for k in ("1c-1", "1c-2", "1c-3", "1c-4")]
        ok &= split_1c == [1, 3, 3, 1]
        # agreement subgroup has index 2 for every pair of distinct forms sharing a polarization
        pairs = 0
        for n in range(1, 5):
            by_pol = {}
            for f in iter_all_forms(n):
                by_pol.setdefault(polarization(f), []).append(f)
            for forms in by_pol.values():
                for a, b in itertools.permutations(forms, 2):
                    ok &= agreement_subgroup(a, b).index == 2
                    pairs += 1
        # perp is a bijection onto the index <= 2 subgroups for every type I bicharacter
        perps = 0
        for n in (2, 4):
            g = elementary_2(n)
            targets = {s.members for s in index_le2_subgroups(g)}
            for b in iter_sign_bicharacters(n):
                if b.type_tag != "I":
                    continue
                image = [perp(b, u).members for u in range(g.order)]
                ok &= len(set(image)) == g.order and set(image) == targets
                perps += 1
    report(7, ok, t.elapsed, 30,
           f"1a sizes {sizes_1a}, 1c split {split_1c}, {pairs} agreement pairs, {perps} perp maps")


def test_criterion_08_worked_examples():
    with timer() as t:
        Z22 = elementary_2(2)
        h = build_twisted(Z22, form("+---", Z22))
        q = str(h.parse("1 + 2X_a") * h.parse("3X_a + X_b"))
        s = build_twisted(Z22, form("+++-", Z22))
        tw = s.parse("X_a + 3X_aX_b") * s.parse("X_a + 2X_b")
        ga = example("grad_M2C_Z22")
        K = [ga.degree_name(x) for x in neutral_centralizer(ga).K.members]
        ok = (q == "-6 + 3X_a + X_b + 2X_aX_b" and tw == s.parse("1 + 6X_a - 3X_b + 2X_aX_b")
              and K == ["e", "f"])
    report(8, ok, t.elapsed, None, f"quaternion {q}; twisted {tw}; K = {K}")


def test_criterion_09_division_labels():
    with timer() as t:
        want = {"grad_M2R_dim1": "1-a", "grad_H_dim1": "1-b", "grad_C_dim1": "1-c", "grad_M2C_dim1": "1-d",
                "grad_M2R_dim2": "2-a", "grad_M2C_Z4": "2-e", "grad_M2C_Z22": "2-c"}
        got = {k: label_division_grading(example(k)).tag for k in want}
        split = {k: identify(example(k)) for k in ("grad_M2_RxR", "grad_M2R_x_H")}
        ok = got == want
        ok &= split["grad_M2_RxR"] == AlgebraClass((("R", 2), ("R", 2)))
        ok &= split["grad_M2R_x_H"] == AlgebraClass((("R", 2), ("H", 1)))
    report(9, ok, t.elapsed, 30,
           "7 labels; splits " + ", ".join(f"{k} = {v.label()}" for k, v in split.items()))


def test_criterion_10_lie_transfer():
    with timer() as t:
        ok = True
        for r in (1, 2, 3):
            R = matrix_algebra(2 * r)
            L = skew_lie(R, symplectic_involution(R))  # verify=True checks Jacobi, antisymmetry, grading
            ok &= L.dim == r * (2 * r + 1)
        for n in range(1, 7):
            R = matrix_algebra(n)
            L = skew_lie(R, transpose_involution(R))
            ok &= L.dim == n * (n - 1) // 2
        R = matrix_algebra(4, ["e", "a", "e", "a"], elementary_2(1))
        L = skew_lie(R, symplectic_involution(R))
        ok &= not L.jacobi_violations() and not L.grading_violations()
        moves = 0
        for gname in ("Z2^2", "Z4"):
            G = parse_group(gname)
            for seed in range(20):
                p = random_six_params(G, random.Random(seed))
                base = orbit_invariants(*build_six_param(p))
                for g in range(G.order):
                    for flip in (False, True):
                        q = param_action(g, flip, p)
                        ok &= orbit_invariants(*build_six_param(q)) == base
                        ok &= same_orbit(p, q)[0]
                        moves += 1
    report(10, ok, t.elapsed, 120, f"so/sp dimensions, Jacobi and grading, {moves} orbit moves on 40 seeded sets")


def _second_kind_cases(gname):
    g = parse_group(gname)
    for k in range(4):
        try:
            a = build_complex_twisted(g, Bicharacter.from_generator_phases(g, [[0, k], [-k % 4, 0]]))
        except (DegenerateBicharacter, ValueError):
            continue
        yield a


def test_criterion_11_second_kind():
    with timer() as t:
        ok = True
        seen = []
        for gname in ("Z2^2", "Z4^2"):
            for a in _second_kind_cases(gname):
                T2 = two_torsion(a.group)
                root = int(round(T2.order ** 0.5))
                for phi in enumerate_second_kind(a):
                    S = s_invariant_2f(a, phi)
                    sig = involution_signature(a, phi)
                    ok &= S.is_closed() and T2.order % S.order == 0 and T2.order // S.order <= 2
                    ok &= sig in (0, root) and (sig == root) == (S.order == T2.order)
                    seen.append((gname, S.order, sig))
        ok &= bool(seen)
        summary = sorted(set(seen))
    report(11, ok, t.elapsed, 60, f"{len(seen)} involutions, (group, |S|, signature) in {summary}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
