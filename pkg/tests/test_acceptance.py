"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Every comparison below is exact (rational or integer equality); the pinned
tolerance is zero throughout.
"""

import random
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
from pathlib import Path

from loops import random_loop, relabel_to_follow
from oracles import WordClasses, permutation_of
from strandgroups import ring
from strandgroups.abelian import (
    abelianization,
    enumerate_characters,
    int_matmul,
    kills_relations,
    relation_matrix,
    smith_normal_form,
)
from strandgroups.coxeter import (
    cayley_ball,
    generator_matrix,
    identity_matrix,
    matmul,
    normal_form_shortlex,
    tits_matrix,
)
from strandgroups.errors import PolicyViolationError
from strandgroups.render import read_svg, render_svg
from strandgroups.strata import (
    INTERVAL,
    Configuration,
    ordering_sector,
    partitions,
    stratum_info,
)
from strandgroups.strata import ring as ring_geometry
from strandgroups.trajectory import (
    POLICIES,
    POLICY_FAMILY,
    Trajectory,
    compile_loop,
    endpoint_permutation,
    validate,
    winding_by_initial_rank,
)
from strandgroups.words import (
    Presentation,
    Word,
    compose,
    identity_permutation,
    permutation_image,
)

TOLERANCE = 0  # exact arithmetic everywhere

GOLDEN = Path(__file__).parent / "golden"


# -- 1 ------------------------------------------------------------------------


def test_criterion_1_relations(acceptance):
    expected = {
        # family: (braid relation holds for adjacent pairs, distant pairs commute)
        "S": (True, True),
        "T": (False, True),
        "F": (True, False),
        "W": (False, False),
    }
    mismatches = []
    checks = 0
    for family, (braid, local) in expected.items():
        for n in range(2, 6):
            one = identity_matrix(n - 1)
            g = {i: generator_matrix(family, n, i) for i in range(1, n)}
            for i in range(1, n):
                checks += 1
                if matmul(g[i], g[i]) != one:
                    mismatches.append((family, n, f"s{i}^2"))
                for j in range(i + 1, n):
                    checks += 1
                    if j == i + 1:
                        lhs = matmul(matmul(g[i], g[j]), g[i])
                        rhs = matmul(matmul(g[j], g[i]), g[j])
                        holds, want = lhs == rhs, braid
                    else:
                        holds, want = matmul(g[i], g[j]) == matmul(g[j], g[i]), local
                    if holds != want:
                        mismatches.append((family, n, i, j))
    acceptance(
        1,
        not mismatches and checks > 0,
        f"{checks} exact matrix relation checks, N=2..5, families STFW, "
        f"{len(mismatches)} mismatches (tolerance {TOLERANCE})",
    )


# -- 2 ------------------------------------------------------------------------


def test_criterion_2_finite_collapse(acceptance):
    problems = []
    for n in range(2, 6):
        longest = n * (n - 1) // 2
        p = Presentation("S", n)
        sizes = (len(cayley_ball(p, longest)), len(cayley_ball(p, longest + 1)))
        if sizes != (factorial(n), factorial(n)):
            problems.append(("S", n, sizes))
    f3 = [len(cayley_ball(Presentation("F", 3), r)) for r in (3, 4, 6)]
    if f3 != [6, 6, 6]:
        problems.append(("F", 3, f3))
    t3 = [len(cayley_ball(Presentation("T", 3), r)) for r in range(0, 13)]
    if t3 != [2 * r + 1 for r in range(0, 13)]:
        problems.append(("T", 3, t3))
    acceptance(
        2,
        not problems,
        "S_N saturates at N! for N=2..5; F3 stays at 6; T3 radius r has 2r+1 "
        f"elements for r=0..12; problems: {problems or 'none'}",
    )


# -- 3 ------------------------------------------------------------------------


def test_criterion_3_oracle_equivalence(acceptance):
    rng = random.Random(31337)
    pairs = 0
    disagreements = []
    per_case = 850
    for family in "STFW":
        for n in (2, 3, 4):
            classes = WordClasses(family, n, 8)
            words = classes.words
            p = Presentation(family, n)
            cache = {}

            def cert(w):
                if w not in cache:
                    cache[w] = tits_matrix(Word.from_sigmas(p, w))
                return cache[w]

            for k in range(per_case):
                u = rng.choice(words)
                v = rng.choice(classes.class_of(u)) if k % 2 else rng.choice(words)
                if (cert(u) == cert(v)) != classes.same(u, v):
                    disagreements.append((family, n, u, v))
                pairs += 1
    acceptance(
        3,
        pairs >= 10**4 and not disagreements,
        f"{pairs} fuzzed pairs (N<=4, length<=8), {len(disagreements)} disagreements "
        "between matrix certificates and the rewriting closure",
    )


# -- 4 ------------------------------------------------------------------------


def test_criterion_4_wreath(acceptance):
    failures = []
    for n in range(2, 6):
        p = Presentation("S", n, "ring")
        up = list(range(1, n)) + list(range(n - 2, 0, -1))
        down = list(range(n - 1, 0, -1)) + list(range(2, n))
        sigma_n = ring.strand_element(p, up)
        if not ring.wreath_equal(sigma_n, ring.strand_element(p, down)):
            failures.append((n, "sigma_N orderings"))
        t1, tn = ring.translation(p, 1), ring.translation(p, n)
        form_a = t1 * sigma_n * t1.inverse()
        form_b = t1 * tn.inverse() * sigma_n
        e1_en = tuple(1 if j == 0 else (-1 if j == n - 1 else 0) for j in range(n))
        if not (form_a.winding == form_b.winding == e1_en and ring.wreath_equal(form_a, form_b)):
            failures.append((n, "sigma_0 forms"))
        chain = ring.strand_element(p, range(1, n))
        if not ring.wreath_equal(t1 * chain, chain * tn):
            failures.append((n, "zeta forms"))
        zeta = ring.distinguished(p, "zeta")
        gens = [ring.affine_generator(p, k) for k in range(n)]
        for i in range(n):
            if not ring.wreath_equal(zeta * gens[i] * zeta.inverse(), gens[(i + 1) % n]):
                failures.append((n, f"zeta conj sigma_{i}"))
        zn = zeta ** n
        if not ring.wreath_equal(zn, ring.WreathElement(p, (1,) * n, sigma_n.strand * sigma_n.strand)):
            failures.append((n, "zeta^N"))
        if any(not ring.wreath_equal(zn * g, g * zn) for g in gens):
            failures.append((n, "zeta^N central"))
        if not ring.verify_affine_presentation(n).all_hold:
            failures.append((n, "affine report"))
    acceptance(
        4,
        not failures,
        f"S_N(S1) for N=2..5, exact pair arithmetic; failures: {failures or 'none'}",
    )


# -- 5 ------------------------------------------------------------------------


def _generated_subgroup(perms, n):
    seen = {identity_permutation(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                c = compose(a, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def test_criterion_5_exact_sequences(acceptance):
    problems = []
    for family in "STFW":
        for n in (3, 4):
            ball = [h for h, _ in cayley_ball(Presentation(family, n), 4)]
            image = {h: permutation_image(h.normal_word) for h in ball}
            for h in ball:
                if image[h] != permutation_of(h.indices, n):
                    problems.append((family, n, "image oracle", str(h)))
            for a in ball:
                for b in ball:
                    if permutation_image((a * b).normal_word) != compose(image[a], image[b]):
                        problems.append((family, n, "homomorphism", str(a), str(b)))
            if len(_generated_subgroup(set(image.values()), n)) != factorial(n):
                problems.append((family, n, "surjective"))
            for h in ball:
                in_kernel = image[h] == identity_permutation(n)
                if ring.is_pure(h) != in_kernel:
                    problems.append((family, n, "kernel", str(h)))
                if family == "S" and in_kernel and not h.is_identity():
                    problems.append((family, n, "S kernel trivial", str(h)))
    # a pure element that is not trivial, witnessing a nontrivial kernel for T
    hexagon = normal_form_shortlex(Word.from_sigmas(Presentation("T", 3), [1, 2] * 3))
    if not ring.is_pure(hexagon) or hexagon.is_identity():
        problems.append(("T", 3, "pure hexagon"))

    rng = random.Random(5)
    for n in (2, 3):
        p = Presentation("S", n, "ring")
        ball = [el for el, _ in ring.ring_cayley_ball(p, 4 if n == 2 else 3)]
        for _ in range(1500):
            a, b = rng.choice(ball), rng.choice(ball)
            if (a * b).total_winding != a.total_winding + b.total_winding:
                problems.append(("ring", n, "winding homomorphism"))
            if ring.is_pure(a * b) != (compose(a.permutation, b.permutation) == identity_permutation(n)):
                problems.append(("ring", n, "ring kernel"))
        for el in ball:
            if ring.in_affine_subgroup(el) != (el.total_winding == 0):
                problems.append(("ring", n, "affine kernel"))
        zeta = ring.distinguished(p, "zeta")
        zn = zeta ** n
        if zeta.total_winding != 1 or zn.total_winding != n:
            problems.append(("ring", n, "shift winding"))
        # Z / (image of zeta^N) has order N
        if len({w % zn.total_winding for w in range(-3 * n, 3 * n)}) != n:
            problems.append(("ring", n, "quotient order"))
    acceptance(
        5,
        not problems,
        "radius-4 balls of S,T,F,W for N=3,4 map homomorphically onto S_N with kernel = "
        f"is_pure; ring winding map checks for N=2,3; problems: {problems[:3] or 'none'}",
    )


# -- 6 ------------------------------------------------------------------------


def _multiset_arrangements(partition):
    letters = [k for k, size in enumerate(partition) for _ in range(size)]
    return len(set(permutations(letters)))


def test_criterion_6_stratification(acceptance):
    problems = []
    if len(partitions(5)) != 7:
        problems.append("partitions(5)")
    for n in range(1, 9):
        for part in partitions(n):
            h_oracle = _multiset_arrangements(part)
            for d in (1, 2, 3):
                s = stratum_info(part, d)
                if s.h != h_oracle or s.h != factorial(n) // prod(factorial(x) for x in part):
                    problems.append(("h", part, d))
                if s.codim != sum((x - 1) * d for x in part):
                    problems.append(("codim", part, d))
                if s.orbit_size * s.stabilizer_order != factorial(n):
                    problems.append(("orbit-stabilizer", part, d))
    rng = random.Random(6)
    for n in range(1, 6):
        for geometry, want in ((INTERVAL, factorial(n)), (ring_geometry(1), factorial(n - 1))):
            seen = set()
            for _ in range(40 * factorial(n) + 50):
                xs = tuple(Fraction(k, 1009) for k in rng.sample(range(1009), n))
                seen.add(ordering_sector(Configuration(geometry, xs)))
            if len(seen) != want:
                problems.append(("sectors", n, geometry.kind, len(seen)))
    acceptance(
        6,
        not problems,
        "partitions(5)=7; h, codim, orbit*stabilizer exact for N<=8, d=1..3; sampled "
        f"sector counts N! and (N-1)! for N<=5; problems: {problems or 'none'}",
    )


# -- 7 ------------------------------------------------------------------------


def test_criterion_7_abelianization(acceptance):
    problems = []
    expected = {
        "S": lambda n: (2,),
        "T": lambda n: (2,) * (n - 1),
        "F": lambda n: (2,),
        "W": lambda n: (2,) * (n - 1),
    }
    snf_checks = 0
    for family, torsion in expected.items():
        for n in range(3 if family == "F" else 2, 7):
            for geometry, rank in (("interval", 0), ("ring", 1)):
                p = Presentation(family, n, geometry)
                inv = abelianization(p)
                if (inv.free_rank, inv.torsion) != (rank, torsion(n)):
                    problems.append((str(p), str(inv)))
                table = enumerate_characters(p)
                for ch in table.characters:
                    if not kills_relations(ch, p):
                        problems.append((str(p), "character"))
                    if geometry == "ring" and len({ch[f"t{j}"] for j in range(1, n + 1)}) != 1:
                        problems.append((str(p), "t not identified"))
                m = relation_matrix(p)
                res = smith_normal_form(m.as_lists(), ncols=len(m.generators))
                snf_checks += 1
                if [list(r) for r in res.D] != int_matmul(int_matmul(res.U, m.as_lists()), res.V):
                    problems.append((str(p), "UMV"))
    rng = random.Random(7)
    for _ in range(1000):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        res = smith_normal_form(m)
        snf_checks += 1
        d = res.diagonal
        chain = all(b % a == 0 if a else b == 0 for a, b in zip(d, d[1:]))
        if [list(x) for x in res.D] != int_matmul(int_matmul(res.U, m), res.V) or not chain:
            problems.append(("fuzz", m))
    acceptance(
        7,
        not problems,
        f"S->Z2, T->Z2^(N-1), F->Z2, W->Z2^(N-1) (N<=6), ring +Z; {snf_checks} exact "
        f"U.m.V=D checks; problems: {problems[:3] or 'none'}",
    )


# -- 8 ------------------------------------------------------------------------


def _same(a, b):
    if isinstance(a, ring.WreathElement):
        return ring.wreath_equal(a, b)
    return a == b


def _swap_loop(ranks, n):
    order = list(range(n))
    xs = {label: Fraction(label) for label in range(n)}
    paths = [[(Fraction(0), xs[l])] for l in range(n)]
    for k, i in enumerate(ranks, start=1):
        a, b = order[i - 1], order[i]
        xs[a], xs[b] = xs[b], xs[a]
        order[i - 1], order[i] = b, a
        for l in range(n):
            paths[l].append((Fraction(k), xs[l]))
    return Trajectory.from_points(paths)


def test_criterion_8_trajectories(acceptance):
    rng = random.Random(8)
    problems = []
    loops = 0
    for k in range(1000):
        n = rng.randint(2, 4)
        on_ring = k % 2 == 1
        pres = Presentation("S", n, "ring" if on_ring else "interval")
        a = random_loop(rng, n, on_ring)
        b = relabel_to_follow(a, random_loop(rng, n, on_ring, base=[p.positions[0] for p in a.paths]))
        ca, cb = compile_loop(a, pres), compile_loop(b, pres)
        loops += 1
        if not _same(compile_loop(a.then(b), pres).element, ca.element * cb.element):
            problems.append(("concatenation", k))
        if not _same(compile_loop(a.reversed(), pres).element, ca.element.inverse()):
            problems.append(("reversal", k))
        if permutation_image(ca.word) != endpoint_permutation(a):
            problems.append(("permutation", k))
        if on_ring and ca.element.winding != winding_by_initial_rank(a):
            problems.append(("winding", k))

    hexagon = _swap_loop([1, 2] * 3, 3)
    traid = compile_loop(hexagon, Presentation("T", 3), "Q3")
    sym = compile_loop(hexagon, Presentation("S", 3), "Q")
    if not (traid.is_pure and not traid.element.is_identity()):
        problems.append("hexagon in T3")
    if not (sym.is_pure and sym.element.is_identity()):
        problems.append("hexagon in S3")

    triple = Trajectory.from_points(
        [[(0, 0), (2, 2)], [(0, 1), (2, 1)], [(0, 2), (2, 0)]]
    )
    double = Trajectory.from_points(
        [[(0, 0), (1, 1)], [(0, 1), (1, 0)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
    )
    expect = {
        ("triple", "Q3"): True, ("triple", "Q3_22"): True, ("triple", "Q22"): False,
        ("double", "Q22"): True, ("double", "Q3_22"): True, ("double", "Q3"): False,
    }
    for name, traj in (("triple", triple), ("double", double)):
        for policy in POLICIES:
            report = validate(traj, policy)
            family = POLICY_FAMILY.get(policy, "S")
            try:
                compile_loop(traj, Presentation(family, traj.n), policy)
                raised = False
            except PolicyViolationError:
                raised = True
            if raised == report.ok:
                problems.append((name, policy, "validate/compile disagree"))
            if (name, policy) in expect and raised != expect[(name, policy)]:
                problems.append((name, policy, "unexpected verdict"))
    acceptance(
        8,
        loops >= 1000 and not problems,
        f"{loops} fuzzed loops (N<=4, interval and ring): concatenation, reversal, "
        "permutation and winding laws; hexagon pure and nontrivial in T3, trivial in S3; "
        f"Delta3/Delta22 policy verdicts match validate; problems: {problems[:3] or 'none'}",
    )


# -- 9 ------------------------------------------------------------------------


def test_criterion_9_goldens(acceptance):
    p = Presentation("S", 4, "ring")
    zeta = ring.distinguished(p, "zeta")
    elements = {
        "sigma_4": ring.distinguished(p, "sigma_N"),
        "t1": ring.translation(p, 1),
        "t1_inv": ring.translation(p, 1, -1),
        "sigma_0": ring.distinguished(p, "sigma_0"),
        "zeta": zeta,
        "zeta_inv": zeta.inverse(),
    }
    problems = []
    for name, el in elements.items():
        golden = (GOLDEN / f"{name}.svg").read_bytes()
        svg = render_svg(el)
        if svg.encode("utf-8") != golden:
            problems.append((name, "bytes differ"))
        if not ring.wreath_equal(ring.from_word(read_svg(svg)), el):
            problems.append((name, "round trip"))
    acceptance(
        9,
        not problems,
        f"{len(elements)} ring diagrams for N=4 byte-identical to goldens and read back "
        f"to equal elements; problems: {problems or 'none'}",
    )

