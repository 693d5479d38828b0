"""Oracle suites that re-check each library module against brute force."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from ..coding import (all_labelled_trees, code_space_size, count_trees_with_independent_set_degseq,
                      decode_tree_with_independent_set, encode_tree_with_independent_set,
                      independent_prefix)
from ..counting import BRUTEFORCE_MAX_K, ForestShape, forest_extension_count, forest_extension_count_bruteforce
from ..errors import ParameterError
from ..graph import GnpParams, is_induced_forest, sample_gnp
from ..moments import expected_Xk_exact, partitions, second_moment_exact
from ..oracles import ORACLE_MAX_N, enumerated_moments
from ..rational import fraction_to_str
from ..solver import BRUTEFORCE_MAX_N, max_induced_forest, max_induced_forest_bruteforce

SOLVER_PROBABILITIES = (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5))
MOMENT_PROBABILITIES = (Fraction(1, 2), Fraction(1, 3))


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail: str) -> None:
        self.failures.append(detail)


@dataclass
class VerifyReport:
    suite: str
    max_n: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            line = f"{tag} {self.suite}:{c.name} cases={c.cases}"
            if c.failures:
                line += f" failures={len(c.failures)} first={c.failures[0]}"
            out.append(line)
        return out


def verify_codec(max_n: int) -> list[Check]:
    roundtrip = Check("roundtrip")
    image = Check("code-space-size")
    degseq = Check("degree-sequence-sum")
    for n in range(2, max_n + 1):
        trees = list(all_labelled_trees(n))
        for m in range(1, n):
            codes = set()
            for tree in trees:
                if not independent_prefix(tree, m):
                    continue
                roundtrip.cases += 1
                code = encode_tree_with_independent_set(tree, m)
                if decode_tree_with_independent_set(code) != tree:
                    roundtrip.fail(f"n={n} m={m} edges={tree.edges()}")
                codes.add((code.a, code.b))
            image.cases += 1
            if len(codes) != code_space_size(n, m):
                image.fail(f"n={n} m={m} distinct={len(codes)} expected={code_space_size(n, m)}")
    for n in range(2, max_n + 1):
        for m in range(1, n):
            degseq.cases += 1
            total = sum(count_trees_with_independent_set_degseq(n, m, d) for d in degree_sequences(n))
            if total != code_space_size(n, m):
                degseq.fail(f"n={n} m={m} sum={total}")
    return [roundtrip, image, degseq]


def degree_sequences(n: int):
    """All ``d`` with ``d_i >= 1`` and ``sum(d) = 2n - 2``."""
    # stars and bars over the n - 2 surplus units
    extra = n - 2
    for bars in combinations(range(extra + n - 1), n - 1):
        prev = -1
        d = []
        for b in bars:
            d.append(b - prev)
            prev = b
        d.append(extra + n - 1 - prev)
        yield d


def verify_counting(max_n: int) -> list[Check]:
    if max_n > BRUTEFORCE_MAX_K:
        raise ParameterError(f"counting oracle limited to k <= {BRUTEFORCE_MAX_K}")
    check = Check("extension-count")
    for k in range(1, max_n + 1):
        for ell in range(1, k + 1):
            for parts in partitions(ell):
                shape = ForestShape(parts)
                for h in range(1, k - ell + shape.m + 1):
                    check.cases += 1
                    got = forest_extension_count(k, h, shape)
                    want = forest_extension_count_bruteforce(k, h, shape)
                    if got != want:
                        check.fail(f"k={k} h={h} shape={parts} got={got} want={want}")
    return [check]


def verify_moments(max_n: int) -> list[Check]:
    if max_n > ORACLE_MAX_N:
        raise ParameterError(f"moment oracle limited to n <= {ORACLE_MAX_N}")
    first = Check("first-moment")
    second = Check("second-moment")
    for n in range(1, max_n + 1):
        for p in MOMENT_PROBABILITIES:
            for k in range(1, n + 1):
                e1, e2 = enumerated_moments(n, k, p)
                first.cases += 1
                second.cases += 1
                if expected_Xk_exact(n, k, p) != e1:
                    first.fail(f"n={n} k={k} p={fraction_to_str(p)}")
                if second_moment_exact(n, k, p) != e2:
                    second.fail(f"n={n} k={k} p={fraction_to_str(p)}")
    return [first, second]


def verify_solver(max_n: int, instances: int = 200, seed: int = 0) -> list[Check]:
    if max_n > BRUTEFORCE_MAX_N:
        raise ParameterError(f"solver oracle limited to n <= {BRUTEFORCE_MAX_N}")
    rng = random.Random(seed)
    exact = Check("optimum")
    witness = Check("witness")
    for _ in range(instances):
        n = rng.randint(1, max_n)
        p = rng.choice(SOLVER_PROBABILITIES)
        g = sample_gnp(GnpParams(n, p, rng.getrandbits(64)))
        want = max_induced_forest_bruteforce(g)
        for method in ("bipartite", "direct"):
            res = max_induced_forest(g, method=method)
            exact.cases += 1
            witness.cases += 1
            label = f"n={n} p={fraction_to_str(p)} method={method}"
            if res.size != want or not res.optimal:
                exact.fail(f"{label} got={res.size} want={want}")
            if len(res.witness) != res.size or not is_induced_forest(g, res.witness):
                witness.fail(label)
    return [exact, witness]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "codec": verify_codec,
    "counting": verify_counting,
    "moments": verify_moments,
    "solver": verify_solver,
}

DEFAULT_MAX_N = {"codec": 8, "counting": 7, "moments": 6, "solver": 14}


def run_verify(suite: str, max_n: int | None = None) -> VerifyReport:
    if suite not in SUITES:
        raise ParameterError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[suite]
    if max_n < 1:
        raise ParameterError("max_n must be positive")
    return VerifyReport(suite, max_n, SUITES[suite](max_n))
