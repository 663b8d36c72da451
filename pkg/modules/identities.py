"""
Polynomial Identity Suite
Exact identities and chain orders among path polynomials p_k and cycle
polynomials q_k, each checked over every index up to a limit
"""
import logging
from dataclasses import dataclass, field

from modules.matchpoly import OrderRelation, SignedPolynomial, compare, cycle_poly, path_poly


logger = logging.getLogger(__name__)

ZERO = SignedPolynomial()


def p(k):
    """p_k with p_{-1} = 0."""
    return ZERO if k == -1 else path_poly(k)


def q(k):
    """q_k with q_0 = 2 and q_1 = 1."""
    if k == 0:
        return SignedPolynomial((2,))
    if k == 1:
        return SignedPolynomial((1,))
    return cycle_poly(k)


def xp(power, k):
    """
    x**power * p_k for k >= -2

    p_{-2} = 1/x is absorbed into the power so everything stays polynomial.
    """
    if k == -2:
        return SignedPolynomial((1,)).shift(power - 1)
    return p(k).shift(power)


def sign(e):
    return -1 if e % 2 else 1


@dataclass
class IdentityResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, indices, ok):
        self.checked += 1
        if not ok:
            self.failures.append(indices)


# ----------------------------------------------------------------------
# Identities
# ----------------------------------------------------------------------

def check_path_recursion(limit):
    result = IdentityResult("recrelpk")
    for k in range(2, limit + 1):
        result.record((k,), p(k) == p(k - 1) + p(k - 2).shift(1))
    return result


def check_cycle_recursion(limit):
    result = IdentityResult("recrelqk")
    for k in range(3, limit + 1):
        result.record((k,), q(k) == q(k - 1) + q(k - 2).shift(1))
    return result


def check_cycle_from_paths(limit):
    result = IdentityResult("recrelck")
    for k in range(2, limit + 1):
        result.record((k,), q(k) == p(k) + p(k - 2).shift(1))
    return result


def check_cycle_product(limit):
    """q_i q_j - q_{i+j} = (-1)^i x^i q_{j-i} for 0 <= i <= j."""
    result = IdentityResult("cycle-product")
    for j in range(limit + 1):
        for i in range(j + 1):
            lhs = q(i) * q(j) - q(i + j)
            result.record((i, j), lhs == sign(i) * q(j - i).shift(i))
    return result


def check_path_split(limit):
    result = IdentityResult("pathsplt")
    for j in range(1, limit + 1):
        for i in range(1, j + 1):
            rhs = p(i) * p(j) + (p(i - 1) * p(j - 1)).shift(1)
            result.record((i, j), p(i + j) == rhs)
    return result


def check_shift_one(limit):
    """p_{i-1} p_{j+1} - p_i p_j = (-1)^{i-1} x^i p_{j-i} for 0 <= i <= j."""
    result = IdentityResult("pij1id")
    for j in range(limit + 1):
        for i in range(j + 1):
            lhs = p(i - 1) * p(j + 1) - p(i) * p(j)
            result.record((i, j), lhs == sign(i - 1) * p(j - i).shift(i))
    return result


def check_shift_two(limit):
    result = IdentityResult("pij2id")
    for j in range(2, limit + 1):
        for i in range(2, j + 1):
            lhs = p(i - 2) * p(j + 2) - p(i) * p(j)
            result.record((i, j), lhs == sign(i) * p(j - i + 1).shift(i - 1))
    return result


def check_mixed_shift(limit):
    """p_i q_j - q_{i+2} p_{j-2} = (-1)^i x^{i+1} p_{j-i-3} for 0 <= i <= j-3."""
    result = IdentityResult("pqminqp")
    for j in range(3, limit + 1):
        for i in range(j - 2):
            lhs = p(i) * q(j) - q(i + 2) * p(j - 2)
            result.record((i, j), lhs == sign(i) * p(j - i - 3).shift(i + 1))
    return result


def check_mixed_shift_upper(limit):
    """Same difference for i >= j-2, equal to (-1)^{j-1} x^{j-1} p_{i-j+1}."""
    result = IdentityResult("pqminqpex")
    for j in range(2, limit + 1):
        for i in range(j - 2, limit + 1):
            lhs = p(i) * q(j) - q(i + 2) * p(j - 2)
            result.record((i, j), lhs == sign(j - 1) * p(i - j + 1).shift(j - 1))
    return result


def check_cross_difference(limit):
    result = IdentityResult("comppqminqp")
    for j in range(2, limit + 1):
        for i in range(1, j):
            lhs = p(i) * q(j) - q(i) * p(j)
            result.record((i, j), lhs == sign(i - 1) * p(j - i - 1).shift(i))
    return result


def check_cross_shift(limit):
    result = IdentityResult("difpqone")
    for j in range(limit + 1):
        for i in range(j + 1):
            lhs = p(i - 1) * q(j + 1) - p(i) * q(j)
            result.record((i, j), lhs == sign(i - 1) * q(j - i).shift(i))
    return result


def check_splitting_identities(limit):
    """The four single-index splittings, valid from i = 5 on."""
    result = IdentityResult("splittings")
    for i in range(5, limit + 1):
        result.record(("p-q3pi-3", i), p(i) - q(3) * p(i - 3) == xp(3, i - 6))
        result.record(("p-p2qi-2", i), p(i) - p(2) * q(i - 2) == -xp(3, i - 6))
        result.record(("pi-p3qi-3", i), p(i + 1) - p(3) * q(i - 2) == xp(4, i - 7))
        if 2 * i - 3 <= limit:
            result.record(("pi-q4p", i), p(2 * i - 3) - q(4) * p(2 * i - 7) == -xp(4, 2 * i - 11))
    return result


def check_even_split_order(limit):
    """p_{2i+2j} strictly below p_{2i} q_{2j}."""
    result = IdentityResult("pandpqeven")
    for i in range(limit // 2 + 1):
        for j in range(limit // 2 + 1 - i):
            relation = compare(p(2 * i + 2 * j), p(2 * i) * q(2 * j))
            result.record((i, j), relation is OrderRelation.STRICTLY_LESS)
    return result


# ----------------------------------------------------------------------
# Chains
# ----------------------------------------------------------------------

def path_chain(n):
    """
    Ordered products p_a p_{n-a}

    Odd a ascending, then even a descending to 0; each link strictly
    increases in the coefficientwise order.
    """
    f = n // 4
    top_odd = 2 * f - 1 if n % 4 in (0, 1) else 2 * f + 1
    sizes = list(range(1, top_odd + 1, 2)) + list(range(2 * f, -1, -2))
    chain = [(f"p{a}*p{n - a}", p(a) * p(n - a)) for a in sizes]
    return chain, [OrderRelation.STRICTLY_LESS] * (len(chain) - 1)


def cycle_chain(n):
    """As path_chain with q in place of p, closed by q_{n+1}."""
    f = n // 4
    top_odd = 2 * f - 1 if n % 4 in (0, 1) else 2 * f + 1
    sizes = list(range(1, top_odd + 1, 2)) + list(range(2 * f, 1, -2))
    chain = [(f"q{a}*q{n - a}", q(a) * q(n - a)) for a in sizes]
    chain.append((f"q{n + 1}", q(n + 1)))
    return chain, [OrderRelation.STRICTLY_LESS] * (len(chain) - 1)


def path_cycle_chain(n):
    """
    Mixed products p_a q_{n-a} and q_a p_{n-a}

    Strict throughout except one equality between mirrored products, at
    a = n/4 (n = 0 mod 4) or a = n/2 (n = 2 mod 4).
    """
    f = n // 4
    chain = [(f"p1*q{n - 1}", p(1) * q(n - 1))]
    relations = []

    def link(label, poly, relation=OrderRelation.STRICTLY_LESS):
        relations.append(relation)
        chain.append((label, poly))

    top_odd = 2 * f - 1 if n % 4 in (0, 1) else 2 * f + 1
    for a in range(3, top_odd + 1, 2):
        link(f"q{a}*p{n - a}", q(a) * p(n - a))
        tie = n % 4 == 2 and a == top_odd
        link(f"p{a}*q{n - a}", p(a) * q(n - a), OrderRelation.EQUAL if tie else OrderRelation.STRICTLY_LESS)
    for a in range(2 * f, 1, -2):
        link(f"p{a}*q{n - a}", p(a) * q(n - a))
        tie = n % 4 == 0 and a == 2 * f
        link(f"q{a}*p{n - a}", q(a) * p(n - a), OrderRelation.EQUAL if tie else OrderRelation.STRICTLY_LESS)
    link(f"p0*q{n}", p(0) * q(n))
    return chain, relations


def check_chains(limit):
    result = IdentityResult("chains")
    for n in range(4, limit + 1):
        for name, builder in (("paths", path_chain), ("cycles", cycle_chain), ("mixed", path_cycle_chain)):
            chain, relations = builder(n)
            for position, expected in enumerate(relations):
                (left, f), (right, g) = chain[position], chain[position + 1]
                result.record((name, n, left, right), compare(f, g) is expected)
    return result


IDENTITY_CHECKS = {
    "recrelpk": check_path_recursion,
    "recrelqk": check_cycle_recursion,
    "recrelck": check_cycle_from_paths,
    "cycle-product": check_cycle_product,
    "pathsplt": check_path_split,
    "pij1id": check_shift_one,
    "pij2id": check_shift_two,
    "pqminqp": check_mixed_shift,
    "pqminqpex": check_mixed_shift_upper,
    "comppqminqp": check_cross_difference,
    "difpqone": check_cross_shift,
    "splittings": check_splitting_identities,
    "pandpqeven": check_even_split_order,
    "chains": check_chains,
}


def run_identity_suite(limit, names=None, chain_limit=60):
    """
    Run the named checks (all by default)

    Args:
        limit: Largest index for the identities
        names: Subset of IDENTITY_CHECKS keys
        chain_limit: Largest n for the chain orders

    Returns:
        List of IdentityResult in registry order
    """
    results = []
    for name, check in IDENTITY_CHECKS.items():
        if names is not None and name not in names:
            continue
        result = check(min(limit, chain_limit) if name == "chains" else limit)
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"{name}: {result.checked} cases, {len(result.failures)} failures")
        results.append(result)
    return results
