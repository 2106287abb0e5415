"""2x2 matrix groups mod N, Frobenius surveys, and brute-force lemma checks.

The reference group is the det-constrained subgroup of GL_2(Z/n): the
preimage of the cyclic group H_n generated by the constant-field size r
under det.  Surveys collect (trace, det) classes of Frobenius data from
good places and compare them with the exact class distribution of that
group.  Hard facts (all observed determinants lie in H_n; observed
classes form a subset) are asserted by the callers; the total-variation
distance and coverage are heuristics and only ever reported.

Matrices are (a, b, c, d) tuples packed into machine ints for BFS; the
enumeration cap (10^7 elements by default) is a hard, reported limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .curve import WeierstrassCurve
from .errors import PreconditionError, ResourceCapError
from .finitecurve import frobenius_data, two_division_galois
from .funfield import Place, multiplicative_order
from .localred import local_reduction

BFS_CAP = 10**7

Matrix = tuple[int, int, int, int]


def mat_mul(m1: Matrix, m2: Matrix, n: int) -> Matrix:
    a, b, c, d = m1
    e, f, g, h = m2
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def mat_det(m: Matrix, n: int) -> int:
    return (m[0] * m[3] - m[1] * m[2]) % n


def mat_trace(m: Matrix, n: int) -> int:
    return (m[0] + m[3]) % n


def mat_inv(m: Matrix, n: int) -> Matrix:
    det = mat_det(m, n)
    if math.gcd(det, n) != 1:
        raise PreconditionError(f"matrix {m} is not invertible mod {n}")
    di = pow(det, -1, n)
    a, b, c, d = m
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def mat_pack(m: Matrix, n: int) -> int:
    return ((m[0] * n + m[1]) * n + m[2]) * n + m[3]


def mat_unpack(packed: int, n: int) -> Matrix:
    packed, d = divmod(packed, n)
    packed, c = divmod(packed, n)
    a, b = divmod(packed, n)
    return (a, b, c, d)


IDENTITY: Matrix = (1, 0, 0, 1)


# ---------------------------------------------------------------------------
# the det-constrained group and its class distribution


def sl2_order(n: int) -> int:
    """|SL_2(Z/n)| = n^3 prod_{l | n} (1 - l^-2)."""
    out = n**3
    m = n
    ell = 2
    while ell * ell <= m:
        if m % ell == 0:
            out = out // (ell * ell) * (ell * ell - 1)
            while m % ell == 0:
                m //= ell
        ell += 1
    if m > 1:
        out = out // (m * m) * (m * m - 1)
    return out


@dataclass(frozen=True)
class GammaSpec:
    n: int
    r_mod_n: int
    h_order: int  # multiplicative order of r mod n
    sl2_size: int
    gamma_order: int  # sl2_size * h_order


def gamma_spec(r: int, n: int) -> GammaSpec:
    """Order data of the subgroup of GL_2(Z/n) with determinant in <r>."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n > 1 and math.gcd(r, n) != 1:
        raise PreconditionError(f"r = {r} is not a unit mod {n}")
    h = multiplicative_order(r, n)
    s = sl2_order(n)
    return GammaSpec(n, r % n if n > 1 else 0, h, s, s * h)


def h_subgroup(r: int, ell: int) -> set[int]:
    """The cyclic subgroup of (Z/ell)^* generated by r."""
    out, cur = set(), r % ell
    while cur not in out:
        out.add(cur)
        cur = (cur * r) % ell
    return out


@dataclass(frozen=True)
class CharpolyDistribution:
    ell: int
    freq: dict[tuple[int, int], Fraction]  # (trace, det) -> exact frequency

    def support(self) -> set[tuple[int, int]]:
        return set(self.freq)

    def total(self) -> Fraction:
        return sum(self.freq.values(), Fraction(0))


def gamma_charpoly_distribution(r: int, ell: int) -> CharpolyDistribution:
    """Exact (trace, det) frequencies over the det-constrained group mod ell."""
    if ell > 13:
        raise PreconditionError("ell > 13 rejected (full enumeration only)")
    if math.gcd(r, ell) != 1:
        raise PreconditionError(f"r = {r} is not a unit mod {ell}")
    H = h_subgroup(r, ell)
    counts: dict[tuple[int, int], int] = {}
    total = 0
    for a in range(ell):
        for b in range(ell):
            for c in range(ell):
                for d in range(ell):
                    det = (a * d - b * c) % ell
                    if det in H:
                        key = ((a + d) % ell, det)
                        counts[key] = counts.get(key, 0) + 1
                        total += 1
    assert total == gamma_spec(r, ell).gamma_order
    return CharpolyDistribution(
        ell, {k: Fraction(v, total) for k, v in counts.items()}
    )


def count_det_in_subgroup(r: int, n: int) -> int:
    """Brute-force |{m in GL_2(Z/n) : det(m) in <r>}| (cross-check)."""
    H = set()
    cur = r % n
    while cur not in H:
        H.add(cur)
        cur = (cur * r) % n
    total = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c) % n in H:
                        total += 1
    return total


# ---------------------------------------------------------------------------
# Frobenius surveys


@dataclass
class SurveyReport:
    curve: str
    ell: int
    dmax: int
    n_places: int
    det_in_h_count: int
    all_det_in_h: bool
    observed: dict[tuple[int, int], int]  # raw counts over all places
    empirical: dict[tuple[int, int], Fraction]  # degree-balanced weights
    expected: CharpolyDistribution
    coverage_full: bool
    missing_classes: list[tuple[int, int]]
    subset_of_gamma: bool
    tv_distance: Fraction
    tv_threshold: Fraction = field(default=Fraction(15, 100))
    min_samples: int = 200
    thresholds_met: bool = False

    def __post_init__(self):
        self.thresholds_met = (
            self.n_places >= self.min_samples and self.tv_distance <= self.tv_threshold
        )


def good_places(E: WeierstrassCurve, dmax: int) -> list[Place]:
    """All places of degree <= dmax (including infinity) where E is good."""
    ctx = E.ctx
    places = [Place.infinity()]
    for d in range(1, dmax + 1):
        places.extend(ctx.places_of_degree(d))
    return [pl for pl in places if local_reduction(E, pl).kodaira == "I0"]


def _collect_classes(E: WeierstrassCurve, ell: int, dmax: int):
    by_degree: dict[int, dict[tuple[int, int], int]] = {}
    H = h_subgroup(E.ctx.q, ell)
    det_hits = 0
    places = good_places(E, dmax)
    for pl in places:
        data = frobenius_data(E, pl)
        key = (data.trace % ell, data.norm % ell)
        row = by_degree.setdefault(pl.degree, {})
        row[key] = row.get(key, 0) + 1
        if data.norm % ell in H:
            det_hits += 1
    return by_degree, det_hits, len(places)


def _flatten(by_degree: dict) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for row in by_degree.values():
        for k, c in row.items():
            out[k] = out.get(k, 0) + c
    return out


def balanced_empirical(by_degree: dict) -> dict[tuple[int, int], Fraction]:
    """Empirical distribution giving each place degree equal total mass.

    The determinant class is constant on the places of a fixed degree
    (it is the constant-field size to that degree), so raw counts only
    measure how many irreducible polynomials each degree has.  Balancing
    the degrees makes the comparison with the full class distribution
    meaningful at a finite degree cut-off.
    """
    degrees = [d for d, row in sorted(by_degree.items()) if row]
    out: dict[tuple[int, int], Fraction] = {}
    for d in degrees:
        row = by_degree[d]
        total = sum(row.values())
        for k, c in row.items():
            out[k] = out.get(k, Fraction(0)) + Fraction(c, total * len(degrees))
    return out


def tv_distance(
    empirical: dict[tuple[int, int], Fraction], expected: CharpolyDistribution
) -> Fraction:
    """Half the L1 distance between two exact distributions."""
    keys = set(empirical) | expected.support()
    acc = Fraction(0)
    for k in keys:
        acc += abs(empirical.get(k, Fraction(0)) - expected.freq.get(k, Fraction(0)))
    return acc / 2


def frobenius_survey(E: WeierstrassCurve, ell: int, dmax: int) -> SurveyReport:
    """Frobenius (trace, det) statistics over good places of degree <= dmax.

    Hard guarantees checked here: every observed det lies in H_ell and the
    observed classes form a subset of the reference support.  Coverage and
    total-variation distance (of the degree-balanced empirical
    distribution) are heuristics: reported, never asserted.
    """
    ctx = E.ctx
    if ell == ctx.p:
        raise PreconditionError("ell must differ from the characteristic")
    if dmax > 4:
        raise PreconditionError("dmax above 4 rejected (naive counting regime)")
    if E.is_isotrivial():
        raise PreconditionError(
            "isotrivial curve: use isotriviality_contrast instead"
        )
    by_degree, det_hits, n_places = _collect_classes(E, ell, dmax)
    observed = _flatten(by_degree)
    empirical = balanced_empirical(by_degree)
    expected = gamma_charpoly_distribution(ctx.q, ell)
    missing = sorted(expected.support() - set(observed))
    return SurveyReport(
        curve=str(E),
        ell=ell,
        dmax=dmax,
        n_places=n_places,
        det_in_h_count=det_hits,
        all_det_in_h=det_hits == n_places,
        observed=observed,
        empirical=empirical,
        expected=expected,
        coverage_full=not missing,
        missing_classes=missing,
        subset_of_gamma=set(observed) <= expected.support(),
        tv_distance=tv_distance(empirical, expected),
    )


@dataclass
class IsotrivialReport:
    curve: str
    ell: int
    dmax: int
    n_places: int
    two_division_tag: str
    tag_abelian: bool
    all_det_in_h: bool
    observed: dict[tuple[int, int], int]
    observed_classes: int
    gamma_classes: int
    proper_subset: bool


def isotriviality_contrast(E: WeierstrassCurve, ell: int, dmax: int) -> IsotrivialReport:
    """Symptoms of a non-open image for constant-j curves: an abelian
    2-division tag and a degenerate (trace, det) class support."""
    ctx = E.ctx
    if not E.is_isotrivial():
        raise PreconditionError("curve is not isotrivial")
    if ell == ctx.p:
        raise PreconditionError("ell must differ from the characteristic")
    by_degree, det_hits, n_places = _collect_classes(E, ell, dmax)
    observed = _flatten(by_degree)
    expected = gamma_charpoly_distribution(ctx.q, ell)
    tag = two_division_galois(E)
    return IsotrivialReport(
        curve=str(E),
        ell=ell,
        dmax=dmax,
        n_places=n_places,
        two_division_tag=tag,
        tag_abelian=tag in ("trivial", "C2", "C3"),
        all_det_in_h=det_hits == n_places,
        observed=observed,
        observed_classes=len(observed),
        gamma_classes=len(expected.support()),
        proper_subset=set(observed) < expected.support(),
    )


# ---------------------------------------------------------------------------
# subgroup BFS and the group-theoretic lemma checks


@dataclass
class Subgroup:
    modulus: int
    order: int
    _elements: set[int]

    def contains(self, m: Matrix) -> bool:
        return mat_pack(tuple(x % self.modulus for x in m), self.modulus) in self._elements

    def elements(self):
        return (mat_unpack(p, self.modulus) for p in sorted(self._elements))


def bfs_subgroup(generators: list[Matrix], n: int, cap: int = BFS_CAP) -> Subgroup:
    """Closure of the generators (and inverses) under multiplication."""
    gens = []
    for g in generators:
        g = tuple(x % n for x in g)
        gens.append(g)
        gens.append(mat_inv(g, n))
    seen = {mat_pack(IDENTITY, n)}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g, n)
                key = mat_pack(prod, n)
                if key not in seen:
                    if len(seen) >= cap:
                        raise ResourceCapError(
                            f"subgroup BFS exceeded the cap of {cap} elements"
                        )
                    seen.add(key)
                    nxt.append(prod)
        frontier = nxt
    return Subgroup(n, len(seen), seen)


def sl2_kernel_elements(ell: int, m_exp: int, n_exp: int, cap: int = BFS_CAP) -> list[Matrix]:
    """ker(SL_2(Z/ell^m) -> SL_2(Z/ell^n)): matrices 1 + ell^n A with det 1.

    The kernel has ell^(3(m-n)) elements; enumeration walks ell^(4(m-n))
    candidates, so the cap is checked against both up front.
    """
    if not 0 < n_exp <= m_exp:
        raise PreconditionError("need 0 < n <= m")
    N = ell**m_exp
    span = ell ** (m_exp - n_exp)
    if span**4 > 16 * cap or span**3 > cap:
        raise ResourceCapError(
            f"kernel enumeration would walk {span ** 4} candidates (cap {cap})"
        )
    step = ell**n_exp
    out = []
    for a in range(span):
        for b in range(span):
            for c in range(span):
                for d in range(span):
                    mat = (
                        (1 + step * a) % N,
                        (step * b) % N,
                        (step * c) % N,
                        (1 + step * d) % N,
                    )
                    if mat_det(mat, N) == 1:
                        out.append(mat)
    assert len(out) == span**3
    return out


def generating_set(elements: list[Matrix], n: int, cap: int = BFS_CAP) -> list[Matrix]:
    """A small generating set of a subgroup given by its element list."""
    target = {mat_pack(m, n) for m in elements}
    gens: list[Matrix] = []
    closure = {mat_pack(IDENTITY, n)}
    for m in elements:
        if mat_pack(m, n) in closure:
            continue
        gens.append(m)
        closure = bfs_subgroup(gens, n, cap)._elements
        if closure == target:
            break
    assert closure == target, "element list was not closed under the group law"
    return gens


def check_commutator_lemma(
    ell: int, n: int, modulus_exp: int | None = None, cap: int = BFS_CAP
) -> bool:
    """Inside SL_2(Z/ell^(2n+3)): the group generated by the pairwise
    commutators of a generating set of the level-n congruence kernel
    contains the whole level-(2n+2) kernel.

    One-sided by construction: the commutators generate a subgroup of the
    commutator subgroup, so True is a proof and False only inconclusive.
    """
    if modulus_exp is None:
        modulus_exp = 2 * n + 3
    if modulus_exp <= 2 * n + 2:
        return True  # the level-(2n+2) kernel is trivial at this modulus
    N = ell**modulus_exp
    s_n = sl2_kernel_elements(ell, modulus_exp, n, cap)
    gens = generating_set(s_n, N, cap)
    commutators = []
    for g in gens:
        gi = mat_inv(g, N)
        for h in gens:
            if g == h:
                continue
            comm = mat_mul(mat_mul(g, h, N), mat_mul(gi, mat_inv(h, N), N), N)
            commutators.append(comm)
    if not commutators:
        commutators = [IDENTITY]
    group = bfs_subgroup(commutators, N, cap)
    deep = sl2_kernel_elements(ell, modulus_exp, 2 * n + 2, cap)
    return all(group.contains(m) for m in deep)


def check_unipotent_lemma(ell: int, m_exp: int, cap: int = BFS_CAP) -> bool:
    """The two unipotent families (1 ell; 0 1), (1 0; ell 1) mod ell^m
    generate a group containing ker(SL_2(Z/ell^m) -> SL_2(Z/ell^2))."""
    if m_exp < 2:
        raise PreconditionError("need m >= 2")
    if m_exp == 2:
        return True  # trivial kernel
    N = ell**m_exp
    group = bfs_subgroup([(1, ell, 0, 1), (1, 0, ell, 1)], N, cap)
    kernel = sl2_kernel_elements(ell, m_exp, 2, cap)
    return all(group.contains(m) for m in kernel)


# ---------------------------------------------------------------------------
# PSL_2 simplicity


def _sl2_elements(ell: int) -> list[Matrix]:
    return [
        (a, b, c, d)
        for a in range(ell)
        for b in range(ell)
        for c in range(ell)
        for d in range(ell)
        if (a * d - b * c) % ell == 1
    ]


def psl2_simplicity(ell: int, cap: int = BFS_CAP) -> bool:
    """True iff PSL_2(F_ell) has no nontrivial proper normal subgroup,
    decided by normal closures of class representatives (brute force)."""
    if ell > 13:
        raise PreconditionError("ell > 13 rejected (full enumeration only)")
    sl2 = _sl2_elements(ell)

    def canon(m: Matrix) -> Matrix:
        neg = tuple((-x) % ell for x in m)
        return min(m, neg)

    elements = sorted({canon(m) for m in sl2})
    order = len(elements)
    # one representative per conjugacy class is enough for normal closures
    reps: list[Matrix] = []
    seen: set[Matrix] = set()
    for g in elements:
        if g in seen:
            continue
        orbit = {canon(mat_mul(mat_mul(x, g, ell), mat_inv(x, ell), ell)) for x in sl2}
        seen |= orbit
        reps.append(g)
    identity = canon(IDENTITY)
    for g in reps:
        if g == identity:
            continue
        conjugates = [
            canon(mat_mul(mat_mul(x, g, ell), mat_inv(x, ell), ell)) for x in sl2
        ]
        closure = _psl2_closure(conjugates, ell, cap)
        if len(closure) != order:
            return False
    return True


def _psl2_closure(gens: list[Matrix], ell: int, cap: int) -> set[Matrix]:
    def canon(m: Matrix) -> Matrix:
        neg = tuple((-x) % ell for x in m)
        return min(m, neg)

    gens = sorted({canon(g) for g in gens} | {canon(mat_inv(g, ell)) for g in gens})
    identity = canon(IDENTITY)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = canon(mat_mul(m, g, ell))
                if prod not in seen:
                    if len(seen) >= cap:
                        raise ResourceCapError("PSL2 closure exceeded cap")
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return seen
