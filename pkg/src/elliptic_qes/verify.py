"""Built-in verification suite.

Ten named checks compare the operator pipeline against the independent
oracles: hand-derived reference matrices, closed-form eigenvalue families,
the oscillator limit, the counting formulas, invariant-space closure, gauge
pole cancellation, the degree-raising coefficient, two-particle decoupling,
the spectral-flow degeneracy pattern, and eigensolver invariants.  Each check
returns a CheckResult; the CLI turns failures into a nonzero exit code.

Randomized checks draw from seeded generators, one per check, so any subset
selected with ``only`` sees the same parameter tuples as a full run.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidDegree, NonCancellingPole, OperatorNotClosed
from .matrices import OperatorMatrix, build_matrix, raising_coefficient_check
from .model import (
    ALL_MASKS,
    GaugeMask,
    ModelParams,
    list_valid_masks,
)
from .operator import GaugedOperator, build_gauged_operator, gauge_polynomials
from .oracles import (
    DEGENERATE_ROOTS,
    count_symmetric_solutions,
    counting_formula,
    decoupling_check,
    degenerate_closed_forms,
    epsilon_roots,
    mask_for_unmasked_index,
    oscillator_membership,
    reference_double_mask_matrix,
    reference_empty_mask_matrix,
)
from .spectral import Spectrum, eigenvalues, spectrum_of

CHECK_NAMES: tuple[str, ...] = (
    "matrices",
    "closed-forms",
    "oscillator",
    "counting",
    "closure",
    "gauge-exponents",
    "raising",
    "decoupling",
    "figure-degeneracy",
    "eigensolver",
)

_EMPTY = GaugeMask(())


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def report_json(results: list[CheckResult]) -> dict:
    """JSON-ready summary: overall flag plus one record per check."""
    return {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }


# -- shared randomness and caching ---------------------------------------------


def _random_fraction(rng: random.Random, lo: int, hi: int, dens: tuple[int, ...]) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def _random_roots(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    """Three distinct rationals summing to zero, with small denominators."""
    while True:
        e1 = _random_fraction(rng, -3, 3, (1, 2))
        e2 = _random_fraction(rng, -3, 3, (1, 2))
        e3 = -e1 - e2
        if len({e1, e2, e3}) == 3:
            return (e1, e2, e3)


class _SectorCache:
    """Memoizes matrices and spectra keyed by full parameter content."""

    def __init__(self) -> None:
        self._matrices: dict[tuple, OperatorMatrix] = {}
        self._spectra: dict[tuple, Spectrum] = {}

    @staticmethod
    def _key(params: ModelParams, mask: GaugeMask) -> tuple:
        return (
            params.nvars,
            params.coupling_a,
            params.coupling_b,
            params.degree_m,
            params.roots,
            mask.indices,
        )

    def matrix(self, params: ModelParams, mask: GaugeMask) -> OperatorMatrix:
        key = self._key(params, mask)
        if key not in self._matrices:
            self._matrices[key] = build_matrix(build_gauged_operator(params, mask))
        return self._matrices[key]

    def spectrum(self, params: ModelParams, mask: GaugeMask) -> Spectrum:
        key = self._key(params, mask)
        if key not in self._spectra:
            self._spectra[key] = spectrum_of(self.matrix(params, mask))
        return self._spectra[key]


GridEntry = tuple[ModelParams, GaugeMask, GaugedOperator, OperatorMatrix]


def _closure_grid(rng: random.Random) -> list[GridEntry]:
    """All eight masks at N <= 3, shifted cutoff <= 3, five tuples per cell.

    The original degree is solved per mask so that every sector is valid:
    m = cutoff + n_f (1/2 - b).
    """
    grid: list[GridEntry] = []
    half = Fraction(1, 2)
    for nvars in (1, 2, 3):
        for cutoff in range(4):
            for _ in range(5):
                a = _random_fraction(rng, -2, 2, (1, 2))
                b = _random_fraction(rng, -1, 2, (1, 2, 4))
                roots = _random_roots(rng)
                for mask in ALL_MASKS:
                    m = cutoff + mask.n_f * (half - b)
                    params = ModelParams(nvars, a, b, m, roots)
                    op = build_gauged_operator(params, mask)
                    grid.append((params, mask, op, build_matrix(op)))
    return grid


# -- individual checks -----------------------------------------------------------


def _check_matrices() -> CheckResult:
    """Five random rational parameter tuples: the built 6x6 sector and the
    three 3x3 double-mask sectors (at b = 0) must equal the hand-derived
    references entry for entry."""
    rng = random.Random(101)
    compared = 0
    for _ in range(5):
        a = _random_fraction(rng, -3, 3, (1, 2, 3))
        b = _random_fraction(rng, -3, 3, (1, 2, 3))
        roots = _random_roots(rng)
        built = build_matrix(
            build_gauged_operator(ModelParams(2, a, b, 2, roots), _EMPTY)
        )
        expected = reference_empty_mask_matrix(a, b, roots)
        if built.rows != expected:
            return CheckResult(
                "matrices",
                False,
                f"6x6 mismatch at a={a}, b={b}, roots={roots}",
            )
        compared += 1
        params0 = ModelParams(2, a, 0, 2, roots)
        for i in (1, 2, 3):
            mask = mask_for_unmasked_index(i)
            built3 = build_matrix(build_gauged_operator(params0, mask))
            if built3.rows != reference_double_mask_matrix(a, roots, i):
                return CheckResult(
                    "matrices",
                    False,
                    f"3x3 mismatch for unmasked root {i} at a={a}, roots={roots}",
                )
            compared += 1
    return CheckResult(
        "matrices",
        True,
        f"{compared} matrices over 5 random rational tuples match the "
        "hand-derived references exactly",
    )


def _check_closed_forms(cache: _SectorCache) -> CheckResult:
    """At roots (2,-1,-1), b=0, N=m=2 the fifteen sector eigenvalues follow
    nine closed linear-in-a forms (three values shared between two sectors,
    two sectors identical); relative tolerance 1e-9."""
    worst = 0.0
    count = 0
    for a in (Fraction(0), Fraction(1, 2), Fraction(5)):
        params = ModelParams(2, a, 0, 2, DEGENERATE_ROOTS)
        forms = degenerate_closed_forms(a)
        for mask in list_valid_masks(params):
            exact = [float(x) for x in forms.sector_values(str(mask))]
            got = sorted(cache.spectrum(params, mask).real_values())
            for g, x in zip(got, exact):
                defect = abs(g - x) / max(1.0, abs(x))
                worst = max(worst, defect)
                count += 1
                if defect > 1e-9:
                    return CheckResult(
                        "closed-forms",
                        False,
                        f"a={a}, mask {mask}: eigenvalue {g} vs closed form {x} "
                        f"(relative defect {defect:.3e})",
                    )
    return CheckResult(
        "closed-forms",
        True,
        f"{count} eigenvalues at a in {{0, 1/2, 5}} match the closed forms "
        f"(worst relative defect {worst:.2e}, tolerance 1e-9)",
    )


def _check_oscillator() -> CheckResult:
    """At a = b = 0 every algebraic eigenvalue is an even two-oscillator
    level 3(j1^2 + j2^2) - 40, absolute tolerance 1e-8."""
    report = oscillator_membership(tol=1e-8)
    if not report.ok:
        return CheckResult("oscillator", False, report.witness or "unmatched eigenvalue")
    parities = ", ".join(f"{k}:{v}" for k, v in sorted(report.sector_parities.items()))
    return CheckResult(
        "oscillator",
        True,
        f"all {len(report.assignments)} eigenvalues are even oscillator levels "
        f"(sector parities {parities})",
    )


def _check_counting() -> CheckResult:
    """Counting formula versus actual sector dimensions: N=2, m=2 gives 15;
    exact agreement for all N <= 4 and m in {0, 1/2, ..., 4}; the N=1
    integer-m count is 4m + 1."""
    report = count_symmetric_solutions(2, 2)
    if report.total != 15 or not report.matches:
        return CheckResult(
            "counting",
            False,
            f"N=2, m=2: sector total {report.total}, formula {report.formula}",
        )
    cells = 0
    for nvars in (1, 2, 3, 4):
        m = Fraction(0)
        while m <= 4:
            r = count_symmetric_solutions(nvars, m)
            if not r.matches:
                return CheckResult(
                    "counting",
                    False,
                    f"N={nvars}, m={m}: sector total {r.total} != formula {r.formula}",
                )
            cells += 1
            m += Fraction(1, 2)
    for k in range(5):
        if counting_formula(1, k) != 4 * k + 1:
            return CheckResult(
                "counting", False, f"N=1, m={k}: formula {counting_formula(1, k)} != {4 * k + 1}"
            )
    return CheckResult(
        "counting",
        True,
        f"N=2, m=2 gives 15; formula matches sector dimensions on {cells} "
        "(N, m) cells; N=1 integer count is 4m+1",
    )


def _check_closure(grid: list[GridEntry] | None, error: Exception | None) -> CheckResult:
    """Every valid sector on the random grid builds a matrix without leaving
    the invariant space and without a surviving gauge pole."""
    if error is not None:
        return CheckResult("closure", False, f"{type(error).__name__}: {error}")
    assert grid is not None
    return CheckResult(
        "closure",
        True,
        f"{len(grid)} sectors (all masks, N <= 3, cutoff <= 3, 5 random "
        "tuples per cell) closed on their invariant spaces",
    )


def _check_gauge_exponents(force_exponent: Fraction | None) -> CheckResult:
    """Pole cancellation holds exactly for exponents 0 and 1/2 - b on every
    mask; the perturbed exponent 1/3 at b = 0 must raise NonCancellingPole on
    any mask containing a simple root, while a double root cancels any
    exponent."""
    if force_exponent is not None:
        params = ModelParams(2, 1, 0, 2, DEGENERATE_ROOTS)
        for mask in list_valid_masks(params):
            try:
                build_gauged_operator(params, mask, exponent=force_exponent)
            except NonCancellingPole as exc:
                return CheckResult(
                    "gauge-exponents",
                    False,
                    f"forced exponent {force_exponent}: {exc}",
                )
        return CheckResult(
            "gauge-exponents",
            True,
            f"forced exponent {force_exponent} cancels all poles on every valid mask",
        )

    rng = random.Random(606)
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    successes = 0
    failures = 0
    for _ in range(3):
        b = _random_fraction(rng, -1, 1, (1, 2, 4))
        roots = _random_roots(rng)
        for mask in ALL_MASKS:
            for exponent in (half - b, Fraction(0)):
                gauge_polynomials(roots, mask, exponent, b)
                successes += 1
            if not mask.indices:
                continue
            try:
                gauge_polynomials(roots, mask, third, Fraction(0))
            except NonCancellingPole:
                failures += 1
            else:
                return CheckResult(
                    "gauge-exponents",
                    False,
                    f"exponent 1/3 left no pole on mask {mask} with simple "
                    f"roots {roots}",
                )
    try:
        gauge_polynomials(
            tuple(Fraction(r) for r in DEGENERATE_ROOTS),
            GaugeMask((2, 3)),
            third,
            Fraction(0),
        )
    except NonCancellingPole as exc:
        return CheckResult(
            "gauge-exponents",
            False,
            f"double root failed to cancel exponent 1/3: {exc}",
        )
    try:
        build_gauged_operator(
            ModelParams(2, 1, 0, 2, DEGENERATE_ROOTS),
            GaugeMask((1, 2)),
            exponent=third,
        )
        return CheckResult(
            "gauge-exponents", False, "exponent 1/3 on a simple root built cleanly"
        )
    except NonCancellingPole:
        failures += 1
    return CheckResult(
        "gauge-exponents",
        True,
        f"{successes} valid exponents cancelled exactly; {failures} simple-root "
        "sectors rejected exponent 1/3; a double root cancels any exponent",
    )


def _check_raising(grid: list[GridEntry] | None, error: Exception | None) -> CheckResult:
    """The degree-raising coefficient formula holds exactly at every degree
    up to the cutoff for every sector on the random grid."""
    if error is not None:
        return CheckResult("raising", False, f"{type(error).__name__}: {error}")
    assert grid is not None
    checked = 0
    for params, mask, op, mat in grid:
        for degree in range(op.cutoff + 1):
            if not raising_coefficient_check(op, degree, mat):
                return CheckResult(
                    "raising",
                    False,
                    f"coefficient mismatch at degree {degree}, mask {mask}, "
                    f"N={params.nvars}, m={params.degree_m}, b={params.coupling_b}",
                )
            checked += 1
    return CheckResult(
        "raising",
        True,
        f"raising coefficient exact at {checked} (sector, degree) pairs",
    )


def _check_decoupling() -> CheckResult:
    """With the interaction off (a = 0) the two-particle spectrum is the
    multiset of pairwise sums of the one-particle spectrum, tolerance 1e-8."""
    worst = 0.0
    for m in (1, 2):
        for b in (Fraction(0), Fraction(1, 4)):
            report = decoupling_check(b, m, tol=1e-8)
            worst = max(worst, report.max_defect)
            if not report.ok:
                return CheckResult(
                    "decoupling",
                    False,
                    f"m={m}, b={b}: pair sums {report.pair_sums} vs two-particle "
                    f"spectrum {report.two_particle}",
                )
    return CheckResult(
        "decoupling",
        True,
        f"two-particle spectra are pairwise sums for m in {{1,2}}, b in "
        f"{{0,1/4}} (worst defect {worst:.2e}, tolerance 1e-8)",
    )


def _sorted_reals(cache: _SectorCache, params: ModelParams, mask: GaugeMask) -> list[float]:
    return sorted(cache.spectrum(params, mask).real_values())


def _min_cross_gap(xs: list[float], ys: list[float]) -> float:
    return min(abs(x - y) for x in xs for y in ys)


def _check_figure_degeneracy(cache: _SectorCache) -> CheckResult:
    """Along the root family (2, -1+eps, -1-eps) at b=0, N=m=2: at eps=0 the
    6-dimensional sector shares three eigenvalues with the sector leaving
    root 1 unmasked and the other two sectors are identical (tolerance 1e-6);
    at eps=1/2, a=5 every such coincidence is gone by more than 1e-3."""
    for a in (Fraction(0), Fraction(5)):
        params = ModelParams(2, a, 0, 2, DEGENERATE_ROOTS)
        big = _sorted_reals(cache, params, _EMPTY)
        shared = _sorted_reals(cache, params, GaugeMask((2, 3)))
        used: set[int] = set()
        for v in shared:
            best = min(
                (j for j in range(len(big)) if j not in used),
                key=lambda j: abs(big[j] - v),
            )
            if abs(big[best] - v) > 1e-6:
                return CheckResult(
                    "figure-degeneracy",
                    False,
                    f"eps=0, a={a}: value {v} has no partner in the 6x6 sector",
                )
            used.add(best)
        pair_one = _sorted_reals(cache, params, GaugeMask((1, 3)))
        pair_two = _sorted_reals(cache, params, GaugeMask((1, 2)))
        gap = max(abs(x - y) for x, y in zip(pair_one, pair_two))
        if gap > 1e-6:
            return CheckResult(
                "figure-degeneracy",
                False,
                f"eps=0, a={a}: the two root-1 masked sectors differ by {gap:.3e}",
            )

    params = ModelParams(2, 5, 0, 2, epsilon_roots(Fraction(1, 2)))
    big = _sorted_reals(cache, params, _EMPTY)
    shared = _sorted_reals(cache, params, GaugeMask((2, 3)))
    pair_one = _sorted_reals(cache, params, GaugeMask((1, 3)))
    pair_two = _sorted_reals(cache, params, GaugeMask((1, 2)))
    gap_shared = _min_cross_gap(big, shared)
    gap_pair = _min_cross_gap(pair_one, pair_two)
    if min(gap_shared, gap_pair) <= 1e-3:
        return CheckResult(
            "figure-degeneracy",
            False,
            f"eps=1/2, a=5: coincidence survives (gaps {gap_shared:.3e}, "
            f"{gap_pair:.3e})",
        )
    return CheckResult(
        "figure-degeneracy",
        True,
        "degeneracy pattern holds at eps=0 (tolerance 1e-6) and is fully "
        f"broken at eps=1/2, a=5 (smallest gaps {gap_shared:.3e}, {gap_pair:.3e})",
    )


# -- eigensolver invariants -------------------------------------------------------


def _fraction_inverse(
    rows: tuple[tuple[Fraction, ...], ...],
) -> list[list[Fraction]] | None:
    """Exact inverse by Gauss-Jordan elimination, or None if singular."""
    n = len(rows)
    aug = [
        list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _fraction_matmul(
    left: list[list[Fraction]] | tuple[tuple[Fraction, ...], ...],
    right: list[list[Fraction]] | tuple[tuple[Fraction, ...], ...],
) -> list[list[Fraction]]:
    n = len(left)
    return [
        [sum((left[i][k] * right[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _invariant_pool(cache: _SectorCache) -> list[tuple[str, OperatorMatrix, Spectrum]]:
    """Every matrix diagonalized by the spectral checks, deduplicated."""
    pool: dict[tuple, tuple[str, OperatorMatrix, Spectrum]] = {}

    def add(params: ModelParams, mask: GaugeMask, label: str) -> None:
        key = _SectorCache._key(params, mask)
        if key not in pool:
            pool[key] = (label, cache.matrix(params, mask), cache.spectrum(params, mask))

    for a in (Fraction(0), Fraction(1, 2), Fraction(5)):
        params = ModelParams(2, a, 0, 2, DEGENERATE_ROOTS)
        for mask in list_valid_masks(params):
            add(params, mask, f"degenerate a={a} mask {mask}")
    for m in (1, 2):
        for b in (Fraction(0), Fraction(1, 4)):
            add(ModelParams(1, 0, b, m, DEGENERATE_ROOTS), _EMPTY, f"1-var m={m} b={b}")
            add(ModelParams(2, 0, b, m, DEGENERATE_ROOTS), _EMPTY, f"2-var m={m} b={b}")
    for eps, a in ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(5)), (Fraction(1, 2), Fraction(5))):
        params = ModelParams(2, a, 0, 2, epsilon_roots(eps))
        for mask in list_valid_masks(params):
            add(params, mask, f"flow eps={eps} a={a} mask {mask}")
    return list(pool.values())


def _check_eigensolver(cache: _SectorCache) -> CheckResult:
    """On every matrix the spectral checks diagonalize: the eigenvalue sum
    matches the trace, the product matches the exact determinant (relative
    1e-8), complex values pair into conjugates, and five random exact
    similarity transforms leave the spectrum unchanged to 1e-8."""
    pool = _invariant_pool(cache)
    worst_det = 0.0
    for label, mat, spec in pool:
        values = spec.values
        frob = float(np.linalg.norm(np.array([[float(x) for x in row] for row in mat.rows])))
        trace_scale = max(1.0, abs(float(mat.trace())), frob)
        trace_defect = abs(sum(values) - float(mat.trace()))
        if trace_defect > 1e-9 * trace_scale:
            return CheckResult(
                "eigensolver", False, f"{label}: trace defect {trace_defect:.3e}"
            )
        det = float(mat.determinant())
        product = complex(1.0)
        for v in values:
            product *= v
        det_defect = abs(product - det) / max(1.0, abs(det))
        worst_det = max(worst_det, det_defect)
        if det_defect > 1e-8:
            return CheckResult(
                "eigensolver",
                False,
                f"{label}: eigenvalue product {product} vs determinant {det}",
            )
        unmatched = [v for v in values if abs(v.imag) > 1e-7 * (1.0 + abs(v.real))]
        while unmatched:
            v = unmatched.pop()
            partner = min(
                range(len(unmatched)),
                key=lambda i: abs(unmatched[i] - v.conjugate()),
                default=None,
            )
            if partner is None or abs(unmatched[partner] - v.conjugate()) > 1e-7 * (
                1.0 + abs(v)
            ):
                return CheckResult(
                    "eigensolver", False, f"{label}: eigenvalue {v} has no conjugate partner"
                )
            unmatched.pop(partner)

    rng = random.Random(1010)
    worst_sim = 0.0
    for label, mat, spec in [pool[i] for i in rng.sample(range(len(pool)), 5)]:
        n = mat.dim
        while True:
            s = tuple(
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(n)
            )
            s_inv = _fraction_inverse(s)
            if s_inv is not None:
                break
        transformed = _fraction_matmul(_fraction_matmul(s, mat.rows), s_inv)
        arr = np.array([[float(x) for x in row] for row in transformed], dtype=float)
        moved = eigenvalues(arr).values
        scale = max(1.0, max(abs(v) for v in spec.values))
        defect = max(abs(x - y) for x, y in zip(moved, spec.values)) / scale
        worst_sim = max(worst_sim, defect)
        if defect > 1e-8:
            return CheckResult(
                "eigensolver",
                False,
                f"{label}: similarity transform moved the spectrum by {defect:.3e}",
            )
    return CheckResult(
        "eigensolver",
        True,
        f"trace, determinant, and conjugate pairing hold on {len(pool)} matrices "
        f"(worst determinant defect {worst_det:.2e}); 5 similarity transforms "
        f"preserve spectra (worst defect {worst_sim:.2e})",
    )


# -- runner -----------------------------------------------------------------------


def run_checks(
    only: list[str] | None = None,
    force_exponent: Fraction | None = None,
) -> list[CheckResult]:
    """Run the named verification checks (all ten by default), in order.

    ``force_exponent`` overrides the gauge exponent inside the
    gauge-exponents check so a deliberately broken gauge is reported as a
    verification failure with a pole witness.
    """
    requested = list(CHECK_NAMES) if only is None else list(only)
    unknown = [name for name in requested if name not in CHECK_NAMES]
    if unknown:
        raise ValueError(
            f"unknown check name(s) {unknown}; available: {', '.join(CHECK_NAMES)}"
        )

    cache = _SectorCache()
    grid: list[GridEntry] | None = None
    grid_error: Exception | None = None
    if "closure" in requested or "raising" in requested:
        try:
            grid = _closure_grid(random.Random(505))
        except (OperatorNotClosed, NonCancellingPole, InvalidDegree, ArithmeticError) as exc:
            grid_error = exc

    results: list[CheckResult] = []
    for name in CHECK_NAMES:
        if name not in requested:
            continue
        if name == "matrices":
            results.append(_run_guarded(name, _check_matrices))
        elif name == "closed-forms":
            results.append(_run_guarded(name, lambda: _check_closed_forms(cache)))
        elif name == "oscillator":
            results.append(_run_guarded(name, _check_oscillator))
        elif name == "counting":
            results.append(_run_guarded(name, _check_counting))
        elif name == "closure":
            results.append(_run_guarded(name, lambda: _check_closure(grid, grid_error)))
        elif name == "gauge-exponents":
            results.append(
                _run_guarded(name, lambda: _check_gauge_exponents(force_exponent))
            )
        elif name == "raising":
            results.append(_run_guarded(name, lambda: _check_raising(grid, grid_error)))
        elif name == "decoupling":
            results.append(_run_guarded(name, _check_decoupling))
        elif name == "figure-degeneracy":
            results.append(_run_guarded(name, lambda: _check_figure_degeneracy(cache)))
        elif name == "eigensolver":
            results.append(_run_guarded(name, lambda: _check_eigensolver(cache)))
    return results


def _run_guarded(name: str, check) -> CheckResult:
    try:
        return check()
    except Exception as exc:  # a crashed check is a failed check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
