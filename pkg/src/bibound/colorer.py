"""Palette sizing, resampling-based coloring, and exact certificates.

The palette rule, the per-family weights, and the certificate condition all
come in exact arithmetic: rationals where the exponents allow it, otherwise
212-bit interval arithmetic whose rounding is always unfavorable to a
"pass" verdict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .bad_events import (
    BadEventWitness,
    KVertexSet,
    MonoEdge,
    MonoTuple,
    SpecialTuple,
    detect_bad_events,
    enumerate_special_tuples,
    extract_component_witness,
)
from .graphs import (
    Coloring,
    Graph,
    GraphError,
    RNG_ALGORITHM,
    SizeLimitError,
    bipartition,
    colored_cross_components,
    induced_subgraph,
)

CONSTANT_MAX_DENOMINATOR = 10**6
CERTIFICATE_MAX_VERTICES = 30
CERTIFICATE_MAX_M = 3
CERTIFICATE_MAX_EVENTS = 100_000

# Interval context for every irrational-exponent evaluation in this module.
_IV = mpmath.ctx_iv.MPIntervalContext()
_IV.prec = 212


def _iv_fraction(fr: Fraction):
    return _IV.mpf(fr.numerator) / _IV.mpf(fr.denominator)


def _integer_root(value: int, k: int) -> int | None:
    """r with r**k == value, if one exists."""
    if value < 0 or k < 1:
        return None
    if value in (0, 1) or k == 1:
        return value
    r = round(value ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == value:
            return cand
    return None


@dataclass(frozen=True)
class Weight:
    """base**exponent with a rational exponent, kept symbolic.

    exact() gives the value as a Fraction when the base is a perfect power
    matching the exponent's denominator; interval() always works and is
    outward-rounded at 212 bits.
    """

    base: int
    exponent: Fraction

    def exact(self) -> Fraction | None:
        num, den = self.exponent.numerator, self.exponent.denominator
        root = _integer_root(self.base, den)
        if root is None:
            return None
        if num >= 0:
            return Fraction(root**num)
        return Fraction(1, root**-num)

    def interval(self):
        fr = self.exact()
        if fr is not None:
            return _iv_fraction(fr)
        return _IV.exp(_iv_fraction(self.exponent) * _IV.log(_IV.mpf(self.base)))

    def __float__(self) -> float:
        iv = self.interval()
        return (float(iv.a) + float(iv.b)) / 2


@dataclass(frozen=True)
class LllParameters:
    """Exact per-family weights for a given m and max degree.

    x covers edge events, y[t] tuple events (2 <= t <= m), z[k] vertex-set
    events (3 <= k <= m+2). Defined for max degree >= 2.
    """

    m: int
    delta: int
    x: Weight
    y: dict[int, Weight]
    z: dict[int, Weight]


@dataclass(frozen=True)
class RunResult:
    coloring: Coloring
    rounds: int
    resamples: int
    mode: str
    seed: int
    success: bool
    rng: str = RNG_ALGORITHM


def normalize_constant(constant) -> Fraction:
    """Palette constant as an exact positive rational.

    Accepts int, Fraction, or strings like "4", "7/2", "3.5". Floats are
    rejected unless they are exactly representable with a small
    denominator, to avoid silently certifying against a perturbed value.
    """
    fr = Fraction(constant)
    if fr <= 0:
        raise GraphError(f"palette constant must be positive, got {constant!r}")
    if fr.denominator > CONSTANT_MAX_DENOMINATOR:
        raise GraphError(
            f"palette constant denominator {fr.denominator} exceeds "
            f"{CONSTANT_MAX_DENOMINATOR}; pass a string or Fraction"
        )
    return fr


def palette_size(m: int, delta: int, constant) -> int:
    """Smallest palette size at least constant * delta**((m+1)/m), floored
    below at delta + 1. Exact integer arithmetic throughout."""
    if m < 1:
        raise GraphError("m must be >= 1")
    if delta < 1:
        raise GraphError("max degree must be >= 1")
    c = normalize_constant(constant)
    r, q = c.numerator, c.denominator
    target = r**m * delta ** (m + 1)
    # Smallest s with (s*q)**m >= r**m * delta**(m+1).
    hi = 1
    while (hi * q) ** m < target:
        hi <<= 1
    lo = hi >> 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if (mid * q) ** m >= target:
            hi = mid
        else:
            lo = mid
    s = hi if (1 * q) ** m < target else 1
    return max(s, delta + 1)


def lll_values(m: int, delta: int) -> LllParameters:
    """Weights x = delta**-1, y_t = delta**(-(t-1)(m+1)/m), and
    z_k = delta**(-(k-2)(m+1)/m) for k up to m+2. Requires delta >= 2."""
    if m < 1:
        raise GraphError("m must be >= 1")
    if delta < 2:
        raise GraphError(f"weights are defined for max degree >= 2, got {delta}")
    ratio = Fraction(m + 1, m)
    x = Weight(delta, Fraction(-1))
    y = {t: Weight(delta, -(t - 1) * ratio) for t in range(2, m + 1)}
    z = {k: Weight(delta, -(k - 2) * ratio) for k in range(3, m + 3)}
    return LllParameters(m=m, delta=delta, x=x, y=y, z=z)


# ---------------------------------------------------------------------------
# Resampling loop.


def moser_tardos(
    graph: Graph,
    m: int,
    palette: int,
    seed: int = 0,
    max_rounds: int = 100_000,
    mode: str = "faithful",
    on_round: Callable[[int, BadEventWitness, tuple, tuple], None] | None = None,
) -> RunResult:
    """Sample a uniform coloring and repeatedly resample the first witness.

    Each round rescans deterministically (edges in lexicographic order,
    then monochromatic special tuples, then oversized-component witnesses
    by vertex set) and redraws fresh uniform colors for exactly the first
    witness's vertex set, in sorted order. Fails after max_rounds
    resampling rounds. Fully deterministic for fixed inputs.

    Graphs with max degree <= 1 are colored greedily with two colors and
    returned immediately with zero rounds.
    """
    if m < 1:
        raise GraphError("m must be >= 1")
    if palette < 2:
        raise GraphError("palette must have at least 2 colors")
    if max_rounds < 1:
        raise GraphError("max_rounds must be >= 1")
    if mode not in ("faithful", "violation_driven"):
        raise GraphError(f"unknown mode {mode!r}")

    if graph.max_degree() <= 1:
        assignment = [0] * graph.n
        for u, v in graph.edges():
            assignment[v] = 1
        return RunResult(
            coloring=Coloring(palette, tuple(assignment)),
            rounds=0,
            resamples=0,
            mode=mode,
            seed=seed,
            success=True,
        )

    tuples: list[SpecialTuple] = []
    if mode == "faithful":
        tuples = enumerate_special_tuples(graph, m)

    rng = random.Random(seed)
    assignment = [rng.randrange(palette) for _ in range(graph.n)]
    resamples = 0
    for rounds in range(max_rounds):
        witness = _first_witness(graph, assignment, m, mode, tuples)
        if witness is None:
            return RunResult(
                coloring=Coloring(palette, tuple(assignment)),
                rounds=rounds,
                resamples=resamples,
                mode=mode,
                seed=seed,
                success=True,
            )
        before = tuple(assignment) if on_round else ()
        for v in sorted(witness.vertices):
            assignment[v] = rng.randrange(palette)
        resamples += len(witness.vertices)
        if on_round:
            on_round(rounds, witness, before, tuple(assignment))
    success = _first_witness(graph, assignment, m, mode, tuples) is None
    return RunResult(
        coloring=Coloring(palette, tuple(assignment)),
        rounds=max_rounds,
        resamples=resamples,
        mode=mode,
        seed=seed,
        success=success,
    )


def _first_witness(
    graph: Graph,
    assignment: Sequence[int],
    m: int,
    mode: str,
    tuples: Sequence[SpecialTuple],
) -> BadEventWitness | None:
    """First witness in detection order, without materializing the rest.

    Equal-colored edges come first, so the later stages only ever run on
    proper colorings, where component eligibility checks are vacuous.
    """
    for u, v in graph.edges():
        if assignment[u] == assignment[v]:
            return MonoEdge(u, v)
    if mode == "faithful":
        for st in tuples:  # pre-sorted by vertex tuple
            c = assignment[st.vertices[0]]
            if all(assignment[v] == c for v in st.vertices[1:]):
                return MonoTuple(st, c)
    coloring = Coloring(max(assignment, default=0) + 1, tuple(assignment))
    comps = colored_cross_components(graph, assignment)
    best: KVertexSet | None = None
    for pair in comps:
        for vs, edge_count in comps[pair]:
            if edge_count <= m:
                continue
            w = extract_component_witness(graph, coloring, vs, m)
            assert isinstance(w, KVertexSet)
            if best is None or w.vertices < best.vertices:
                best = w
    return best


# ---------------------------------------------------------------------------
# Exact certificate.


@dataclass(frozen=True)
class EventCheck:
    family: str  # "edge", "tuple:t", or "kvertex:k"
    vertices: tuple[int, ...]
    probability: Fraction
    dep_counts: dict[str, int]
    residual: float  # lower bound of rhs - lhs; negative means failed
    ok: bool


@dataclass(frozen=True)
class CertificateReport:
    m: int
    delta: int
    palette: int
    p: Fraction
    parameters: LllParameters | None
    events: tuple[EventCheck, ...]
    family_summary: dict[str, dict]
    verdict: bool


def lll_certificate_exact(graph: Graph, m: int, palette: int) -> CertificateReport:
    """Check the full local-lemma condition over every bad event.

    Events: one per edge (probability 1/palette), one per special tuple
    (palette**-(t-1)), and one per connected vertex set A of size 3..m+2
    whose induced subgraph is bipartite, has at least m+1 edges, and has no
    special tuple inside either side (probability s(s-1)/s**|A| for the two
    proper bicolorings). Two events are dependent iff their vertex sets
    intersect. Each event must satisfy probability <= weight * product of
    (1 - weight_j) over dependent events; the comparison runs at 212-bit
    interval precision, rounded against "pass". Supported for graphs up to
    30 vertices and m <= 3.
    """
    if graph.n > CERTIFICATE_MAX_VERTICES:
        raise SizeLimitError(
            f"certificate supports n <= {CERTIFICATE_MAX_VERTICES}, got {graph.n}"
        )
    if m > CERTIFICATE_MAX_M:
        raise SizeLimitError(f"certificate supports m <= {CERTIFICATE_MAX_M}, got {m}")
    if m < 1:
        raise GraphError("m must be >= 1")
    if palette < 2:
        raise GraphError("palette must have at least 2 colors")
    p = Fraction(1, palette)
    delta = graph.max_degree()
    if graph.edge_count == 0:
        return CertificateReport(
            m=m,
            delta=delta,
            palette=palette,
            p=p,
            parameters=None,
            events=(),
            family_summary={},
            verdict=True,
        )
    if delta < 2:
        raise GraphError(
            f"weights are defined for max degree >= 2, got {delta}; "
            "nothing to certify on a matching"
        )

    params = lll_values(m, delta)
    tuples = enumerate_special_tuples(graph, m)

    # (family key, vertex tuple, probability)
    events: list[tuple[str, tuple[int, ...], Fraction]] = []
    for u, v in graph.edges():
        events.append(("edge", (u, v), p))
    for st in tuples:
        events.append((f"tuple:{st.t}", st.vertices, p ** (st.t - 1)))
    for vs in _connected_sets(graph, m + 2):
        if len(vs) < 3:
            continue
        sub, remap = induced_subgraph(graph, vs)
        if sub.edge_count < m + 1:
            continue
        sides = bipartition(sub)
        if sides is None:
            continue
        side0 = {v for v in vs if remap[v] in set(sides[0])}
        if _tuple_inside_side(tuples, vs, side0):
            continue
        k = len(vs)
        prob = Fraction(palette * (palette - 1), palette**k)
        events.append((f"kvertex:{k}", vs, prob))
    if len(events) > CERTIFICATE_MAX_EVENTS:
        raise SizeLimitError(
            f"{len(events)} events exceed the certificate cap {CERTIFICATE_MAX_EVENTS}"
        )

    weights: dict[str, Weight] = {"edge": params.x}
    for t, w in params.y.items():
        weights[f"tuple:{t}"] = w
    for k, w in params.z.items():
        weights[f"kvertex:{k}"] = w

    # Count dependencies (vertex sets intersecting) per family by
    # inclusion-exclusion over subsets of each event's vertex set.
    containment: dict[str, dict[tuple[int, ...], int]] = {}
    family_sizes: dict[str, int] = {}
    for fam, vs, _ in events:
        family_sizes[fam] = family_sizes.get(fam, 0) + 1
        table = containment.setdefault(fam, {})
        for r in range(1, len(vs) + 1):
            for sub_vs in itertools.combinations(vs, r):
                table[sub_vs] = table.get(sub_vs, 0) + 1

    one = _IV.mpf(1)
    weight_iv = {fam: w.interval() for fam, w in weights.items()}
    loss_iv = {fam: one - wiv for fam, wiv in weight_iv.items()}

    checks: list[EventCheck] = []
    verdict = True
    fam_summary: dict[str, dict] = {}
    for fam, vs, prob in events:
        deps: dict[str, int] = {}
        for other_fam, table in containment.items():
            count = 0
            for r in range(1, len(vs) + 1):
                sign = 1 if r % 2 == 1 else -1
                for sub_vs in itertools.combinations(vs, r):
                    c = table.get(sub_vs)
                    if c:
                        count += sign * c
            if other_fam == fam:
                count -= 1  # an event does not depend on itself
            if count:
                deps[other_fam] = count
        rhs = weight_iv[fam]
        for other_fam, count in deps.items():
            rhs = rhs * loss_iv[other_fam] ** count
        lhs = _iv_fraction(prob)
        ok = bool(lhs.b <= rhs.a)
        residual = float((rhs - lhs).a)
        verdict = verdict and ok
        checks.append(
            EventCheck(
                family=fam,
                vertices=vs,
                probability=prob,
                dep_counts=deps,
                residual=residual,
                ok=ok,
            )
        )
        s = fam_summary.setdefault(
            fam,
            {"events": 0, "ok": True, "worst_residual": residual, "max_probability": prob},
        )
        s["events"] += 1
        s["ok"] = s["ok"] and ok
        s["worst_residual"] = min(s["worst_residual"], residual)
        s["max_probability"] = max(s["max_probability"], prob)
    for fam, s in fam_summary.items():
        if fam.startswith("kvertex:"):
            k = int(fam.split(":")[1])
            # The coarser bound p**(k-2) the exact probability improves on.
            s["probability_bound"] = p ** (k - 2)
    return CertificateReport(
        m=m,
        delta=delta,
        palette=palette,
        p=p,
        parameters=params,
        events=tuple(checks),
        family_summary=fam_summary,
        verdict=verdict,
    )


def _connected_sets(graph: Graph, max_size: int) -> list[tuple[int, ...]]:
    """All connected vertex sets with up to max_size vertices, sorted."""
    masks = graph.adjacency_masks()
    n = graph.n
    found: set[int] = set()
    for root in range(n):
        above = ((1 << n) - 1) & ~((1 << (root + 1)) - 1)
        level = {1 << root}
        for _ in range(max_size - 1):
            grown: set[int] = set()
            for smask in level:
                nb = 0
                rest = smask
                while rest:
                    u = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    nb |= masks[u]
                nb &= above & ~smask
                while nb:
                    w = nb & -nb
                    nb &= nb - 1
                    grown.add(smask | w)
            found |= level
            level = grown
        found |= level
    out = []
    for smask in found:
        vs = []
        rest = smask
        while rest:
            vs.append((rest & -rest).bit_length() - 1)
            rest &= rest - 1
        out.append(tuple(vs))
    out.sort()
    return out


def _tuple_inside_side(
    tuples: Sequence[SpecialTuple], vs: tuple[int, ...], side0: set[int]
) -> bool:
    vset = set(vs)
    for st in tuples:
        sset = set(st.vertices)
        if sset <= vset and (sset <= side0 or not (sset & side0)):
            return True
    return False


# ---------------------------------------------------------------------------
# Displayed asymptotic inequalities.


@dataclass(frozen=True)
class InequalityReport:
    m: int
    delta: int
    palette: int
    p: Fraction
    c_prime: Fraction
    exponent: float  # midpoint of the shared exponential's argument
    edge_holds: bool
    tuple_holds: bool  # all t in 2..m (vacuous for m = 1)
    kvertex_holds: bool  # all k in 3..m+2
    residuals: dict[str, float] = field(default_factory=dict)


def asymptotic_inequality_report(
    m: int, delta: int, constant, c_prime
) -> InequalityReport:
    """Evaluate the three sufficient inequalities behind the weight choice.

    With x, y_t, z_k as in lll_values and p = 1/palette_size(m, delta, C),
    checks p < x * F, p**(t-1) < y_t * F, and p**(k-2) < z_k * F, where
    F = exp(-C' * (x*delta/(1-x) + sum_t y_t*delta**((t-1)(m+1)/m)/(1-y_t)
    + sum_k z_k*delta**((k-2)(m+1)/m)/(1-z_k))). All factors are evaluated
    verbatim at 212-bit interval precision; a bound only "holds" when it
    certainly does.
    """
    if delta < 2:
        raise GraphError(f"weights are defined for max degree >= 2, got {delta}")
    cp = Fraction(c_prime)
    if cp < 0:
        raise GraphError("C' must be >= 0")
    params = lll_values(m, delta)
    s = palette_size(m, delta, constant)
    p = Fraction(1, s)
    ratio = Fraction(m + 1, m)

    x_iv = params.x.interval()
    one = _IV.mpf(1)
    total = x_iv * _IV.mpf(delta) / (one - x_iv)
    for t, w in params.y.items():
        grow = Weight(delta, (t - 1) * ratio).interval()
        total = total + w.interval() * grow / (one - w.interval())
    for k, w in params.z.items():
        grow = Weight(delta, (k - 2) * ratio).interval()
        total = total + w.interval() * grow / (one - w.interval())
    exponent = -_iv_fraction(cp) * total
    factor = _IV.exp(exponent)

    residuals: dict[str, float] = {}

    def certainly_less(lhs, rhs) -> bool:
        return bool(lhs.b < rhs.a)

    p_iv = _iv_fraction(p)
    edge_rhs = x_iv * factor
    edge_holds = certainly_less(p_iv, edge_rhs)
    residuals["edge"] = float((edge_rhs - p_iv).a)

    tuple_holds = True
    for t, w in params.y.items():
        lhs = _iv_fraction(p ** (t - 1))
        rhs = w.interval() * factor
        tuple_holds = tuple_holds and certainly_less(lhs, rhs)
        residuals[f"tuple:{t}"] = float((rhs - lhs).a)

    kvertex_holds = True
    for k, w in params.z.items():
        lhs = _iv_fraction(p ** (k - 2))
        rhs = w.interval() * factor
        kvertex_holds = kvertex_holds and certainly_less(lhs, rhs)
        residuals[f"kvertex:{k}"] = float((rhs - lhs).a)

    return InequalityReport(
        m=m,
        delta=delta,
        palette=s,
        p=p,
        c_prime=cp,
        exponent=(float(exponent.a) + float(exponent.b)) / 2,
        edge_holds=edge_holds,
        tuple_holds=tuple_holds,
        kvertex_holds=kvertex_holds,
        residuals=residuals,
    )
