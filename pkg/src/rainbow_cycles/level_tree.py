"""Level-tree search for short even rainbow cycles.

A tree is grown from a root level by level.  The colors are split at
random into k classes, and the edges between level i and level i+1 all
use class i (0-based), so every root path is rainbow by construction.  If
a fresh vertex w is reached from two level-i vertices whose root paths use
disjoint color sets, the two paths and the two edges into w close a
rainbow cycle of length 2(i+1).

The randomized subroutines are Las Vegas: ``split_colors`` and
``shrink_subset`` verify their output by recounting and retry, and never
return an unverified result.  The asymptotic constants behind the method
are not executable at small n, so ``grow_tree`` is a sound but incomplete
heuristic: a returned certificate is always a verified rainbow cycle, but
``None`` says nothing about the graph.
"""

from __future__ import annotations

import hashlib
import logging
import math
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .colored_graph import (
    ColoredGraph,
    RainbowCycleCertificate,
    bipartite_half,
    peel_min_degree,
    verify_certificate,
)

log = logging.getLogger(__name__)


class RetriesExhausted(RuntimeError):
    """A Las Vegas routine used all its retries.  ``violations`` holds the
    shortfalls of the best attempt."""

    def __init__(self, message: str, violations: list, attempts: int):
        super().__init__(message)
        self.violations = violations
        self.attempts = attempts


class SubsetTooLarge(ValueError):
    def __init__(self, index: int, size: int, limit: float):
        super().__init__(f"subset {index} has {size} elements, above beta*|X| = {limit:g}")
        self.index = index


class ClassOutOfRange(ValueError):
    pass


class EmptyAfterPeeling(ValueError):
    """Nothing survives peeling; fall back to exact detection."""


class PreconditionViolated(ValueError):
    pass


def theorem_k(epsilon: float) -> int:
    """Cycle half-length bound ceil((ln 4 - ln eps) / ln(1 + eps))."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    ratio = (math.log(4) - math.log(epsilon)) / math.log1p(epsilon)
    # guard exact integers (eps = 1 gives 2.0) against rounding upward
    return math.ceil(ratio - 1e-12)


def hoeffding_bounds(mu: float, s: float | None = None, t: float | None = None) -> tuple[float | None, float | None]:
    """Tail bounds for a sum of independent [0, 1] variables with mean mu:
    P(S <= s) <= exp(-s/4) for s <= mu/2, and P(S >= t) <= exp(-3t/16)
    for t >= 2 mu.  An omitted argument gives None in its slot."""
    lower = upper = None
    if s is not None:
        if s > mu / 2:
            raise PreconditionViolated(f"lower tail needs s <= mu/2, got s={s}, mu={mu}")
        lower = math.exp(-s / 4)
    if t is not None:
        if t < 2 * mu:
            raise PreconditionViolated(f"upper tail needs t >= 2*mu, got t={t}, mu={mu}")
        upper = math.exp(-3 * t / 16)
    return lower, upper


def default_edge_budget(n: int, epsilon: float, k: int, constant: float | None = None) -> int:
    """ceil(C / (2k) * n**eps), with C = 2k unless given (so ceil(n**eps))."""
    c = 2 * k if constant is None else constant
    return max(1, math.ceil(c / (2 * k) * max(n, 1) ** epsilon))


def derive_seed(seed, run: int) -> int:
    """Independent per-run seed from (seed, run index)."""
    digest = hashlib.sha256(f"{seed}:{run}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class ExpansionParams:
    k: int
    epsilon: float = 0.5
    edge_budget: int | None = None
    max_retries: int = 50
    seed: int | str | None = 0
    random_selection: bool = False
    peel_threshold: int | None = None
    roots: int = 1
    check_invariants: bool = True

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if not 0 < self.epsilon <= 0.5:
            raise ValueError(f"epsilon must lie in (0, 1/2], got {self.epsilon}")
        if self.edge_budget is not None and self.edge_budget < 1:
            raise ValueError("edge_budget must be at least 1")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if self.roots < 1:
            raise ValueError("roots must be at least 1")

    @classmethod
    def from_epsilon(cls, epsilon: float, **kwargs) -> "ExpansionParams":
        return cls(k=theorem_k(epsilon), epsilon=epsilon, **kwargs)

    def budget_for(self, n: int) -> int:
        if self.edge_budget is not None:
            return self.edge_budget
        return default_edge_budget(n, self.epsilon, self.k)


@dataclass(frozen=True)
class ColorPartition:
    """Class index (0..k-1) of every color."""

    class_of: dict[int, int]
    k: int

    def classes(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.k)]
        for c, i in self.class_of.items():
            out[i].add(c)
        return out


def partition_violations(g: ColoredGraph, partition: ColorPartition, need: int) -> list[tuple[int, int, int]]:
    """(vertex, class, count) for each active vertex with fewer than
    ``need`` incident edges in some class."""
    out = []
    for v in g.active_vertices():
        counts = [0] * partition.k
        for _, c in g.adj[v]:
            counts[partition.class_of[c]] += 1
        out.extend((v, i, cnt) for i, cnt in enumerate(counts) if cnt < need)
    return out


def split_colors(g: ColoredGraph, k: int, params: ExpansionParams, rng: random.Random | None = None) -> ColorPartition:
    """Random k-partition of the colors in which every active vertex has at
    least ceil(delta / 2k) incident edges of each class."""
    rng = rng or random.Random(params.seed)
    need = math.ceil(g.min_degree() / (2 * k))
    colors = sorted(g.colors_used())
    best = None
    for attempt in range(1, params.max_retries + 1):
        partition = ColorPartition({c: rng.randrange(k) for c in colors}, k)
        bad = partition_violations(g, partition, need)
        if not bad:
            return partition
        if best is None or len(bad) < len(best):
            best = bad
    raise RetriesExhausted(
        f"no valid {k}-way color split in {params.max_retries} attempts (need {need} per class)",
        best or [],
        params.max_retries,
    )


def shrink_subset(
    X: Iterable[int],
    subsets: Sequence[Iterable[int]],
    beta: float,
    gamma: float,
    params: ExpansionParams | None = None,
    *,
    rng: random.Random | None = None,
    max_retries: int | None = None,
) -> set[int]:
    """Random Y within X, gamma|X|/2 <= |Y| <= 2 gamma|X|, meeting each
    subset in at most 4 beta |Y| elements."""
    if not (0 < beta < 1 and 0 < gamma < 1):
        raise ValueError(f"beta and gamma must lie in (0, 1), got {beta}, {gamma}")
    xs = sorted(set(X))
    subs = [set(s) for s in subsets]
    limit = beta * len(xs)
    for j, s in enumerate(subs):
        if len(s) > limit:
            raise SubsetTooLarge(j, len(s), limit)
    if rng is None:
        rng = random.Random(params.seed if params else None)
    if max_retries is None:
        max_retries = params.max_retries if params else 50
    lo, hi = gamma * len(xs) / 2, 2 * gamma * len(xs)
    best = None
    for _ in range(max_retries):
        Y = {x for x in xs if rng.random() < gamma}
        bad = shrink_violations(Y, subs, beta, lo, hi)
        if not bad:
            return Y
        if best is None or len(bad) < len(best):
            best = bad
    raise RetriesExhausted(f"no valid subset in {max_retries} attempts", best or [], max_retries)


def shrink_violations(Y: set[int], subsets: Sequence[set[int]], beta: float, lo: float, hi: float) -> list:
    bad = []
    if not lo <= len(Y) <= hi:
        bad.append(("size", len(Y)))
    for j, s in enumerate(subsets):
        if len(s & Y) > 4 * beta * len(Y):
            bad.append((j, len(s & Y)))
    return bad


def alpha_of(size: int, n: int) -> float:
    """Exponent a with size = n**a."""
    if size <= 0:
        raise ValueError("level sizes are positive")
    return math.log(size) / math.log(n) if n > 1 else 0.0


def x_bound(i: int, alpha: float, n: int, epsilon: float) -> float:
    """Cap (8 log2 n)^i * n^(alpha - eps) on each color-usage set at level i."""
    return (8 * math.log2(max(n, 2))) ** i * max(n, 2) ** (alpha - epsilon)


@dataclass
class LevelState:
    """Levels L_0..L_i of the tree with parent pointers and color usage.

    ``usage[i][c]`` is the set of level-i vertices whose root path uses
    color c; ``path_colors[v]`` is the color set of v's root path.
    ``scales[i]`` is the dyadic degree scale d chosen for level i.
    """

    n: int
    levels: list[list[int]]
    parent: dict[int, tuple[int, int]]
    alphas: list[float]
    usage: list[dict[int, set[int]]]
    scales: list[int | None]
    path_colors: dict[int, frozenset[int]]

    @classmethod
    def rooted(cls, root: int, n: int) -> "LevelState":
        return cls(n, [[root]], {}, [0.0], [{}], [None], {root: frozenset()})

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def root(self) -> int:
        return self.levels[0][0]

    @property
    def dyadic_d(self) -> int | None:
        return self.scales[-1]

    def delta(self, i: int) -> float:
        """Growth exponent alpha_{i+1} - alpha_i."""
        return self.alphas[i + 1] - self.alphas[i]

    def root_path(self, v: int) -> list[int]:
        path = [v]
        while path[-1] in self.parent:
            path.append(self.parent[path[-1]][0])
        return path

    def copy(self) -> "LevelState":
        return LevelState(
            self.n,
            [list(L) for L in self.levels],
            dict(self.parent),
            list(self.alphas),
            [{c: set(s) for c, s in u.items()} for u in self.usage],
            list(self.scales),
            dict(self.path_colors),
        )


@dataclass
class LevelRecord:
    size: int
    alpha: float
    d: int | None
    discard_fraction: float
    retries: int
    selected: int = 0
    shrunk: bool = False
    x_bound_ok: bool = True
    warnings: list[str] = field(default_factory=list)


@dataclass
class NextLevel:
    state: LevelState
    record: LevelRecord


@dataclass
class Cycle:
    certificate: RainbowCycleCertificate
    record: LevelRecord


@dataclass
class Stalled:
    reason: str
    record: LevelRecord
    state: LevelState | None = None


ExpandOutcome = NextLevel | Cycle | Stalled


def _select_edges(g, partition, u, class_index, budget, rng, randomized):
    cand = [(c, w) for w, c in g.adj[u] if partition.class_of.get(c) == class_index]
    if randomized:
        rng.shuffle(cand)
    else:
        cand.sort()
    return cand[:budget]


def _closing_cycle(g, state, w, u1, u2) -> RainbowCycleCertificate:
    down = state.root_path(u1)  # u1 .. root
    up = state.root_path(u2)[:-1][::-1]  # child of root .. u2
    return RainbowCycleCertificate.from_vertices(g, [w] + down + up)


def expand_level(
    g: ColoredGraph,
    partition: ColorPartition,
    state: LevelState,
    class_index: int,
    params: ExpansionParams,
    rng: random.Random | None = None,
) -> ExpandOutcome:
    """Grow L_{i+1} from L_i along edges of class ``class_index`` (== i).

    Steps: take up to the edge budget of class edges per level-i vertex
    (lowest color first unless randomized); drop edges back into the tree;
    return a cycle if some fresh vertex has two parents with disjoint root
    colors; otherwise keep the dyadic degree bucket carrying the most
    edges, and give each of its vertices a random parent, retrying until
    every color-usage set respects the level bound.
    """
    i = state.depth
    if not 0 <= class_index < partition.k:
        raise ClassOutOfRange(f"class {class_index} outside 0..{partition.k - 1}")
    if class_index != i:
        raise ClassOutOfRange(f"level {i} must expand with class {i}, got {class_index}")
    rng = rng or random.Random(params.seed)
    n = state.n
    budget = params.budget_for(n)
    current = state.levels[i]
    tree = {v for L in state.levels for v in L}

    warnings = []
    if i >= 1:
        slack = 4 * x_bound(i, state.alphas[i], n, params.epsilon)
        worst = max((len(s) for s in state.usage[i].values()), default=0)
        if worst > slack:
            msg = f"level {i} color usage {worst} exceeds relaxed cap {slack:.3g}"
            log.warning(msg)
            warnings.append(msg)

    parents: dict[int, list[tuple[int, int]]] = {}
    n_selected = n_discarded = 0
    for u in current:
        for c, w in _select_edges(g, partition, u, class_index, budget, rng, params.random_selection):
            n_selected += 1
            if w in tree:
                n_discarded += 1
                continue
            parents.setdefault(w, []).append((u, c))
    discard_fraction = n_discarded / n_selected if n_selected else 0.0
    record = LevelRecord(
        size=0, alpha=0.0, d=None, discard_fraction=discard_fraction, retries=0,
        selected=n_selected, warnings=warnings,
    )
    if not parents:
        return Stalled("no_candidates", record)

    for w in sorted(parents):
        ps = parents[w]
        for a in range(len(ps)):
            for b in range(a + 1, len(ps)):
                u1, u2 = ps[a][0], ps[b][0]
                if state.path_colors[u1].isdisjoint(state.path_colors[u2]):
                    cert = _closing_cycle(g, state, w, u1, u2)
                    if verify_certificate(g, cert):
                        return Cycle(cert, record)
                    log.error("closing cycle through %d failed verification", w)

    weight: dict[int, int] = {}
    for w, ps in parents.items():
        j = len(ps).bit_length() - 1
        weight[j] = weight.get(j, 0) + len(ps)
    j_star = min(weight, key=lambda j: (-weight[j], j))
    d = 1 << j_star
    new_level = sorted(w for w, ps in parents.items() if len(ps).bit_length() - 1 == j_star)
    alpha = alpha_of(len(new_level), n)
    cap = x_bound(i + 1, alpha, n, params.epsilon)

    best = None
    for attempt in range(params.max_retries):
        choice = {y: rng.choice(parents[y]) for y in new_level}
        usage: dict[int, set[int]] = {}
        for y, (u, c) in choice.items():
            for col in state.path_colors[u] | {c}:
                usage.setdefault(col, set()).add(y)
        worst = max(len(s) for s in usage.values())
        if best is None or worst < best[0]:
            best = (worst, choice, usage, attempt)
        if worst <= cap:
            break
    worst, choice, usage, attempt = best

    nxt = state.copy()
    nxt.levels.append(new_level)
    nxt.alphas.append(alpha)
    nxt.scales.append(d)
    nxt.usage.append(usage)
    for y, (u, c) in choice.items():
        nxt.parent[y] = (u, c)
        nxt.path_colors[y] = state.path_colors[u] | {c}
    record.size, record.alpha, record.d, record.retries = len(new_level), alpha, d, attempt
    record.x_bound_ok = worst <= cap
    if not record.x_bound_ok:
        return Stalled("x_bound", record, nxt)
    return NextLevel(nxt, record)


def check_level_state(g: ColoredGraph, partition: ColorPartition, state: LevelState) -> list[str]:
    """Recount the tree invariants from parent pointers alone."""
    bad = []
    if len(state.levels[0]) != 1:
        bad.append("level 0 is not a single root")
    root = state.levels[0][0]
    seen: set[int] = set()
    for j, L in enumerate(state.levels):
        if seen & set(L):
            bad.append(f"level {j} overlaps an earlier level")
        seen |= set(L)
        recount: dict[int, set[int]] = {}
        for v in L:
            chain = [v]
            colors = []
            ok = True
            for depth in range(j, 0, -1):
                x = chain[-1]
                if x not in state.parent:
                    bad.append(f"vertex {v} has no parent at depth {depth}")
                    ok = False
                    break
                p, c = state.parent[x]
                if g.edge_color(x, p) != c:
                    bad.append(f"tree edge ({x}, {p}) is not a graph edge of color {c}")
                if partition.class_of.get(c) != depth - 1:
                    bad.append(f"tree edge ({x}, {p}) at depth {depth} has color outside class {depth - 1}")
                if p not in state.levels[depth - 1]:
                    bad.append(f"parent {p} of {x} is not on level {depth - 1}")
                chain.append(p)
                colors.append(c)
            if not ok:
                continue
            if chain[-1] != root:
                bad.append(f"vertex {v} does not reach the root in {j} steps")
            if len(set(colors)) != len(colors):
                bad.append(f"root path of {v} repeats a color")
            if set(colors) != set(state.path_colors.get(v, ())):
                bad.append(f"stored path colors of {v} disagree with its chain")
            for c in colors:
                recount.setdefault(c, set()).add(v)
        stored = {c: s for c, s in state.usage[j].items() if s}
        if stored != recount:
            bad.append(f"color usage sets at level {j} disagree with a recount")
        if sum(len(s) for s in stored.values()) != j * len(L):
            bad.append(f"color usage at level {j} is not a {j}-fold cover")
        if any(not s <= set(L) for s in stored.values()):
            bad.append(f"a color usage set at level {j} leaves the level")
    return bad


def x_bound_violations(state: LevelState, epsilon: float) -> list[tuple[int, int, int, float]]:
    """(level, color, size, cap) wherever a usage set exceeds its cap."""
    out = []
    for i in range(1, len(state.levels)):
        cap = x_bound(i, alpha_of(len(state.levels[i]), state.n), state.n, epsilon)
        counts: dict[int, int] = {}
        for v in state.levels[i]:
            for c in state.path_colors[v]:
                counts[c] = counts.get(c, 0) + 1
        out.extend((i, c, cnt, cap) for c, cnt in sorted(counts.items()) if cnt > cap)
    return out


@dataclass
class GrowthTrace:
    n: int = 0
    k: int = 0
    epsilon: float = 0.0
    root: int | None = None
    roots_tried: int = 0
    split_retries: int | None = None
    outcome: str = "pending"
    levels: list[LevelRecord] = field(default_factory=list)
    invariant_violations: list[str] = field(default_factory=list)
    certificate: RainbowCycleCertificate | None = None

    @property
    def built(self) -> list[LevelRecord]:
        """Records of levels actually built (a cycle or stall record has size 0)."""
        return [rec for rec in self.levels if rec.size > 0]

    @property
    def alphas(self) -> list[float]:
        return [rec.alpha for rec in self.built]

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "epsilon": self.epsilon,
            "root": self.root,
            "roots_tried": self.roots_tried,
            "split_retries": self.split_retries,
            "outcome": self.outcome,
            "levels": [
                {
                    "size": r.size,
                    "alpha": r.alpha,
                    "d": r.d,
                    "discard_fraction": r.discard_fraction,
                    "retries": r.retries,
                    "selected": r.selected,
                    "shrunk": r.shrunk,
                    "x_bound_ok": r.x_bound_ok,
                    "warnings": r.warnings,
                }
                for r in self.levels
            ],
            "invariant_violations": self.invariant_violations,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_dict()
        return out


def _maybe_shrink(state: LevelState, params: ExpansionParams, rng: random.Random, rec: LevelRecord) -> LevelState:
    """Thin a level that has grown past n^(1 - eps^2/4), when the
    sampling parameters are meaningful at this n."""
    i, n, eps = state.depth, state.n, params.epsilon
    if i < 1 or state.alphas[i] <= 1 - eps * eps / 4:
        return state
    beta = (8 * math.log2(max(n, 2))) ** i * n ** (-eps)
    gamma = 0.5 * n ** (1 - eps * eps / 4 - state.alphas[i])
    if not (0 < beta < 1 and 0 < gamma < 1):
        rec.warnings.append(f"shrink skipped at level {i}: beta={beta:.3g}, gamma={gamma:.3g}")
        return state
    try:
        Y = shrink_subset(state.levels[i], list(state.usage[i].values()), beta, gamma, params, rng=rng)
    except (RetriesExhausted, SubsetTooLarge) as exc:
        rec.warnings.append(f"shrink failed at level {i}: {exc}")
        return state
    out = state.copy()
    dropped = set(out.levels[i]) - Y
    out.levels[i] = sorted(Y)
    out.usage[i] = {c: s & Y for c, s in out.usage[i].items() if s & Y}
    out.alphas[i] = alpha_of(len(Y), n)
    for v in dropped:
        out.parent.pop(v, None)
        out.path_colors.pop(v, None)
    rec.shrunk = True
    return out


def root_order(g: ColoredGraph) -> list[int]:
    """Active vertices by degree descending, index ascending."""
    return sorted(g.active_vertices(), key=lambda v: (-g.degree(v), v))


def grow_tree(g: ColoredGraph, params: ExpansionParams) -> tuple[RainbowCycleCertificate | None, GrowthTrace]:
    """Bipartite reduction, peeling, color splitting, then up to k level
    expansions from each of ``params.roots`` roots.

    Returns the first verified cycle (even length <= 2k) or None, with a
    trace of the attempt.  Raises EmptyAfterPeeling when the graph is too
    sparse for the pipeline.
    """
    rng = random.Random(params.seed)
    k = params.k
    trace = GrowthTrace(k=k, epsilon=params.epsilon)
    half, _ = bipartite_half(g, rng.getrandbits(64))
    threshold = 2 * k if params.peel_threshold is None else params.peel_threshold
    core = peel_min_degree(half, threshold)
    if core.m == 0:
        raise EmptyAfterPeeling(f"no edges survive peeling at degree threshold {threshold}")
    n = len(core.active_vertices())
    trace.n = n
    try:
        partition = split_colors(core, k, params, rng)
    except RetriesExhausted as exc:
        trace.outcome = "split_failed"
        trace.split_retries = exc.attempts
        return None, trace
    trace.split_retries = 0

    for root in root_order(core)[: params.roots]:
        trace.roots_tried += 1
        trace.root = root
        trace.levels = [LevelRecord(size=1, alpha=0.0, d=None, discard_fraction=0.0, retries=0)]
        state = LevelState.rooted(root, n)
        for i in range(k):
            pre = LevelRecord(size=0, alpha=0.0, d=None, discard_fraction=0.0, retries=0)
            state = _maybe_shrink(state, params, rng, pre)
            if pre.shrunk:
                trace.levels[i].size = len(state.levels[i])
                trace.levels[i].alpha = state.alphas[i]
                trace.levels[i].shrunk = True
            trace.levels[i].warnings.extend(pre.warnings)
            outcome = expand_level(core, partition, state, i, params, rng)
            trace.levels.append(outcome.record)
            if isinstance(outcome, Cycle):
                cert = outcome.certificate
                if not verify_certificate(g, cert):
                    raise AssertionError(f"unverifiable certificate {cert}")
                trace.outcome = "cycle"
                trace.certificate = cert
                return cert, trace
            if isinstance(outcome, Stalled):
                trace.outcome = f"stalled:{outcome.reason}"
                if outcome.state is not None and params.check_invariants:
                    trace.invariant_violations += check_level_state(core, partition, outcome.state)
                break
            state = outcome.state
            if params.check_invariants:
                trace.invariant_violations += check_level_state(core, partition, state)
        else:
            trace.outcome = "exhausted"
    return None, trace


def grow_runs(g: ColoredGraph, params: ExpansionParams, runs: int) -> list[tuple[RainbowCycleCertificate | None, GrowthTrace]]:
    """Independent runs with seeds derived from (params.seed, run index)."""
    return [grow_tree(g, replace(params, seed=derive_seed(params.seed, r))) for r in range(runs)]


def growth_recurrence_check(trace: GrowthTrace | Sequence[float], epsilon: float) -> list[bool]:
    """Per consecutive pair, whether (1 + e/2) - a_{i+1} <= ((1 + e/2) - a_i) / (1 + e)."""
    alphas = trace.alphas if isinstance(trace, GrowthTrace) else list(trace)
    top = 1 + epsilon / 2
    return [top - b <= (top - a) / (1 + epsilon) + 1e-12 for a, b in zip(alphas, alphas[1:])]
