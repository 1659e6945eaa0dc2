"""Budgeted exploration of derivative automata, acceptance, bounded languages and export"""

from __future__ import annotations

import json
import logging
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Optional,
    Set,
    Tuple,
    Union,
)

import graphviz
import networkx as nx

from tracederiv.classical import antimirov_step, brzozowski_step
from tracederiv.errormanager import EngineError, UnknownLetterError
from tracederiv.normalizer import TheoryTier, normalize
from tracederiv.oracle import (
    DEFAULT_CAP,
    DEFAULT_ORACLE_LENGTH,
    check_cap,
    closure_language,
)
from tracederiv.refined import StateList, list_step
from tracederiv.reordering import antimirov_reorder_step, brz_reorder_step
from tracederiv.syntax import (
    IndependenceAlphabet,
    Regexp,
    is_empty,
    nullable,
    render_regexp,
    render_word,
)
from tracederiv.typing import Letter, Word

log = logging.getLogger(__name__)

State = Union[Regexp, StateList, FrozenSet[Word]]

KIND_NAMES = (
    "classical-brzozowski",
    "classical-antimirov",
    "reorder-brzozowski",
    "reorder-antimirov",
    "refined-unbounded",
    "refined-truncated",
    "closure-oracle",
)

_TRUNCATED = re.compile(r"^refined-truncated\((\d+)\)$")


@dataclass(frozen=True)
class AutomatonKind:
    name: str
    bound: Optional[int] = None

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise EngineError(
                f"Unknown automaton kind {self.name!r}, expected one of {', '.join(KIND_NAMES)}"
            )
        if (self.name == "refined-truncated") != (self.bound is not None):
            raise EngineError("Only refined-truncated takes a bound, and it requires one")
        if self.bound is not None and self.bound < 1:
            raise EngineError(f"Truncation bound must be at least 1, got {self.bound}")

    @classmethod
    def parse(cls, text: str) -> AutomatonKind:
        match = _TRUNCATED.match(text.strip())
        if match:
            return cls("refined-truncated", int(match.group(1)))
        return cls(text.strip())

    @classmethod
    def refined_truncated(cls, bound: int) -> AutomatonKind:
        return cls("refined-truncated", bound)

    @property
    def deterministic(self) -> bool:
        return self.name.endswith("brzozowski") or self.semantic

    @property
    def semantic(self) -> bool:
        """States are residual word sets of the bounded closure language, not regexps"""
        return self.name == "closure-oracle"

    @property
    def refined(self) -> bool:
        return self.name.startswith("refined")

    def __str__(self):
        if self.bound is not None:
            return f"{self.name}({self.bound})"
        return self.name


CLASSICAL_BRZOZOWSKI = AutomatonKind("classical-brzozowski")
CLASSICAL_ANTIMIROV = AutomatonKind("classical-antimirov")
REORDER_BRZOZOWSKI = AutomatonKind("reorder-brzozowski")
REORDER_ANTIMIROV = AutomatonKind("reorder-antimirov")
REFINED_UNBOUNDED = AutomatonKind("refined-unbounded")
CLOSURE_ORACLE = AutomatonKind("closure-oracle")


@dataclass(frozen=True)
class ExplorationBudget:
    """Limits of one exploration.

    max_depth bounds the BFS distance from the initial state. max_term_depth
    bounds the height of a state's syntax tree: unnormalized derivatives can
    nest forever without repeating, and such states are left unexplored."""

    max_states: int = 10_000
    max_depth: Optional[int] = None
    max_term_depth: int = 100

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError(f"max_states must be at least 1, got {self.max_states}")
        if self.max_term_depth < 1:
            raise ValueError(f"max_term_depth must be at least 1, got {self.max_term_depth}")


@dataclass(frozen=True)
class StepEngine:
    """Successor function and acceptance predicate of one automaton kind

    max_len only concerns closure-oracle, whose initial state is the trace
    closure of the language up to that length."""

    kind: AutomatonKind
    alphabet: IndependenceAlphabet
    tier: Optional[TheoryTier] = None
    max_len: int = DEFAULT_ORACLE_LENGTH

    def initial(self, e: Regexp) -> State:
        if self.kind.refined:
            return StateList((e,))
        if self.kind.semantic:
            return closure_language(e, self.max_len, self.alphabet)
        return e

    def canonical(self, state: State) -> State:
        if self.tier is None or self.kind.semantic:
            return state
        if isinstance(state, StateList):
            return StateList(normalize(item, self.tier) for item in state)
        return normalize(state, self.tier)

    def successors(self, state: State, a: Letter) -> Iterable[State]:
        name = self.kind.name
        if name == "classical-brzozowski":
            return (brzozowski_step(state, a),)
        if name == "classical-antimirov":
            return antimirov_step(state, a)
        if name == "reorder-brzozowski":
            return (brz_reorder_step(state, a, self.alphabet),)
        if name == "reorder-antimirov":
            return antimirov_reorder_step(state, a, self.alphabet)
        if name == "closure-oracle":
            # the closure is trace-closed, so its letter quotient is its reordering derivative
            return (frozenset(v[1:] for v in state if v[:1] == (a,)),)
        return list_step(state, a, self.alphabet, self.kind.bound)

    def accepting(self, state: State) -> bool:
        if isinstance(state, StateList):
            return state.accepting
        if self.kind.semantic:
            return () in state
        return nullable(state)

    def viable(self, state: State, remaining: int) -> bool:
        """False when no continuation of at most `remaining` letters can accept"""
        if isinstance(state, StateList):
            return not state.dead and len(state) - 2 <= remaining
        if self.kind.semantic:
            return any(len(v) <= remaining for v in state)
        return not is_empty(state)

    def depth(self, state: State) -> int:
        if self.kind.semantic:
            return 0
        return state.depth

    def label(self, state: State) -> str:
        if isinstance(state, StateList):
            return state.render()
        if self.kind.semantic:
            words = sorted(state, key=self.alphabet.word_sort_key)
            return "{" + ", ".join(map(render_word, words)) + "}"
        return render_regexp(state)


@dataclass(frozen=True)
class Automaton:
    """Explored transition graph; states are indexed, transitions are (source, letter, target)"""

    kind: AutomatonKind
    alphabet: IndependenceAlphabet
    states: Tuple[Hashable, ...]
    labels: Tuple[str, ...]
    initial: FrozenSet[int]
    finals: FrozenSet[int]
    transitions: Tuple[Tuple[int, Letter, int], ...]
    deterministic: bool
    complete: bool
    tier: Optional[TheoryTier] = None
    expr: Optional[Regexp] = None

    @property
    def engine(self) -> Optional[StepEngine]:
        """Engine to re-derive states on demand; None for automata not built from a regexp"""
        if self.expr is None:
            return None
        return StepEngine(self.kind, self.alphabet, self.tier)

    @cached_property
    def delta(self) -> Dict[Tuple[int, Letter], Tuple[int, ...]]:
        table: Dict[Tuple[int, Letter], List[int]] = {}
        for source, letter, target in self.transitions:
            table.setdefault((source, letter), []).append(target)
        return {key: tuple(targets) for key, targets in table.items()}

    def __len__(self) -> int:
        return len(self.states)


def build_automaton(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    kind: Union[AutomatonKind, str],
    tier: Union[TheoryTier, str, None] = None,
    budget: ExplorationBudget = ExplorationBudget(),
    max_len: int = DEFAULT_ORACLE_LENGTH,
) -> Automaton:
    """Breadth-first closure of the kind's step function from the initial state.

    When the budget is hit the partial graph is returned with complete=False.
    max_len is the closure length of the closure-oracle kind."""
    if isinstance(kind, str):
        kind = AutomatonKind.parse(kind)
    tier = TheoryTier.parse(tier)
    engine = StepEngine(kind, alphabet, tier, max_len)

    representative = engine.initial(e)
    keys: List[State] = [engine.canonical(representative)]
    labels: List[str] = [engine.label(representative)]
    depths: List[int] = [0]
    index: Dict[State, int] = {keys[0]: 0}
    transitions: List[Tuple[int, Letter, int]] = []
    complete = True
    queue = deque([0])

    while queue:
        source = queue.popleft()
        if budget.max_depth is not None and depths[source] >= budget.max_depth:
            complete = False
            continue
        for a in alphabet.sigma:
            for raw in engine.successors(keys[source], a):
                key = engine.canonical(raw)
                target = index.get(key)
                if target is None:
                    too_deep = engine.depth(key) > budget.max_term_depth
                    if len(keys) >= budget.max_states or too_deep:
                        complete = False
                        continue
                    target = len(keys)
                    index[key] = target
                    keys.append(key)
                    labels.append(engine.label(raw))
                    depths.append(depths[source] + 1)
                    queue.append(target)
                transitions.append((source, a, target))

    if not complete:
        log.warning(
            f"Exploration of {kind} for {render_regexp(e)} stopped at {len(keys)} states, "
            "acceptance will re-derive states on demand"
        )
    else:
        log.debug(f"Explored {kind} automaton with {len(keys)} states")

    return Automaton(
        kind=kind,
        alphabet=alphabet,
        states=tuple(keys),
        labels=tuple(labels),
        initial=frozenset((0,)),
        finals=frozenset(i for i, key in enumerate(keys) if engine.accepting(key)),
        transitions=tuple(sorted(set(transitions), key=lambda t: (t[0], alphabet.position(t[1]), t[2]))),
        deterministic=kind.deterministic,
        complete=complete,
        tier=tier,
        expr=e,
    )


def _check_letters(word: Word, alphabet: IndependenceAlphabet) -> None:
    for position, letter in enumerate(word):
        if letter not in alphabet.sigma:
            raise UnknownLetterError(letter, position)


def accepts(m: Automaton, w: Word) -> bool:
    """Run w; incomplete automata re-derive states along w instead of using the stored graph"""
    w = tuple(w)
    _check_letters(w, m.alphabet)
    if m.complete or m.engine is None:
        current = set(m.initial)
        for a in w:
            current = {t for s in current for t in m.delta.get((s, a), ())}
            if not current:
                return False
        return bool(current & m.finals)

    engine = m.engine
    current = {m.states[i] for i in m.initial}
    for consumed, a in enumerate(w, start=1):
        remaining = len(w) - consumed
        current = {
            key
            for state in current
            for key in map(engine.canonical, engine.successors(state, a))
            if engine.viable(key, remaining)
        }
        if not current:
            return False
    return any(engine.accepting(state) for state in current)


def _walk_language(
    start: FrozenSet[Hashable],
    step: Callable[[Hashable, Letter], Iterable[Hashable]],
    accepting: Callable[[Hashable], bool],
    viable: Callable[[Hashable, int], bool],
    letters: Tuple[Letter, ...],
    max_len: int,
) -> FrozenSet[Word]:
    words: Set[Word] = set()
    cache: Dict[Tuple[Hashable, Letter], Tuple[Hashable, ...]] = {}

    def successors(state, a):
        if (state, a) not in cache:
            cache[(state, a)] = tuple(step(state, a))
        return cache[(state, a)]

    def visit(word: Word, states: FrozenSet[Hashable]):
        if any(map(accepting, states)):
            words.add(word)
        if len(word) == max_len:
            return
        remaining = max_len - len(word) - 1
        for a in letters:
            following = frozenset(
                t for s in states for t in successors(s, a) if viable(t, remaining)
            )
            if following:
                visit(word + (a,), following)

    visit((), start)
    return frozenset(words)


def bounded_language(m: Automaton, max_len: int, cap: int = DEFAULT_CAP) -> FrozenSet[Word]:
    """All accepted words up to max_len, derived on demand when the automaton has an engine"""
    check_cap(max_len, cap)
    engine = m.engine
    if engine is None:
        return _walk_language(
            frozenset(m.initial),
            lambda s, a: m.delta.get((s, a), ()),
            lambda s: s in m.finals,
            lambda s, remaining: True,
            m.alphabet.sigma,
            max_len,
        )
    return _walk_language(
        frozenset(m.states[i] for i in m.initial),
        lambda s, a: map(engine.canonical, engine.successors(s, a)),
        engine.accepting,
        engine.viable,
        m.alphabet.sigma,
        max_len,
    )


def engine_language(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    kind: Union[AutomatonKind, str],
    max_len: int,
    tier: Union[TheoryTier, str, None] = None,
    cap: int = DEFAULT_CAP,
) -> FrozenSet[Word]:
    """Bounded language of a kind without exploring its automaton first"""
    check_cap(max_len, cap)
    if isinstance(kind, str):
        kind = AutomatonKind.parse(kind)
    engine = StepEngine(kind, alphabet, TheoryTier.parse(tier), max_len)
    return _walk_language(
        frozenset((engine.canonical(engine.initial(e)),)),
        lambda s, a: map(engine.canonical, engine.successors(s, a)),
        engine.accepting,
        engine.viable,
        alphabet.sigma,
        max_len,
    )


def trim(m: Automaton) -> Automaton:
    """Remove states from which no final state is reachable, keeping the initial states"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(m.states)))
    graph.add_edges_from((s, t) for s, _, t in m.transitions)
    keep = set(m.finals) | set(m.initial)
    for final in m.finals:
        keep |= nx.ancestors(graph, final)
    order = sorted(keep)
    renumber = {old: new for new, old in enumerate(order)}
    return Automaton(
        kind=m.kind,
        alphabet=m.alphabet,
        states=tuple(m.states[i] for i in order),
        labels=tuple(m.labels[i] for i in order),
        initial=frozenset(renumber[i] for i in m.initial),
        finals=frozenset(renumber[i] for i in m.finals),
        transitions=tuple(
            (renumber[s], a, renumber[t])
            for s, a, t in m.transitions
            if s in renumber and t in renumber
        ),
        deterministic=m.deterministic,
        complete=m.complete,
        tier=m.tier,
        expr=m.expr,
    )


def determinize(m: Automaton) -> Automaton:
    """Subset construction over the stored graph; the empty subset is kept as the sink"""
    if not m.complete:
        raise EngineError("Only completely explored automata can be determinized")
    start = frozenset(m.initial)
    subsets: List[FrozenSet[int]] = [start]
    index = {start: 0}
    transitions = []
    queue = deque([0])
    while queue:
        source = queue.popleft()
        for a in m.alphabet.sigma:
            target_set = frozenset(
                t for s in subsets[source] for t in m.delta.get((s, a), ())
            )
            if target_set not in index:
                index[target_set] = len(subsets)
                subsets.append(target_set)
                queue.append(index[target_set])
            transitions.append((source, a, index[target_set]))
    return Automaton(
        kind=m.kind,
        alphabet=m.alphabet,
        states=tuple(frozenset(m.states[i] for i in subset) for subset in subsets),
        labels=tuple(
            "{" + " | ".join(m.labels[i] for i in sorted(subset)) + "}"
            for subset in subsets
        ),
        initial=frozenset((0,)),
        finals=frozenset(
            i for i, subset in enumerate(subsets) if subset & m.finals
        ),
        transitions=tuple(transitions),
        deterministic=True,
        complete=True,
        tier=m.tier,
    )


def automaton_to_dict(m: Automaton) -> dict:
    return {
        "kind": str(m.kind),
        "deterministic": m.deterministic,
        "complete": m.complete,
        "states": [
            {
                "id": i,
                "label": label,
                "initial": i in m.initial,
                "final": i in m.finals,
            }
            for i, label in enumerate(m.labels)
        ],
        "transitions": [
            {"from": s, "letter": a, "to": t} for s, a, t in m.transitions
        ],
    }


def to_digraph(m: Automaton) -> graphviz.Digraph:
    dot = graphviz.Digraph(name="automaton", graph_attr={"rankdir": "LR"})
    dot.node("__start", label="", shape="point")
    for i, label in enumerate(m.labels):
        shape = "doublecircle" if i in m.finals else "circle"
        dot.node(str(i), label=label, shape=shape)
    for i in sorted(m.initial):
        dot.edge("__start", str(i))
    for s, a, t in m.transitions:
        dot.edge(str(s), str(t), label=a)
    return dot


def export_automaton(m: Automaton, format: str = "dot") -> str:
    if format == "dot":
        return to_digraph(m).source
    if format == "json":
        return json.dumps(automaton_to_dict(m), indent=2)
    raise EngineError(f"Unknown export format {format!r}, expected dot or json")
