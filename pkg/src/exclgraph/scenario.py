"""Correlation experiments and the exclusivity graphs they induce.

A scenario lists tests (each with a finite outcome set) and the contexts in
which tests are jointly measurable. An event is an assignment of outcomes to
a jointly measurable set of tests; two events are exclusive when some shared
test receives different outcomes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .graph import GraphError, VertexWeightedGraph, from_edge_list, to_fraction


class ScenarioError(ValueError):
    """Malformed scenario, event, or expression."""


@dataclass(frozen=True, order=True)
class Event:
    """Outcome assignment ``((test, outcome), ...)`` sorted by test id."""

    assignment: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Mapping) -> "Event":
        if not mapping:
            raise ScenarioError("an event must assign at least one test")
        return cls(tuple(sorted((str(t), str(o)) for t, o in mapping.items())))

    @classmethod
    def parse(cls, text: str) -> "Event":
        """Parse ``"a,b|x,y"``: outcome ``a`` for test ``x``, ``b`` for ``y``."""
        try:
            outs, tests = text.split("|")
        except ValueError:
            raise ScenarioError(f"event notation needs one '|': {text!r}") from None
        outs = [s.strip() for s in outs.split(",")]
        tests = [s.strip() for s in tests.split(",")]
        if len(outs) != len(tests):
            raise ScenarioError(f"outcome/test count mismatch in {text!r}")
        if len(set(tests)) != len(tests):
            raise ScenarioError(f"repeated test in {text!r}")
        return cls.of(dict(zip(tests, outs)))

    @property
    def tests(self) -> frozenset:
        return frozenset(t for t, _ in self.assignment)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)

    def __str__(self):
        return ",".join(o for _, o in self.assignment) + "|" + ",".join(t for t, _ in self.assignment)


def events_exclusive(e1: Event, e2: Event, scenario: "Scenario | None" = None) -> bool:
    """True iff some test common to both events gets different outcomes."""
    if scenario is not None:
        scenario.check_event(e1)
        scenario.check_event(e2)
    a = dict(e1.assignment)
    return any(t in a and a[t] != o for t, o in e2.assignment)


@dataclass(frozen=True)
class Scenario:
    tests: tuple[tuple[str, tuple[str, ...]], ...]
    contexts: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        ids = [t for t, _ in self.tests]
        if len(set(ids)) != len(ids):
            raise ScenarioError("duplicate test id")
        for t, outs in self.tests:
            if len(outs) < 2:
                raise ScenarioError(f"test {t!r} needs at least two outcomes")
            if len(set(outs)) != len(outs):
                raise ScenarioError(f"test {t!r} has duplicate outcomes")
        known = set(ids)
        for ctx in self.contexts:
            if not ctx:
                raise ScenarioError("empty context")
            if len(set(ctx)) != len(ctx):
                raise ScenarioError(f"context {list(ctx)} repeats a test")
            for t in ctx:
                if t not in known:
                    raise ScenarioError(f"unknown test id {t!r} in context")

    @classmethod
    def build(cls, tests: Mapping[str, Iterable], contexts: Iterable[Iterable]) -> "Scenario":
        return cls(
            tuple((str(t), tuple(str(o) for o in outs)) for t, outs in tests.items()),
            tuple(tuple(str(t) for t in ctx) for ctx in contexts),
        )

    def outcomes(self, test: str) -> tuple[str, ...]:
        for t, outs in self.tests:
            if t == test:
                return outs
        raise ScenarioError(f"unknown test id {test!r}")

    def maximal_contexts(self) -> list[tuple[str, ...]]:
        sets = [frozenset(c) for c in self.contexts]
        out, seen = [], set()
        for c, s in zip(self.contexts, sets):
            if any(s < other for other in sets) or s in seen:
                continue
            seen.add(s)
            out.append(c)
        return out

    def check_event(self, e: Event) -> None:
        for t, o in e.assignment:
            if o not in self.outcomes(t):
                raise ScenarioError(f"outcome {o!r} is not an outcome of test {t!r}")
        if not any(e.tests <= set(c) for c in self.contexts):
            raise ScenarioError(f"event {e} is not jointly measurable in any context")


@dataclass(frozen=True)
class SExpression:
    """Positive combination ``sum_i w_i P(e_i)``; equal events are merged."""

    terms: tuple[tuple[Fraction, Event], ...]

    @classmethod
    def build(cls, terms: Iterable[tuple]) -> "SExpression":
        merged: dict[Event, Fraction] = {}
        for w, e in terms:
            w = to_fraction(w)
            if w <= 0:
                raise ScenarioError(f"term weight must be positive, got {w}")
            merged[e] = merged.get(e, Fraction(0)) + w
        if not merged:
            raise ScenarioError("expression has no terms")
        return cls(tuple((w, e) for e, w in merged.items()))

    @property
    def events(self) -> list[Event]:
        return [e for _, e in self.terms]

    @property
    def weights(self) -> list[Fraction]:
        return [w for w, _ in self.terms]

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class ExperimentGraph:
    graph: VertexWeightedGraph
    events: tuple[Event, ...]

    def index_of(self, e: Event) -> int:
        try:
            return self.events.index(e)
        except ValueError:
            raise ScenarioError(f"event {e} is not a vertex of the experiment graph") from None


def _exclusivity_edges(events) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(len(events))
        for j in range(i + 1, len(events))
        if events_exclusive(events[i], events[j])
    ]


def experiment_graph(s: Scenario) -> ExperimentGraph:
    """One vertex per outcome tuple over each maximal context."""
    events: list[Event] = []
    seen = set()
    for ctx in s.maximal_contexts():
        for outs in product(*(s.outcomes(t) for t in ctx)):
            e = Event.of(dict(zip(ctx, outs)))
            if e not in seen:
                seen.add(e)
                events.append(e)
    g = from_edge_list(len(events), _exclusivity_edges(events))
    return ExperimentGraph(g, tuple(events))


def exclusivity_subgraph(s: Scenario, expr: SExpression) -> VertexWeightedGraph:
    """Weighted exclusivity graph of an expression: one vertex per term."""
    for e in expr.events:
        s.check_event(e)
    return from_edge_list(len(expr), _exclusivity_edges(expr.events), expr.weights)


# -- built-in experiments -------------------------------------------------------


def _binary_ring_scenario(n: int) -> Scenario:
    tests = {str(i): ("0", "1") for i in range(n)}
    return Scenario.build(tests, [(str(i), str((i + 1) % n)) for i in range(n)])


def chsh_expression() -> tuple[Scenario, SExpression]:
    """Four binary tests, contexts ``(i, i+1 mod 4)``; ``a = b`` except at ``i = 2``."""
    s = _binary_ring_scenario(4)
    terms = []
    for i in range(4):
        for a in (0, 1):
            for b in (0, 1):
                if (a == b) == (i != 2):
                    terms.append((1, Event.of({str(i): str(a), str((i + 1) % 4): str(b)})))
    return s, SExpression.build(terms)


def ncycle_expression(n: int) -> tuple[Scenario, SExpression]:
    """Odd ring of ``n >= 5`` binary tests with terms ``P(0,1|i,i+1)``."""
    if not isinstance(n, int) or n < 5 or n % 2 == 0:
        raise ScenarioError(f"n-cycle expression needs odd n >= 5, got {n!r}")
    s = _binary_ring_scenario(n)
    terms = [(1, Event.of({str(i): "0", str((i + 1) % n): "1"})) for i in range(n)]
    return s, SExpression.build(terms)


def kcbs_expression() -> tuple[Scenario, SExpression]:
    return ncycle_expression(5)


# -- JSON ------------------------------------------------------------------------


def scenario_from_json(obj) -> Scenario:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        tests = obj["tests"]
        contexts = obj["contexts"]
        tmap = {}
        for t in tests:
            tid = t["id"]
            if tid in tmap:
                raise ScenarioError(f"duplicate test id {tid!r}")
            tmap[tid] = t["outcomes"]
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"scenario JSON schema violation: {exc}") from None
    if not isinstance(contexts, list) or not all(isinstance(c, list) for c in contexts):
        raise ScenarioError('"contexts" must be a list of lists of test ids')
    return Scenario.build(tmap, contexts)


def scenario_to_json(s: Scenario) -> dict:
    return {
        "tests": [{"id": t, "outcomes": list(outs)} for t, outs in s.tests],
        "contexts": [list(c) for c in s.contexts],
    }


def expression_from_json(obj) -> SExpression:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        terms = [(t["weight"], Event.of(t["event"])) for t in obj["terms"]]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ScenarioError(f"expression JSON schema violation: {exc}") from None
    try:
        return SExpression.build(terms)
    except GraphError as exc:
        raise ScenarioError(str(exc)) from None


def expression_to_json(expr: SExpression) -> dict:
    return {"terms": [{"weight": str(w), "event": e.as_dict()} for w, e in expr.terms]}
