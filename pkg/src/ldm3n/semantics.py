"""Extension functions, singleton-property checks, and RDFS forward chaining.

The rule set is deliberately small: subPropertyOf transitivity, property
inheritance through subPropertyOf, instance typing through subClassOf, and
the domain/range typing conditions. Rules are matched on encoded ids; the
well-known vocabulary ids are resolved against the store dictionary up
front (the singleton-property IRIs are configurable, since datasets bind
them in different namespaces).

Derived triples accumulate in a delta on top of the immutable base index;
``StoreView`` exposes base, delta, or their union through the same query
surface the traversal code uses. Entailment is a single-writer batch phase:
it may extend the dictionary (e.g. minting ``rdf:type`` when the base data
never mentions it) and must not run concurrently with queries.
"""

from __future__ import annotations

import dataclasses
import enum
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Iterator
from xml.etree import ElementTree

from .dictionary import Dictionary, is_literal_id
from .errors import ResourceLimit
from .storage import Store
from .terms import IRI, Literal, Term

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"

RDF_TYPE = IRI(RDF_NS + "type")
RDF_PROPERTY = IRI(RDF_NS + "Property")
RDF_SINGLETON_PROPERTY = IRI(RDF_NS + "SingletonProperty")
RDF_SINGLETON_PROPERTY_OF = IRI(RDF_NS + "singletonPropertyOf")
RDF_XML_LITERAL = IRI(RDF_NS + "XMLLiteral")
RDFS_DOMAIN = IRI(RDFS_NS + "domain")
RDFS_RANGE = IRI(RDFS_NS + "range")
RDFS_SUB_PROPERTY_OF = IRI(RDFS_NS + "subPropertyOf")
RDFS_SUB_CLASS_OF = IRI(RDFS_NS + "subClassOf")
RDFS_LABEL = IRI(RDFS_NS + "label")


@dataclass(frozen=True)
class Vocabulary:
    """Well-known terms, with the singleton pair overridable per dataset."""

    type: Term = RDF_TYPE
    property: Term = RDF_PROPERTY
    singleton_class: Term = RDF_SINGLETON_PROPERTY
    singleton_property_of: Term = RDF_SINGLETON_PROPERTY_OF
    domain: Term = RDFS_DOMAIN
    range: Term = RDFS_RANGE
    sub_property_of: Term = RDFS_SUB_PROPERTY_OF
    sub_class_of: Term = RDFS_SUB_CLASS_OF
    label: Term = RDFS_LABEL
    xml_literal: Term = RDF_XML_LITERAL

    def with_singleton(self, property_of: str | None = None, singleton_class: str | None = None) -> Vocabulary:
        kwargs = {}
        if property_of:
            kwargs["singleton_property_of"] = IRI(property_of)
        if singleton_class:
            kwargs["singleton_class"] = IRI(singleton_class)
        return dataclasses.replace(self, **kwargs)


@dataclass
class ResolvedVocabulary:
    """Vocabulary terms resolved to ids; 0 for terms absent from the store."""

    type: int = 0
    property: int = 0
    singleton_class: int = 0
    singleton_property_of: int = 0
    domain: int = 0
    range: int = 0
    sub_property_of: int = 0
    sub_class_of: int = 0
    label: int = 0
    xml_literal: int = 0


def resolve_vocabulary(dictionary: Dictionary, vocab: Vocabulary | None = None) -> ResolvedVocabulary:
    vocab = vocab or Vocabulary()
    resolved = ResolvedVocabulary()
    for name in ResolvedVocabulary.__dataclass_fields__:
        term_id = dictionary.lookup(getattr(vocab, name))
        setattr(resolved, name, term_id if term_id is not None else 0)
    return resolved


class StoreView:
    """Base triples plus a derived delta, queryable as base/delta/union."""

    def __init__(self, store: Store, delta: Iterable[tuple[int, int, int]] = (), mode: str = "union"):
        if mode not in ("base", "delta", "union"):
            raise ValueError(f"bad view mode: {mode}")
        self.store = store
        self.mode = mode
        self._delta_pairs: dict[int, list[tuple[int, int]]] = {}
        self._delta = []
        for s, p, o in delta:
            self._delta.append((s, p, o))
            self._delta_pairs.setdefault(s, []).append((p, o))
        for pairs in self._delta_pairs.values():
            pairs.sort()

    @property
    def delta(self) -> list[tuple[int, int, int]]:
        return list(self._delta)

    def neighbors(self, node: int) -> list[tuple[int, int]]:
        base = self.store.neighbors(node) if self.mode in ("base", "union") else []
        extra = self._delta_pairs.get(node, []) if self.mode in ("delta", "union") else []
        if not extra:
            return base
        return sorted(base + extra)

    def pair_count(self, node: int) -> int:
        return len(self.neighbors(node))

    def iter_triples(self) -> Iterator[tuple[int, int, int]]:
        if self.mode in ("base", "union"):
            yield from self.store.iter_triples()
        if self.mode in ("delta", "union"):
            for s in sorted(self._delta_pairs):
                for p, o in self._delta_pairs[s]:
                    yield (s, p, o)

    def contains(self, s: int, p: int, o: int) -> bool:
        if self.mode in ("base", "union") and self.store.contains(s, p, o):
            return True
        if self.mode in ("delta", "union"):
            pairs = self._delta_pairs.get(s)
            if pairs:
                i = bisect_left(pairs, (p, o))
                return i < len(pairs) and pairs[i] == (p, o)
        return False

    def is_issued(self, term_id: int) -> bool:
        return self.store.is_issued(term_id)

    def triple_count(self) -> int:
        n = 0
        if self.mode in ("base", "union"):
            n += self.store.triple_count()
        if self.mode in ("delta", "union"):
            n += len(self._delta)
        return n

    def decode(self, term_id: int):
        return self.store.decode(term_id)

    def resolve(self, term: Term) -> int:
        return self.store.resolve(term)


@dataclass
class PropertyExtensions:
    """Extension maps: generic property pairs, singleton pairs, class members."""

    generic: dict[int, set[tuple[int, int]]] = field(default_factory=dict)
    singleton: dict[int, tuple[int, int]] = field(default_factory=dict)
    classes: dict[int, set[int]] = field(default_factory=dict)


def compute_extensions(view, vocab: ResolvedVocabulary) -> PropertyExtensions:
    """Build the extension maps from the stored triples.

    The generic map covers every id used in predicate position plus every
    id explicitly typed as a property (possibly with an empty extension);
    the class map follows the type criterion; the singleton map holds the
    unique pair of each singleton property that has exactly one occurrence.
    """
    ext = PropertyExtensions()
    for s, p, o in view.iter_triples():
        ext.generic.setdefault(p, set()).add((s, o))
        if p == vocab.type and vocab.type != 0:
            ext.classes.setdefault(o, set()).add(s)
            if o == vocab.property:
                ext.generic.setdefault(s, set())
    for ps in classify_singleton_properties(view, vocab):
        pairs = ext.generic.get(ps, set())
        if len(pairs) == 1:
            ext.singleton[ps] = next(iter(pairs))
    return ext


def classify_singleton_properties(view, vocab: ResolvedVocabulary) -> set[int]:
    """Ids declared singleton: via the singleton-of link or an explicit type."""
    singletons: set[int] = set()
    for s, p, o in view.iter_triples():
        if vocab.singleton_property_of != 0 and p == vocab.singleton_property_of:
            singletons.add(s)
        elif vocab.type != 0 and p == vocab.type and o == vocab.singleton_class and vocab.singleton_class != 0:
            singletons.add(s)
    return singletons


class ViolationKind(enum.Enum):
    MULTIPLE_USE = "multiple_use"
    UNUSED = "unused"


@dataclass(frozen=True)
class SingletonViolation:
    property_id: int
    kind: ViolationKind
    occurrences: int


def validate_singleton_uniqueness(
    view, singletons: set[int], strict: bool = False
) -> list[SingletonViolation]:
    """Report singleton ids used as predicate in more than one triple.

    A singleton with zero predicate occurrences is only a violation under
    ``strict`` (datasets may declare singletons before using them); it is
    always included in the returned list when strict, never otherwise.
    """
    counts = {ps: 0 for ps in singletons}
    for _, p, _ in view.iter_triples():
        if p in counts:
            counts[p] += 1
    violations = [
        SingletonViolation(ps, ViolationKind.MULTIPLE_USE, n)
        for ps, n in counts.items()
        if n >= 2
    ]
    if strict:
        violations.extend(
            SingletonViolation(ps, ViolationKind.UNUSED, 0)
            for ps, n in counts.items()
            if n == 0
        )
    return sorted(violations, key=lambda v: v.property_id)


class Rule(enum.Enum):
    RDFS5 = "rdfs5"  # subPropertyOf is transitive
    RDFS7 = "rdfs7"  # property inheritance along subPropertyOf
    RDFS9 = "rdfs9"  # instance typing along subClassOf
    DOMAIN = "domain"  # typed subject for declared domains
    RANGE = "range"  # typed object for declared ranges


ALL_RULES = (Rule.RDFS5, Rule.RDFS7, Rule.RDFS9, Rule.DOMAIN, Rule.RANGE)


class _RuleIndex:
    """Triples bucketed by predicate, for joining rule premises."""

    def __init__(self, triples: Iterable[tuple[int, int, int]]):
        self.by_pred: dict[int, set[tuple[int, int]]] = {}
        self.all: set[tuple[int, int, int]] = set()
        for t in triples:
            self.add(t)

    def add(self, t: tuple[int, int, int]) -> None:
        s, p, o = t
        self.all.add(t)
        self.by_pred.setdefault(p, set()).add((s, o))

    def pairs(self, p: int) -> set[tuple[int, int]]:
        return self.by_pred.get(p, set())


def _rule_matches(
    rule: Rule, full: _RuleIndex, delta: _RuleIndex | None, vocab: ResolvedVocabulary
) -> set[tuple[int, int, int]]:
    """One joint application of ``rule``; with ``delta``, only matches using
    at least one delta premise (the semi-naive restriction)."""
    # Premise sides to join: naive mode joins full x full; semi-naive mode
    # joins delta x full and full x delta, which together cover every match
    # involving at least one new triple.
    if delta is None:
        sides = [(full, full)]
    else:
        sides = [(delta, full), (full, delta)]
    out: set[tuple[int, int, int]] = set()

    for first, second in sides:
        if rule is Rule.RDFS5 and vocab.sub_property_of:
            spo = vocab.sub_property_of
            heads: dict[int, list[int]] = {}
            for b, c in second.pairs(spo):
                heads.setdefault(b, []).append(c)
            for a, b in first.pairs(spo):
                for c in heads.get(b, ()):
                    out.add((a, spo, c))
        elif rule is Rule.RDFS7 and vocab.sub_property_of:
            for a, b in first.pairs(vocab.sub_property_of):
                for u, y in second.pairs(a):
                    out.add((u, b, y))
        elif rule is Rule.RDFS9 and vocab.sub_class_of and vocab.type:
            members: dict[int, list[int]] = {}
            for v, u in second.pairs(vocab.type):
                members.setdefault(u, []).append(v)
            for u, x in first.pairs(vocab.sub_class_of):
                for v in members.get(u, ()):
                    out.add((v, vocab.type, x))
        elif rule is Rule.DOMAIN and vocab.domain and vocab.type:
            for p, cls in first.pairs(vocab.domain):
                for u, _v in second.pairs(p):
                    out.add((u, vocab.type, cls))
        elif rule is Rule.RANGE and vocab.range and vocab.type:
            for p, cls in first.pairs(vocab.range):
                for _u, v in second.pairs(p):
                    out.add((v, vocab.type, cls))
    return {t for t in out if t not in full.all}


def apply_rule(view, rule: Rule, vocab: ResolvedVocabulary) -> set[tuple[int, int, int]]:
    """Triples derivable by a single application of one rule, minus those present."""
    full = _RuleIndex(view.iter_triples())
    return _rule_matches(rule, full, None, vocab)


@dataclass
class EntailmentResult:
    derived_count: int
    rounds: int
    view: StoreView


def entail_fixpoint(
    store: Store,
    rules: Iterable[Rule] = ALL_RULES,
    vocab: Vocabulary | None = None,
    max_derived: int | None = None,
) -> EntailmentResult:
    """Semi-naive forward chaining to the least fixpoint.

    Each round joins the previous round's new triples against the full set,
    so nothing is re-derived from scratch; rule monotonicity makes the
    fixpoint unique regardless of application order. Derived triples that
    need ``rdf:type`` may mint its id (writer phase). Raises ResourceLimit
    when the derived count passes ``max_derived``.
    """
    rules = list(rules)
    vocab = vocab or Vocabulary()
    if any(r in (Rule.DOMAIN, Rule.RANGE, Rule.RDFS9) for r in rules):
        store.dictionary.encode(vocab.type)
    resolved = resolve_vocabulary(store.dictionary, vocab)

    full = _RuleIndex(store.iter_triples())
    delta = _RuleIndex(store.iter_triples())
    derived: list[tuple[int, int, int]] = []
    rounds = 0
    while delta.all:
        rounds += 1
        new: set[tuple[int, int, int]] = set()
        for rule in rules:
            new |= _rule_matches(rule, full, delta, resolved)
        new -= full.all
        for t in sorted(new):
            full.add(t)
            derived.append(t)
        if max_derived is not None and len(derived) > max_derived:
            raise ResourceLimit(f"derived {len(derived)} triples, bound is {max_derived}")
        delta = _RuleIndex(new)
    return EntailmentResult(len(derived), rounds, StoreView(store, derived, mode="union"))


@dataclass
class XmlLiteralReport:
    well_typed: list[Literal] = field(default_factory=list)
    ill_typed: list[Literal] = field(default_factory=list)


def flag_xml_literals(store: Store, vocab: Vocabulary | None = None) -> XmlLiteralReport:
    """Partition XML-typed literals by balanced-fragment well-formedness.

    Ill-typed literals are flagged only (excluded from the literal-value
    space in reports); nothing is rejected or removed.
    """
    vocab = vocab or Vocabulary()
    xml_dt = vocab.xml_literal.value if isinstance(vocab.xml_literal, IRI) else str(vocab.xml_literal)
    report = XmlLiteralReport()
    for term_id, term in store.dictionary.items():
        if not is_literal_id(term_id):
            continue
        if not isinstance(term, Literal) or term.datatype != xml_dt:
            continue
        try:
            ElementTree.fromstring(f"<x>{term.lexical}</x>")
            report.well_typed.append(term)
        except ElementTree.ParseError:
            report.ill_typed.append(term)
    return report
