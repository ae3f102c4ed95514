"""The edge automaton and the action/restriction calculus it generates.

A rule table assigns to each generator g a domain vertex d(g), a codomain
vertex c(g), and for every edge e with r(e) = d(g) an image edge g.e with
r(g.e) = c(g) together with a restriction element g|_e satisfying

    d(g|_e) = s(e)   and   c(g|_e) = s(g.e).

The action extends to paths by g.(e mu) = (g.e)(g|_e . mu), to words by

    (hg).mu = h.(g.mu)        (hg)|_mu = (h|_{g.mu}) (g|_mu)

and to inverses by g^-1|_eta = (g|_{g^-1.eta})^-1.  Groupoid elements are
domain-tagged signed words; two words are identified exactly when they act
identically on every finite path.  That identity is decided by a greatest-
fixpoint bisimulation on restriction pairs: a pair refutes if it disagrees
on some edge image, and a revisited pair is assumed equal (sound because
the visited relation is then a bisimulation, and by induction bisimilar
words agree on all finite paths).  When every rule restriction is a single
signed symbol or a unit, restriction never lengthens words, so the search
space is finite; longer rule words may grow, so searches carry a state
budget and raise ClosureLimitError past it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AutomatonError,
    ClosureLimitError,
    DomainMismatchError,
    NonComposableError,
    NotBijectiveOnEdgesError,
    RestrictionVertexMismatchError,
    UnknownSymbolError,
)
from .graphs import Graph, Path

# A signed generator symbol: (name, +1) is g, (name, -1) is g^-1.
Symbol = tuple[str, int]


def symbol_str(sym: Symbol) -> str:
    name, exp = sym
    return name if exp == 1 else f"{name}^-1"


@dataclass(frozen=True)
class Element:
    """A groupoid element: a signed word over the generators, tagged with
    its domain vertex.  The empty word is the unit at ``dom``."""

    dom: str
    word: tuple[Symbol, ...] = ()

    @property
    def is_unit(self) -> bool:
        return not self.word

    def name(self) -> str:
        return " ".join(symbol_str(s) for s in self.word) if self.word else self.dom

    def __str__(self):
        return self.name()


def word_key(word: tuple[Symbol, ...]):
    """Shortlex order on signed words; used for canonical representatives."""
    return (len(word), tuple(symbol_str(s) for s in word))


@dataclass(frozen=True)
class GeneratorRule:
    dom: str
    cod: str
    # edge id -> (image edge id, restriction element with d = s(e), c = s(g.e))
    rules: dict[str, tuple[str, Element]] = field(default_factory=dict)


@dataclass(frozen=True)
class Bounds:
    max_states: int = 10_000
    max_rounds: int = 64
    # restriction words may grow when rule restrictions have length >= 2;
    # searches give up past this length instead of diverging
    max_word_len: int = 4_096


class Automaton:
    """A validated-on-demand rule table over a fixed graph.

    Construction never raises for rule-level problems; ``violations`` holds
    whatever :func:`validate_automaton` found, and the action operations
    refuse to run while it is nonempty.  Vertex names double as unit
    symbols, so generator names must not collide with vertex names.
    """

    def __init__(self, graph: Graph, generators: dict[str, GeneratorRule],
                 bounds: Bounds = Bounds()):
        self.graph = graph
        self.generators = dict(sorted(generators.items()))
        self.bounds = bounds
        for name in self.generators:
            if graph.has_edge(name) or name in set(graph.vertices):
                raise AutomatonError(f"generator name {name!r} collides with a graph id")
        self.violations = _validate(graph, self.generators)
        self._inv_rules: dict[str, dict[str, tuple[str, tuple[Symbol, ...]]]] = {}
        if not self.violations:
            for name, rule in self.generators.items():
                inv = {}
                for e, (img, restr) in rule.rules.items():
                    inv[img] = (e, _inverse_word(restr.word))
                self._inv_rules[name] = inv
        self._registry = _Registry(self)
        # memoization; only short words are cached to bound memory
        self._act_cache: dict[tuple, tuple[str, tuple[Symbol, ...]]] = {}
        self._cache_len = 128

    # -- element constructors -------------------------------------------------

    def unit(self, v: str) -> Element:
        if v not in set(self.graph.vertices):
            raise UnknownSymbolError(f"unknown vertex {v!r}")
        return Element(v, ())

    def generator(self, name: str) -> Element:
        rule = self.generators.get(name)
        if rule is None:
            raise UnknownSymbolError(f"unknown generator {name!r}")
        return Element(rule.dom, ((name, 1),))

    def element(self, tokens) -> Element:
        """Build an element from symbol tokens (left to right, rightmost acts
        first).  Tokens are generator names, ``g^-1``, or vertex names
        (units, which are dropped after their endpoints are checked)."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        syms: list[tuple[str, int, str, str]] = []  # (name, exp, dom, cod)
        for tok in tokens:
            inv = tok.endswith("^-1")
            base = tok[:-3] if inv else tok
            if base in self.generators:
                rule = self.generators[base]
                d, c = (rule.cod, rule.dom) if inv else (rule.dom, rule.cod)
                syms.append((base, -1 if inv else 1, d, c))
            elif base in set(self.graph.vertices) and not inv:
                syms.append((base, 0, base, base))
            else:
                raise UnknownSymbolError(f"unknown symbol {tok!r}")
        if not syms:
            raise UnknownSymbolError("an element literal needs at least one token")
        for (_, _, d, _), (_, _, _, c2) in zip(syms, syms[1:]):
            if d != c2:
                raise NonComposableError("adjacent symbols do not chain")
        dom = syms[-1][2]
        word = tuple((n, e) for n, e, _, _ in syms if e != 0)
        return Element(dom, word)

    # -- endpoint maps ---------------------------------------------------------

    def sym_endpoints(self, sym: Symbol) -> tuple[str, str]:
        """(d, c) of a signed symbol."""
        rule = self.generators[sym[0]]
        return (rule.dom, rule.cod) if sym[1] == 1 else (rule.cod, rule.dom)

    def cod(self, g: Element) -> str:
        return self.sym_endpoints(g.word[0])[1] if g.word else g.dom

    # -- the calculus ----------------------------------------------------------

    def _require_valid(self):
        if self.violations:
            raise self.violations[0]

    def _sym_act_edge(self, sym: Symbol, edge: str) -> tuple[str, tuple[Symbol, ...]]:
        name, exp = sym
        if exp == 1:
            hit = self.generators[name].rules.get(edge)
            if hit is None:
                raise DomainMismatchError(f"{name} does not act on edge {edge!r}")
            img, restr = hit
            return img, restr.word
        hit = self._inv_rules[name].get(edge)
        if hit is None:
            raise DomainMismatchError(f"{symbol_str(sym)} does not act on edge {edge!r}")
        return hit

    def word_act_edge(self, word: tuple[Symbol, ...], edge: str) -> tuple[str, tuple[Symbol, ...]]:
        """Image and restriction word of a signed word on a single edge."""
        self._require_valid()
        cacheable = len(word) <= self._cache_len
        if cacheable:
            hit = self._act_cache.get((word, edge))
            if hit is not None:
                return hit
        img = edge
        pieces = []
        total = 0
        for sym in reversed(word):
            img, rw = self._sym_act_edge(sym, img)
            pieces.append(rw)
            total += len(rw)
            if total > self.bounds.max_word_len:
                raise ClosureLimitError(self.bounds.max_word_len, "restriction word growth")
        out: tuple[Symbol, ...] = ()
        for rw in reversed(pieces):
            out = out + rw
        if cacheable:
            self._act_cache[(word, edge)] = (img, out)
        return img, out

    def act(self, g: Element, p: Path) -> Path:
        """g . p, defined when r(p) = d(g); length preserving."""
        if p.r(self.graph) != g.dom:
            raise DomainMismatchError(f"r(path) = {p.r(self.graph)} != d(g) = {g.dom}")
        word = g.word
        out = []
        for e in p.edges:
            img, word = self.word_act_edge(word, e)
            out.append(img)
        return Path(self.cod(g), tuple(out))

    def restrict(self, g: Element, p: Path) -> Element:
        """g|_p, defined when r(p) = d(g)."""
        if p.r(self.graph) != g.dom:
            raise DomainMismatchError(f"r(path) = {p.r(self.graph)} != d(g) = {g.dom}")
        word = g.word
        for e in p.edges:
            _, word = self.word_act_edge(word, e)
        return Element(p.s(self.graph), word)

    def inverse(self, g: Element) -> Element:
        return Element(self.cod(g), _inverse_word(g.word))

    def compose(self, h: Element, g: Element) -> Element:
        """h after g; defined when d(h) = c(g)."""
        if h.dom != self.cod(g):
            raise NonComposableError(f"d(h) = {h.dom} != c(g) = {self.cod(g)}")
        return Element(g.dom, h.word + g.word)

    def equal(self, g: Element, h: Element, budget: int | None = None) -> bool:
        """True iff g and h define the same partial isomorphism of E*.

        Greatest-fixpoint bisimulation on restriction pairs; see the module
        docstring for the soundness argument and the budget caveat.
        """
        self._require_valid()
        if g.dom != h.dom or self.cod(g) != self.cod(h):
            return False
        budget = budget if budget is not None else self.bounds.max_states
        seen: set[tuple] = set()
        stack: list[tuple[tuple[Symbol, ...], tuple[Symbol, ...], str]] = [(g.word, h.word, g.dom)]
        while stack:
            gw, hw, dom = stack.pop()
            key = (gw, hw)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > budget:
                raise ClosureLimitError(budget, "bisimulation")
            for e in self.graph.range_edges(dom):
                gi, gr = self.word_act_edge(gw, e.id)
                hi, hr = self.word_act_edge(hw, e.id)
                if gi != hi:
                    return False
                if gr != hr:
                    stack.append((gr, hr, e.src))
        return True

    def act_infinite(self, g: Element, x, budget: int | None = None):
        """g . x for an eventually periodic right-infinite path x.

        Runs restrictions along x until the (canonical state, cycle phase)
        pair repeats, then closes the output cycle; the image is eventually
        periodic with transient at most budget states."""
        from .infinite_paths import RightInfinitePath

        if x.r(self.graph) != g.dom:
            raise DomainMismatchError(f"r(x) = {x.r(self.graph)} != d(g) = {g.dom}")
        budget = budget if budget is not None else self.bounds.max_states
        word = g.word
        out: list[str] = []
        seen: dict[tuple[int, int], int] = {}
        n = 1
        while True:
            if n > len(x.head):
                phase = (n - len(x.head) - 1) % len(x.cycle)
                state = Element(self.graph.r(x.edge_at(n)), word)
                key = (self.canonical_id(state, budget), phase)
                if key in seen:
                    cut = seen[key]
                    return RightInfinitePath.make(self.graph, out[:cut], out[cut:])
                if len(seen) > budget:
                    raise ClosureLimitError(budget, "act_infinite cycle search")
                seen[key] = len(out)
            img, word = self.word_act_edge(word, x.edge_at(n))
            out.append(img)
            n += 1

    # -- canonical classes -----------------------------------------------------

    def canonical_id(self, g: Element, budget: int | None = None) -> int:
        return self._registry.lookup(g, budget)[0]

    def canonical(self, g: Element, budget: int | None = None) -> Element:
        """The canonical representative of g's class: the shortlex-least
        word discovered so far (cosmetic; the class id is the identity)."""
        return self._registry.lookup(g, budget)[1]


def _inverse_word(word: tuple[Symbol, ...]) -> tuple[Symbol, ...]:
    return tuple((n, -e) for n, e in reversed(word))


def _validate(graph: Graph, generators: dict[str, GeneratorRule]):
    """Both automaton invariants, reported as a list of exceptions."""
    violations: list[AutomatonError] = []

    def endpoints(sym: Symbol):
        rule = generators[sym[0]]
        return (rule.dom, rule.cod) if sym[1] == 1 else (rule.cod, rule.dom)

    for name, rule in sorted(generators.items()):
        if rule.dom not in set(graph.vertices) or rule.cod not in set(graph.vertices):
            violations.append(NotBijectiveOnEdgesError(name, "unknown dom/cod vertex"))
            continue
        dom_edges = {e.id for e in graph.range_edges(rule.dom)}
        cod_edges = {e.id for e in graph.range_edges(rule.cod)}
        if set(rule.rules) != dom_edges:
            violations.append(NotBijectiveOnEdgesError(
                name, f"rules cover {sorted(rule.rules)}, need exactly {sorted(dom_edges)}"))
            continue
        images = [img for img, _ in rule.rules.values()]
        if set(images) - cod_edges or len(set(images)) != len(images) or set(images) != cod_edges:
            violations.append(NotBijectiveOnEdgesError(
                name, f"edge images {sorted(images)} are not a bijection onto {sorted(cod_edges)}"))
            continue
        for e, (img, restr) in sorted(rule.rules.items()):
            want_d, want_c = graph.s(e), graph.s(img)
            d = restr.dom
            c = restr.dom
            ok = True
            prev_d = None
            for i, sym in enumerate(restr.word):
                if sym[0] not in generators:
                    ok = False
                    break
                sd, sc = endpoints(sym)
                if i == 0:
                    c = sc
                if prev_d is not None and prev_d != sc:
                    ok = False
                    break
                prev_d = sd
            if restr.word:
                d = endpoints(restr.word[-1])[0]
            if not ok:
                violations.append(RestrictionVertexMismatchError(name, e, "word does not chain"))
            elif d != want_d or c != want_c:
                violations.append(RestrictionVertexMismatchError(
                    name, e, f"restriction has (d, c) = ({d}, {c}), rule needs ({want_d}, {want_c})"))
    return violations


def validate_automaton(a: Automaton):
    """ok == empty list; otherwise the violations, in deterministic order."""
    return list(a.violations)


class _Registry:
    """Canonical-class registry: maps elements to stable class ids.

    Candidates are pre-filtered by a depth-2 action fingerprint (a class
    invariant), then confirmed with equal().  The first element of a class
    fixes its id; the stored representative word is replaced whenever a
    shortlex-smaller member shows up.
    """

    def __init__(self, aut: Automaton):
        self.aut = aut
        self.by_fp: dict[tuple, list[int]] = {}
        self.reps: list[Element] = []
        self.word_class: dict[tuple[str, tuple[Symbol, ...]], int] = {}

    def _fingerprint(self, g: Element) -> tuple:
        aut = self.aut
        acts = []
        for e in aut.graph.range_edges(g.dom):
            img, rw = aut.word_act_edge(g.word, e.id)
            deeper = []
            for f in aut.graph.range_edges(e.src):
                img2, _ = aut.word_act_edge(rw, f.id)
                deeper.append(img2)
            acts.append((img, tuple(deeper)))
        return (g.dom, aut.cod(g), tuple(acts))

    def lookup(self, g: Element, budget: int | None = None) -> tuple[int, Element]:
        aut = self.aut
        aut._require_valid()
        key = (g.dom, g.word)
        cached = self.word_class.get(key)
        if cached is not None:
            return cached, self.reps[cached]
        fp = self._fingerprint(g)
        for cid in self.by_fp.get(fp, ()):
            rep = self.reps[cid]
            if aut.equal(g, rep, budget):
                if word_key(g.word) < word_key(rep.word):
                    self.reps[cid] = g
                if len(g.word) <= aut._cache_len:
                    self.word_class[key] = cid
                return cid, self.reps[cid]
        cid = len(self.reps)
        self.reps.append(g)
        self.by_fp.setdefault(fp, []).append(cid)
        if len(g.word) <= aut._cache_len:
            self.word_class[key] = cid
        return cid, g


@dataclass
class StateMachine:
    """A finite restriction-closed set of canonical elements with its edge
    action and restriction-successor maps.  States are numbered in BFS
    order with lexicographic edge order, so exports are deterministic."""

    states: list[Element]
    doms: list[str]
    cods: list[str]
    action: dict[tuple[int, str], str]
    successor: dict[tuple[int, str], int]

    def __len__(self):
        return len(self.states)

    def state_index(self, aut: Automaton, g: Element) -> int | None:
        cid = aut.canonical_id(g)
        for i, s in enumerate(self.states):
            if aut.canonical_id(s) == cid:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "states": [
                {"id": i, "name": s.name(), "dom": self.doms[i], "cod": self.cods[i],
                 "unit": s.is_unit}
                for i, s in enumerate(self.states)
            ],
            "transitions": [
                {"state": i, "edge": e, "image": self.action[(i, e)],
                 "successor": self.successor[(i, e)]}
                for (i, e) in sorted(self.action)
            ],
        }


def reachable_closure(aut: Automaton, seeds, budget: int | None = None) -> StateMachine:
    """Smallest restriction-closed set of canonical elements containing the
    seeds (units reached by restriction included)."""
    aut._require_valid()
    budget = budget if budget is not None else aut.bounds.max_states
    order: list[Element] = []
    index: dict[int, int] = {}
    queue: list[Element] = []
    for s in seeds:
        cid, rep = aut._registry.lookup(s, budget)
        if cid not in index:
            index[cid] = len(order)
            order.append(rep)
            queue.append(rep)
    action: dict[tuple[int, str], str] = {}
    successor: dict[tuple[int, str], int] = {}
    qi = 0
    while qi < len(queue):
        g = queue[qi]
        qi += 1
        i = index[aut.canonical_id(g)]
        for e in aut.graph.range_edges(g.dom):
            img, rw = aut.word_act_edge(g.word, e.id)
            succ = Element(e.src, rw)
            cid, rep = aut._registry.lookup(succ, budget)
            if cid not in index:
                if len(order) >= budget:
                    raise ClosureLimitError(budget, "restriction closure")
                index[cid] = len(order)
                order.append(rep)
                queue.append(rep)
            action[(i, e.id)] = img
            successor[(i, e.id)] = index[cid]
    # refresh representatives: later lookups may have found smaller words
    states = [aut.canonical(g) for g in order]
    return StateMachine(
        states=states,
        doms=[g.dom for g in states],
        cods=[aut.cod(g) for g in states],
        action=action,
        successor=successor,
    )
