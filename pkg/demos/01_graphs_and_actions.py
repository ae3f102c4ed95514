"""Walk through the path calculus and the edge-automaton action.

The running example is the two-vertex graph with edges 1: v->v, 2: w->v,
3: v->w, 4: v->w and the rules

    a.1 = 4 | v     b.3 = 1 | v
    a.2 = 3 | b     b.4 = 2 | a

Paths compose like functions: the rightmost edge acts first, and an edge
points from s(e) to r(e).
"""

from pathlib import Path as FsPath

from selfsim import Path, concat, enumerate_paths, parse_spec, validate_graph

SPECS = FsPath(__file__).resolve().parent.parent / "specs"

spec = parse_spec((SPECS / "ex310.ss").read_text())
aut = spec.automaton()
g = aut.graph

print("structure:", validate_graph(g).as_dict())

# "31" is a path because s(3) = v = r(1); r(31) = w and s(31) = v.
p = concat(g, Path.of(g, ["3"]), Path.of(g, ["1"]))
print("3 * 1 =", p, " r =", p.r(g), " s =", p.s(g))

print("|E^n| for n = 0..6:", [len(enumerate_paths(g, n)) for n in range(7)])

# The worked action: a . 242312 = 3(b.42312) = 32(a.2312) = ... = 323112.
a = aut.generator("a")
word = Path.of(g, list("242312"))
print("a . 242312 =", "".join(aut.act(a, word).edges))

# Restrictions obey (hg)|_mu = (h|_{g.mu}) (g|_mu); the four length-two
# products reduce back into the generating set after two letters:
b = aut.generator("b")
ab, ba = aut.compose(a, b), aut.compose(b, a)
for elem, name in [(ab, "ab"), (ba, "ba")]:
    for e in ("1", "2", "3", "4"):
        if g.r(e) != elem.dom:
            continue
        r = aut.restrict(elem, Path.of(g, [e]))
        print(f"({name})|_{e} =", aut.canonical(r).name())

# Element identity is action equality, decided by bisimulation:
print("a a^-1 = unit at w?", aut.equal(aut.compose(a, aut.inverse(a)), aut.unit("w")))
print("a^-1 = b?", aut.equal(aut.inverse(a), b))
