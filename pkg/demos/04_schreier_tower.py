"""Level-n Schreier graphs and the projections between them.

Gamma_n has the length-n paths as vertices and an edge labelled a between
mu and a.mu.  For the four-edge example the tower is a doubling family of
cycles (4, 8, 16, ... vertices) with a unit loop at every vertex, which is
how the limit space reveals itself as a circle.  The geodesic distance
between the depth-n windows of two left-infinite paths stays bounded over
n exactly when the paths are asymptotically equivalent.
"""

from pathlib import Path as FsPath

from selfsim import (
    build_schreier,
    compute_nucleus,
    default_generating_set,
    distance_profile,
    geodesic_distance,
    parse_path,
    parse_spec,
    project_psi,
)

SPECS = FsPath(__file__).resolve().parent.parent / "specs"

aut = parse_spec((SPECS / "ex310.ss").read_text()).automaton()
g = aut.graph
gens = default_generating_set(aut)
print("generating set:", [e.name() for e in gens])

for n in range(1, 6):
    gamma = build_schreier(aut, gens, n)
    loops = sum(1 for (u, v) in gamma.undirected_edges() if u == v)
    print(f"Gamma_{n}: {len(gamma.vertices)} vertices, {loops} unit loops, "
          f"connected={gamma.is_connected()}")

gamma2 = build_schreier(aut, gens, 2)
print()
print(gamma2.to_dot())
print()

# psi_2 drops the first edge and restricts the label: the a-edge between 24
# and 32 maps to the b-edge between 4 and 2 (because a|_2 = b).
proj, morphism = project_psi(gamma2)
for (u, v, lab), (pu, pv, plab) in morphism.arc_map:
    mu, nu = gamma2.vertices[u], gamma2.vertices[v]
    if {"".join(mu.edges), "".join(nu.edges)} == {"24", "32"} and lab == "a":
        print(f"psi: ({lab}: {mu}--{nu})  ->  ({plab}: {proj.vertices[pu]}--{proj.vertices[pv]})")

v0 = gamma2.vertices[0]
far = max(gamma2.vertices, key=lambda p: geodesic_distance(gamma2, v0, p))
print("antipodal distance on Gamma_2:", geodesic_distance(gamma2, v0, far))

nuc = compute_nucleus(aut)
x = parse_path(g, "(2.3)^inf")
y = parse_path(g, "(4.2)^inf")
z = parse_path(g, "(1)^inf")
print("profile of an equivalent pair:    ", distance_profile(aut, x, y, 10, gen_set=gens))
print("profile of a non-equivalent pair: ", distance_profile(aut, z, y, 10, gen_set=gens))
