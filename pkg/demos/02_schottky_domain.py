"""
A Schottky group and its truncated Dirichlet domain
====================================================

Two pairs of disjoint half-plane circles give a free group of the second
kind.  Enumerating words up to a fixed length gives a truncated orbit
table; the Dirichlet domain at i (0 in the disk) is cut out by the
isometric circles of the table.  Writes domain.svg next to this script.
"""
import pathlib

import numpy as np

from fuchsian_carleson import FundamentalDomainView, enumerate_group, poincare_partial_sums, schottky_pair_generators
from fuchsian_carleson.render import domain_svg

gens = schottky_pair_generators([((-3.0, 1.0), (3.0, 1.0)), ((-10.0, 2.0), (10.0, 2.0))])
table = enumerate_group(gens, 5)
print(table.summary())

# the series sum (1-|g(0)|) converges: increments by word length shrink
ps = poincare_partial_sums(table)
for L, inc in zip(ps.word_lengths, ps.increments):
    print(f"  word length {L}: increment {inc:.3e}")

view = FundamentalDomainView(table)
ib = view.infinite_boundary()
print(f"{len(view.sides())} sides, {ib.n_arcs} free arcs covering {ib.free_measure / (2 * np.pi):.1%} of the circle")

# Euclidean boundary lengths of the tiles also sum geometrically
ls = view.length_sum_partials(4, n=128)
print("tile length increments:", ["%.3g" % x for x in ls.increments])

out = pathlib.Path(__file__).with_name("domain.svg")
out.write_text(domain_svg(view))
print("wrote", out)
