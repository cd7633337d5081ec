# relturan - Constructive relative Turán numbers for hypergraph cycles.
# Copyright (C) 2024 The relturan developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Hypothesis strategies shared by the tests.
"""
import itertools

from hypothesis import strategies as st

from relturan.hypergraph import Hypergraph


@st.composite
def hypergraphs(draw, uniformity: int = 3, min_vertices: int = 3, max_vertices: int = 7):
    """
    Small r-graphs: a random subset of the r-sets of at most ``max_vertices`` vertices.
    """
    vertex_count = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    candidates = list(itertools.combinations(range(vertex_count), uniformity))
    mask = draw(st.lists(st.booleans(), min_size=len(candidates), max_size=len(candidates)))
    edges = [edge for edge, keep in zip(candidates, mask) if keep]
    return Hypergraph(uniformity, vertex_count, edges)
