#pragma once

#include <string>

#include "wrcm/sampler.hpp"

namespace wrcm {

// Line-oriented text format:
//   wrcm 1 d=<d> beta=<b> gamma=<g> delta=<d> kernel=<k> profile=<p> side=<L> geometry=<g> seed=<s>
//   v <id> <x1> ... <xd> <mark>
//   e <i> <j>           (i < j, ascending)
// Reals are written as shortest round-trip decimals, so read(write(G)) == G.
void write_graph(const Graph& graph, const std::string& path);
Graph read_graph(const std::string& path);

// String forms of the two directions, used by the file functions and tests.
std::string format_graph(const Graph& graph);
Graph parse_graph(const std::string& text);

}  // namespace wrcm
