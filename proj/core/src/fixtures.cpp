#include "pathauction/fixtures.hpp"

#include <set>
#include <tuple>

namespace pathauction::fixtures {

namespace {

// (id, from, to, cost); each edge is owned by an agent of the same name.
using EdgeRow = std::tuple<const char*, const char*, const char*, std::int64_t>;

Network build(std::initializer_list<EdgeRow> rows) {
  std::set<NodeId> seen;
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
  std::map<AgentId, Rational> cost;
  auto note = [&](const NodeId& n) {
    if (seen.insert(n).second) nodes.push_back(n);
  };
  note("X");
  for (const auto& [id, from, to, c] : rows) {
    note(from);
    note(to);
    edges.push_back({id, from, to, id});
    cost[id] = c;
  }
  return Network(nodes, std::move(edges), "X", "Y", cost, cost);
}

}  // namespace

Network example1() {
  return build({{"A", "X", "n1", 1}, {"B", "n1", "n2", 1}, {"C", "n2", "n3", 1}, {"D", "n3", "n4", 1},
                {"E", "n4", "n5", 1}, {"F", "n5", "Y", 1},   {"G", "n1", "g1", 1}, {"K", "g1", "n3", 2},
                {"H", "n1", "h1", 2}, {"I", "h1", "n3", 3},  {"J", "X", "j1", 4},  {"P", "j1", "n4", 4},
                {"M", "n1", "m1", 6}, {"L", "m1", "n5", 7},  {"N", "X", "q1", 8},  {"O", "q1", "Y", 8}});
}

Network fig2() { return build({{"a", "X", "n1", 1}, {"b", "n1", "n2", 1}, {"c", "n2", "Y", 1}, {"d", "X", "Y", 5}}); }

Network fig3() { return build({{"e", "X", "Y", 1}, {"f", "X", "Y", 5}}); }

Network xsmall() { return build({{"r", "X", "a1", 1}, {"s", "a1", "Y", 1}, {"u", "X", "Y", 4}}); }

std::vector<std::string> names() { return {"example1", "fig2", "fig3", "xsmall"}; }

std::optional<Network> byName(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "xsmall") return xsmall();
  return std::nullopt;
}

}  // namespace pathauction::fixtures
