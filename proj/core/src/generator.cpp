#include "pathauction/generator.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "pathauction/errors.hpp"
#include "pathauction/paths.hpp"

namespace pathauction {

namespace {

std::string edgeName(std::size_t i) {
  std::string digits = std::to_string(i);
  return "e" + std::string(digits.size() < 2 ? 2 - digits.size() : 0, '0') + digits;
}

// Distinct intermediate nodes in random order, at most `limit` of them.
std::vector<std::size_t> randomRoute(std::mt19937_64& rng, std::size_t nodeCount, std::size_t limit) {
  std::vector<std::size_t> middle(nodeCount - 2);
  std::iota(middle.begin(), middle.end(), std::size_t{1});
  std::shuffle(middle.begin(), middle.end(), rng);
  std::uniform_int_distribution<std::size_t> len(0, std::min(limit, middle.size()));
  middle.resize(len(rng));
  return middle;
}

std::optional<Network> draw(std::mt19937_64& rng, std::size_t nodeBudget, std::size_t edgeBudget, CostRange range) {
  // Sizes lean toward the budgets; tiny draws mostly have just two paths.
  const std::size_t n = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(2, (nodeBudget + 1) / 2),
                                                                    nodeBudget)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(2, (2 * edgeBudget + 2) / 3),
                                                                    edgeBudget)(rng);
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i));

  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  auto addRoute = [&](const std::vector<std::size_t>& middle) {
    std::size_t at = 0;
    for (auto v : middle) {
      arcs.emplace_back(at, v);
      at = v;
    }
    arcs.emplace_back(at, n - 1);
  };
  // Each route needs |middle| + 1 edges and both must fit in m.
  const std::size_t half = m / 2;
  addRoute(randomRoute(rng, n, half - 1));
  addRoute(randomRoute(rng, n, m - arcs.size() - 1));
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  while (arcs.size() < m) {
    std::size_t u = node(rng);
    std::size_t v = node(rng);
    if (u == v || u == n - 1 || v == 0) continue;
    arcs.emplace_back(u, v);
  }
  std::shuffle(arcs.begin(), arcs.end(), rng);

  std::uniform_int_distribution<std::int64_t> cost(range.lo, range.hi);
  std::vector<Edge> edges;
  std::map<AgentId, Rational> trueCost;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string id = edgeName(i);
    edges.push_back({id, nodes[arcs[i].first], nodes[arcs[i].second], id});
    trueCost[id] = cost(rng);
  }
  Network net(nodes, std::move(edges), nodes.front(), nodes.back(), trueCost, trueCost);
  if (!validate(net).empty()) return std::nullopt;
  const auto costs = enumeratePaths(net).costs();
  if (std::adjacent_find(costs.begin(), costs.end()) != costs.end()) return std::nullopt;
  return net;
}

}  // namespace

Network randomNetwork(std::uint64_t seed, std::size_t nodeBudget, std::size_t edgeBudget, CostRange costs,
                      int retries) {
  if (nodeBudget < 2) throw InvalidArgumentError("a network needs at least two nodes");
  if (edgeBudget < 2) throw InvalidArgumentError("a cut-free network needs at least two edges");
  if (edgeBudget > kEnumerationEdgeLimit) throw InvalidArgumentError("edge budget exceeds the enumeration guard");
  if (costs.lo < 1 || costs.hi < costs.lo) throw InvalidArgumentError("cost range must be positive and nonempty");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= retries; ++attempt) {
    if (auto net = draw(rng, nodeBudget, edgeBudget, costs)) return *net;
  }
  throw GenerationFailedError("no valid network after " + std::to_string(retries) + " retries (seed " +
                              std::to_string(seed) + ")");
}

}  // namespace pathauction
