#include "pathauction/paths.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "pathauction/errors.hpp"

namespace pathauction {

bool Path::contains(std::size_t edge) const { return std::find(edges.begin(), edges.end(), edge) != edges.end(); }

bool PathOrder::operator()(const Path& a, const Path& b) const {
  if (auto c = a.cost <=> b.cost; c != 0) return c < 0;
  return std::lexicographical_compare(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end());
}

std::vector<Rational> RankedPaths::costs() const {
  std::vector<Rational> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.cost);
  return out;
}

std::vector<EdgeId> edgeIds(const Network& network, const Path& path) {
  std::vector<EdgeId> ids;
  ids.reserve(path.edges.size());
  for (auto e : path.edges) ids.push_back(network.edges()[e].id);
  return ids;
}

std::vector<AgentId> agentsOn(const Network& network, const Path& path) {
  std::vector<AgentId> out;
  out.reserve(path.edges.size());
  for (auto e : path.edges) out.push_back(network.edges()[e].owner);
  return out;
}

std::string describe(const Network& network, const Path& path) {
  std::string out;
  for (auto e : path.edges) {
    if (!out.empty()) out += ",";
    out += network.edges()[e].id;
  }
  return out;
}

namespace {

// Plain reachability ignoring costs; skipEdge may be edges().size() for none.
bool connected(const Network& network, std::size_t skipEdge) {
  auto src = network.nodeIndex(network.source());
  auto dst = network.nodeIndex(network.sink());
  if (!src || !dst) return false;
  std::vector<bool> seen(network.nodes().size(), false);
  std::deque<std::size_t> queue{*src};
  seen[*src] = true;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    if (u == *dst) return true;
    for (std::size_t e = 0; e < network.edges().size(); ++e) {
      if (e == skipEdge) continue;
      auto t = network.tailIndex(e);
      auto h = network.headIndex(e);
      if (!t || !h || *t != u || seen[*h]) continue;
      seen[*h] = true;
      queue.push_back(*h);
    }
  }
  return false;
}

}  // namespace

std::vector<Violation> validate(const Network& network) {
  std::vector<Violation> out;
  {
    std::set<NodeId> seen;
    for (const auto& n : network.nodes()) {
      if (!seen.insert(n).second) out.push_back({"duplicate node", n});
    }
  }
  std::map<AgentId, int> owned;
  {
    std::set<EdgeId> seen;
    for (std::size_t e = 0; e < network.edges().size(); ++e) {
      const Edge& edge = network.edges()[e];
      if (!seen.insert(edge.id).second) out.push_back({"duplicate edge id", edge.id});
      if (!network.tailIndex(e)) out.push_back({"unknown node", edge.id + ": " + edge.from});
      if (!network.headIndex(e)) out.push_back({"unknown node", edge.id + ": " + edge.to});
      ++owned[edge.owner];
    }
  }
  for (const auto& [agent, count] : owned) {
    if (count > 1) out.push_back({"agent owns multiple edges", agent});
    auto t = network.trueCost().find(agent);
    if (t == network.trueCost().end()) {
      out.push_back({"missing true cost", agent});
    } else if (!t->second.isPositive()) {
      out.push_back({"nonpositive cost", agent + " true_cost=" + t->second.str()});
    }
    auto b = network.bid().find(agent);
    if (b == network.bid().end()) {
      out.push_back({"missing bid", agent});
    } else if (!b->second.isPositive()) {
      out.push_back({"nonpositive cost", agent + " bid=" + b->second.str()});
    }
  }
  for (const auto& [agent, cost] : network.trueCost()) {
    if (!owned.contains(agent)) out.push_back({"unknown agent", agent});
  }
  for (const auto& [agent, cost] : network.bid()) {
    if (!owned.contains(agent) && !network.trueCost().contains(agent)) out.push_back({"unknown agent", agent});
  }
  if (!network.nodeIndex(network.source())) out.push_back({"unknown node", "source " + network.source()});
  if (!network.nodeIndex(network.sink())) out.push_back({"unknown node", "sink " + network.sink()});
  if (network.source() == network.sink()) out.push_back({"source equals sink", network.source()});

  const std::size_t none = network.edges().size();
  if (!connected(network, none)) {
    if (network.source() != network.sink()) out.push_back({"no path", network.source() + " -> " + network.sink()});
    return out;
  }
  for (std::size_t e = 0; e < network.edges().size(); ++e) {
    if (!connected(network, e)) out.push_back({"agent owns a cut", network.edges()[e].owner});
  }
  return out;
}

PathRanker::PathRanker(const Network& network, EdgeCosts costs) : network_(&network), costs_(std::move(costs)) {}

std::vector<std::size_t> PathRanker::nodesOf(const Path& path) const {
  std::vector<std::size_t> nodes;
  nodes.reserve(path.edges.size() + 1);
  nodes.push_back(*network_->nodeIndex(network_->source()));
  for (auto e : path.edges) nodes.push_back(*network_->headIndex(e));
  return nodes;
}

std::optional<Path> PathRanker::spur(std::size_t from, const std::vector<bool>& blockedEdges,
                                     const std::vector<bool>& blockedNodes) const {
  const Network& net = *network_;
  const std::size_t nodeCount = net.nodes().size();
  const std::size_t sink = *net.nodeIndex(net.sink());
  auto usable = [&](std::size_t e) {
    auto t = net.tailIndex(e);
    auto h = net.headIndex(e);
    return costs_[e].has_value() && !blockedEdges[e] && t && h && *t != *h && !blockedNodes[*t] &&
           !blockedNodes[*h];
  };

  // Backward Dijkstra: exact distance from every node to the sink.
  std::vector<std::optional<Rational>> dist(nodeCount);
  std::vector<bool> done(nodeCount, false);
  if (blockedNodes[sink]) return std::nullopt;
  dist[sink] = Rational(0);
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < nodeCount; ++v) {
      if (!done[v] && dist[v] && (!best || *dist[v] < *dist[*best])) best = v;
    }
    if (!best) break;
    done[*best] = true;
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      if (!usable(e) || *net.headIndex(e) != *best) continue;
      auto t = *net.tailIndex(e);
      Rational candidate = *dist[*best] + *costs_[e];
      if (!dist[t] || candidate < *dist[t]) dist[t] = candidate;
    }
  }
  if (!dist[from]) return std::nullopt;

  // Greedy walk over tight edges in index order gives the lexicographically
  // smallest minimum-cost path.
  Path path;
  path.cost = *dist[from];
  std::vector<bool> visited(nodeCount, false);
  std::size_t at = from;
  visited[at] = true;
  while (at != sink) {
    std::optional<std::size_t> chosen;
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      if (!usable(e) || *net.tailIndex(e) != at) continue;
      auto h = *net.headIndex(e);
      if (visited[h] || !dist[h]) continue;
      if (*costs_[e] + *dist[h] == *dist[at]) {
        chosen = e;
        break;
      }
    }
    if (!chosen) return std::nullopt;  // unreachable with nonnegative costs and no zero cycles
    path.edges.push_back(*chosen);
    at = *net.headIndex(*chosen);
    visited[at] = true;
  }
  return path;
}

std::optional<Path> PathRanker::next() {
  const Network& net = *network_;
  const std::size_t edgeCount = net.edges().size();
  const std::size_t nodeCount = net.nodes().size();
  if (!started_) {
    started_ = true;
    auto src = net.nodeIndex(net.source());
    auto dst = net.nodeIndex(net.sink());
    if (!src || !dst) throw DisconnectedError("source or sink is not a node of the network");
    auto first = spur(*src, std::vector<bool>(edgeCount, false), std::vector<bool>(nodeCount, false));
    if (!first) throw DisconnectedError("no path from " + net.source() + " to " + net.sink());
    found_.push_back(*first);
    return first;
  }
  if (found_.empty()) return std::nullopt;

  const Path& previous = found_.back();
  const auto nodes = nodesOf(previous);
  Rational rootCost(0);
  for (std::size_t i = 0; i < previous.edges.size(); ++i) {
    std::vector<bool> blockedEdges(edgeCount, false);
    for (const auto& p : found_) {
      if (p.edges.size() > i && std::equal(previous.edges.begin(), previous.edges.begin() + i, p.edges.begin())) {
        blockedEdges[p.edges[i]] = true;
      }
    }
    std::vector<bool> blockedNodes(nodeCount, false);
    for (std::size_t j = 0; j < i; ++j) blockedNodes[nodes[j]] = true;

    if (auto tail = spur(nodes[i], blockedEdges, blockedNodes)) {
      Path candidate;
      candidate.edges.assign(previous.edges.begin(), previous.edges.begin() + i);
      candidate.edges.insert(candidate.edges.end(), tail->edges.begin(), tail->edges.end());
      candidate.cost = rootCost + tail->cost;
      if (std::find(found_.begin(), found_.end(), candidate) == found_.end()) candidates_.insert(std::move(candidate));
    }
    rootCost += *costs_[previous.edges[i]];
  }
  if (candidates_.empty()) return std::nullopt;
  Path best = *candidates_.begin();
  candidates_.erase(candidates_.begin());
  found_.push_back(best);
  return best;
}

Path shortestPath(const Network& network, const CostFunction& costs) {
  PathRanker ranker(network, costs.resolve(network));
  return *ranker.next();
}

RankedPaths rankPaths(const Network& network, const CostFunction& costs, std::size_t k) {
  PathRanker ranker(network, costs.resolve(network));
  RankedPaths out;
  while (out.paths.size() < k) {
    auto p = ranker.next();
    if (!p) break;
    out.paths.push_back(std::move(*p));
  }
  return out;
}

RankedPaths enumeratePaths(const Network& network, const CostFunction& costs) {
  if (network.edges().size() > kEnumerationEdgeLimit) {
    throw TooLargeError("path enumeration limited to " + std::to_string(kEnumerationEdgeLimit) + " edges, got " +
                        std::to_string(network.edges().size()));
  }
  const EdgeCosts resolved = costs.resolve(network);
  auto src = network.nodeIndex(network.source());
  auto dst = network.nodeIndex(network.sink());
  if (!src || !dst) throw DisconnectedError("source or sink is not a node of the network");

  RankedPaths out;
  std::vector<bool> onStack(network.nodes().size(), false);
  Path current;
  current.cost = Rational(0);
  std::function<void(std::size_t)> dfs = [&](std::size_t at) {
    if (at == *dst) {
      out.paths.push_back(current);
      return;
    }
    onStack[at] = true;
    for (std::size_t e = 0; e < network.edges().size(); ++e) {
      auto t = network.tailIndex(e);
      auto h = network.headIndex(e);
      if (!resolved[e] || !t || !h || *t != at || onStack[*h]) continue;
      current.edges.push_back(e);
      Rational saved = current.cost;
      current.cost += *resolved[e];
      dfs(*h);
      current.cost = saved;
      current.edges.pop_back();
    }
    onStack[at] = false;
  };
  dfs(*src);
  if (out.paths.empty()) throw DisconnectedError("no path from " + network.source() + " to " + network.sink());
  std::sort(out.paths.begin(), out.paths.end(), PathOrder{});
  return out;
}

Rational detourCost(const Network& network, const AgentId& agent, DetourMode mode, CostFunction::Base base) {
  if (!network.edgeOfAgent(agent)) throw InvalidArgumentError("unknown agent " + agent);
  std::map<AgentId, std::optional<Rational>> over;
  over[agent] = mode == DetourMode::excluded ? std::nullopt : std::optional<Rational>(Rational(0));
  return shortestPath(network, CostFunction::overrides(std::move(over), base)).cost;
}

}  // namespace pathauction
