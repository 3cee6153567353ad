#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathauction/network.hpp"

namespace pathauction {

/// Loopless source-to-sink path. Edges are indices into Network::edges().
struct Path {
  std::vector<std::size_t> edges;
  Rational cost;

  bool contains(std::size_t edge) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Total order used everywhere paths are ranked: cost first, then the
/// edge-id sequence lexicographically.
struct PathOrder {
  bool operator()(const Path& a, const Path& b) const;
};

struct RankedPaths {
  std::vector<Path> paths;

  std::size_t size() const { return paths.size(); }
  const Path& operator[](std::size_t i) const { return paths[i]; }
  std::vector<Rational> costs() const;

  friend bool operator==(const RankedPaths&, const RankedPaths&) = default;
};

std::vector<EdgeId> edgeIds(const Network& network, const Path& path);
std::vector<AgentId> agentsOn(const Network& network, const Path& path);
std::string describe(const Network& network, const Path& path);

struct Violation {
  std::string rule;
  std::string element;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every network invariant holds. Rule names: "duplicate node",
/// "duplicate edge id", "unknown node", "agent owns multiple edges",
/// "missing true cost", "missing bid", "unknown agent", "nonpositive cost",
/// "source equals sink", "no path", "agent owns a cut".
std::vector<Violation> validate(const Network& network);

/// Minimum-cost loopless path; ties go to the lexicographically smallest
/// edge-id sequence. Throws DisconnectedError.
Path shortestPath(const Network& network, const CostFunction& costs = CostFunction::bids());

/// First min(k, #paths) loopless paths in PathOrder (Yen's algorithm).
RankedPaths rankPaths(const Network& network, const CostFunction& costs, std::size_t k);

inline constexpr std::size_t kEnumerationEdgeLimit = 24;

/// Every loopless path by depth-first search, sorted in PathOrder. Refuses
/// graphs with more than kEnumerationEdgeLimit edges (TooLargeError).
RankedPaths enumeratePaths(const Network& network, const CostFunction& costs = CostFunction::bids());

enum class DetourMode { excluded, zeroed };

/// Cheapest path cost with the agent's edge removed (excluded) or free (zeroed).
Rational detourCost(const Network& network, const AgentId& agent, DetourMode mode,
                    CostFunction::Base base = CostFunction::Base::bid);

/// Lazily produces loopless paths in PathOrder.
class PathRanker {
 public:
  PathRanker(const Network& network, EdgeCosts costs);

  /// Next path in order, or nullopt when all paths have been produced.
  /// Throws DisconnectedError if the very first path does not exist.
  std::optional<Path> next();

  const std::vector<Path>& produced() const { return found_; }

 private:
  std::optional<Path> spur(std::size_t from, const std::vector<bool>& blockedEdges,
                           const std::vector<bool>& blockedNodes) const;
  std::vector<std::size_t> nodesOf(const Path& path) const;

  const Network* network_;
  EdgeCosts costs_;
  std::vector<Path> found_;
  std::set<Path, PathOrder> candidates_;
  bool started_ = false;
};

}  // namespace pathauction
