#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathauction/rational.hpp"

namespace pathauction {

using NodeId = std::string;
using EdgeId = std::string;
using AgentId = std::string;

/// Declared (or true) cost per agent.
using BidProfile = std::map<AgentId, Rational>;

struct Edge {
  EdgeId id;
  NodeId from;
  NodeId to;
  AgentId owner;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed multigraph with a source, a sink, and one owning agent per edge.
///
/// Edges are stored sorted by id, so comparing edge-index sequences is the
/// same as comparing edge-id sequences. A Network may be constructed in an
/// invalid state; validate() reports what is wrong with it.
class Network {
 public:
  Network() = default;
  Network(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId source, NodeId sink,
          std::map<AgentId, Rational> trueCost, std::map<AgentId, Rational> bid);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const NodeId& source() const { return source_; }
  const NodeId& sink() const { return sink_; }
  const std::map<AgentId, Rational>& trueCost() const { return trueCost_; }
  const std::map<AgentId, Rational>& bid() const { return bid_; }

  /// Agents owning at least one edge, in lexicographic order.
  std::vector<AgentId> agents() const;

  std::optional<std::size_t> nodeIndex(const NodeId& node) const;
  std::optional<std::size_t> edgeIndex(const EdgeId& edge) const;
  /// Index of the (first) edge owned by an agent.
  std::optional<std::size_t> edgeOfAgent(const AgentId& agent) const;

  /// Tail and head node indices of an edge; nullopt when an endpoint is unknown.
  std::optional<std::size_t> tailIndex(std::size_t edge) const { return tails_[edge]; }
  std::optional<std::size_t> headIndex(std::size_t edge) const { return heads_[edge]; }

  /// Copy with declared bids replaced by the given profile.
  Network withBids(BidProfile bids) const;
  /// Copy with a single agent's declared bid replaced.
  Network withBid(const AgentId& agent, const Rational& value) const;
  /// Copy whose declared bids equal the true costs.
  Network truthful() const;

  friend bool operator==(const Network& lhs, const Network& rhs) {
    return lhs.nodes_ == rhs.nodes_ && lhs.edges_ == rhs.edges_ && lhs.source_ == rhs.source_ &&
           lhs.sink_ == rhs.sink_ && lhs.trueCost_ == rhs.trueCost_ && lhs.bid_ == rhs.bid_;
  }

 private:
  void index();

  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  NodeId source_;
  NodeId sink_;
  std::map<AgentId, Rational> trueCost_;
  std::map<AgentId, Rational> bid_;

  std::map<NodeId, std::size_t> nodeIndex_;
  std::map<EdgeId, std::size_t> edgeIndex_;
  std::map<AgentId, std::size_t> agentEdge_;
  std::vector<std::optional<std::size_t>> tails_;
  std::vector<std::optional<std::size_t>> heads_;
};

/// Per-edge cost assignment used by the path algorithms. A missing entry
/// (nullopt) means the edge is removed.
using EdgeCosts = std::vector<std::optional<Rational>>;

/// Which cost each edge carries during a path computation.
class CostFunction {
 public:
  enum class Base { bid, trueCost };

  static CostFunction bids() { return CostFunction(Base::bid, {}); }
  static CostFunction trueCosts() { return CostFunction(Base::trueCost, {}); }
  /// Agent-level overrides on top of a base; nullopt removes the agent's edge.
  static CostFunction overrides(std::map<AgentId, std::optional<Rational>> values, Base base = Base::bid) {
    return CostFunction(base, std::move(values));
  }

  /// Resolves to one entry per edge. Throws InvalidArgumentError if an
  /// owner has no cost under the base.
  EdgeCosts resolve(const Network& network) const;

 private:
  CostFunction(Base base, std::map<AgentId, std::optional<Rational>> values)
      : base_(base), overrides_(std::move(values)) {}

  Base base_;
  std::map<AgentId, std::optional<Rational>> overrides_;
};

}  // namespace pathauction
