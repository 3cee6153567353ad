#include "pathauction/network.hpp"

#include <algorithm>
#include <set>

#include "pathauction/errors.hpp"

namespace pathauction {

Network::Network(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId source, NodeId sink,
                 std::map<AgentId, Rational> trueCost, std::map<AgentId, Rational> bid)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      source_(std::move(source)),
      sink_(std::move(sink)),
      trueCost_(std::move(trueCost)),
      bid_(std::move(bid)) {
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  index();
}

void Network::index() {
  nodeIndex_.clear();
  edgeIndex_.clear();
  agentEdge_.clear();
  for (std::size_t i = 0; i < nodes_.size(); ++i) nodeIndex_.emplace(nodes_[i], i);
  tails_.assign(edges_.size(), std::nullopt);
  heads_.assign(edges_.size(), std::nullopt);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    edgeIndex_.emplace(edges_[e].id, e);
    agentEdge_.emplace(edges_[e].owner, e);
    if (auto it = nodeIndex_.find(edges_[e].from); it != nodeIndex_.end()) tails_[e] = it->second;
    if (auto it = nodeIndex_.find(edges_[e].to); it != nodeIndex_.end()) heads_[e] = it->second;
  }
}

std::vector<AgentId> Network::agents() const {
  std::set<AgentId> owners;
  for (const auto& e : edges_) owners.insert(e.owner);
  return {owners.begin(), owners.end()};
}

std::optional<std::size_t> Network::nodeIndex(const NodeId& node) const {
  if (auto it = nodeIndex_.find(node); it != nodeIndex_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Network::edgeIndex(const EdgeId& edge) const {
  if (auto it = edgeIndex_.find(edge); it != edgeIndex_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Network::edgeOfAgent(const AgentId& agent) const {
  if (auto it = agentEdge_.find(agent); it != agentEdge_.end()) return it->second;
  return std::nullopt;
}

Network Network::withBids(BidProfile bids) const {
  Network copy = *this;
  copy.bid_ = std::move(bids);
  return copy;
}

Network Network::withBid(const AgentId& agent, const Rational& value) const {
  Network copy = *this;
  copy.bid_[agent] = value;
  return copy;
}

Network Network::truthful() const { return withBids(trueCost_); }

EdgeCosts CostFunction::resolve(const Network& network) const {
  const auto& base = base_ == Base::bid ? network.bid() : network.trueCost();
  EdgeCosts costs(network.edges().size());
  for (std::size_t e = 0; e < costs.size(); ++e) {
    const AgentId& owner = network.edges()[e].owner;
    if (auto it = overrides_.find(owner); it != overrides_.end()) {
      costs[e] = it->second;
      continue;
    }
    auto it = base.find(owner);
    if (it == base.end()) {
      throw InvalidArgumentError("agent " + owner + " has no " + (base_ == Base::bid ? "bid" : "true cost"));
    }
    costs[e] = it->second;
  }
  return costs;
}

}  // namespace pathauction
