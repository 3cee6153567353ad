#include "pathauction/mechanisms.hpp"

#include <algorithm>
#include <set>

#include "pathauction/errors.hpp"

namespace pathauction {

bool PaymentResult::selected(const AgentId& agent) const { return selectedAgents.contains(agent); }

namespace {

// The network with its declared bids replaced by a complete, positive profile.
Network priced(const Network& network, const BidProfile& bids) {
  for (const auto& agent : network.agents()) {
    auto it = bids.find(agent);
    if (it == bids.end()) throw InvalidArgumentError("no bid for agent " + agent);
    if (!it->second.isPositive()) throw InvalidArgumentError("bid of " + agent + " must be positive");
  }
  for (const auto& [agent, bid] : bids) {
    if (!network.edgeOfAgent(agent)) throw InvalidArgumentError("bid for unknown agent " + agent);
  }
  return network.withBids(bids);
}

PaymentResult buildResult(const Network& network, Path path, const std::map<AgentId, Rational>& selectedPayments) {
  PaymentResult result;
  result.total = 0;
  for (const auto& agent : network.agents()) {
    result.payment[agent] = 0;
    result.utility[agent] = 0;
  }
  for (const auto& [agent, amount] : selectedPayments) {
    auto cost = network.trueCost().find(agent);
    if (cost == network.trueCost().end()) throw InvalidArgumentError("no true cost for agent " + agent);
    result.payment[agent] = amount;
    result.selectedAgents.insert(agent);
    result.utility[agent] = amount - cost->second;
    result.total += amount;
  }
  result.mechanismUtility = -result.total;
  result.chosenPath = std::move(path);
  return result;
}

// The two cheapest paths; throws TieError when they cost the same.
Path uniqueCheapest(const Network& network) {
  PathRanker ranker(network, CostFunction::bids().resolve(network));
  Path first = *ranker.next();
  if (auto second = ranker.next(); second && second->cost == first.cost) {
    throw TieError("the two cheapest paths both cost " + first.cost.str() + " (" + describe(network, first) +
                   " | " + describe(network, *second) + ")");
  }
  return first;
}

struct GroupedRanking {
  RankedPaths ranked;
  GroupAssignment groups;
  std::map<int, std::vector<AgentId>> members;
};

GroupedRanking groupedRanking(const Network& network) {
  GroupedRanking out;
  out.ranked = rankForGroups(network);
  out.groups = classifyGroups(network, out.ranked);
  for (const auto& [agent, q] : out.groups.groupOf) out.members[q].push_back(agent);
  return out;
}

}  // namespace

RankedPaths rankForGroups(const Network& network, const CostFunction& costs) {
  PathRanker ranker(network, costs.resolve(network));
  RankedPaths out;
  out.paths.push_back(*ranker.next());
  std::set<std::size_t> pending(out.paths[0].edges.begin(), out.paths[0].edges.end());
  while (!pending.empty()) {
    auto p = ranker.next();
    if (!p) return out;  // classifyGroups reports the shortfall
    std::erase_if(pending, [&](std::size_t e) { return !p->contains(e); });
    out.paths.push_back(std::move(*p));
  }
  if (auto extra = ranker.next()) out.paths.push_back(std::move(*extra));
  return out;
}

GroupAssignment classifyGroups(const Network& network, const RankedPaths& ranked) {
  if (ranked.size() == 0) throw InsufficientPathsError("no ranked paths supplied");
  GroupAssignment out;
  const Path& best = ranked[0];
  for (auto e : best.edges) {
    std::optional<int> q;
    for (std::size_t j = 1; j < ranked.size(); ++j) {
      if (!ranked[j].contains(e)) {
        q = static_cast<int>(j);
        break;
      }
    }
    const AgentId& agent = network.edges()[e].owner;
    if (!q) throw InsufficientPathsError("agent " + agent + " lies on every supplied path");
    out.groupOf[agent] = *q;
    out.hMax = std::max(out.hMax, *q);
  }
  std::set<int> present;
  for (const auto& [agent, q] : out.groupOf) present.insert(q);
  out.presentGroups.assign(present.begin(), present.end());

  const auto last = static_cast<std::size_t>(out.hMax);
  for (std::size_t j = 1; j <= last; ++j) {
    if (ranked[j].cost <= ranked[j - 1].cost) {
      throw TieError("ranks " + std::to_string(j) + " and " + std::to_string(j + 1) + " both cost " +
                     ranked[j].cost.str());
    }
  }
  if (ranked.size() > last + 1 && ranked[last + 1].cost == ranked[last].cost) {
    throw TieError("ranks " + std::to_string(last + 1) + " and " + std::to_string(last + 2) + " both cost " +
                   ranked[last].cost.str());
  }
  return out;
}

GroupProfits groupProfits(const GroupAssignment& assignment, const RankedPaths& ranked) {
  if (ranked.size() <= static_cast<std::size_t>(assignment.hMax)) {
    throw InsufficientPathsError("group profits need " + std::to_string(assignment.hMax + 1) + " ranked paths");
  }
  GroupProfits out;
  int previous = 0;
  for (int q : assignment.presentGroups) {
    for (int j = previous + 1; j <= q; ++j) {
      if (ranked[j].cost <= ranked[j - 1].cost) throw TieError("ranked path costs are not strictly increasing");
    }
    out.q[q] = ranked[q].cost - ranked[previous].cost;
    previous = q;
  }
  return out;
}

PaymentResult firstPricePath(const Network& network, const BidProfile& bids) {
  Network net = priced(network, bids);
  Path best = uniqueCheapest(net);
  std::map<AgentId, Rational> pay;
  for (const auto& agent : agentsOn(net, best)) pay[agent] = bids.at(agent);
  return buildResult(net, std::move(best), pay);
}

PaymentResult vcgPath(const Network& network, const BidProfile& bids) {
  Network net = priced(network, bids);
  Path best = uniqueCheapest(net);
  std::map<AgentId, Rational> pay;
  for (const auto& agent : agentsOn(net, best)) {
    pay[agent] = detourCost(net, agent, DetourMode::excluded) - detourCost(net, agent, DetourMode::zeroed);
  }
  return buildResult(net, std::move(best), pay);
}

PaymentResult xMechanism(const Network& network, const BidProfile& bids, const DistributionRule& rule) {
  Network net = priced(network, bids);
  GroupedRanking g = groupedRanking(net);
  GroupProfits profits = groupProfits(g.groups, g.ranked);
  std::map<AgentId, Rational> pay;
  for (const auto& [q, agents] : g.members) {
    std::vector<std::pair<AgentId, Rational>> groupBids;
    for (const auto& agent : agents) groupBids.emplace_back(agent, bids.at(agent));
    auto shares = distribute(rule, groupBids, profits.q.at(q));
    for (const auto& [agent, share] : shares) pay[agent] = bids.at(agent) + share;
  }
  PaymentResult result = buildResult(net, g.ranked[0], pay);
  result.group = g.groups.groupOf;
  return result;
}

PaymentResult tradeoff1(const Network& network, const BidProfile& bids, const Rational& threshold,
                        const DistributionRule& rule) {
  if (threshold < 0 || threshold > 1) throw InvalidArgumentError("threshold C must lie in [0, 1]");
  PaymentResult vcg = vcgPath(network, bids);
  PaymentResult x = xMechanism(network, bids, rule);
  Rational ratio = vcg.total.isZero() ? Rational(0) : (vcg.total - x.total) / vcg.total;
  return ratio > threshold ? x : vcg;
}

PaymentResult tradeoff2(const Network& network, const BidProfile& bids) {
  Network net = priced(network, bids);
  GroupedRanking g = groupedRanking(net);
  std::map<AgentId, Rational> pay;
  for (const auto& [agent, q] : g.groups.groupOf) {
    pay[agent] = bids.at(agent) + g.ranked[q].cost - g.ranked[q - 1].cost;
  }
  PaymentResult result = buildResult(net, g.ranked[0], pay);
  result.group = g.groups.groupOf;
  return result;
}

Rational tradeoff2Schedule(const Network& network, const BidProfile& bids, const AgentId& agent,
                           const Rational& deltaV) {
  if (deltaV < 0) throw InvalidArgumentError("bid increase must be nonnegative");
  Network net = priced(network, bids);
  GroupedRanking g = groupedRanking(net);
  auto it = g.groups.groupOf.find(agent);
  if (it == g.groups.groupOf.end()) throw NotSelectedError("agent " + agent + " is not on the cheapest path");
  const int k = it->second;
  // s(j) is the cost of rank j, 1-based.
  auto s = [&](int j) { return g.ranked[j - 1].cost; };
  const Rational& bid = bids.at(agent);
  if (deltaV <= s(k + 1) - s(k)) return s(k + 1) - s(k) + bid;
  for (int j = k - 1; j >= 1; --j) {
    if (deltaV <= s(k + 1) - s(j)) return s(k + 1) - s(j) + bid;
  }
  return 0;
}

PaymentResult tradeoff3(const Network& network, const BidProfile& bids) {
  Network net = priced(network, bids);
  GroupedRanking g = groupedRanking(net);
  std::map<AgentId, Rational> pay;
  for (const auto& [q, agents] : g.members) {
    Rational share = (g.ranked[q].cost - g.ranked[0].cost) / static_cast<std::int64_t>(agents.size());
    for (const auto& agent : agents) pay[agent] = bids.at(agent) + share;
  }
  PaymentResult result = buildResult(net, g.ranked[0], pay);
  result.group = g.groups.groupOf;
  return result;
}

std::string toString(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::firstPriceSingle: return "fp-single";
    case MechanismKind::vickreySingle: return "vickrey-single";
    case MechanismKind::averagedSingle: return "avg-single";
    case MechanismKind::firstPricePath: return "fp-path";
    case MechanismKind::vcg: return "vcg";
    case MechanismKind::x: return "x";
    case MechanismKind::tradeoff1: return "tradeoff1";
    case MechanismKind::tradeoff2: return "tradeoff2";
    case MechanismKind::tradeoff3: return "tradeoff3";
  }
  return "?";
}

std::optional<MechanismKind> parseMechanismKind(const std::string& name) {
  for (auto kind : {MechanismKind::firstPriceSingle, MechanismKind::vickreySingle, MechanismKind::averagedSingle,
                    MechanismKind::firstPricePath, MechanismKind::vcg, MechanismKind::x, MechanismKind::tradeoff1,
                    MechanismKind::tradeoff2, MechanismKind::tradeoff3}) {
    if (toString(kind) == name) return kind;
  }
  return std::nullopt;
}

bool isSingleItem(MechanismKind kind) {
  return kind == MechanismKind::firstPriceSingle || kind == MechanismKind::vickreySingle ||
         kind == MechanismKind::averagedSingle;
}

PaymentResult runPathMechanism(const MechanismConfig& config, const Network& network, const BidProfile& bids) {
  switch (config.kind) {
    case MechanismKind::firstPricePath: return firstPricePath(network, bids);
    case MechanismKind::vcg: return vcgPath(network, bids);
    case MechanismKind::x: return xMechanism(network, bids, config.rule);
    case MechanismKind::tradeoff1: return tradeoff1(network, bids, config.threshold, config.rule);
    case MechanismKind::tradeoff2: return tradeoff2(network, bids);
    case MechanismKind::tradeoff3: return tradeoff3(network, bids);
    case MechanismKind::firstPriceSingle:
    case MechanismKind::vickreySingle:
    case MechanismKind::averagedSingle: break;
  }

  if (config.orientation != Orientation::reverse) {
    throw InvalidArgumentError("single-item mechanisms run on a network only in reverse orientation");
  }
  Network net = priced(network, bids);
  for (const auto& e : net.edges()) {
    if (e.from != net.source() || e.to != net.sink()) {
      throw InvalidArgumentError("single-item mechanisms need every edge to join source and sink directly");
    }
  }
  AuctionResult auction = config.kind == MechanismKind::firstPriceSingle ? firstPriceSingle(bids, Orientation::reverse)
                          : config.kind == MechanismKind::vickreySingle
                              ? vickreySingle(bids, Orientation::reverse)
                              : averagedSingle(bids, config.lambda, Orientation::reverse);
  Path path{{*net.edgeOfAgent(auction.winner)}, auction.winningBid};
  return buildResult(net, std::move(path), {{auction.winner, auction.payment}});
}

std::vector<ComparisonRow> compareMechanisms(const Network& network, const BidProfile& bids,
                                             const std::vector<MechanismConfig>& configs) {
  std::vector<ComparisonRow> rows;
  for (const auto& config : configs) {
    PaymentResult r = runPathMechanism(config, network, bids);
    std::string name = toString(config.kind);
    if (config.kind == MechanismKind::x || config.kind == MechanismKind::tradeoff1) {
      name += "[" + toString(config.rule.kind) + "]";
    }
    rows.push_back({std::move(name), r.total, r.payment});
  }
  return rows;
}

}  // namespace pathauction
