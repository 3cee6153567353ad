#include <algorithm>
#include <numeric>

#include "pathauction/errors.hpp"
#include "pathauction/mechanisms.hpp"

namespace pathauction {

std::string toString(DistributionRule::Kind kind) {
  switch (kind) {
    case DistributionRule::Kind::equalSplit: return "equal";
    case DistributionRule::Kind::reverseRank: return "reverse-rank";
    case DistributionRule::Kind::waterfall: return "waterfall";
    case DistributionRule::Kind::compound: return "compound";
  }
  return "?";
}

namespace {

using Members = std::vector<std::pair<AgentId, Rational>>;

std::map<AgentId, Rational> equalShares(const Members& members, const Rational& profit) {
  std::map<AgentId, Rational> out;
  Rational each = profit / static_cast<std::int64_t>(members.size());
  for (const auto& [agent, bid] : members) out[agent] = each;
  return out;
}

// The j-th largest bidder receives the (m-j+1)-th largest bid's fraction of
// the pool. Equal bids are ordered by agent id.
std::map<AgentId, Rational> reverseRankShares(Members members, const Rational& profit) {
  std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Rational sum(0);
  for (const auto& m : members) sum += m.second;
  std::map<AgentId, Rational> out;
  const std::size_t m = members.size();
  for (std::size_t j = 0; j < m; ++j) out[members[j].first] = profit * members[m - 1 - j].second / sum;
  return out;
}

// Everyone first gets the floor; the rest raises the lowest payments in
// lock-step. Once everybody is level, the leftover is split equally.
std::map<AgentId, Rational> waterfallShares(Members members, const Rational& profit, const Rational& floor,
                                            bool splitLeftover) {
  const auto m = static_cast<std::int64_t>(members.size());
  Rational minimum = std::min(floor, profit / m);
  std::vector<std::pair<AgentId, Rational>> pay;
  for (const auto& [agent, bid] : members) pay.emplace_back(agent, bid + minimum);
  std::sort(pay.begin(), pay.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });

  Rational pool = profit - minimum * m;
  Rational level = pay.front().second;
  std::size_t raised = 1;  // pay[0 .. raised) sit at `level`
  while (pool.isPositive()) {
    while (raised < pay.size() && pay[raised].second == level) ++raised;
    if (raised == pay.size()) break;
    const Rational width(static_cast<std::int64_t>(raised));
    Rational cost = (pay[raised].second - level) * width;
    if (cost <= pool) {
      pool -= cost;
      level = pay[raised].second;
    } else {
      level += pool / width;
      pool = 0;
    }
  }
  for (std::size_t i = 0; i < raised; ++i) pay[i].second = level;

  if (pool.isPositive()) {
    // All payments are level here.
    if (splitLeftover) {
      auto rest = equalShares(members, pool);
      for (auto& [agent, amount] : pay) amount += rest[agent];
    } else {
      Rational step = pool / m;
      for (auto& entry : pay) entry.second += step;
    }
  }

  std::map<AgentId, Rational> bids(members.begin(), members.end());
  std::map<AgentId, Rational> out;
  for (const auto& [agent, amount] : pay) out[agent] = amount - bids[agent];
  return out;
}

}  // namespace

std::map<AgentId, Rational> distribute(const DistributionRule& rule, const Members& groupBids, const Rational& profit) {
  if (groupBids.empty()) throw EmptyGroupError("cannot distribute profit to an empty group");
  if (!profit.isPositive()) throw NonpositiveProfitError("group profit must be positive, got " + profit.str());
  switch (rule.kind) {
    case DistributionRule::Kind::equalSplit:
      return equalShares(groupBids, profit);
    case DistributionRule::Kind::reverseRank:
      return reverseRankShares(groupBids, profit);
    case DistributionRule::Kind::waterfall:
    case DistributionRule::Kind::compound:
      if (!rule.delta) throw InvalidArgumentError(toString(rule.kind) + " rule requires a minimum profit delta");
      if (!rule.delta->isPositive()) throw InvalidArgumentError("minimum profit delta must be positive");
      return waterfallShares(groupBids, profit, *rule.delta, rule.kind == DistributionRule::Kind::compound);
  }
  throw InvalidArgumentError("unknown distribution rule");
}

}  // namespace pathauction
