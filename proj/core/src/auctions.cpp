#include <algorithm>

#include "pathauction/errors.hpp"
#include "pathauction/mechanisms.hpp"

namespace pathauction {

namespace {

struct Ranking {
  BidProfile::const_iterator best;
  BidProfile::const_iterator second;
};

// Winner and runner-up; a tie for the win throws.
Ranking rank(const BidProfile& bids, Orientation orientation) {
  if (bids.size() < 2) throw InvalidArgumentError("a single-item auction needs at least two bidders");
  auto better = [orientation](const Rational& a, const Rational& b) {
    return orientation == Orientation::forward ? a > b : a < b;
  };
  auto best = bids.begin();
  for (auto it = std::next(bids.begin()); it != bids.end(); ++it) {
    if (better(it->second, best->second)) best = it;
  }
  auto second = bids.end();
  for (auto it = bids.begin(); it != bids.end(); ++it) {
    if (it == best) continue;
    if (it->second == best->second) throw TieError("bidders " + best->first + " and " + it->first + " tie at " + it->second.str());
    if (second == bids.end() || better(it->second, second->second)) second = it;
  }
  return {best, second};
}

}  // namespace

Rational auctionUtility(const AuctionResult& result, const AgentId& agent, const Rational& type,
                        Orientation orientation) {
  if (agent != result.winner) return 0;
  return orientation == Orientation::forward ? type - result.payment : result.payment - type;
}

Rational auctioneerUtility(const AuctionResult& result, Orientation orientation) {
  return orientation == Orientation::forward ? result.payment : -result.payment;
}

AuctionResult firstPriceSingle(const BidProfile& bids, Orientation orientation) {
  auto r = rank(bids, orientation);
  return {r.best->first, r.best->second, r.best->second};
}

AuctionResult vickreySingle(const BidProfile& bids, Orientation orientation) {
  auto r = rank(bids, orientation);
  return {r.best->first, r.best->second, r.second->second};
}

AuctionResult averagedSingle(const BidProfile& bids, const Rational& lambda, Orientation orientation) {
  if (lambda < 0 || lambda > 1) throw InvalidArgumentError("lambda must lie in [0, 1], got " + lambda.str());
  auto r = rank(bids, orientation);
  return {r.best->first, r.best->second, lambda * r.best->second + (Rational(1) - lambda) * r.second->second};
}

}  // namespace pathauction
