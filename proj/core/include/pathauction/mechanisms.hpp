#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pathauction/network.hpp"
#include "pathauction/paths.hpp"

namespace pathauction {

// ---------------------------------------------------------------------------
// Single-item auctions
// ---------------------------------------------------------------------------

/// forward: the highest bid wins (the bidder pays).
/// reverse: the lowest bid wins (the bidder is paid).
enum class Orientation { forward, reverse };

struct AuctionResult {
  AgentId winner;
  Rational winningBid;
  Rational payment;
};

/// Utility of a participant with the given type. Losers get 0.
Rational auctionUtility(const AuctionResult& result, const AgentId& agent, const Rational& type,
                        Orientation orientation);

/// Revenue for forward auctions, minus the payment for reverse ones.
Rational auctioneerUtility(const AuctionResult& result, Orientation orientation);

AuctionResult firstPriceSingle(const BidProfile& bids, Orientation orientation);
AuctionResult vickreySingle(const BidProfile& bids, Orientation orientation);
/// Winner pays lambda * own bid + (1 - lambda) * runner-up bid.
AuctionResult averagedSingle(const BidProfile& bids, const Rational& lambda, Orientation orientation);

// ---------------------------------------------------------------------------
// Path mechanisms
// ---------------------------------------------------------------------------

struct PaymentResult {
  Path chosenPath;
  /// Every agent of the network; 0 for agents off the chosen path.
  std::map<AgentId, Rational> payment;
  /// payment - true cost for selected agents, 0 otherwise.
  std::map<AgentId, Rational> utility;
  Rational total;
  Rational mechanismUtility;
  /// Group index of each selected agent (X-family mechanisms only).
  std::map<AgentId, int> group;
  std::set<AgentId> selectedAgents;

  bool selected(const AgentId& agent) const;
};

struct GroupAssignment {
  std::map<AgentId, int> groupOf;
  std::vector<int> presentGroups;
  int hMax = 0;
};

struct GroupProfits {
  std::map<int, Rational> q;
};

/// Groups the agents of ranked[0]: an agent is in group q when it lies on
/// paths 1..q and not on path q+1. Ranks 1..hMax+1 must have strictly
/// increasing costs, and rank hMax+2 (if supplied) must not tie rank hMax+1.
GroupAssignment classifyGroups(const Network& network, const RankedPaths& ranked);

/// Q(q_j) = s(q_j + 1) - s(q_{j-1} + 1) over consecutive present groups, with
/// s(1) standing in for the predecessor of the first group.
GroupProfits groupProfits(const GroupAssignment& assignment, const RankedPaths& ranked);

/// Paths in order, as many as the X-family needs: ranks 1..hMax+1 plus one
/// more when it exists (to detect a tie at the boundary).
RankedPaths rankForGroups(const Network& network, const CostFunction& costs = CostFunction::bids());

struct DistributionRule {
  enum class Kind { equalSplit, reverseRank, waterfall, compound };

  Kind kind = Kind::equalSplit;
  /// Minimum profit per member; used by waterfall and compound.
  std::optional<Rational> delta;

  static DistributionRule equalSplit() { return {Kind::equalSplit, std::nullopt}; }
  static DistributionRule reverseRank() { return {Kind::reverseRank, std::nullopt}; }
  static DistributionRule waterfall(Rational minimum) { return {Kind::waterfall, minimum}; }
  static DistributionRule compound(Rational minimum) { return {Kind::compound, minimum}; }
};

std::string toString(DistributionRule::Kind kind);

/// Splits a group profit among its members; returns the pure profit (not the
/// payment) per member. Shares sum to profit exactly and are all positive.
std::map<AgentId, Rational> distribute(const DistributionRule& rule,
                                       const std::vector<std::pair<AgentId, Rational>>& groupBids,
                                       const Rational& profit);

PaymentResult firstPricePath(const Network& network, const BidProfile& bids);
PaymentResult vcgPath(const Network& network, const BidProfile& bids);
PaymentResult xMechanism(const Network& network, const BidProfile& bids, const DistributionRule& rule);

/// X payments when VCG would overpay X by more than the fraction threshold,
/// VCG payments otherwise.
PaymentResult tradeoff1(const Network& network, const BidProfile& bids, const Rational& threshold,
                        const DistributionRule& rule);
/// Every member of group q is paid bid + s(q+1) - s(q).
PaymentResult tradeoff2(const Network& network, const BidProfile& bids);
/// Payment an agent receives under tradeoff2 after raising its bid by
/// deltaV with everyone else fixed, from the baseline bracket schedule.
Rational tradeoff2Schedule(const Network& network, const BidProfile& bids, const AgentId& agent,
                           const Rational& deltaV);
/// Group q shares s(q+1) - s(1) equally.
PaymentResult tradeoff3(const Network& network, const BidProfile& bids);

// ---------------------------------------------------------------------------
// Dispatch by configuration
// ---------------------------------------------------------------------------

enum class MechanismKind {
  firstPriceSingle,
  vickreySingle,
  averagedSingle,
  firstPricePath,
  vcg,
  x,
  tradeoff1,
  tradeoff2,
  tradeoff3,
};

std::string toString(MechanismKind kind);
/// Accepts the CLI spellings (fp-single, vickrey-single, avg-single, fp-path,
/// vcg, x, tradeoff1, tradeoff2, tradeoff3).
std::optional<MechanismKind> parseMechanismKind(const std::string& name);
bool isSingleItem(MechanismKind kind);

struct MechanismConfig {
  MechanismKind kind = MechanismKind::x;
  DistributionRule rule;
  Rational lambda{1, 2};
  Rational threshold{0};
  Orientation orientation = Orientation::reverse;
};

/// Runs a path mechanism. Single-item kinds are accepted when every path of
/// the network is a single edge: each edge is then one reverse-auction bidder.
PaymentResult runPathMechanism(const MechanismConfig& config, const Network& network, const BidProfile& bids);

struct ComparisonRow {
  std::string mechanism;
  Rational total;
  std::map<AgentId, Rational> payment;
};

std::vector<ComparisonRow> compareMechanisms(const Network& network, const BidProfile& bids,
                                             const std::vector<MechanismConfig>& configs);

}  // namespace pathauction
