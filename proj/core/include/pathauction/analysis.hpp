#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathauction/mechanisms.hpp"
#include "pathauction/network.hpp"

namespace pathauction {

/// One bid per agent, aligned with Game::agents().
using Profile = std::vector<Rational>;

/// What a single bid profile yields under a mechanism.
struct ProfileOutcome {
  std::vector<bool> selected;
  std::vector<Rational> utility;
  Rational mechanismUtility;
};

/// A finite game: agents (lexicographic), their types, and a mechanism
/// evaluated on full bid profiles. play() returns nullopt for a profile that
/// violates a mechanism precondition (a tie).
class Game {
 public:
  using PlayFn = std::function<std::optional<ProfileOutcome>(std::span<const Rational>)>;

  Game(std::vector<AgentId> agents, std::vector<Rational> types, bool lowerBidsWin, std::string mechanism,
       PlayFn play);

  /// Procurement game over a network; types are the network's true costs.
  static Game path(const Network& network, const MechanismConfig& config);
  /// Single-item auction among bidders with the given types.
  static Game singleItem(const std::map<AgentId, Rational>& types, const MechanismConfig& config);

  const std::vector<AgentId>& agents() const { return agents_; }
  const std::vector<Rational>& types() const { return types_; }
  /// true in procurement (reverse) settings.
  bool lowerBidsWin() const { return lowerBidsWin_; }
  const std::string& mechanism() const { return mechanism_; }
  std::size_t agentIndex(const AgentId& agent) const;

  std::optional<ProfileOutcome> play(std::span<const Rational> profile) const { return play_(profile); }

 private:
  std::vector<AgentId> agents_;
  std::vector<Rational> types_;
  bool lowerBidsWin_;
  std::string mechanism_;
  PlayFn play_;
};

inline constexpr std::uint64_t kProfileLimit = 1'000'000;

/// Finite, strictly increasing bid lists per agent.
struct BidGrid {
  std::vector<std::vector<Rational>> bids;
  std::string description;

  /// {t, t+u, ..., t+cap*u} per agent.
  static BidGrid procurement(const std::vector<Rational>& types, std::int64_t cap, const Rational& unit = 1);
  /// {u, 2u, ..., t} per agent (t must be a multiple of u).
  static BidGrid forward(const std::vector<Rational>& types, const Rational& unit = 1);
  /// The convention matching the game's orientation.
  static BidGrid standard(const Game& game, std::int64_t cap, const Rational& unit = 1);

  /// Product size, saturating at kProfileLimit + 1.
  std::uint64_t profileCount() const;
};

enum class StrategyMode { undominatedBestResponse, allBestResponses, dominantOnly };

std::string toString(StrategyMode mode);
std::optional<StrategyMode> parseStrategyMode(const std::string& name);

enum class Consistency { stronglyConsistent, consistent, partiallyConsistent, impossibleConsistent };

std::string toString(Consistency c);

struct ConsistencyReport {
  std::vector<AgentId> agents;
  std::string mechanism;
  std::string grid;
  StrategyMode mode = StrategyMode::undominatedBestResponse;
  std::map<AgentId, std::vector<Rational>> obs;
  std::vector<Profile> oab;
  std::vector<Profile> aes;
  std::vector<Profile> ioa;
  bool ioaNonempty() const { return !ioa.empty(); }
};

/// Every profile of a grid evaluated once; all set computations read from here.
/// Sets are returned sorted (bids ascending, profiles lexicographic).
class ProfileTable {
 public:
  /// Throws GridTooLargeError past kProfileLimit profiles.
  ProfileTable(Game game, BidGrid grid);

  const Game& game() const { return game_; }
  const BidGrid& grid() const { return grid_; }
  std::size_t size() const { return outcomes_.size(); }
  std::size_t admissibleCount() const;

  Profile profileAt(std::size_t index) const;
  std::size_t indexOf(const std::vector<std::size_t>& digits) const;
  const std::optional<ProfileOutcome>& outcome(std::size_t index) const { return outcomes_[index]; }

  Rational selectionProbability(std::size_t agent, const Rational& bid) const;
  /// Maximizers of the agent's utility against fixed opponent bids; tie
  /// profiles count as not selected with utility 0. The agent's own entry
  /// of `opponents` is ignored.
  std::vector<Rational> bestResponseSet(std::size_t agent, const Profile& opponents) const;
  std::vector<Rational> obs(std::size_t agent, StrategyMode mode) const;
  std::vector<Profile> oab(StrategyMode mode) const;
  std::vector<Profile> aes() const;
  ConsistencyReport ioa(StrategyMode mode) const;

 private:
  std::size_t gridIndex(std::size_t agent, const Rational& bid) const;
  // utilities[b][o]: agent's utility with its b-th bid against the o-th opponent profile.
  std::vector<std::vector<Rational>> utilityMatrix(std::size_t agent, std::vector<bool>* opponentPlayable) const;

  Game game_;
  BidGrid grid_;
  std::vector<std::size_t> strides_;
  std::vector<std::optional<ProfileOutcome>> outcomes_;
};

// Free-function forms. Each builds its own table.

Rational selectionProbability(const Game& game, const BidGrid& grid, const AgentId& agent, const Rational& bid);
std::vector<Rational> bestResponseSet(const Game& game, const BidGrid& grid, const AgentId& agent,
                                      const Profile& opponents);
std::vector<Rational> obs(const Game& game, const BidGrid& grid, const AgentId& agent,
                          StrategyMode mode = StrategyMode::undominatedBestResponse);
std::vector<Profile> oab(const Game& game, const BidGrid& grid,
                         StrategyMode mode = StrategyMode::undominatedBestResponse);
std::vector<Profile> aes(const Game& game, const BidGrid& grid);
ConsistencyReport ioa(const Game& game, const BidGrid& grid,
                      StrategyMode mode = StrategyMode::undominatedBestResponse);

/// Classification relative to the supplied instances only.
Consistency classifyConsistency(const std::vector<ConsistencyReport>& reports);

// ---------------------------------------------------------------------------
// Property checkers
// ---------------------------------------------------------------------------

enum class Verdict { holds, fails, holdsWithCounterexampleBudgetExhausted };

std::string toString(Verdict v);

struct Witness {
  std::map<AgentId, Rational> profile;
  std::map<AgentId, Rational> payment;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::holds;
  std::vector<Witness> witnesses;
  std::string note;

  bool passed() const { return verdict != Verdict::fails; }
};

/// Truthful bid maximizes selection probability, selection probability is
/// monotone away from the type, and every selected agent bidding on the
/// far side of its type earns positive utility.
PropertyReport checkPartlyTruthful(const ProfileTable& table);

/// With T the total payment: exactly one path fits a budget of T - unit and
/// at least two fit T.
PropertyReport checkCritical(const MechanismConfig& config, const Network& network, const BidProfile& bids,
                             const Rational& unit = 1);

/// X mechanism: for each present-group prefix, cumulative payment equals the
/// substitute path cost minus the remaining selected bids.
PropertyReport checkStronglyCritical(const Network& network, const BidProfile& bids,
                                     const DistributionRule& rule = DistributionRule::equalSplit(),
                                     const Rational& unit = 1);

/// Random within-group bid perturbations that keep the ranked path list
/// unchanged must leave each group's total payment unchanged.
PropertyReport checkGroupTruthfulness(const Network& network, const BidProfile& bids, const DistributionRule& rule,
                                      int trials, std::uint64_t seed);

enum class PerturbationOutcome {
  /// Ranked path list unchanged and the group's total payment unchanged.
  preserved,
  /// Ranked path list unchanged but the group's total payment moved.
  violated,
  /// The perturbation reorders the ranked paths or creates a tie.
  rejected,
};

/// Replaces the bids of some members of one X group and compares that
/// group's total payment against the baseline.
PerturbationOutcome checkGroupPerturbation(const Network& network, const BidProfile& bids,
                                           const DistributionRule& rule, const BidProfile& groupBids);

/// Exhaustive: under VCG, the truthful bid is a best response to every
/// opponent profile of the procurement grid.
PropertyReport checkVcgTruthful(const Network& network, std::int64_t cap, const Rational& unit = 1);

/// When the cheapest path is one edge, X, VCG and a reverse Vickrey auction
/// over whole paths pay the same.
PropertyReport checkDegenerateVickrey(const Network& network, const BidProfile& bids,
                                      const DistributionRule& rule = DistributionRule::equalSplit());

}  // namespace pathauction
