#include "pathauction/analysis.hpp"

#include <algorithm>
#include <random>

#include "pathauction/errors.hpp"

namespace pathauction {

// ---------------------------------------------------------------------------
// Game
// ---------------------------------------------------------------------------

Game::Game(std::vector<AgentId> agents, std::vector<Rational> types, bool lowerBidsWin, std::string mechanism,
           PlayFn play)
    : agents_(std::move(agents)),
      types_(std::move(types)),
      lowerBidsWin_(lowerBidsWin),
      mechanism_(std::move(mechanism)),
      play_(std::move(play)) {
  if (agents_.size() != types_.size()) throw InvalidArgumentError("one type per agent required");
  if (!std::is_sorted(agents_.begin(), agents_.end())) throw InvalidArgumentError("agents must be sorted");
}

std::size_t Game::agentIndex(const AgentId& agent) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
  if (it == agents_.end() || *it != agent) throw InvalidArgumentError("unknown agent " + agent);
  return static_cast<std::size_t>(it - agents_.begin());
}

Game Game::path(const Network& network, const MechanismConfig& config) {
  std::vector<AgentId> agents = network.agents();
  std::vector<Rational> types;
  for (const auto& a : agents) {
    auto it = network.trueCost().find(a);
    if (it == network.trueCost().end()) throw InvalidArgumentError("no true cost for agent " + a);
    types.push_back(it->second);
  }
  auto play = [network, config, agents](std::span<const Rational> bids) -> std::optional<ProfileOutcome> {
    BidProfile profile;
    for (std::size_t i = 0; i < agents.size(); ++i) profile.emplace(agents[i], bids[i]);
    try {
      PaymentResult r = runPathMechanism(config, network, profile);
      ProfileOutcome out;
      out.mechanismUtility = r.mechanismUtility;
      for (const auto& a : agents) {
        out.selected.push_back(r.selected(a));
        out.utility.push_back(r.utility.at(a));
      }
      return out;
    } catch (const TieError&) {
      return std::nullopt;
    }
  };
  return Game(std::move(agents), std::move(types), true, toString(config.kind), std::move(play));
}

Game Game::singleItem(const std::map<AgentId, Rational>& types, const MechanismConfig& config) {
  if (!isSingleItem(config.kind)) throw InvalidArgumentError(toString(config.kind) + " is not a single-item auction");
  std::vector<AgentId> agents;
  std::vector<Rational> typeList;
  for (const auto& [a, t] : types) {
    agents.push_back(a);
    typeList.push_back(t);
  }
  auto play = [config, agents, typeList](std::span<const Rational> bids) -> std::optional<ProfileOutcome> {
    BidProfile profile;
    for (std::size_t i = 0; i < agents.size(); ++i) profile.emplace(agents[i], bids[i]);
    try {
      AuctionResult r = config.kind == MechanismKind::firstPriceSingle ? firstPriceSingle(profile, config.orientation)
                        : config.kind == MechanismKind::vickreySingle
                            ? vickreySingle(profile, config.orientation)
                            : averagedSingle(profile, config.lambda, config.orientation);
      ProfileOutcome out;
      out.mechanismUtility = auctioneerUtility(r, config.orientation);
      for (std::size_t i = 0; i < agents.size(); ++i) {
        out.selected.push_back(agents[i] == r.winner);
        out.utility.push_back(auctionUtility(r, agents[i], typeList[i], config.orientation));
      }
      return out;
    } catch (const TieError&) {
      return std::nullopt;
    }
  };
  std::string name = toString(config.kind) + (config.orientation == Orientation::forward ? "/forward" : "/reverse");
  return Game(std::move(agents), std::move(typeList), config.orientation == Orientation::reverse, std::move(name),
              std::move(play));
}

// ---------------------------------------------------------------------------
// BidGrid
// ---------------------------------------------------------------------------

BidGrid BidGrid::procurement(const std::vector<Rational>& types, std::int64_t cap, const Rational& unit) {
  if (cap < 0) throw InvalidArgumentError("grid cap must be nonnegative");
  if (!unit.isPositive()) throw InvalidArgumentError("currency unit must be positive");
  BidGrid grid;
  for (const auto& t : types) {
    std::vector<Rational> row;
    for (std::int64_t k = 0; k <= cap; ++k) row.push_back(t + unit * k);
    grid.bids.push_back(std::move(row));
  }
  grid.description = "procurement: t + k*" + unit.str() + " for k = 0.." + std::to_string(cap);
  return grid;
}

BidGrid BidGrid::forward(const std::vector<Rational>& types, const Rational& unit) {
  if (!unit.isPositive()) throw InvalidArgumentError("currency unit must be positive");
  BidGrid grid;
  for (const auto& t : types) {
    Rational steps = t / unit;
    if (!steps.isInteger() || !steps.isPositive()) {
      throw InvalidArgumentError("type " + t.str() + " is not a positive multiple of the unit " + unit.str());
    }
    std::vector<Rational> row;
    for (std::int64_t k = 1; k <= steps.numerator(); ++k) row.push_back(unit * k);
    grid.bids.push_back(std::move(row));
  }
  grid.description = "forward: k*" + unit.str() + " for k = 1..t/" + unit.str();
  return grid;
}

BidGrid BidGrid::standard(const Game& game, std::int64_t cap, const Rational& unit) {
  return game.lowerBidsWin() ? procurement(game.types(), cap, unit) : forward(game.types(), unit);
}

std::uint64_t BidGrid::profileCount() const {
  std::uint64_t count = 1;
  for (const auto& row : bids) {
    count *= row.size();
    if (count > kProfileLimit) return kProfileLimit + 1;
  }
  return count;
}

std::string toString(StrategyMode mode) {
  switch (mode) {
    case StrategyMode::undominatedBestResponse: return "undominated";
    case StrategyMode::allBestResponses: return "all";
    case StrategyMode::dominantOnly: return "dominant";
  }
  return "?";
}

std::optional<StrategyMode> parseStrategyMode(const std::string& name) {
  for (auto m : {StrategyMode::undominatedBestResponse, StrategyMode::allBestResponses, StrategyMode::dominantOnly}) {
    if (toString(m) == name) return m;
  }
  return std::nullopt;
}

std::string toString(Consistency c) {
  switch (c) {
    case Consistency::stronglyConsistent: return "strongly-consistent";
    case Consistency::consistent: return "consistent";
    case Consistency::partiallyConsistent: return "partially-consistent";
    case Consistency::impossibleConsistent: return "impossible-consistent";
  }
  return "?";
}

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::holdsWithCounterexampleBudgetExhausted: return "holds-budget-exhausted";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ProfileTable
// ---------------------------------------------------------------------------

ProfileTable::ProfileTable(Game game, BidGrid grid) : game_(std::move(game)), grid_(std::move(grid)) {
  const std::size_t n = game_.agents().size();
  if (grid_.bids.size() != n) throw InvalidArgumentError("grid must list bids for every agent");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = grid_.bids[i];
    if (row.empty()) throw InvalidArgumentError("empty bid list for agent " + game_.agents()[i]);
    if (!std::is_sorted(row.begin(), row.end()) || std::adjacent_find(row.begin(), row.end()) != row.end()) {
      throw InvalidArgumentError("bid list of " + game_.agents()[i] + " must be strictly increasing");
    }
  }
  const std::uint64_t count = grid_.profileCount();
  if (count > kProfileLimit) {
    throw GridTooLargeError("bid grid exceeds " + std::to_string(kProfileLimit) + " profiles");
  }
  strides_.assign(n, 1);
  for (std::size_t i = n; i-- > 1;) strides_[i - 1] = strides_[i] * grid_.bids[i].size();
  outcomes_.reserve(count);
  for (std::size_t index = 0; index < count; ++index) {
    Profile p = profileAt(index);
    outcomes_.push_back(game_.play(p));
  }
}

std::size_t ProfileTable::admissibleCount() const {
  return static_cast<std::size_t>(std::count_if(outcomes_.begin(), outcomes_.end(), [](const auto& o) { return o.has_value(); }));
}

Profile ProfileTable::profileAt(std::size_t index) const {
  Profile p;
  p.reserve(strides_.size());
  for (std::size_t i = 0; i < strides_.size(); ++i) {
    p.push_back(grid_.bids[i][(index / strides_[i]) % grid_.bids[i].size()]);
  }
  return p;
}

std::size_t ProfileTable::indexOf(const std::vector<std::size_t>& digits) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) index += digits[i] * strides_[i];
  return index;
}

std::size_t ProfileTable::gridIndex(std::size_t agent, const Rational& bid) const {
  const auto& row = grid_.bids.at(agent);
  auto it = std::lower_bound(row.begin(), row.end(), bid);
  if (it == row.end() || *it != bid) {
    throw InvalidArgumentError("bid " + bid.str() + " is not on the grid of " + game_.agents()[agent]);
  }
  return static_cast<std::size_t>(it - row.begin());
}

std::vector<std::vector<Rational>> ProfileTable::utilityMatrix(std::size_t agent,
                                                                std::vector<bool>* opponentPlayable) const {
  const std::size_t width = grid_.bids[agent].size();
  const std::size_t opponents = outcomes_.size() / width;
  std::vector<std::vector<Rational>> u(width, std::vector<Rational>(opponents, Rational(0)));
  if (opponentPlayable) opponentPlayable->assign(opponents, false);
  std::size_t o = 0;
  for (std::size_t index = 0; index < outcomes_.size(); ++index) {
    if ((index / strides_[agent]) % width != 0) continue;
    for (std::size_t b = 0; b < width; ++b) {
      const auto& outcome = outcomes_[index + b * strides_[agent]];
      if (!outcome) continue;
      u[b][o] = outcome->utility[agent];
      if (opponentPlayable) (*opponentPlayable)[o] = true;
    }
    ++o;
  }
  return u;
}

Rational ProfileTable::selectionProbability(std::size_t agent, const Rational& bid) const {
  const std::size_t b = gridIndex(agent, bid);
  const std::size_t width = grid_.bids[agent].size();
  std::int64_t admissible = 0;
  std::int64_t chosen = 0;
  for (std::size_t index = 0; index < outcomes_.size(); ++index) {
    if ((index / strides_[agent]) % width != b) continue;
    const auto& outcome = outcomes_[index];
    if (!outcome) continue;
    ++admissible;
    if (outcome->selected[agent]) ++chosen;
  }
  if (admissible == 0) return 0;
  return Rational(chosen, admissible);
}

std::vector<Rational> ProfileTable::bestResponseSet(std::size_t agent, const Profile& opponents) const {
  if (opponents.size() != strides_.size()) throw InvalidArgumentError("opponent profile has the wrong length");
  std::vector<std::size_t> digits(strides_.size(), 0);
  for (std::size_t i = 0; i < strides_.size(); ++i) {
    if (i != agent) digits[i] = gridIndex(i, opponents[i]);
  }
  const std::size_t base = indexOf(digits);
  const auto& row = grid_.bids[agent];
  std::vector<Rational> utility;
  for (std::size_t b = 0; b < row.size(); ++b) {
    const auto& outcome = outcomes_[base + b * strides_[agent]];
    utility.push_back(outcome ? outcome->utility[agent] : Rational(0));
  }
  const Rational best = *std::max_element(utility.begin(), utility.end());
  std::vector<Rational> out;
  for (std::size_t b = 0; b < row.size(); ++b) {
    if (utility[b] == best) out.push_back(row[b]);
  }
  return out;
}

std::vector<Rational> ProfileTable::obs(std::size_t agent, StrategyMode mode) const {
  std::vector<bool> playable;
  const auto u = utilityMatrix(agent, &playable);
  const auto& row = grid_.bids[agent];
  const std::size_t width = row.size();
  const std::size_t opponents = playable.size();

  std::vector<bool> someBest(width, false);
  std::vector<bool> alwaysBest(width, true);
  bool anyPlayable = false;
  for (std::size_t o = 0; o < opponents; ++o) {
    if (!playable[o]) continue;
    anyPlayable = true;
    Rational best = u[0][o];
    for (std::size_t b = 1; b < width; ++b) best = std::max(best, u[b][o]);
    for (std::size_t b = 0; b < width; ++b) {
      if (u[b][o] == best) {
        someBest[b] = true;
      } else {
        alwaysBest[b] = false;
      }
    }
  }
  if (!anyPlayable) return {};

  std::vector<bool> keep(width, false);
  switch (mode) {
    case StrategyMode::allBestResponses:
      keep = someBest;
      break;
    case StrategyMode::dominantOnly:
      keep = alwaysBest;
      break;
    case StrategyMode::undominatedBestResponse:
      for (std::size_t b = 0; b < width; ++b) {
        if (!someBest[b]) continue;
        bool dominated = false;
        for (std::size_t c = 0; c < width && !dominated; ++c) {
          if (c == b) continue;
          bool atLeast = true;
          bool strictly = false;
          for (std::size_t o = 0; o < opponents && atLeast; ++o) {
            if (u[c][o] < u[b][o]) atLeast = false;
            if (u[c][o] > u[b][o]) strictly = true;
          }
          dominated = atLeast && strictly;
        }
        keep[b] = !dominated;
      }
      break;
  }

  if (mode != StrategyMode::allBestResponses) {
    // Bids with identical payoffs against every opponent profile collapse to
    // the one nearest the agent's type.
    const Rational& type = game_.types()[agent];
    auto distance = [&](std::size_t b) { return row[b] > type ? row[b] - type : type - row[b]; };
    for (std::size_t b = 0; b < width; ++b) {
      if (!keep[b]) continue;
      for (std::size_t c = 0; c < width; ++c) {
        if (c == b || !keep[c] || u[c] != u[b]) continue;
        if (distance(c) < distance(b)) {
          keep[b] = false;
          break;
        }
      }
    }
  }

  std::vector<Rational> out;
  for (std::size_t b = 0; b < width; ++b) {
    if (keep[b]) out.push_back(row[b]);
  }
  return out;
}

std::vector<Profile> ProfileTable::oab(StrategyMode mode) const {
  const std::size_t n = strides_.size();
  std::vector<std::vector<std::size_t>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& bid : obs(i, mode)) choices[i].push_back(gridIndex(i, bid));
    if (choices[i].empty()) return {};
  }
  std::vector<Profile> out;
  std::vector<std::size_t> pos(n, 0);
  for (;;) {
    std::vector<std::size_t> digits(n);
    for (std::size_t i = 0; i < n; ++i) digits[i] = choices[i][pos[i]];
    std::size_t index = indexOf(digits);
    if (outcomes_[index]) out.push_back(profileAt(index));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < choices[i].size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Profile> ProfileTable::aes() const {
  std::optional<Rational> best;
  for (const auto& outcome : outcomes_) {
    if (outcome && (!best || outcome->mechanismUtility > *best)) best = outcome->mechanismUtility;
  }
  if (!best) throw InadmissibleInstanceError("every profile of the grid violates a mechanism precondition");
  std::vector<Profile> out;
  for (std::size_t index = 0; index < outcomes_.size(); ++index) {
    if (outcomes_[index] && outcomes_[index]->mechanismUtility == *best) out.push_back(profileAt(index));
  }
  return out;
}

ConsistencyReport ProfileTable::ioa(StrategyMode mode) const {
  ConsistencyReport report;
  report.agents = game_.agents();
  report.mechanism = game_.mechanism();
  report.grid = grid_.description;
  report.mode = mode;
  for (std::size_t i = 0; i < report.agents.size(); ++i) report.obs[report.agents[i]] = obs(i, mode);
  report.oab = oab(mode);
  report.aes = aes();
  std::set_intersection(report.oab.begin(), report.oab.end(), report.aes.begin(), report.aes.end(),
                        std::back_inserter(report.ioa));
  return report;
}

Rational selectionProbability(const Game& game, const BidGrid& grid, const AgentId& agent, const Rational& bid) {
  return ProfileTable(game, grid).selectionProbability(game.agentIndex(agent), bid);
}

std::vector<Rational> bestResponseSet(const Game& game, const BidGrid& grid, const AgentId& agent,
                                      const Profile& opponents) {
  return ProfileTable(game, grid).bestResponseSet(game.agentIndex(agent), opponents);
}

std::vector<Rational> obs(const Game& game, const BidGrid& grid, const AgentId& agent, StrategyMode mode) {
  return ProfileTable(game, grid).obs(game.agentIndex(agent), mode);
}

std::vector<Profile> oab(const Game& game, const BidGrid& grid, StrategyMode mode) {
  return ProfileTable(game, grid).oab(mode);
}

std::vector<Profile> aes(const Game& game, const BidGrid& grid) { return ProfileTable(game, grid).aes(); }

ConsistencyReport ioa(const Game& game, const BidGrid& grid, StrategyMode mode) {
  return ProfileTable(game, grid).ioa(mode);
}

Consistency classifyConsistency(const std::vector<ConsistencyReport>& reports) {
  if (reports.empty()) throw InvalidArgumentError("classification needs at least one instance");
  const auto nonempty = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.ioaNonempty(); });
  if (nonempty == 0) return Consistency::impossibleConsistent;
  if (static_cast<std::size_t>(nonempty) < reports.size()) return Consistency::partiallyConsistent;
  const bool strong =
      std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ioa == r.oab || r.ioa == r.aes; });
  return strong ? Consistency::stronglyConsistent : Consistency::consistent;
}

// ---------------------------------------------------------------------------
// Property checkers
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kWitnessLimit = 8;

std::map<AgentId, Rational> labelled(const std::vector<AgentId>& agents, const Profile& profile) {
  std::map<AgentId, Rational> out;
  for (std::size_t i = 0; i < agents.size(); ++i) out.emplace(agents[i], profile[i]);
  return out;
}

void addWitness(PropertyReport& report, Witness w) {
  if (report.witnesses.size() < kWitnessLimit) report.witnesses.push_back(std::move(w));
}

void fail(PropertyReport& report, Witness w) {
  report.verdict = Verdict::fails;
  addWitness(report, std::move(w));
}

std::string pathList(const Network& network, const std::vector<Path>& paths) {
  std::string out;
  for (const auto& p : paths) {
    if (!out.empty()) out += "; ";
    out += describe(network, p) + " (" + p.cost.str() + ")";
  }
  return out;
}

Rational groupTotal(const PaymentResult& result, int group) {
  Rational total(0);
  for (const auto& [agent, q] : result.group) {
    if (q == group) total += result.payment.at(agent);
  }
  return total;
}

std::vector<std::vector<std::size_t>> pathSequence(const RankedPaths& ranked) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : ranked.paths) out.push_back(p.edges);
  return out;
}

bool strictlyIncreasing(const RankedPaths& ranked) {
  for (std::size_t j = 1; j < ranked.size(); ++j) {
    if (ranked[j].cost <= ranked[j - 1].cost) return false;
  }
  return true;
}

}  // namespace

PropertyReport checkPartlyTruthful(const ProfileTable& table) {
  PropertyReport report;
  report.property = "partly-truthful";
  const Game& game = table.game();
  const auto& agents = game.agents();
  const bool procurement = game.lowerBidsWin();

  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& row = table.grid().bids[i];
    const Rational& type = game.types()[i];
    if (!std::binary_search(row.begin(), row.end(), type)) {
      fail(report, {{}, {}, agents[i] + ": true cost " + type.str() + " is not on the bid grid"});
      continue;
    }
    std::vector<Rational> pr;
    for (const auto& b : row) pr.push_back(table.selectionProbability(i, b));
    const Rational truthful = table.selectionProbability(i, type);
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (pr[b] > truthful) {
        fail(report, {{{agents[i], row[b]}}, {},
                      agents[i] + ": pr(" + row[b].str() + ") = " + pr[b].str() + " exceeds pr(type) = " + truthful.str()});
      }
      if (b == 0) continue;
      const bool broken = procurement ? pr[b] > pr[b - 1] : pr[b] < pr[b - 1];
      if (broken) {
        fail(report, {{{agents[i], row[b]}}, {},
                      agents[i] + ": pr moves toward higher selection away from the type (" + row[b - 1].str() + " -> " +
                          row[b].str() + ": " + pr[b - 1].str() + " -> " + pr[b].str() + ")"});
      }
    }
  }

  for (std::size_t index = 0; index < table.size(); ++index) {
    const auto& outcome = table.outcome(index);
    if (!outcome) continue;
    Profile profile;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (!outcome->selected[i]) continue;
      if (profile.empty()) profile = table.profileAt(index);
      const Rational& type = game.types()[i];
      const bool farSide = procurement ? profile[i] >= type : profile[i] <= type;
      if (farSide && !outcome->utility[i].isPositive()) {
        fail(report, {labelled(agents, profile), {},
                      agents[i] + " is selected with utility " + outcome->utility[i].str()});
      }
    }
  }
  report.note = "grid: " + table.grid().description + "; mechanism: " + game.mechanism();
  return report;
}

PropertyReport checkCritical(const MechanismConfig& config, const Network& network, const BidProfile& bids,
                             const Rational& unit) {
  if (!unit.isPositive()) throw InvalidArgumentError("currency unit must be positive");
  PropertyReport report;
  report.property = "critical";
  PaymentResult result = runPathMechanism(config, network, bids);
  RankedPaths all = enumeratePaths(network.withBids(bids));
  const Rational budget = result.total;
  std::vector<Path> atBudget;
  std::vector<Path> belowBudget;
  for (const auto& p : all.paths) {
    if (p.cost <= budget) atBudget.push_back(p);
    if (p.cost <= budget - unit) belowBudget.push_back(p);
  }
  const bool holds = belowBudget.size() == 1 && atBudget.size() >= 2;
  report.verdict = holds ? Verdict::holds : Verdict::fails;
  Witness w{bids, result.payment,
            std::to_string(atBudget.size()) + " path(s) affordable at total " + budget.str() + ": " +
                pathList(network, atBudget) + " | " + std::to_string(belowBudget.size()) + " at " +
                (budget - unit).str()};
  report.witnesses.push_back(std::move(w));
  report.note = "mechanism: " + toString(config.kind);
  return report;
}

PropertyReport checkStronglyCritical(const Network& network, const BidProfile& bids, const DistributionRule& rule,
                                     const Rational& unit) {
  if (!unit.isPositive()) throw InvalidArgumentError("currency unit must be positive");
  PropertyReport report;
  report.property = "strongly-critical";
  PaymentResult x = xMechanism(network, bids, rule);
  Network net = network.withBids(bids);
  RankedPaths ranked = rankForGroups(net);
  GroupAssignment groups = classifyGroups(net, ranked);

  for (int q : groups.presentGroups) {
    Rational paid(0);
    Rational rest(0);
    for (const auto& [agent, g] : groups.groupOf) {
      if (g <= q) {
        paid += x.payment.at(agent);
      } else {
        rest += bids.at(agent);
      }
    }
    const Path& substitute = ranked[static_cast<std::size_t>(q)];
    const bool identity = paid == substitute.cost - rest;
    const bool affordable = paid + unit + rest > substitute.cost;
    std::string detail = "groups <= " + std::to_string(q) + ": paid " + paid.str() + ", substitute " +
                         describe(net, substitute) + " costs " + substitute.cost.str() + ", remaining bids " +
                         rest.str();
    if (!identity || !affordable) {
      fail(report, {bids, x.payment, detail + (identity ? "; one more unit does not reach it" : "; identity broken")});
    } else {
      addWitness(report, {bids, x.payment, detail});
    }
  }
  return report;
}

PerturbationOutcome checkGroupPerturbation(const Network& network, const BidProfile& bids,
                                           const DistributionRule& rule, const BidProfile& groupBids) {
  PaymentResult base = xMechanism(network, bids, rule);
  std::optional<int> group;
  for (const auto& [agent, bid] : groupBids) {
    auto it = base.group.find(agent);
    if (it == base.group.end()) throw InvalidArgumentError("agent " + agent + " is not on the cheapest path");
    if (group && *group != it->second) throw InvalidArgumentError("perturbed agents span more than one group");
    if (!bid.isPositive()) throw InvalidArgumentError("perturbed bid of " + agent + " must be positive");
    group = it->second;
  }
  if (!group) return PerturbationOutcome::preserved;

  BidProfile moved = bids;
  for (const auto& [agent, bid] : groupBids) moved[agent] = bid;
  RankedPaths before = enumeratePaths(network.withBids(bids));
  RankedPaths after = enumeratePaths(network.withBids(moved));
  if (pathSequence(before) != pathSequence(after) || !strictlyIncreasing(after)) return PerturbationOutcome::rejected;
  PaymentResult changed;
  try {
    changed = xMechanism(network, moved, rule);
  } catch (const TieError&) {
    return PerturbationOutcome::rejected;
  }
  return groupTotal(base, *group) == groupTotal(changed, *group) ? PerturbationOutcome::preserved
                                                                 : PerturbationOutcome::violated;
}

PropertyReport checkGroupTruthfulness(const Network& network, const BidProfile& bids, const DistributionRule& rule,
                                      int trials, std::uint64_t seed) {
  if (trials < 0) throw InvalidArgumentError("trial count must be nonnegative");
  PropertyReport report;
  report.property = "group-truthful";
  PaymentResult base = xMechanism(network, bids, rule);
  std::map<int, std::vector<AgentId>> members;
  for (const auto& [agent, q] : base.group) members[q].push_back(agent);
  std::vector<int> present;
  for (const auto& [q, agents] : members) present.push_back(q);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(-4, 4);
  std::uniform_int_distribution<std::size_t> pick(0, present.size() - 1);
  int accepted = 0;
  int rejected = 0;
  for (int t = 0; t < trials; ++t) {
    const int q = present[pick(rng)];
    BidProfile groupBids;
    for (const auto& agent : members[q]) {
      Rational next = bids.at(agent) + Rational(step(rng), 2);
      groupBids[agent] = next.isPositive() ? next : bids.at(agent);
    }
    switch (checkGroupPerturbation(network, bids, rule, groupBids)) {
      case PerturbationOutcome::preserved:
        ++accepted;
        break;
      case PerturbationOutcome::rejected:
        ++rejected;
        break;
      case PerturbationOutcome::violated: {
        BidProfile moved = bids;
        for (const auto& [agent, bid] : groupBids) moved[agent] = bid;
        fail(report, {moved, xMechanism(network, moved, rule).payment,
                      "group " + std::to_string(q) + " total moved from " + groupTotal(base, q).str()});
        break;
      }
    }
  }
  if (report.verdict == Verdict::holds) report.verdict = Verdict::holdsWithCounterexampleBudgetExhausted;
  report.note = std::to_string(trials) + " trials (seed " + std::to_string(seed) + "): " + std::to_string(accepted) +
                " order-preserving, " + std::to_string(rejected) + " rejected as order-changing";
  return report;
}

PropertyReport checkVcgTruthful(const Network& network, std::int64_t cap, const Rational& unit) {
  PropertyReport report;
  report.property = "vcg-truthful";
  MechanismConfig config;
  config.kind = MechanismKind::vcg;
  Game game = Game::path(network, config);
  ProfileTable table(game, BidGrid::procurement(game.types(), cap, unit));
  const auto& agents = game.agents();
  for (std::size_t index = 0; index < table.size(); ++index) {
    const Profile profile = table.profileAt(index);
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (profile[i] != game.types()[i]) continue;  // visit each opponent profile once, at the truthful bid
      const auto best = table.bestResponseSet(i, profile);
      if (!std::binary_search(best.begin(), best.end(), game.types()[i])) {
        Profile deviation = profile;
        deviation[i] = best.front();
        fail(report, {labelled(agents, deviation), {},
                      agents[i] + " gains by bidding " + best.front().str() + " instead of " +
                          game.types()[i].str()});
      }
    }
  }
  report.note = "grid: " + table.grid().description + ", " + std::to_string(table.size()) + " profiles";
  return report;
}

PropertyReport checkDegenerateVickrey(const Network& network, const BidProfile& bids, const DistributionRule& rule) {
  PropertyReport report;
  report.property = "degenerate-vickrey";
  Network net = network.withBids(bids);
  RankedPaths ranked = rankPaths(net, CostFunction::bids(), 2);
  if (ranked[0].edges.size() != 1) {
    throw InvalidArgumentError("the cheapest path has " + std::to_string(ranked[0].edges.size()) +
                               " edges; the comparison needs a single-edge cheapest path");
  }
  if (ranked.size() < 2) throw InsufficientPathsError("a second path is required");
  const AgentId agent = net.edges()[ranked[0].edges.front()].owner;
  PaymentResult x = xMechanism(network, bids, rule);
  PaymentResult vcg = vcgPath(network, bids);
  BidProfile pathBids{{"o1", ranked[0].cost}, {"o2", ranked[1].cost}};
  AuctionResult vickrey = vickreySingle(pathBids, Orientation::reverse);

  const Rational& px = x.payment.at(agent);
  const Rational& pv = vcg.payment.at(agent);
  std::string detail = agent + ": x " + px.str() + ", vcg " + pv.str() + ", vickrey " + vickrey.payment.str();
  if (px == pv && pv == vickrey.payment) {
    addWitness(report, {bids, x.payment, detail});
  } else {
    fail(report, {bids, x.payment, detail});
  }
  return report;
}

}  // namespace pathauction
