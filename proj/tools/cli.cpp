#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "pathauction/analysis.hpp"
#include "pathauction/errors.hpp"
#include "pathauction/fixtures.hpp"
#include "pathauction/io.hpp"
#include "pathauction/mechanisms.hpp"
#include "pathauction/paths.hpp"

namespace pathauction::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// A graph argument is a file, the same path with ".json" appended, or the
// name of a built-in fixture.
Network resolveGraph(const std::string& arg) {
  if (fs::is_regular_file(arg)) return loadNetwork(arg);
  if (fs::is_regular_file(arg + ".json")) return loadNetwork(arg + ".json");
  if (auto net = fixtures::byName(arg)) return *net;
  throw ParseError("no graph file or fixture named \"" + arg + "\"");
}

BidProfile resolveBids(const Network& network, const std::string& source) {
  if (source == "declared") return network.bid();
  if (source == "truthful") return network.trueCost();
  // A file may name a subset of agents; the rest keep their declared bids.
  BidProfile bids = network.bid();
  for (const auto& [agent, bid] : loadBidProfile(source)) {
    if (!bids.contains(agent)) throw ParseError("bid file names unknown agent \"" + agent + "\"");
    bids[agent] = bid;
  }
  return bids;
}

// Exact value, followed by a decimal approximation when it is fractional.
std::string shown(const Rational& r) {
  if (r.isInteger()) return r.str();
  std::ostringstream os;
  os << r.str() << " ≈" << std::setprecision(6) << r.toDouble();
  return os.str();
}

std::vector<Rational> parseList(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw ParseError("empty list \"" + text + "\"");
  return out;
}

std::string joinProfile(const Profile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
  return s + ")";
}

void printTable(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  // Display width: count code points, not bytes, so "≈" lines up.
  auto columns = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], columns(row[i]));
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - columns(row[i]) + 2, ' ');
    }
    out << line << "\n";
  }
}

struct Options {
  std::string graph;
  std::vector<std::string> graphs;
  std::size_t k = 6;
  std::string costs = "bid";
  std::string mechanism;
  std::string rule = "equal";
  std::string delta;
  std::string lambda;
  std::string threshold;
  std::string bids = "declared";
  std::string format = "table";
  std::int64_t cap = 3;
  std::string unit = "1";
  std::string mode = "undominated";
  std::vector<std::string> types;
  std::string orientation = "forward";
  std::string property;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string name;
  std::string output;
};

MechanismConfig buildConfig(const Options& o, const std::string& fallback, bool ruleAllowed) {
  MechanismConfig config;
  const std::string name = o.mechanism.empty() ? fallback : o.mechanism;
  auto kind = parseMechanismKind(name);
  if (!kind) throw InvalidArgumentError("unknown mechanism \"" + name + "\"");
  config.kind = *kind;

  const bool usesRule = ruleAllowed && (config.kind == MechanismKind::x || config.kind == MechanismKind::tradeoff1);
  if (!usesRule && (o.rule != "equal" || !o.delta.empty())) {
    throw InvalidArgumentError("--rule and --delta apply only to x and tradeoff1");
  }
  if (!o.lambda.empty() && config.kind != MechanismKind::averagedSingle) {
    throw InvalidArgumentError("--lambda applies only to avg-single");
  }
  if (!o.threshold.empty() && config.kind != MechanismKind::tradeoff1) {
    throw InvalidArgumentError("--c applies only to tradeoff1");
  }

  std::optional<Rational> delta;
  if (!o.delta.empty()) delta = Rational::parse(o.delta);
  if (o.rule == "equal") {
    config.rule = DistributionRule::equalSplit();
  } else if (o.rule == "reverse-rank") {
    config.rule = DistributionRule::reverseRank();
  } else if (o.rule == "waterfall" || o.rule == "compound") {
    if (!delta) throw InvalidArgumentError("--rule " + o.rule + " needs --delta");
    config.rule = o.rule == "waterfall" ? DistributionRule::waterfall(*delta) : DistributionRule::compound(*delta);
  } else {
    throw InvalidArgumentError("unknown rule \"" + o.rule + "\" (equal, reverse-rank, waterfall, compound)");
  }
  if (delta && o.rule != "waterfall" && o.rule != "compound") {
    throw InvalidArgumentError("--delta applies only to the waterfall and compound rules");
  }
  if (!o.lambda.empty()) config.lambda = Rational::parse(o.lambda);
  if (!o.threshold.empty()) config.threshold = Rational::parse(o.threshold);
  if (o.orientation == "forward") {
    config.orientation = Orientation::forward;
  } else if (o.orientation == "reverse") {
    config.orientation = Orientation::reverse;
  } else {
    throw InvalidArgumentError("orientation must be forward or reverse");
  }
  return config;
}

std::string mechanismLabel(const MechanismConfig& config) {
  std::string name = toString(config.kind);
  if (config.kind == MechanismKind::x || config.kind == MechanismKind::tradeoff1) {
    name += "[" + toString(config.rule.kind);
    if (config.rule.delta) name += ", delta " + config.rule.delta->str();
    name += "]";
  }
  if (config.kind == MechanismKind::tradeoff1) name += " C=" + config.threshold.str();
  if (config.kind == MechanismKind::averagedSingle) name += " lambda=" + config.lambda.str();
  return name;
}

void checkFormat(const std::string& format) {
  if (format != "table" && format != "json") throw InvalidArgumentError("--format must be table or json");
}

// ---------------------------------------------------------------------------

int cmdValidate(const Options& o, std::ostream& out) {
  Network net = resolveGraph(o.graph);
  auto violations = validate(net);
  if (violations.empty()) {
    out << "valid: " << net.nodes().size() << " nodes, " << net.edges().size() << " edges\n";
    return kOk;
  }
  for (const auto& v : violations) out << v.rule << ": " << v.element << "\n";
  return kFailure;
}

int cmdRank(const Options& o, std::ostream& out, std::ostream& err) {
  Network net = resolveGraph(o.graph);
  if (auto violations = validate(net); !violations.empty()) {
    for (const auto& v : violations) err << v.rule << ": " << v.element << "\n";
    return kFailure;
  }
  if (o.k == 0) throw InvalidArgumentError("k must be positive");
  CostFunction costs = o.costs == "true" ? CostFunction::trueCosts() : CostFunction::bids();
  if (o.costs != "true" && o.costs != "bid") throw InvalidArgumentError("--costs must be bid or true");
  RankedPaths ranked = rankPaths(net, costs, o.k);
  std::vector<std::vector<std::string>> rows{{"rank", "edges", "cost"}};
  bool tie = false;
  for (std::size_t j = 0; j < ranked.size(); ++j) {
    rows.push_back({std::to_string(j + 1), describe(net, ranked[j]), shown(ranked[j].cost)});
    if (j > 0 && ranked[j].cost == ranked[j - 1].cost) {
      tie = true;
      err << "warning: ranks " << j << " and " << j + 1 << " tie at " << ranked[j].cost.str() << "\n";
    }
  }
  printTable(out, rows);
  return tie ? kTie : kOk;
}

int cmdRun(const Options& o, std::ostream& out) {
  checkFormat(o.format);
  Network net = resolveGraph(o.graph);
  MechanismConfig config = buildConfig(o, "x", true);
  BidProfile bids = resolveBids(net, o.bids);
  PaymentResult result = runPathMechanism(config, net, bids);
  Network priced = net.withBids(bids);

  std::vector<std::string> notes;
  if (config.kind == MechanismKind::vcg && net == fixtures::example1().withBids(net.bid())) {
    notes.push_back(
        "the original worked example lists B = C = 1 and a total of 33; those values do not follow from "
        "p = d(edge excluded) - d(edge free), which gives B = C = 2 and a truthful total of 35; the formula is "
        "applied here");
  }
  if (o.format == "json") {
    out << paymentResultToJson(priced, result, mechanismLabel(config), notes);
    return kOk;
  }
  out << "mechanism: " << mechanismLabel(config) << "\n";
  out << "chosen path: " << describe(priced, result.chosenPath) << " (cost " << shown(result.chosenPath.cost)
      << ")\n";
  const bool grouped = !result.group.empty();
  std::vector<std::vector<std::string>> rows;
  rows.push_back(grouped ? std::vector<std::string>{"agent", "bid", "group", "payment", "utility"}
                         : std::vector<std::string>{"agent", "bid", "payment", "utility"});
  for (const auto& [agent, pay] : result.payment) {
    std::vector<std::string> row{agent, shown(bids.at(agent))};
    if (grouped) {
      auto g = result.group.find(agent);
      row.push_back(g == result.group.end() ? "-" : std::to_string(g->second));
    }
    row.push_back(shown(pay));
    row.push_back(shown(result.utility.at(agent)));
    rows.push_back(std::move(row));
  }
  printTable(out, rows);
  out << "total: " << shown(result.total) << "\n";
  out << "mechanism utility: " << shown(result.mechanismUtility) << "\n";
  for (const auto& n : notes) out << "note: " << n << "\n";
  return kOk;
}

int cmdAnalyze(const Options& o, std::ostream& out) {
  checkFormat(o.format);
  auto mode = parseStrategyMode(o.mode);
  if (!mode) throw InvalidArgumentError("--mode must be undominated, all or dominant");
  const Rational unit = Rational::parse(o.unit);
  if (o.graphs.empty() == o.types.empty()) {
    throw InvalidArgumentError("give either graph arguments or --types lists, not both");
  }
  MechanismConfig config = buildConfig(o, o.graphs.empty() ? "vickrey-single" : "x", true);

  std::vector<ConsistencyReport> reports;
  for (const auto& g : o.graphs) {
    if (isSingleItem(config.kind)) config.orientation = Orientation::reverse;
    Game game = Game::path(resolveGraph(g), config);
    reports.push_back(ProfileTable(game, BidGrid::standard(game, o.cap, unit)).ioa(*mode));
  }
  for (const auto& list : o.types) {
    std::map<AgentId, Rational> types;
    auto values = parseList(list);
    for (std::size_t i = 0; i < values.size(); ++i) types["b" + std::to_string(i + 1)] = values[i];
    Game game = Game::singleItem(types, config);
    reports.push_back(ProfileTable(game, BidGrid::standard(game, o.cap, unit)).ioa(*mode));
  }
  const Consistency verdict = classifyConsistency(reports);
  const std::string scope = "relative to the " + std::to_string(reports.size()) + " supplied instance(s)";

  if (o.format == "json") {
    Json doc = Json::object();
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(Json::parse(consistencyReportToJson(r)));
    doc["instances"] = std::move(list);
    doc["classification"] = toString(verdict);
    doc["scope"] = scope;
    out << doc.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << "instance " << i + 1 << ": " << r.mechanism << ", " << r.grid << ", mode " << toString(r.mode) << "\n";
    out << "  agents: ";
    for (std::size_t a = 0; a < r.agents.size(); ++a) out << (a ? ", " : "") << r.agents[a];
    out << "\n";
    for (const auto& agent : r.agents) {
      out << "  OBS[" << agent << "] = {";
      const auto& bids = r.obs.at(agent);
      for (std::size_t b = 0; b < bids.size(); ++b) out << (b ? ", " : "") << bids[b].str();
      out << "}\n";
    }
    auto set = [&](const char* name, const std::vector<Profile>& ps) {
      out << "  " << name << " (" << ps.size() << ") = {";
      for (std::size_t p = 0; p < ps.size(); ++p) out << (p ? ", " : "") << joinProfile(ps[p]);
      out << "}\n";
    };
    set("OAB", r.oab);
    set("AES", r.aes);
    set("IOA", r.ioa);
    out << "  IOA is " << (r.ioaNonempty() ? "nonempty" : "empty") << "\n";
  }
  out << "classification: " << toString(verdict) << " (" << scope << ")\n";
  return kOk;
}

int cmdCheck(const Options& o, std::ostream& out) {
  checkFormat(o.format);
  Network net = resolveGraph(o.graph);
  const Rational unit = Rational::parse(o.unit);
  BidProfile bids = resolveBids(net, o.bids);
  PropertyReport report;
  const std::string& p = o.property;
  if (p == "partly-truthful") {
    MechanismConfig config = buildConfig(o, "x", true);
    Game game = Game::path(net, config);
    report = checkPartlyTruthful(ProfileTable(game, BidGrid::procurement(game.types(), o.cap, unit)));
  } else if (p == "critical") {
    report = checkCritical(buildConfig(o, "x", true), net, bids, unit);
  } else if (p == "strongly-critical") {
    report = checkStronglyCritical(net, bids, buildConfig(o, "x", true).rule, unit);
  } else if (p == "group-truthful") {
    report = checkGroupTruthfulness(net, bids, buildConfig(o, "x", true).rule, o.trials, o.seed);
  } else if (p == "vcg-truthful") {
    report = checkVcgTruthful(net, o.cap, unit);
  } else if (p == "degenerate-vickrey") {
    report = checkDegenerateVickrey(net, bids, buildConfig(o, "x", true).rule);
  } else {
    throw InvalidArgumentError("unknown property \"" + p +
                               "\" (partly-truthful, critical, strongly-critical, group-truthful, vcg-truthful, "
                               "degenerate-vickrey)");
  }

  if (o.format == "json") {
    out << propertyReportToJson(report);
  } else {
    out << report.property << ": " << toString(report.verdict) << "\n";
    for (const auto& w : report.witnesses) {
      out << "  " << w.detail;
      if (!w.profile.empty() && p != "critical" && p != "strongly-critical" && p != "degenerate-vickrey") {
        out << " [";
        bool first = true;
        for (const auto& [agent, bid] : w.profile) {
          out << (first ? "" : ", ") << agent << "=" << bid.str();
          first = false;
        }
        out << "]";
      }
      out << "\n";
    }
    if (!report.note.empty()) out << "  " << report.note << "\n";
  }
  return report.passed() ? kOk : kFailure;
}

int cmdFixtures(const Options& o, std::ostream& out) {
  if (o.name.empty()) {
    for (const auto& n : fixtures::names()) out << n << "\n";
    return kOk;
  }
  auto net = fixtures::byName(o.name);
  if (!net) throw InvalidArgumentError("unknown fixture \"" + o.name + "\"");
  const std::string text = networkToJson(*net);
  if (o.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw InvalidArgumentError("cannot write " + o.output);
  file << text;
  out << "wrote " << o.output << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Payment mechanisms for procurement path auctions"};
  app.require_subcommand(1);
  Options o;

  auto* validateCmd = app.add_subcommand("validate", "Check a network against every structural rule");
  validateCmd->add_option("graph", o.graph, "Network file or fixture name")->required();

  auto* rankCmd = app.add_subcommand("rank", "List the k cheapest loopless paths");
  rankCmd->add_option("graph", o.graph, "Network file or fixture name")->required();
  rankCmd->add_option("-k", o.k, "Number of paths")->capture_default_str();
  rankCmd->add_option("--costs", o.costs, "bid or true")->capture_default_str();

  auto addMechanism = [&](CLI::App* cmd) {
    cmd->add_option("--mechanism", o.mechanism,
                    "fp-single, vickrey-single, avg-single, fp-path, vcg, x, tradeoff1, tradeoff2, tradeoff3");
    cmd->add_option("--rule", o.rule, "equal, reverse-rank, waterfall or compound")->capture_default_str();
    cmd->add_option("--delta", o.delta, "Minimum profit per member for waterfall and compound");
    cmd->add_option("--lambda", o.lambda, "Weight on the winning bid for avg-single");
    cmd->add_option("--c", o.threshold, "Overpayment threshold for tradeoff1");
  };
  auto addFormat = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "table or json")->capture_default_str();
  };

  auto* runCmd = app.add_subcommand("run", "Run a payment mechanism");
  runCmd->add_option("graph", o.graph, "Network file or fixture name")->required();
  addMechanism(runCmd);
  runCmd->add_option("--bids", o.bids, "declared, truthful, or a bid-profile file")->capture_default_str();
  addFormat(runCmd);

  auto* analyzeCmd = app.add_subcommand("analyze", "Enumerate OBS, OAB, AES and IOA over a bid grid");
  analyzeCmd->add_option("graphs", o.graphs, "Network files or fixture names");
  addMechanism(analyzeCmd);
  analyzeCmd->add_option("--types", o.types, "Single-item bidder types, e.g. 3,7 (repeatable)");
  analyzeCmd->add_option("--orientation", o.orientation, "forward or reverse (single-item)")->capture_default_str();
  analyzeCmd->add_option("--cap", o.cap, "Procurement grid: bids t, t+u, ..., t+cap*u")->capture_default_str();
  analyzeCmd->add_option("--unit", o.unit, "Currency unit u")->capture_default_str();
  analyzeCmd->add_option("--mode", o.mode, "undominated, all or dominant")->capture_default_str();
  addFormat(analyzeCmd);

  auto* checkCmd = app.add_subcommand("check", "Test a mechanism property");
  checkCmd->add_option("graph", o.graph, "Network file or fixture name")->required();
  checkCmd
      ->add_option("--property", o.property,
                   "partly-truthful, critical, strongly-critical, group-truthful, vcg-truthful, degenerate-vickrey")
      ->required();
  addMechanism(checkCmd);
  checkCmd->add_option("--bids", o.bids, "declared, truthful, or a bid-profile file")->capture_default_str();
  checkCmd->add_option("--trials", o.trials, "Random perturbations for group-truthful")->capture_default_str();
  checkCmd->add_option("--seed", o.seed, "Seed for group-truthful")->capture_default_str();
  checkCmd->add_option("--cap", o.cap, "Grid cap for partly-truthful and vcg-truthful")->capture_default_str();
  checkCmd->add_option("--unit", o.unit, "Currency unit")->capture_default_str();
  addFormat(checkCmd);

  auto* fixturesCmd = app.add_subcommand("fixtures", "Print or write a built-in network");
  fixturesCmd->add_option("name", o.name, "example1, fig2, fig3 or xsmall (omit to list)");
  fixturesCmd->add_option("-o,--output", o.output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (validateCmd->parsed()) return cmdValidate(o, out);
    if (rankCmd->parsed()) return cmdRank(o, out, err);
    if (runCmd->parsed()) return cmdRun(o, out);
    if (analyzeCmd->parsed()) return cmdAnalyze(o, out);
    if (checkCmd->parsed()) return cmdCheck(o, out);
    if (fixturesCmd->parsed()) return cmdFixtures(o, out);
  } catch (const TieError& e) {
    err << "tie: " << e.what() << "\n";
    return kTie;
  } catch (const GridTooLargeError& e) {
    err << "too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const TooLargeError& e) {
    err << "too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace pathauction::cli
