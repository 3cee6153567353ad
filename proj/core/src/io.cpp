#include "pathauction/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include "pathauction/errors.hpp"

namespace pathauction {

namespace {

using Json = nlohmann::ordered_json;

Json parseDocument(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string readFile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void rejectUnknownKeys(const Json& object, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown key \"" + key + "\" in " + where);
    }
  }
}

const Json& field(const Json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing key \"") + key + "\" in " + where);
  return *it;
}

std::string text(const Json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + " must be a string");
  return value.get<std::string>();
}

Rational cost(const Json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + " must be a cost string such as \"3\" or \"3/2\"");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Json costMap(const std::map<AgentId, Rational>& values) {
  Json out = Json::object();
  for (const auto& [agent, v] : values) out[agent] = v.str();
  return out;
}

Json profileArray(const std::vector<AgentId>& agents, const std::vector<Profile>& profiles) {
  Json out = Json::array();
  for (const auto& p : profiles) {
    Json row = Json::object();
    for (std::size_t i = 0; i < agents.size(); ++i) row[agents[i]] = p[i].str();
    out.push_back(std::move(row));
  }
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

Network parseNetwork(std::string_view json) {
  const Json doc = parseDocument(json);
  if (!doc.is_object()) throw ParseError("network document must be an object");
  rejectUnknownKeys(doc, {"nodes", "edges", "source", "sink"}, "network");

  const Json& nodeList = field(doc, "nodes", "network");
  if (!nodeList.is_array()) throw ParseError("\"nodes\" must be an array");
  std::vector<NodeId> nodes;
  for (const auto& n : nodeList) nodes.push_back(text(n, "node id"));

  const Json& edgeList = field(doc, "edges", "network");
  if (!edgeList.is_array()) throw ParseError("\"edges\" must be an array");
  std::vector<Edge> edges;
  std::map<AgentId, Rational> trueCost;
  std::map<AgentId, Rational> bid;
  for (std::size_t i = 0; i < edgeList.size(); ++i) {
    const Json& e = edgeList[i];
    const std::string where = "edge #" + std::to_string(i);
    if (!e.is_object()) throw ParseError(where + " must be an object");
    rejectUnknownKeys(e, {"id", "from", "to", "owner", "true_cost", "bid"}, where);
    Edge edge{text(field(e, "id", where), where + " id"), text(field(e, "from", where), where + " from"),
              text(field(e, "to", where), where + " to"), text(field(e, "owner", where), where + " owner")};
    Rational t = cost(field(e, "true_cost", where), where + " true_cost");
    Rational v = e.contains("bid") ? cost(e["bid"], where + " bid") : t;
    // A repeated owner is reported by validate(); keep its first costs.
    trueCost.emplace(edge.owner, t);
    bid.emplace(edge.owner, v);
    edges.push_back(std::move(edge));
  }
  return Network(std::move(nodes), std::move(edges), text(field(doc, "source", "network"), "source"),
                 text(field(doc, "sink", "network"), "sink"), std::move(trueCost), std::move(bid));
}

Network loadNetwork(const std::filesystem::path& file) { return parseNetwork(readFile(file)); }

std::string networkToJson(const Network& network) {
  Json doc = Json::object();
  doc["nodes"] = network.nodes();
  Json edges = Json::array();
  for (const auto& e : network.edges()) {
    Json row = Json::object();
    row["id"] = e.id;
    row["from"] = e.from;
    row["to"] = e.to;
    row["owner"] = e.owner;
    auto t = network.trueCost().find(e.owner);
    auto v = network.bid().find(e.owner);
    if (t != network.trueCost().end()) row["true_cost"] = t->second.str();
    if (v != network.bid().end() && (t == network.trueCost().end() || v->second != t->second)) {
      row["bid"] = v->second.str();
    }
    edges.push_back(std::move(row));
  }
  doc["edges"] = std::move(edges);
  doc["source"] = network.source();
  doc["sink"] = network.sink();
  return dump(doc);
}

BidProfile parseBidProfile(std::string_view json) {
  const Json doc = parseDocument(json);
  if (!doc.is_object()) throw ParseError("bid profile must be an object of agent -> cost string");
  BidProfile out;
  for (const auto& [agent, value] : doc.items()) out[agent] = cost(value, "bid of " + agent);
  return out;
}

BidProfile loadBidProfile(const std::filesystem::path& file) { return parseBidProfile(readFile(file)); }

std::string bidProfileToJson(const BidProfile& bids) { return dump(costMap(bids)); }

std::string paymentResultToJson(const Network& network, const PaymentResult& result, const std::string& mechanism,
                                const std::vector<std::string>& notes) {
  Json doc = Json::object();
  doc["mechanism"] = mechanism;
  Json path = Json::object();
  path["edges"] = edgeIds(network, result.chosenPath);
  path["cost"] = result.chosenPath.cost.str();
  doc["chosen_path"] = std::move(path);
  Json agents = Json::array();
  for (const auto& [agent, pay] : result.payment) {
    Json row = Json::object();
    row["agent"] = agent;
    if (auto it = network.bid().find(agent); it != network.bid().end()) row["bid"] = it->second.str();
    row["selected"] = result.selected(agent);
    if (auto g = result.group.find(agent); g != result.group.end()) row["group"] = g->second;
    row["payment"] = pay.str();
    row["utility"] = result.utility.at(agent).str();
    agents.push_back(std::move(row));
  }
  doc["agents"] = std::move(agents);
  doc["total"] = result.total.str();
  doc["mechanism_utility"] = result.mechanismUtility.str();
  if (!notes.empty()) doc["notes"] = notes;
  return dump(doc);
}

std::string consistencyReportToJson(const ConsistencyReport& report) {
  Json doc = Json::object();
  doc["mechanism"] = report.mechanism;
  doc["grid"] = report.grid;
  doc["mode"] = toString(report.mode);
  doc["agents"] = report.agents;
  Json obs = Json::object();
  for (const auto& agent : report.agents) {
    Json bids = Json::array();
    if (auto it = report.obs.find(agent); it != report.obs.end()) {
      for (const auto& b : it->second) bids.push_back(b.str());
    }
    obs[agent] = std::move(bids);
  }
  doc["obs"] = std::move(obs);
  doc["oab"] = profileArray(report.agents, report.oab);
  doc["aes"] = profileArray(report.agents, report.aes);
  doc["ioa"] = profileArray(report.agents, report.ioa);
  doc["instance_verdict"] = report.ioaNonempty() ? "nonempty" : "empty";
  return dump(doc);
}

std::string propertyReportToJson(const PropertyReport& report) {
  Json doc = Json::object();
  doc["property"] = report.property;
  doc["verdict"] = toString(report.verdict);
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json row = Json::object();
    row["profile"] = costMap(w.profile);
    row["payment"] = costMap(w.payment);
    row["detail"] = w.detail;
    witnesses.push_back(std::move(row));
  }
  doc["witnesses"] = std::move(witnesses);
  if (!report.note.empty()) doc["note"] = report.note;
  return dump(doc);
}

}  // namespace pathauction
