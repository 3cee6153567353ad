#include <algorithm>

#include "pathauction/errors.hpp"
#include "pathauction/fixtures.hpp"
#include "pathauction/generator.hpp"
#include "pathauction/paths.hpp"
#include "support.hpp"

using namespace pathauction;

namespace {

std::vector<std::string> ids(const Network& net, const Path& p) { return edgeIds(net, p); }

std::vector<Rational> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

bool hasRule(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

Network single(std::int64_t cost) {
  return Network({"X", "Y"}, {{"e", "X", "Y", "e"}}, "X", "Y", {{"e", cost}}, {{"e", cost}});
}

}  // namespace

TEST_SUITE("validate") {
  TEST_CASE("fixtures are valid") {
    for (const auto& name : fixtures::names()) {
      INFO(name);
      CHECK(validate(*fixtures::byName(name)).empty());
    }
  }

  TEST_CASE("single source-to-sink edge is a cut") {
    auto vs = validate(single(1));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == "agent owns a cut");
    CHECK(vs[0].element == "e");
  }

  TEST_CASE("nonpositive costs are flagged") {
    Network net({"X", "Y"}, {{"e", "X", "Y", "e"}, {"f", "X", "Y", "f"}}, "X", "Y", {{"e", 0}, {"f", 2}},
                {{"e", 1}, {"f", -1}});
    auto vs = validate(net);
    CHECK(hasRule(vs, "nonpositive cost"));
    CHECK(std::count_if(vs.begin(), vs.end(), [](auto& v) { return v.rule == "nonpositive cost"; }) == 2);
  }

  TEST_CASE("structural violations name their element") {
    Network net({"X", "Y", "X"}, {{"e", "X", "Z", "a"}, {"f", "X", "Y", "a"}, {"f", "X", "Y", "b"}}, "X", "X",
                {{"a", 1}}, {{"a", 1}, {"ghost", 1}});
    auto vs = validate(net);
    CHECK(hasRule(vs, "duplicate node"));
    CHECK(hasRule(vs, "duplicate edge id"));
    CHECK(hasRule(vs, "unknown node"));
    CHECK(hasRule(vs, "agent owns multiple edges"));
    CHECK(hasRule(vs, "missing true cost"));
    CHECK(hasRule(vs, "missing bid"));
    CHECK(hasRule(vs, "unknown agent"));
    CHECK(hasRule(vs, "source equals sink"));
  }

  TEST_CASE("missing route") {
    Network net({"X", "M", "Y"}, {{"e", "X", "M", "e"}, {"f", "X", "M", "f"}}, "X", "Y", {{"e", 1}, {"f", 1}},
                {{"e", 1}, {"f", 1}});
    CHECK(hasRule(validate(net), "no path"));
  }
}

TEST_SUITE("shortest paths") {
  TEST_CASE("example1 cheapest path") {
    auto net = fixtures::example1();
    Path p = shortestPath(net);
    CHECK(ids(net, p) == std::vector<std::string>{"A", "B", "C", "D", "E", "F"});
    CHECK(p.cost == 6);
  }

  TEST_CASE("removing A leaves J,P,E,F") {
    auto net = fixtures::example1();
    Path p = shortestPath(net, CostFunction::overrides({{"A", std::nullopt}}));
    CHECK(ids(net, p) == std::vector<std::string>{"J", "P", "E", "F"});
    CHECK(p.cost == 10);
  }

  TEST_CASE("fig3 picks e") {
    auto net = fixtures::fig3();
    Path p = shortestPath(net);
    CHECK(ids(net, p) == std::vector<std::string>{"e"});
    CHECK(p.cost == 1);
  }

  TEST_CASE("ties go to the lexicographically smaller edge sequence") {
    Network net({"X", "M", "Y"}, {{"z", "X", "Y", "z"}, {"b", "X", "M", "b"}, {"c", "M", "Y", "c"}}, "X", "Y",
                {{"z", 2}, {"b", 1}, {"c", 1}}, {{"z", 2}, {"b", 1}, {"c", 1}});
    CHECK(ids(net, shortestPath(net)) == std::vector<std::string>{"b", "c"});
    auto all = enumeratePaths(net);
    REQUIRE(all.size() == 2);
    CHECK(ids(net, all[1]) == std::vector<std::string>{"z"});
  }

  TEST_CASE("true costs differ from bids") {
    auto net = fixtures::fig3().withBid("e", 9);
    CHECK(ids(net, shortestPath(net)) == std::vector<std::string>{"f"});
    CHECK(ids(net, shortestPath(net, CostFunction::trueCosts())) == std::vector<std::string>{"e"});
  }

  TEST_CASE("disconnected") {
    auto net = fixtures::fig3();
    CHECK_THROWS_AS(shortestPath(net, CostFunction::overrides({{"e", std::nullopt}, {"f", std::nullopt}})),
                    DisconnectedError);
  }
}

TEST_SUITE("ranking") {
  TEST_CASE("example1 ranked costs") {
    auto net = fixtures::example1();
    auto ranked = rankPaths(net, CostFunction::bids(), 6);
    CHECK(ranked.costs() == ints({6, 7, 9, 10, 15, 16}));
    CHECK(describe(net, ranked[1]) == "A,G,K,D,E,F");
    CHECK(describe(net, ranked[2]) == "A,H,I,D,E,F");
    CHECK(describe(net, ranked[3]) == "J,P,E,F");
    CHECK(describe(net, ranked[4]) == "A,M,L,F");
    CHECK(describe(net, ranked[5]) == "N,O");
  }

  TEST_CASE("asking for more paths than exist returns them all") {
    auto net = fixtures::example1();
    CHECK(rankPaths(net, CostFunction::bids(), 50).size() == 6);
  }

  TEST_CASE("fig2 ranked costs") {
    CHECK(rankPaths(fixtures::fig2(), CostFunction::bids(), 2).costs() == ints({3, 5}));
  }

  TEST_CASE("k = 1 is the shortest path") {
    for (const auto& name : fixtures::names()) {
      auto net = *fixtures::byName(name);
      auto ranked = rankPaths(net, CostFunction::bids(), 1);
      REQUIRE(ranked.size() == 1);
      CHECK(ranked[0] == shortestPath(net));
    }
  }

  TEST_CASE("enumeration counts") {
    CHECK(enumeratePaths(fixtures::example1()).size() == 6);
    CHECK(enumeratePaths(fixtures::fig3()).size() == 2);
    CHECK(enumeratePaths(fixtures::fig2()).size() == 2);
  }

  TEST_CASE("enumeration guard") {
    std::vector<Edge> edges;
    std::map<AgentId, Rational> cost;
    for (int i = 0; i < 25; ++i) {
      std::string id = "e" + std::to_string(100 + i);
      edges.push_back({id, "X", "Y", id});
      cost[id] = 1;
    }
    Network net({"X", "Y"}, edges, "X", "Y", cost, cost);
    CHECK_THROWS_AS(enumeratePaths(net), TooLargeError);
    CHECK(rankPaths(net, CostFunction::bids(), 3).size() == 3);
  }

  TEST_CASE("lazy ranker reports exhaustion") {
    auto net = fixtures::fig3();
    PathRanker ranker(net, CostFunction::bids().resolve(net));
    CHECK(ranker.next().has_value());
    CHECK(ranker.next().has_value());
    CHECK_FALSE(ranker.next().has_value());
    CHECK_FALSE(ranker.next().has_value());
  }

  TEST_CASE("self-loops and back edges never appear") {
    Network net({"X", "M", "Y"},
                {{"a", "X", "M", "a"}, {"b", "M", "Y", "b"}, {"c", "X", "Y", "c"}, {"l", "M", "M", "l"},
                 {"r", "M", "X", "r"}},
                "X", "Y", {{"a", 1}, {"b", 1}, {"c", 5}, {"l", 1}, {"r", 1}},
                {{"a", 1}, {"b", 1}, {"c", 5}, {"l", 1}, {"r", 1}});
    auto all = enumeratePaths(net);
    CHECK(all.size() == 2);
    CHECK(rankPaths(net, CostFunction::bids(), 10) == all);
  }
}

TEST_SUITE("detours") {
  TEST_CASE("example1 detour values") {
    auto net = fixtures::example1();
    CHECK(detourCost(net, "E", DetourMode::excluded) == 15);
    CHECK(detourCost(net, "E", DetourMode::zeroed) == 5);
    CHECK(detourCost(net, "A", DetourMode::excluded) == 10);
    CHECK(detourCost(net, "B", DetourMode::excluded) == 7);
    CHECK(detourCost(net, "B", DetourMode::zeroed) == 5);
    CHECK(detourCost(net, "N", DetourMode::zeroed) == 6);
  }
}

TEST_SUITE("graph properties") {
  TEST_CASE("ranking equals enumeration on 200 random networks") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      INFO("seed " << seed);
      Network net = randomNetwork(seed, 8, 14);
      auto all = enumeratePaths(net);
      CHECK(rankPaths(net, CostFunction::bids(), all.size() + 3) == all);
      CHECK(shortestPath(net) == all[0]);
      for (const auto& agent : net.agents()) {
        Rational zeroed = detourCost(net, agent, DetourMode::zeroed);
        CHECK(zeroed <= all[0].cost);
        const auto e = *net.edgeOfAgent(agent);
        if (all[0].contains(e)) CHECK(zeroed == all[0].cost - net.bid().at(agent));
        Rational excluded = detourCost(net, agent, DetourMode::excluded);
        auto avoid = std::find_if(all.paths.begin(), all.paths.end(), [&](const Path& p) { return !p.contains(e); });
        REQUIRE(avoid != all.paths.end());
        CHECK(excluded == avoid->cost);
      }
    }
  }

  TEST_CASE("ranking with ties matches enumeration") {
    // Unit costs everywhere make many equal-cost paths.
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      Network base = randomNetwork(seed, 7, 12);
      BidProfile ones;
      for (const auto& a : base.agents()) ones[a] = 1;
      Network net = base.withBids(ones);
      auto all = enumeratePaths(net);
      CHECK(rankPaths(net, CostFunction::bids(), all.size()) == all);
    }
  }

  TEST_CASE("paths are loopless and well formed") {
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
      Network net = randomNetwork(seed, 8, 14);
      for (const auto& p : enumeratePaths(net).paths) {
        std::set<std::size_t> seen{*net.nodeIndex(net.source())};
        std::size_t at = *net.nodeIndex(net.source());
        Rational sum(0);
        for (auto e : p.edges) {
          CHECK(*net.tailIndex(e) == at);
          at = *net.headIndex(e);
          CHECK(seen.insert(at).second);
          sum += net.bid().at(net.edges()[e].owner);
        }
        CHECK(at == *net.nodeIndex(net.sink()));
        CHECK(sum == p.cost);
      }
    }
  }
}

TEST_SUITE("generator") {
  TEST_CASE("deterministic and valid") {
    for (std::uint64_t seed : {1u, 42u, 999u}) {
      Network a = randomNetwork(seed, 8, 14);
      Network b = randomNetwork(seed, 8, 14);
      CHECK(a == b);
      CHECK(validate(a).empty());
      CHECK(a.nodes().size() <= 8);
      CHECK(a.edges().size() <= 14);
      auto costs = enumeratePaths(a).costs();
      CHECK(std::adjacent_find(costs.begin(), costs.end()) == costs.end());
    }
  }

  TEST_CASE("impossible budgets fail cleanly") {
    CHECK_THROWS_AS(randomNetwork(1, 2, 14, {1, 1}, 3), GenerationFailedError);
    CHECK_THROWS_AS(randomNetwork(1, 1, 14), InvalidArgumentError);
  }
}
