#include <algorithm>

#include "pathauction/errors.hpp"
#include "pathauction/fixtures.hpp"
#include "pathauction/generator.hpp"
#include "pathauction/mechanisms.hpp"
#include "support.hpp"

using namespace pathauction;
using testing::q;

namespace {

const BidProfile kThree{{"p", 3}, {"r", 5}, {"s", 7}};

std::map<AgentId, Rational> selectedPayments(const PaymentResult& r) {
  std::map<AgentId, Rational> out;
  for (const auto& a : r.selectedAgents) out[a] = r.payment.at(a);
  return out;
}

}  // namespace

TEST_SUITE("single item") {
  TEST_CASE("first price") {
    auto f = firstPriceSingle(kThree, Orientation::forward);
    CHECK(f.winner == "s");
    CHECK(f.payment == 7);
    CHECK(auctionUtility(f, "s", 7, Orientation::forward) == 0);
    auto r = firstPriceSingle(kThree, Orientation::reverse);
    CHECK(r.winner == "p");
    CHECK(r.payment == 3);
  }

  TEST_CASE("vickrey") {
    auto f = vickreySingle(kThree, Orientation::forward);
    CHECK(f.winner == "s");
    CHECK(f.payment == 5);
    CHECK(auctionUtility(f, "s", 7, Orientation::forward) == 2);
    CHECK(auctionUtility(f, "r", 5, Orientation::forward) == 0);
    auto r = vickreySingle({{"e", 1}, {"f", 5}}, Orientation::reverse);
    CHECK(r.winner == "e");
    CHECK(r.payment == 5);
    CHECK(auctioneerUtility(r, Orientation::reverse) == -5);
  }

  TEST_CASE("averaged") {
    const BidProfile two{{"lo", 4}, {"hi", 10}};
    CHECK(averagedSingle(two, q("1/2"), Orientation::forward).payment == 7);
    CHECK(averagedSingle(two, 0, Orientation::forward).payment == 4);
    CHECK(averagedSingle(two, 1, Orientation::forward).payment == 10);
    CHECK(averagedSingle(two, q("1/4"), Orientation::reverse).payment == q("17/2"));
    CHECK_THROWS_AS(averagedSingle(two, q("3/2"), Orientation::forward), InvalidArgumentError);
  }

  TEST_CASE("ties and too few bidders") {
    CHECK_THROWS_AS(vickreySingle({{"a", 3}, {"b", 3}}, Orientation::forward), TieError);
    CHECK_THROWS_AS(firstPriceSingle({{"a", 3}}, Orientation::forward), InvalidArgumentError);
    // A tie below the winner is harmless.
    CHECK(vickreySingle({{"a", 3}, {"b", 3}, {"c", 9}}, Orientation::forward).payment == 3);
  }
}

TEST_SUITE("vcg") {
  TEST_CASE("example1 truthful") {
    auto net = fixtures::example1();
    auto r = vcgPath(net, net.trueCost());
    CHECK(r.payment.at("A") == 5);
    CHECK(r.payment.at("B") == 2);
    CHECK(r.payment.at("C") == 2);
    CHECK(r.payment.at("D") == 5);
    CHECK(r.payment.at("E") == 10);
    CHECK(r.payment.at("F") == 11);
    CHECK(r.total == 35);
    CHECK(r.mechanismUtility == -35);
  }

  TEST_CASE("example1 with A bidding 4") {
    auto net = fixtures::example1();
    BidProfile bids = net.trueCost();
    bids["A"] = 4;
    auto r = vcgPath(net, bids);
    CHECK(selectedPayments(r) == std::map<AgentId, Rational>{
                                     {"A", 5}, {"B", 2}, {"C", 2}, {"D", 2}, {"E", 8}, {"F", 8}});
    CHECK(r.total == 27);
    CHECK(r.total < vcgPath(net, net.trueCost()).total);
  }

  TEST_CASE("a tie at rank one is refused") {
    auto net = fixtures::fig3();
    CHECK_THROWS_AS(vcgPath(net, {{"e", 5}, {"f", 5}}), TieError);
  }

  TEST_CASE("bid profile must cover the network") {
    auto net = fixtures::fig3();
    CHECK_THROWS_AS(vcgPath(net, {{"e", 1}}), InvalidArgumentError);
    CHECK_THROWS_AS(vcgPath(net, {{"e", 1}, {"f", 0}}), InvalidArgumentError);
    CHECK_THROWS_AS(vcgPath(net, {{"e", 1}, {"f", 2}, {"zz", 3}}), InvalidArgumentError);
  }
}

TEST_SUITE("groups") {
  TEST_CASE("example1 groups and profits") {
    auto net = fixtures::example1();
    auto ranked = rankForGroups(net);
    auto g = classifyGroups(net, ranked);
    CHECK(g.groupOf == std::map<AgentId, int>{{"A", 3}, {"B", 1}, {"C", 1}, {"D", 3}, {"E", 4}, {"F", 5}});
    CHECK(g.presentGroups == std::vector<int>{1, 3, 4, 5});
    CHECK(g.hMax == 5);
    auto p = groupProfits(g, ranked);
    CHECK(p.q == std::map<int, Rational>{{1, 1}, {3, 3}, {4, 5}, {5, 1}});
  }

  TEST_CASE("fig2 and fig3 groups") {
    auto f2 = fixtures::fig2();
    auto r2 = rankForGroups(f2);
    auto g2 = classifyGroups(f2, r2);
    CHECK(g2.groupOf == std::map<AgentId, int>{{"a", 1}, {"b", 1}, {"c", 1}});
    CHECK(groupProfits(g2, r2).q.at(1) == 2);
    auto f3 = fixtures::fig3();
    CHECK(classifyGroups(f3, rankForGroups(f3)).groupOf == std::map<AgentId, int>{{"e", 1}});
  }

  TEST_CASE("too few paths") {
    auto net = fixtures::example1();
    auto ranked = rankPaths(net, CostFunction::bids(), 3);
    CHECK_THROWS_AS(classifyGroups(net, ranked), InsufficientPathsError);
  }

  TEST_CASE("ties inside the needed prefix") {
    auto net = fixtures::example1();
    BidProfile bids = net.trueCost();
    bids["B"] = 2;  // A,B,C,D,E,F now costs 7, the same as A,G,K,D,E,F
    CHECK_THROWS_AS(xMechanism(net, bids, DistributionRule::equalSplit()), TieError);
  }
}

TEST_SUITE("x mechanism") {
  TEST_CASE("example1 equal split") {
    auto net = fixtures::example1();
    auto r = xMechanism(net, net.trueCost(), DistributionRule::equalSplit());
    CHECK(selectedPayments(r) == std::map<AgentId, Rational>{{"A", q("5/2")},
                                                             {"B", q("3/2")},
                                                             {"C", q("3/2")},
                                                             {"D", q("5/2")},
                                                             {"E", 6},
                                                             {"F", 2}});
    CHECK(r.total == 16);
    CHECK(r.payment.at("N") == 0);
    CHECK(r.utility.at("N") == 0);
    CHECK(r.utility.at("E") == 5);
  }

  TEST_CASE("fig3 equals vickrey") {
    auto net = fixtures::fig3();
    CHECK(xMechanism(net, net.trueCost(), DistributionRule::equalSplit()).payment.at("e") == 5);
  }

  TEST_CASE("other rules keep the total") {
    auto net = fixtures::example1();
    for (auto rule : {DistributionRule::reverseRank(), DistributionRule::waterfall(q("1/4")),
                      DistributionRule::compound(1)}) {
      CHECK(xMechanism(net, net.trueCost(), rule).total == 16);
    }
  }
}

TEST_SUITE("other path mechanisms") {
  TEST_CASE("first price") {
    auto net = fixtures::example1();
    auto r = firstPricePath(net, net.trueCost());
    CHECK(r.total == 6);
    for (const auto& [agent, u] : r.utility) CHECK(u == 0);
    CHECK(firstPricePath(fixtures::fig3(), fixtures::fig3().trueCost()).payment.at("e") == 1);
  }

  TEST_CASE("tradeoff1 switches on the threshold") {
    auto net = fixtures::example1();
    auto x = tradeoff1(net, net.trueCost(), q("1/4"), DistributionRule::equalSplit());
    CHECK(x.total == 16);
    CHECK(x.payment.at("B") == q("3/2"));
    auto v = tradeoff1(net, net.trueCost(), q("9/10"), DistributionRule::equalSplit());
    CHECK(v.total == 35);
    CHECK_THROWS_AS(tradeoff1(net, net.trueCost(), 2, DistributionRule::equalSplit()), InvalidArgumentError);
  }

  TEST_CASE("tradeoff2") {
    auto net = fixtures::example1();
    auto r = tradeoff2(net, net.trueCost());
    CHECK(selectedPayments(r) ==
          std::map<AgentId, Rational>{{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}, {"E", 6}, {"F", 2}});
    CHECK(r.total == 16);
    CHECK(tradeoff2(fixtures::fig3(), fixtures::fig3().trueCost()).payment.at("e") == 5);
  }

  TEST_CASE("tradeoff2 schedule brackets for E") {
    auto net = fixtures::example1();
    const auto& bids = net.trueCost();
    CHECK(tradeoff2Schedule(net, bids, "E", 3) == 6);
    CHECK(tradeoff2Schedule(net, bids, "E", 6) == 7);
    CHECK(tradeoff2Schedule(net, bids, "E", 9) == 10);
    CHECK(tradeoff2Schedule(net, bids, "E", 10) == 0);
    CHECK_THROWS_AS(tradeoff2Schedule(net, bids, "N", 1), NotSelectedError);
    CHECK_THROWS_AS(tradeoff2Schedule(net, bids, "E", -1), InvalidArgumentError);
  }

  TEST_CASE("tradeoff3") {
    auto net = fixtures::example1();
    auto r = tradeoff3(net, net.trueCost());
    CHECK(selectedPayments(r) == std::map<AgentId, Rational>{
                                     {"A", 3}, {"B", q("3/2")}, {"C", q("3/2")}, {"D", 3}, {"E", 10}, {"F", 11}});
    CHECK(r.total == 30);
    CHECK(tradeoff3(fixtures::fig3(), fixtures::fig3().trueCost()).payment.at("e") == 5);
  }

  TEST_CASE("single-item kinds on parallel edges") {
    auto net = fixtures::fig3();
    MechanismConfig config;
    config.kind = MechanismKind::vickreySingle;
    auto r = runPathMechanism(config, net, net.trueCost());
    CHECK(r.payment.at("e") == 5);
    CHECK(r.selected("e"));
    CHECK_FALSE(r.selected("f"));
    CHECK_THROWS_AS(runPathMechanism(config, fixtures::fig2(), fixtures::fig2().trueCost()), InvalidArgumentError);
    config.orientation = Orientation::forward;
    CHECK_THROWS_AS(runPathMechanism(config, net, net.trueCost()), InvalidArgumentError);
  }

  TEST_CASE("mechanism names") {
    for (auto kind : {MechanismKind::firstPriceSingle, MechanismKind::vickreySingle, MechanismKind::averagedSingle,
                      MechanismKind::firstPricePath, MechanismKind::vcg, MechanismKind::x, MechanismKind::tradeoff1,
                      MechanismKind::tradeoff2, MechanismKind::tradeoff3}) {
      CHECK((parseMechanismKind(toString(kind)) == kind));
    }
    CHECK_FALSE(parseMechanismKind("nope").has_value());
  }
}

TEST_SUITE("comparisons") {
  TEST_CASE("x pays less than vcg on example1") {
    auto net = fixtures::example1();
    MechanismConfig x;
    MechanismConfig vcg;
    vcg.kind = MechanismKind::vcg;
    auto rows = compareMechanisms(net, net.trueCost(), {x, vcg});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mechanism == "x[equal]");
    CHECK(rows[0].total == 16);
    CHECK(rows[1].mechanism == "vcg");
    CHECK(rows[1].total == 35);
  }

  TEST_CASE("doubling N and O") {
    auto net = fixtures::example1();
    BidProfile bids = net.trueCost();
    bids["N"] = 16;
    bids["O"] = 16;
    CHECK(xMechanism(net, bids, DistributionRule::equalSplit()).total == 32);
    // F's only detour is N,O, so F's VCG payment rises with it.
    auto v = vcgPath(net, bids);
    CHECK(v.payment.at("F") == 27);
    CHECK(v.total == 51);
  }

  TEST_CASE("fig3: x, vcg and reverse vickrey coincide") {
    auto net = fixtures::fig3();
    MechanismConfig x;
    MechanismConfig vcg;
    vcg.kind = MechanismKind::vcg;
    MechanismConfig vickrey;
    vickrey.kind = MechanismKind::vickreySingle;
    auto rows = compareMechanisms(net, net.trueCost(), {x, vcg, vickrey});
    for (const auto& row : rows) CHECK(row.payment.at("e") == 5);
  }
}

TEST_SUITE("mechanism properties") {
  TEST_CASE("x identities on 200 random networks") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      INFO("seed " << seed);
      Network net = randomNetwork(seed, 8, 14);
      const BidProfile& bids = net.bid();
      auto ranked = rankForGroups(net);
      auto groups = classifyGroups(net, ranked);
      auto profits = groupProfits(groups, ranked);
      auto x = xMechanism(net, bids, DistributionRule::equalSplit());
      // Total is the cost of rank hMax + 1.
      CHECK(x.total == ranked[static_cast<std::size_t>(groups.hMax)].cost);
      // Conservation: bids on o1 plus every group profit.
      Rational expected(0);
      for (const auto& [agent, g] : groups.groupOf) expected += bids.at(agent);
      for (const auto& [g, value] : profits.q) expected += value;
      CHECK(x.total == expected);
      for (const auto& agent : net.agents()) {
        if (x.selected(agent)) {
          CHECK(x.payment.at(agent) > bids.at(agent));
          CHECK(x.utility.at(agent).isPositive());
        } else {
          CHECK(x.payment.at(agent) == 0);
          CHECK(x.utility.at(agent) == 0);
        }
      }
      auto vcg = vcgPath(net, bids);
      auto t1 = tradeoff1(net, bids, q("1/2"), DistributionRule::equalSplit());
      CHECK(t1.total <= vcg.total);
      auto t3 = tradeoff3(net, bids);
      for (const auto& agent : t3.selectedAgents) {
        CHECK(t3.payment.at(agent) - bids.at(agent) <= vcg.payment.at(agent) - bids.at(agent));
      }
      for (const auto& r : {vcg, t1, t3, tradeoff2(net, bids), firstPricePath(net, bids)}) {
        for (const auto& agent : net.agents()) {
          if (!r.selected(agent)) {
            CHECK(r.payment.at(agent) == 0);
            CHECK(r.utility.at(agent) == 0);
          }
        }
      }
    }
  }

  TEST_CASE("tradeoff2 schedule is flat across its first bracket") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      Network net = randomNetwork(seed, 8, 14);
      auto ranked = rankForGroups(net);
      auto groups = classifyGroups(net, ranked);
      for (const auto& [agent, k] : groups.groupOf) {
        const Rational width = ranked[static_cast<std::size_t>(k)].cost - ranked[static_cast<std::size_t>(k) - 1].cost;
        const Rational base = tradeoff2Schedule(net, net.bid(), agent, 0);
        CHECK(base == tradeoff2(net, net.bid()).payment.at(agent));
        for (int step = 1; step <= 4; ++step) {
          CHECK(tradeoff2Schedule(net, net.bid(), agent, width * Rational(step, 4)) == base);
        }
        const Rational beyond = ranked[static_cast<std::size_t>(k)].cost - ranked[0].cost + Rational(1, 2);
        CHECK(tradeoff2Schedule(net, net.bid(), agent, beyond) == 0);
      }
    }
  }
}
