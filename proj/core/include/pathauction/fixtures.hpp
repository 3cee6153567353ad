#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathauction/network.hpp"

namespace pathauction::fixtures {

/// Sixteen-edge network whose six loopless paths cost 6, 7, 9, 10, 15, 16.
Network example1();
/// Three unit edges in series (a, b, c) against one parallel edge d of cost 5.
Network fig2();
/// Two parallel source-to-sink edges e (1) and f (5).
Network fig3();
/// r, s in series (1 each) against u (4).
Network xsmall();

std::vector<std::string> names();
std::optional<Network> byName(const std::string& name);

}  // namespace pathauction::fixtures
