#pragma once

#include <cstddef>
#include <cstdint>

#include "pathauction/network.hpp"

namespace pathauction {

struct CostRange {
  std::int64_t lo = 1;
  std::int64_t hi = 9;
};

/// A valid, seeded random network: two edge-disjoint source-to-sink routes
/// plus random extra edges, integer costs drawn uniformly from the range,
/// bids equal to true costs. Draws are rejected until the network validates
/// and all loopless path costs are distinct; GenerationFailedError after
/// `retries` rejected draws. The same arguments always give the same network.
Network randomNetwork(std::uint64_t seed, std::size_t nodeBudget, std::size_t edgeBudget,
                      CostRange costs = {}, int retries = 5000);

}  // namespace pathauction
