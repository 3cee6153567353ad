#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pathauction/analysis.hpp"
#include "pathauction/mechanisms.hpp"
#include "pathauction/network.hpp"

namespace pathauction {

/// Network document:
///   {"nodes": [...], "edges": [{"id", "from", "to", "owner", "true_cost", "bid"?}],
///    "source": ..., "sink": ...}
/// Costs are strings ("3" or "3/2"). A missing bid defaults to the true cost.
/// Unknown keys and malformed values throw ParseError.
Network parseNetwork(std::string_view json);
Network loadNetwork(const std::filesystem::path& file);

/// Canonical form: fixed key order, two-space indent, trailing newline;
/// "bid" is written only where it differs from "true_cost".
std::string networkToJson(const Network& network);

/// {"agent": "cost", ...}
BidProfile parseBidProfile(std::string_view json);
BidProfile loadBidProfile(const std::filesystem::path& file);
std::string bidProfileToJson(const BidProfile& bids);

std::string paymentResultToJson(const Network& network, const PaymentResult& result, const std::string& mechanism,
                                const std::vector<std::string>& notes = {});
std::string consistencyReportToJson(const ConsistencyReport& report);
std::string propertyReportToJson(const PropertyReport& report);

}  // namespace pathauction
