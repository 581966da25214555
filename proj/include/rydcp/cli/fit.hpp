#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rydcp/cli/scan.hpp"

namespace rydcp::cli {

enum class FitKind { PowerLaw, C3TwoTerm, C3Single, Empirical, Oscillation, LinearT };

FitKind parse_fit_kind(const std::string& name);
std::string fit_kind_name(FitKind kind);

struct FitRequest {
  FitKind kind = FitKind::PowerLaw;
  std::string column = "u_total_Hz";
  /// Oscillation fits: start of the retarded zone. Defaults to
  /// 2 pi c / |omega(nS -> (n-1)P1/2)| from the n column.
  std::optional<double> lambda_start;
};

/// Fits a potential table written by `scan`. Rows are grouped by every input
/// column that the fit does not consume; rows with an error are skipped.
nlohmann::json run_fit(const Table& table, const FitRequest& request);

}  // namespace rydcp::cli
