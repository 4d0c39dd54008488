#pragma once

#include "mcs/mcs.hpp"

#include <string>

namespace mcs {

enum class ReportFormat { Text, Csv };

ReportFormat report_format_from_string(const std::string& name);

/// Fixed-width Superior Set report: banner, one row per surviving model with
/// Rank_M, v_M, MCS_M, Rank_R, v_R, MCS_R and mean loss, then a Details
/// footer with the eliminated count, statistic and elapsed time.
std::string render_ssm_text(const SSMResult& result);

/// Machine-readable rendering carrying the same values at full precision,
/// plus one row per eliminated model with its elimination step.
std::string render_ssm_csv(const SSMResult& result);

void write_ssm_report(const SSMResult& result, const std::string& path, ReportFormat format);

}  // namespace mcs
