#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpj/model.hpp"
#include "qpj/spectrum.hpp"

namespace qpj {

// Columns: energy,status,N,contraction_sup,transversality_min,kernel_clearance,lambda_gap,le_A,le_B,dist_trunc
// Rows are written in ascending energy; numbers use the shortest round-trip form.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
// Throws ParseError on malformed input.
std::vector<ScanRow> read_scan_csv(std::istream& is);

// Structured summary: model label, config echo, Sigma-estimate intervals, Hausdorff distance,
// coverage radius, status counts, Combes-Thomas report. Pretty-printed JSON.
std::string summary_json(const JacobiModel& m, const ScanConfig& config, const ScanResult& result,
                         const CombesThomasReport& ct);

// Writes the CSV and the summary; throws std::runtime_error naming the path on I/O failure.
void persist(const std::filesystem::path& csv, const std::filesystem::path& summary,
             const JacobiModel& m, const ScanConfig& config, const ScanResult& result,
             const CombesThomasReport& ct);

}  // namespace qpj
