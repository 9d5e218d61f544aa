/// @file report.hpp
/// @brief Deterministic CSV/JSON artifact writers.
///
/// Reals are printed with 17 significant digits; nothing time-dependent is written into
/// data files.
#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nslab/config.hpp"
#include "nslab/integrate.hpp"
#include "nslab/quadform.hpp"
#include "nslab/uniqueness.hpp"

namespace nslab {

std::string format_real(double x);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Digest of canonical_text(config).
std::string config_hash(const RunConfig& config);

/// `t,energy,dirichlet,work,balance_residual,div_max`, one row per stored snapshot.
void write_timeseries(std::ostream& out, const TrajectoryRecord& record);

/// `t,w_energy,envelope`
void write_gronwall_csv(std::ostream& out, const GronwallCertificate& cert);

/// {config_hash, c_used, c_source, holds, certificates: [{time, lhs, rhs, holds, c_used, lambda1, ...}]}
std::string certificate_json(const std::vector<QuadFormCertificate>& certs, const std::string& hash,
                             const std::string& c_source);

/// {config_hash, epsilon, c_used, C_used, max_ratio, holds}
std::string gronwall_json(const GronwallCertificate& cert, double epsilon, double c_used, const std::string& hash);

/// Writes `content` atomically enough for batch use; throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace nslab
