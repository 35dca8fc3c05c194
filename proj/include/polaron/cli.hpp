#pragma once

#include <string>

#include "polaron/io.hpp"

namespace polaron {

enum class Format { Json, Csv, Text };

/// Parses "json" / "csv" / "text". Throws Error(ConfigError).
Format parse_format(const std::string& name);

struct Report {
  std::string command;
  json data;
  bool ok = false;
};

/// Full identity suite; ok iff every check passes.
Report cmd_verify(const RunConfig& config);
/// Nilpotent ED of the Hamiltonian (homogeneous chain) and the Fourier
/// series of every eigenvalue curve of t(u). Writes the explicit Hamiltonian
/// in matrix JSON to `dump_operator` when non-empty.
Report cmd_spectrum(const RunConfig& config, const std::string& dump_operator = "");
/// Solves every level; ok iff all converge below the tolerance.
Report cmd_bae(const RunConfig& config);
/// ED against BAE energies on the homogeneous chain; ok iff every level is
/// matched with body and g deltas below the tolerance.
Report cmd_compare(const RunConfig& config);

std::string render(const Report& report, Format format);

/// 0 on success, 1 when a check fails.
inline int exit_code(const Report& report) { return report.ok ? 0 : 1; }

}  // namespace polaron
