#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumpimpact/hedge.hpp"
#include "jumpimpact/simulate.hpp"
#include "jumpimpact/surface.hpp"

namespace jumpimpact::csv {

/// 12 significant digits, '.' separator, negative zero printed as 0.
[[nodiscard]] std::string number(double x);

/// "# config_hash=<16 hex digits> seed=<u64|none>\n"
[[nodiscard]] std::string header_comment(std::uint64_t config_hash, std::optional<std::uint64_t> seed);

/// One row per time node: t followed by the value at every S node. The first
/// data row lists the S nodes under a leading "t\\S" cell.
[[nodiscard]] std::string surface_table(const Grid& grid, const std::vector<double>& values,
                                        std::uint64_t config_hash);

/// Columns path,t,S,theta,V,A,N with one row per path per time node.
[[nodiscard]] std::string path_table(const PathBundle& bundle, std::uint64_t config_hash);

/// Columns strategy,n_paths,n_steps,seed,estimate,std_error.
[[nodiscard]] std::string replication_table(const std::vector<ReplicationReport>& reports,
                                            std::uint64_t config_hash, std::uint64_t seed);

/// Writes to "<path>.tmp" and renames over path. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace jumpimpact::csv
