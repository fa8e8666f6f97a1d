#include "jumpimpact/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace jumpimpact::csv {

std::string number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string header_comment(std::uint64_t config_hash, std::optional<std::uint64_t> seed) {
    char buf[96];
    if (seed) {
        std::snprintf(buf, sizeof buf, "# config_hash=%016" PRIx64 " seed=%" PRIu64 "\n", config_hash, *seed);
    } else {
        std::snprintf(buf, sizeof buf, "# config_hash=%016" PRIx64 " seed=none\n", config_hash);
    }
    return buf;
}

std::string surface_table(const Grid& grid, const std::vector<double>& values, std::uint64_t config_hash) {
    const std::size_t ns = grid.s.size();
    std::string out = header_comment(config_hash, std::nullopt);
    out += "t\\S";
    for (double s : grid.s) out += "," + number(s);
    out += '\n';
    for (std::size_t j = 0; j < grid.t.size(); ++j) {
        out += number(grid.t[j]);
        for (std::size_t i = 0; i < ns; ++i) out += "," + number(values[j * ns + i]);
        out += '\n';
    }
    return out;
}

std::string path_table(const PathBundle& b, std::uint64_t config_hash) {
    std::string out = header_comment(config_hash, b.seed);
    out += "path,t,S,theta,V,A,N\n";
    for (std::size_t p = 0; p < b.n_paths; ++p) {
        for (std::size_t j = 0; j <= b.n_steps; ++j) {
            const std::size_t k = b.at(p, j);
            out += std::to_string(p) + "," + number(b.time[j]) + "," + number(b.s[k]) + "," + number(b.theta[k]) +
                   "," + number(b.v[k]) + "," + number(b.account[k]) + "," + std::to_string(b.jumps[k]) + "\n";
        }
    }
    return out;
}

std::string replication_table(const std::vector<ReplicationReport>& reports, std::uint64_t config_hash,
                               std::uint64_t seed) {
    std::string out = header_comment(config_hash, seed);
    out += "strategy,n_paths,n_steps,seed,estimate,std_error\n";
    for (const auto& r : reports) {
        out += r.strategy + "," + std::to_string(r.n_paths) + "," + std::to_string(r.n_steps) + "," +
               std::to_string(r.seed) + "," + number(r.estimate) + "," + number(r.std_error) + "\n";
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace jumpimpact::csv
