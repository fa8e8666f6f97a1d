#pragma once

#include <array>
#include <cstdint>

namespace jumpimpact {

/// Philox4x32-10 counter-based generator.
/// A (key, counter) pair maps to four 32-bit words with no hidden state.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key);

/// One independent random stream per (seed, path). The key is the seed and the
/// counter carries the path index plus a running block index, so a path's draws
/// never depend on how paths are scheduled across threads.
/// Normals use Box-Muller and Poisson counts use inversion.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    std::uint32_t poisson(double mean);

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace jumpimpact
