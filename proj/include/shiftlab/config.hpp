#pragma once

#include <cstdint>
#include <string>

namespace shiftlab {

inline constexpr int kDefaultOrder = 256;
inline constexpr double kDefaultTolerance = 1e-10;

/// Run-wide knobs shared by the CLI and the verification suites.
struct RunConfig {
    int truncation_order = kDefaultOrder;
    double tolerance = kDefaultTolerance;
    std::string output_format = "json";  // json | csv | text
    std::uint64_t seed = 0;

    /// Throws DomainError unless truncation_order >= 8 and
    /// tolerance in (0, 1e-4].
    void validate() const;

    /// Default truncation order, honoring the SHIFTLAB_TRUNCATION
    /// environment variable when set.
    static int env_truncation_default();
};

}  // namespace shiftlab
