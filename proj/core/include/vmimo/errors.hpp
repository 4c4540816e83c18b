#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vmimo {

/// Problem in a config or experiment-spec file. `path` names the offending
/// field (e.g. "configs.SISO.grid.p_min_mw").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Refusal of the brute-force equilibrium enumeration: the profile space is
/// larger than the enumeration bound.
class OracleSizeError : public std::runtime_error {
public:
    OracleSizeError(double profile_count, double limit)
        : std::runtime_error("brute-force enumeration refused: " +
                             std::to_string(profile_count) + " profiles exceeds the " +
                             std::to_string(limit) + " bound"),
          profile_count_(profile_count),
          limit_(limit) {}

    double profile_count() const noexcept { return profile_count_; }
    double limit() const noexcept { return limit_; }

private:
    double profile_count_;
    double limit_;
};

}  // namespace vmimo
