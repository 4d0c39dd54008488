#pragma once

#include "mcs/losses.hpp"
#include "mcs/matrix.hpp"
#include "mcs/rng.hpp"

#include <string>
#include <vector>

namespace testutil {

inline std::vector<std::string> default_names(std::size_t m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back("m" + std::to_string(i + 1));
    return names;
}

/// Loss matrix with iid N(mu_i, sd_i^2) columns.
inline mcs::LossMatrix normal_losses(std::size_t n, const std::vector<double>& mu,
                                     const std::vector<double>& sd, std::uint64_t seed,
                                     std::vector<std::string> names = {}) {
    const std::size_t m = mu.size();
    if (names.empty()) names = default_names(m);
    mcs::Rng rng(seed);
    mcs::Matrix values(n, m);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t i = 0; i < m; ++i) values(t, i) = mu[i] + sd[i] * rng.normal();
    return mcs::LossMatrix::create(values, names);
}

inline mcs::LossMatrix from_columns(const std::vector<std::vector<double>>& cols,
                                    std::vector<std::string> names = {}) {
    const std::size_t m = cols.size();
    const std::size_t n = cols.front().size();
    if (names.empty()) names = default_names(m);
    mcs::Matrix values(n, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < n; ++t) values(t, i) = cols[i][t];
    return mcs::LossMatrix::create(values, names);
}

}  // namespace testutil
