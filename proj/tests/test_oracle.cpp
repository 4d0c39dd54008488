#include "doctest.h"
#include "mcs/mcs.hpp"
#include "mcs/rng.hpp"
#include "support/helpers.hpp"
#include "support/reference.hpp"

#include <cstdint>
#include <vector>

using namespace mcs;

namespace {

// Random instance sizes kept small enough for the naive reference.
struct Instance {
    LossMatrix loss;
    std::size_t block_len;
    std::uint64_t seed;
    std::size_t B;
};

Instance random_instance(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t m = 2 + rng.uniform_below(5);    // 2..6
    const std::size_t n = 20 + rng.uniform_below(181); // 20..200
    const std::size_t B = 50 + rng.uniform_below(151); // 50..200
    const std::size_t p = 1 + rng.uniform_below(n / 2);
    std::vector<std::vector<double>> cols(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
        const double mu = 0.5 * rng.normal();
        const double sd = 0.2 + rng.u01();
        for (std::size_t t = 0; t < n; ++t) cols[i][t] = mu + sd * rng.normal();
    }
    // occasionally duplicate a column to exercise the zero-variance rule
    if (m >= 3 && rng.u01() < 0.3) cols[1] = cols[0];
    if (m >= 2 && rng.u01() < 0.1) {
        for (auto& c : cols) c.assign(n, 1.5);  // fully tied set
    }
    return {testutil::from_columns(cols), p, seed * 7919 + 1, B};
}

}  // namespace

TEST_CASE("optimized engine matches the naive reference bit for bit") {
    for (std::uint64_t run = 1; run <= 50; ++run) {
        CAPTURE(run);
        Instance inst = random_instance(run);
        const std::size_t m = inst.loss.m();
        std::vector<std::size_t> subset(m);
        for (std::size_t i = 0; i < m; ++i) subset[i] = i;
        Differentials d = compute_differentials(inst.loss, subset);
        BootPlan plan =
            BootPlan::generate(inst.loss.n(), inst.block_len, inst.B, inst.seed);

        EpaEvaluation eval = evaluate_epa(d, plan, 1e-12);
        ref::Epa expected = ref::reference_epa(d.loss_cols, plan, 1e-12);

        for (std::size_t i = 0; i < m; ++i) {
            CHECK(d.pair_mean(i, i) == 0.0);
            CHECK(eval.stats.t_dot[i] == expected.t_dot[i]);
            CHECK(d.set_mean[i] == expected.set_mean[i]);
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(d.pair_mean(i, j) == expected.pair_mean(i, j));
                CHECK(eval.stats.t_pair(i, j) == expected.t_pair(i, j));
            }
        }
        CHECK(eval.stats.t_range == expected.t_range);
        CHECK(eval.stats.t_max == expected.t_max);
        REQUIRE(eval.null_tmax.size() == inst.B);
        for (std::size_t b = 0; b < inst.B; ++b) {
            CHECK(eval.null_tmax[b] == expected.null_tmax[b]);
            CHECK(eval.null_tr[b] == expected.null_tr[b]);
        }
        CHECK(eval.p_tmax == expected.p_tmax);
        CHECK(eval.p_tr == expected.p_tr);
        CHECK(epa_pvalue(eval.stats.t_max, d, plan, Statistic::Tmax, 1e-12) ==
              expected.p_tmax);
        CHECK(epa_pvalue(eval.stats.t_range, d, plan, Statistic::TR, 1e-12) ==
              expected.p_tr);
    }
}

TEST_CASE("multithreaded evaluation matches the reference too") {
    Instance inst = random_instance(99);
    const std::size_t m = inst.loss.m();
    std::vector<std::size_t> subset(m);
    for (std::size_t i = 0; i < m; ++i) subset[i] = i;
    Differentials d = compute_differentials(inst.loss, subset);
    BootPlan plan = BootPlan::generate(inst.loss.n(), inst.block_len, inst.B, inst.seed);
    ref::Epa expected = ref::reference_epa(d.loss_cols, plan, 1e-12);
    for (unsigned threads : {2u, 8u}) {
        EpaEvaluation eval = evaluate_epa(d, plan, 1e-12, threads);
        CHECK(eval.stats.t_max == expected.t_max);
        CHECK(eval.stats.t_range == expected.t_range);
        CHECK(eval.p_tmax == expected.p_tmax);
        CHECK(eval.p_tr == expected.p_tr);
        for (std::size_t b = 0; b < inst.B; ++b) {
            CHECK(eval.null_tmax[b] == expected.null_tmax[b]);
            CHECK(eval.null_tr[b] == expected.null_tr[b]);
        }
    }
}
