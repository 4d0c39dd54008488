#pragma once

#include "mcs/losses.hpp"
#include "mcs/matrix.hpp"
#include "mcs/tsboot.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcs {

/// EPA test statistic driving the elimination sequence.
enum class Statistic { Tmax, TR };

const char* to_string(Statistic s);

struct MCSConfig {
    double alpha = 0.2;
    std::size_t B = 5000;
    Statistic statistic = Statistic::Tmax;
    std::optional<std::size_t> block_len;  // auto-selected from AR fits when absent
    std::uint64_t seed = 0;
    double zero_var_tol = 1e-12;
    unsigned threads = 1;  // 0 = all hardware threads; result independent of the value
};

/// Loss differentials of the current model set. Members are held in model-name
/// order so the result of every downstream reduction is independent of the
/// input column order. Pairwise series d_ij,t are derived on demand from the
/// retained loss columns.
struct Differentials {
    std::vector<std::size_t> member_ids;  // source column index per member
    std::vector<std::string> names;       // name-sorted
    std::vector<std::vector<double>> loss_cols;
    Matrix pair_mean;              // k x k, pair_mean(i,j) = mean_t(l_i,t - l_j,t)
    std::vector<double> set_mean;  // (k-1)^-1 sum_{j != i} pair_mean(i,j)

    std::size_t size() const { return names.size(); }
    std::size_t n() const { return loss_cols.empty() ? 0 : loss_cols.front().size(); }
    std::vector<double> pair_series(std::size_t i, std::size_t j) const;
};

/// Studentized statistics of one EPA test.
struct EpaStatistics {
    Matrix t_pair;              // antisymmetric t_ij
    std::vector<double> t_dot;  // t_i.
    double t_range = 0.0;       // T_R   = max_{i,j} |t_ij|
    double t_max = 0.0;         // T_max = max_i t_i.
};

/// One full EPA evaluation: statistics plus bootstrap null draws of both
/// statistics, computed in a single pass over the plan.
struct EpaEvaluation {
    EpaStatistics stats;
    std::vector<double> null_tmax;  // per-resample null draws of T_max
    std::vector<double> null_tr;    // per-resample null draws of T_R
    double p_tmax = 1.0;
    double p_tr = 1.0;
};

Differentials compute_differentials(const LossMatrix& loss,
                                    const std::vector<std::size_t>& subset);

EpaEvaluation evaluate_epa(const Differentials& diffs, const BootPlan& plan,
                           double zero_var_tol, unsigned threads = 1);

EpaStatistics compute_statistics(const Differentials& diffs, const BootPlan& plan,
                                 double zero_var_tol, unsigned threads = 1);

/// Share of bootstrap null draws at or above T_obs.
double epa_pvalue(double t_obs, const Differentials& diffs, const BootPlan& plan,
                  Statistic kind, double zero_var_tol, unsigned threads = 1);

/// Position (within the tested set) of the model the elimination rule removes.
/// Ties go to the lexicographically smallest model name.
std::size_t eliminate_worst(const EpaStatistics& stats, const std::vector<std::string>& names,
                            Statistic kind);

struct ModelReport {
    std::string name;
    std::size_t input_column = 0;
    int rank_m = 0;
    double v_m = 0.0;  // final t_i.
    double p_m = 1.0;  // MCS p-value under Tmax
    int rank_r = 0;
    double v_r = 0.0;  // final max_j t_ij
    double p_r = 1.0;  // MCS p-value under TR
    double mean_loss = 0.0;
};

struct EliminationRecord {
    std::string name;
    std::size_t step = 0;   // 1-based elimination step
    double step_p = 0.0;    // raw p-value of the rejecting test (driving statistic)
    double mcs_p_m = 0.0;   // monotonized p-value track under Tmax
    double mcs_p_r = 0.0;   // monotonized p-value track under TR
};

struct SSMResult {
    std::vector<ModelReport> superior;  // in original input-column order
    std::vector<EliminationRecord> eliminated;
    Statistic statistic = Statistic::Tmax;
    MCSConfig config;
    std::size_t block_len_used = 1;
    std::size_t n_obs = 0;
    std::size_t m_initial = 0;
    double elapsed_seconds = 0.0;
    bool single_model_warning = false;
};

/// The sequential Model Confidence Set procedure. Tests EPA on the surviving
/// set, removes the worst model while the test rejects at level alpha, and
/// reports the Superior Set with per-model statistics and monotonized MCS
/// p-values. Deterministic given the configuration, for any thread count.
SSMResult mcs_procedure(const LossMatrix& loss, const MCSConfig& cfg);

}  // namespace mcs
