#include "mcs/mcs.hpp"

#include "mcs/errors.hpp"
#include "mcs/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace mcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Studentizes a mean against a bootstrap variance. Degenerate variances map
/// to 0 when the mean is negligible too, otherwise to a signed sentinel that
/// dominates every finite statistic.
double studentize(double mean, double var, double tol) {
    if (var < tol) {
        if (std::fabs(mean) < tol) return 0.0;
        return mean > 0.0 ? kInf : -kInf;
    }
    return mean / std::sqrt(var);
}

/// Per-model bootstrap loss means: lstar(b, i) = n^-1 sum_t l_i,I(b,t).
Matrix bootstrap_loss_means(const Differentials& diffs, const BootPlan& plan,
                            unsigned threads) {
    const std::size_t k = diffs.size();
    const std::size_t n = diffs.n();
    const std::size_t b_total = plan.resamples();
    Matrix lstar(b_total, k);
    parallel_for(std::size_t{0}, b_total, threads, [&](std::size_t b) {
        const auto idx = plan.row(b);
        for (std::size_t i = 0; i < k; ++i) {
            const auto& col = diffs.loss_cols[i];
            double sum = 0.0;
            for (std::size_t t = 0; t < n; ++t) sum += col[idx[t]];
            lstar(b, i) = sum / static_cast<double>(n);
        }
    });
    return lstar;
}

}  // namespace

const char* to_string(Statistic s) {
    return s == Statistic::Tmax ? "Tmax" : "TR";
}

std::vector<double> Differentials::pair_series(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw invalid_input("pair_series: member index out of range");
    const std::size_t len = n();
    std::vector<double> d(len);
    for (std::size_t t = 0; t < len; ++t) d[t] = loss_cols[i][t] - loss_cols[j][t];
    return d;
}

Differentials compute_differentials(const LossMatrix& loss,
                                    const std::vector<std::size_t>& subset) {
    if (subset.size() < 2) throw invalid_input("compute_differentials: need at least two models");
    for (std::size_t id : subset) {
        if (id >= loss.m()) throw invalid_input("compute_differentials: model index out of range");
    }
    {
        std::vector<std::size_t> sorted_ids(subset);
        std::sort(sorted_ids.begin(), sorted_ids.end());
        if (std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) != sorted_ids.end())
            throw invalid_input("compute_differentials: duplicate model index in subset");
    }

    Differentials d;
    d.member_ids = subset;
    // Name order fixes every later summation order, so results do not depend
    // on how the caller happened to arrange the loss columns.
    std::sort(d.member_ids.begin(), d.member_ids.end(),
              [&](std::size_t a, std::size_t b) {
                  return loss.model_names[a] < loss.model_names[b];
              });

    const std::size_t k = d.member_ids.size();
    const std::size_t n = loss.n();
    d.names.reserve(k);
    d.loss_cols.reserve(k);
    for (std::size_t id : d.member_ids) {
        d.names.push_back(loss.model_names[id]);
        d.loss_cols.push_back(loss.values.col(id));
    }

    d.pair_mean = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double sum = 0.0;
            for (std::size_t t = 0; t < n; ++t) sum += d.loss_cols[i][t] - d.loss_cols[j][t];
            const double mean = sum / static_cast<double>(n);
            d.pair_mean(i, j) = mean;
            d.pair_mean(j, i) = -mean;
        }
    }

    d.set_mean.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            sum += d.pair_mean(i, j);
        }
        d.set_mean[i] = sum / static_cast<double>(k - 1);
    }
    return d;
}

EpaEvaluation evaluate_epa(const Differentials& diffs, const BootPlan& plan,
                           double zero_var_tol, unsigned threads) {
    const std::size_t k = diffs.size();
    if (k < 2) throw invalid_input("evaluate_epa: need at least two models");
    if (plan.n() != diffs.n()) throw invalid_input("evaluate_epa: plan length does not match sample");
    if (!(zero_var_tol > 0.0)) throw invalid_input("evaluate_epa: zero_var_tol must be positive");

    const std::size_t b_total = plan.resamples();
    const double n_b = static_cast<double>(b_total);
    const Matrix lstar = bootstrap_loss_means(diffs, plan, threads);

    // Bootstrap variances of the pairwise and set-average differential means.
    // Accumulated in resample order so every code path sums identically.
    Matrix var_pair(k, k);
    std::vector<double> var_dot(k, 0.0);
    std::vector<double> dot_draw(k, 0.0);
    for (std::size_t b = 0; b < b_total; ++b) {
        for (std::size_t i = 0; i < k; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                sum += lstar(b, i) - lstar(b, j);
            }
            dot_draw[i] = sum / static_cast<double>(k - 1);
            const double dev = dot_draw[i] - diffs.set_mean[i];
            var_dot[i] += dev * dev;
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const double dev = (lstar(b, i) - lstar(b, j)) - diffs.pair_mean(i, j);
                var_pair(i, j) += dev * dev;
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        var_dot[i] /= n_b;
        for (std::size_t j = i + 1; j < k; ++j) {
            var_pair(i, j) /= n_b;
            var_pair(j, i) = var_pair(i, j);
        }
    }

    EpaEvaluation out;
    out.stats.t_pair = Matrix(k, k);
    out.stats.t_dot.assign(k, 0.0);
    double t_range = -kInf;
    double t_max = -kInf;
    for (std::size_t i = 0; i < k; ++i) {
        out.stats.t_dot[i] = studentize(diffs.set_mean[i], var_dot[i], zero_var_tol);
        t_max = std::max(t_max, out.stats.t_dot[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            const double t = studentize(diffs.pair_mean(i, j), var_pair(i, j), zero_var_tol);
            out.stats.t_pair(i, j) = t;
            out.stats.t_pair(j, i) = -t;
            t_range = std::max(t_range, std::fabs(t));
        }
    }
    out.stats.t_range = t_range;
    out.stats.t_max = t_max;

    // Null draws: centered bootstrap differentials studentized by the same
    // variances as the observed statistics.
    out.null_tmax.assign(b_total, 0.0);
    out.null_tr.assign(b_total, 0.0);
    parallel_for(std::size_t{0}, b_total, threads, [&](std::size_t b) {
        double draw_max = -kInf;
        for (std::size_t i = 0; i < k; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                sum += lstar(b, i) - lstar(b, j);
            }
            const double dot = sum / static_cast<double>(k - 1);
            draw_max = std::max(draw_max,
                                studentize(dot - diffs.set_mean[i], var_dot[i], zero_var_tol));
        }
        double draw_range = -kInf;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const double dev = (lstar(b, i) - lstar(b, j)) - diffs.pair_mean(i, j);
                draw_range = std::max(
                    draw_range, std::fabs(studentize(dev, var_pair(i, j), zero_var_tol)));
            }
        }
        out.null_tmax[b] = draw_max;
        out.null_tr[b] = draw_range;
    });

    std::size_t ge_tmax = 0;
    std::size_t ge_tr = 0;
    for (std::size_t b = 0; b < b_total; ++b) {
        if (out.null_tmax[b] >= out.stats.t_max) ++ge_tmax;
        if (out.null_tr[b] >= out.stats.t_range) ++ge_tr;
    }
    out.p_tmax = static_cast<double>(ge_tmax) / n_b;
    out.p_tr = static_cast<double>(ge_tr) / n_b;
    return out;
}

EpaStatistics compute_statistics(const Differentials& diffs, const BootPlan& plan,
                                 double zero_var_tol, unsigned threads) {
    return evaluate_epa(diffs, plan, zero_var_tol, threads).stats;
}

double epa_pvalue(double t_obs, const Differentials& diffs, const BootPlan& plan,
                  Statistic kind, double zero_var_tol, unsigned threads) {
    const EpaEvaluation eval = evaluate_epa(diffs, plan, zero_var_tol, threads);
    const std::vector<double>& draws = kind == Statistic::Tmax ? eval.null_tmax : eval.null_tr;
    std::size_t ge = 0;
    for (double d : draws) {
        if (d >= t_obs) ++ge;
    }
    return static_cast<double>(ge) / static_cast<double>(draws.size());
}

std::size_t eliminate_worst(const EpaStatistics& stats, const std::vector<std::string>& names,
                            Statistic kind) {
    const std::size_t k = names.size();
    if (k < 2) throw invalid_input("eliminate_worst: need at least two models");
    if (stats.t_dot.size() != k || stats.t_pair.rows() != k)
        throw invalid_input("eliminate_worst: statistics do not match model count");

    std::vector<double> score(k, -kInf);
    if (kind == Statistic::Tmax) {
        score = stats.t_dot;
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                score[i] = std::max(score[i], stats.t_pair(i, j));
            }
        }
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (score[i] > score[worst] ||
            (score[i] == score[worst] && names[i] < names[worst])) {
            worst = i;
        }
    }
    return worst;
}

namespace {

void validate_config(const MCSConfig& cfg, std::size_t n) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw invalid_input("mcs_procedure: alpha must lie in (0, 1)");
    if (cfg.B < 100) throw invalid_input("mcs_procedure: need at least 100 bootstrap resamples");
    if (!(cfg.zero_var_tol > 0.0))
        throw invalid_input("mcs_procedure: zero_var_tol must be positive");
    if (cfg.block_len) {
        if (*cfg.block_len < 1) throw invalid_input("mcs_procedure: block_len must be positive");
        if (n < 2 * *cfg.block_len)
            throw invalid_input("mcs_procedure: sample too short for the requested block length");
    }
}

std::size_t resolve_block_length(const LossMatrix& loss, const MCSConfig& cfg) {
    if (cfg.block_len) return *cfg.block_len;
    const std::size_t n = loss.n();
    const std::size_t p_max = default_ar_order_cap(n);
    if (n < 2 * p_max + 2) return 1;
    std::vector<std::vector<double>> series;
    series.reserve(loss.m() * (loss.m() - 1) / 2);
    for (std::size_t i = 0; i < loss.m(); ++i) {
        for (std::size_t j = i + 1; j < loss.m(); ++j) {
            std::vector<double> d(n);
            for (std::size_t t = 0; t < n; ++t)
                d[t] = loss.values(t, i) - loss.values(t, j);
            series.push_back(std::move(d));
        }
    }
    return select_block_length(series, p_max, kDefaultArSignificance);
}

std::vector<double> column_means(const LossMatrix& loss) {
    std::vector<double> mean(loss.m(), 0.0);
    for (std::size_t i = 0; i < loss.m(); ++i) {
        double sum = 0.0;
        for (std::size_t t = 0; t < loss.n(); ++t) sum += loss.values(t, i);
        mean[i] = sum / static_cast<double>(loss.n());
    }
    return mean;
}

/// Ranks ascending by value; ties go to the smaller name.
std::vector<int> rank_ascending(const std::vector<double>& value,
                                const std::vector<std::string>& name) {
    std::vector<std::size_t> order(value.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (value[a] != value[b]) return value[a] < value[b];
        return name[a] < name[b];
    });
    std::vector<int> rank(value.size(), 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        rank[order[pos]] = static_cast<int>(pos + 1);
    return rank;
}

}  // namespace

SSMResult mcs_procedure(const LossMatrix& loss, const MCSConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    validate_config(cfg, loss.n());

    SSMResult result;
    result.statistic = cfg.statistic;
    result.config = cfg;
    result.n_obs = loss.n();
    result.m_initial = loss.m();

    const std::vector<double> mean_loss = column_means(loss);

    if (loss.m() == 1) {
        ModelReport row;
        row.name = loss.model_names[0];
        row.input_column = 0;
        row.rank_m = row.rank_r = 1;
        row.v_m = row.v_r = 0.0;
        row.p_m = row.p_r = 1.0;
        row.mean_loss = mean_loss[0];
        result.superior.push_back(std::move(row));
        result.block_len_used = cfg.block_len.value_or(1);
        result.single_model_warning = true;
        result.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    result.block_len_used = resolve_block_length(loss, cfg);
    const BootPlan plan =
        BootPlan::generate(loss.n(), result.block_len_used, cfg.B, cfg.seed, cfg.threads);

    std::vector<std::size_t> surviving(loss.m());
    std::iota(surviving.begin(), surviving.end(), std::size_t{0});

    double run_p_tmax = 0.0;  // running max of step p-values per statistic
    double run_p_tr = 0.0;
    Differentials last_diffs;
    EpaStatistics last_stats;
    bool accepted = false;

    while (!accepted) {
        if (surviving.size() == 1) {
            // A single survivor passes trivially; its step p-value is 1.
            run_p_tmax = run_p_tr = 1.0;
            break;
        }
        Differentials diffs = compute_differentials(loss, surviving);
        EpaEvaluation eval = evaluate_epa(diffs, plan, cfg.zero_var_tol, cfg.threads);
        run_p_tmax = std::max(run_p_tmax, eval.p_tmax);
        run_p_tr = std::max(run_p_tr, eval.p_tr);
        const double step_p = cfg.statistic == Statistic::Tmax ? eval.p_tmax : eval.p_tr;

        if (step_p >= cfg.alpha) {
            accepted = true;
        } else {
            const std::size_t pos = eliminate_worst(eval.stats, diffs.names, cfg.statistic);
            EliminationRecord rec;
            rec.name = diffs.names[pos];
            rec.step = result.eliminated.size() + 1;
            rec.step_p = step_p;
            rec.mcs_p_m = run_p_tmax;
            rec.mcs_p_r = run_p_tr;
            result.eliminated.push_back(std::move(rec));
            surviving.erase(std::find(surviving.begin(), surviving.end(),
                                      diffs.member_ids[pos]));
        }
        last_diffs = std::move(diffs);
        last_stats = std::move(eval.stats);
    }

    // Survivor statistics come from the last EPA test each model took part
    // in; all survivors share the monotonized p-value of the accepted step.
    const std::size_t k_final = surviving.size();
    std::vector<double> v_m(k_final, 0.0);
    std::vector<double> v_r(k_final, 0.0);
    std::vector<std::string> final_names(k_final);
    for (std::size_t pos = 0; pos < k_final; ++pos)
        final_names[pos] = loss.model_names[surviving[pos]];

    for (std::size_t pos = 0; pos < k_final; ++pos) {
        const auto it = std::find(last_diffs.member_ids.begin(), last_diffs.member_ids.end(),
                                  surviving[pos]);
        if (it == last_diffs.member_ids.end()) continue;  // m == 1 never reaches here
        const std::size_t at = static_cast<std::size_t>(it - last_diffs.member_ids.begin());
        v_m[pos] = last_stats.t_dot[at];
        double sup = -kInf;
        for (std::size_t j = 0; j < last_diffs.size(); ++j) {
            if (j == at) continue;
            sup = std::max(sup, last_stats.t_pair(at, j));
        }
        v_r[pos] = sup;
    }

    const std::vector<int> rank_m = rank_ascending(v_m, final_names);
    const std::vector<int> rank_r = rank_ascending(v_r, final_names);

    result.superior.reserve(k_final);
    for (std::size_t pos = 0; pos < k_final; ++pos) {
        ModelReport row;
        row.name = final_names[pos];
        row.input_column = surviving[pos];
        row.rank_m = rank_m[pos];
        row.v_m = v_m[pos];
        row.p_m = run_p_tmax;
        row.rank_r = rank_r[pos];
        row.v_r = v_r[pos];
        row.p_r = run_p_tr;
        row.mean_loss = mean_loss[surviving[pos]];
        result.superior.push_back(std::move(row));
    }
    std::sort(result.superior.begin(), result.superior.end(),
              [](const ModelReport& a, const ModelReport& b) {
                  return a.input_column < b.input_column;
              });

    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace mcs
