#include "mcs/backtest.hpp"
#include "mcs/csv.hpp"
#include "mcs/errors.hpp"
#include "mcs/garch.hpp"
#include "mcs/losses.hpp"
#include "mcs/mcs.hpp"
#include "mcs/report.hpp"
#include "mcs/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

void write_manifest(const std::string& out_path, json manifest) {
    manifest["tool"] = "mcstool";
    manifest["version"] = mcs::kVersion;
    const std::string path = out_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw mcs::invalid_input(path + ": cannot open file for writing");
    out << manifest.dump(2) << '\n';
    if (!out) throw mcs::numeric_error(path + ": write failed");
}

struct LossOptions {
    std::string realized;
    std::string evaluated;
    std::string out;
    std::string kind;
    double tau = 0.01;
    double delta = 25.0;
};

void run_loss(const LossOptions& opt) {
    const std::vector<double> realized = mcs::read_series(opt.realized);
    mcs::NamedMatrix evaluated = mcs::read_named_matrix(opt.evaluated);

    mcs::LossMatrix loss = [&] {
        if (opt.kind == "var" || opt.kind == "var-diff") {
            mcs::LossVaRConfig cfg;
            cfg.tau = opt.tau;
            cfg.delta = opt.delta;
            cfg.variant = opt.kind == "var" ? mcs::VarLossVariant::Normal
                                            : mcs::VarLossVariant::Differentiable;
            return mcs::loss_var(realized, evaluated.values, cfg, evaluated.names);
        }
        if (opt.kind == "SE1") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::SE1, evaluated.names);
        if (opt.kind == "SE2") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::SE2, evaluated.names);
        if (opt.kind == "QLIKE") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::QLIKE, evaluated.names);
        if (opt.kind == "R2LOG") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::R2LOG, evaluated.names);
        if (opt.kind == "AE1") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::AE1, evaluated.names);
        if (opt.kind == "AE2") return mcs::loss_vol(realized, evaluated.values, mcs::VolLossKind::AE2, evaluated.names);
        if (opt.kind == "SE") return mcs::loss_level(realized, evaluated.values, mcs::LevelLossKind::SE, evaluated.names);
        if (opt.kind == "AE") return mcs::loss_level(realized, evaluated.values, mcs::LevelLossKind::AE, evaluated.names);
        throw mcs::invalid_input("unknown loss kind '" + opt.kind +
                                 "' (expected var, var-diff, SE1, SE2, QLIKE, R2LOG, AE1, AE2, SE or AE)");
    }();

    mcs::write_named_matrix(opt.out, loss.values, loss.model_names);
    write_manifest(opt.out, json{{"command", "loss"},
                                 {"realized", opt.realized},
                                 {"evaluated", opt.evaluated},
                                 {"out", opt.out},
                                 {"kind", opt.kind},
                                 {"tau", opt.tau},
                                 {"delta", opt.delta}});
}

struct McsOptions {
    std::string loss_csv;
    std::string out;
    std::string statistic = "Tmax";
    std::string format = "text";
    double alpha = 0.2;
    std::size_t B = 5000;
    std::optional<std::size_t> block_len;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void run_mcs(const McsOptions& opt) {
    const mcs::LossMatrix loss = mcs::read_loss_csv(opt.loss_csv);
    mcs::MCSConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.B = opt.B;
    if (opt.statistic == "Tmax") {
        cfg.statistic = mcs::Statistic::Tmax;
    } else if (opt.statistic == "TR") {
        cfg.statistic = mcs::Statistic::TR;
    } else {
        throw mcs::invalid_input("unknown statistic '" + opt.statistic + "' (expected Tmax or TR)");
    }
    cfg.block_len = opt.block_len;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;

    const mcs::SSMResult result = mcs::mcs_procedure(loss, cfg);
    mcs::write_ssm_report(result, opt.out, mcs::report_format_from_string(opt.format));

    json manifest{{"command", "mcs"},
                  {"loss", opt.loss_csv},
                  {"out", opt.out},
                  {"alpha", opt.alpha},
                  {"B", opt.B},
                  {"statistic", opt.statistic},
                  {"seed", opt.seed},
                  {"threads", opt.threads},
                  {"format", opt.format},
                  {"block_len_used", result.block_len_used},
                  {"eliminated", result.eliminated.size()},
                  {"survivors", result.superior.size()}};
    if (opt.block_len) manifest["block_len"] = *opt.block_len;
    write_manifest(opt.out, std::move(manifest));
}

struct GarchRollOptions {
    std::string returns;
    std::string out;
    std::string dynamics = "garch";
    std::string innovation = "norm";
    std::size_t forecast_length = 0;
    std::size_t refit_every = 1;
    double tau = 0.01;
};

void run_garch_roll(const GarchRollOptions& opt) {
    const std::vector<double> returns = mcs::read_series(opt.returns);
    mcs::GarchSpec spec;
    spec.dynamics = mcs::dynamics_from_string(opt.dynamics);
    spec.innovation = mcs::innovation_from_string(opt.innovation);

    const mcs::RollVarResult roll =
        mcs::roll_var_forecast(spec, returns, opt.forecast_length, opt.refit_every, opt.tau);

    const std::string name = opt.dynamics + "-" + opt.innovation;
    mcs::write_series(opt.out, roll.var, name);
    write_manifest(opt.out, json{{"command", "garch-roll"},
                                 {"returns", opt.returns},
                                 {"out", opt.out},
                                 {"dynamics", opt.dynamics},
                                 {"innovation", opt.innovation},
                                 {"forecast_length", opt.forecast_length},
                                 {"refit_every", opt.refit_every},
                                 {"tau", opt.tau},
                                 {"n_refits", roll.n_refits},
                                 {"refit_failures", roll.refit_failures}});
}

struct BacktestOptions {
    std::string returns;
    std::string var_csv;
    std::string out;
    double tau = 0.01;
};

void run_backtest(const BacktestOptions& opt) {
    const std::vector<double> returns = mcs::read_series(opt.returns);
    const mcs::NamedMatrix var = mcs::read_named_matrix(opt.var_csv);
    if (var.values.rows() != returns.size())
        throw mcs::invalid_input("backtest: returns and VaR files have different lengths");

    std::ofstream out(opt.out);
    if (!out) throw mcs::invalid_input(opt.out + ": cannot open file for writing");
    out << "series,n,tau,violations,AE,ADmean,ADmax\n";
    for (std::size_t c = 0; c < var.values.cols(); ++c) {
        const std::vector<double> series = var.values.col(c);
        const mcs::VarBacktestReport report = mcs::backtest_var(returns, series, opt.tau);
        out << var.names[c] << ',' << report.n << ',' << mcs::format_full(report.tau) << ','
            << report.violations << ',' << mcs::format_full(report.ae) << ',';
        if (report.ad_mean) out << mcs::format_full(*report.ad_mean);
        out << ',';
        if (report.ad_max) out << mcs::format_full(*report.ad_max);
        out << '\n';
    }
    if (!out) throw mcs::numeric_error(opt.out + ": write failed");

    write_manifest(opt.out, json{{"command", "backtest"},
                                 {"returns", opt.returns},
                                 {"var", opt.var_csv},
                                 {"out", opt.out},
                                 {"tau", opt.tau}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model Confidence Set toolkit"};
    app.require_subcommand(1);

    LossOptions loss_opt;
    CLI::App* loss_cmd = app.add_subcommand("loss", "Build a loss matrix from forecasts");
    loss_cmd->add_option("realized", loss_opt.realized, "CSV with the realized series")->required();
    loss_cmd->add_option("evaluated", loss_opt.evaluated, "CSV with one forecast column per model")
        ->required();
    loss_cmd->add_option("--kind", loss_opt.kind,
                         "Loss kind: var, var-diff, SE1, SE2, QLIKE, R2LOG, AE1, AE2, SE, AE")
        ->required();
    loss_cmd->add_option("--tau", loss_opt.tau, "VaR level for var kinds")
        ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
    loss_cmd->add_option("--delta", loss_opt.delta, "Smoothing for var-diff")
        ->check(CLI::PositiveNumber);
    loss_cmd->add_option("--out", loss_opt.out, "Output CSV path")->required();

    McsOptions mcs_opt;
    CLI::App* mcs_cmd = app.add_subcommand("mcs", "Run the MCS procedure on a loss matrix");
    mcs_cmd->add_option("loss", mcs_opt.loss_csv, "Loss matrix CSV")->required();
    mcs_cmd->add_option("--alpha", mcs_opt.alpha, "Test level in (0, 1)")
        ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
    mcs_cmd->add_option("--B", mcs_opt.B, "Bootstrap resamples");
    mcs_cmd->add_option("--statistic", mcs_opt.statistic, "Tmax or TR");
    mcs_cmd->add_option("--block-len", mcs_opt.block_len,
                        "Bootstrap block length (auto-selected when omitted)");
    mcs_cmd->add_option("--seed", mcs_opt.seed, "Bootstrap seed");
    mcs_cmd->add_option("--threads", mcs_opt.threads, "Worker threads, 0 = all");
    mcs_cmd->add_option("--format", mcs_opt.format, "Report format: text or csv");
    mcs_cmd->add_option("--out", mcs_opt.out, "Report output path")->required();

    GarchRollOptions roll_opt;
    CLI::App* roll_cmd = app.add_subcommand("garch-roll", "Rolling one-step VaR forecasts");
    roll_cmd->add_option("returns", roll_opt.returns, "Return series CSV")->required();
    roll_cmd->add_option("--dynamics", roll_opt.dynamics, "garch, gjr or egarch");
    roll_cmd->add_option("--innovation", roll_opt.innovation, "norm or std");
    roll_cmd->add_option("--forecast-length", roll_opt.forecast_length, "Forecast dates")
        ->required();
    roll_cmd->add_option("--refit-every", roll_opt.refit_every, "Steps between refits");
    roll_cmd->add_option("--tau", roll_opt.tau, "VaR level")
        ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
    roll_cmd->add_option("--out", roll_opt.out, "Output CSV path")->required();

    BacktestOptions back_opt;
    CLI::App* back_cmd = app.add_subcommand("backtest", "Backtest VaR forecast series");
    back_cmd->add_option("returns", back_opt.returns, "Return series CSV")->required();
    back_cmd->add_option("var", back_opt.var_csv, "VaR forecast CSV, one column per series")
        ->required();
    back_cmd->add_option("--tau", back_opt.tau, "VaR level")
        ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
    back_cmd->add_option("--out", back_opt.out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (loss_cmd->parsed()) run_loss(loss_opt);
        if (mcs_cmd->parsed()) run_mcs(mcs_opt);
        if (roll_cmd->parsed()) run_garch_roll(roll_opt);
        if (back_cmd->parsed()) run_backtest(back_opt);
    } catch (const mcs::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
