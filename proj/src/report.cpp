#include "mcs/report.hpp"

#include "mcs/csv.hpp"
#include "mcs/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcs {

namespace {

constexpr std::size_t kBandWidth = 78;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string significant(double v) { return fmt("%.10g", v); }
std::string pvalue(double v) { return fmt("%.4f", v); }

std::string banner_title() {
    const std::string title = "Superior Set of Models";
    const std::size_t inner = kBandWidth - 2;
    const std::size_t left = (inner - title.size()) / 2 + 1;
    const std::size_t right = inner - title.size() - left;
    return "-" + std::string(left, ' ') + title + std::string(right, ' ') + "-";
}

std::string rjust(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string ljust(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    throw invalid_input("unknown report format '" + name + "' (expected text or csv)");
}

std::string render_ssm_text(const SSMResult& result) {
    const std::array<std::string, 7> header = {"Rank_M", "v_M",   "MCS_M", "Rank_R",
                                               "v_R",    "MCS_R", "Loss"};
    std::vector<std::array<std::string, 7>> cells;
    cells.reserve(result.superior.size());
    std::size_t name_width = 0;
    for (const ModelReport& row : result.superior) {
        name_width = std::max(name_width, row.name.size());
        cells.push_back({std::to_string(row.rank_m), significant(row.v_m), pvalue(row.p_m),
                         std::to_string(row.rank_r), significant(row.v_r), pvalue(row.p_r),
                         significant(row.mean_loss)});
    }
    std::array<std::size_t, 7> width{};
    for (std::size_t c = 0; c < 7; ++c) {
        width[c] = header[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }

    std::ostringstream out;
    const std::string band(kBandWidth, '-');
    out << band << '\n' << banner_title() << '\n' << band << '\n';
    out << std::string(name_width, ' ');
    for (std::size_t c = 0; c < 7; ++c) out << ' ' << rjust(header[c], width[c]);
    out << '\n';
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out << ljust(result.superior[r].name, name_width);
        for (std::size_t c = 0; c < 7; ++c) out << ' ' << rjust(cells[r][c], width[c]);
        out << '\n';
    }
    out << band << '\n';
    out << "Details\n";
    out << "Number of eliminated models : " << result.eliminated.size() << '\n';
    out << "Statistic : " << to_string(result.statistic) << '\n';
    out << "Elapsed Time : " << fmt("%.6f", result.elapsed_seconds) << " secs\n";
    if (result.single_model_warning)
        out << "Warning : a single model was supplied, nothing to compare\n";
    return out.str();
}

std::string render_ssm_csv(const SSMResult& result) {
    std::ostringstream out;
    out << "model,status,rank_M,v_M,MCS_M,rank_R,v_R,MCS_R,loss,step,step_p\n";
    for (const ModelReport& row : result.superior) {
        out << row.name << ",superior," << row.rank_m << ',' << format_full(row.v_m) << ','
            << format_full(row.p_m) << ',' << row.rank_r << ',' << format_full(row.v_r) << ','
            << format_full(row.p_r) << ',' << format_full(row.mean_loss) << ",,\n";
    }
    for (const EliminationRecord& rec : result.eliminated) {
        out << rec.name << ",eliminated,,," << format_full(rec.mcs_p_m) << ",,,"
            << format_full(rec.mcs_p_r) << ",," << rec.step << ',' << format_full(rec.step_p)
            << '\n';
    }
    return out.str();
}

void write_ssm_report(const SSMResult& result, const std::string& path, ReportFormat format) {
    std::ofstream out(path);
    if (!out) throw invalid_input(path + ": cannot open file for writing");
    out << (format == ReportFormat::Text ? render_ssm_text(result) : render_ssm_csv(result));
    if (!out) throw numeric_error(path + ": write failed");
}

}  // namespace mcs
