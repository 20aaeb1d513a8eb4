#pragma once

// CSV writers and readers for run and sweep artifacts.
//
//   sweep      axis1,axis2,iteration,seed,final_polarization
//   aggregate  axis1,axis2,mean,sd,q1,median,q3
//   boxplot    axis1,axis2,whisker_low,q1,median,q3,whisker_high,mean
//   timeseries step,polarization
//   snapshot   step,actor,dim0[,dim1...]
//   fit        axis,a,k,x0,rmse,converged
//
// axis2 is left empty for single-axis sweeps. Numbers are written in shortest
// round-trip form, so files are byte-identical for identical results.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arm/engine.hpp"
#include "arm/errors.hpp"
#include "arm/logistic_fit.hpp"
#include "arm/sweep.hpp"
#include "arm/text_format.hpp"

namespace arm {

inline void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

namespace detail {

inline std::string axis_prefix(const SweepCell& cell)
{
    std::string out = format_double(cell.axis_values.at(0)) + ",";
    if (cell.axis_values.size() > 1) {
        out += format_double(cell.axis_values[1]);
    }
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        fields.emplace_back(trim(std::string_view(line).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) {
            return fields;
        }
        pos = comma + 1;
    }
}

}  // namespace detail

inline std::string sweep_csv(const SweepResult& result)
{
    std::ostringstream out;
    out << "axis1,axis2,iteration,seed,final_polarization\n";
    for (const auto& cell : result.cells) {
        const auto prefix = detail::axis_prefix(cell);
        for (std::size_t i = 0; i < cell.finals.size(); ++i) {
            out << prefix << ',' << i << ',' << result.seed_list.at(i) << ',' << format_double(cell.finals[i]) << '\n';
        }
    }
    return out.str();
}

inline std::string aggregate_csv(const SweepResult& result)
{
    std::ostringstream out;
    out << "axis1,axis2,mean,sd,q1,median,q3\n";
    for (const auto& cell : result.cells) {
        const auto& s = cell.summary;
        out << detail::axis_prefix(cell) << ',' << format_double(s.mean) << ',' << format_double(s.sd) << ','
            << format_double(s.q1) << ',' << format_double(s.median) << ',' << format_double(s.q3) << '\n';
    }
    return out.str();
}

inline std::string boxplot_csv(const SweepResult& result)
{
    std::ostringstream out;
    out << "axis1,axis2,whisker_low,q1,median,q3,whisker_high,mean\n";
    for (const auto& cell : result.cells) {
        const auto& s = cell.summary;
        out << detail::axis_prefix(cell) << ',' << format_double(s.whisker_low) << ',' << format_double(s.q1) << ','
            << format_double(s.median) << ',' << format_double(s.q3) << ',' << format_double(s.whisker_high) << ','
            << format_double(s.mean) << '\n';
    }
    return out.str();
}

inline std::string timeseries_csv(const TrajectoryRecord& rec)
{
    std::ostringstream out;
    out << "step,polarization\n";
    for (const auto& p : rec.series) {
        out << p.step << ',' << format_double(p.polarization) << '\n';
    }
    return out.str();
}

inline std::string snapshot_csv(const Snapshot& snap, std::size_t dims)
{
    std::ostringstream out;
    out << "step,actor";
    for (std::size_t d = 0; d < dims; ++d) {
        out << ",dim" << d;
    }
    out << '\n';
    const std::size_t n = snap.positions.size() / dims;
    for (std::size_t i = 0; i < n; ++i) {
        out << snap.step << ',' << i;
        for (std::size_t d = 0; d < dims; ++d) {
            out << ',' << format_double(snap.positions[i * dims + d]);
        }
        out << '\n';
    }
    return out.str();
}

inline std::string fit_csv_header() { return "axis,a,k,x0,rmse,converged\n"; }

inline std::string fit_csv_row(const std::string& axis, const LogisticFit& fit)
{
    return axis + ',' + format_double(fit.a) + ',' + format_double(fit.k) + ',' + format_double(fit.x0) + ',' +
           format_double(fit.rmse) + ',' + (fit.converged ? "true" : "false") + '\n';
}

/// One row of a sweep CSV.
struct SweepRow
{
    double axis1 = 0.0;
    std::optional<double> axis2;
    std::size_t iteration = 0;
    std::uint64_t seed = 0;
    double final_polarization = 0.0;
};

inline std::vector<SweepRow> parse_sweep_csv(std::string_view text, const std::string& source = "sweep csv")
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || trim(line) != "axis1,axis2,iteration,seed,final_polarization") {
        throw ConfigError(source, "missing sweep CSV header 'axis1,axis2,iteration,seed,final_polarization'");
    }
    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto f = detail::split_csv_line(line);
        const std::string where = source + " line " + std::to_string(line_no);
        if (f.size() != 5) {
            throw ConfigError(where, "expected 5 fields, got " + std::to_string(f.size()));
        }
        SweepRow row;
        row.axis1 = parse_double(f[0], where);
        if (!f[1].empty()) {
            row.axis2 = parse_double(f[1], where);
        }
        row.iteration = parse_uint(f[2], where);
        row.seed = parse_uint(f[3], where);
        row.final_polarization = parse_double(f[4], where);
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_csv(ss.str(), path.string());
}

}  // namespace arm
