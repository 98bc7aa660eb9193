#include "loghls/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loghls {

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string format_alpha(double a) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", a);
    return buf;
}

void append_deficit_columns(std::string& line, const std::vector<double>& alphas) {
    for (double a : alphas) {
        line += "deficit@";
        line += format_alpha(a);
        line += ", ";
    }
}

}  // namespace

std::string report_csv_header(const FunctionalReport& rep) {
    std::string line = "M, entropy, rel_entropy, potential, interaction, ";
    append_deficit_columns(line, rep.alphas);
    line += "free_energy";
    return line;
}

std::string report_csv_row(const FunctionalReport& rep) {
    std::string line;
    line += format_float(rep.mass);
    line += ", " + format_float(rep.boltzmann_entropy);
    line += ", " + format_float(rep.relative_entropy);
    line += ", " + format_float(rep.potential_energy);
    line += ", " + format_float(rep.interaction);
    for (double d : rep.deficits) line += ", " + format_float(d);
    line += ", " + format_float(rep.free_energy);
    return line;
}

std::string report_keyvalue(const FunctionalReport& rep) {
    std::string out;
    out += "M=" + format_float(rep.mass) + "\n";
    out += "entropy=" + format_float(rep.boltzmann_entropy) + "\n";
    out += "rel_entropy=" + format_float(rep.relative_entropy) + "\n";
    out += "potential=" + format_float(rep.potential_energy) + "\n";
    out += "interaction=" + format_float(rep.interaction) + "\n";
    for (std::size_t k = 0; k < rep.alphas.size(); ++k)
        out += "deficit@" + format_alpha(rep.alphas[k]) + "=" + format_float(rep.deficits[k]) +
               "\n";
    out += "beta=" + format_float(rep.beta) + "\n";
    out += "eps=" + format_float(rep.eps) + "\n";
    out += "free_energy=" + format_float(rep.free_energy) + "\n";
    return out;
}

std::string trace_csv(const FlowTrace& trace) {
    std::string out = "t, mass, entropy, potential, interaction, ";
    append_deficit_columns(out, trace.alphas);
    out += "free_energy, gn_part, phi_part, dFdt_fd\n";
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        const FunctionalReport& rep = trace.reports[k];
        out += format_float(trace.times[k]);
        out += ", " + format_float(trace.mass[k]);
        out += ", " + format_float(rep.boltzmann_entropy);
        out += ", " + format_float(rep.potential_energy);
        out += ", " + format_float(rep.interaction);
        for (double d : rep.deficits) out += ", " + format_float(d);
        out += ", " + format_float(rep.free_energy);
        out += ", " + format_float(trace.dissipation[k].gn_part);
        out += ", " + format_float(trace.dissipation[k].phi_part);
        out += ", " + format_float(trace.dFdt_fd[k]);
        out += "\n";
    }
    return out;
}

std::string stationary_keyvalue(const StationaryResult& result, double j_value) {
    std::string out;
    out += "mass=" + format_float(result.mass) + "\n";
    out += "beta=" + format_float(result.beta) + "\n";
    out += "iterations=" + std::to_string(result.iterations) + "\n";
    out += "converged=" + std::string(result.converged ? "1" : "0") + "\n";
    out += "residual=" + format_float(result.residual) + "\n";
    out += "subcritical_regime=" + std::string(result.subcritical_regime ? "1" : "0") + "\n";
    out += "J=" + format_float(j_value) + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw std::runtime_error("write_text_file: cannot create " +
                                         p.parent_path().string());
    }
    std::ofstream os(p, std::ios::binary);  // binary: keep LF endings everywhere
    if (!os) throw std::runtime_error("write_text_file: cannot open " + path);
    os << content;
    if (!os) throw std::runtime_error("write_text_file: write failed for " + path);
}

}  // namespace loghls
