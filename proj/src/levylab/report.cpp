#include "levylab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levylab {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string format_p(double p) {
    if (std::isinf(p)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

ordered_json mc_record(const std::string& model_id, const std::string& potential_desc,
                       std::span<const double> x0, double t, const McEstimate& est) {
    ordered_json rec;
    rec["model"] = model_id;
    rec["potential"] = potential_desc;
    rec["x0"] = std::vector<double>(x0.begin(), x0.end());
    rec["t"] = t;
    rec["mean"] = est.mean;
    rec["stderr"] = est.std_error;
    rec["n_paths"] = est.n_paths;
    rec["dt"] = est.config.dt;
    rec["epsilon"] = est.config.epsilon;
    rec["seed"] = est.config.seed;
    return rec;
}

ordered_json gsd_record(const GsdReport& report) {
    ordered_json rec;
    rec["model"] = report.model_id;
    rec["potential"] = report.potential_desc;
    rec["window_fraction"] = report.window_fraction;
    ordered_json entries = ordered_json::array();
    for (const ScanEntry& e : report.entries) {
        ordered_json row;
        row["t"] = e.t;
        row["p"] = format_p(e.p);
        row["R_box"] = e.r_box;
        row["N"] = e.n;
        row["norm"] = e.norm;
        entries.push_back(std::move(row));
    }
    rec["entries"] = std::move(entries);
    ordered_json verdicts = ordered_json::array();
    for (const ScanVerdict& v : report.verdicts) {
        ordered_json row;
        row["t"] = v.t;
        row["p"] = format_p(v.p);
        row["verdict"] = v.verdict;
        verdicts.push_back(std::move(row));
    }
    rec["verdicts"] = std::move(verdicts);
    return rec;
}

std::string gsd_csv(const GsdReport& report) {
    std::ostringstream os;
    os << "model,potential,t,p,R_box,N,norm,verdict\n";
    for (const ScanEntry& e : report.entries) {
        os << report.model_id << "," << report.potential_desc << "," << fmt17(e.t) << ","
           << format_p(e.p) << "," << fmt17(e.r_box) << "," << e.n << "," << fmt17(e.norm) << ","
           << report.verdict_for(e.t, e.p) << "\n";
    }
    return os.str();
}

ordered_json manifest_record(std::uint64_t config_hash, std::uint64_t seed,
                             const std::string& command,
                             const std::vector<std::string>& artifacts) {
    ordered_json rec;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(config_hash));
    rec["config_hash"] = buf;
    rec["seed"] = seed;
    rec["command"] = command;
    rec["tool"] = "levylab";
    rec["version"] = "0.1.0";
    rec["artifacts"] = artifacts;
    return rec;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
    if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace levylab
