#include "ovrank/report.hpp"

#include <gmp.h>
#include <mpfr.h>
#include <omp.h>

#include <sstream>
#include <stdexcept>

namespace ovrank {

void RunConfig::validate() const {
    if (precision_bits < 64) throw std::invalid_argument("precision must be >= 64 bits");
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (!(margin_policy > 0)) throw std::invalid_argument("margin policy must be > 0");
    if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
}

json RunConfig::to_json() const {
    json j;
    j["precision_bits"] = precision_bits;
    j["n_max"] = n_max;
    j["cache_path"] = cache_path ? json(cache_path->string()) : json(nullptr);
    j["margin_policy"] = margin_policy;
    j["jobs"] = jobs;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    cfg.precision_bits = j.at("precision_bits").get<int>();
    cfg.n_max = j.at("n_max").get<int>();
    if (!j.at("cache_path").is_null()) cfg.cache_path = j.at("cache_path").get<std::string>();
    cfg.margin_policy = j.at("margin_policy").get<double>();
    cfg.jobs = j.at("jobs").get<int>();
    return cfg;
}

namespace {

std::string status_name(Status s) { return s == Status::pass ? "pass" : "fail"; }

Status parse_status(const std::string& s) {
    if (s == "pass") return Status::pass;
    if (s == "fail") return Status::fail;
    throw std::runtime_error("report: unknown status '" + s + "'");
}

}  // namespace

std::string Report::to_json_lines() const {
    json header;
    header["type"] = "header";
    header["schema_version"] = schema_version;
    header["command"] = command;
    header["inputs"] = inputs;
    header["config"] = config;
    header["environment"] = environment;
    std::string out = header.dump() + '\n';
    for (const auto& r : records) {
        json line;
        line["type"] = "record";
        line["data"] = r;
        out += line.dump() + '\n';
    }
    json footer;
    footer["type"] = "footer";
    footer["status"] = status_name(status);
    footer["summary"] = summary;
    footer["timings"] = timings;
    out += footer.dump() + '\n';
    return out;
}

Report Report::from_json_lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Report r;
    bool header = false, footer = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (footer) throw std::runtime_error("report: content after footer at line " + std::to_string(lineno));
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error("report: line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::string type = j.value("type", "");
        if (type == "header") {
            if (header) throw std::runtime_error("report: duplicate header");
            header = true;
            r.schema_version = j.at("schema_version").get<int>();
            if (r.schema_version != kReportSchemaVersion)
                throw std::runtime_error("report: unsupported schema_version " + std::to_string(r.schema_version));
            r.command = j.at("command").get<std::string>();
            r.inputs = j.at("inputs");
            r.config = j.at("config");
            r.environment = j.at("environment");
        } else if (type == "record") {
            if (!header) throw std::runtime_error("report: record before header");
            r.records.push_back(j.at("data"));
        } else if (type == "footer") {
            if (!header) throw std::runtime_error("report: footer before header");
            footer = true;
            r.status = parse_status(j.at("status").get<std::string>());
            r.summary = j.at("summary");
            r.timings = j.at("timings");
        } else {
            throw std::runtime_error("report: line " + std::to_string(lineno) + " has unknown type '" + type + "'");
        }
    }
    if (!header || !footer) throw std::runtime_error("report: missing header or footer");
    return r;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << command;
    for (const auto& [k, v] : inputs.items()) os << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
    os << '\n';
    for (const auto& r : records) {
        std::string blocks;
        os << ' ';
        for (const auto& [k, v] : r.items()) {
            const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
            if (text.find('\n') != std::string::npos) blocks += text;
            else os << ' ' << k << '=' << text;
        }
        os << '\n' << blocks;
    }
    os << "status=" << status_name(status);
    for (const auto& [k, v] : summary.items()) os << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
    os << '\n';
    return os.str();
}

bool operator==(const Report& a, const Report& b) {
    return a.schema_version == b.schema_version && a.command == b.command && a.inputs == b.inputs &&
           a.config == b.config && a.environment == b.environment && a.records == b.records &&
           a.status == b.status && a.summary == b.summary && a.timings == b.timings;
}

json environment_fingerprint() {
    json env;
    env["gmp"] = gmp_version;
    env["mpfr"] = mpfr_get_version();
    env["openmp_max_threads"] = omp_get_max_threads();
#if defined(__VERSION__)
    env["compiler"] = __VERSION__;
#endif
    return env;
}

std::string decimal(const HPReal& x, int digits) { return x.to_string(digits); }

}  // namespace ovrank
