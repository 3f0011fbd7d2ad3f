#include "finchar/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace finchar {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

SystemFile parse_system(std::istream& in) {
    std::uint32_t p = 0, k = 1;
    std::vector<std::uint16_t> modulus;
    std::int64_t nvars = -1;
    std::vector<std::string> poly_lines;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "q") {
            if (tokens.size() != 2) throw std::invalid_argument("malformed q header line");
            auto caret = tokens[1].find('^');
            p = static_cast<std::uint32_t>(std::stoul(tokens[1].substr(0, caret)));
            k = caret == std::string::npos
                    ? 1
                    : static_cast<std::uint32_t>(std::stoul(tokens[1].substr(caret + 1)));
        } else if (tokens[0] == "modulus") {
            for (std::size_t i = 1; i < tokens.size(); ++i)
                modulus.push_back(static_cast<std::uint16_t>(std::stoul(tokens[i])));
        } else if (tokens[0] == "n") {
            if (tokens.size() != 2) throw std::invalid_argument("malformed n header line");
            nvars = std::stoll(tokens[1]);
        } else if (tokens[0] == "vars") {
            // variable names are fixed as x1..xn; the line is informational
        } else {
            std::string joined = tokens[0];
            for (std::size_t i = 1; i < tokens.size(); ++i) joined += " " + tokens[i];
            poly_lines.push_back(std::move(joined));
        }
    }
    if (p == 0) throw std::invalid_argument("missing q header");
    if (nvars < 0) throw std::invalid_argument("missing n header");

    SystemFile sys;
    sys.spec = FieldSpec::make(p, k, modulus);
    sys.nvars = static_cast<std::uint32_t>(nvars);
    for (const auto& pl : poly_lines) sys.polys.push_back(parse_poly(pl, sys.spec, sys.nvars));
    return sys;
}

SystemFile parse_system_text(const std::string& text) {
    std::istringstream is(text);
    return parse_system(is);
}

SystemFile load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file: " + path);
    try {
        return parse_system(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string write_system(const SystemFile& sys, const std::string& comment) {
    std::ostringstream os;
    if (!comment.empty()) os << "# " << comment << "\n";
    os << "q " << sys.spec->label() << "\n";
    if (sys.spec->k() > 1) {
        os << "modulus";
        for (std::uint16_t c : sys.spec->modulus()) os << " " << c;
        os << "\n";
    }
    os << "n " << sys.nvars << "\n";
    for (const auto& p : sys.polys) os << p.to_string() << "\n";
    return os.str();
}

void save_system(const std::string& path, const SystemFile& sys, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write system file: " + path);
    out << write_system(sys, comment);
}

nlohmann::json build_report(const Decomposition& d, const FieldSpecPtr& spec,
                            std::uint32_t nvars, const ReportOptions& opts) {
    nlohmann::json report;
    report["field"] = spec->label();
    if (spec->k() > 1) report["modulus"] = spec->modulus();
    report["nvars"] = nvars;

    nlohmann::json components = nlohmann::json::array();
    for (const auto& comp : d.components) {
        nlohmann::json c;
        nlohmann::json polys = nlohmann::json::array();
        for (const auto& p : comp.polys()) polys.push_back(p.to_string());
        c["polys"] = std::move(polys);
        BigInt deg = ts_degree(comp);
        if (deg <= std::numeric_limits<std::uint64_t>::max())
            c["degree"] = static_cast<std::uint64_t>(deg);
        else
            c["degree"] = deg.str();
        c["dim"] = ts_dim(comp);
        c["count"] = ts_count(comp).str();
        components.push_back(std::move(c));
    }
    report["components"] = std::move(components);

    nlohmann::json stats;
    stats["mul_count"] = d.stats.mul_count;
    stats["max_len"] = d.stats.max_len;
    stats["max_terms"] = d.stats.max_terms;
    stats["n_components"] = d.stats.n_components;
    stats["branch_count"] = d.stats.branch_count;
    report["stats"] = std::move(stats);

    if (!d.complete) {
        report["status"] = "partial";
        return report;
    }
    if (d.components.empty()) {
        report["status"] = "inconsistent";
        return report;
    }
    report["status"] = "complete";
    report["total_count"] = decomposition_count(d).str();

    if (opts.enumerate) {
        BigInt total = decomposition_count(d);
        if (total > opts.enumerate_limit)
            throw std::invalid_argument("enumeration limit exceeded");
        std::vector<std::vector<std::uint16_t>> points;
        for (const auto& comp : d.components) {
            for (const auto& pt : ts_enumerate(comp, opts.enumerate_limit)) {
                std::vector<std::uint16_t> codes(pt.size());
                for (std::size_t i = 0; i < pt.size(); ++i) codes[i] = pt[i].code;
                points.push_back(std::move(codes));
            }
        }
        std::sort(points.begin(), points.end());
        report["solutions"] = points;
    }
    return report;
}

std::string render_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

LoadedReport parse_report(const nlohmann::json& report) {
    LoadedReport out;
    out.status = report.at("status").get<std::string>();

    std::string field = report.at("field").get<std::string>();
    auto caret = field.find('^');
    std::uint32_t p = static_cast<std::uint32_t>(std::stoul(field.substr(0, caret)));
    std::uint32_t k = caret == std::string::npos
                          ? 1
                          : static_cast<std::uint32_t>(std::stoul(field.substr(caret + 1)));
    std::vector<std::uint16_t> modulus;
    if (report.contains("modulus"))
        modulus = report.at("modulus").get<std::vector<std::uint16_t>>();
    out.spec = FieldSpec::make(p, k, modulus);
    out.nvars = report.at("nvars").get<std::uint32_t>();

    for (const auto& c : report.at("components")) {
        std::vector<Poly> polys;
        for (const auto& text : c.at("polys"))
            polys.push_back(parse_poly(text.get<std::string>(), out.spec, out.nvars));
        out.decomposition.components.push_back(
            TriangularSet::make(out.spec, out.nvars, std::move(polys)));
    }
    out.decomposition.complete = out.status != "partial";
    out.decomposition.stats.n_components = out.decomposition.components.size();
    return out;
}

LoadedReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    nlohmann::json j;
    in >> j;
    return parse_report(j);
}

}  // namespace finchar
