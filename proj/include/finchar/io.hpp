#ifndef FINCHAR_IO_HPP
#define FINCHAR_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "finchar/decompose.hpp"
#include "finchar/poly.hpp"

namespace finchar {

// Text system file: '#' comments, a header (q, optional modulus, n,
// optional variable names), then one polynomial per line.
struct SystemFile {
    FieldSpecPtr spec;
    std::uint32_t nvars = 0;
    std::vector<Poly> polys;
};

SystemFile parse_system(std::istream& in);
SystemFile parse_system_text(const std::string& text);
SystemFile load_system(const std::string& path);  // throws std::runtime_error on I/O failure
std::string write_system(const SystemFile& sys, const std::string& comment = {});
void save_system(const std::string& path, const SystemFile& sys, const std::string& comment = {});

struct ReportOptions {
    bool enumerate = false;
    std::uint64_t enumerate_limit = std::uint64_t(1) << 20;
};

// Canonical solve report; deterministic for a given decomposition (keys
// sorted, components already canonically ordered, solutions sorted).
// Status is "complete" or "inconsistent" for finished solves, "partial"
// when the decomposition is marked incomplete.  Wall time is deliberately
// not part of the report.
nlohmann::json build_report(const Decomposition& d, const FieldSpecPtr& spec,
                            std::uint32_t nvars, const ReportOptions& opts = {});

std::string render_report(const nlohmann::json& report);

// Reconstructs the components of a report for reduction checking.
struct LoadedReport {
    std::string status;
    FieldSpecPtr spec;
    std::uint32_t nvars = 0;
    Decomposition decomposition;
};
LoadedReport parse_report(const nlohmann::json& report);
LoadedReport load_report(const std::string& path);

}  // namespace finchar

#endif
