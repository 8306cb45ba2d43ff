#include "clr/constants.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace clr {

namespace {

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

const char* kCoreColumns[] = {"d",        "alpha_order", "gamma",
                              "m_upper",  "c_gamma",     "c_lower",
                              "c_simple", "c_op",        "semiclassical_factor",
                              "coefficient"};

std::vector<std::string> core_cells(const ConstantReport& r, int digits) {
    return {std::to_string(r.d),      fmt(r.alpha_order, digits), fmt(r.gamma, digits),
            fmt(r.m_upper, digits),   fmt(r.c_gamma, digits),     fmt(r.c_lower, digits),
            fmt(r.c_simple, digits),  fmt(r.c_op, digits),
            fmt(r.semiclassical_factor, digits), fmt(r.coefficient, digits)};
}

} // namespace

std::string report_csv(const std::vector<ConstantReport>& rows, int digits) {
    std::ostringstream out;
    for (size_t i = 0; i < 10; ++i)
        out << kCoreColumns[i] << (i + 1 < 10 ? "," : "\n");
    for (const auto& r : rows) {
        auto cells = core_cells(r, digits);
        for (size_t i = 0; i < cells.size(); ++i)
            out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }
    return out.str();
}

std::string report_json(const std::vector<ConstantReport>& rows, int digits) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["d"] = r.d;
        o["alpha_order"] = fmt(r.alpha_order, digits);
        o["gamma"] = fmt(r.gamma, digits);
        o["m_upper"] = fmt(r.m_upper, digits);
        o["c_gamma"] = fmt(r.c_gamma, digits);
        o["c_lower"] = fmt(r.c_lower, digits);
        o["c_simple"] = fmt(r.c_simple, digits);
        o["c_op"] = fmt(r.c_op, digits);
        o["semiclassical_factor"] = fmt(r.semiclassical_factor, digits);
        o["coefficient"] = fmt(r.coefficient, digits);
        if (r.reference_lieb) o["reference_lieb"] = fmt(*r.reference_lieb, digits);
        if (r.reference_fls) o["reference_fls"] = fmt(*r.reference_fls, digits);
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

std::string report_markdown(const std::vector<ConstantReport>& rows, int digits) {
    std::ostringstream out;
    out << "| d | alpha | gamma | M_upper | C_gamma | C_lower | C_simple | C_op "
           "| |B|/(2pi)^d | coeff | Lieb | FLS |\n";
    out << "|---|-------|-------|---------|---------|---------|----------|------"
           "|------------|-------|------|-----|\n";
    for (const auto& r : rows) {
        auto cells = core_cells(r, digits);
        out << "| ";
        for (const auto& c : cells) out << c << " | ";
        out << (r.reference_lieb ? fmt(*r.reference_lieb, digits) : std::string("-"))
            << " | "
            << (r.reference_fls ? fmt(*r.reference_fls, digits) : std::string("-"))
            << " |\n";
    }
    return out.str();
}

} // namespace clr
