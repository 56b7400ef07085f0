#include "report.hpp"

#include <cstdio>
#include <sstream>
#include <string>

namespace expsel::cli {

namespace {

std::string shortest(double v) {
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::stod(buf) == v) return buf;
    }
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        cell.value);
}

std::string render_csv(const Report& report) {
    std::ostringstream os;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        os << (i ? "," : "") << csv_escape(report.columns[i]);
    }
    os << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_escape(format_cell(row[i]));
        }
        os << '\n';
    }
    if (report.summary) {
        os << "summary";
        for (std::size_t i = 1; i + 1 < report.columns.size(); ++i) os << ',';
        os << ',' << csv_escape(*report.summary) << '\n';
    }
    return os.str();
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["meta"] = report.meta;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = to_json(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    if (report.summary) doc["summary"] = *report.summary;
    return doc.dump(2) + "\n";
}

std::string render_markdown(const Report& report) {
    std::ostringstream os;
    os << "|";
    for (const auto& c : report.columns) os << ' ' << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < report.columns.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& row : report.rows) {
        os << "|";
        for (const auto& cell : row) os << ' ' << format_cell(cell) << " |";
        os << '\n';
    }
    if (report.summary) os << "\n**Summary:** " << *report.summary << '\n';
    return os.str();
}

}  // namespace

std::string format_cell(const Cell& cell) {
    return std::visit(
        [&cell](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else {
                if (cell.precision < 0) return shortest(v);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.*f", cell.precision, v);
                return buf;
            }
        },
        cell.value);
}

std::string render(const Report& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return render_csv(report);
        case OutputFormat::Json: return render_json(report);
        case OutputFormat::Markdown: return render_markdown(report);
    }
    return render_csv(report);
}

}  // namespace expsel::cli
