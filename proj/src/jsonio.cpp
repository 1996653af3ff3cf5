#include "pointspec/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

// nlohmann reports a byte offset; convert it to line/column for diagnostics.
ParseError json_error(const std::string& text, const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return ParseError("JSON parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what(),
                      line, col);
}

long read_sqrt_base(const nlohmann::json& j) {
    if (!j.contains("sqrt_base")) return 1;
    const auto& v = j.at("sqrt_base");
    if (!v.is_number_integer())
        throw ParseError("\"sqrt_base\" must be an integer");
    return v.get<long>();
}

}  // namespace

nlohmann::json config_to_json(const PointConfiguration& p) {
    nlohmann::json j;
    j["dim"] = p.m();
    j["sqrt_base"] = p.d();
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& pt : p.points()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : pt) row.push_back(c.str());
        pts.push_back(std::move(row));
    }
    if (!p.euclidean()) {
        auto& form = j["form"] = nlohmann::json::array();
        for (const auto& w : p.form()) form.push_back(w.str());
    }
    return j;
}

PointConfiguration config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("configuration document must be a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw ParseError("missing integer field \"dim\"");
    const size_t m = j.at("dim").get<size_t>();
    const long d = read_sqrt_base(j);
    if (!is_square_free(d))
        throw ParseError("\"sqrt_base\" must be a square-free integer >= 1, got " +
                         std::to_string(d));
    if (!j.contains("points") || !j.at("points").is_array())
        throw ParseError("missing array field \"points\"");

    std::vector<std::vector<QuadScalar>> points;
    for (const auto& row : j.at("points")) {
        if (!row.is_array())
            throw ParseError("each point must be an array of coordinate strings");
        std::vector<QuadScalar> pt;
        for (const auto& c : row) {
            if (!c.is_string())
                throw ParseError("coordinates must be strings, got " + c.dump() +
                                 " (JSON numbers would lose exactness)");
            pt.push_back(parse_scalar(c.get<std::string>(), d));
        }
        points.push_back(std::move(pt));
    }
    std::vector<QuadScalar> form;
    if (j.contains("form")) {
        for (const auto& w : j.at("form")) {
            if (!w.is_string()) throw ParseError("form weights must be strings");
            form.push_back(parse_scalar(w.get<std::string>(), d));
        }
    }
    return {m, d, std::move(points), std::move(form)};
}

PointConfiguration config_from_json_text(const std::string& text) {
    try {
        return config_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw json_error(text, e);
    }
}

PointConfiguration load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "value,approx\n";
    char num[64];
    for (const auto& v : s.values) {
        std::snprintf(num, sizeof num, "%.17g", v.to_double());
        out += v.str() + "," + num + "\n";
    }
    return out;
}

Spectrum spectrum_from_csv(const std::string& text, SpectrumKind kind, long sqrt_base) {
    Spectrum s{kind, {}};
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("value", 0) == 0) continue;  // header
        const std::string field = line.substr(0, line.find(','));
        try {
            s.values.push_back(parse_scalar(field, sqrt_base));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), lineno,
                             e.column);
        }
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

Spectrum load_spectrum(const std::string& path, SpectrumKind kind, long sqrt_base) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return spectrum_from_csv(buf.str(), kind, sqrt_base);
}

std::string histogram_to_csv(const Histogram& h) {
    std::string out = "bin_lower,count\n";
    char num[64];
    for (auto [edge, count] : h.counts) {
        std::snprintf(num, sizeof num, "%.10g", edge);
        out += std::string(num) + "," + std::to_string(count) + "\n";
    }
    return out;
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
    nlohmann::json j;
    j["kind"] = s.kind == SpectrumKind::distance ? "distance" : "volume";
    auto& vals = j["values"] = nlohmann::json::array();
    for (const auto& v : s.values) vals.push_back(v.str());
    return j;
}

}  // namespace pointspec
