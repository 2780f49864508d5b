#include "nilric/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nilric {

using nlohmann::json;

NilpotentAlgebra algebra_from_json_text(const std::string& text) {
    json j = json::parse(text);
    NilpotentAlgebra a;
    a.name = j.at("name").get<std::string>();
    int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > 6) throw std::invalid_argument("algebra dim must be in [1, 6]");
    a.dim = dim;
    a.c.assign(static_cast<size_t>(dim) * dim * dim, Rat(0));
    if (!j.contains("brackets")) return a;
    for (const auto& b : j.at("brackets")) {
        int i = b.at("i").get<int>();
        int jj = b.at("j").get<int>();
        if (i < 1 || jj < 1 || i > dim || jj > dim)
            throw std::invalid_argument("bracket index out of range");
        if (i >= jj) throw std::invalid_argument("brackets must have i < j");
        for (const auto& [key, val] : b.at("coeffs").items()) {
            int l = std::stoi(key);
            if (l < 1 || l > dim) throw std::invalid_argument("bracket target out of range");
            Rat v = rat_from_string(val.get<std::string>());
            if (a.at(i - 1, jj - 1, l - 1) != 0)
                throw std::invalid_argument("duplicate bracket coefficient");
            a.set_bracket(i, jj, l, v);
        }
    }
    return a;
}

NilpotentAlgebra load_algebra_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return algebra_from_json_text(ss.str());
}

std::string algebra_to_json_text(const NilpotentAlgebra& a) {
    json brackets = json::array();
    for (int i = 1; i <= a.dim; ++i) {
        for (int jj = i + 1; jj <= a.dim; ++jj) {
            json coeffs = json::object();
            for (int l = 1; l <= a.dim; ++l) {
                const Rat& v = a.at(i - 1, jj - 1, l - 1);
                if (v != 0) coeffs[std::to_string(l)] = rat_to_string(v);
            }
            if (!coeffs.empty())
                brackets.push_back({{"i", i}, {"j", jj}, {"coeffs", coeffs}});
        }
    }
    json j{{"name", a.name}, {"dim", a.dim}, {"brackets", brackets}};
    return j.dump(2) + "\n";
}

static const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::positive: return "positive";
        case Verdict::not_positive: return "not_positive";
        default: return "inconclusive";
    }
}

std::string certificate_json(const SubmersionParams& p, const PositivityCertificate& cert) {
    json j;
    j["params"] = {{"algebra", p.algebra.name}, {"n", p.n}, {"k", p.k}, {"m", p.m}};
    j["mode"] = cert.mode == CertMode::sturm ? "sturm" : "grid";
    j["verdict"] = verdict_name(cert.verdict);
    if (cert.min_margin) {
        j["min_margin"] = *cert.min_margin;
    } else {
        j["min_margin"] = nullptr;
    }
    if (cert.witness_r) {
        j["witness_r"] = *cert.witness_r;
    } else {
        j["witness_r"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string scan_csv(const SubmersionParams& p, const std::vector<BaseDiag>& rows) {
    std::string out = "r,ric_rr,ric_u";
    for (int i = 2; i <= p.n; ++i) out += ",ric_y_" + std::to_string(i);
    out += ",ric_wprime,err_rr,err_u";
    for (int i = 2; i <= p.n; ++i) out += ",err_y_" + std::to_string(i);
    out += ",offdiag_bound,gershgorin_min\n";
    for (const auto& row : rows) {
        out += format_double(row.r);
        out += ',' + format_double(row.ric_rr);
        out += ',' + format_double(row.ric_u);
        for (double v : row.ric_y) out += ',' + format_double(v);
        out += ',' + format_double(row.ric_wprime);
        out += ',' + format_double(row.err_rr);
        out += ',' + format_double(row.err_u);
        for (double v : row.err_y) out += ',' + format_double(v);
        out += ',' + format_double(row.offdiag_bound);
        out += ',' + format_double(row.gershgorin_min);
        out += '\n';
    }
    return out;
}

}  // namespace nilric
