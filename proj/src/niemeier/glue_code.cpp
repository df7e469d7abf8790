#include "nv/niemeier.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace nv {

std::vector<std::vector<int>> GlueCode::codewords() const {
    std::vector<std::vector<int>> words{std::vector<int>(length, 0)};
    std::set<std::vector<int>> seen{words.front()};
    // closure under adding generator rows; a row's multiples appear by repeated addition
    for (std::size_t i = 0; i < words.size(); ++i)
        for (const auto& r : rows) {
            std::vector<int> w(length);
            for (int j = 0; j < length; ++j) w[j] = (words[i][j] + r[j]) % m;
            if (seen.insert(w).second) words.push_back(std::move(w));
        }
    std::sort(words.begin(), words.end());
    return words;
}

int GlueCode::min_weight() const {
    int best = length + 1;
    for (const auto& w : codewords()) {
        int wt = static_cast<int>(std::count_if(w.begin(), w.end(), [](int x) { return x != 0; }));
        if (wt > 0) best = std::min(best, wt);
    }
    return best;
}

bool GlueCode::is_self_dual() const {
    for (const auto& a : rows)
        for (const auto& b : rows) {
            long s = 0;
            for (int j = 0; j < length; ++j) s += a[j] * b[j];
            if (s % m != 0) return false;
        }
    // |C|^2 = m^length
    double size = static_cast<double>(codewords().size());
    return std::abs(size * size - std::pow(static_cast<double>(m), length)) < 0.5;
}

GlueCode load_code(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw construction_error(file.string() + ": cannot open");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw construction_error(file.string() + ": " + e.what());
    }
    GlueCode c;
    c.name = j.at("name").get<std::string>();
    c.m = j.at("alphabet").get<int>();
    c.length = j.at("length").get<int>();
    for (const auto& row : j.at("generator_matrix")) {
        std::string s = row.get<std::string>();
        if (static_cast<int>(s.size()) != c.length) throw construction_error(file.string() + ": row of wrong length");
        std::vector<int> r;
        for (char ch : s) {
            int v = ch - '0';
            if (v < 0 || v >= c.m) throw construction_error(file.string() + ": symbol outside the alphabet");
            r.push_back(v);
        }
        c.rows.push_back(std::move(r));
    }
    return c;
}

}  // namespace nv
