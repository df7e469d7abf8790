#include "nv/permutation.hpp"

#include <cctype>
#include <numeric>

namespace nv {

std::string model_name(LabelModel m) {
    switch (m) {
        case LabelModel::N23: return "N23";
        case LabelModel::N21: return "N21";
        case LabelModel::N22: return "N22";
        case LabelModel::points: return "points";
    }
    return "?";
}

LabelModel model_from_name(const std::string& s) {
    if (s == "N23") return LabelModel::N23;
    if (s == "N21") return LabelModel::N21;
    if (s == "N22") return LabelModel::N22;
    if (s == "points") return LabelModel::points;
    throw std::invalid_argument("unknown label model '" + s + "'");
}

namespace {

/// Rank of the components in a pair-labeled model (roots per component).
int pair_width(LabelModel m) { return m == LabelModel::N21 ? 3 : 2; }

class LabelReader {
public:
    LabelReader(const std::string& text, LabelModel m) : t_(text), m_(m) {}

    std::size_t pos = 0;

    void skip_space() {
        while (pos < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos]))) ++pos;
    }
    bool at_end() const { return pos >= t_.size(); }
    char peek() const { return t_[pos]; }

    bool at_label() const {
        if (at_end()) return false;
        if (t_[pos] == 'a') return true;
        if (t_.compare(pos, 2, "\xCE\xB1") == 0) return true;
        return t_.compare(pos, 6, "\\alpha") == 0;
    }

    int read_label() {
        const std::size_t start = pos;
        if (t_[pos] == 'a')
            pos += 1;
        else if (t_.compare(pos, 2, "\xCE\xB1") == 0)
            pos += 2;
        else if (t_.compare(pos, 6, "\\alpha") == 0)
            pos += 6;
        else
            throw perm_parse_error("expected a label", pos);
        if (pos < t_.size() && t_[pos] == '_') ++pos;
        bool brace = pos < t_.size() && t_[pos] == '{';
        if (brace) ++pos;
        long first = number(start);
        long second = -1;
        if (pos < t_.size() && t_[pos] == ',') {
            ++pos;
            second = number(start);
        }
        if (brace) {
            if (pos >= t_.size() || t_[pos] != '}') throw perm_parse_error("unbalanced braces in label", start);
            ++pos;
        }
        return resolve(first, second, start);
    }

private:
    long number(std::size_t start) {
        std::size_t b = pos;
        long v = 0;
        while (pos < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos])) && pos - b < 6)
            v = v * 10 + (t_[pos++] - '0');
        if (pos == b) throw perm_parse_error("label without index", start);
        return v;
    }

    int resolve(long first, long second, std::size_t start) const {
        if (m_ == LabelModel::N23 || m_ == LabelModel::points) {
            if (second >= 0) throw perm_parse_error("pair label in a flat-labeled model", start);
            long lo = m_ == LabelModel::points ? 0 : 1;
            if (first < lo || first >= lo + kDegree) throw perm_parse_error("unknown label", start);
            return static_cast<int>(first - lo);
        }
        if (second < 0) throw perm_parse_error("flat label in a pair-labeled model", start);
        const int w = pair_width(m_);
        const int comps = kDegree / w;
        if (first < 1 || first > w || second < 1 || second > comps) throw perm_parse_error("unknown label", start);
        return static_cast<int>((second - 1) * w + (first - 1));
    }

    const std::string& t_;
    LabelModel m_;
};

}  // namespace

int label_index(const std::string& label, LabelModel m) {
    LabelReader r(label, m);
    r.skip_space();
    if (!r.at_label()) throw perm_parse_error("expected a label", r.pos);
    int v = r.read_label();
    r.skip_space();
    if (!r.at_end()) throw perm_parse_error("trailing characters after label", r.pos);
    return v;
}

std::string label_name(int index, LabelModel m) {
    switch (m) {
        case LabelModel::N23: return "a" + std::to_string(index + 1);
        case LabelModel::points: return std::to_string(index);
        default: {
            int w = pair_width(m);
            return "a" + std::to_string(index % w + 1) + "," + std::to_string(index / w + 1);
        }
    }
}

Permutation::Permutation() { std::iota(img_.begin(), img_.end(), std::uint8_t{0}); }

Permutation::Permutation(const std::array<std::uint8_t, kDegree>& images) : img_(images) {
    std::array<bool, kDegree> hit{};
    for (auto v : img_) {
        if (v >= kDegree || hit[v]) throw std::invalid_argument("permutation images are not a bijection");
        hit[v] = true;
    }
}

Permutation Permutation::from_images(const std::vector<int>& images) {
    if (images.size() > static_cast<std::size_t>(kDegree)) throw std::invalid_argument("permutation degree above 24");
    Permutation p;
    std::array<std::uint8_t, kDegree> a = p.img_;
    for (std::size_t i = 0; i < images.size(); ++i) a[i] = static_cast<std::uint8_t>(images[i]);
    return Permutation(a);
}

Permutation Permutation::from_cycles(const std::vector<std::vector<int>>& cycles) {
    Permutation p;
    std::array<bool, kDegree> used{};
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= kDegree || used[c[i]]) throw std::invalid_argument("cycles are not disjoint");
            used[c[i]] = true;
            p.img_[c[i]] = static_cast<std::uint8_t>(c[(i + 1) % c.size()]);
        }
    return p;
}

Permutation Permutation::operator*(const Permutation& q) const {
    Permutation r;
    for (int i = 0; i < kDegree; ++i) r.img_[i] = q.img_[img_[i]];
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r;
    for (int i = 0; i < kDegree; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
}

int Permutation::order() const {
    int o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, static_cast<int>(c.size()));
    return o;
}

bool Permutation::is_identity() const { return *this == Permutation(); }

int Permutation::moved_points() const {
    int n = 0;
    for (int i = 0; i < kDegree; ++i) n += img_[i] != i;
    return n;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::array<bool, kDegree> seen{};
    for (int i = 0; i < kDegree; ++i) {
        if (seen[i] || img_[i] == i) continue;
        std::vector<int> c;
        for (int x = i; !seen[x]; x = img_[x]) {
            seen[x] = true;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string Permutation::to_string(LabelModel m) const {
    std::string s;
    for (const auto& c : cycles()) {
        if (!s.empty()) s += " ";
        s += "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + label_name(c[i], m);
        s += ")";
    }
    return s.empty() ? "()" : s;
}

Permutation parse_cycles(const std::string& text, LabelModel m) {
    LabelReader r(text, m);
    std::vector<std::vector<int>> cycles;
    std::array<bool, kDegree> used{};
    for (;;) {
        r.skip_space();
        if (r.at_end()) break;
        if (r.peek() == '$') {
            ++r.pos;
            continue;
        }
        if (r.peek() != '(') throw perm_parse_error("expected '('", r.pos);
        ++r.pos;
        std::vector<int> c;
        for (;;) {
            r.skip_space();
            if (r.at_end()) throw perm_parse_error("unbalanced parentheses", r.pos);
            if (r.peek() == ')') {
                ++r.pos;
                break;
            }
            if (r.peek() == '(') throw perm_parse_error("nested parentheses", r.pos);
            std::size_t at = r.pos;
            int x = r.read_label();
            if (used[x]) throw perm_parse_error("repeated label " + label_name(x, m), at);
            used[x] = true;
            c.push_back(x);
        }
        if (c.size() > 1) cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(cycles);
}

}  // namespace nv
