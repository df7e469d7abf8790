#include "nv/deg_pattern.hpp"

#include <cctype>

namespace nv {

std::optional<DegCell> DegPattern::cell(std::size_t i, std::size_t j) const {
    if (!matrix) return std::nullopt;
    if (i > j) std::swap(i, j);
    if (j >= orbits.size()) throw std::out_of_range("degeneration cell index");
    return (*matrix)[i][j - i];
}

namespace {

const std::string kSubset = "⊂";

class DegParser {
public:
    explicit DegParser(const std::string& t) : t_(t) {}

    DegPattern parse() {
        DegPattern d;
        d.text = t_;
        if (t_.find('/') != std::string::npos)
            parse_matrix(d);
        else
            parse_nested(d);
        if (d.orbits.empty()) throw deg_parse_error("no orbits", 0);
        return d;
    }

private:
    // A nested term: its leaves and the full type it declares, if any.
    struct Term {
        std::vector<DegCell> leaves;
        std::optional<RootSystemType> full;
    };

    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool at(const std::string& s) const { return t_.compare(pos_, s.size(), s) == 0; }

    RootSystemType type_token() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < t_.size()) {
            char c = t_[pos_];
            if (c == '(' || c == ')' || c == ',' || c == '/' || std::isspace(static_cast<unsigned char>(c)) || at(kSubset))
                break;
            ++pos_;
        }
        if (pos_ == start) throw deg_parse_error("expected a root system type", start);
        try {
            return RootSystemType::parse(t_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
            throw deg_parse_error(e.what(), start);
        }
    }

    /// Full type: components joined by the union sign, each possibly a decorated "(type)_tag".
    RootSystemType full_type() {
        static const std::string kUnion = "⊔";
        RootSystemType out;
        for (;;) {
            skip();
            RootSystemType part;
            if (pos_ < t_.size() && t_[pos_] == '(') {
                ++pos_;
                part = type_token();
                skip();
                if (pos_ >= t_.size() || t_[pos_] != ')') throw deg_parse_error("expected ')'", pos_);
                ++pos_;
                tag();
            } else {
                const std::size_t start = pos_;
                while (pos_ < t_.size() && !at(kUnion) && t_[pos_] != ')' && t_[pos_] != ',' &&
                       !std::isspace(static_cast<unsigned char>(t_[pos_])))
                    ++pos_;
                if (pos_ == start) throw deg_parse_error("expected a root system type", start);
                try {
                    part = RootSystemType::parse(t_.substr(start, pos_ - start));
                } catch (const std::invalid_argument& e) {
                    throw deg_parse_error(e.what(), start);
                }
            }
            for (const auto& [k, m] : part.parts) out.parts[k] += m;
            skip();
            if (!at(kUnion)) return out;
            pos_ += kUnion.size();
        }
    }

    std::string tag() {
        if (pos_ < t_.size() && t_[pos_] == '_') {
            std::size_t start = ++pos_;
            if (at("{")) ++pos_;
            std::string s;
            while (pos_ < t_.size() && (t_[pos_] == 'I' || t_[pos_] == 'V')) s += t_[pos_++];
            if (at("}")) ++pos_;
            if (s.empty()) throw deg_parse_error("empty decoration", start);
            return s;
        }
        return "";
    }

    Term term() {
        skip();
        Term out;
        if (pos_ < t_.size() && t_[pos_] == '(') {
            ++pos_;
            std::vector<Term> parts;
            for (;;) {
                parts.push_back(term());
                skip();
                if (pos_ >= t_.size()) throw deg_parse_error("unbalanced parentheses", pos_);
                if (t_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (t_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                throw deg_parse_error("expected ',' or ')'", pos_);
            }
            std::string tg = tag();
            if (parts.size() == 1) {
                out = parts.front();
                // a decorated single type is one orbit carrying the tag
                if (!tg.empty() && out.leaves.size() == 1 && !out.full) out.leaves.front().tag = tg;
            } else {
                for (auto& p : parts) out.leaves.insert(out.leaves.end(), p.leaves.begin(), p.leaves.end());
            }
        } else {
            out.leaves.push_back({type_token(), ""});
        }
        skip();
        if (at(kSubset)) {
            pos_ += kSubset.size();
            out.full = full_type();
        }
        return out;
    }

    void parse_nested(DegPattern& d) {
        Term t = term();
        skip();
        if (pos_ != t_.size()) throw deg_parse_error("trailing text", pos_);
        d.orbits = t.leaves;
        if (t.full) {
            d.full_type = *t.full;
        } else if (t.leaves.size() == 1) {
            d.full_type = t.leaves.front().type;
        } else {
            for (const auto& l : t.leaves)
                for (const auto& [k, m] : l.type.parts) d.full_type.parts[k] += m;
        }
    }

    DegCell cell() {
        skip();
        if (pos_ < t_.size() && t_[pos_] == '(') {
            ++pos_;
            DegCell c{type_token(), ""};
            skip();
            if (pos_ >= t_.size() || t_[pos_] != ')') throw deg_parse_error("expected ')'", pos_);
            ++pos_;
            c.tag = tag();
            return c;
        }
        return {type_token(), ""};
    }

    void parse_matrix(DegPattern& d) {
        std::vector<std::vector<DegCell>> rows(1);
        for (;;) {
            skip();
            if (pos_ >= t_.size()) throw deg_parse_error("matrix without full type", pos_);
            if (at(kSubset)) {
                pos_ += kSubset.size();
                d.full_type = full_type();
                skip();
                if (pos_ != t_.size()) throw deg_parse_error("trailing text", pos_);
                break;
            }
            if (t_[pos_] == '/') {
                ++pos_;
                rows.emplace_back();
                continue;
            }
            rows.back().push_back(cell());
        }
        const std::size_t k = rows.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i].size() != k - i)
                throw deg_parse_error("matrix row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                          " cells, expected " + std::to_string(k - i),
                                      0);
            d.orbits.push_back(rows[i].front());
        }
        d.matrix = std::move(rows);
    }

    const std::string& t_;
    std::size_t pos_ = 0;
};

}  // namespace

DegPattern parse_deg(const std::string& text) { return DegParser(text).parse(); }

}  // namespace nv
