#pragma once

#include <json.hpp>

#include "flux/laurent.hpp"

namespace flux {

using Json = nlohmann::ordered_json;

inline Json nov_to_json(const Nov& a) {
    Json terms = Json::array();
    for (const auto& [m, c] : a.terms()) terms.push_back({rat_str(m), rat_str(c)});
    Json j;
    j["terms"] = std::move(terms);
    j["prec"] = a.exact() ? Json(nullptr) : Json(rat_str(*a.prec()));
    return j;
}

inline Nov nov_from_json(const Json& j) {
    std::map<Rat, Rat> terms;
    for (const auto& t : j.at("terms"))
        terms.emplace(parse_rat(t.at(0).get<std::string>()), parse_rat(t.at(1).get<std::string>()));
    XRat prec;
    if (!j.at("prec").is_null()) prec = parse_rat(j.at("prec").get<std::string>());
    return Nov::build(std::move(terms), std::move(prec));
}

inline Json lau_to_json(const Lau& a) {
    Json cols = Json::array();
    for (const auto& [n, s] : a.cols()) cols.push_back({n, nov_to_json(s)});
    Json j;
    j["cols"] = std::move(cols);
    j["lossy"] = a.lossy();
    return j;
}

inline Lau lau_from_json(const Json& j) {
    Lau r;
    for (const auto& c : j.at("cols")) r.set_col(c.at(0).get<long>(), nov_from_json(c.at(1)));
    if (j.at("lossy").get<bool>()) r.mark_lossy();
    return r;
}

namespace detail {
// one summand: [sign] [coeff] [* ] [h^exp] [* ] [t^exp] with exponents
// optionally parenthesized; also the trailing cutoff marker O(h^(p))
struct ParsedTerm {
    bool is_prec = false;
    Rat coeff{1}, hexp{0}, prec{0};
    long texp = 0;
};

inline ParsedTerm parse_term(std::string s) {
    ParsedTerm out;
    auto strip = [&](std::string& x) {
        while (!x.empty() && x.front() == ' ') x.erase(x.begin());
        while (!x.empty() && x.back() == ' ') x.pop_back();
    };
    strip(s);
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(s.begin());
        strip(s);
    }
    auto grab_exp = [&](size_t pos, Rat& dst) {
        // pos points just past '^'; exponent runs to next '*' or end, parens optional
        size_t end = s.find('*', pos);
        std::string e = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        strip(e);
        if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        dst = parse_rat(e);
        s.erase(0, end == std::string::npos ? s.size() : end + 1);
        strip(s);
    };
    if (s.rfind("O(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(2, s.size() - 3);
        if (inner.rfind("h^", 0) != 0) throw std::invalid_argument("bad cutoff: " + s);
        std::string e = inner.substr(2);
        if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        out.is_prec = true;
        out.prec = parse_rat(e);
        return out;
    }
    bool saw_factor = false;
    while (!s.empty()) {
        if (s[0] == 'h') {
            if (s.size() < 2 || s[1] != '^') throw std::invalid_argument("bad h factor");
            grab_exp(2, out.hexp);
        } else if (s[0] == 't') {
            Rat te;
            if (s.size() < 2 || s[1] != '^') throw std::invalid_argument("bad t factor");
            grab_exp(2, te);
            if (denominator(te) != 1) throw std::invalid_argument("t exponent must be integral");
            out.texp = static_cast<long>(numerator(te));
        } else {
            size_t end = s.find('*');
            std::string c = s.substr(0, end);
            strip(c);
            out.coeff = parse_rat(c);
            s.erase(0, end == std::string::npos ? s.size() : end + 1);
            strip(s);
        }
        saw_factor = true;
        if (!s.empty() && s[0] == '*') {
            s.erase(s.begin());
            strip(s);
        }
    }
    if (!saw_factor) throw std::invalid_argument("empty term");
    if (neg) out.coeff = -out.coeff;
    return out;
}

inline std::vector<std::string> split_sum(const std::string& text) {
    // split on top-level '+' and '-' (keeping '-' with the term); parens kept intact
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        bool splitter = depth == 0 && (ch == '+' || ch == '-') && i > 0 &&
                        text[i - 1] != '^' && text[i - 1] != '*' && text[i - 1] != 'e';
        if (splitter) {
            parts.push_back(cur);
            cur.clear();
            if (ch == '-') cur += '-';
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}
}  // namespace detail

inline Lau lau_from_text(const std::string& text) {
    Lau r;
    std::string t = text;
    if (t == "0") return r;
    XRat prec;
    std::map<long, std::map<Rat, Rat>> cols;
    for (auto& part : detail::split_sum(t)) {
        if (part.empty() || part == " ") continue;
        auto term = detail::parse_term(part);
        if (term.is_prec) {
            prec = prec ? xmin(prec, XRat(term.prec)) : XRat(term.prec);
            continue;
        }
        cols[term.texp][term.hexp] += term.coeff;
    }
    for (auto& [n, terms] : cols) r.set_col(n, Nov::build(std::move(terms), prec));
    return r;
}

inline Nov nov_from_text(const std::string& text) {
    Lau l = lau_from_text(text);
    for (const auto& [n, s] : l.cols())
        if (n != 0) throw std::invalid_argument("unexpected t power in scalar literal");
    return l.col(0);
}

}  // namespace flux
