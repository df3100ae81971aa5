#pragma once

// Text syntax for integral forms on a chart, its printer, and the atlas
// description format.
//
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := factor { ('*'|'/') factor }
//   factor := number | '(' expr ')' | name ['^' ['-'] int]
//           | 'delta' {"'"} ['^' '(' int ')'] '(' dname ')'
//
// `name` is an even coordinate, an odd coordinate, or d<coordinate>.  `*` is
// the wedge product; division is only by nonzero scalar monomials.

#include <intform/atlas.hpp>
#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/monomial.hpp>
#include <intform/superform.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace intform {

namespace detail {

enum class Tok { Number, Name, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s, std::size_t base = 0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), base + i});
            i = j;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Name, std::string(s.substr(i, j - i)), base + i});
            i = j;
        } else if (std::string_view("+-*/^()'").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Tok::Symbol, std::string(1, static_cast<char>(c)), base + i});
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", base + i);
        }
    }
    out.push_back({Tok::End, "", base + s.size()});
    return out;
}

class FormParser {
public:
    FormParser(std::string_view text, std::string chart, TablePtr table, std::size_t base)
        : toks_(tokenize(text, base)), chart_(std::move(chart)), table_(std::move(table)) {}

    Superform parse_all() {
        Superform r = expr();
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return r;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

    bool accept(std::string_view sym) {
        if (peek().kind == Tok::Symbol && peek().text == sym) {
            ++at_;
            return true;
        }
        return false;
    }

    void expect(std::string_view sym) {
        if (!accept(sym))
            throw ParseError("expected '" + std::string(sym) + "'" +
                                 (peek().kind == Tok::End ? std::string(" before end of input")
                                                          : ", found '" + peek().text + "'"),
                             peek().pos);
    }

    long integer() {
        bool neg = accept("-");
        const Token& t = peek();
        if (t.kind != Tok::Number) throw ParseError("expected an integer", t.pos);
        ++at_;
        if (t.text.size() > 9) throw ParseError("integer too large", t.pos);
        long v = std::stol(t.text);
        return neg ? -v : v;
    }

    Superform one() const { return Superform::scalar(chart_, table_, 1); }

    Superform expr() {
        Superform r(chart_, table_);
        bool neg = false;
        if (accept("-"))
            neg = true;
        else
            accept("+");
        Superform t = term();
        r += neg ? -t : t;
        for (;;) {
            if (accept("+"))
                r += term();
            else if (accept("-"))
                r -= term();
            else
                break;
        }
        return r;
    }

    Superform term() {
        Superform r = factor();
        for (;;) {
            if (accept("*")) {
                r = wedge(r, factor());
            } else if (peek().kind == Tok::Symbol && peek().text == "/") {
                std::size_t pos = peek().pos;
                ++at_;
                Superform d = factor();
                r = wedge(r, invert_scalar(d, pos));
            } else {
                break;
            }
        }
        return r;
    }

    Superform invert_scalar(const Superform& d, std::size_t pos) const {
        if (d.size() != 1 || !d.terms().begin()->first.is_one() || !d.terms().begin()->second.is_monomial())
            throw ParseError("can only divide by a nonzero scalar monomial", pos);
        return Superform::function(chart_, table_, d.terms().begin()->second.inverse_monomial());
    }

    Superform factor() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            ++at_;
            return Superform::scalar(chart_, table_, Rational(t.text));
        }
        if (accept("(")) {
            Superform r = expr();
            expect(")");
            return r;
        }
        if (t.kind == Tok::Name) {
            if (t.text == "delta") return delta();
            return coordinate();
        }
        throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    }

    std::optional<int> index_of(const std::vector<std::string>& names, std::string_view n) const {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) return std::nullopt;
        return static_cast<int>(it - names.begin());
    }

    Superform coordinate() {
        const Token t = next();
        long p = 1;
        bool has_power = false;
        if (accept("^")) {
            has_power = true;
            p = integer();
        }
        const auto& evens = *table_->evens;
        if (auto i = index_of(evens, t.text)) {
            if (std::labs(p) > 100000) throw ParseError("exponent too large", t.pos);
            return Superform::function(chart_, table_,
                                       LaurentPoly::variable(table_->evens, static_cast<std::size_t>(*i), static_cast<int>(p)));
        }
        if (has_power && p < 0) throw ParseError("negative powers are only allowed on even coordinates", t.pos);
        if (auto j = index_of(table_->odds, t.text)) {
            if (p == 0) return one();
            if (p > 1) return Superform(chart_, table_);
            return Superform::product(chart_, table_, {Factor::theta(*j)});
        }
        if (t.text.size() > 1 && t.text[0] == 'd') {
            std::string_view rest = std::string_view(t.text).substr(1);
            if (auto i = index_of(evens, rest)) {
                if (p == 0) return one();
                if (p > 1) return Superform(chart_, table_);
                return Superform::product(chart_, table_, {Factor::d_even(*i)});
            }
            if (auto j = index_of(table_->odds, rest)) {
                if (p == 0) return one();
                if (p > 100000) throw ParseError("exponent too large", t.pos);
                return Superform::product(chart_, table_, {Factor::d_odd(*j, static_cast<int>(p))});
            }
        }
        throw ParseError("unknown coordinate '" + t.text + "' on chart " + chart_, t.pos);
    }

    Superform delta() {
        const Token t = next();
        long order = 0;
        while (accept("'")) ++order;
        if (accept("^")) {
            expect("(");
            std::size_t pos = peek().pos;
            long k = integer();
            if (k < 0) throw ParseError("delta order must be non-negative", pos);
            order += k;
            expect(")");
        }
        expect("(");
        const Token arg = next();
        std::optional<int> j;
        if (arg.kind == Tok::Name && arg.text.size() > 1 && arg.text[0] == 'd')
            j = index_of(table_->odds, std::string_view(arg.text).substr(1));
        if (!j) throw ParseError("delta takes the differential of an odd coordinate", arg.pos);
        expect(")");
        if (order > 100000) throw ParseError("delta order too large", t.pos);
        return Superform::product(chart_, table_, {Factor::delta(*j, static_cast<int>(order))});
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    std::string chart_;
    TablePtr table_;
};

}  // namespace detail

/// Parse `text` as a form on the given chart.
inline Superform parse_form(std::string_view text, const std::string& chart, const TablePtr& table,
                            std::size_t base_position = 0) {
    return detail::FormParser(text, chart, table, base_position).parse_all();
}

inline Superform parse_form(std::string_view text, const Chart& chart) { return parse_form(text, chart.id, chart.table); }

// ---------------------------------------------------------------------------
// Printing.

inline std::string factor_text(const Factor& f, const GeneratorTable& t) {
    const auto& odd = [&](int j) -> const std::string& { return t.odds.at(static_cast<std::size_t>(j)); };
    switch (f.kind) {
    case FactorKind::Theta: return odd(f.index);
    case FactorKind::DEven: return "d" + t.evens->at(static_cast<std::size_t>(f.index));
    case FactorKind::DOdd: return "d" + odd(f.index) + (f.value > 1 ? "^" + std::to_string(f.value) : "");
    case FactorKind::Delta: {
        std::string head = "delta";
        if (f.value <= 2)
            head += std::string(static_cast<std::size_t>(f.value), '\'');
        else
            head += "^(" + std::to_string(f.value) + ")";
        return head + "(d" + odd(f.index) + ")";
    }
    }
    return {};
}

/// Deterministic text: terms sorted by bidegree, monomial, exponents.
inline std::string pretty_print(const Superform& a) {
    if (a.is_zero()) return "0";
    const auto& t = *a.table();
    std::vector<std::tuple<Bidegree, const Monomial*, const Exponents*, const Rational*>> rows;
    for (const auto& [m, f] : a.terms())
        for (const auto& [e, c] : f.terms()) rows.emplace_back(m.bidegree(), &m, &e, &c);
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
        if (*std::get<1>(x) != *std::get<1>(y)) return *std::get<1>(x) < *std::get<1>(y);
        return *std::get<2>(x) < *std::get<2>(y);
    });
    std::string out;
    bool first = true;
    for (const auto& [bd, m, e, c] : rows) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < e->size(); ++i) {
            int x = (*e)[i];
            if (x == 0) continue;
            parts.push_back(t.evens->at(i) + (x == 1 ? "" : "^" + std::to_string(x)));
        }
        for (const auto& f : m->factors()) parts.push_back(factor_text(f, t));
        Rational mag = abs(*c);
        std::string body;
        if (mag != 1 || parts.empty()) body = to_string(mag);
        for (const auto& p : parts) body += (body.empty() ? "" : "*") + p;
        if (first)
            out += (sgn(*c) < 0 ? "-" : "") + body;
        else
            out += (sgn(*c) < 0 ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

/// Components listed by bidegree, e.g. "(0|1): psi*delta(dpsi)".
inline std::string bidegree_summary(const Superform& a) {
    std::string out;
    for (const auto& [bd, part] : a.bidegree_components()) {
        if (!out.empty()) out += "\n";
        out += "(" + to_string(bd) + "): " + pretty_print(part);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Atlas description files.
//
//   # comment
//   atlas NAME
//   chart ID ( evens | odds ) [weights ( ints | ints )]
//   map TARGET -> SOURCE : coord = expr, coord = expr, ...
//
// A `map` line writes the coordinates of TARGET as forms on SOURCE; pulling
// back along it sends forms on TARGET to forms on SOURCE.

namespace detail {

inline std::vector<std::string> split_names(std::string_view s, std::size_t base) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string_view::npos) j = s.size();
        std::string_view item = s.substr(i, j - i);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        if (!item.empty()) {
            for (char ch : item)
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
                    throw ParseError("bad name '" + std::string(item) + "'", base + i);
            out.emplace_back(item);
        }
        i = j + 1;
    }
    return out;
}

/// "( a, b | c )" -> {{a, b}, {c}}
inline std::pair<std::vector<std::string>, std::vector<std::string>> parse_pair(std::string_view s, std::size_t base,
                                                                                std::size_t& consumed) {
    std::size_t open = s.find('(');
    std::size_t close = s.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ParseError("expected '( ... | ... )'", base);
    std::string_view inner = s.substr(open + 1, close - open - 1);
    std::size_t bar = inner.find('|');
    if (bar == std::string_view::npos) throw ParseError("expected '|' separating even and odd entries", base + open);
    consumed = close + 1;
    return {split_names(inner.substr(0, bar), base + open + 1),
            split_names(inner.substr(bar + 1), base + open + 2 + bar)};
}

inline std::vector<int> to_ints(const std::vector<std::string>& v, std::size_t pos) {
    std::vector<int> out;
    for (const auto& s : v) {
        try {
            std::size_t used = 0;
            int x = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            out.push_back(x);
        } catch (const std::exception&) {
            throw ParseError("expected an integer weight, found '" + s + "'", pos);
        }
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace detail

inline Atlas parse_atlas(std::string_view text) {
    Atlas atlas;
    bool named = false;
    struct PendingMap {
        std::string target, source;
        std::string_view body;
        std::size_t pos;
    };
    std::vector<PendingMap> maps;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::string_view body = detail::trim(line);
        const std::size_t pos = line_start + static_cast<std::size_t>(body.data() - line.data());
        if (!body.empty()) {
            std::size_t sp = body.find_first_of(" \t");
            std::string_view kw = body.substr(0, sp);
            std::string_view rest = sp == std::string_view::npos ? std::string_view{} : body.substr(sp);
            const std::size_t rest_pos = pos + (sp == std::string_view::npos ? body.size() : sp);
            if (kw == "atlas") {
                if (named) throw ParseError("atlas named twice", pos);
                auto name = detail::trim(rest);
                if (name.empty()) throw ParseError("atlas needs a name", pos);
                atlas = Atlas(std::string(name));
                named = true;
            } else if (kw == "chart") {
                auto r = detail::trim(rest);
                std::size_t idlen = r.find_first_of(" \t(");
                if (r.empty() || idlen == 0) throw ParseError("chart needs an id", rest_pos);
                std::string id(r.substr(0, idlen));
                std::size_t off = static_cast<std::size_t>(r.data() - text.data());
                std::size_t used = 0;
                auto coords = detail::parse_pair(r.substr(idlen), off + idlen, used);
                TablePtr table;
                try {
                    table = make_table(coords.first, coords.second);
                } catch (const StructuralError& e) {
                    throw ParseError(e.what(), pos);
                }
                std::vector<WeightCharacter> weights;
                auto tail = detail::trim(r.substr(idlen + used));
                if (!tail.empty()) {
                    std::size_t tail_off = static_cast<std::size_t>(tail.data() - text.data());
                    if (tail.substr(0, 7) != "weights") throw ParseError("expected 'weights'", tail_off);
                    std::size_t used2 = 0;
                    auto w = detail::parse_pair(tail.substr(7), tail_off + 7, used2);
                    WeightCharacter wc{detail::to_ints(w.first, tail_off), detail::to_ints(w.second, tail_off)};
                    if (wc.even.size() != table->n_even() || wc.odd.size() != table->n_odd())
                        throw ParseError("one weight per coordinate is required", tail_off);
                    if (!detail::trim(tail.substr(7 + used2)).empty())
                        throw ParseError("trailing text after weights", tail_off + 7 + used2);
                    weights.push_back(std::move(wc));
                }
                try {
                    atlas.add_chart(Chart{id, table, std::move(weights)});
                } catch (const StructuralError& e) {
                    throw ParseError(e.what(), pos);
                }
            } else if (kw == "map") {
                auto colon = rest.find(':');
                auto arrow = rest.find("->");
                if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow > colon)
                    throw ParseError("expected 'map TARGET -> SOURCE : ...'", rest_pos);
                std::string target(detail::trim(rest.substr(0, arrow)));
                std::string source(detail::trim(rest.substr(arrow + 2, colon - arrow - 2)));
                maps.push_back({target, source, rest.substr(colon + 1), rest_pos + colon + 1});
            } else {
                throw ParseError("unknown keyword '" + std::string(kw) + "'", pos);
            }
        }
        line_start = line_end + 1;
    }
    if (!named) throw ParseError("missing 'atlas NAME' line", 0);

    for (const auto& mp : maps) {
        const Chart* tgt = atlas.find_chart(mp.target);
        const Chart* src = atlas.find_chart(mp.source);
        if (!tgt || !src) throw ParseError("map between unknown charts", mp.pos);
        std::vector<std::optional<LaurentPoly>> even(tgt->table->n_even());
        std::vector<std::optional<OddImage>> odd(tgt->table->n_odd());
        std::size_t i = 0;
        while (i < mp.body.size()) {
            std::size_t j = mp.body.find(',', i);
            if (j == std::string_view::npos) j = mp.body.size();
            std::string_view item = mp.body.substr(i, j - i);
            const std::size_t item_pos = mp.pos + i;
            auto eq = item.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected 'coordinate = expression'", item_pos);
            std::string name(detail::trim(item.substr(0, eq)));
            Superform img = parse_form(item.substr(eq + 1), src->id, src->table, item_pos + eq + 1);
            const auto& tev = *tgt->table->evens;
            if (auto it = std::find(tev.begin(), tev.end(), name); it != tev.end()) {
                if (img.size() != 1 || !img.terms().begin()->first.is_one() ||
                    !img.terms().begin()->second.is_monomial())
                    throw ParseError("even image of '" + name + "' must be a scalar Laurent monomial", item_pos);
                even[static_cast<std::size_t>(it - tev.begin())] = img.terms().begin()->second;
            } else if (auto jt = std::find(tgt->table->odds.begin(), tgt->table->odds.end(), name);
                       jt != tgt->table->odds.end()) {
                OddImage oi;
                for (const auto& [m, f] : img.terms()) {
                    if (m.thetas().size() != 1 || !m.d_evens().empty() || !m.d_odds().empty() || !m.deltas().empty())
                        throw ParseError("odd image of '" + name + "' must be linear in the odd coordinates", item_pos);
                    oi.terms.emplace_back(f, m.thetas().front());
                }
                odd[static_cast<std::size_t>(jt - tgt->table->odds.begin())] = std::move(oi);
            } else {
                throw ParseError("'" + name + "' is not a coordinate of chart " + tgt->id, item_pos);
            }
            i = j + 1;
        }
        std::vector<LaurentPoly> ev;
        std::vector<OddImage> od;
        for (std::size_t k = 0; k < even.size(); ++k) {
            if (!even[k]) throw ParseError("map gives no image for " + tgt->table->evens->at(k), mp.pos);
            ev.push_back(*even[k]);
        }
        for (std::size_t k = 0; k < odd.size(); ++k) {
            if (!odd[k]) throw ParseError("map gives no image for " + tgt->table->odds.at(k), mp.pos);
            od.push_back(*odd[k]);
        }
        try {
            atlas.add_morphism(Morphism(*src, *tgt, std::move(ev), std::move(od)));
        } catch (const Error& e) {
            throw ParseError(e.what(), mp.pos);
        }
    }
    return atlas;
}

}  // namespace intform
