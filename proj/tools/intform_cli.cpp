// intform: command-line driver for the integral-form engine.
//
// Exit status: 0 success, 2 parse error, 3 computation error,
// 4 cohomology not stabilized at the requested cutoff.

#include <intform/intform.hpp>
#include <intform/report.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace intform;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kParseError = 2;
constexpr int kComputeError = 3;
constexpr int kUnstable = 4;

struct Options {
    std::string space = "p11";
    std::string atlas_file;
    std::string chart;
    std::string to;
    std::vector<std::string> exprs;
    std::string sheaf;
    std::string range = "-4:1";
    std::string residue;
    int cutoff = 12;
    int picture = 0;
    int window = -1;
    bool json = false;
};

struct FlatSpace {
    int m = 0;
    int n = 0;
};

std::optional<FlatSpace> parse_flat(const std::string& space) {
    if (space.rfind("flat:", 0) != 0) return std::nullopt;
    std::string dims = space.substr(5);
    auto comma = dims.find(',');
    if (comma == std::string::npos) throw ParseError("expected flat:m,n", 5);
    try {
        std::size_t a = 0, b = 0;
        FlatSpace f{std::stoi(dims.substr(0, comma), &a), std::stoi(dims.substr(comma + 1), &b)};
        if (a != comma || b != dims.size() - comma - 1) throw std::invalid_argument(dims);
        return f;
    } catch (const std::exception&) {
        throw ParseError("expected flat:m,n", 5);
    }
}

Atlas load_atlas(const Options& o) {
    if (!o.atlas_file.empty()) {
        std::ifstream in(o.atlas_file);
        if (!in) throw Error("cannot read atlas file " + o.atlas_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_atlas(ss.str());
    }
    if (o.space == "p11") return builtin_p11();
    if (o.space == "p1") return builtin_p1();
    if (auto f = parse_flat(o.space)) return builtin_flat(f->m, f->n);
    throw ParseError("unknown space '" + o.space + "' (expected p11, p1 or flat:m,n)", 0);
}

const Chart& pick_chart(const Atlas& atlas, const std::string& id) {
    if (id.empty()) return atlas.charts().front();
    return atlas.chart(id);
}

SheafLabel parse_sheaf(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos) throw ParseError("sheaf must look like i|j", 0);
    try {
        std::size_t a = 0, b = 0;
        std::string left = text.substr(0, bar), right = text.substr(bar + 1);
        SheafLabel s{std::stoi(left, &a), std::stoi(right, &b)};
        if (left.find_first_not_of(" \t", a) != std::string::npos || right.find_first_not_of(" \t", b) != std::string::npos)
            throw std::invalid_argument(text);
        return s;
    } catch (const std::exception&) {
        throw ParseError("sheaf must look like i|j", 0);
    }
}

std::pair<int, int> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("range must look like lo:hi", 0);
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ParseError("range must look like lo:hi", colon);
    }
}

std::vector<Superform> parse_exprs(const Options& o, const Chart& chart, std::size_t need_min, std::size_t need_max) {
    if (o.exprs.size() < need_min || o.exprs.size() > need_max)
        throw ParseError("expected " + std::to_string(need_min) +
                             (need_min == need_max ? "" : " to " + std::to_string(need_max)) + " --expr arguments",
                         0);
    std::vector<Superform> out;
    for (const auto& e : o.exprs) out.push_back(parse_form(e, chart));
    return out;
}

int emit_form(const Options& o, const std::string& command, const Superform& f) {
    if (o.json) {
        Json j;
        j["schema"] = 1;
        j["command"] = command;
        j["chart"] = f.chart();
        j["result"] = pretty_print(f);
        Json comps = Json::object();
        for (const auto& [bd, part] : f.bidegree_components()) comps[to_string(bd)] = pretty_print(part);
        j["components"] = comps;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << pretty_print(f) << "\n";
    }
    return 0;
}

int emit_report(const Options& o, const CohomologyReport& r) {
    if (o.json)
        std::cout << to_json(r).dump(2) << "\n";
    else
        std::cout << to_text(r);
    return r.stabilized ? 0 : kUnstable;
}

int run_selftest(const Options& o) {
    struct Check {
        std::string name;
        bool ok;
    };
    std::vector<Check> checks;
    Atlas p11 = builtin_p11();
    const Chart& u1 = p11.chart("U1");
    std::vector<Superform> probes{parse_form("gt", u1), parse_form("delta(dpsit)", u1),
                                  parse_form("psit*dgt*delta'(dpsit)", u1), parse_form("dpsit^3", u1)};
    checks.push_back({"cocycle on p11 probes", verify_cocycle(p11, probes).ok()});
    auto h0 = cech_report(p11, {0, 0}, 6);
    checks.push_back({"H0(0|0) = 1", h0.dim(0) == 1 && h0.dim(1) == 0});
    auto top = cech_report(p11, {1, 1}, 6);
    checks.push_back({"H1(1|1) = 1", top.dim(0) == 0 && top.dim(1) == 1});
    auto neg = cech_report(p11, {-1, 1}, 6);
    checks.push_back({"H0(-1|1) = 8", neg.dim(0) == 8 && neg.dim(1) == 0});
    checks.push_back({"pairing n=1 rank 8", pairing_matrix(1, 6).rank == 8});
    const Chart& u0 = p11.chart("U0");
    checks.push_back({"dpsi*delta(dpsi) = 0", parse_form("dpsi*delta(dpsi)", u0).is_zero()});
    bool all = true;
    if (o.json) {
        Json j;
        j["schema"] = 1;
        j["command"] = "selftest";
        Json list = Json::array();
        for (const auto& c : checks) {
            list.push_back({{"name", c.name}, {"ok", c.ok}});
            all = all && c.ok;
        }
        j["checks"] = list;
        j["ok"] = all;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "\n";
            all = all && c.ok;
        }
    }
    return all ? 0 : kComputeError;
}

int fail(const Options& o, const std::string& type, const std::string& message, int code,
         std::optional<std::size_t> position = std::nullopt) {
    if (o.json) {
        Json j;
        j["schema"] = 1;
        j["error"] = {{"type", type}, {"message", message}};
        if (position) j["error"]["position"] = *position;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral forms on supermanifolds: algebra, pullbacks and cohomology"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--space", o.space, "p11, p1 or flat:m,n")->capture_default_str();
        sub->add_option("--atlas", o.atlas_file, "atlas description file (overrides --space)");
        sub->add_option("--chart", o.chart, "chart the expressions live on");
        sub->add_flag("--json", o.json, "JSON output");
    };

    auto* normalize = app.add_subcommand("normalize", "print the normal form of an expression");
    auto* wedge_cmd = app.add_subcommand("wedge", "wedge product of the given expressions, left to right");
    auto* d_cmd = app.add_subcommand("d", "exterior differential");
    auto* pull = app.add_subcommand("pullback", "pull a form on --chart back to --to");
    auto* pair_cmd = app.add_subcommand("pair", "pairing of a (n+1|0) form with a (-n|1) form");
    auto* integrate = app.add_subcommand("integrate", "Berezin reduction of a top form on flat space");
    for (auto* sub : {normalize, wedge_cmd, d_cmd, pull, pair_cmd, integrate}) {
        common(sub);
        sub->add_option("--expr,-e", o.exprs, "expression")->required();
    }
    pull->add_option("--to", o.to, "chart to pull back to")->required();
    pull->add_option("--window", o.window, "largest dpsi power of the ambient computation");
    integrate->add_option("--residue", o.residue, "also take the residue in this even coordinate");

    auto* cech = app.add_subcommand("cech", "Cech cohomology of a sheaf on p11 or p1");
    common(cech);
    cech->add_option("--sheaf", o.sheaf, "i|j")->required();
    cech->add_option("--cutoff", o.cutoff, "weight cutoff")->capture_default_str();

    auto* derham = app.add_subcommand("derham", "de Rham cohomology of global forms");
    common(derham);
    derham->add_option("--picture", o.picture, "picture number")->capture_default_str();
    derham->add_option("--range", o.range, "degree range lo:hi (p11, p1)")->capture_default_str();
    derham->add_option("--cutoff", o.cutoff, "weight cutoff (p11, p1) or degree cap (flat)")->capture_default_str();

    auto* selftest = app.add_subcommand("selftest", "quick consistency checks");
    selftest->add_flag("--json", o.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (selftest->parsed()) return run_selftest(o);

        Atlas atlas = load_atlas(o);
        if (normalize->parsed()) {
            auto f = parse_exprs(o, pick_chart(atlas, o.chart), 1, 1);
            return emit_form(o, "normalize", f[0]);
        }
        if (wedge_cmd->parsed()) {
            auto fs = parse_exprs(o, pick_chart(atlas, o.chart), 1, 64);
            Superform r = fs[0];
            for (std::size_t k = 1; k < fs.size(); ++k) r = wedge(r, fs[k]);
            return emit_form(o, "wedge", r);
        }
        if (d_cmd->parsed()) {
            auto f = parse_exprs(o, pick_chart(atlas, o.chart), 1, 1);
            return emit_form(o, "d", exterior_d(f[0]));
        }
        if (pull->parsed()) {
            const Chart& from = pick_chart(atlas, o.chart);
            auto f = parse_exprs(o, from, 1, 1);
            const Morphism& m = atlas.morphism(o.to, from.id);
            return emit_form(o, "pullback", m.pullback(f[0], PullbackOptions{o.window}));
        }
        if (pair_cmd->parsed()) {
            auto fs = parse_exprs(o, pick_chart(atlas, o.chart), 2, 2);
            return emit_form(o, "pair", pair(fs[0], fs[1]));
        }
        if (integrate->parsed()) {
            const Chart& chart = pick_chart(atlas, o.chart);
            auto f = parse_exprs(o, chart, 1, 1);
            LaurentPoly reduced = berezin_reduce(f[0]);
            Superform as_form = Superform::function(chart.id, chart.table, reduced);
            std::optional<Rational> res;
            if (!o.residue.empty()) {
                const auto& ev = *chart.table->evens;
                auto it = std::find(ev.begin(), ev.end(), o.residue);
                if (it == ev.end()) throw ParseError("unknown even coordinate '" + o.residue + "'", 0);
                res = bosonic_residue(reduced, static_cast<std::size_t>(it - ev.begin()));
            }
            if (o.json) {
                Json j;
                j["schema"] = 1;
                j["command"] = "integrate";
                j["result"] = pretty_print(as_form);
                if (res) j["residue"] = to_string(*res);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << pretty_print(as_form) << "\n";
                if (res) std::cout << "residue " << to_string(*res) << "\n";
            }
            return 0;
        }
        if (cech->parsed()) {
            SheafLabel s = parse_sheaf(o.sheaf);
            return emit_report(o, cech_report(atlas, s, o.cutoff));
        }
        if (derham->parsed()) {
            if (auto f = parse_flat(o.space); f && o.atlas_file.empty())
                return emit_report(o, derham_flat(f->m, f->n, o.picture, o.cutoff));
            auto [lo, hi] = parse_range(o.range);
            return emit_report(o, derham_line(atlas, o.picture, lo, hi, o.cutoff));
        }
    } catch (const ParseError& e) {
        return fail(o, "parse", e.what(), kParseError, e.position());
    } catch (const WindowOverflow& e) {
        return fail(o, "window", e.what(), kUnstable);
    } catch (const Error& e) {
        return fail(o, "computation", e.what(), kComputeError);
    }
    return 0;
}
