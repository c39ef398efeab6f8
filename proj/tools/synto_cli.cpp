#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "synto/chart.hpp"
#include "synto/defs.hpp"
#include "synto/instances.hpp"
#include "synto/verify.hpp"

namespace {

using namespace synto;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitWindow = 3;
constexpr int kExitVerification = 4;

int exit_code_for(const std::string& code) {
    if (code == errc::window_too_small || code == errc::infinite_window ||
        code == errc::range_empty)
        return kExitWindow;
    if (code == errc::parse_error || code == errc::config_error ||
        code == errc::precondition || code == errc::bidegree_mismatch)
        return kExitConfig;
    return kExitVerification;  // broken invariants: the computation is not trustworthy
}

struct Opts {
    int p = 2;
    int n = 0;
    std::string window;
    std::string format = "text";
    std::string out;
    std::string defs;
};

alg::WindowSpec parse_window(const std::string& s) {
    std::size_t lo_end = 0, hi_end = 0;
    alg::WindowSpec w;
    try {
        w.deg_lo = std::stoi(s, &lo_end);
        if (lo_end + 2 > s.size() || s.compare(lo_end, 2, "..") != 0)
            throw std::invalid_argument("..");
        w.deg_hi = std::stoi(s.substr(lo_end + 2), &hi_end);
        if (lo_end + 2 + hi_end != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw Error(errc::config_error, "--window expects a..b, got '" + s + "'");
    }
    if (w.deg_lo > w.deg_hi)
        throw Error(errc::range_empty,
                    "--window " + s + " is empty (lower bound above upper)");
    return w;
}

void enforce_window_cap(const alg::WindowSpec& w) {
    const char* cap = std::getenv("SYNTO_MAX_WINDOW");
    if (!cap) return;
    long long lim = std::atoll(cap);
    if (lim > 0 && static_cast<long long>(w.deg_hi) - w.deg_lo > lim)
        throw Error(errc::window_too_small,
                    "window span " + std::to_string(w.deg_hi - w.deg_lo) +
                        " exceeds SYNTO_MAX_WINDOW=" + std::to_string(lim));
}

unsigned checked_prime(int p) {
    if (p < 2 || !fp::is_prime(static_cast<unsigned>(p)))
        throw Error(errc::config_error, "-p expects a prime, got " + std::to_string(p));
    return static_cast<unsigned>(p);
}

void emit(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) throw Error(errc::config_error, "cannot open output file " + out_path);
    out << bytes;
}

std::string render_basis(const inst::BigradedBasis& basis, const std::string& format,
                         const std::vector<chart::DiffRecord>& diffs = {}) {
    if (format == "json") return chart::render_json(basis, diffs);
    auto spec = chart::ChartSpec::fit(basis);
    return format == "svg" ? chart::render_svg(basis, spec)
                           : chart::render_text(basis, spec);
}

std::string render_table(unsigned p, const inst::DimTable& table, int v3,
                         const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["p"] = p;
        j["v3_degree"] = v3;
        j["table"] = nlohmann::ordered_json::array();
        for (const auto& [s, dim] : table) j["table"].push_back({s, dim});
        return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [s, dim] : table)
        out += std::to_string(s) + " " + std::to_string(dim) + "\n";
    return out;
}

inst::BigradedBasis basis_of_page(unsigned p, int n, const eng::Page& page,
                                  const alg::WindowSpec& window,
                                  std::optional<std::size_t> filtration_gen) {
    inst::BigradedBasis b;
    b.p = p;
    b.n = n;
    b.window = window;
    auto in_report = [&](const alg::Bidegree& bd, const alg::Monomial& lead) {
        if (bd.degree < window.deg_lo || bd.degree > window.deg_hi) return false;
        if (window.wt_lo && bd.weight < *window.wt_lo) return false;
        if (window.wt_hi && bd.weight > *window.wt_hi) return false;
        for (const auto& [name, bounds] : window.exp_bounds) {
            int idx = page.algebra->index_of(name);
            if (idx >= 0 && (lead.exp(static_cast<std::size_t>(idx)) < bounds.first ||
                             lead.exp(static_cast<std::size_t>(idx)) > bounds.second))
                return false;
        }
        return true;
    };
    for (const auto& [bd, cls] : page.classes)
        for (const auto& cl : cls) {
            if (!in_report(bd, cl.lead)) continue;
            int filt = filtration_gen ? cl.lead.exp(*filtration_gen) : 0;
            b.classes.push_back({alg::monomial_label(*page.algebra, cl.lead), bd.degree,
                                 bd.weight, filt, ""});
        }
    std::sort(b.classes.begin(), b.classes.end(), [](const auto& a, const auto& c) {
        return std::tie(a.degree, a.weight, a.label) < std::tie(c.degree, c.weight, c.label);
    });
    return b;
}

int run_custom(const Opts& o) {
    if (o.defs.empty())
        throw Error(errc::config_error, "run-custom requires --defs <file>");
    auto def = defs::load_file(o.defs);
    alg::WindowSpec report;
    if (!o.window.empty())
        report = parse_window(o.window);
    else if (def.window)
        report = *def.window;
    else
        throw Error(errc::config_error,
                    "no window: pass --window a..b or add one to the definition file");
    enforce_window_cap(report);

    const auto& rules = def.sequence.rules();
    int margin = static_cast<int>(rules.size()) + 2;
    int fmargin = 2;
    for (const auto& r : rules) fmargin += r.page;
    alg::WindowSpec wide = report;
    wide.deg_lo -= margin;
    wide.deg_hi += margin;
    for (auto& [name, bounds] : wide.exp_bounds) {
        bounds.first -= fmargin;
        bounds.second += fmargin;
    }
    auto res = eng::run(def.sequence, wide, report);
    auto basis = basis_of_page(def.sequence.algebra().p(), 0, res.einf, report,
                               def.sequence.filtration_gen);
    emit(render_basis(basis, o.format,
                      o.format == "json"
                          ? chart::diff_records(res.log, def.sequence.shift())
                          : std::vector<chart::DiffRecord>{}),
         o.out);
    return kExitOk;
}

int dispatch(const std::string& cmd, const Opts& o) {
    unsigned p = cmd == "run-custom" || cmd == "verify" ? 2 : checked_prime(o.p);
    if (o.n < -1)
        throw Error(errc::config_error, "-n expects a height >= -1, got " + std::to_string(o.n));
    eng::Shift bockstein{};

    if (cmd == "verify") {
        auto results = verify::run_all(SYNTO_GOLDEN_DIR);
        emit(verify::format_report(results), o.out);
        return verify::all_pass(results) ? kExitOk : kExitVerification;
    }
    if (cmd == "run-custom") return run_custom(o);

    if (cmd == "syntomic") {
        auto range = inst::degree_range(p, o.n);
        alg::WindowSpec w{range.first, range.second, {}, {}, {}};
        if (!o.window.empty()) {
            auto user = parse_window(o.window);
            w.deg_lo = std::min(w.deg_lo, user.deg_lo);
            w.deg_hi = std::max(w.deg_hi, user.deg_hi);
        }
        enforce_window_cap(w);
        auto syn = inst::syntomic(p, o.n, w);
        emit(render_basis(syn.basis, o.format), o.out);
        return kExitOk;
    }
    if (cmd == "tc-bp2" || cmd == "k-bp2") {
        int hi = 2 * o.p * o.p + 2 * o.p + 2;
        alg::WindowSpec w = o.window.empty() ? alg::WindowSpec{-10, hi, {}, {}, {}}
                                             : parse_window(o.window);
        enforce_window_cap(w);
        if (cmd == "tc-bp2") {
            auto tc = inst::tc_bp2(p, w);
            emit(render_table(p, tc.table, tc.v3_degree, o.format), o.out);
        } else {
            auto k = inst::k_bp2(p, w);
            emit(render_table(p, k.table, 2 * o.p * o.p * o.p - 2, o.format), o.out);
        }
        return kExitOk;
    }

    bool periodic_default = cmd == "tp" || cmd == "tcminus";
    alg::WindowSpec w = o.window.empty()
                            ? alg::WindowSpec{periodic_default ? -40 : 0,
                                              periodic_default ? 40 : 24, {}, {}, {}}
                            : parse_window(o.window);
    enforce_window_cap(w);

    if (cmd == "thh") {
        emit(render_basis(inst::thh_bpn_page(p, o.n, w), o.format), o.out);
    } else if (cmd == "hochschild-may") {
        auto hm = inst::hochschild_may(p, o.n, w);
        emit(render_basis(hm.einf, o.format,
                          o.format == "json" ? chart::diff_records(hm.log, bockstein)
                                             : std::vector<chart::DiffRecord>{}),
             o.out);
    } else if (cmd == "tp") {
        auto tp = inst::tp_page(p, o.n, w);
        emit(render_basis(tp.basis, o.format,
                          o.format == "json" ? chart::diff_records(tp.log, bockstein)
                                             : std::vector<chart::DiffRecord>{}),
             o.out);
    } else {  // tcminus
        auto tc = inst::tc_minus_page(p, o.n, w);
        emit(render_basis(tc.page.basis, o.format,
                          o.format == "json"
                              ? chart::diff_records(tc.page.log, bockstein)
                              : std::vector<chart::DiffRecord>{}),
             o.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bigraded spectral-sequence calculator for THH/TC-style towers"};
    app.require_subcommand(1);

    Opts o;
    const std::vector<std::string> cmds = {"syntomic", "tp",     "tcminus",
                                           "thh",      "hochschild-may", "tc-bp2",
                                           "k-bp2",    "run-custom",     "verify"};
    const std::map<std::string, std::string> descs = {
        {"syntomic", "syntomic cohomology chart (window auto-covers the full range)"},
        {"tp", "periodic t-Bockstein E-infinity page"},
        {"tcminus", "Nygaard-filtered t-Bockstein E-infinity page with pieces"},
        {"thh", "topological Hochschild homology page"},
        {"hochschild-may", "Hochschild-May spectral sequence E-infinity page"},
        {"tc-bp2", "graded dimensions of TC at height 2 (p >= 5)"},
        {"k-bp2", "graded dimensions of the K-theory variant at height 2 (p >= 5)"},
        {"run-custom", "run a user-defined spectral sequence from --defs"},
        {"verify", "run the acceptance checklist and report per-criterion results"},
    };
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c, descs.at(c));
        sub->add_option("-p", o.p, "prime");
        sub->add_option("-n", o.n, "height (>= -1)");
        sub->add_option("--window", o.window, "degree window a..b");
        sub->add_option("--format", o.format, "text | svg | json")
            ->check(CLI::IsMember({"text", "svg", "json"}));
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_option("--defs", o.defs, "JSON definition file (run-custom)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), o);
    } catch (const synto::Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "INTERNAL: " << e.what() << "\n";
        return kExitVerification;
    }
}
