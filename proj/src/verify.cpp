#include "synto/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "synto/chart.hpp"
#include "synto/instances.hpp"

namespace synto::verify {

namespace {

using alg::Monomial;
using alg::WindowSpec;
using inst::Syntomic;

struct Ctx {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg) {
        if (ok) {
            ok = false;
            detail = msg;
        }
    }
    void expect(bool cond, const std::string& msg) {
        if (!cond) fail(msg);
    }
};

struct Rng {  // xorshift64*, deterministic across platforms
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545F4914F6CDD1Dull;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) return "";
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::vector<unsigned> kPrimes = {2, 3, 5, 7};
const std::vector<int> kHeights = {-1, 0, 1, 2};

// Expected periodic E-infinity: Lambda(l_1..l_{n+1}) x F_p[t^{+-p^{n+1}}].
std::set<std::string> tp_closed_form(unsigned p, int n, int deg_lo, int deg_hi) {
    std::set<std::string> out;
    int m = n + 1;
    int P = static_cast<int>(ipow(p, m));
    for (int mask = 0; mask < (1 << m); ++mask) {
        int base = 0;
        std::string lam;
        for (int j = 1; j <= m; ++j)
            if (mask & (1 << (j - 1))) {
                base += static_cast<int>(2 * ipow(p, j) - 1);
                lam += "λ" + std::to_string(j);
            }
        for (int k = -200; k <= 200; ++k) {
            int deg = base - 2 * P * k;
            if (deg < deg_lo || deg > deg_hi) continue;
            std::string lab = lam;
            if (k != 0) lab += "t^" + std::to_string(P * k);
            out.insert(lab.empty() ? "1" : lab);
        }
    }
    return out;
}

// --- criteria -------------------------------------------------------------

void figure1(Ctx& c, const std::map<std::pair<unsigned, int>, Syntomic>& grid,
             const std::string& golden_dir) {
    const auto& syn = grid.at({2, 2});
    c.expect(syn.basis.classes.size() == 28,
             "expected 28 classes, got " + std::to_string(syn.basis.classes.size()));
    std::map<int, int> rows;
    for (const auto& cl : syn.basis.classes) rows[cl.weight]++;
    c.expect(rows == std::map<int, int>{{0, 1}, {1, 7}, {2, 12}, {3, 7}, {4, 1}},
             "row populations differ from (1,7,12,7,1)");
    auto at = [&](const std::string& lab, int d, int s) {
        for (const auto& cl : syn.basis.classes)
            if (cl.label == lab) return cl.degree == d && cl.weight == s;
        return false;
    };
    c.expect(at("λ1λ2λ3", 25, 3), "λ1λ2λ3 not at (25,3)");
    c.expect(at("∂", -1, 1), "∂ not at (-1,1)");
    c.expect(at("Ξ_{3,1}", 7, 1), "Ξ_{3,1} not at (7,1)");

    chart::ChartSpec fig{-2, 26, -1, 5, true};
    c.expect(chart::render_text(syn.basis, fig) == slurp(golden_dir + "/figure1.txt"),
             "text render differs from the golden file");
    c.expect(chart::render_svg(syn.basis, fig) == slurp(golden_dir + "/figure1.svg"),
             "SVG render differs from the golden file");
}

void dimensions(Ctx& c, const std::map<std::pair<unsigned, int>, Syntomic>& grid) {
    for (const auto& [pn, syn] : grid) {
        auto [p, n] = pn;
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        c.expect(syn.basis.classes.size() == inst::syntomic_dimension(p, n),
                 tag + ": cardinality != dimension formula");
        auto [lo, hi] = inst::degree_range(p, n);
        int min_d = lo - 1, max_d = hi + 1;
        if (!syn.basis.classes.empty()) {
            min_d = max_d = syn.basis.classes.front().degree;
            for (const auto& cl : syn.basis.classes) {
                min_d = std::min(min_d, cl.degree);
                max_d = std::max(max_d, cl.degree);
                c.expect(cl.weight >= 0 && cl.weight <= n + 2,
                         tag + ": weight of " + cl.label + " outside [0,n+2]");
            }
        }
        c.expect(min_d == lo && max_d == hi, tag + ": degree range != closed form");
    }
}

void kernel_ledger(Ctx& c, const std::map<std::pair<unsigned, int>, Syntomic>& grid) {
    for (const auto& [pn, syn] : grid) {
        auto [p, n] = pn;
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        std::set<std::string> a00, axi, ker(syn.kernel_labels.begin(), syn.kernel_labels.end());
        for (const auto& cl : syn.basis.classes) {
            if (cl.piece == "A00") a00.insert(cl.label);
            if (cl.piece == "A00" || cl.piece == "xi") axi.insert(cl.label);
        }
        c.expect(ker == axi, tag + ": ker(can-φ) != A00 ∪ Ξ-piece");
        std::set<std::string> cok(syn.cokernel_labels.begin(), syn.cokernel_labels.end());
        c.expect(cok == a00, tag + ": coker(can-φ) != A00");
    }
}

void tp_einf(Ctx& c) {
    for (auto [p, n] : std::vector<std::pair<unsigned, int>>{
             {2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}, {5, 0}}) {
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        auto res = inst::tp_page(p, n, WindowSpec{-40, 40, {}, {}, {}});
        int P = static_cast<int>(ipow(p, n + 1));
        c.expect(res.collapse_page <= P + 1, tag + ": collapse page > p^{n+1}+1");
        c.expect(res.collapse_certified, tag + ": no-room certificate failed");
        std::set<std::string> inner;
        for (const auto& cl : res.basis.classes)
            if (cl.degree >= -20 && cl.degree <= 20) inner.insert(cl.label);
        c.expect(inner == tp_closed_form(p, n, -20, 20),
                 tag + ": inner-half E-infinity differs from Λ(λ)[t^{±p^{n+1}}]");
    }
}

void hm_einf(Ctx& c) {
    for (auto [p, n] : std::vector<std::pair<unsigned, int>>{
             {2, 0}, {2, 2}, {3, 0}, {3, 1}, {5, 0}}) {
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        WindowSpec w{0, 24, {}, {}, {}};
        auto hm = inst::hochschild_may(p, n, w);
        auto thh = inst::thh_bpn_page(p, n, w);
        auto la = hm.einf.labels();
        auto lb = thh.labels();
        c.expect(std::set<std::string>(la.begin(), la.end()) ==
                     std::set<std::string>(lb.begin(), lb.end()),
                 tag + ": E-infinity != THH page");
        for (int i = 0; i <= n; ++i) {
            long long e = (p - 1) * ipow(p, i);
            std::string want = "σv" + std::to_string(i) +
                               (e == 1 ? "μ" : "μ^" + std::to_string(e));
            c.expect(hm.detections[static_cast<std::size_t>(i)] ==
                         std::make_pair("λ" + std::to_string(i + 1), want),
                     tag + ": detection of λ" + std::to_string(i + 1) + " differs");
        }
    }
}

void gap_grid(Ctx& c) {
    for (unsigned p : kPrimes)
        for (int n : kHeights) {
            auto g = inst::vn1_bockstein_gap_check(p, n);
            c.expect(g.pass, "(p=" + std::to_string(p) + ",n=" + std::to_string(n) +
                                 "): gap check found " +
                                 (g.witnesses.empty() ? "?" : g.witnesses[0].source + " -> " +
                                                                 g.witnesses[0].target));
        }
}

void bp2_pipeline(Ctx& c, const std::map<std::pair<unsigned, int>, Syntomic>& grid) {
    for (unsigned p : {5u, 7u}) {
        std::string tag = "(p=" + std::to_string(p) + ")";
        auto nr = inst::motivic_no_room(p);
        c.expect(nr.pass, tag + ": motivic no-room scan found a candidate");
        int hi = static_cast<int>(2 * p * p + 2 * p + 2);
        WindowSpec w{-10, hi, {}, {}, {}};
        auto tc = inst::tc_bp2(p, w);
        c.expect(tc.v3_degree == static_cast<int>(2 * ipow(p, 3) - 2), tag + ": |v3| wrong");
        // below one v3-period the table is the generator count per degree,
        // cross-checked against the engine-computed syntomic basis
        const auto& syn = grid.at({p, 2});
        for (int s = -10; s <= hi; ++s) {
            std::size_t want = 0;
            for (const auto& cl : syn.basis.classes) want += (cl.degree == s);
            if (tc.table.at(s) != want) {
                c.fail(tag + ": TC table at s=" + std::to_string(s) + " is " +
                       std::to_string(tc.table.at(s)) + ", expected " + std::to_string(want));
                break;
            }
        }
        auto k = inst::k_bp2(p, w);
        std::set<int> bump = {static_cast<int>(2 * p) - 3, static_cast<int>(2 * p * p) - 3,
                              static_cast<int>(2 * p * p + 2 * p) - 4};
        for (int s = -10; s <= hi; ++s) {
            std::size_t want = s < 0 ? 0 : tc.table.at(s) + (bump.count(s) ? 1 : 0);
            if (k.table.at(s) != want) {
                c.fail(tag + ": K table differs at s=" + std::to_string(s));
                break;
            }
        }
    }
}

void engine_properties(Ctx& c) {
    // Leibniz identity, survivor-shaped draws, 1000 pairs per instance
    for (auto [p, n] : std::vector<std::pair<unsigned, int>>{{2, 2}, {3, 1}}) {
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        auto ss = inst::t_bockstein_sequence(p, n, true);
        const auto& a = ss.algebra();
        WindowSpec w{-130, 130, {}, {}, {}};
        w.exp_bounds["t"] = {-40, 40};
        auto pg = eng::initial_page(ss, w);
        Rng rng(0x5EED0001 + p);
        int checked = 0;
        std::size_t nl = static_cast<std::size_t>(n + 1);
        for (const auto& rule : ss.rules()) {
            pg.r = rule.page;
            auto d = eng::leibniz_extend(ss, rule, pg);  // asserts d∘d = 0 itself
            auto image_of = [&](const Monomial& m) -> const alg::Element* {
                alg::Bidegree b = alg::monomial_bidegree(a, m);
                auto ci = pg.classes.find(b);
                if (ci == pg.classes.end()) return nullptr;
                for (std::size_t i = 0; i < ci->second.size(); ++i)
                    if (ci->second[i].lead == m) {
                        auto ii = d.images.find(b);
                        if (ii == d.images.end()) return nullptr;
                        return &ii->second[i];
                    }
                return nullptr;
            };
            int estep = static_cast<int>(rule.step);
            auto draw = [&]() {
                Monomial m(std::vector<int>(a.size(), 0));
                for (std::size_t j = 0; j < nl; ++j) m.exponents[j] = rng.below(2);
                if (rule.page == 1) {
                    m.exponents[nl] = rng.below(2);
                    m.exponents[nl + 1] = rng.below(2);
                    m.exponents[nl + 2] = rng.below(9) - 4;
                } else {
                    m.exponents[nl + 2] = estep * (rng.below(7) - 3);
                }
                return m;
            };
            for (int it = 0; it < 4000 && checked < 500 * (static_cast<int>(rule.page) > 1 ? 2 : 1);
                 ++it) {
                Monomial m1 = draw(), m2 = draw();
                auto prod = alg::multiply(a, m1, m2);
                if (prod.terms().size() != 1) continue;
                const auto& [pm, pc] = *prod.terms().begin();
                const alg::Element* dp = image_of(pm);
                const alg::Element* d1 = image_of(m1);
                const alg::Element* d2 = image_of(m2);
                if (!dp || !d1 || !d2) continue;
                alg::Element lhs = dp->scaled(static_cast<long long>(pc));
                alg::Element rhs = alg::multiply(a, *d1, alg::Element(a.p(), m2));
                int deg1 = alg::monomial_bidegree(a, m1).degree;
                rhs += alg::multiply(a, alg::Element(a.p(), m1), *d2)
                           .scaled(deg1 % 2 != 0 ? -1 : 1);
                if (!(lhs == rhs)) {
                    c.fail(tag + ": Leibniz identity fails on " + alg::monomial_label(a, m1) +
                           " * " + alg::monomial_label(a, m2));
                    return;
                }
                ++checked;
            }
        }
        c.expect(checked >= 1000, tag + ": only " + std::to_string(checked) +
                                      " Leibniz pairs exercised (< 1000)");

        // Koszul anticommutativity on random pairs
        Rng rng2(0xC0520002 + p);
        for (int it = 0; it < 300; ++it) {
            Monomial m1(std::vector<int>(a.size(), 0)), m2 = m1;
            for (std::size_t j = 0; j < a.size() - 1; ++j) {
                m1.exponents[j] = rng2.below(2);
                m2.exponents[j] = rng2.below(2);
            }
            m1.exponents[a.size() - 1] = rng2.below(9) - 4;
            m2.exponents[a.size() - 1] = rng2.below(9) - 4;
            int d1 = alg::monomial_bidegree(a, m1).degree;
            int d2 = alg::monomial_bidegree(a, m2).degree;
            long long sgn = (d1 % 2 != 0 && d2 % 2 != 0) ? -1 : 1;
            if (!(alg::multiply(a, m1, m2) == alg::multiply(a, m2, m1).scaled(sgn))) {
                c.fail(tag + ": Koszul anticommutativity fails");
                return;
            }
        }
    }

    // dimension bookkeeping is asserted inside every run(); exercise one here
    // and confirm window-doubling stability of the reported classes
    auto small = inst::tp_page(2, 1, WindowSpec{-10, 10, {}, {}, {}});
    auto big = inst::tp_page(2, 1, WindowSpec{-20, 20, {}, {}, {}});
    auto bl = big.basis.labels();
    std::set<std::string> bigset(bl.begin(), bl.end());
    for (const auto& cl : small.basis.classes)
        c.expect(bigset.count(cl.label) == 1,
                 "window doubling loses tp class " + cl.label);
    auto tc_small = inst::tc_minus_page(3, 0, WindowSpec{-8, 8, {}, {}, {}});
    auto tc_big = inst::tc_minus_page(3, 0, WindowSpec{-16, 16, {}, {}, {}});
    auto tl = tc_big.page.basis.labels();
    std::set<std::string> tcset(tl.begin(), tl.end());
    for (const auto& cl : tc_small.page.basis.classes)
        c.expect(tcset.count(cl.label) == 1,
                 "window doubling loses tc-minus class " + cl.label);
}

void linalg_oracle(Ctx& c) {
    auto check_matrix = [&](const fp::Matrix& m) {
        unsigned p = m.p();
        // enumerate every vector of F_p^cols; exact kernel count gives the rank
        std::size_t total = 1, ker = 0;
        for (std::size_t i = 0; i < m.cols(); ++i) total *= p;
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t x = code;
            fp::Vec v(m.cols());
            for (std::size_t i = 0; i < m.cols(); ++i) {
                v[i] = static_cast<fp::Scalar>(x % p);
                x /= p;
            }
            fp::Vec mv = fp::mul(m, v);
            if (std::all_of(mv.begin(), mv.end(), [](fp::Scalar s) { return s == 0; })) ++ker;
        }
        std::size_t null_dim = 0;
        while (ker > 1) {
            ker /= p;
            ++null_dim;
        }
        std::size_t want_rank = m.cols() - null_dim;
        if (fp::rank(m) != want_rank) {
            c.fail("rank mismatch vs enumeration oracle (p=" + std::to_string(p) + ", " +
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
            return false;
        }
        if (fp::kernel_basis(m).size() != null_dim) {
            c.fail("kernel dimension mismatch vs enumeration oracle");
            return false;
        }
        return true;
    };

    for (unsigned p : {2u, 3u}) {
        // exhaustive over every matrix with at most 4 entries
        for (std::size_t r = 1; r <= 2; ++r)
            for (std::size_t cc = 1; cc <= 2; ++cc) {
                std::size_t total = 1;
                for (std::size_t i = 0; i < r * cc; ++i) total *= p;
                for (std::size_t code = 0; code < total; ++code) {
                    fp::Matrix m(p, r, cc);
                    std::size_t x = code;
                    for (std::size_t i = 0; i < r; ++i)
                        for (std::size_t j = 0; j < cc; ++j) {
                            m.set(i, j, static_cast<long long>(x % p));
                            x /= p;
                        }
                    if (!check_matrix(m)) return;
                }
            }
        // random sample of the larger shapes up to 5x5
        Rng rng(0x0AC1E000 + p);
        for (int it = 0; it < 400; ++it) {
            std::size_t r = 1 + static_cast<std::size_t>(rng.below(5));
            std::size_t cc = 1 + static_cast<std::size_t>(rng.below(5));
            fp::Matrix m(p, r, cc);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < cc; ++j) m.set(i, j, rng.below(static_cast<int>(p)));
            if (!check_matrix(m)) return;
            // homology: d_in's columns are kernel vectors of m, so m.d_in = 0
            auto kb = fp::kernel_basis(m);
            std::size_t keep = kb.empty() ? 0 : static_cast<std::size_t>(rng.below(
                                                    static_cast<int>(kb.size()) + 1));
            fp::Matrix d_in(p, m.cols(), keep);
            for (std::size_t j = 0; j < keep; ++j)
                for (std::size_t i = 0; i < m.cols(); ++i)
                    d_in.set(i, j, kb[j][i]);
            auto h = fp::homology_basis(d_in, m);
            std::size_t want = m.cols() - fp::rank(m) - fp::rank(d_in);
            if (h.basis.size() != want) {
                c.fail("homology dimension mismatch vs rank bookkeeping");
                return;
            }
        }
    }
}

}  // namespace

std::vector<CheckResult> run_all(const std::string& golden_dir) {
    std::map<std::pair<unsigned, int>, Syntomic> grid;
    std::string grid_error;
    try {
        for (unsigned p : kPrimes)
            for (int n : kHeights) grid.emplace(std::make_pair(p, n), inst::syntomic(p, n));
    } catch (const std::exception& e) {
        grid_error = e.what();
    }

    struct Item {
        int id;
        std::string name;
        std::function<void(Ctx&)> fn;
        bool needs_grid;
    };
    std::vector<Item> items = {
        {1, "Figure-1 chart reproduction",
         [&](Ctx& c) { figure1(c, grid, golden_dir); }, true},
        {2, "syntomic dimension formula on the (p,n) grid",
         [&](Ctx& c) { dimensions(c, grid); }, true},
        {3, "ker/coker ledger of can-φ",
         [&](Ctx& c) { kernel_ledger(c, grid); }, true},
        {4, "periodic t-Bockstein E-infinity and collapse page",
         [&](Ctx& c) { tp_einf(c); }, false},
        {5, "Hochschild-May E-infinity with λ-detection",
         [&](Ctx& c) { hm_einf(c); }, false},
        {6, "v_{n+1}-Bockstein gap certificate on the grid",
         [&](Ctx& c) { gap_grid(c); }, false},
        {7, "BP<2> pipeline: no-room, TC and K tables (p = 5, 7)",
         [&](Ctx& c) { bp2_pipeline(c, grid); }, true},
        {8, "engine properties: Leibniz, Koszul, bookkeeping, window stability",
         [&](Ctx& c) { engine_properties(c); }, false},
        {9, "linear algebra vs exhaustive enumeration oracle",
         [&](Ctx& c) { linalg_oracle(c); }, false},
    };

    std::vector<CheckResult> out;
    for (const auto& item : items) {
        Ctx c;
        if (item.needs_grid && !grid_error.empty()) {
            c.fail("grid construction failed: " + grid_error);
        } else {
            try {
                item.fn(c);
            } catch (const std::exception& e) {
                c.fail(std::string("exception: ") + e.what());
            }
        }
        out.push_back({item.id, item.name, c.ok, c.detail});
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

std::string format_report(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " - " << r.name;
        if (!r.pass && !r.detail.empty()) os << " (" << r.detail << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace synto::verify
