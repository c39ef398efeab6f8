#include "synto/engine.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace synto::eng {

namespace {

using alg::Bidegree;
using alg::Element;
using alg::Monomial;

std::string bidegree_str(Bidegree b) {
    return "(" + std::to_string(b.degree) + "," + std::to_string(b.weight) + ")";
}

bool is_pow_of(long long v, unsigned p) {
    if (v < 1) return false;
    while (v % p == 0) v /= p;
    return v == 1;
}

// Base-p digit block of e matched by the factor g^step (step = p^i): the
// representative of e mod step*p in [0, step*p), divided by step.
long long digit_coeff(long long e, long long step, unsigned p) {
    long long mod = step * static_cast<long long>(p);
    long long r = ((e % mod) + mod) % mod;
    return r / step;
}

// d of a single monomial under the rule, as an ambient element (before any
// window clipping). Implements d(x g^e y) = (-1)^{|x|} c x g^{e-step} d(g^step) y
// with the extra Koszul sign for moving d(g^step) past the suffix y.
Element rule_on_monomial(const alg::AlgebraPresentation& a, const Rule& rule, int image_degree,
                         const Monomial& m) {
    unsigned p = a.p();
    long long c = digit_coeff(m.exp(rule.gen), rule.step, p);
    if (c % p == 0) return Element::zero(p);

    long long prefix_deg = 0, suffix_deg = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k == rule.gen) continue;
        long long d = static_cast<long long>(m.exp(k)) * a.gen(k).degree;
        (k < rule.gen ? prefix_deg : suffix_deg) += d;
    }
    long long sign = (prefix_deg % 2 != 0) ? -1 : 1;
    if (image_degree % 2 != 0 && suffix_deg % 2 != 0) sign = -sign;

    Monomial residual = m;
    if (residual.exponents.size() < a.size()) residual.exponents.resize(a.size(), 0);
    residual.exponents[rule.gen] -= static_cast<int>(rule.step);

    return multiply(a, Element(p, residual, static_cast<unsigned>(((c * sign) % p + p) % p)),
                    rule.image);
}

fp::Vec ambient_coords(const Page& page, Bidegree b, const Element& e) {
    const auto& basis = page.ambient.at(b);
    fp::Vec v(basis.size(), 0);
    for (const auto& [m, coeff] : e.terms()) v[page.ambient_pos.at(m)] = coeff;
    return v;
}

bool in_box(const alg::AlgebraPresentation& a, const alg::WindowSpec& w, const Monomial& m) {
    Bidegree b = monomial_bidegree(a, m);
    if (b.degree < w.deg_lo || b.degree > w.deg_hi) return false;
    if (w.wt_lo && b.weight < *w.wt_lo) return false;
    if (w.wt_hi && b.weight > *w.wt_hi) return false;
    for (const auto& [name, bounds] : w.exp_bounds) {
        int i = a.index_of(name);
        if (i < 0) continue;
        int e = m.exp(static_cast<std::size_t>(i));
        if (e < bounds.first || e > bounds.second) return false;
    }
    return true;
}

Monomial leading_monomial(const alg::AlgebraPresentation& a, const Element& e) {
    const Monomial* best = nullptr;
    for (const auto& [m, c] : e.terms())
        if (!best || graded_lex_less(a, *best, m)) best = &m;
    return *best;
}

}  // namespace

std::size_t Page::total_dim() const {
    std::size_t n = 0;
    for (const auto& [b, cls] : classes) n += cls.size();
    return n;
}

void SpectralSequence::add_rule(Rule rule) {
    const auto& a = algebra_;
    if (rule.gen >= a.size())
        throw Error(errc::precondition, "rule generator index out of range");
    if (!is_pow_of(rule.step, a.p()))
        throw Error(errc::precondition, "rule step must be a power of p");
    if (!rules_.empty() && rule.page <= rules_.back().page)
        throw Error(errc::precondition, "rule pages must be strictly ascending");
    if (rule.page < initial_r_)
        throw Error(errc::precondition, "rule page precedes the initial page");
    if (rule.image.is_zero())
        throw Error(errc::precondition, "rule image must be nonzero");
    if (rule.image.p() != a.p())
        throw Error(errc::precondition, "rule image over the wrong prime");

    Bidegree src = a.gen(rule.gen).bidegree();
    src.degree *= static_cast<int>(rule.step);
    src.weight *= static_cast<int>(rule.step);
    Bidegree want = src + shift_.delta(rule.page);
    for (const auto& [m, c] : rule.image.terms()) {
        Bidegree got = monomial_bidegree(a, m);
        if (got != want)
            throw Error(errc::bidegree_mismatch,
                        "rule image at " + bidegree_str(got) + ", shift requires " +
                            bidegree_str(want));
    }
    rules_.push_back(std::move(rule));
}

Page initial_page(const SpectralSequence& ss, const alg::WindowSpec& window) {
    Page pg;
    pg.r = ss.initial_r();
    pg.algebra = &ss.algebra();
    pg.window = window;
    for (const auto& m : basis_in_window(ss.algebra(), window)) {
        Bidegree b = monomial_bidegree(ss.algebra(), m);
        auto& slot = pg.ambient[b];
        pg.ambient_pos[m] = slot.size();
        slot.push_back(m);
        pg.classes[b].push_back({Element(ss.algebra().p(), m), m});
    }
    return pg;
}

Differential leibniz_extend(const SpectralSequence& ss, const Rule& rule, const Page& page) {
    if (rule.page != page.r)
        throw Error(errc::precondition, "rule page " + std::to_string(rule.page) +
                                            " applied to page " + std::to_string(page.r));
    const auto& a = ss.algebra();
    unsigned p = a.p();

    Differential diff;
    diff.page = rule.page;
    diff.delta = ss.shift().delta(rule.page);
    int image_degree =
        static_cast<int>(rule.step) * a.gen(rule.gen).degree + ss.shift().d_degree;

    for (const auto& [b, cls] : page.classes) {
        Bidegree target = b + diff.delta;
        auto& images = diff.images[b];
        images.reserve(cls.size());
        for (const auto& c : cls) {
            Element img = Element::zero(p);
            for (const auto& [m, coeff] : c.rep.terms())
                img += rule_on_monomial(a, rule, image_degree, m).scaled(coeff);
            if (!img.is_zero()) {
                bool clipped = false;
                for (const auto& [m, coeff] : img.terms())
                    if (!page.ambient_pos.count(m)) {
                        if (in_box(a, page.window, m))
                            throw Error(errc::precondition,
                                        "image monomial in window but not in ambient basis");
                        clipped = true;
                    }
                if (clipped) {
                    diff.dropped.push_back(c.lead);
                    img = Element::zero(p);
                }
            }
            images.push_back(std::move(img));
        }

        // Express each image over [target class reps | target boundaries];
        // the boundary components vanish in page coordinates.
        std::size_t tdim = 0, bdim = 0;
        const std::vector<ClassRep>* tcls = nullptr;
        const std::vector<Element>* tbnd = nullptr;
        if (auto it = page.classes.find(target); it != page.classes.end()) {
            tcls = &it->second;
            tdim = tcls->size();
        }
        if (auto it = page.boundaries.find(target); it != page.boundaries.end()) {
            tbnd = &it->second;
            bdim = tbnd->size();
        }
        fp::Matrix mat(p, tdim, cls.size());
        bool any = false;
        for (const auto& e : images) any = any || !e.is_zero();
        if (any) {
            std::size_t adim = page.ambient.at(target).size();
            fp::Matrix span(p, adim, tdim + bdim);
            for (std::size_t j = 0; j < tdim; ++j) {
                fp::Vec col = ambient_coords(page, target, (*tcls)[j].rep);
                for (std::size_t i = 0; i < adim; ++i) span.at(i, j) = col[i];
            }
            for (std::size_t j = 0; j < bdim; ++j) {
                fp::Vec col = ambient_coords(page, target, (*tbnd)[j]);
                for (std::size_t i = 0; i < adim; ++i) span.at(i, tdim + j) = col[i];
            }
            for (std::size_t c = 0; c < images.size(); ++c) {
                if (images[c].is_zero()) continue;
                fp::Vec rhs = ambient_coords(page, target, images[c]);
                fp::Vec x;
                if (!solve(span, rhs, x))
                    throw Error(errc::precondition,
                                "rule image escapes the cycle span at " + bidegree_str(target));
                for (std::size_t i = 0; i < tdim; ++i) mat.at(i, c) = x[i];
            }
        }
        diff.matrices.emplace(b, std::move(mat));
    }

    // d.d = 0 in class coordinates.
    for (const auto& [b, m1] : diff.matrices) {
        auto it = diff.matrices.find(b + diff.delta);
        if (it == diff.matrices.end()) continue;
        if (!mul(it->second, m1).is_zero())
            throw Error(errc::composition_nonzero,
                        "d.d nonzero on page " + std::to_string(rule.page) + " at " +
                            bidegree_str(b));
    }
    return diff;
}

Page turn_page(const Page& page, const Differential& diff) {
    const auto& a = *page.algebra;
    unsigned p = a.p();
    Page nx;
    nx.r = page.r + 1;
    nx.algebra = page.algebra;
    nx.window = page.window;
    nx.ambient = page.ambient;
    nx.ambient_pos = page.ambient_pos;
    nx.boundaries = page.boundaries;

    for (const auto& [b, cls] : page.classes) {
        std::size_t k = cls.size();
        fp::Matrix d_out(p, 0, k);
        if (auto it = diff.matrices.find(b); it != diff.matrices.end()) d_out = it->second;
        fp::Matrix d_in(p, k, 0);
        if (auto it = diff.matrices.find(b - diff.delta); it != diff.matrices.end())
            d_in = it->second;
        auto h = homology_basis(d_in, d_out);
        auto& out = nx.classes[b];
        for (const auto& v : h.basis) {
            Element rep = Element::zero(p);
            for (std::size_t i = 0; i < k; ++i)
                if (v[i]) rep += cls[i].rep.scaled(v[i]);
            out.push_back({rep, leading_monomial(a, rep)});
        }
        std::sort(out.begin(), out.end(), [&](const ClassRep& x, const ClassRep& y) {
            return graded_lex_less(a, x.lead, y.lead);
        });
        if (out.empty()) nx.classes.erase(b);
    }

    // Accumulate this page's boundaries for later-page coordinate solves.
    for (const auto& [b, images] : diff.images)
        for (const auto& e : images)
            if (!e.is_zero()) nx.boundaries[b + diff.delta].push_back(e);
    return nx;
}

Page turn_page(const Page& page) {
    Page nx = page;
    nx.r += 1;
    return nx;
}

std::vector<NoRoomCandidate> no_room_scan(
    const std::vector<std::pair<Bidegree, int>>& classes, const Shift& shift, int r_lo,
    int r_hi) {
    std::set<std::pair<Bidegree, int>> occupied(classes.begin(), classes.end());
    std::vector<NoRoomCandidate> out;
    for (int r = r_lo; r <= r_hi; ++r) {
        Bidegree delta = shift.delta(r);
        for (const auto& [b, f] : classes) {
            int tf = shift.filtration_is_page ? f + r : 0;
            if (occupied.count({b + delta, tf}))
                out.push_back({r, b, f, b + delta});
        }
    }
    return out;
}

std::vector<NoRoomCandidate> no_room_report(const Page& page, const Shift& shift, int r_lo,
                                            int r_hi, std::optional<std::size_t> filtration_gen,
                                            std::optional<std::pair<int, int>> deg_range) {
    std::vector<std::pair<Bidegree, int>> classes;
    for (const auto& [b, cls] : page.classes) {
        if (deg_range && (b.degree < deg_range->first || b.degree > deg_range->second)) continue;
        for (const auto& c : cls)
            classes.push_back({b, filtration_gen ? c.lead.exp(*filtration_gen) : 0});
    }
    return no_room_scan(classes, shift, r_lo, r_hi);
}

RunResult run(const SpectralSequence& ss, const alg::WindowSpec& window,
              const alg::WindowSpec& report, int no_room_r_hi) {
    const auto& a = ss.algebra();
    int margin = static_cast<int>(ss.rules().size());
    if (report.deg_lo < window.deg_lo + margin || report.deg_hi > window.deg_hi - margin)
        throw Error(errc::window_too_small,
                    "report degrees [" + std::to_string(report.deg_lo) + "," +
                        std::to_string(report.deg_hi) + "] need window [" +
                        std::to_string(report.deg_lo - margin) + "," +
                        std::to_string(report.deg_hi + margin) + "] or wider");

    RunResult res;
    Page pg = initial_page(ss, window);
    std::size_t dim = pg.total_dim();
    int last_nonzero = ss.initial_r() - 1;

    for (const auto& rule : ss.rules()) {
        pg.r = rule.page;  // pages without rules carry the zero differential
        Differential diff = leibniz_extend(ss, rule, pg);
        for (const auto& m : diff.dropped) {
            if (in_box(a, report, m))
                throw Error(errc::window_too_small,
                            "differential from " + monomial_label(a, m) +
                                " leaves the window; enlarge it");
            ++res.dropped;
        }
        std::size_t total_rank = 0;
        for (const auto& [b, mat] : diff.matrices) {
            std::size_t rk = fp::rank(mat);
            if (rk == 0) continue;
            res.log.push_back({rule.page, b, rk});
            total_rank += rk;
        }
        if (total_rank > 0) last_nonzero = rule.page;
        pg = turn_page(pg, diff);
        std::size_t ndim = pg.total_dim();
        if (ndim != dim - 2 * total_rank)
            throw Error(errc::dimension_mismatch,
                        "page " + std::to_string(rule.page) + ": dim " + std::to_string(dim) +
                            " -> " + std::to_string(ndim) + " with total rank " +
                            std::to_string(total_rank));
        dim = ndim;
    }

    res.collapse_page = last_nonzero + 1;

    // Collapse certificate over the trusted report box only: window-edge
    // classes outside it are not reliable witnesses.
    std::vector<std::pair<Bidegree, int>> occupied;
    int f_lo = 0, f_hi = 0;
    bool first = true;
    for (const auto& [b, cls] : pg.classes)
        for (const auto& c : cls) {
            if (!in_box(a, report, c.lead)) continue;
            int f = ss.filtration_gen ? c.lead.exp(*ss.filtration_gen) : 0;
            occupied.push_back({b, f});
            if (first) {
                f_lo = f_hi = f;
                first = false;
            } else {
                f_lo = std::min(f_lo, f);
                f_hi = std::max(f_hi, f);
            }
        }
    if (no_room_r_hi < 0) {
        // Beyond the filtration span the jump overshoots every populated slot.
        no_room_r_hi = ss.filtration_gen && !first ? std::max(pg.r, f_hi - f_lo + 1)
                                                   : pg.r + 2;
    }
    res.no_room = no_room_scan(occupied, ss.shift(), pg.r, no_room_r_hi);
    res.einf = std::move(pg);
    return res;
}

}  // namespace synto::eng
