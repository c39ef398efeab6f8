#include "synto/algebra.hpp"

#include <algorithm>
#include <limits>

#include "synto/fp.hpp"

namespace synto::alg {

AlgebraPresentation::AlgebraPresentation(unsigned p, std::vector<GeneratorSpec> gens)
    : p_(p), gens_(std::move(gens)) {
    if (!fp::is_prime(p)) throw Error(errc::precondition, "p must be prime");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (g.name.empty()) throw Error(errc::precondition, "generator name empty");
        for (std::size_t j = 0; j < i; ++j)
            if (gens_[j].name == g.name)
                throw Error(errc::precondition, "duplicate generator name: " + g.name);
        if (g.truncation < 0 || g.truncation == 1)
            throw Error(errc::precondition, "truncation bound must be >= 1 (2 or more to be useful)");
        if (g.kind == GenKind::Laurent && g.degree == 0)
            throw Error(errc::precondition, "laurent generator must have nonzero degree: " + g.name);
        if (p != 2) {
            // Graded commutativity at odd p ties parity to kind.
            bool odd = (g.degree % 2 + 2) % 2 == 1;
            if (g.kind == GenKind::Exterior && !odd)
                throw Error(errc::precondition, "exterior generator must have odd degree: " + g.name);
            if (g.kind != GenKind::Exterior && odd)
                throw Error(errc::precondition, "odd-degree generator must be exterior: " + g.name);
        }
    }
}

int AlgebraPresentation::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Monomial::is_unit() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

Element::Element(unsigned p, const Monomial& m, unsigned coeff) : p_(p) {
    add_term(m, coeff);
}

void Element::add_term(const Monomial& m, long long coeff) {
    long long c = ((coeff % p_) + p_) % p_;
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, static_cast<unsigned>(c));
    } else {
        it->second = static_cast<unsigned>((it->second + c) % p_);
        if (it->second == 0) terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    if (!o.is_zero()) p_ = o.p_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Element Element::scaled(long long c) const {
    Element out = Element::zero(p_);
    for (const auto& [m, k] : terms_) out.add_term(m, c * k);
    return out;
}

Bidegree monomial_bidegree(const AlgebraPresentation& a, const Monomial& m) {
    Bidegree b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        b.degree += m.exp(i) * a.gen(i).degree;
        b.weight += m.exp(i) * a.gen(i).adams_weight;
    }
    return b;
}

bool monomial_valid(const AlgebraPresentation& a, const Monomial& m) {
    if (m.exponents.size() != a.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& g = a.gen(i);
        int e = m.exp(i);
        if (g.kind == GenKind::Exterior && (e < 0 || e > 1)) return false;
        if (g.kind == GenKind::Polynomial && e < 0) return false;
        if (g.truncation > 0 && e >= g.truncation) return false;
    }
    return true;
}

namespace {
bool odd_degree(const GeneratorSpec& g) { return ((g.degree % 2) + 2) % 2 == 1; }
}  // namespace

Element multiply(const AlgebraPresentation& a, const Monomial& x, const Monomial& y) {
    const unsigned p = a.p();
    Monomial prod;
    prod.exponents.resize(a.size());
    long long transpositions = 0;
    int odd_tail = 0;  // odd factors of x with index > current
    // Count once: for each odd factor of y at index g, it crosses the odd
    // factors of x at indices > g when the concatenation is sorted.
    for (std::size_t g = a.size(); g-- > 0;) {
        if (y.exp(g) != 0 && odd_degree(a.gen(g))) transpositions += odd_tail * y.exp(g);
        if (x.exp(g) != 0 && odd_degree(a.gen(g))) odd_tail += x.exp(g);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& g = a.gen(i);
        int e = x.exp(i) + y.exp(i);
        if (g.kind == GenKind::Exterior && e > 1) return Element::zero(p);
        if (g.truncation > 0 && e >= g.truncation) return Element::zero(p);
        prod.exponents[i] = e;
    }
    long long sign = (transpositions % 2 == 0) ? 1 : -1;
    return Element(p, prod, static_cast<unsigned>(((sign % p) + p) % p));
}

Element multiply(const AlgebraPresentation& a, const Element& x, const Element& y) {
    Element out = Element::zero(a.p());
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            Element t = multiply(a, mx, my);
            out += t.scaled(1ll * cx * cy);
        }
    return out;
}

bool graded_lex_less(const AlgebraPresentation& a, const Monomial& x, const Monomial& y) {
    int dx = monomial_bidegree(a, x).degree;
    int dy = monomial_bidegree(a, y).degree;
    if (dx != dy) return dx < dy;
    return x.exponents < y.exponents;
}

std::string monomial_label(const AlgebraPresentation& a, const Monomial& m) {
    std::string out;
    std::vector<bool> done(a.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (done[i] || m.exp(i) == 0) continue;
        const auto& g = a.gen(i);
        if (g.family.empty()) {
            out += g.name;
            if (m.exp(i) != 1) out += "^" + std::to_string(m.exp(i));
            done[i] = true;
        } else {
            long long total = 0;
            for (std::size_t j = i; j < a.size(); ++j) {
                if (a.gen(j).family == g.family) {
                    total += 1ll * m.exp(j) * a.gen(j).family_exponent;
                    done[j] = true;
                }
            }
            if (total != 0) {
                out += g.family;
                if (total != 1) out += "^" + std::to_string(total);
            }
        }
    }
    return out.empty() ? "1" : out;
}

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct Range {
    long long lo, hi;
    bool bounded() const { return lo > -kInf && hi < kInf; }
};

long long term_min(const Range& r, int coef) {
    if (coef == 0) return 0;
    long long v = coef > 0 ? r.lo : r.hi;
    if (v <= -kInf || v >= kInf) return -kInf;
    return v * coef;
}

long long term_max(const Range& r, int coef) {
    if (coef == 0) return 0;
    long long v = coef > 0 ? r.hi : r.lo;
    if (v <= -kInf || v >= kInf) return kInf;
    return v * coef;
}

// Tighten r_i from  lo <= sum_j coef_j e_j <= hi  given the other ranges.
bool tighten(std::vector<Range>& ranges, const std::vector<int>& coef, long long lo, long long hi) {
    bool changed = false;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (coef[i] == 0) continue;
        long long rest_min = 0, rest_max = 0;
        bool ok = true;
        for (std::size_t j = 0; j < ranges.size() && ok; ++j) {
            if (j == i) continue;
            long long mn = term_min(ranges[j], coef[j]);
            long long mx = term_max(ranges[j], coef[j]);
            if (mn <= -kInf || mx >= kInf) ok = false;
            rest_min += mn;
            rest_max += mx;
        }
        if (!ok) continue;
        long long a = lo - rest_max, b = hi - rest_min;  // bounds on coef_i * e_i
        long long elo, ehi;
        if (coef[i] > 0) {
            elo = a >= 0 ? (a + coef[i] - 1) / coef[i] : -((-a) / coef[i]);
            ehi = b >= 0 ? b / coef[i] : -((-b + coef[i] - 1) / coef[i]);
        } else {
            int c = -coef[i];
            // c*e in [-b, -a]
            long long a2 = -b, b2 = -a;
            elo = a2 >= 0 ? (a2 + c - 1) / c : -((-a2) / c);
            ehi = b2 >= 0 ? b2 / c : -((-b2 + c - 1) / c);
        }
        if (elo > ranges[i].lo) { ranges[i].lo = elo; changed = true; }
        if (ehi < ranges[i].hi) { ranges[i].hi = ehi; changed = true; }
    }
    return changed;
}

}  // namespace

std::vector<Monomial> basis_in_window(const AlgebraPresentation& a, const WindowSpec& w) {
    const std::size_t n = a.size();
    std::vector<Range> ranges(n);
    std::vector<int> degs(n), wts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = a.gen(i);
        degs[i] = g.degree;
        wts[i] = g.adams_weight;
        switch (g.kind) {
            case GenKind::Exterior: ranges[i] = {0, 1}; break;
            case GenKind::Polynomial: ranges[i] = {0, kInf}; break;
            case GenKind::Laurent: ranges[i] = {-kInf, kInf}; break;
        }
        if (g.truncation > 0) ranges[i].hi = std::min<long long>(ranges[i].hi, g.truncation - 1);
        auto it = w.exp_bounds.find(g.name);
        if (it != w.exp_bounds.end()) {
            ranges[i].lo = std::max<long long>(ranges[i].lo, it->second.first);
            ranges[i].hi = std::min<long long>(ranges[i].hi, it->second.second);
        }
    }

    for (int round = 0; round < 256; ++round) {
        bool changed = tighten(ranges, degs, w.deg_lo, w.deg_hi);
        if (w.wt_lo && w.wt_hi)
            changed |= tighten(ranges, wts, *w.wt_lo, *w.wt_hi);
        if (!changed) break;
        for (auto& r : ranges)
            if (r.lo > r.hi) return {};  // empty window
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!ranges[i].bounded())
            throw Error(errc::infinite_window,
                        "exponent of generator '" + a.gen(i).name +
                            "' is unbounded in the requested window");

    // DFS with partial-sum pruning against the residual degree range.
    std::vector<long long> rest_min(n + 1, 0), rest_max(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        rest_min[i] = rest_min[i + 1] + term_min(ranges[i], degs[i]);
        rest_max[i] = rest_max[i + 1] + term_max(ranges[i], degs[i]);
    }
    std::vector<Monomial> out;
    Monomial cur;
    cur.exponents.assign(n, 0);
    auto dfs = [&](auto&& self, std::size_t i, long long deg, long long wt) -> void {
        if (deg + rest_max[i] < w.deg_lo || deg + rest_min[i] > w.deg_hi) return;
        if (i == n) {
            if (deg < w.deg_lo || deg > w.deg_hi) return;
            if (w.wt_lo && wt < *w.wt_lo) return;
            if (w.wt_hi && wt > *w.wt_hi) return;
            out.push_back(cur);
            return;
        }
        for (long long e = ranges[i].lo; e <= ranges[i].hi; ++e) {
            cur.exponents[i] = static_cast<int>(e);
            self(self, i + 1, deg + e * degs[i], wt + e * wts[i]);
        }
        cur.exponents[i] = 0;
    };
    dfs(dfs, 0, 0, 0);
    std::sort(out.begin(), out.end(), [&](const Monomial& x, const Monomial& y) {
        return graded_lex_less(a, x, y);
    });
    return out;
}

}  // namespace synto::alg
