#ifndef SYNTO_ENGINE_HPP
#define SYNTO_ENGINE_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "synto/algebra.hpp"
#include "synto/fp.hpp"

namespace synto::eng {

// Differential bidegree shift. Bockstein convention: (n,s,f) -> (n-1,s+1,f+r);
// motivic convention: (n,s) -> (n-1,s+r).
struct Shift {
    int d_degree = -1;
    int d_weight = 1;
    bool weight_times_page = false;  // motivic: weight jump is r itself
    bool filtration_is_page = true;  // Bockstein: filtration jump is r

    alg::Bidegree delta(int r) const {
        return {d_degree, weight_times_page ? d_weight * r : d_weight};
    }
};

// One symbolic rule d(g^step) = image on page `page`, extended as a derivation
// across the base-p factorization g^e = prod_j (g^{p^j})^{e_j}: the matched
// factor is g^step with step = p^i, and the coefficient on a monomial with
// g-exponent e is the i-th base-p digit of e (taken in [0, p^i-1] for
// negative e, which is the unique Leibniz-compatible extension to Laurent
// exponents).
struct Rule {
    int page = 1;
    std::size_t gen = 0;
    long long step = 1;
    alg::Element image;
};

// A surviving class: ambient representative plus its graded-lex leading
// monomial, which names the class.
struct ClassRep {
    alg::Element rep;
    alg::Monomial lead;
};

struct Page {
    int r = 1;
    const alg::AlgebraPresentation* algebra = nullptr;
    alg::WindowSpec window;
    std::map<alg::Bidegree, std::vector<alg::Monomial>> ambient;
    std::map<alg::Monomial, std::size_t> ambient_pos;  // index inside its bidegree slot
    std::map<alg::Bidegree, std::vector<ClassRep>> classes;
    std::map<alg::Bidegree, std::vector<alg::Element>> boundaries;

    std::size_t total_dim() const;
};

// The page-r differential in class coordinates, plus the raw ambient images
// (kept so boundaries can accumulate across pages).
struct Differential {
    int page = 1;
    alg::Bidegree delta;
    std::map<alg::Bidegree, fp::Matrix> matrices;  // keyed by source bidegree
    std::map<alg::Bidegree, std::vector<alg::Element>> images;
    // Sources whose image left the window box; their whole column is zeroed.
    std::vector<alg::Monomial> dropped;
};

class SpectralSequence {
public:
    SpectralSequence(alg::AlgebraPresentation algebra, Shift shift, int initial_r = 1)
        : algebra_(std::move(algebra)), shift_(shift), initial_r_(initial_r) {}

    // Validates ascending unique pages and that the image bidegree equals
    // bidegree(g^step) + shift.delta(page); throws BIDEGREE_MISMATCH.
    void add_rule(Rule rule);

    const alg::AlgebraPresentation& algebra() const { return algebra_; }
    const Shift& shift() const { return shift_; }
    int initial_r() const { return initial_r_; }
    const std::vector<Rule>& rules() const { return rules_; }

    // Generator whose exponent is the Bockstein filtration index (e.g. t).
    std::optional<std::size_t> filtration_gen;

private:
    alg::AlgebraPresentation algebra_;
    Shift shift_;
    int initial_r_;
    std::vector<Rule> rules_;
};

struct LogEntry {
    int page = 0;
    alg::Bidegree source;
    std::size_t rank = 0;
};

struct NoRoomCandidate {
    int r = 0;
    alg::Bidegree source;
    int filtration = 0;
    alg::Bidegree target;
};

struct RunResult {
    Page einf;
    std::vector<LogEntry> log;      // nonzero ranks only, deterministic order
    int collapse_page = 1;          // 1 + last page carrying a nonzero rank
    std::vector<NoRoomCandidate> no_room;  // empty certifies collapse
    std::size_t dropped = 0;        // window-edge images discarded outside report
};

Page initial_page(const SpectralSequence& ss, const alg::WindowSpec& window);

// Signed Leibniz expansion of the page rule on every class; asserts d.d = 0
// in class coordinates. Images whose monomials leave the window box are
// dropped whole and recorded.
Differential leibniz_extend(const SpectralSequence& ss, const Rule& rule, const Page& page);

Page turn_page(const Page& page, const Differential& diff);
Page turn_page(const Page& page);  // zero differential: same basis, r+1

// Bidegree-only collapse scan: every (r, source, target) pair with classes on
// both sides under the shift, optionally restricted to a degree range.
// Filtration of a class is read off its leading monomial when filtration_gen
// is set and the shift jumps filtration by r.
std::vector<NoRoomCandidate> no_room_scan(
    const std::vector<std::pair<alg::Bidegree, int>>& classes, const Shift& shift, int r_lo,
    int r_hi);
std::vector<NoRoomCandidate> no_room_report(const Page& page, const Shift& shift, int r_lo,
                                            int r_hi,
                                            std::optional<std::size_t> filtration_gen = {},
                                            std::optional<std::pair<int, int>> deg_range = {});

// Runs every registered rule page, then certifies collapse by scanning
// [last rule page + 1, no_room_r_hi] (default: the filtration span of the
// report box). `report` is the sub-box whose classes the caller may trust;
// the window must exceed it by one degree per rule page on each side, and a
// dropped image rooted inside the report box raises WINDOW_TOO_SMALL.
RunResult run(const SpectralSequence& ss, const alg::WindowSpec& window,
              const alg::WindowSpec& report, int no_room_r_hi = -1);

}  // namespace synto::eng

#endif
