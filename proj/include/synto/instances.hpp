#ifndef SYNTO_INSTANCES_HPP
#define SYNTO_INSTANCES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "synto/engine.hpp"

namespace synto::inst {

struct ClassInfo {
    std::string label;
    int degree = 0;
    int weight = 0;      // Adams weight
    int filtration = 0;  // t-exponent where meaningful
    std::string piece;   // Nygaard piece on the TC^- page: A00 | mu | xi | t

    bool operator==(const ClassInfo&) const = default;
};

struct BigradedBasis {
    unsigned p = 2;
    int n = 0;
    alg::WindowSpec window;  // the reporting window the classes live in
    std::vector<ClassInfo> classes;  // sorted by (degree, weight, label)

    std::vector<std::string> labels() const;
    std::size_t count_at(int degree, int weight) const;
};

// THH page: Lambda(l_1..l_{n+1}) x F_p[mu^{p^{n+1}}].
BigradedBasis thh_bpn_page(unsigned p, int n, const alg::WindowSpec& window);

// The t-Bockstein spectral sequence underlying the periodic (t invertible)
// and Nygaard-filtered (t polynomial) pages, exposed for property tests and
// cross-checks against user-supplied definitions.
eng::SpectralSequence t_bockstein_sequence(unsigned p, int n, bool periodic);

struct HochschildMay {
    BigradedBasis einf;  // labels in l/mu form, matching thh_bpn_page
    // (l_{i+1} label, detecting leading monomial sv_i mu^{(p-1)p^i})
    std::vector<std::pair<std::string, std::string>> detections;
    int collapse_page = 0;
    std::vector<eng::LogEntry> log;
};

// Multiplicative May-type spectral sequence Lambda(sv_0..sv_n) x F_p[mu]
// with d(mu^{p^i}) = sv_i on page 2p^i - 2, run to E-infinity.
HochschildMay hochschild_may(unsigned p, int n, const alg::WindowSpec& window);

struct HodgeTate {
    BigradedBasis top_left;      // Lambda(l) x F_p[mu^P]<eps>
    BigradedBasis top_right;     // mu^P inverted
    BigradedBasis bottom_left;   // F_p[mu]<eps_0..eps_{n+1}>
    BigradedBasis bottom_right;  // mu inverted
    // source label -> target label ("0" when the class dies)
    std::vector<std::pair<std::string, std::string>> top_map;
    std::vector<std::pair<std::string, std::string>> left_map;
    bool commutes = false;
};

HodgeTate hodge_tate_square(unsigned p, int n, const alg::WindowSpec& window);

struct PageResult {
    BigradedBasis basis;
    int collapse_page = 0;
    bool collapse_certified = false;  // empty no-room scan after the last rule
    std::vector<eng::LogEntry> log;
};

// Periodic t-Bockstein (t invertible); E-infinity = Lambda(l)[t^{+-p^{n+1}}].
PageResult tp_page(unsigned p, int n, const alg::WindowSpec& window);

struct NygaardDecomposition {
    std::vector<ClassInfo> a00, mu_piece, xi_piece, t_piece;
};

struct TcMinus {
    PageResult page;  // classes carry their piece tag
    NygaardDecomposition pieces;
};

// Same spectral sequence with t polynomial (Nygaard-filtered variant).
TcMinus tc_minus_page(unsigned p, int n, const alg::WindowSpec& window);

struct CanPhi {
    BigradedBasis tcminus, tp;
    std::map<alg::Bidegree, fp::Matrix> can, phi;  // rows: tp, cols: tcminus
    std::map<alg::Bidegree, std::vector<std::string>> source_labels, target_labels;
};

CanPhi can_phi_matrices(unsigned p, int n, const alg::WindowSpec& window);

struct Syntomic {
    BigradedBasis basis;  // kernel classes plus the boundary-shifted cokernel
    std::vector<std::string> kernel_labels;    // = A00 plus the Xi-piece
    std::vector<std::string> cokernel_labels;  // = A00
};

Syntomic syntomic(unsigned p, int n, const alg::WindowSpec& window);
Syntomic syntomic(unsigned p, int n);  // window auto-covers the degree range

std::size_t syntomic_dimension(unsigned p, int n);
std::pair<int, int> degree_range(unsigned p, int n);

struct GapCheck {
    bool pass = false;
    struct Witness {
        std::string source, target;
        int k = 0;  // v-power crossed by the would-be differential
    };
    std::vector<Witness> witnesses;
};

// v_{n+1}-Bockstein collapse certificate on the closed-form generators.
GapCheck vn1_bockstein_gap_check(unsigned p, int n);

struct NoRoom {
    bool pass = false;
    struct Witness {
        std::string source, target;
    };
    std::vector<Witness> witnesses;
};

// Motivic collapse certificate for n=2 extended v_3-periodically; p >= 5.
NoRoom motivic_no_room(unsigned p);

using DimTable = std::map<int, std::size_t>;

struct TcBp2 {
    DimTable table;  // graded dimensions over the window degrees
    int v3_degree = 0;
    NoRoom no_room;
    std::vector<ClassInfo> generators;  // the free-module generators
};

TcBp2 tc_bp2(unsigned p, const alg::WindowSpec& window);

struct KBp2 {
    DimTable table;
    DimTable v3_inverted;
};

KBp2 k_bp2(unsigned p, const alg::WindowSpec& window);

struct FpComparison {
    bool pass = false;
    std::vector<std::string> image_labels;  // = F_p[mu^P]<eps> in the window
};

FpComparison fp_comparison_check(unsigned p, int n, const alg::WindowSpec& window);

}  // namespace synto::inst

#endif
