#ifndef SYNTO_ALGEBRA_HPP
#define SYNTO_ALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synto/error.hpp"

namespace synto::alg {

enum class GenKind { Exterior, Polynomial, Laurent };

struct Bidegree {
    int degree = 0;
    int weight = 0;
    auto operator<=>(const Bidegree&) const = default;
};

inline Bidegree operator+(Bidegree a, Bidegree b) {
    return {a.degree + b.degree, a.weight + b.weight};
}
inline Bidegree operator-(Bidegree a, Bidegree b) {
    return {a.degree - b.degree, a.weight - b.weight};
}

// One named generator of a bigraded-commutative F_p-algebra.
//
// family / family_exponent drive label printing only: a monomial exponent e
// on this generator prints as family^(e * family_exponent), and factors of
// the same family are merged. This lets mu^{p^j}-type generators print as
// plain mu-powers.
struct GeneratorSpec {
    std::string name;
    GenKind kind = GenKind::Polynomial;
    int degree = 0;
    int adams_weight = 0;
    int truncation = 0;  // 0 = none; otherwise exponent < truncation
    std::string family;  // empty = print by name
    int family_exponent = 1;

    Bidegree bidegree() const { return {degree, adams_weight}; }
};

class AlgebraPresentation {
public:
    AlgebraPresentation(unsigned p, std::vector<GeneratorSpec> gens);

    unsigned p() const { return p_; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const GeneratorSpec& gen(std::size_t i) const { return gens_[i]; }
    std::size_t size() const { return gens_.size(); }
    int index_of(const std::string& name) const;  // -1 if absent

private:
    unsigned p_;
    std::vector<GeneratorSpec> gens_;
};

// Exponent vector aligned with the algebra's generator list.
struct Monomial {
    std::vector<int> exponents;

    auto operator<=>(const Monomial&) const = default;
    int exp(std::size_t i) const { return i < exponents.size() ? exponents[i] : 0; }
    bool is_unit() const;
};

// F_p-linear combination of monomials; no zero coefficients stored.
class Element {
public:
    Element() = default;
    Element(unsigned p, const Monomial& m, unsigned coeff = 1);

    static Element zero(unsigned p) { Element e; e.p_ = p; return e; }

    unsigned p() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, unsigned>& terms() const { return terms_; }

    void add_term(const Monomial& m, long long coeff);
    Element& operator+=(const Element& o);
    Element scaled(long long c) const;

    bool operator==(const Element&) const = default;

private:
    unsigned p_ = 2;
    std::map<Monomial, unsigned> terms_;
};

Bidegree monomial_bidegree(const AlgebraPresentation& a, const Monomial& m);

// Valid monomial: exterior exponents in {0,1}, polynomial exponents >= 0,
// truncation bounds respected.
bool monomial_valid(const AlgebraPresentation& a, const Monomial& m);

// Graded-commutative product with Koszul sign; zero on exterior squares and
// truncation overflow.
Element multiply(const AlgebraPresentation& a, const Monomial& x, const Monomial& y);
Element multiply(const AlgebraPresentation& a, const Element& x, const Element& y);

// Canonical order: degree, then lexicographic exponent vector.
bool graded_lex_less(const AlgebraPresentation& a, const Monomial& x, const Monomial& y);

std::string monomial_label(const AlgebraPresentation& a, const Monomial& m);

struct WindowSpec {
    int deg_lo = 0;
    int deg_hi = 0;
    std::optional<int> wt_lo, wt_hi;
    // Extra per-generator exponent clamps (e.g. the filtration box on t).
    std::map<std::string, std::pair<int, int>> exp_bounds;
};

// All valid monomials with degree in [deg_lo, deg_hi] (and weight within the
// optional bounds), in graded-lex order. Throws INFINITE_WINDOW when the
// generator degrees cannot bound the enumeration.
std::vector<Monomial> basis_in_window(const AlgebraPresentation& a, const WindowSpec& w);

}  // namespace synto::alg

#endif
