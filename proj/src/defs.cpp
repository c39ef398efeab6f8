#include "synto/defs.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace synto::defs {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(errc::parse_error, what); }

const json& field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) bad(ctx + ": missing field '" + key + "'");
    return *it;
}

int int_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = field(j, key, ctx);
    if (!v.is_number_integer()) bad(ctx + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

int int_or(const json& j, const char* key, int dflt) {
    auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (!it->is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return it->get<int>();
}

std::string str_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = field(j, key, ctx);
    if (!v.is_string()) bad(ctx + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

alg::GenKind kind_of(const std::string& s, const std::string& ctx) {
    if (s == "exterior") return alg::GenKind::Exterior;
    if (s == "polynomial") return alg::GenKind::Polynomial;
    if (s == "laurent") return alg::GenKind::Laurent;
    bad(ctx + ": kind must be exterior, polynomial or laurent (got '" + s + "')");
}

}  // namespace

Definition load(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) bad("definition is not valid JSON");
    if (!j.is_object()) bad("definition must be a JSON object");

    int p = int_field(j, "p", "definition");
    if (p < 2 || !fp::is_prime(static_cast<unsigned>(p))) bad("'p' must be a prime");

    const json& js = field(j, "shift", "definition");
    eng::Shift shift;
    shift.d_degree = int_field(js, "degree", "shift");
    shift.d_weight = int_field(js, "weight", "shift");
    shift.weight_times_page = js.value("weight_times_page", false);
    shift.filtration_is_page = js.value("filtration_is_page", true);

    const json& jg = field(j, "generators", "definition");
    if (!jg.is_array() || jg.empty()) bad("'generators' must be a non-empty array");
    std::vector<alg::GeneratorSpec> gens;
    for (const auto& g : jg) {
        std::string ctx = "generator " + std::to_string(gens.size());
        alg::GeneratorSpec spec;
        spec.name = str_field(g, "name", ctx);
        spec.kind = kind_of(str_field(g, "kind", ctx), ctx + " '" + spec.name + "'");
        spec.degree = int_field(g, "degree", ctx);
        spec.adams_weight = int_field(g, "adams_weight", ctx);
        spec.truncation = int_or(g, "truncation", 0);
        spec.family = g.value("family", std::string());
        spec.family_exponent = int_or(g, "family_exponent", 1);
        gens.push_back(std::move(spec));
    }
    alg::AlgebraPresentation algebra(static_cast<unsigned>(p), gens);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (algebra.index_of(gens[i].name) != static_cast<int>(i))
            bad("duplicate generator name '" + gens[i].name + "'");

    auto monomial_of = [&](const json& exps, const std::string& ctx) {
        alg::Monomial m(std::vector<int>(algebra.size(), 0));
        if (!exps.is_object()) bad(ctx + ": 'exponents' must be an object");
        for (const auto& [name, e] : exps.items()) {
            int idx = algebra.index_of(name);
            if (idx < 0) bad(ctx + ": unknown generator '" + name + "'");
            if (!e.is_number_integer()) bad(ctx + ": exponent of '" + name + "' must be an integer");
            m.exponents[static_cast<std::size_t>(idx)] = e.get<int>();
        }
        if (!alg::monomial_valid(algebra, m)) bad(ctx + ": exponents violate the generator kinds");
        return m;
    };

    Definition out{eng::SpectralSequence(algebra, shift, int_or(j, "initial_page", 1)), {}};

    if (auto it = j.find("filtration_gen"); it != j.end()) {
        if (!it->is_string()) bad("'filtration_gen' must be a generator name");
        int idx = algebra.index_of(it->get<std::string>());
        if (idx < 0) bad("unknown filtration generator '" + it->get<std::string>() + "'");
        out.sequence.filtration_gen = static_cast<std::size_t>(idx);
    }

    const json& jr = field(j, "rules", "definition");
    if (!jr.is_array()) bad("'rules' must be an array");
    std::size_t rule_idx = 0;
    for (const auto& r : jr) {
        std::string ctx = "rule " + std::to_string(rule_idx++);
        eng::Rule rule;
        rule.page = int_field(r, "page", ctx);
        std::string gname = str_field(r, "gen", ctx);
        int idx = algebra.index_of(gname);
        if (idx < 0) bad(ctx + ": unknown generator '" + gname + "'");
        rule.gen = static_cast<std::size_t>(idx);
        rule.step = int_field(r, "step", ctx);
        const json& img = field(r, "image", ctx);
        if (!img.is_array()) bad(ctx + ": 'image' must be an array of terms");
        alg::Element e = alg::Element::zero(static_cast<unsigned>(p));
        for (const auto& t : img)
            e.add_term(monomial_of(field(t, "exponents", ctx), ctx),
                       int_field(t, "coeff", ctx));
        rule.image = std::move(e);
        out.sequence.add_rule(std::move(rule));  // bidegree/page validation
    }

    if (auto it = j.find("window"); it != j.end()) {
        const json& jw = *it;
        alg::WindowSpec w;
        w.deg_lo = int_field(jw, "deg_lo", "window");
        w.deg_hi = int_field(jw, "deg_hi", "window");
        if (jw.contains("wt_lo")) w.wt_lo = int_field(jw, "wt_lo", "window");
        if (jw.contains("wt_hi")) w.wt_hi = int_field(jw, "wt_hi", "window");
        if (auto eb = jw.find("exp_bounds"); eb != jw.end()) {
            if (!eb->is_object()) bad("window: 'exp_bounds' must be an object");
            for (const auto& [name, pairj] : eb->items()) {
                if (algebra.index_of(name) < 0) bad("window: unknown generator '" + name + "'");
                if (!pairj.is_array() || pairj.size() != 2)
                    bad("window: exp_bounds of '" + name + "' must be [lo, hi]");
                w.exp_bounds[name] = {pairj[0].get<int>(), pairj[1].get<int>()};
            }
        }
        out.window = w;
    }
    return out;
}

Definition load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error(errc::config_error, "cannot open definition file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return load(os.str());
}

}  // namespace synto::defs
