#include "io.hpp"

#include <regex>

#include "displaylab/errors.hpp"

namespace dlab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::ParseError, what); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

json fe_to_json(const Fq& F, fe a) {
    json out = json::array();
    for (auto c : F.coeffs(a)) out.push_back(c);
    return out;
}

fe fe_from_json(const Fq& F, const json& j) {
    std::vector<std::uint32_t> c;
    if (j.is_number_integer()) {
        c.push_back(static_cast<std::uint32_t>(j.get<std::int64_t>()));
    } else if (j.is_array()) {
        for (const auto& x : j) c.push_back(x.get<std::uint32_t>());
    } else {
        bad("field element must be an integer or a coefficient list");
    }
    if (static_cast<int>(c.size()) > F.e()) bad("field element has too many coefficients");
    for (auto x : c)
        if (x >= F.p()) bad("coefficient out of range [0,p)");
    c.resize(F.e(), 0);
    return F.from_coeffs(c);
}

// coefficients of a polynomial over F_q: plain integers over a prime field
json poly_to_json(const Fq& F, const upoly::P& a) {
    json out = json::array();
    for (fe c : a) {
        if (F.e() == 1) out.push_back(c);
        else out.push_back(fe_to_json(F, c));
    }
    return out;
}

upoly::P poly_from_json(const Fq& F, const json& j) {
    if (!j.is_array()) bad("polynomial must be a coefficient list");
    upoly::P a;
    for (const auto& c : j) a.push_back(fe_from_json(F, c));
    upoly::trim(a);
    return a;
}

std::vector<std::uint32_t> u32_list(const json& j) {
    std::vector<std::uint32_t> v;
    for (const auto& x : j) v.push_back(x.get<std::uint32_t>());
    return v;
}

std::vector<int> int_list(const json& j) {
    if (!j.is_array()) bad("expected a list of integers");
    std::vector<int> v;
    for (const auto& x : j) v.push_back(x.get<int>());
    return v;
}

}  // namespace

const BaseRing* parse_ring(const std::string& s) {
    static const std::regex re(R"(F_?(\d+)(\^(\d+))?(\[t\]|\[eps\])?)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) bad("cannot parse ring '" + s + "' (expected e.g. F_3, F_3^2, F_3[t], F_3[eps])");
    auto p = static_cast<std::uint32_t>(std::stoul(m[1]));
    int e = m[3].matched ? std::stoi(m[3]) : 1;
    // F_9 means F_3^2
    for (std::uint32_t q = 2; q * q <= p; ++q) {
        if (p % q) continue;
        int k = 0;
        std::uint32_t r = p;
        while (r % q == 0) r /= q, ++k;
        if (r != 1) bad("'" + s + "': field size must be a prime power");
        p = q;
        e *= k;
        break;
    }
    const BaseRing* F = BaseRing::finite_field(p, e);
    if (!m[4].matched) return F;
    return m[4] == "[t]" ? BaseRing::poly(F) : BaseRing::dual(F);
}

json ring_to_json(const BaseRing* R) {
    json j;
    j["p"] = R->p();
    switch (R->kind()) {
        case BaseRing::Kind::FiniteField: j["variant"] = "finite_field"; break;
        case BaseRing::Kind::Poly: j["variant"] = "poly"; break;
        case BaseRing::Kind::LocalizedPoly: j["variant"] = "localized"; break;
        case BaseRing::Kind::DualNumbers: j["variant"] = "dual"; break;
    }
    j["e"] = R->e();
    if (R->e() > 1) j["modulus"] = R->fq().modulus();
    if (R->kind() == BaseRing::Kind::LocalizedPoly) j["h"] = poly_to_json(R->fq(), R->h());
    return j;
}

const BaseRing* ring_from_json(const json& j) {
    const auto p = need(j, "p").get<std::uint32_t>();
    const std::string variant = j.value("variant", "finite_field");
    const int e = j.value("e", 1);
    const BaseRing* F = j.contains("modulus") ? BaseRing::finite_field(p, u32_list(j.at("modulus")))
                                              : BaseRing::finite_field(p, e);
    if (F->e() != e) bad("modulus degree disagrees with e");
    if (variant == "finite_field") return F;
    if (variant == "poly") return BaseRing::poly(F);
    if (variant == "dual") return BaseRing::dual(F);
    if (variant == "localized") return BaseRing::localized(F, poly_from_json(F->fq(), need(j, "h")));
    bad("unknown ring variant '" + variant + "'");
}

json elem_to_json(const BaseRing* R, const Elem& a) {
    const Fq& F = R->fq();
    switch (R->kind()) {
        case BaseRing::Kind::FiniteField: return fe_to_json(F, a.c[0]);
        case BaseRing::Kind::Poly: return poly_to_json(F, upoly::P(a.c.begin(), a.c.end()));
        case BaseRing::Kind::LocalizedPoly:
            return json{{"num", poly_to_json(F, upoly::P(a.c.begin(), a.c.end()))}, {"k", a.k}};
        case BaseRing::Kind::DualNumbers: {
            if (F.e() == 1) return json::array({a.c[0], a.c[1]});
            return json::array({fe_to_json(F, a.c[0]), fe_to_json(F, a.c[1])});
        }
    }
    return {};
}

Elem elem_from_json(const BaseRing* R, const json& j) {
    const Fq& F = R->fq();
    switch (R->kind()) {
        case BaseRing::Kind::FiniteField: return R->from_fe(fe_from_json(F, j));
        case BaseRing::Kind::Poly: return R->make_fraction(poly_from_json(F, j), 0);
        case BaseRing::Kind::LocalizedPoly:
            return R->make_fraction(poly_from_json(F, need(j, "num")), j.value("k", 0));
        case BaseRing::Kind::DualNumbers:
            if (!j.is_array() || j.size() != 2) bad("dual number must be [a, b]");
            return R->make_dual(fe_from_json(F, j[0]), fe_from_json(F, j[1]));
    }
    bad("unsupported ring");
}

json witt_body(const WittVector& x) {
    json out = json::array();
    for (int i = 0; i < x.length(); ++i) out.push_back(elem_to_json(x.ring(), x.component(i)));
    return out;
}

WittVector witt_from_body(const BaseRing* R, int n, const json& j) {
    if (!j.is_array()) bad("Witt vector must be a list of components");
    if (static_cast<int>(j.size()) != n) bad("Witt vector has " + std::to_string(j.size()) + " components, expected " + std::to_string(n));
    std::vector<Elem> c;
    for (const auto& x : j) c.push_back(elem_from_json(R, x));
    return WittVector(R, c);
}

json witt_to_json(const WittVector& x) {
    return json{{"ring", ring_to_json(x.ring())}, {"n", x.length()}, {"x", witt_body(x)}};
}

WittVector witt_from_json(const json& j) {
    const BaseRing* R = ring_from_json(need(j, "ring"));
    return witt_from_body(R, need(j, "n").get<int>(), need(j, "x"));
}

json mat_body(const WMat& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < A.cols(); ++k) row.push_back(witt_body(A.at(i, k)));
        rows.push_back(row);
    }
    return rows;
}

WMat mat_from_body(const BaseRing* R, int n, const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix must be a nonempty list of rows");
    WMat A(R, n, static_cast<int>(j.size()), static_cast<int>(j[0].size()));
    for (int i = 0; i < A.rows(); ++i) {
        if (static_cast<int>(j[i].size()) != A.cols()) bad("ragged matrix");
        for (int k = 0; k < A.cols(); ++k) A.at(i, k) = witt_from_body(R, n, j[i][k]);
    }
    return A;
}

json shape_to_json(const Shape& s) {
    json j;
    switch (s.kind) {
        case Shape::Kind::Linear: j["kind"] = "linear"; break;
        case Shape::Kind::Graded: j["kind"] = "graded"; break;
        case Shape::Kind::Unitary: j["kind"] = "unitary"; break;
    }
    j["h"] = s.h;
    std::vector<int> d;
    for (int i = 0; i < s.half(); ++i) d.push_back(s.d(i));
    j["d"] = d;
    j["weights"] = s.weights;
    return j;
}

Shape shape_from_json(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    const int h = need(j, "h").get<int>();
    if (kind == "unitary") return Shape::unitary(h, int_list(need(j, "d")));
    Shape s;
    if (j.contains("weights")) {
        s = Shape::from_weights(j.at("weights").get<std::vector<std::vector<int>>>());
        if (s.h != h) bad("weights disagree with h");
    } else if (kind == "linear") {
        const auto d = int_list(need(j, "d"));
        if (d.size() != 1) bad("linear shape has one slot");
        s = Shape::linear(h, d[0]);
    } else {
        s = Shape::graded(h, int_list(need(j, "d")));
    }
    if (kind == "graded") s.kind = Shape::Kind::Graded;
    else if (kind == "linear" && s.slots() != 1) bad("linear shape has one slot");
    else if (kind != "linear" && kind != "graded") bad("unknown shape kind '" + kind + "'");
    return s;
}

json display_to_json(const Display& D) {
    json j;
    j["ring"] = ring_to_json(D.ring());
    j["shape"] = shape_to_json(D.shape);
    j["level"] = D.level();
    if (D.central) j["central"] = D.central;
    json U = json::array();
    for (const auto& M : D.U) U.push_back(mat_body(M));
    j["U"] = U;
    if (!D.multiplier.empty()) {
        json c = json::array();
        for (const auto& x : D.multiplier) c.push_back(witt_body(x));
        j["multiplier"] = c;
    }
    return j;
}

Display display_from_json(const json& j) {
    const BaseRing* R = ring_from_json(need(j, "ring"));
    const Shape s = shape_from_json(need(j, "shape"));
    const int n = need(j, "level").get<int>();
    const auto& Uj = need(j, "U");
    if (!Uj.is_array() || static_cast<int>(Uj.size()) != s.slots()) bad("need one matrix per slot");
    Display D;
    D.shape = s;
    for (const auto& M : Uj) D.U.push_back(mat_from_body(R, n, M));
    D.central = j.value("central", 0);
    if (j.contains("multiplier")) {
        for (const auto& x : j.at("multiplier")) D.multiplier.push_back(witt_from_body(R, n, x));
    } else if (s.kind == Shape::Kind::Unitary) {
        D.multiplier.assign(s.slots(), WittVector::one(R, n));
    }
    validate(D);
    return D;
}

json parabolic_to_json(const Parabolic& k) {
    json j;
    j["ring"] = ring_to_json(k.ring());
    j["shape"] = shape_to_json(k.shape);
    j["level"] = k.level();
    json blocks = json::array();
    for (int s = 0; s < k.shape.slots(); ++s) blocks.push_back({k.shape.d(s), k.shape.h - k.shape.d(s)});
    j["blocks"] = blocks;
    json K = json::array();
    for (const auto& M : k.k) K.push_back(mat_body(M));
    j["k"] = K;
    if (!k.m.empty()) {
        json m = json::array();
        for (const auto& x : k.m) m.push_back(witt_body(x));
        j["m"] = m;
    }
    return j;
}

Parabolic parabolic_from_json(const json& j) {
    const BaseRing* R = ring_from_json(need(j, "ring"));
    const Shape s = shape_from_json(need(j, "shape"));
    const int n1 = need(j, "level").get<int>();
    Parabolic k;
    k.shape = s;
    for (const auto& M : need(j, "k")) k.k.push_back(mat_from_body(R, n1, M));
    if (static_cast<int>(k.k.size()) != s.slots()) bad("need one matrix per slot");
    if (j.contains("m")) {
        for (const auto& x : j.at("m")) k.m.push_back(witt_from_body(R, n1, x));
    } else if (s.kind == Shape::Kind::Unitary) {
        k.m.assign(s.slots(), WittVector::one(R, n1));
    }
    validate(k);
    return k;
}

json module_to_json(const GradedFrobModule& M) {
    json j;
    j["ring"] = ring_to_json(M.ring());
    j["level"] = M.level();
    j["r"] = M.r;
    j["ranks"] = M.ranks;
    j["w"] = M.w;
    json F = json::array(), V = json::array();
    for (const auto& x : M.F) F.push_back(mat_body(x));
    for (const auto& x : M.V) V.push_back(mat_body(x));
    j["F"] = F;
    j["V"] = V;
    return j;
}

GradedFrobModule module_from_json(const json& j) {
    const BaseRing* R = ring_from_json(need(j, "ring"));
    const int n = need(j, "level").get<int>();
    GradedFrobModule M;
    M.r = need(j, "r").get<int>();
    M.ranks = int_list(need(j, "ranks"));
    M.w = int_list(need(j, "w"));
    for (const auto& x : need(j, "F")) M.F.push_back(mat_from_body(R, n, x));
    for (const auto& x : need(j, "V")) M.V.push_back(mat_from_body(R, n, x));
    validate(M);
    return M;
}

json gauge_to_json(const Multidegree& d, const Gauge& g, const WeightProfile& P) {
    return json{{"r", d.r}, {"d", d.base}, {"j", g.j}, {"unitary", g.unitary}, {"a", P.a}, {"b", P.b}};
}

FlexSpec flexspec_from_json(const json& j) {
    FlexSpec s;
    const int r = need(j, "r").get<int>();
    const bool unitary = j.value("unitary", false);
    s.d = Multidegree{r, int_list(need(j, "d"))};
    s.j = Gauge{r, unitary, int_list(need(j, "j"))};
    s.P.unitary = unitary;
    s.P.a = int_list(need(j, "a"));
    s.P.b = int_list(need(j, "b"));
    const std::string rep = j.value("rep", "std");
    if (rep == "adjoint") s.rho = RepSpec::adjoint();
    else if (rep != "std") bad("rep must be 'std' or 'adjoint'");
    return s;
}

json theta_to_json(const ThetaGaugeInstance& I) {
    return json{{"theta", I.theta}, {"star", I.star}, {"dplus", I.dplus}, {"j", I.j},
                {"a", I.a},         {"b", I.b},       {"Pi", I.Pi}};
}

ThetaGaugeInstance theta_from_json(const json& j) {
    ThetaGaugeInstance I;
    I.theta = int_list(need(j, "theta"));
    I.star = int_list(need(j, "star"));
    I.dplus = int_list(need(j, "dplus"));
    auto lists = [&](const char* key) {
        std::vector<std::vector<int>> v;
        for (const auto& x : need(j, key)) v.push_back(int_list(x));
        return v;
    };
    I.j = lists("j");
    I.a = lists("a");
    I.b = lists("b");
    I.Pi = j.contains("Pi") ? lists("Pi") : std::vector<std::vector<int>>{};
    return I;
}

json newton_to_json(const NewtonPoint& nu) {
    json out = json::array();
    for (const auto& x : nu.slopes) out.push_back(to_string(x));
    return out;
}

std::string point_label(const BaseRing* F, fe x) { return fe_to_json(F->fq(), x).dump(); }

}  // namespace dlab::io
