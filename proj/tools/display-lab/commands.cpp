#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "displaylab/errors.hpp"
#include "displaylab/wittpoly.hpp"
#include "io.hpp"

namespace dlab::cli {

using io::json;

namespace {

std::string header(const JobConfig& c) { return "# display-lab " + c.command + " seed=" + std::to_string(c.seed); }

json json_header(const JobConfig& c) {
    json j;
    j["command"] = c.command;
    j["seed"] = c.seed;
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        fail(Errc::ParseError, path + ": " + e.what());
    }
}

const std::string& input(const JobConfig& c, std::size_t i) {
    if (c.inputs.size() <= i) fail(Errc::ParseError, c.command + " needs " + std::to_string(i + 1) + " input file(s)");
    return c.inputs[i];
}

// a file holding one display, a list of displays, or {"displays": [...]}
std::vector<Display> read_displays(const std::string& path) {
    const json j = read_json(path);
    const json& list = j.is_object() && j.contains("displays") ? j.at("displays") : j;
    std::vector<Display> out;
    if (list.is_array()) {
        for (const auto& x : list) out.push_back(io::display_from_json(x));
    } else {
        out.push_back(io::display_from_json(list));
    }
    return out;
}

void newton_guard(const Display& D) {
    if (D.level() > 8 || D.shape.h > 6) fail(Errc::LevelTooLarge, "newton refuses n > 8 or h > 6");
}

// "linear:2:1", "graded:2:1,0", "unitary:2:1,0"
Shape parse_shape(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ':');) parts.push_back(x);
    if (parts.size() != 3) fail(Errc::ParseError, "shape must look like linear:h:d or graded:h:d0,d1,...");
    const int h = std::stoi(parts[1]);
    std::vector<int> d;
    std::stringstream ds(parts[2]);
    for (std::string x; std::getline(ds, x, ',');) d.push_back(std::stoi(x));
    if (parts[0] == "linear" && d.size() == 1) return Shape::linear(h, d[0]);
    if (parts[0] == "graded") return Shape::graded(h, d);
    if (parts[0] == "unitary") return Shape::unitary(h, d);
    fail(Errc::ParseError, "unknown shape '" + s + "'");
}

// ---- prefix Witt expressions

struct Expr {
    std::string atom;  // empty for lists
    std::vector<Expr> items;
    int line = 0, col = 0;
};

class ExprParser {
public:
    ExprParser(const std::string& text, int line) : s_(text), line_(line) {}

    Expr parse() {
        Expr e = one();
        skip();
        if (i_ < s_.size()) error("trailing input");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(Errc::ParseError, "line " + std::to_string(line_) + ", column " + std::to_string(i_ + 1) + ": " + what);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    Expr one() {
        skip();
        if (i_ >= s_.size()) error("unexpected end of expression");
        Expr e;
        e.line = line_;
        e.col = static_cast<int>(i_) + 1;
        if (s_[i_] == ')') error("unexpected ')'");
        if (s_[i_] == '(') {
            ++i_;
            for (;;) {
                skip();
                if (i_ >= s_.size()) error("missing ')'");
                if (s_[i_] == ')') {
                    ++i_;
                    break;
                }
                e.items.push_back(one());
            }
            if (e.items.empty()) error("empty list");
            return e;
        }
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
            e.atom += s_[i_++];
        return e;
    }

    const std::string& s_;
    int line_;
    std::size_t i_ = 0;
};

struct ExprValue {
    bool is_ghost = false;
    WittVector x;
    std::vector<mpz_class> ghost;
};

[[noreturn]] void expr_error(const Expr& e, const std::string& what) {
    fail(Errc::ParseError, "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ": " + what);
}

std::int64_t integer(const Expr& e) {
    if (e.atom.empty()) expr_error(e, "expected an integer");
    try {
        std::size_t used = 0;
        const auto v = std::stoll(e.atom, &used);
        if (used != e.atom.size()) expr_error(e, "bad integer '" + e.atom + "'");
        return v;
    } catch (const std::logic_error&) {
        expr_error(e, "bad integer '" + e.atom + "'");
    }
}

WittVector eval_witt(const Expr& e, const BaseRing* R, int n);

ExprValue eval(const Expr& e, const BaseRing* R, int n) {
    if (!e.items.empty() && e.items[0].atom == "ghost") {
        if (e.items.size() != 2) expr_error(e, "ghost takes one argument");
        if (R->kind() != BaseRing::Kind::FiniteField || R->e() != 1) expr_error(e, "ghost needs a prime field");
        const WittVector x = eval_witt(e.items[1], R, n);
        std::vector<mpz_class> lift;
        for (int i = 0; i < x.length(); ++i) lift.emplace_back(static_cast<unsigned long>(x.component(i).c[0]));
        return {true, {}, ghost(lift, R->p())};
    }
    return {false, eval_witt(e, R, n), {}};
}

WittVector eval_witt(const Expr& e, const BaseRing* R, int n) {
    if (e.items.empty()) return WittVector::from_int(R, n, integer(e));
    const std::string& op = e.items[0].atom;
    const std::size_t argc = e.items.size() - 1;
    auto arg = [&](std::size_t i) { return eval_witt(e.items[i], R, n); };
    auto arity = [&](std::size_t k) {
        if (argc != k) expr_error(e, op + " takes " + std::to_string(k) + " argument(s)");
    };
    try {
        if (op == "teich") {
            arity(1);
            return WittVector::teich(R, n, R->from_int(integer(e.items[1])));
        }
        if (op == "add" || op == "mul" || op == "sub") {
            if (argc < 2) expr_error(e, op + " takes at least two arguments");
            WittVector acc = arg(1);
            for (std::size_t i = 2; i <= argc; ++i) {
                const WittVector b = arg(i);
                acc = op == "add" ? acc + b : op == "mul" ? acc * b : acc - b;
            }
            return acc;
        }
        if (op == "neg") return arity(1), -arg(1);
        if (op == "F") return arity(1), frobenius(arg(1));
        if (op == "V") return arity(1), verschiebung(arg(1));
        if (op == "Vinv") return arity(1), v_inverse(arg(1));
        if (op == "tau") return arity(1), tau(arg(1));
        if (op == "inv") return arity(1), witt_inverse(arg(1));
        if (op == "trunc") {
            arity(2);
            return truncate(arg(1), static_cast<int>(integer(e.items[2])));
        }
    } catch (const Error& err) {
        if (err.code() == Errc::ParseError) throw;
        expr_error(e, err.what());
    }
    expr_error(e, "unknown operation '" + op + "'");
}

// ---- classification helpers

struct Orbit {
    Display rep;
    std::size_t size = 0;
};

Orbit orbit_of(const Display& U, const std::vector<Parabolic>& G) {
    std::set<std::vector<std::vector<std::uint64_t>>> seen;
    Orbit o;
    bool first = true;
    for (const auto& k : G) {
        Display V = twist_conjugate(U, k);
        std::vector<std::vector<std::uint64_t>> key;
        for (const auto& M : V.U) {
            key.emplace_back();
            for (const auto& x : M.entries())
                for (int c = 0; c < x.length(); ++c) key.back().push_back(x.ring()->index(x.component(c)));
        }
        if (!seen.insert(std::move(key)).second) continue;
        if (first || lex_less(V, o.rep)) o.rep = V;
        first = false;
    }
    o.size = seen.size();
    return o;
}

void write_counterexample(const JobConfig& c, const Display& D, const NewtonPoint& nu, const NewtonPoint& ord) {
    const std::string path = (c.out.empty() ? std::string("display-lab") : c.out) + ".counterexample.json";
    std::ofstream f(path);
    json j = json_header(c);
    j["display"] = io::display_to_json(D);
    j["newton"] = io::newton_to_json(nu);
    j["ordinary"] = io::newton_to_json(ord);
    f << j.dump(2) << "\n";
}

}  // namespace

int cmd_witt(const JobConfig& c, std::ostream& os) {
    const BaseRing* R = io::parse_ring(c.ring);
    std::istringstream in(slurp(input(c, 0)));
    json results = json::array();
    int line = 0;
    for (std::string text; std::getline(in, text);) {
        ++line;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        const Expr e = ExprParser(text, line).parse();
        const ExprValue v = eval(e, R, c.level);
        json r;
        r["line"] = line;
        if (v.is_ghost) {
            json g = json::array();
            for (const auto& x : v.ghost) g.push_back(x.get_str());
            r["ghost"] = g;
        } else {
            r["n"] = v.x.length();
            r["x"] = io::witt_body(v.x);
        }
        results.push_back(r);
    }
    if (c.format == "csv") {
        os << header(c) << " ring=" << R->name() << "\nline;value\n";
        for (const auto& r : results) os << r["line"].get<int>() << ";" << (r.contains("x") ? r["x"] : r["ghost"]).dump() << "\n";
        return Ok;
    }
    json j = json_header(c);
    j["ring"] = io::ring_to_json(R);
    j["level"] = c.level;
    j["results"] = results;
    os << j.dump(2) << "\n";
    return Ok;
}

int cmd_classify(const JobConfig& c, std::ostream& os) {
    const auto U = read_displays(input(c, 0));
    json orbits = json::array();
    if (!U.empty()) {
        for (const auto& D : U)
            if (D.shape != U[0].shape || D.ring() != U[0].ring() || D.level() != U[0].level())
                fail(Errc::ShapeMismatch, "classify needs displays of one shape, ring and level");
        BruteForceOptions bf;
        bf.limit = c.limit;
        if (search_space_size(U[0].shape, U[0].ring(), U[0].level(), bf) > static_cast<long double>(c.limit))
            fail(Errc::SearchSpaceTooLarge, "search space exceeds --limit");
        const auto G = parabolic_group(U[0].shape, U[0].ring(), U[0].level() + 1, c.limit);
        struct Class {
            std::vector<std::size_t> members;
            Orbit orbit;
            std::size_t automorphisms = 0;
        };
        std::vector<Class> classes;
        for (std::size_t i = 0; i < U.size(); ++i) {
            bool placed = false;
            for (auto& cl : classes) {
                if (brute_force_isoms(U[i], U[cl.members[0]], bf).empty()) continue;
                cl.members.push_back(i);
                placed = true;
                break;
            }
            if (placed) continue;
            Class cl;
            cl.members = {i};
            cl.orbit = orbit_of(U[i], G);
            cl.automorphisms = brute_force_isoms(U[i], U[i], bf).size();
            if (cl.orbit.size * cl.automorphisms != G.size())
                throw std::logic_error("orbit-stabilizer count disagrees with the group order");
            classes.push_back(std::move(cl));
        }
        for (const auto& cl : classes) {
            json o;
            o["members"] = cl.members;
            o["orbit_size"] = cl.orbit.size;
            o["automorphisms"] = cl.automorphisms;
            o["representative"] = io::display_to_json(cl.orbit.rep);
            orbits.push_back(o);
        }
    }
    if (c.format == "csv") {
        os << header(c) << "\norbit;members;orbit_size;automorphisms\n";
        for (std::size_t i = 0; i < orbits.size(); ++i)
            os << i << ";" << orbits[i]["members"].dump() << ";" << orbits[i]["orbit_size"].get<std::size_t>() << ";"
               << orbits[i]["automorphisms"].get<std::size_t>() << "\n";
        return Ok;
    }
    json j = json_header(c);
    j["orbits"] = orbits;
    os << j.dump(2) << "\n";
    return Ok;
}

int cmd_newton(const JobConfig& c, std::ostream& os) {
    const auto U = read_displays(input(c, 0));
    json rows = json::array();
    int code = Ok;
    for (std::size_t i = 0; i < U.size(); ++i) {
        newton_guard(U[i]);
        const auto nu = newton_point(U[i]);
        const auto ord = ordinary_point(U[i].shape, U[i].central);
        const bool ok = dominance(nu, ord);
        if (!ok) {
            write_counterexample(c, U[i], nu, ord);
            code = Counterexample;
        }
        rows.push_back(json{{"index", i}, {"slopes", nu.str()}, {"ordinary", ord.str()}, {"mazur", ok}});
    }
    if (c.format == "csv") {
        os << header(c) << "\nindex;slopes;ordinary;mazur\n";
        for (const auto& r : rows)
            os << r["index"].get<std::size_t>() << ";" << r["slopes"].get<std::string>() << ";"
               << r["ordinary"].get<std::string>() << ";" << (r["mazur"].get<bool>() ? "true" : "false") << "\n";
        return code;
    }
    json j = json_header(c);
    j["points"] = rows;
    os << j.dump(2) << "\n";
    return code;
}

int cmd_mazur_scan(const JobConfig& c, std::ostream& os) {
    const BaseRing* R = io::parse_ring(c.ring);
    if (R->kind() != BaseRing::Kind::FiniteField) fail(Errc::NotFiniteField, "mazur-scan needs a finite field");
    const Shape s = parse_shape(c.shape);
    if (c.level > 8 || s.h > 6) fail(Errc::LevelTooLarge, "newton refuses n > 8 or h > 6");
    const int n = c.level, h = s.h;
    const auto ord = ordinary_point(s);
    std::map<std::vector<Rational>, std::uint64_t, std::greater<>> hist;
    std::uint64_t total = 0, violations = 0;
    auto visit = [&](const Display& D) {
        const auto nu = newton_point(D);
        ++total;
        ++hist[nu.slopes];
        if (!dominance(nu, ord)) {
            if (violations == 0) write_counterexample(c, D, nu, ord);
            ++violations;
        }
    };
    if (c.mode == "teich") {
        // every slot matrix with Teichmuller entries
        const std::uint64_t q = R->cardinality();
        long double count = 1;
        for (int i = 0; i < h * h * s.slots(); ++i) count *= static_cast<long double>(q);
        if (count > static_cast<long double>(c.limit)) fail(Errc::SearchSpaceTooLarge, "Teichmuller family exceeds --limit");
        std::vector<WMat> invertible;
        std::vector<std::uint64_t> v(h * h, 0);
        for (;;) {
            WMat A(R, n, h, h);
            for (int e = 0; e < h * h; ++e) A.at(e / h, e % h) = WittVector::teich(R, n, R->element(v[e]));
            if (is_invertible(A)) invertible.push_back(A);
            int t = h * h;
            while (t > 0 && v[t - 1] == q - 1) v[--t] = 0;
            if (t == 0) break;
            ++v[t - 1];
        }
        std::vector<std::size_t> idx(s.slots(), 0);
        for (;;) {
            std::vector<WMat> U;
            for (auto i : idx) U.push_back(invertible[i]);
            visit(make_display(s, U));
            int t = s.slots();
            while (t > 0 && idx[t - 1] + 1 == invertible.size()) idx[--t] = 0;
            if (t == 0) break;
            ++idx[t - 1];
        }
    } else if (c.mode == "sample") {
        if (c.samples > c.limit) fail(Errc::SearchSpaceTooLarge, "--samples exceeds --limit");
        const Rng root(c.seed);
        for (std::uint64_t i = 0; i < c.samples; ++i) {
            Rng rng = root.split(i);
            std::vector<WMat> U;
            for (int sl = 0; sl < s.slots(); ++sl) {
                for (;;) {
                    WMat A(R, n, h, h);
                    for (int e = 0; e < h * h; ++e) {
                        std::vector<Elem> comps;
                        for (int k = 0; k < n; ++k) comps.push_back(R->random(rng));
                        A.at(e / h, e % h) = WittVector(R, comps);
                    }
                    if (!is_invertible(A)) continue;
                    U.push_back(A);
                    break;
                }
            }
            visit(make_display(s, U));
        }
    } else {
        fail(Errc::ParseError, "--mode must be 'sample' or 'teich'");
    }
    const int code = violations ? Counterexample : Ok;
    if (c.format == "csv") {
        os << header(c) << " ring=" << R->name() << " shape=" << c.shape << " level=" << n << " mode=" << c.mode
           << " total=" << total << " violations=" << violations << " ordinary=" << ord.str() << "\nslopes;count\n";
        for (const auto& [sl, k] : hist) os << make_newton_point(sl).str() << ";" << k << "\n";
        return code;
    }
    json j = json_header(c);
    j["ring"] = io::ring_to_json(R);
    j["shape"] = io::shape_to_json(s);
    j["level"] = n;
    j["mode"] = c.mode;
    j["total"] = total;
    j["violations"] = violations;
    j["ordinary"] = ord.str();
    json hj = json::array();
    for (const auto& [sl, k] : hist) hj.push_back(json{{"slopes", make_newton_point(sl).str()}, {"count", k}});
    j["histogram"] = hj;
    os << j.dump(2) << "\n";
    return code;
}

int cmd_family_scan(const JobConfig& c, std::ostream& os) {
    const auto U = read_displays(input(c, 0));
    if (U.size() != 2) fail(Errc::ParseError, "family-scan needs a file with exactly two displays");
    newton_guard(U[0]);
    InterpolationOptions o;
    o.seed = c.seed;
    const Family f = interpolate_family(U[0], U[1], o);
    const BaseRing* T = io::parse_ring(c.target.empty() ? c.ring : c.target);
    const auto pts = regular_points(f, T);
    if (pts.size() > c.limit) fail(Errc::SearchSpaceTooLarge, "sample set exceeds --limit");
    const auto res = family_newton_scan(f, T, pts);
    const std::string maximal = res.maximal ? res.maximal->str() : "none";
    if (c.format == "csv") {
        os << header(c) << " target=" << T->name() << " points=" << res.rows.size() << " maximal=" << maximal
           << " special=" << res.special.size() << "\npoint;slopes;dominates_max\n";
        for (const auto& r : res.rows)
            os << io::point_label(T, r.point) << ";" << r.nu.str() << ";" << (r.below_max ? "true" : "false") << "\n";
        return Ok;
    }
    json j = json_header(c);
    j["target"] = io::ring_to_json(T);
    j["maximal"] = maximal;
    json special = json::array();
    for (fe x : res.special) special.push_back(io::point_label(T, x));
    j["special"] = special;
    json rows = json::array();
    for (const auto& r : res.rows)
        rows.push_back(json{{"point", io::point_label(T, r.point)}, {"slopes", r.nu.str()}, {"dominates_max", r.below_max}});
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return Ok;
}

int cmd_flex(const JobConfig& c, std::ostream& os) {
    const auto U = read_displays(input(c, 0));
    const FlexSpec spec = io::flexspec_from_json(read_json(input(c, 1)));
    const Display out = flex_display(spec, U);
    json j = json_header(c);
    const json body = io::display_to_json(out);
    for (const auto& [k, v] : body.items()) j[k] = v;
    os << j.dump(2) << "\n";
    return Ok;
}

int cmd_gauge_validate(const JobConfig& c, std::ostream& os) {
    const json in = read_json(input(c, 0));
    std::vector<std::pair<std::string, std::string>> lines;
    if (in.contains("theta")) {
        const auto rep = validate_theta_gauge(io::theta_from_json(in));
        for (const auto& [tag, list] : {std::pair{"structure", &rep.structure}, {"G1", &rep.g1}, {"G2", &rep.g2},
                                        {"G3", &rep.g3}, {"G4", &rep.g4}})
            for (const auto& v : *list) lines.emplace_back(tag, v);
    } else {
        const FlexSpec s = io::flexspec_from_json(in);
        const auto md = validate_multidegree(s.d);
        for (const auto& v : md.violations) lines.emplace_back("multidegree", v);
        if (md.ok()) {
            for (const auto& v : validate_gauge(s.j, s.d, s.P).violations) {
                const char* tag = v.rfind("sign rule", 0) == 0   ? "sign-rule"
                                  : v.rfind("unique cut", 0) == 0 ? "unique-cut"
                                                                  : "gauge";
                lines.emplace_back(tag, v);
            }
        }
    }
    if (c.format == "json") {
        json j = json_header(c);
        j["valid"] = lines.empty();
        json v = json::array();
        for (const auto& [tag, msg] : lines) v.push_back(json{{"tag", tag}, {"message", msg}});
        j["violations"] = v;
        os << j.dump(2) << "\n";
        return Ok;
    }
    // one violation per line, tag first
    os << header(c) << "\ntag;message\n";
    for (const auto& [tag, msg] : lines) os << tag << ";" << msg << "\n";
    return Ok;
}

}  // namespace dlab::cli
