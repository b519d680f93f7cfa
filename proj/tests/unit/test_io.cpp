#include <doctest.h>

#include "displaylab/errors.hpp"
#include "io.hpp"
#include "testutil.hpp"

using namespace dlab;
namespace io = dlab::io;

TEST_CASE("ring names") {
    CHECK(io::parse_ring("F_3") == BaseRing::finite_field(3, 1));
    CHECK(io::parse_ring("F_9") == BaseRing::finite_field(3, 2));
    CHECK(io::parse_ring("F3^2") == BaseRing::finite_field(3, 2));
    CHECK(io::parse_ring("F_81") == BaseRing::finite_field(3, 4));
    CHECK(io::parse_ring("F_5[eps]")->kind() == BaseRing::Kind::DualNumbers);
    CHECK(io::parse_ring("F_3^2[t]")->kind() == BaseRing::Kind::Poly);
    CHECK_THROWS_AS(io::parse_ring("F_12"), Error);
    CHECK_THROWS_AS(io::parse_ring("Z_3"), Error);
}

TEST_CASE("json round trips") {
    Rng rng(5);
    const BaseRing* F9 = BaseRing::finite_field(3, 2);
    const BaseRing* rings[] = {BaseRing::finite_field(3, 1), F9, BaseRing::poly(F9),
                               BaseRing::localized(F9, upoly::P{1, 1}), BaseRing::dual(BaseRing::finite_field(5, 1))};
    for (const BaseRing* R : rings) {
        CHECK(io::ring_from_json(io::ring_to_json(R)) == R);
        for (int t = 0; t < 20; ++t) {
            auto x = dlt::random_witt(R, 3, rng);
            CHECK(io::witt_from_json(io::witt_to_json(x)) == x);
        }
        for (const Shape& s : {Shape::linear(2, 1), Shape::graded(3, {1, 2}), Shape::from_weights({{0, 1, 1}, {1, 0, 0}})}) {
            auto D = dlt::random_display(s, R, 2, rng);
            // text round trip, not only the json value
            CHECK(io::display_from_json(io::json::parse(io::display_to_json(D).dump())) == D);
            auto k = dlt::random_parabolic(s, R, 3, rng);
            CHECK(io::parabolic_from_json(io::parabolic_to_json(k)) == k);
        }
    }
    auto D = twist_central(dlt::random_display(Shape::linear(2, 1), F9, 2, rng), 2);
    CHECK(io::display_from_json(io::display_to_json(D)).central == 2);

    auto M = dlt::random_module(F9, 2, 3, 2, 2, rng);
    auto M2 = io::module_from_json(io::module_to_json(M));
    CHECK(M2.w == M.w);
    CHECK(M2.F == M.F);
    CHECK(M2.V == M.V);

    ThetaGaugeInstance I;
    I.theta = {1, 2, 3, 0};
    I.star = {2, 3, 0, 1};
    I.dplus = {1, 0, 1, 0};
    I.j = {{2, 0, -2, 0}};
    I.a = {{0, 0, 1, 0}};
    I.b = {{0, 1, 1, 1}};
    I.Pi = {{0}};
    auto I2 = io::theta_from_json(io::theta_to_json(I));
    CHECK(I2.theta == I.theta);
    CHECK(I2.j == I.j);
    CHECK(I2.Pi == I.Pi);

    WeightProfile P;
    P.a = {0, 0};
    P.b = {1, 0};
    auto sp = io::flexspec_from_json(io::gauge_to_json(Multidegree{2, {0, 2}}, Gauge{2, false, {0, 4}}, P));
    CHECK(sp.d.base == std::vector<int>{0, 2});
    CHECK(sp.j.j == std::vector<int>{0, 4});
    CHECK(sp.P.b == P.b);
}

TEST_CASE("malformed input is a parse error") {
    const char* bad[] = {
        R"({"shape":{"kind":"linear","h":2,"d":[1]},"level":1,"U":[]})",
        R"({"ring":{"p":3},"shape":{"kind":"linear","h":2,"d":[1]},"level":1,"U":[[[[1],[0]],[[0],[1]]],[[[1],[0]],[[0],[1]]]]})",
        R"({"ring":{"p":3},"shape":{"kind":"linear","h":2,"d":[1]},"level":1,"U":[[[[3],[0]],[[0],[1]]]]})",
        R"({"ring":{"p":3},"shape":{"kind":"linear","h":2,"d":[1]},"level":2,"U":[[[[1],[0]],[[0],[1]]]]})",
        R"({"ring":{"p":3},"shape":{"kind":"conic","h":2,"d":[1]},"level":1,"U":[[[[1],[0]],[[0],[1]]]]})",
    };
    for (const char* s : bad) {
        try {
            io::display_from_json(io::json::parse(s));
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ParseError);
        }
    }
    // singular matrices are rejected by the display constructor itself
    CHECK_THROWS(io::display_from_json(io::json::parse(
        R"({"ring":{"p":3},"shape":{"kind":"linear","h":2,"d":[1]},"level":1,"U":[[[[1],[1]],[[1],[1]]]]})")));
}

TEST_CASE("parabolic group enumeration") {
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    const Shape s = Shape::linear(2, 1);
    // |GL_1(W_2)|^2 * |W_2| (C block) * |I_2| (B block) = 6 * 6 * 9 * 3
    const auto G = parabolic_group(s, F3, 2);
    CHECK(G.size() == 972);
    for (std::size_t i = 0; i + 1 < G.size(); ++i) CHECK(lex_less(G[i].k[0], G[i + 1].k[0]));
    // automorphisms of the identity display sit inside the group
    auto aut = brute_force_isoms(identity_display(s, F3, 1), identity_display(s, F3, 1));
    std::size_t found = 0;
    for (const auto& k : aut) found += std::binary_search(G.begin(), G.end(), k, [](const Parabolic& a, const Parabolic& b) {
        return lex_less(a.k[0], b.k[0]);
    });
    CHECK(found == aut.size());
    CHECK(parabolic_group(Shape::graded(1, {0, 1}), F3, 1).size() == 4);
    CHECK_THROWS_AS(parabolic_group(Shape::linear(3, 1), BaseRing::finite_field(3, 2), 3), Error);
    CHECK_THROWS_AS(parabolic_group(Shape::unitary(2, {1}), F3, 1), Error);
}
