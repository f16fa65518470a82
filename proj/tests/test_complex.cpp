#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "cartan/complex.hpp"
#include "cartan/error.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

std::vector<std::vector<Vertex>> listing(const Complex& c)
{
    std::vector<std::vector<Vertex>> out;
    for (const auto& s : c.simplices()) out.push_back(s.vertices());
    return out;
}

}  // namespace

TEST_CASE("simplex validation and ordering")
{
    CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), InvalidInput);
    CHECK_THROWS_AS(Simplex({2, 1}), InvalidInput);
    CHECK_THROWS_AS(Simplex({1, 1}), InvalidInput);
    CHECK_THROWS_AS(Simplex({0, 1}), InvalidInput);
    CHECK_THROWS_AS(Simplex({-3}), InvalidInput);
    CHECK(Simplex::from_unsorted({3, 1, 2}) == Simplex({1, 2, 3}));
    CHECK(Simplex::from_unsorted({3, 3, 1}) == Simplex({1, 3}));
    CHECK_THROWS_AS(Simplex::from_unsorted({3, 0}), InvalidInput);

    // cardinality first, then lexicographic
    CHECK(Simplex({9}) < Simplex({1, 2}));
    CHECK(Simplex({1, 3}) < Simplex({2, 3}));
    CHECK(Simplex({1, 2, 9}) > Simplex({7, 8}));
    CHECK(Simplex({1, 3}).is_face_of(Simplex({1, 2, 3})));
    CHECK(Simplex({1, 3}).is_face_of(Simplex({1, 3})));
    CHECK_FALSE(Simplex({1, 4}).is_face_of(Simplex({1, 2, 3})));
    CHECK(Simplex({1, 2, 3}).without(1) == Simplex({1, 3}));
}

TEST_CASE("generate_closure examples")
{
    CHECK(listing(generate_closure({{1, 2}})) == std::vector<std::vector<Vertex>>{{1}, {2}, {1, 2}});
    CHECK(listing(generate_closure({{1, 2, 3}})) ==
          std::vector<std::vector<Vertex>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});
    CHECK(listing(generate_closure({{1, 2}, {2, 3}})) ==
          std::vector<std::vector<Vertex>>{{1}, {2}, {3}, {1, 2}, {2, 3}});
    // unsorted and duplicated facets collapse
    CHECK(generate_closure({{2, 1}, {1, 2}, {1}}) == generate_closure({{1, 2}}));
    // labels need not be contiguous
    CHECK(listing(generate_closure({{10, 40}})) == std::vector<std::vector<Vertex>>{{10}, {40}, {10, 40}});

    CHECK_THROWS_AS(generate_closure({{}}), InvalidInput);
    CHECK_THROWS_AS(generate_closure({{0, 1}}), InvalidInput);
    CHECK_THROWS_AS(generate_closure({{1, -2}}), InvalidInput);
    CHECK(generate_closure({}).empty());
    CHECK(generate_closure({}).dimension() == -1);
}

TEST_CASE("from_simplices requires closure and uniqueness")
{
    CHECK_THROWS_AS(Complex::from_simplices({Simplex{1, 2}}), InvalidInput);
    CHECK_THROWS_AS(Complex::from_simplices({Simplex{1}, Simplex{1}}), InvalidInput);
    const Complex c = Complex::from_simplices({Simplex{1, 2}, Simplex{2}, Simplex{1}});
    CHECK(listing(c) == std::vector<std::vector<Vertex>>{{1}, {2}, {1, 2}});
    REQUIRE(c.index_of(Simplex{1, 2}).has_value());
    CHECK(*c.index_of(Simplex{1, 2}) == 2);
    CHECK_FALSE(c.index_of(Simplex{3}).has_value());
}

TEST_CASE("size guardrail")
{
    // the full simplex on 13 vertices has 8191 faces
    std::vector<Vertex> big(12);
    for (int i = 0; i < 12; ++i) big[static_cast<std::size_t>(i)] = i + 1;
    CHECK(generate_closure({big}).size() == 4095);
    big.push_back(13);
    CHECK_THROWS_AS(generate_closure({big}), InvalidInput);
}

TEST_CASE("random_complex contract")
{
    CHECK(listing(random_complex(1, 1, 7)) == std::vector<std::vector<Vertex>>{{1}});
    CHECK(random_complex(10, 20, 42) == random_complex(10, 20, 42));
    CHECK_THROWS_AS(random_complex(0, 3, 1), InvalidInput);
    CHECK_THROWS_AS(random_complex(3, 0, 1), InvalidInput);

    bool differs = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Complex c = random_complex(5, 8, seed);
        CHECK(oracle::is_closed(c));
        for (Vertex v : c.vertices()) CHECK((v >= 1 && v <= 5));
        differs |= !(c == random_complex(5, 8, 0));
    }
    CHECK(differs);
}

TEST_CASE("whitney complexes")
{
    const Complex k2 = whitney_complex({{1, 2}});
    CHECK(k2.f_vector() == std::vector<std::size_t>{2, 1});
    const Complex c4 = whitney_complex({{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(c4.size() == 8);
    CHECK(c4.f_vector() == std::vector<std::size_t>{4, 4});
    const Complex k3 = whitney_complex({{1, 2}, {1, 3}, {2, 3}});
    CHECK(k3 == generate_closure({{1, 2, 3}}));
    // K4 plus a pendant edge
    const Complex k4 = whitney_complex({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}});
    CHECK(k4.f_vector() == std::vector<std::size_t>{5, 7, 4, 1});
    CHECK(oracle::is_closed(k4));
    CHECK_THROWS_AS(whitney_complex({{2, 2}}), InvalidInput);
    // repeated and reversed edges are the same edge
    CHECK(whitney_complex({{1, 2}, {2, 1}}) == k2);
}

TEST_CASE("grading summary")
{
    const auto k2 = grading_summary(whitney_complex({{1, 2}}));
    CHECK(k2.f_vector == std::vector<std::size_t>{2, 1});
    CHECK(k2.block_offsets == std::vector<std::size_t>{0, 2, 3});
    CHECK(k2.dimension == 1);
    CHECK(k2.euler_characteristic == 1);

    const auto c4 = grading_summary(whitney_complex({{1, 2}, {2, 3}, {3, 4}, {4, 1}}));
    CHECK(c4.block_offsets == std::vector<std::size_t>{0, 4, 8});
    CHECK(c4.euler_characteristic == 0);

    const auto k3 = grading_summary(generate_closure({{1, 2, 3}}));
    CHECK(k3.f_vector == std::vector<std::size_t>{3, 3, 1});
    CHECK(k3.dimension == 2);
    CHECK(k3.euler_characteristic == 1);
}

TEST_CASE("property: full simplices have euler characteristic 1")
{
    for (int k = 1; k <= 8; ++k) {
        std::vector<Vertex> facet;
        for (int i = 1; i <= k; ++i) facet.push_back(i);
        const Complex c = generate_closure({facet});
        CHECK(c.euler_characteristic() == 1);
        CHECK(c.size() == (std::size_t{1} << k) - 1);
    }
}

TEST_CASE("property: canonical order and consistent grading")
{
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const Complex c = random_complex(8, 16, seed);
        const auto s = c.simplices();
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());

        // re-sorting a shuffled copy is a no-op
        std::vector<Simplex> shuffled(s.begin(), s.end());
        std::reverse(shuffled.begin(), shuffled.end());
        CHECK(Complex::from_simplices(shuffled) == c);

        std::size_t total = 0;
        const auto& f = c.f_vector();
        const auto& off = c.block_offsets();
        REQUIRE(off.size() == f.size() + 1);
        for (std::size_t k = 0; k < f.size(); ++k) {
            CHECK(off[k] == total);
            total += f[k];
            for (std::size_t i = off[k]; i < off[k + 1]; ++i) CHECK(c.degree_of(i) == static_cast<int>(k));
        }
        CHECK(total == c.size());
    }
}
