#include "cartan/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "cartan/error.hpp"
#include "cartan/rng.hpp"

namespace cartan {

namespace {

// A facet with this many vertices already has more than kMaxSimplices faces.
constexpr std::size_t kMaxFacetSize = 12;

std::string to_string(const std::vector<Vertex>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

void check_size(std::size_t n)
{
    if (n > kMaxSimplices)
        throw InvalidInput("complex has " + std::to_string(n) + " simplices; limit is " +
                           std::to_string(kMaxSimplices));
}

}  // namespace

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty()) throw InvalidInput("simplex must be non-empty");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] <= 0)
            throw InvalidInput("vertex labels must be positive: " + to_string(vertices_));
        if (i > 0 && vertices_[i - 1] >= vertices_[i])
            throw InvalidInput("simplex vertices must be strictly increasing: " + to_string(vertices_));
    }
}

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::from_unsorted(std::vector<Vertex> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return Simplex(std::move(vertices));
}

bool Simplex::contains(Vertex v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

Simplex Simplex::without(std::size_t index) const
{
    if (vertices_.size() < 2 || index >= vertices_.size())
        throw InvalidInput("cannot drop vertex " + std::to_string(index) + " from " + to_string(vertices_));
    std::vector<Vertex> rest;
    rest.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (i != index) rest.push_back(vertices_[i]);
    return Simplex(Trusted{}, std::move(rest));
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b)
{
    if (auto c = a.vertices_.size() <=> b.vertices_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                                                  b.vertices_.end());
}

Complex Complex::from_simplices(std::vector<Simplex> simplices)
{
    check_size(simplices.size());
    std::sort(simplices.begin(), simplices.end());
    if (std::adjacent_find(simplices.begin(), simplices.end()) != simplices.end())
        throw InvalidInput("duplicate simplex in complex");

    Complex c;
    c.simplices_ = std::move(simplices);
    for (const auto& s : c.simplices_) {
        for (std::size_t i = 0; s.cardinality() > 1 && i < s.cardinality(); ++i) {
            if (!c.index_of(s.without(i)))
                throw InvalidInput("not closed under subsets: " + to_string(s.vertices()) + " lacks face " +
                                   to_string(s.without(i).vertices()));
        }
        const auto k = static_cast<std::size_t>(s.dimension());
        if (c.f_vector_.size() <= k) c.f_vector_.resize(k + 1, 0);
        ++c.f_vector_[k];
    }
    c.offsets_.assign(1, 0);
    for (auto f : c.f_vector_) c.offsets_.push_back(c.offsets_.back() + f);
    return c;
}

std::optional<std::size_t> Complex::index_of(const Simplex& s) const
{
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
    if (it == simplices_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - simplices_.begin());
}

std::vector<Vertex> Complex::vertices() const
{
    std::vector<Vertex> out;
    for (const auto& s : simplices_) {
        if (s.cardinality() != 1) break;
        out.push_back(s[0]);
    }
    return out;
}

long Complex::euler_characteristic() const
{
    long chi = 0;
    for (std::size_t k = 0; k < f_vector_.size(); ++k)
        chi += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(f_vector_[k]);
    return chi;
}

Complex generate_closure(const std::vector<std::vector<Vertex>>& facets)
{
    std::set<Simplex> all;
    for (const auto& raw : facets) {
        const Simplex facet = Simplex::from_unsorted(raw);
        if (facet.cardinality() > kMaxFacetSize)
            throw InvalidInput("facet " + to_string(facet.vertices()) + " generates more than " +
                               std::to_string(kMaxSimplices) + " simplices");
        const auto& v = facet.vertices();
        const std::uint32_t subsets = 1u << v.size();
        for (std::uint32_t mask = 1; mask < subsets; ++mask) {
            std::vector<Vertex> sub;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (mask & (1u << i)) sub.push_back(v[i]);
            all.insert(Simplex(std::move(sub)));
        }
        check_size(all.size());
    }
    return Complex::from_simplices(std::vector<Simplex>(all.begin(), all.end()));
}

Complex random_complex(int n, int m, std::uint64_t seed)
{
    if (n < 1) throw InvalidInput("random_complex: n must be >= 1");
    if (m < 1) throw InvalidInput("random_complex: m must be >= 1");
    Rng rng(seed);
    std::vector<std::vector<Vertex>> facets;
    facets.reserve(static_cast<std::size_t>(m));
    for (int trial = 0; trial < m; ++trial) {
        const auto k = rng.uniform_int(1, n);
        std::vector<Vertex> draw;
        for (std::int64_t j = 0; j < k; ++j) draw.push_back(static_cast<Vertex>(rng.uniform_int(1, n)));
        facets.push_back(std::move(draw));
    }
    return generate_closure(facets);
}

Complex whitney_complex(const std::vector<std::pair<Vertex, Vertex>>& edges)
{
    std::map<Vertex, std::set<Vertex>> adjacency;
    for (auto [u, v] : edges) {
        if (u <= 0 || v <= 0) throw InvalidInput("vertex labels must be positive");
        if (u == v) throw InvalidInput("loop edge at vertex " + std::to_string(u));
        adjacency[u].insert(v);
        adjacency[v].insert(u);
    }

    // Grow cliques by appending a larger vertex adjacent to every member.
    std::vector<Simplex> out;
    std::vector<std::vector<Vertex>> frontier;
    for (const auto& [v, _] : adjacency) frontier.push_back({v});
    while (!frontier.empty()) {
        std::vector<std::vector<Vertex>> next;
        for (auto& clique : frontier) {
            for (Vertex w : adjacency[clique.back()]) {
                if (w <= clique.back()) continue;
                bool all = true;
                for (std::size_t i = 0; all && i + 1 < clique.size(); ++i) all = adjacency[clique[i]].count(w) > 0;
                if (!all) continue;
                auto grown = clique;
                grown.push_back(w);
                next.push_back(std::move(grown));
            }
            out.emplace_back(std::move(clique));
            check_size(out.size() + next.size());
        }
        frontier = std::move(next);
    }
    return Complex::from_simplices(std::move(out));
}

GradingSummary grading_summary(const Complex& complex)
{
    return {complex.f_vector(), complex.block_offsets(), complex.dimension(), complex.euler_characteristic()};
}

}  // namespace cartan
