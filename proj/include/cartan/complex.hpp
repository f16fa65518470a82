#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cartan {

using Vertex = int;

/**
 * A non-empty, strictly increasing list of positive vertex labels.
 *
 * Simplices compare by (cardinality, lexicographic), which is the basis
 * order of every operator in this library.
 */
class Simplex {
public:
    /// Throws InvalidInput unless `vertices` is non-empty, positive and strictly increasing.
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices);

    /// Sorts and deduplicates first; still rejects empty or non-positive input.
    static Simplex from_unsorted(std::vector<Vertex> vertices);

    std::size_t cardinality() const { return vertices_.size(); }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }

    bool contains(Vertex v) const;
    /// Vertex-set inclusion; every simplex is a face of itself.
    bool is_face_of(const Simplex& other) const;

    /// The facet obtained by dropping the vertex at position `index`.
    Simplex without(std::size_t index) const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

private:
    struct Trusted {};
    Simplex(Trusted, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

    std::vector<Vertex> vertices_;
};

/// Simplices beyond this count are rejected (dense matrices stay desk-sized).
inline constexpr std::size_t kMaxSimplices = 4096;

/**
 * A finite abstract simplicial complex in canonical (cardinality, lex) order.
 *
 * Immutable once built. Every non-empty subset of a member is a member.
 */
class Complex {
public:
    Complex() = default;

    /// Validates closure, uniqueness and size; sorts into canonical order.
    static Complex from_simplices(std::vector<Simplex> simplices);

    std::span<const Simplex> simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const Simplex& operator[](std::size_t i) const { return simplices_[i]; }

    std::optional<std::size_t> index_of(const Simplex& s) const;

    /// f_k = number of k-dimensional simplices, k = 0..dimension.
    const std::vector<std::size_t>& f_vector() const { return f_vector_; }
    /// offsets[k] = first basis index of degree k; offsets.back() == size().
    const std::vector<std::size_t>& block_offsets() const { return offsets_; }
    /// -1 for the empty complex.
    int dimension() const { return static_cast<int>(f_vector_.size()) - 1; }
    int degree_of(std::size_t index) const { return simplices_[index].dimension(); }

    std::vector<Vertex> vertices() const;
    long euler_characteristic() const;

    friend bool operator==(const Complex& a, const Complex& b) { return a.simplices_ == b.simplices_; }

private:
    std::vector<Simplex> simplices_;
    std::vector<std::size_t> f_vector_;
    std::vector<std::size_t> offsets_{0};
};

using ComplexPtr = std::shared_ptr<const Complex>;

struct GradingSummary {
    std::vector<std::size_t> f_vector;
    std::vector<std::size_t> block_offsets;
    int dimension = -1;
    long euler_characteristic = 0;
};

/// Downward closure of the given facets.
Complex generate_closure(const std::vector<std::vector<Vertex>>& facets);

/**
 * m random vertex sets over {1..n}, then closure. Each trial draws
 * k in {1..n}, then k vertices with replacement; duplicates collapse.
 */
Complex random_complex(int n, int m, std::uint64_t seed);

/// Clique (Whitney) complex of a simple undirected graph.
Complex whitney_complex(const std::vector<std::pair<Vertex, Vertex>>& edges);

GradingSummary grading_summary(const Complex& complex);

inline ComplexPtr share(Complex c) { return std::make_shared<const Complex>(std::move(c)); }

}  // namespace cartan
