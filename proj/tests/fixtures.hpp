#pragma once

// Reference matrices for the cycle graph C4. They use the listing
// {1},{2},{3},{4},{1,2},{2,3},{3,4},{4,1}, with the last edge oriented as
// (4,1); compare through listing_basis_change.

#include <vector>

#include "cartan/complex.hpp"
#include "cartan/int_matrix.hpp"

namespace fixture {

inline const std::vector<std::vector<cartan::Vertex>> kC4Listing = {{1}, {2}, {3}, {4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}};

/// Edge order of the listing; makes deterministic_field pick {3,4} for vertex 4 as printed.
inline std::vector<cartan::Simplex> c4_edge_priority()
{
    return {cartan::Simplex{1, 2}, cartan::Simplex{2, 3}, cartan::Simplex{3, 4}, cartan::Simplex{1, 4}};
}

inline cartan::Complex c4() { return cartan::whitney_complex({{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }

inline const cartan::IntMatrix kC4d{
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {-1, 1, 0, 0, 0, 0, 0, 0},
    {0, -1, 1, 0, 0, 0, 0, 0},
    {0, 0, -1, 1, 0, 0, 0, 0},
    {1, 0, 0, -1, 0, 0, 0, 0}};

inline const cartan::IntMatrix kC4iX{
    {0, 0, 0, 0, -1, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0}};

inline const cartan::IntMatrix kC4D{
    {0, 0, 0, 0, -1, 0, 0, 1},
    {0, 0, 0, 0, 1, -1, 0, 0},
    {0, 0, 0, 0, 0, 1, -1, 0},
    {0, 0, 0, 0, 0, 0, 1, -1},
    {-1, 1, 0, 0, 0, 0, 0, 0},
    {0, -1, 1, 0, 0, 0, 0, 0},
    {0, 0, -1, 1, 0, 0, 0, 0},
    {1, 0, 0, -1, 0, 0, 0, 0}};

inline const cartan::IntMatrix kC4DX{
    {0, 0, 0, 0, -1, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0},
    {-1, 1, 0, 0, 0, 0, 0, 0},
    {0, -1, 1, 0, 0, 0, 0, 0},
    {0, 0, -1, 1, 0, 0, 0, 0},
    {1, 0, 0, -1, 0, 0, 0, 0}};

inline const cartan::IntMatrix kC4L{
    {2, -1, 0, -1, 0, 0, 0, 0},
    {-1, 2, -1, 0, 0, 0, 0, 0},
    {0, -1, 2, -1, 0, 0, 0, 0},
    {-1, 0, -1, 2, 0, 0, 0, 0},
    {0, 0, 0, 0, 2, -1, 0, -1},
    {0, 0, 0, 0, -1, 2, -1, 0},
    {0, 0, 0, 0, 0, -1, 2, -1},
    {0, 0, 0, 0, -1, 0, -1, 2}};

inline const cartan::IntMatrix kC4LX{
    {1, -1, 0, 0, 0, 0, 0, 0},
    {-1, 1, 0, 0, 0, 0, 0, 0},
    {0, -1, 1, 0, 0, 0, 0, 0},
    {0, 0, -1, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 2, 0, 0, 0},
    {0, 0, 0, 0, -1, 1, 0, 0},
    {0, 0, 0, 0, 0, -1, 1, 0},
    {0, 0, 0, 0, -1, 0, -1, 0}};

}  // namespace fixture
