#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/complex.hpp"
#include "cartan/exterior.hpp"
#include "cartan/lax.hpp"
#include "cartan/linalg.hpp"
#include "cartan/spectral.hpp"
#include "cartan/vector_field.hpp"

namespace cartan::io {

using nlohmann::json;

/// {"simplices": [...], "f_vector": [...], "block_offsets": [...], "dimension": k, "euler_characteristic": chi}
json complex_to_json(const Complex& complex);

/**
 * Accepts {"facets": [[...], ...]} (closure taken) or {"simplices": [...]}
 * (must already be closed). Other keys are ignored.
 */
Complex complex_from_json(const json& j);
Complex load_complex(const std::string& path);

/// Plain graph: {"edges": [[u, v], ...]}.
std::vector<std::pair<Vertex, Vertex>> edges_from_json(const json& j);

json matrix_to_json(const IntMatrix& m);
json matrix_to_json(const RealMatrix& m);
/// Complex entries as [re, im] pairs.
json matrix_to_json(const ComplexMatrix& m);

RealMatrix real_matrix_from_json(const json& j);
ComplexMatrix complex_matrix_from_json(const json& j);
/// nullopt unless every entry is an integer.
std::optional<IntMatrix> int_matrix_from_json(const json& j);

/// Matrix plus a header naming the operator, its complex and its grading.
template <class Matrix>
json operator_to_json(const std::string& name, const std::string& complex_label, const GradedOperator<Matrix>& op)
{
    return {{"name", name},
            {"complex", complex_label},
            {"grading_action", to_string(op.action)},
            {"order", op.order()},
            {"matrix", matrix_to_json(op.matrix)}};
}

/// Edge-keyed field description before it is bound to a complex.
struct FieldDescription {
    std::map<Simplex, double> edges;
    std::optional<DegreeSet> support;
    WriteMode mode = WriteMode::overwrite;
    /// Raw grading-lowering matrix, when given instead of edges.
    std::optional<json> matrix;
    bool integer = true;
};

/// {"edges": {"[u,v]": c, ...}, "support": [1, 3], "mode": "overwrite"} or {"matrix": [[...]]}.
FieldDescription field_from_json(const json& j);
json field_to_json(const std::map<Simplex, double>& edges, const DegreeSet& support, WriteMode mode);

json spectrum_to_json(const Spectrum& s);
/// One `re,im` row per eigenvalue in sorted order; |x| < 1e-13 prints as 0.
std::string spectrum_to_csv(const Spectrum& s);

json checks_to_json(const std::vector<Check>& checks);
json spectral_report_to_json(const SpectralReport& report);

/// Rows `step,u,v` (v empty on the last row).
std::string inflation_csv(const std::vector<double>& u, const std::vector<double>& v);

/// Shortest round-trip formatting with tiny values chopped to 0.
std::string format_number(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace cartan::io
