#include "cartan/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cartan/error.hpp"

namespace cartan::io {

namespace {

std::vector<Vertex> vertex_list(const json& j)
{
    if (!j.is_array()) throw InvalidInput("expected an array of vertex labels");
    std::vector<Vertex> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InvalidInput("vertex labels must be integers");
        v.push_back(x.get<Vertex>());
    }
    return v;
}

template <class Matrix>
void require_rectangular(const json& j, const char* what)
{
    if (!j.is_array()) throw InvalidInput(std::string(what) + ": expected a 2D array");
    for (const auto& row : j)
        if (!row.is_array() || row.size() != j.front().size())
            throw InvalidInput(std::string(what) + ": rows must be arrays of equal length");
}

Simplex parse_edge_key(const std::string& key)
{
    json parsed;
    try {
        parsed = json::parse(key);
    } catch (const json::exception&) {
        throw InvalidInput("field edge key '" + key + "' is not of the form [u,v]");
    }
    const auto v = vertex_list(parsed);
    if (v.size() != 2) throw InvalidInput("field edge key '" + key + "' must name two vertices");
    return Simplex::from_unsorted(v);
}

}  // namespace

std::string format_number(double x)
{
    if (std::abs(x) < 1e-13) x = 0.0;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, end);
}

json complex_to_json(const Complex& complex)
{
    json simplices = json::array();
    for (const auto& s : complex.simplices()) simplices.push_back(s.vertices());
    return {{"simplices", simplices},
            {"f_vector", complex.f_vector()},
            {"block_offsets", complex.block_offsets()},
            {"dimension", complex.dimension()},
            {"euler_characteristic", complex.euler_characteristic()}};
}

Complex complex_from_json(const json& j)
{
    if (!j.is_object()) throw InvalidInput("complex JSON must be an object");
    // CLI reports wrap the complex; accept them directly as input.
    if (j.contains("version") && j.contains("data")) return complex_from_json(j.at("data"));
    if (j.contains("complex") && j.at("complex").is_object()) return complex_from_json(j.at("complex"));
    if (j.contains("facets")) {
        std::vector<std::vector<Vertex>> facets;
        for (const auto& f : j.at("facets")) facets.push_back(vertex_list(f));
        return generate_closure(facets);
    }
    if (j.contains("simplices")) {
        std::vector<Simplex> simplices;
        for (const auto& s : j.at("simplices")) simplices.push_back(Simplex::from_unsorted(vertex_list(s)));
        return Complex::from_simplices(std::move(simplices));
    }
    if (j.contains("edges")) return whitney_complex(edges_from_json(j));
    throw InvalidInput("complex JSON needs a \"facets\", \"simplices\" or \"edges\" key");
}

Complex load_complex(const std::string& path)
{
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InvalidInput("cannot parse " + path + ": " + e.what());
    }
    return complex_from_json(j);
}

std::vector<std::pair<Vertex, Vertex>> edges_from_json(const json& j)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : j.at("edges")) {
        const auto v = vertex_list(e);
        if (v.size() != 2) throw InvalidInput("graph edges must have two endpoints");
        edges.emplace_back(v[0], v[1]);
    }
    return edges;
}

json matrix_to_json(const IntMatrix& m)
{
    json out = json::array();
    for (const auto& row : m.to_dense()) out.push_back(row);
    return out;
}

json matrix_to_json(const RealMatrix& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

json matrix_to_json(const ComplexMatrix& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        out.push_back(std::move(row));
    }
    return out;
}

RealMatrix real_matrix_from_json(const json& j)
{
    require_rectangular<RealMatrix>(j, "matrix");
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(j.front().size());
    RealMatrix a(n, m);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < m; ++c) {
            const auto& x = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (!x.is_number()) throw InvalidInput("matrix entries must be numbers");
            a(r, c) = x.get<double>();
        }
    return a;
}

ComplexMatrix complex_matrix_from_json(const json& j)
{
    require_rectangular<ComplexMatrix>(j, "matrix");
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(j.front().size());
    ComplexMatrix a(n, m);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < m; ++c) {
            const auto& x = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (x.is_number())
                a(r, c) = x.get<double>();
            else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
                a(r, c) = Complex128(x[0].get<double>(), x[1].get<double>());
            else
                throw InvalidInput("complex matrix entries must be numbers or [re, im] pairs");
        }
    return a;
}

std::optional<IntMatrix> int_matrix_from_json(const json& j)
{
    require_rectangular<IntMatrix>(j, "matrix");
    std::vector<std::vector<IntMatrix::Scalar>> rows;
    for (const auto& row : j) {
        std::vector<IntMatrix::Scalar> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) return std::nullopt;
            r.push_back(x.get<IntMatrix::Scalar>());
        }
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_dense(rows);
}

FieldDescription field_from_json(const json& j)
{
    if (!j.is_object()) throw InvalidInput("field JSON must be an object");
    FieldDescription f;
    if (j.contains("matrix")) {
        f.matrix = j.at("matrix");
        f.integer = int_matrix_from_json(*f.matrix).has_value();
        return f;
    }
    if (!j.contains("edges") || !j.at("edges").is_object())
        throw InvalidInput("field JSON needs an \"edges\" object or a \"matrix\"");
    for (const auto& [key, value] : j.at("edges").items()) {
        if (!value.is_number()) throw InvalidInput("field coefficient for " + key + " must be a number");
        f.integer = f.integer && value.is_number_integer();
        f.edges[parse_edge_key(key)] = value.get<double>();
    }
    if (j.contains("support")) {
        DegreeSet s;
        for (const auto& p : j.at("support")) {
            if (!p.is_number_integer() || p.get<int>() < 1) throw InvalidInput("support degrees must be integers >= 1");
            s.insert(p.get<int>());
        }
        f.support = s;
    }
    if (j.contains("mode")) {
        const auto mode = j.at("mode").get<std::string>();
        if (mode == "overwrite")
            f.mode = WriteMode::overwrite;
        else if (mode == "accumulate")
            f.mode = WriteMode::accumulate;
        else
            throw InvalidInput("field mode must be \"overwrite\" or \"accumulate\"");
    }
    return f;
}

json field_to_json(const std::map<Simplex, double>& edges, const DegreeSet& support, WriteMode mode)
{
    json e = json::object();
    for (const auto& [edge, c] : edges)
        e["[" + std::to_string(edge[0]) + "," + std::to_string(edge[1]) + "]"] = c;
    return {{"edges", e}, {"support", support}, {"mode", mode == WriteMode::overwrite ? "overwrite" : "accumulate"}};
}

json spectrum_to_json(const Spectrum& s)
{
    json out = json::array();
    for (const auto& z : s.values)
        out.push_back({std::abs(z.real()) < 1e-13 ? 0.0 : z.real(), std::abs(z.imag()) < 1e-13 ? 0.0 : z.imag()});
    return out;
}

std::string spectrum_to_csv(const Spectrum& s)
{
    std::string out;
    for (const auto& z : s.values) out += format_number(z.real()) + "," + format_number(z.imag()) + "\n";
    return out;
}

json checks_to_json(const std::vector<Check>& checks)
{
    json out = json::array();
    for (const auto& c : checks) {
        json item = {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}};
        if (!c.note.empty()) item["note"] = c.note;
        out.push_back(std::move(item));
    }
    return out;
}

json spectral_report_to_json(const SpectralReport& r)
{
    json spectra = json::array();
    for (const auto& s : r.per_degree_spectra) spectra.push_back(spectrum_to_json(s));
    return {{"betti", r.betti_x},
            {"betti_algebraic", r.betti_algebraic},
            {"chi_f", r.euler_from_f},
            {"chi_betti", r.euler_from_betti},
            {"chi_algebraic", r.euler_from_algebraic},
            {"per_degree_spectra", spectra},
            {"checks", checks_to_json(r.checks)}};
}

std::string inflation_csv(const std::vector<double>& u, const std::vector<double>& v)
{
    std::string out = "step,u,v\n";
    for (std::size_t k = 0; k < u.size(); ++k) {
        out += std::to_string(k) + "," + format_number(u[k]) + ",";
        if (k < v.size()) out += format_number(v[k]);
        out += "\n";
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file '" + path + "'");
    out << contents;
}

}  // namespace cartan::io
