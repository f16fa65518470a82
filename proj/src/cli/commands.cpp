#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/cli.hpp"
#include "cartan/dynamics.hpp"
#include "cartan/error.hpp"
#include "cartan/io.hpp"
#include "cartan/lax.hpp"

namespace cartan::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"gen", "whitney", "operators", "spectrum", "verify", "evolve", "deform", "survey"};
const std::set<std::string> kFieldKinds = {"adjoint", "zero", "deterministic", "edge-random", "sparsified", "file"};
const std::set<std::string> kOperators = {"d", "iX", "D", "L", "DX", "LX"};

struct Args {
    RunConfig config;
    std::string field = "deterministic";
    std::string format;
    std::string complex_path;
    std::string out;
};

void configure(CLI::App& app, Args& a)
{
    RunConfig& c = a.config;
    app.add_option("command", c.command, "gen | whitney | operators | spectrum | verify | evolve | deform | survey")
        ->required();
    app.add_option("--seed", c.seed, "RNG seed (all randomness derives from it)");
    app.add_option("--n", c.n, "vertex count for random complexes");
    app.add_option("--m", c.m, "facet count for random complexes");
    app.add_option("--complex", a.complex_path, "complex JSON ({\"facets\"}, {\"simplices\"} or {\"edges\"})");
    app.add_option("--edges", c.edges, "whitney: graph edges as 1-2,2-3,...");
    app.add_option("--field", a.field, "adjoint | zero | deterministic | edge-random | sparsified[:p] | file:<path>");
    app.add_option("--support", c.field.support, "source degrees: odd | even | all | 1,3");
    app.add_flag("--integer-coeffs", c.field.integer_coeffs, "edge-random coefficients in {0,1}");
    app.add_option("--p", c.field.p, "keep probability for sparsified fields");
    app.add_option("--operator", c.op, "d | iX | D | L | DX | LX");
    app.add_option("--steps", c.steps, "time steps (evolve, deform)");
    app.add_option("--time", c.time, "total time (evolve, deform)");
    app.add_option("--tol", c.tol, "spectral pairing tolerance");
    app.add_option("--trials", c.trials, "survey trials");
    app.add_flag("--consistent", c.consistent, "deform: recompute B at every RK4 stage");
    app.add_option("--threads", c.threads, "survey worker threads (0 = all cores)");
    app.add_option("--out", a.out, "output path (default: stdout)");
    app.add_option("--format", a.format, "json | csv");
}

RunConfig finish(Args a)
{
    RunConfig c = std::move(a.config);
    if (!a.complex_path.empty()) c.complex_path = a.complex_path;
    if (!a.out.empty()) c.out = a.out;
    if (a.format == "json")
        c.format = Format::json;
    else if (a.format == "csv")
        c.format = Format::csv;
    else if (!a.format.empty())
        throw InvalidInput("--format must be json or csv");

    const auto colon = a.field.find(':');
    c.field.kind = a.field.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string arg = a.field.substr(colon + 1);
        if (c.field.kind == "sparsified") {
            try {
                std::size_t used = 0;
                c.field.p = std::stod(arg, &used);
                if (used != arg.size()) throw std::invalid_argument(arg);
            } catch (const std::exception&) {
                throw InvalidInput("sparsified probability '" + arg + "' is not a number");
            }
        } else if (c.field.kind == "file") {
            c.field.path = arg;
        } else {
            throw InvalidInput("field kind '" + c.field.kind + "' takes no argument");
        }
    }
    return c;
}

Format format_of(const RunConfig& c)
{
    if (c.format) return *c.format;
    return c.command == "spectrum" || c.command == "evolve" ? Format::csv : Format::json;
}

std::string operator_of(const RunConfig& c)
{
    if (!c.op.empty()) return c.op;
    return c.command == "evolve" ? "DX" : "LX";
}

json config_to_json(const RunConfig& c)
{
    json field = {{"kind", c.field.kind},
                  {"support", c.field.support},
                  {"integer_coeffs", c.field.integer_coeffs},
                  {"p", c.field.p}};
    if (!c.field.path.empty()) field["path"] = c.field.path;
    return {{"command", c.command},
            {"seed", c.seed},
            {"n", c.n},
            {"m", c.m},
            {"complex", c.complex_path ? json(*c.complex_path) : json(nullptr)},
            {"edges", c.edges},
            {"field", field},
            {"operator", operator_of(c)},
            {"steps", c.steps},
            {"time", c.time},
            {"tol", c.tol},
            {"trials", c.trials},
            {"consistent", c.consistent},
            {"format", format_of(c) == Format::json ? "json" : "csv"}};
}

std::string complex_label(const RunConfig& c)
{
    if (c.complex_path) return *c.complex_path;
    return "random(n=" + std::to_string(c.n) + ",m=" + std::to_string(c.m) + ",seed=" + std::to_string(c.seed) + ")";
}

std::string envelope(const RunConfig& c, const std::vector<Check>& checks, json data)
{
    const json j = {{"version", 1}, {"config", config_to_json(c)}, {"checks", io::checks_to_json(checks)}, {"data", data}};
    return j.dump(2) + "\n";
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out)
{
    if (c.out)
        io::write_file(*c.out, text);
    else
        out << text;
}

bool is_exact(const AnyField& f) { return std::holds_alternative<ExactField>(f); }

RealField real_of(const AnyField& f)
{
    return is_exact(f) ? to_real(std::get<ExactField>(f)) : std::get<RealField>(f);
}

/// The named operator as a real matrix, for spectra and dynamics.
RealMatrix named_operator(const std::string& name, const ExactOperator& d, const AnyField& field)
{
    const RealMatrix dm = d.matrix.to_real();
    if (name == "d") return dm;
    if (name == "D") return dm + dm.transpose();
    if (name == "L") {
        const RealMatrix D = dm + dm.transpose();
        return D * D;
    }
    if (is_exact(field)) {
        const auto ops = cartan(d, std::get<ExactField>(field));
        if (name == "iX") return ops.iX.matrix().to_real();
        if (name == "DX") return ops.DX.matrix.to_real();
        return ops.LX.matrix.to_real();
    }
    const auto ops = cartan(to_real(d), std::get<RealField>(field));
    if (name == "iX") return ops.iX.matrix();
    if (name == "DX") return ops.DX.matrix;
    return ops.LX.matrix;
}

void require_json(const RunConfig& c)
{
    if (format_of(c) != Format::json) throw InvalidInput(c.command + " only writes JSON");
}

int cmd_gen(const RunConfig& c, std::ostream& out)
{
    require_json(c);
    const Complex complex = load_or_generate(c);
    emit(c, envelope(c, {}, io::complex_to_json(complex)), out);
    return kExitOk;
}

std::vector<std::pair<Vertex, Vertex>> parse_edge_list(const std::string& text)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash == std::string::npos) throw std::invalid_argument(item);
            std::size_t a = 0, b = 0;
            const std::string left = item.substr(0, dash), right = item.substr(dash + 1);
            const int u = std::stoi(left, &a), v = std::stoi(right, &b);
            if (a != left.size() || b != right.size()) throw std::invalid_argument(item);
            edges.emplace_back(u, v);
        } catch (const std::exception&) {
            throw InvalidInput("edge '" + item + "' is not of the form u-v");
        }
    }
    return edges;
}

int cmd_whitney(const RunConfig& c, std::ostream& out)
{
    require_json(c);
    if (c.edges.empty() && !c.complex_path) throw InvalidInput("whitney needs --edges or --complex <graph.json>");
    const Complex complex = c.edges.empty()
                                ? whitney_complex(io::edges_from_json(json::parse(io::read_file(*c.complex_path))))
                                : whitney_complex(parse_edge_list(c.edges));
    emit(c, envelope(c, {}, io::complex_to_json(complex)), out);
    return kExitOk;
}

int cmd_operators(const RunConfig& c, std::ostream& out)
{
    require_json(c);
    const ComplexPtr complex = share(load_or_generate(c));
    const ExactOperator d = exterior_derivative(complex);
    Rng rng = Rng::substream(c.seed, 1);
    const AnyField field = make_field(c.field, d, rng);
    const std::string label = complex_label(c);
    const DiracHodge dh = dirac_and_hodge(d);

    json ops = {{"d", io::operator_to_json("d", label, d)},
                {"D", io::operator_to_json("D", label, dh.dirac)},
                {"L", io::operator_to_json("L", label, dh.hodge)}};
    std::vector<Check> checks;
    auto add = [&](const auto& cart) {
        ops["iX"] = io::operator_to_json("iX", label, cart.iX.op);
        ops["DX"] = io::operator_to_json("DX", label, cart.DX);
        ops["LX"] = io::operator_to_json("LX", label, cart.LX);
        checks.push_back({"iX_nilpotent", cart.nilpotent, 0.0, "", false});
        checks.push_back({"DX_squared_is_LX", cart.squares_to_lie, 0.0, "", false});
    };
    if (is_exact(field))
        add(cartan(d, std::get<ExactField>(field)));
    else
        add(cartan(to_real(d), std::get<RealField>(field)));
    emit(c, envelope(c, checks, {{"complex", io::complex_to_json(*complex)}, {"exact", is_exact(field)}, {"operators", ops}}),
         out);
    return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out)
{
    const ComplexPtr complex = share(load_or_generate(c));
    const ExactOperator d = exterior_derivative(complex);
    Rng rng = Rng::substream(c.seed, 1);
    const AnyField field = make_field(c.field, d, rng);
    const std::string name = operator_of(c);
    const Spectrum s = eigenvalues(named_operator(name, d, field));
    if (format_of(c) == Format::csv)
        emit(c, io::spectrum_to_csv(s), out);
    else
        emit(c, envelope(c, {}, {{"operator", name}, {"spectrum", io::spectrum_to_json(s)}}), out);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out)
{
    require_json(c);
    const ComplexPtr complex = share(load_or_generate(c));
    const ExactOperator d = exterior_derivative(complex);
    Rng rng = Rng::substream(c.seed, 1);
    const AnyField x = make_field(c.field, d, rng);
    // The bracket checks need a second field: another draw of the same kind
    // when it is random, otherwise an odd-supported {0,1} companion.
    AnyField y = (c.field.kind == "edge-random" || c.field.kind == "sparsified")
                     ? make_field(c.field, d, rng)
                     : AnyField(random_integer_field(complex, odd_degrees(complex->dimension()), rng));
    const std::vector<Check> checks = verification_suite(d, x, y, c.tol);

    SpectralReport report = is_exact(x) ? spectral_report(cartan(d, std::get<ExactField>(x)), c.tol)
                                        : spectral_report(cartan(to_real(d), std::get<RealField>(x)), c.tol);
    json data = {{"complex", io::complex_to_json(*complex)},
                 {"exact", is_exact(x) && is_exact(y)},
                 {"field_support", std::visit([](const auto& f) { return f.support; }, x)},
                 {"classical_betti", classical_betti(d)},
                 {"report", io::spectral_report_to_json(report)}};
    emit(c, envelope(c, checks, data), out);
    return all_required_pass(checks) ? kExitOk : kExitCheckFailed;
}

int cmd_evolve(const RunConfig& c, std::ostream& out)
{
    const ComplexPtr complex = share(load_or_generate(c));
    const ExactOperator d = exterior_derivative(complex);
    Rng rng = Rng::substream(c.seed, 1);
    const AnyField field = make_field(c.field, d, rng);
    const std::string name = operator_of(c);
    if (name != "DX" && name != "D") throw InvalidInput("evolve generates with --operator DX or D");
    const RealMatrix gen = named_operator(name, d, field);

    Rng init = Rng::substream(c.seed, 3);
    const auto n = static_cast<Eigen::Index>(complex->size());
    RealVector f0(n), ft0(n);
    for (Eigen::Index i = 0; i < n; ++i) f0(i) = init.uniform_real(-1.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) ft0(i) = init.uniform_real(-1.0, 1.0);
    const double h = c.time / c.steps;
    const auto traj = wave_trajectory(wave_pack(f0, ft0, gen), gen, h, c.steps);

    if (format_of(c) == Format::csv) {
        std::string text = "t";
        for (Eigen::Index i = 0; i < n; ++i) text += ",re" + std::to_string(i) + ",im" + std::to_string(i);
        text += "\n";
        for (const auto& s : traj) {
            text += io::format_number(s.t);
            for (Eigen::Index i = 0; i < n; ++i)
                text += "," + io::format_number(s.psi(i).real()) + "," + io::format_number(s.psi(i).imag());
            text += "\n";
        }
        emit(c, text, out);
        return kExitOk;
    }

    std::vector<double> norms;
    std::vector<RealVector> samples;
    for (const auto& s : traj) {
        norms.push_back(s.psi.norm());
        samples.push_back(s.psi.real());
    }
    std::vector<Check> checks;
    const double residual = samples.size() >= 3 ? wave_residual_check(samples, h, gen * gen) : 0.0;
    checks.push_back({"wave_equation_fd_residual", true, residual, "second-difference residual, O(h^2)", false});
    if ((gen - gen.transpose()).cwiseAbs().maxCoeff() == 0.0) {
        double drift = 0.0;
        for (double v : norms) drift = std::max(drift, std::abs(v - norms.front()));
        checks.push_back({"norm_conserved", drift <= 1e-9 * std::max(1.0, norms.front()), drift, ""});
    }
    json data = {{"operator", name},
                 {"h", h},
                 {"discarded_velocity", traj.front().discarded_velocity},
                 {"norms", norms},
                 {"final_psi", io::matrix_to_json(ComplexMatrix(traj.back().psi))}};
    emit(c, envelope(c, checks, data), out);
    return all_required_pass(checks) ? kExitOk : kExitCheckFailed;
}

int cmd_deform(const RunConfig& c, std::ostream& out)
{
    const ComplexPtr complex = share(load_or_generate(c));
    const ExactOperator d = exterior_derivative(complex);
    Rng rng = Rng::substream(c.seed, 1);
    const RealField field = real_of(make_field(c.field, d, rng));
    const RealOperator DX{to_real(d).matrix + field.matrix(), complex, GradingAction::mixed};

    DeformationOptions opts;
    opts.steps = c.steps;
    opts.total_time = c.time;
    opts.mode = c.consistent ? StageMode::consistent : StageMode::frozen;
    const DeformationTrajectory t = run_deformation(DX, opts);
    const std::vector<double> v = t.u_series.size() >= 2 ? inflation_series(t.u_series, c.steps) : std::vector<double>{};

    if (format_of(c) == Format::csv) {
        emit(c, io::inflation_csv(t.u_series, v), out);
        return t.aborted ? kExitCheckFailed : kExitOk;
    }

    const auto& g = t.diagnostics;
    std::vector<Check> checks;
    checks.push_back({"run_completed", !t.aborted, 0.0, t.error});
    checks.push_back({"d_squared_small", g.max_d_squared <= 1e-6, g.max_d_squared, ""});
    checks.push_back({"cohomology_preserved", g.ranks_preserved, 0.0, ""});
    Check iso{"isospectral", g.spectral_drift <= 1e-5, g.spectral_drift, ""};
    if (c.field.kind != "adjoint") {
        iso.required = false;
        iso.note = "isospectrality is only expected for iX = d*";
    }
    checks.push_back(iso);
    json data = {{"steps", t.steps},
                 {"dt", t.dt},
                 {"aborted", t.aborted},
                 {"max_d_squared", g.max_d_squared},
                 {"final_d_squared", g.final_d_squared},
                 {"final_e_squared", g.final_e_squared},
                 {"spectrum_start", io::spectrum_to_json(g.spectrum_start)},
                 {"spectrum_end", io::spectrum_to_json(g.spectrum_end)},
                 {"spectral_drift", g.spectral_drift},
                 {"ranks_start", g.ranks_start},
                 {"ranks_end", g.ranks_end},
                 {"betti_start", g.betti_start},
                 {"betti_end", g.betti_end},
                 {"d_change", g.d_change},
                 {"u_series", t.u_series},
                 {"v_series", v}};
    emit(c, envelope(c, checks, data), out);
    return all_required_pass(checks) ? kExitOk : kExitCheckFailed;
}

int cmd_survey(const RunConfig& c, std::ostream& out)
{
    require_json(c);
    std::optional<Complex> fixed;
    if (c.complex_path) fixed = io::load_complex(*c.complex_path);
    const SurveyResult r = survey(c.trials, c.n, c.m, c.field, c.seed, fixed, c.threads);
    long total = 0;
    for (const auto& [value, count] : r.value_range_histogram) total += count;
    std::vector<Check> checks{{"histogram_total_consistent", total == r.eigenvalue_count, 0.0, ""},
                              {"all_trials_completed", r.failed_trials == 0, static_cast<double>(r.failed_trials), ""}};
    emit(c, envelope(c, checks, survey_to_json(r)), out);
    return all_required_pass(checks) ? kExitOk : kExitCheckFailed;
}

}  // namespace

RunConfig parse_arguments(int argc, const char* const* argv)
{
    CLI::App app{"cartan_cli"};
    Args a;
    configure(app, a);
    app.parse(argc, argv);
    RunConfig c = finish(std::move(a));
    validate(c);
    return c;
}

void validate(const RunConfig& c)
{
    if (!kCommands.count(c.command)) throw InvalidInput("unknown command '" + c.command + "'");
    if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw InvalidInput("--tol must be positive");
    if (!(c.field.p >= 0.0 && c.field.p <= 1.0)) throw InvalidInput("--p must lie in [0, 1]");
    if (!kFieldKinds.count(c.field.kind)) throw InvalidInput("unknown field kind '" + c.field.kind + "'");
    if (c.field.kind == "file" && c.field.path.empty()) throw InvalidInput("--field file:<path> needs a path");
    parse_support(c.field.support, 16);
    if (c.steps < 1) throw InvalidInput("--steps must be >= 1");
    if (!(c.time > 0.0) || !std::isfinite(c.time)) throw InvalidInput("--time must be positive");
    if (c.trials < 1) throw InvalidInput("--trials must be >= 1");
    if (c.n < 1 || c.m < 1) throw InvalidInput("--n and --m must be >= 1");
    if (c.threads < 0) throw InvalidInput("--threads must be >= 0");
    if (!c.op.empty() && !kOperators.count(c.op)) throw InvalidInput("unknown operator '" + c.op + "'");
    if (c.format == Format::csv && c.command != "spectrum" && c.command != "evolve" && c.command != "deform")
        throw InvalidInput(c.command + " only writes JSON");
}

Complex load_or_generate(const RunConfig& c)
{
    if (c.complex_path) return io::load_complex(*c.complex_path);
    return random_complex(c.n, c.m, c.seed);
}

AnyField make_field(const FieldSpec& spec, const ExactOperator& d, Rng& rng)
{
    const ComplexPtr& complex = d.complex;
    if (spec.kind == "adjoint") return adjoint_field(d);
    if (spec.kind == "zero") return zero_field(complex);
    if (spec.kind == "deterministic") return deterministic_field(d);
    if (spec.kind == "sparsified") return sparsified_field(d, spec.p, rng);
    const DegreeSet support = parse_support(spec.support, complex->dimension());
    if (spec.kind == "edge-random") {
        if (spec.integer_coeffs) return random_integer_field(complex, support, rng);
        return random_real_field(complex, support, rng);
    }
    if (spec.kind == "file") {
        const io::FieldDescription f = io::field_from_json(json::parse(io::read_file(spec.path)));
        if (f.matrix) {
            if (auto exact = io::int_matrix_from_json(*f.matrix)) return field_from_matrix(complex, std::move(*exact));
            return field_from_matrix(complex, io::real_matrix_from_json(*f.matrix));
        }
        const DegreeSet s = f.support.value_or(support);
        if (f.integer) {
            std::map<Simplex, std::int64_t> coeffs;
            for (const auto& [edge, value] : f.edges) coeffs[edge] = static_cast<std::int64_t>(value);
            return build_edge_field(complex, coeffs, s, f.mode);
        }
        return build_edge_field(complex, f.edges, s, f.mode);
    }
    throw InvalidInput("unknown field kind '" + spec.kind + "'");
}

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    (void)err;
    if (c.command == "gen") return cmd_gen(c, out);
    if (c.command == "whitney") return cmd_whitney(c, out);
    if (c.command == "operators") return cmd_operators(c, out);
    if (c.command == "spectrum") return cmd_spectrum(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "evolve") return cmd_evolve(c, out);
    if (c.command == "deform") return cmd_deform(c, out);
    if (c.command == "survey") return cmd_survey(c, out);
    throw InvalidInput("unknown command '" + c.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"cartan_cli: vector-field calculus on simplicial complexes"};
    Args a;
    configure(app, a);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    try {
        RunConfig c = finish(std::move(a));
        validate(c);
        return run_command(c, out, err);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArithmeticOverflow& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace cartan::cli
