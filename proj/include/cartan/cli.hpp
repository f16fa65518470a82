#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cartan/complex.hpp"
#include "cartan/spectral.hpp"
#include "cartan/vector_field.hpp"

namespace cartan::cli {

enum class Format { json, csv };

/// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct FieldSpec {
    /// adjoint | zero | deterministic | edge-random | sparsified | file
    std::string kind = "deterministic";
    std::string support = "odd";
    bool integer_coeffs = false;
    double p = 0.5;
    std::string path;  ///< for kind == "file"
};

struct RunConfig {
    std::string command;
    std::uint64_t seed = 1;
    int n = 6;
    int m = 10;
    std::optional<std::string> complex_path;
    std::string edges;  ///< whitney: "1-2,2-3"
    FieldSpec field;
    std::string op;  ///< d, iX, D, L, DX, LX; empty = LX (spectrum) or DX (evolve)
    int steps = 1000;
    double time = 2.0;
    double tol = kSpectrumTolerance;
    int trials = 100;
    bool consistent = false;
    int threads = 0;  ///< survey workers, 0 = hardware concurrency
    std::optional<std::string> out;
    std::optional<Format> format;
};

/// Parse argv into a config. Throws CLI::ParseError subclasses or InvalidInput.
RunConfig parse_arguments(int argc, const char* const* argv);

/// Rejects non-positive tolerances, p outside [0,1], unknown kinds and so on.
void validate(const RunConfig& config);

/// Parse and dispatch; writes the artifact to config.out or `out`, diagnostics to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

using AnyField = std::variant<ExactField, RealField>;

/// Complex named by the config: --complex file, else random_complex(n, m, seed).
Complex load_or_generate(const RunConfig& config);

/// Field named by the config; randomness comes from `rng`.
AnyField make_field(const FieldSpec& spec, const ExactOperator& d, Rng& rng);

/// Every structural and spectral invariant for one field (plus a second field for the bracket checks).
std::vector<Check> verification_suite(const ExactOperator& d, const AnyField& x, const AnyField& y, double tol);

bool all_required_pass(const std::vector<Check>& checks);

struct SurveyResult {
    int trials = 0;
    double integer_spectrum_fraction = 0.0;
    double real_spectrum_fraction = 0.0;
    /// Rounded real parts of all eigenvalues of L_X over all trials.
    std::map<long, long> value_range_histogram;
    long eigenvalue_count = 0;
    int failed_trials = 0;
};

/// Classification threshold for "integer" and "real" spectra.
inline constexpr double kSurveyTolerance = 1e-6;

/**
 * Independent trials, each with its own RNG substream (seed, trial). When
 * `fixed` is set every trial reuses that complex and only the field is
 * redrawn. Results do not depend on `threads`.
 */
SurveyResult survey(int trials, int n, int m, const FieldSpec& field, std::uint64_t seed,
                    const std::optional<Complex>& fixed = std::nullopt, int threads = 0);

nlohmann::json survey_to_json(const SurveyResult& r);

}  // namespace cartan::cli
