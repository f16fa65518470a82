#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cartan/cli.hpp"
#include "cartan/error.hpp"

namespace cartan::cli {

namespace {

struct TrialOutcome {
    bool ok = false;
    bool integer = false;
    bool real = false;
    std::vector<long> rounded;
};

TrialOutcome run_trial(int trial, int n, int m, const FieldSpec& spec, std::uint64_t seed,
                       const std::optional<Complex>& fixed)
{
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(trial));
    const ComplexPtr complex = share(fixed ? *fixed : random_complex(n, m, rng.next()));
    const ExactOperator d = exterior_derivative(complex);
    const AnyField field = make_field(spec, d, rng);

    const RealMatrix LX = std::visit(
        [&](const auto& f) -> RealMatrix {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ExactField>)
                return cartan(d, f).LX.matrix.to_real();
            else
                return cartan(to_real(d), f).LX.matrix;
        },
        field);

    TrialOutcome out{true, true, true, {}};
    for (const auto& z : eigenvalues(LX).values) {
        out.real = out.real && std::abs(z.imag()) <= kSurveyTolerance;
        out.integer = out.integer && std::abs(z.imag()) <= kSurveyTolerance &&
                      std::abs(z.real() - std::round(z.real())) <= kSurveyTolerance;
        out.rounded.push_back(std::lround(z.real()));
    }
    return out;
}

}  // namespace

SurveyResult survey(int trials, int n, int m, const FieldSpec& field, std::uint64_t seed,
                    const std::optional<Complex>& fixed, int threads)
{
    if (trials < 1) throw InvalidInput("survey: trials must be >= 1");
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < trials; t = next++) {
            try {
                outcomes[static_cast<std::size_t>(t)] = run_trial(t, n, m, field, seed, fixed);
            } catch (const std::exception&) {
                outcomes[static_cast<std::size_t>(t)] = TrialOutcome{};
            }
        }
    };
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Reduce in trial order so the result is independent of scheduling.
    SurveyResult r;
    r.trials = trials;
    int integer = 0, real = 0, ok = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++r.failed_trials;
            continue;
        }
        ++ok;
        integer += o.integer;
        real += o.real;
        for (long v : o.rounded) ++r.value_range_histogram[v];
        r.eigenvalue_count += static_cast<long>(o.rounded.size());
    }
    if (ok > 0) {
        r.integer_spectrum_fraction = static_cast<double>(integer) / ok;
        r.real_spectrum_fraction = static_cast<double>(real) / ok;
    }
    return r;
}

nlohmann::json survey_to_json(const SurveyResult& r)
{
    // [value, count] pairs: a JSON object would sort "-1" after "10"
    nlohmann::json ordered = nlohmann::json::array();
    for (const auto& [value, count] : r.value_range_histogram) ordered.push_back({value, count});
    return {{"trials", r.trials},
            {"failed_trials", r.failed_trials},
            {"integer_spectrum_fraction", r.integer_spectrum_fraction},
            {"real_spectrum_fraction", r.real_spectrum_fraction},
            {"eigenvalue_count", r.eigenvalue_count},
            {"value_range_histogram", ordered}};
}

}  // namespace cartan::cli
