#include "irred/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "irred/commutant.hpp"
#include "irred/io.hpp"
#include "irred/perturbation.hpp"

namespace irred {

void ExperimentConfig::validate() const
{
    if (dim < 1)
        throw FormatError("experiment: dim must be at least 1");
    if (trials < 1)
        throw FormatError("experiment: trials must be at least 1");
    if (epsilons.empty())
        throw FormatError("experiment: epsilons must be nonempty");
    for (double e : epsilons)
        if (!(e > 0.0))
            throw FormatError("experiment: epsilons must be positive");
    if (!(tol > 0.0))
        throw FormatError("experiment: tol must be positive");
}

double ExperimentResult::success_fraction() const
{
    if (records.empty())
        return 0.0;
    const auto ok = std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return r.success; });
    return static_cast<double>(ok) / static_cast<double>(records.size());
}

double ExperimentResult::already_irreducible_fraction() const
{
    int trials = 0;
    int irreducible = 0;
    int last = -1;
    for (const auto& r : records) {
        if (r.trial == last)
            continue;
        last = r.trial;
        ++trials;
        irreducible += r.initially_irreducible ? 1 : 0;
    }
    return trials == 0 ? 0.0 : static_cast<double>(irreducible) / trials;
}

std::string ExperimentResult::csv() const
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.trial) + ',' + format_number(r.epsilon) + ',' + format_number(r.distance) + ',' +
               std::to_string(r.commutant_dim) + ',' + r.verdict + ',' + std::to_string(r.millis) + '\n';
    }
    return out;
}

std::string ExperimentResult::summary() const
{
    std::ostringstream s;
    s << "rows " << records.size() << ", success fraction " << format_number(success_fraction())
      << ", already irreducible fraction " << format_number(already_irreducible_fraction());
    return s.str();
}

ExperimentResult run_density_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentResult result;
    result.records.reserve(static_cast<std::size_t>(cfg.trials) * cfg.epsilons.size());

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
        const CMatrix t = sample_matrix(cfg.ensemble, cfg.dim, seed);
        const double norm = operator_norm(t);
        const CommutantResult initial = commutant_basis(t, cfg.tol);
        const bool initially_irreducible =
            initial.verdict == Verdict::Irreducible && initial.singular_value_margin > 10.0;

        for (double rel : cfg.epsilons) {
            TrialRecord rec;
            rec.trial = trial;
            rec.epsilon = rel;
            rec.abs_epsilon = rel * (norm > 0.0 ? norm : 1.0);
            rec.initially_irreducible = initially_irreducible;
            rec.initial_margin = initial.singular_value_margin;

            const auto start = std::chrono::steady_clock::now();
            try {
                const PerturbationTrace trace = perturb_to_irreducible(t, rec.abs_epsilon, seed, cfg.tol, initial);
                const TraceReport report = verify_trace(trace);
                rec.distance = report.checks.back().measured;
                rec.commutant_dim = report.certificate_dimension;
                rec.verdict = std::string(to_string(report.certificate_verdict));
                rec.success = report.all_pass() && rec.distance < rec.abs_epsilon;
            } catch (const CertificateFailed&) {
                rec.verdict = "CertificateFailed";
                rec.distance = std::numeric_limits<double>::quiet_NaN();
                rec.success = false;
            }
            rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                             .count();
            result.records.push_back(std::move(rec));
        }
    }
    return result;
}

} // namespace irred
