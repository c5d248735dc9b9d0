#include "cli.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "irred/commutant.hpp"
#include "irred/experiment.hpp"
#include "irred/io.hpp"
#include "irred/perturbation.hpp"
#include "irred/rosenblum.hpp"

namespace irred::cli {

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kBorderline = 2;

int verdict_code(Verdict v) { return v == Verdict::Borderline ? kBorderline : kOk; }

struct PerturbArgs {
    std::string input;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    std::string trace;
    double tol = kDefaultTol;
};

int run_perturb(const PerturbArgs& a, std::ostream& out)
{
    const CMatrix t = cmatrix_from_json(read_text(a.input));
    const PerturbationTrace trace = perturb_to_irreducible(t, a.epsilon, a.seed, a.tol);
    if (!a.output.empty())
        write_text(a.output, matrix_to_json(trace.t3));
    if (!a.trace.empty())
        write_text(a.trace, trace_to_json(trace));
    out << "verdict: " << to_string(trace.certificate.verdict) << '\n'
        << "distance: " << format_number(trace.bounds.t_t3) << '\n'
        << "epsilon: " << format_number(trace.epsilon) << '\n'
        << "delta: " << format_number(trace.delta) << '\n'
        << "shortcut: " << (trace.shortcut ? "true" : "false") << '\n';
    return kOk;
}

int run_check(const std::string& input, double tol, std::ostream& out)
{
    const CMatrix s = cmatrix_from_json(read_text(input));
    const CommutantResult res = commutant_basis(s, tol);
    out << "verdict: " << to_string(res.verdict) << '\n'
        << "dimension: " << res.dimension << '\n'
        << "margin: " << format_number(res.singular_value_margin) << '\n';
    return verdict_code(res.verdict);
}

int run_commutant(const std::string& input, const std::string& relative, double tol, std::ostream& out)
{
    const CMatrix s = cmatrix_from_json(read_text(input));
    const CommutantResult res = relative.empty()
                                    ? commutant_basis(s, tol)
                                    : relative_commutant(s, subalgebra_from_json(read_text(relative)), tol);
    out << commutant_to_json(res, true);
    return verdict_code(res.verdict);
}

int run_reduce(const std::string& input, double tol, std::ostream& out)
{
    const CMatrix s = cmatrix_from_json(read_text(input));
    const Verdict v = is_irreducible(s, tol);
    const std::optional<Projection> p = reducing_projection(s, tol);
    if (p)
        out << matrix_to_json(p->matrix);
    else
        out << "irreducible\n";
    return verdict_code(v);
}

int run_sylvester(const std::string& a, const std::string& b, const std::string& c, double tol, std::ostream& out)
{
    const SylvesterProblem p = make_sylvester_problem(cmatrix_from_json(read_text(a)), cmatrix_from_json(read_text(b)),
                                                      matrix_from_json(read_text(c)));
    const Matrix x = sylvester_solve(p, tol);
    out << matrix_to_json(x);
    out << "residual: " << format_number(sylvester_residual(p, x))
        << " bound: " << format_number(sylvester_residual_bound(p, x, tol))
        << " spectral_gap: " << format_number(p.spectral_gap) << '\n';
    return kOk;
}

int run_density(const std::string& config, const std::string& csv, std::ostream& out)
{
    const ExperimentConfig cfg = config_from_json(read_text(config));
    const ExperimentResult res = run_density_experiment(cfg);
    write_text(csv, res.csv());
    out << res.summary() << '\n';
    return res.success_fraction() == 1.0 ? kOk : kError;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"irred: irreducible perturbations and commutants of complex matrices", "irred"};
    app.require_subcommand(1);

    PerturbArgs perturb;
    auto* perturb_cmd = app.add_subcommand("perturb", "Perturb a matrix into an irreducible one within epsilon");
    perturb_cmd->add_option("--input", perturb.input, "Matrix JSON")->required();
    perturb_cmd->add_option("--epsilon", perturb.epsilon, "Absolute operator-norm radius")->required()
        ->check(CLI::PositiveNumber);
    perturb_cmd->add_option("--seed", perturb.seed, "Seed recorded in the trace");
    perturb_cmd->add_option("--output", perturb.output, "Where to write T3 as matrix JSON");
    perturb_cmd->add_option("--trace", perturb.trace, "Where to write the trace JSON");
    perturb_cmd->add_option("--tol", perturb.tol, "Relative kernel tolerance")->check(CLI::PositiveNumber);

    std::string input;
    double tol = kDefaultTol;
    auto* check_cmd = app.add_subcommand("check", "Irreducibility verdict and commutant dimension");
    check_cmd->add_option("--input", input, "Matrix JSON")->required();
    check_cmd->add_option("--tol", tol, "Relative kernel tolerance")->check(CLI::PositiveNumber);

    std::string relative;
    auto* commutant_cmd = app.add_subcommand("commutant", "Basis of the (relative) commutant");
    commutant_cmd->add_option("--input", input, "Matrix JSON")->required();
    commutant_cmd->add_option("--relative", relative, "Subalgebra JSON restricting the commutant");
    commutant_cmd->add_option("--tol", tol, "Relative kernel tolerance")->check(CLI::PositiveNumber);

    auto* reduce_cmd = app.add_subcommand("reduce", "Print a nontrivial reducing projection, or 'irreducible'");
    reduce_cmd->add_option("--input", input, "Matrix JSON")->required();
    reduce_cmd->add_option("--tol", tol, "Relative kernel tolerance")->check(CLI::PositiveNumber);

    std::string sa, sb, sc;
    auto* sylvester_cmd = app.add_subcommand("sylvester", "Solve AX - XB = C");
    sylvester_cmd->add_option("--a", sa, "Matrix JSON for A")->required();
    sylvester_cmd->add_option("--b", sb, "Matrix JSON for B")->required();
    sylvester_cmd->add_option("--c", sc, "Matrix JSON for C (rows/cols layout allowed)")->required();
    sylvester_cmd->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);

    std::string config, csv;
    auto* experiment_cmd = app.add_subcommand("experiment", "Run an experiment");
    experiment_cmd->require_subcommand(1);
    auto* density_cmd = experiment_cmd->add_subcommand("density", "Density experiment over random ensembles");
    density_cmd->add_option("--config", config, "Experiment config JSON")->required();
    density_cmd->add_option("--out", csv, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kError;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kError;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kError;
    }

    try {
        if (*perturb_cmd)
            return run_perturb(perturb, out);
        if (*check_cmd)
            return run_check(input, tol, out);
        if (*commutant_cmd)
            return run_commutant(input, relative, tol, out);
        if (*reduce_cmd)
            return run_reduce(input, tol, out);
        if (*sylvester_cmd)
            return run_sylvester(sa, sb, sc, tol, out);
        if (*density_cmd)
            return run_density(config, csv, out);
    } catch (const std::exception& e) {
        err << "irred: " << e.what() << '\n';
        return kError;
    }
    err << app.help();
    return kError;
}

} // namespace irred::cli
