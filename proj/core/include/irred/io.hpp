#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "irred/commutant.hpp"
#include "irred/experiment.hpp"
#include "irred/linalg.hpp"
#include "irred/perturbation.hpp"

namespace irred {

/// 17 significant digits; always parses back as a floating value (and
/// bit-identically). Non-finite values render as "inf", "-inf" or "nan".
std::string format_number(double v);

/// `{"dim": n, "entries": [[re, im], ...]}`, row-major. Non-square matrices
/// use `"rows"` and `"cols"` in place of `"dim"`.
std::string matrix_to_json(const Matrix& m);
inline std::string matrix_to_json(const CMatrix& m) { return matrix_to_json(m.matrix()); }

/// Parses either layout. Throws FormatError.
Matrix matrix_from_json(std::string_view text);
/// Throws FormatError, or InvalidMatrix for non-square/non-finite input.
CMatrix cmatrix_from_json(std::string_view text);

/// `{"label": s, "generators": [<matrix>, ...]}`
std::string subalgebra_to_json(const SubalgebraSpec& spec);
SubalgebraSpec subalgebra_from_json(std::string_view text);

std::string commutant_to_json(const CommutantResult& res, bool with_basis);

/// Everything needed to re-verify a perturbation without re-running it.
std::string trace_to_json(const PerturbationTrace& trace);
PerturbationTrace trace_from_json(std::string_view text);

/// `{"dim", "trials", "epsilons", "seed", "ensemble", optional "tol"}`
ExperimentConfig config_from_json(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

} // namespace irred
