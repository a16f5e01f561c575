#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wigner/ensembles.hpp"
#include "wigner/spectra.hpp"

namespace wigner::cli {

/// Runs one invocation; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double value);

/// Summaries of every sample, in parallel. An eigenvalue counts as zero when
/// |λ| ≤ relative_zero_tol·‖X‖.
std::vector<SpectralSummary> summarize_batch(const std::vector<HermitianSample>& samples, int K,
                                             double relative_zero_tol = 1e-8);

/// Rows (sample_index, k, empirical_moment, reference_moment, ks_distance,
/// atom_mass) for k = 1..K, with the header line. No timestamp.
std::string spectrum_csv(const std::vector<SpectralSummary>& summaries, const ReferenceLaw& law);

}  // namespace wigner::cli
