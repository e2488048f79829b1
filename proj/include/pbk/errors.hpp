#pragma once

#include <stdexcept>
#include <string>

namespace pbk {

/// Base class of every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter outside its documented range (m < 1, xi <= 0, negative index, ...).
struct parameter_error : error {
    using error::error;
};

/// Evaluation point outside the open domain of the potential.
struct domain_error : error {
    using error::error;
};

/// Metric positivity violated: phi' <= 0 or (r phi')' <= 0 at the point.
struct positivity_error : error {
    using error::error;
};

/// Monomial index whose weighted norm integral diverges.
/// The message names the inequality that failed.
struct divergent_index_error : error {
    using error::error;
};

/// Requested tolerance cannot be certified within the term or subdivision budget.
struct budget_error : error {
    using error::error;
};

/// Product-kernel combination over factor evaluations at different levels.
struct level_mismatch_error : error {
    using error::error;
};

/// Completeness probe ended without a verdict within the refinement budget.
struct inconclusive_error : error {
    using error::error;
};

} // namespace pbk
