#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "urnlift/measure.hpp"

namespace urnlift {

/// A signed atomic measure sigma on a base space S, standing for the
/// replacement sigma x lambda on S x [0,1]. Removal urns need this: their
/// lifted replacements are signed and not atomic, but they stay of this
/// product form.
struct SignedLambdaReplacement {
  SignedAtomicMeasure base;
};

/// What one draw adds to the urn.
using Replacement = std::variant<FiniteMeasure, SignedAtomicMeasure, SignedLambdaReplacement>;

/// Signed total mass the replacement adds.
double replacement_total(const Replacement& r);

/// Colour -> replacement measure. eval must be a pure function of the colour.
class DeterministicKernel {
 public:
  using EvalFn = std::function<Replacement(const Colour&)>;

  DeterministicKernel(ColourSpace space, EvalFn eval,
                      std::optional<double> declared_balance = std::nullopt,
                      std::string name = "deterministic");

  const ColourSpace& space() const noexcept { return space_; }
  const std::string& name() const noexcept { return name_; }
  /// Set when every replacement has the same total mass a (balanced kernel).
  std::optional<double> declared_balance() const noexcept { return balance_; }

  Replacement eval(const Colour& s) const;

 private:
  ColourSpace space_;
  EvalFn eval_;
  std::optional<double> balance_;
  std::string name_;
};

/// (colour, u) -> replacement measure with u uniform on [0,1]; the random
/// replacement at s is eval(s, U). eval must be a pure function of (s, u);
/// kernels needing several uniforms split the one u (split_uniform).
class RandomKernel {
 public:
  using EvalFn = std::function<Replacement(const Colour&, double)>;

  RandomKernel(ColourSpace space, EvalFn eval,
               std::optional<double> declared_balance = std::nullopt,
               std::string name = "random");

  const ColourSpace& space() const noexcept { return space_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<double> declared_balance() const noexcept { return balance_; }

  Replacement eval(const Colour& s, double u) const;

 private:
  ColourSpace space_;
  EvalFn eval_;
  std::optional<double> balance_;
  std::string name_;
};

using Kernel = std::variant<DeterministicKernel, RandomKernel>;

const ColourSpace& kernel_space(const Kernel& k);
std::optional<double> kernel_balance(const Kernel& k);
const std::string& kernel_name(const Kernel& k);
bool is_random(const Kernel& k);

Replacement eval_deterministic(const DeterministicKernel& k, const Colour& s);
Replacement eval_random(const RandomKernel& k, const Colour& s, double u);

/// Constraint states must satisfy after every replacement.
struct AdmissibilityPolicy {
  enum class Kind {
    None,
    /// Every component is an atom (possibly behind product_lambda) with a
    /// nonnegative integer weight: the counting-measure urns of removal
    /// models.
    IntegerUrn,
    Custom,
  };
  Kind kind = Kind::None;
  std::function<bool(const FiniteMeasure&)> predicate;  // Custom only

  static AdmissibilityPolicy none() { return {}; }
  static AdmissibilityPolicy integer_urn() { return {Kind::IntegerUrn, nullptr}; }
  static AdmissibilityPolicy custom(std::function<bool(const FiniteMeasure&)> p) {
    return {Kind::Custom, std::move(p)};
  }
};

/// True when the measure is a sum of integer-weighted atoms (tolerance 1e-9
/// on the weights, product_lambda-wrapped atoms count as atoms).
bool is_integer_urn_state(const FiniteMeasure& mu);

/// Applies the replacement to the state: FiniteMeasure adds, SignedAtomicMeasure
/// goes through add_signed, SignedLambdaReplacement through
/// add_signed_times_lambda.
FiniteMeasure apply_replacement(const FiniteMeasure& mu, const Replacement& r);

struct AdmissibilityReport {
  bool ok = true;
  int checked = 0;
  int failure_index = -1;  // draw index of the first violation, -1 when ok
  std::string message;
};

/// Spot-check: draws `samples` colours from mu, applies the (sampled)
/// replacement to mu, and checks the result against the policy. A sampled
/// check, not a proof.
AdmissibilityReport check_admissibility(const Kernel& k, const FiniteMeasure& mu,
                                        const AdmissibilityPolicy& policy, int samples,
                                        UniformSource& source);

}  // namespace urnlift
