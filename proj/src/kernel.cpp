#include "urnlift/kernel.hpp"

#include <cmath>
#include <utility>

namespace urnlift {

double replacement_total(const Replacement& r) {
  struct V {
    double operator()(const FiniteMeasure& m) const { return m.total_mass(); }
    double operator()(const SignedAtomicMeasure& m) const { return m.total(); }
    double operator()(const SignedLambdaReplacement& m) const { return m.base.total(); }
  };
  return std::visit(V{}, r);
}

namespace {

const ColourSpace& replacement_space(const Replacement& r) {
  struct V {
    const ColourSpace& operator()(const FiniteMeasure& m) const { return m.space(); }
    const ColourSpace& operator()(const SignedAtomicMeasure& m) const { return m.space(); }
    const ColourSpace& operator()(const SignedLambdaReplacement& m) const {
      return m.base.space();
    }
  };
  return std::visit(V{}, r);
}

void check_replacement(const Replacement& r, const ColourSpace& space) {
  // A sigma x lambda replacement lives on product(space of sigma).
  if (std::holds_alternative<SignedLambdaReplacement>(r)) {
    if (!space.is_product() || space.base() != replacement_space(r))
      throw SpaceMismatch("sigma x lambda replacement does not match " + space.describe());
    return;
  }
  if (replacement_space(r) != space)
    throw SpaceMismatch("replacement lives on " + replacement_space(r).describe() +
                        ", kernel is on " + space.describe());
}

}  // namespace

DeterministicKernel::DeterministicKernel(ColourSpace space, EvalFn eval,
                                         std::optional<double> declared_balance,
                                         std::string name)
    : space_(std::move(space)), eval_(std::move(eval)), balance_(declared_balance),
      name_(std::move(name)) {
  if (!eval_) throw ConfigError("deterministic kernel needs an evaluation function");
}

Replacement DeterministicKernel::eval(const Colour& s) const {
  if (!colour_in_space(s, space_))
    throw SpaceMismatch("kernel evaluated at a colour outside " + space_.describe());
  Replacement r = eval_(s);
  check_replacement(r, space_);
  return r;
}

RandomKernel::RandomKernel(ColourSpace space, EvalFn eval, std::optional<double> declared_balance,
                           std::string name)
    : space_(std::move(space)), eval_(std::move(eval)), balance_(declared_balance),
      name_(std::move(name)) {
  if (!eval_) throw ConfigError("random kernel needs an evaluation function");
}

Replacement RandomKernel::eval(const Colour& s, double u) const {
  if (!colour_in_space(s, space_))
    throw SpaceMismatch("kernel evaluated at a colour outside " + space_.describe());
  if (!(u >= 0.0 && u <= 1.0)) throw SimulationError("kernel uniform outside [0,1]");
  Replacement r = eval_(s, u);
  check_replacement(r, space_);
  return r;
}

const ColourSpace& kernel_space(const Kernel& k) {
  return std::visit([](const auto& kk) -> const ColourSpace& { return kk.space(); }, k);
}

std::optional<double> kernel_balance(const Kernel& k) {
  return std::visit([](const auto& kk) { return kk.declared_balance(); }, k);
}

const std::string& kernel_name(const Kernel& k) {
  return std::visit([](const auto& kk) -> const std::string& { return kk.name(); }, k);
}

bool is_random(const Kernel& k) { return std::holds_alternative<RandomKernel>(k); }

Replacement eval_deterministic(const DeterministicKernel& k, const Colour& s) {
  return k.eval(s);
}

Replacement eval_random(const RandomKernel& k, const Colour& s, double u) {
  return k.eval(s, u);
}

bool is_integer_urn_state(const FiniteMeasure& mu) {
  for (const auto& c : mu.components()) {
    const Payload* p = &c.payload;
    while (p->kind() == Payload::Kind::ProductLambda) p = &p->inner();
    if (p->kind() != Payload::Kind::Atom) return false;
    if (std::abs(c.weight - std::round(c.weight)) > 1e-9) return false;
    if (c.weight < -1e-9) return false;
  }
  return true;
}

FiniteMeasure apply_replacement(const FiniteMeasure& mu, const Replacement& r) {
  struct V {
    const FiniteMeasure& mu;
    FiniteMeasure operator()(const FiniteMeasure& m) const { return add(mu, m); }
    FiniteMeasure operator()(const SignedAtomicMeasure& m) const { return add_signed(mu, m); }
    FiniteMeasure operator()(const SignedLambdaReplacement& m) const {
      return add_signed_times_lambda(mu, m.base);
    }
  };
  return std::visit(V{mu}, r);
}

AdmissibilityReport check_admissibility(const Kernel& k, const FiniteMeasure& mu,
                                        const AdmissibilityPolicy& policy, int samples,
                                        UniformSource& source) {
  AdmissibilityReport report;
  for (int i = 0; i < samples; ++i) {
    report.checked = i + 1;
    try {
      Colour s = sample(mu, source);
      Replacement r = is_random(k)
                          ? std::get<RandomKernel>(k).eval(s, source.next())
                          : std::get<DeterministicKernel>(k).eval(s);
      FiniteMeasure next = apply_replacement(mu, r);
      bool ok = true;
      switch (policy.kind) {
        case AdmissibilityPolicy::Kind::None:
          break;
        case AdmissibilityPolicy::Kind::IntegerUrn:
          ok = is_integer_urn_state(next);
          break;
        case AdmissibilityPolicy::Kind::Custom:
          ok = policy.predicate && policy.predicate(next);
          break;
      }
      if (!ok) {
        report.ok = false;
        report.failure_index = i;
        report.message = "replacement left the admissible set";
        return report;
      }
    } catch (const SimulationError& e) {
      report.ok = false;
      report.failure_index = i;
      report.message = e.what();
      return report;
    }
  }
  return report;
}

}  // namespace urnlift
