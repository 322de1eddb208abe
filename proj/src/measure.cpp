#include "urnlift/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace urnlift {

namespace {

// Signed updates may leave a weight epsilon below zero from cancellation;
// anything in [-1e-12, 0] clamps to zero, anything lower is a real violation.
constexpr double kNegativeTolerance = -1e-12;

bool valid_payload(const Payload& p, const ColourSpace& space) {
  switch (p.kind()) {
    case Payload::Kind::Atom:
      return colour_in_space(p.atom_colour(), space);
    case Payload::Kind::Continuous:
      return space.kind() == ColourSpace::Kind::UnitInterval;
    case Payload::Kind::ProductLambda:
      return space.is_product() && valid_payload(p.inner(), space.base());
  }
  return false;
}

std::string describe_payload(const Payload& p) {
  switch (p.kind()) {
    case Payload::Kind::Atom:
      return "atom " + p.atom_colour().describe();
    case Payload::Kind::Continuous:
      return family_name(p.family());
    case Payload::Kind::ProductLambda:
      return describe_payload(p.inner()) + " x lambda";
  }
  return "?";
}

bool is_atomlike(const Payload& p) {
  const Payload* q = &p;
  while (q->kind() == Payload::Kind::ProductLambda) q = &q->inner();
  return q->kind() == Payload::Kind::Atom;
}

}  // namespace

const char* family_name(ContinuousFamily f) {
  switch (f) {
    case ContinuousFamily::Uniform01:
      return "uniform";
  }
  return "?";
}

Payload Payload::atom(Colour c) { return Payload(Kind::Atom, std::move(c)); }

Payload Payload::continuous(ContinuousFamily family, std::vector<double> params) {
  if (family == ContinuousFamily::Uniform01 && !params.empty())
    throw ConfigError("uniform payload takes no parameters");
  return Payload(Kind::Continuous, ContinuousRep{family, std::move(params)});
}

Payload Payload::product_lambda(Payload inner) {
  if (inner.kind() == Kind::ProductLambda)
    throw ConfigError("nested product_lambda payloads are not supported");
  return Payload(Kind::ProductLambda, std::make_shared<const Payload>(std::move(inner)));
}

const Colour& Payload::atom_colour() const {
  if (kind_ != Kind::Atom) throw SpaceMismatch("atom_colour() on a non-atom payload");
  return std::get<Colour>(rep_);
}

ContinuousFamily Payload::family() const {
  if (kind_ != Kind::Continuous) throw SpaceMismatch("family() on a non-continuous payload");
  return std::get<ContinuousRep>(rep_).family;
}

const std::vector<double>& Payload::family_params() const {
  if (kind_ != Kind::Continuous) throw SpaceMismatch("family_params() on a non-continuous payload");
  return std::get<ContinuousRep>(rep_).params;
}

const Payload& Payload::inner() const {
  if (kind_ != Kind::ProductLambda) throw SpaceMismatch("inner() on a non-product payload");
  return *std::get<std::shared_ptr<const Payload>>(rep_);
}

bool operator==(const Payload& a, const Payload& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Payload::Kind::Atom:
      return std::get<Colour>(a.rep_) == std::get<Colour>(b.rep_);
    case Payload::Kind::Continuous: {
      const auto& ra = std::get<Payload::ContinuousRep>(a.rep_);
      const auto& rb = std::get<Payload::ContinuousRep>(b.rep_);
      if (ra.family != rb.family || ra.params.size() != rb.params.size()) return false;
      for (std::size_t i = 0; i < ra.params.size(); ++i) {
        std::uint64_t xa, xb;
        std::memcpy(&xa, &ra.params[i], sizeof xa);
        std::memcpy(&xb, &rb.params[i], sizeof xb);
        if (xa != xb) return false;
      }
      return true;
    }
    case Payload::Kind::ProductLambda:
      return *std::get<std::shared_ptr<const Payload>>(a.rep_) ==
             *std::get<std::shared_ptr<const Payload>>(b.rep_);
  }
  return false;
}

FiniteMeasure::FiniteMeasure(ColourSpace space, std::vector<Component> components)
    : space_(std::move(space)) {
  components_.reserve(components.size());
  for (auto& c : components) {
    if (!std::isfinite(c.weight)) throw ConfigError("component weight must be finite");
    if (c.weight <= 0.0) throw ConfigError("component weight must be positive");
    if (!valid_payload(c.payload, space_))
      throw SpaceMismatch("component payload does not live on " + space_.describe());
    auto it = std::find_if(components_.begin(), components_.end(),
                           [&](const Component& have) { return have.payload == c.payload; });
    if (it != components_.end()) {
      it->weight += c.weight;
    } else {
      components_.push_back(std::move(c));
    }
  }
  total_mass_ = 0.0;
  for (const auto& c : components_) total_mass_ += c.weight;
}

SignedAtomicMeasure::SignedAtomicMeasure(ColourSpace space,
                                         std::vector<std::pair<Colour, double>> atoms)
    : space_(std::move(space)) {
  atoms_.reserve(atoms.size());
  for (auto& [c, w] : atoms) {
    if (!std::isfinite(w)) throw ConfigError("atom weight must be finite");
    if (!colour_in_space(c, space_))
      throw SpaceMismatch("atom colour does not live on " + space_.describe());
    auto it = std::find_if(atoms_.begin(), atoms_.end(),
                           [&](const auto& have) { return have.first == c; });
    if (it != atoms_.end()) {
      it->second += w;
    } else {
      atoms_.emplace_back(std::move(c), w);
    }
  }
  std::erase_if(atoms_, [](const auto& a) { return a.second == 0.0; });
  total_ = 0.0;
  for (const auto& a : atoms_) total_ += a.second;
}

double total_mass(const FiniteMeasure& mu) { return mu.total_mass(); }

FiniteMeasure add(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("adding measures on " + mu.space().describe() + " and " +
                        nu.space().describe());
  std::vector<Component> comps = mu.components();
  comps.insert(comps.end(), nu.components().begin(), nu.components().end());
  return FiniteMeasure(mu.space(), std::move(comps));
}

FiniteMeasure normalize(const FiniteMeasure& mu) {
  if (mu.is_zero()) throw ZeroMass("normalizing the zero measure");
  std::vector<Component> comps = mu.components();
  const double m = mu.total_mass();
  for (auto& c : comps) c.weight /= m;
  return FiniteMeasure(mu.space(), std::move(comps));
}

namespace {

Colour sample_payload(const Payload& p, UniformSource& source) {
  switch (p.kind()) {
    case Payload::Kind::Atom:
      return p.atom_colour();
    case Payload::Kind::Continuous:
      return Colour::real(source.next());
    case Payload::Kind::ProductLambda: {
      // Inner coordinate first, the lambda coordinate last: a lifted draw
      // consumes exactly the base draw's uniforms plus one trailing u.
      Colour base = sample_payload(p.inner(), source);
      double u = source.next();
      return Colour::pair(std::move(base), u);
    }
  }
  throw UrnError("unreachable payload kind");
}

}  // namespace

Colour sample(const FiniteMeasure& mu, UniformSource& source) {
  if (mu.is_zero()) throw ZeroMass("drawing from the zero measure");
  const double target = source.next() * mu.total_mass();
  double acc = 0.0;
  const auto& comps = mu.components();
  std::size_t pick = comps.size() - 1;  // guard against fp droop at u near 1
  for (std::size_t i = 0; i < comps.size(); ++i) {
    acc += comps[i].weight;
    if (target < acc) {
      pick = i;
      break;
    }
  }
  return sample_payload(comps[pick].payload, source);
}

namespace {

double payload_fraction(const Payload& p, const TestSet& set) {
  if (set.kind() == TestSet::Kind::Full) return 1.0;
  switch (p.kind()) {
    case Payload::Kind::Atom:
      return set.contains(p.atom_colour()) ? 1.0 : 0.0;
    case Payload::Kind::Continuous:
      switch (set.kind()) {
        case TestSet::Kind::Colours:
          return 0.0;  // points are null under a density
        case TestSet::Kind::Intervals:
          return set.lambda_length();
        default:
          throw UnsupportedTestSet("product test set against a base-space density");
      }
    case Payload::Kind::ProductLambda:
      switch (set.kind()) {
        case TestSet::Kind::Colours:
          return 0.0;  // diffuse in the lambda coordinate
        case TestSet::Kind::ProductSet: {
          double len = 0.0;
          for (const auto& iv : set.interval_values()) len += iv.hi - iv.lo;
          return payload_fraction(p.inner(), set.base()) * len;
        }
        default:
          throw UnsupportedTestSet("interval test set against a product-space component");
      }
  }
  throw UrnError("unreachable payload kind");
}

}  // namespace

double evaluate(const FiniteMeasure& mu, const TestSet& set) {
  double out = 0.0;
  for (const auto& c : mu.components()) out += c.weight * payload_fraction(c.payload, set);
  return out;
}

FiniteMeasure product_with_uniform(const FiniteMeasure& mu) {
  ColourSpace prod = ColourSpace::product(mu.space());
  std::vector<Component> comps;
  comps.reserve(mu.components().size());
  for (const auto& c : mu.components())
    comps.push_back({c.weight, Payload::product_lambda(c.payload)});
  return FiniteMeasure(std::move(prod), std::move(comps));
}

FiniteMeasure project(const FiniteMeasure& mu) {
  if (!mu.space().is_product())
    throw NotProductSpace("projecting a measure on " + mu.space().describe());
  std::vector<Component> comps;
  comps.reserve(mu.components().size());
  for (const auto& c : mu.components()) {
    switch (c.payload.kind()) {
      case Payload::Kind::ProductLambda:
        comps.push_back({c.weight, c.payload.inner()});
        break;
      case Payload::Kind::Atom:
        comps.push_back({c.weight, Payload::atom(c.payload.atom_colour().pair_base())});
        break;
      case Payload::Kind::Continuous:
        throw SpaceMismatch("continuous payload on a product space");
    }
  }
  return FiniteMeasure(mu.space().base(), std::move(comps));
}

namespace {

FiniteMeasure add_signed_impl(const FiniteMeasure& mu, const SignedAtomicMeasure& sigma,
                              bool times_lambda) {
  std::vector<Component> comps = mu.components();
  for (const auto& [colour, w] : sigma.atoms()) {
    Payload target = times_lambda ? Payload::product_lambda(Payload::atom(colour))
                                  : Payload::atom(colour);
    auto it = std::find_if(comps.begin(), comps.end(),
                           [&](const Component& c) { return c.payload == target; });
    if (it == comps.end()) {
      if (w < 0.0)
        throw NegativeMass("removing mass at " + colour.describe() +
                           " where the state has none");
      comps.push_back({w, std::move(target)});
    } else {
      it->weight += w;
    }
  }
  std::vector<Component> kept;
  kept.reserve(comps.size());
  for (auto& c : comps) {
    if (c.weight < kNegativeTolerance)
      throw NegativeMass("weight driven below zero at " + describe_payload(c.payload));
    if (c.weight > 0.0) kept.push_back(std::move(c));
  }
  return FiniteMeasure(mu.space(), std::move(kept));
}

}  // namespace

FiniteMeasure add_signed(const FiniteMeasure& mu, const SignedAtomicMeasure& sigma) {
  if (mu.space() != sigma.space())
    throw SpaceMismatch("signed update on " + sigma.space().describe() + " applied to " +
                        mu.space().describe());
  return add_signed_impl(mu, sigma, false);
}

FiniteMeasure add_signed_times_lambda(const FiniteMeasure& mu, const SignedAtomicMeasure& sigma) {
  if (!mu.space().is_product())
    throw NotProductSpace("sigma x lambda update on " + mu.space().describe());
  if (mu.space().base() != sigma.space())
    throw SpaceMismatch("sigma lives on " + sigma.space().describe() + ", state base is " +
                        mu.space().base().describe());
  return add_signed_impl(mu, sigma, true);
}

std::pair<FiniteMeasure, FiniteMeasure> jordan(const SignedAtomicMeasure& sigma) {
  std::vector<Component> pos, neg;
  for (const auto& [c, w] : sigma.atoms()) {
    if (w > 0.0) {
      pos.push_back({w, Payload::atom(c)});
    } else if (w < 0.0) {
      neg.push_back({-w, Payload::atom(c)});
    }
  }
  return {FiniteMeasure(sigma.space(), std::move(pos)),
          FiniteMeasure(sigma.space(), std::move(neg))};
}

namespace {

// Pairs up components by payload. Atom-like payloads missing on one side get
// weight 0; anything else missing is a structural mismatch.
std::vector<std::pair<double, double>> matched_weights(const FiniteMeasure& mu,
                                                       const FiniteMeasure& nu) {
  std::vector<std::pair<double, double>> out;
  std::vector<bool> seen(nu.components().size(), false);
  for (const auto& a : mu.components()) {
    double b_weight = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < nu.components().size(); ++j) {
      if (nu.components()[j].payload == a.payload) {
        b_weight = nu.components()[j].weight;
        seen[j] = true;
        found = true;
        break;
      }
    }
    if (!found && !is_atomlike(a.payload))
      throw Incomparable("component " + describe_payload(a.payload) +
                         " has no counterpart");
    out.emplace_back(a.weight, b_weight);
  }
  for (std::size_t j = 0; j < nu.components().size(); ++j) {
    if (seen[j]) continue;
    const auto& b = nu.components()[j];
    if (!is_atomlike(b.payload))
      throw Incomparable("component " + describe_payload(b.payload) +
                         " has no counterpart");
    out.emplace_back(0.0, b.weight);
  }
  return out;
}

}  // namespace

bool approx_equal(const FiniteMeasure& mu, const FiniteMeasure& nu, double tol) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("comparing measures on " + mu.space().describe() + " and " +
                        nu.space().describe());
  for (const auto& [a, b] : matched_weights(mu, nu)) {
    if (std::abs(a - b) > tol * std::max(std::abs(a), std::abs(b))) return false;
  }
  return true;
}

double max_weight_discrepancy(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("comparing measures on " + mu.space().describe() + " and " +
                        nu.space().describe());
  double worst = 0.0;
  for (const auto& [a, b] : matched_weights(mu, nu)) worst = std::max(worst, std::abs(a - b));
  return worst;
}

}  // namespace urnlift
