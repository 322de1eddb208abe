#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "urnlift/rng.hpp"
#include "urnlift/space.hpp"

namespace urnlift {

enum class ContinuousFamily { Uniform01 };

const char* family_name(ContinuousFamily f);

/// What one weighted component of a measure is spread over: a single colour,
/// a continuous distribution on the space, or (on a product space) an inner
/// payload times Lebesgue measure on the [0,1] coordinate.
class Payload {
 public:
  enum class Kind { Atom, Continuous, ProductLambda };

  static Payload atom(Colour c);
  static Payload continuous(ContinuousFamily family, std::vector<double> params = {});
  static Payload product_lambda(Payload inner);

  Kind kind() const noexcept { return kind_; }
  const Colour& atom_colour() const;
  ContinuousFamily family() const;
  const std::vector<double>& family_params() const;
  const Payload& inner() const;

  /// Structural identity; atom colours compare bitwise on doubles. Components
  /// with equal payloads are the same component and their weights merge.
  friend bool operator==(const Payload& a, const Payload& b);
  friend bool operator!=(const Payload& a, const Payload& b) { return !(a == b); }

 private:
  struct ContinuousRep {
    ContinuousFamily family;
    std::vector<double> params;
  };
  Payload(Kind kind, std::variant<Colour, ContinuousRep, std::shared_ptr<const Payload>> rep)
      : kind_(kind), rep_(std::move(rep)) {}

  Kind kind_;
  std::variant<Colour, ContinuousRep, std::shared_ptr<const Payload>> rep_;
};

struct Component {
  double weight;
  Payload payload;
};

/// Finite nonnegative measure, stored as a canonical component list: weights
/// strictly positive, payloads pairwise distinct (equal payloads merged, first
/// occurrence keeps its position). The empty list is the zero measure.
class FiniteMeasure {
 public:
  explicit FiniteMeasure(ColourSpace space) : space_(std::move(space)) {}
  FiniteMeasure(ColourSpace space, std::vector<Component> components);

  const ColourSpace& space() const noexcept { return space_; }
  const std::vector<Component>& components() const noexcept { return components_; }
  double total_mass() const noexcept { return total_mass_; }
  bool is_zero() const noexcept { return components_.empty(); }

 private:
  ColourSpace space_;
  std::vector<Component> components_;
  double total_mass_ = 0.0;
};

/// Signed measure with finitely many atoms, canonicalized the same way
/// (atoms at equal colours merged, exact zeros dropped).
class SignedAtomicMeasure {
 public:
  explicit SignedAtomicMeasure(ColourSpace space) : space_(std::move(space)) {}
  SignedAtomicMeasure(ColourSpace space, std::vector<std::pair<Colour, double>> atoms);

  const ColourSpace& space() const noexcept { return space_; }
  const std::vector<std::pair<Colour, double>>& atoms() const noexcept { return atoms_; }
  /// Signed total sigma(S).
  double total() const noexcept { return total_; }

 private:
  ColourSpace space_;
  std::vector<std::pair<Colour, double>> atoms_;
  double total_ = 0.0;
};

double total_mass(const FiniteMeasure& mu);

/// mu + nu on a shared space, component lists merged canonically.
FiniteMeasure add(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// mu / mu(S); throws ZeroMass on the zero measure.
FiniteMeasure normalize(const FiniteMeasure& mu);

/// One draw from mu/mu(S). Consumes one uniform to select a component by
/// weight, then whatever the payload itself needs: atoms nothing, Uniform01
/// one, product_lambda the inner payload's count plus one trailing uniform
/// for the [0,1] coordinate. The trailing position is what lets a lifted
/// draw consume exactly the base draw's uniforms plus one.
Colour sample(const FiniteMeasure& mu, UniformSource& source);

/// mu(B) for a test set the stored payloads can integrate.
double evaluate(const FiniteMeasure& mu, const TestSet& set);

/// mu x lambda on space() x [0,1]: every payload wrapped in product_lambda,
/// weights unchanged.
FiniteMeasure product_with_uniform(const FiniteMeasure& mu);

/// Pushforward along (s, u) -> s. Inverse of product_with_uniform on
/// product-form measures; Pair atoms project to their base colour.
FiniteMeasure project(const FiniteMeasure& mu);

/// mu + sigma with sigma signed atomic on the same space. A negative atom at
/// a colour mu has no atom at, or a resulting weight below -1e-12, throws
/// NegativeMass; weights in [-1e-12, 0] are rounding noise and clamp to zero.
FiniteMeasure add_signed(const FiniteMeasure& mu, const SignedAtomicMeasure& sigma);

/// mu + sigma x lambda for product-space states whose components are all
/// product_lambda(atom c): the atom of sigma at c adds to that component,
/// with add_signed's NegativeMass and clamping rules. sigma lives on the base
/// space.
FiniteMeasure add_signed_times_lambda(const FiniteMeasure& mu, const SignedAtomicMeasure& sigma);

/// Jordan decomposition (sigma+, sigma-), both nonnegative atomic.
std::pair<FiniteMeasure, FiniteMeasure> jordan(const SignedAtomicMeasure& sigma);

/// Componentwise comparison at relative tolerance tol (|a-b| <= tol*max(|a|,|b|)).
/// Purely atomic measures compare as atom maps (a missing atom is weight 0).
/// Measures carrying continuous or product payloads must match structurally;
/// a structural mismatch there throws Incomparable.
bool approx_equal(const FiniteMeasure& mu, const FiniteMeasure& nu, double tol);

/// Largest absolute weight difference over the union of components; missing
/// atoms count as weight 0, non-atomic structural mismatch throws Incomparable.
double max_weight_discrepancy(const FiniteMeasure& mu, const FiniteMeasure& nu);

}  // namespace urnlift
