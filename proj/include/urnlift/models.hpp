#pragma once

#include <cstdint>
#include <vector>

#include "urnlift/process.hpp"

namespace urnlift {

/// Two-colour urn on {0, 1}: drawing s adds a copies of s. X_0 has weights w.
/// Balanced with total a per step.
UrnSpec eggenberger_polya(double a, const std::vector<double>& w);

/// Urn on [0,1] started at theta * lambda; drawing s adds the atom delta_s.
/// The atomic part grows one unit per step; the normalized atom weights
/// approach a GEM(theta) sequence in creation order.
UrnSpec blackwell_macqueen(double theta);

/// Random two-colour kernel on {0, 1}: drawing s adds delta_s with
/// probability p, otherwise delta_{1-s}. p = 1 is the deterministic Polya
/// kernel, p = 0 the deterministic Friedman flip.
UrnSpec friedman_random(double p, const std::vector<double>& w = {1.0, 1.0});

struct LatticeStep {
  std::vector<std::int64_t> offset;
  double prob;
};

/// Urn on Z^dim started at delta_origin; drawing s adds delta_{s + xi} with
/// xi drawn from step_law. Probabilities must sum to 1.
UrnSpec lattice_walk(std::uint32_t dim, const std::vector<LatticeStep>& step_law);

/// Removal urn on {0..d-1}: drawing s removes one ball of colour s and adds
/// addition[s][j] balls of colour j. Entries nonnegative; x0 nonnegative
/// integers with positive total. States stay integer urns; the chain stops
/// when the urn empties.
UrnSpec without_replacement_urn(const std::vector<std::vector<std::int64_t>>& addition,
                                const std::vector<std::int64_t>& x0);

struct RandomRow {
  std::vector<std::int64_t> row;
  double prob;
};

/// Random removal urn: drawing s removes one ball of colour s and adds a row
/// drawn from law[s]. Each law[s] is a finite distribution over nonnegative
/// integer rows (probabilities summing to 1).
UrnSpec random_without_replacement(const std::vector<std::vector<RandomRow>>& law,
                                   const std::vector<std::int64_t>& x0);

}  // namespace urnlift
