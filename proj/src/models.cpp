#include "urnlift/models.hpp"

#include <cmath>
#include <string>

namespace urnlift {

namespace {

FiniteMeasure two_colour_x0(const ColourSpace& space, const std::vector<double>& w) {
  if (w.size() != 2) throw ConfigError("two-colour urn needs exactly two initial weights");
  std::vector<Component> comps;
  for (std::uint32_t i = 0; i < 2; ++i) {
    if (!(w[i] >= 0.0)) throw ConfigError("initial weights must be nonnegative");
    if (w[i] > 0.0) comps.push_back({w[i], Payload::atom(Colour::index(i))});
  }
  return FiniteMeasure(space, std::move(comps));
}

void check_prob_row(double sum) {
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("probabilities must sum to 1");
}

}  // namespace

UrnSpec eggenberger_polya(double a, const std::vector<double>& w) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("eggenberger_polya needs a > 0");
  ColourSpace space = ColourSpace::finite(2);
  DeterministicKernel kernel(
      space,
      [space, a](const Colour& s) {
        return Replacement{FiniteMeasure(space, {{a, Payload::atom(s)}})};
      },
      a, "eggenberger_polya");
  return UrnSpec(space, std::move(kernel), two_colour_x0(space, w));
}

UrnSpec blackwell_macqueen(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw ConfigError("blackwell_macqueen needs theta > 0");
  ColourSpace space = ColourSpace::unit_interval();
  DeterministicKernel kernel(
      space,
      [space](const Colour& s) {
        return Replacement{FiniteMeasure(space, {{1.0, Payload::atom(s)}})};
      },
      1.0, "blackwell_macqueen");
  FiniteMeasure x0(space, {{theta, Payload::continuous(ContinuousFamily::Uniform01)}});
  return UrnSpec(space, std::move(kernel), std::move(x0));
}

UrnSpec friedman_random(double p, const std::vector<double>& w) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("friedman_random needs p in [0,1]");
  ColourSpace space = ColourSpace::finite(2);
  RandomKernel kernel(
      space,
      [space, p](const Colour& s, double u) {
        // p = 1 must reinforce for every u, including the endpoint u = 1.
        const bool same = p >= 1.0 || u < p;
        const std::uint32_t drawn = std::get<Colour::Index>(s.rep()).k;
        const Colour target = Colour::index(same ? drawn : 1 - drawn);
        return Replacement{FiniteMeasure(space, {{1.0, Payload::atom(target)}})};
      },
      1.0, "friedman_random");
  return UrnSpec(space, std::move(kernel), two_colour_x0(space, w));
}

UrnSpec lattice_walk(std::uint32_t dim, const std::vector<LatticeStep>& step_law) {
  if (dim == 0) throw ConfigError("lattice_walk needs dim >= 1");
  if (step_law.empty()) throw ConfigError("lattice_walk needs a nonempty step law");
  double psum = 0.0;
  for (const auto& st : step_law) {
    if (st.offset.size() != dim) throw ConfigError("step offset dimension mismatch");
    if (!(st.prob >= 0.0)) throw ConfigError("step probabilities must be nonnegative");
    psum += st.prob;
  }
  check_prob_row(psum);
  ColourSpace space = ColourSpace::lattice(dim);
  std::vector<LatticeStep> law = step_law;
  RandomKernel kernel(
      space,
      [space, law](const Colour& s, double u) {
        const auto& here = std::get<Colour::Point>(s.rep()).coords;
        double acc = 0.0;
        std::size_t pick = law.size() - 1;
        for (std::size_t i = 0; i < law.size(); ++i) {
          acc += law[i].prob;
          if (u < acc) {
            pick = i;
            break;
          }
        }
        std::vector<std::int64_t> coords = here;
        for (std::size_t d = 0; d < coords.size(); ++d) coords[d] += law[pick].offset[d];
        return Replacement{
            FiniteMeasure(space, {{1.0, Payload::atom(Colour::point(std::move(coords)))}})};
      },
      1.0, "lattice_walk");
  FiniteMeasure x0(space,
                   {{1.0, Payload::atom(Colour::point(std::vector<std::int64_t>(dim, 0)))}});
  return UrnSpec(space, std::move(kernel), std::move(x0));
}

namespace {

FiniteMeasure integer_x0(const ColourSpace& space, const std::vector<std::int64_t>& x0) {
  std::vector<Component> comps;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (x0[i] < 0) throw ConfigError("initial counts must be nonnegative");
    if (x0[i] > 0)
      comps.push_back({static_cast<double>(x0[i]),
                       Payload::atom(Colour::index(static_cast<std::uint32_t>(i)))});
  }
  return FiniteMeasure(space, std::move(comps));
}

SignedAtomicMeasure removal_row(const ColourSpace& space, std::uint32_t drawn,
                                const std::vector<std::int64_t>& row) {
  std::vector<std::pair<Colour, double>> atoms;
  atoms.reserve(row.size() + 1);
  for (std::size_t j = 0; j < row.size(); ++j)
    atoms.emplace_back(Colour::index(static_cast<std::uint32_t>(j)),
                       static_cast<double>(row[j]));
  atoms.emplace_back(Colour::index(drawn), -1.0);
  return SignedAtomicMeasure(space, std::move(atoms));
}

}  // namespace

UrnSpec without_replacement_urn(const std::vector<std::vector<std::int64_t>>& addition,
                                const std::vector<std::int64_t>& x0) {
  const std::size_t d = x0.size();
  if (d == 0) throw ConfigError("removal urn needs at least one colour");
  if (addition.size() != d) throw ConfigError("addition matrix must have one row per colour");
  std::optional<double> balance;
  bool balanced = true;
  for (const auto& row : addition) {
    if (row.size() != d) throw ConfigError("addition row length mismatch");
    std::int64_t sum = 0;
    for (auto v : row) {
      if (v < 0) throw ConfigError("addition entries must be nonnegative");
      sum += v;
    }
    if (!balance) {
      balance = static_cast<double>(sum);
    } else if (*balance != static_cast<double>(sum)) {
      balanced = false;
    }
  }
  ColourSpace space = ColourSpace::finite(static_cast<std::uint32_t>(d));
  auto rows = addition;
  DeterministicKernel kernel(
      space,
      [space, rows](const Colour& s) {
        const std::uint32_t drawn = std::get<Colour::Index>(s.rep()).k;
        return Replacement{removal_row(space, drawn, rows[drawn])};
      },
      balanced && balance ? std::optional<double>(*balance - 1.0) : std::nullopt,
      "without_replacement");
  return UrnSpec(space, std::move(kernel), integer_x0(space, x0),
                 AdmissibilityPolicy::integer_urn());
}

UrnSpec random_without_replacement(const std::vector<std::vector<RandomRow>>& law,
                                   const std::vector<std::int64_t>& x0) {
  const std::size_t d = x0.size();
  if (d == 0) throw ConfigError("removal urn needs at least one colour");
  if (law.size() != d) throw ConfigError("row law must have one entry per colour");
  std::optional<double> balance;
  bool balanced = true;
  for (const auto& rows : law) {
    if (rows.empty()) throw ConfigError("each colour needs at least one row");
    double psum = 0.0;
    for (const auto& rr : rows) {
      if (rr.row.size() != d) throw ConfigError("row length mismatch");
      std::int64_t sum = 0;
      for (auto v : rr.row) {
        if (v < 0) throw ConfigError("row entries must be nonnegative");
        sum += v;
      }
      if (!(rr.prob >= 0.0)) throw ConfigError("row probabilities must be nonnegative");
      psum += rr.prob;
      if (!balance) {
        balance = static_cast<double>(sum);
      } else if (*balance != static_cast<double>(sum)) {
        balanced = false;
      }
    }
    check_prob_row(psum);
  }
  ColourSpace space = ColourSpace::finite(static_cast<std::uint32_t>(d));
  auto table = law;
  RandomKernel kernel(
      space,
      [space, table](const Colour& s, double u) {
        const std::uint32_t drawn = std::get<Colour::Index>(s.rep()).k;
        const auto& rows = table[drawn];
        double acc = 0.0;
        std::size_t pick = rows.size() - 1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          acc += rows[i].prob;
          if (u < acc) {
            pick = i;
            break;
          }
        }
        return Replacement{removal_row(space, drawn, rows[pick].row)};
      },
      balanced && balance ? std::optional<double>(*balance - 1.0) : std::nullopt,
      "random_without_replacement");
  return UrnSpec(space, std::move(kernel), integer_x0(space, x0),
                 AdmissibilityPolicy::integer_urn());
}

}  // namespace urnlift
