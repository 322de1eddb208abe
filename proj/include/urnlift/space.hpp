#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "urnlift/errors.hpp"

namespace urnlift {

/// Colour spaces the library understands. Product always means S x [0,1]
/// with Lebesgue measure on the second coordinate; that is the only product
/// the lift construction needs, so the type is kept closed.
class ColourSpace {
 public:
  enum class Kind { Finite, Lattice, UnitInterval, Product };

  static ColourSpace finite(std::uint32_t size);
  static ColourSpace lattice(std::uint32_t dim);
  static ColourSpace unit_interval();
  static ColourSpace product(ColourSpace base);

  Kind kind() const noexcept { return kind_; }
  /// Finite only: number of colours.
  std::uint32_t size() const;
  /// Lattice only: dimension.
  std::uint32_t dim() const;
  /// Product only: the base space.
  const ColourSpace& base() const;

  bool is_product() const noexcept { return kind_ == Kind::Product; }
  std::string describe() const;

  friend bool operator==(const ColourSpace& a, const ColourSpace& b);
  friend bool operator!=(const ColourSpace& a, const ColourSpace& b) { return !(a == b); }

 private:
  ColourSpace(Kind kind, std::uint32_t n, std::shared_ptr<const ColourSpace> base)
      : kind_(kind), n_(n), base_(std::move(base)) {}

  Kind kind_;
  std::uint32_t n_ = 0;
  std::shared_ptr<const ColourSpace> base_;
};

/// One point of a colour space. Doubles compare bitwise (exact equality);
/// colours produced by the same arithmetic are identical, which is what the
/// component-merging and coupling machinery rely on.
struct Colour {
  struct Index {
    std::uint32_t k;
  };
  struct Point {
    std::vector<std::int64_t> coords;
  };
  struct Real {
    double x;
  };
  struct Pair;  // base colour with a [0,1] coordinate attached

  using Rep = std::variant<Index, Point, Real, std::shared_ptr<const Pair>>;

  static Colour index(std::uint32_t k);
  static Colour point(std::vector<std::int64_t> coords);
  static Colour real(double x);
  static Colour pair(Colour base, double u);

  const Rep& rep() const noexcept { return rep_; }
  bool is_pair() const noexcept;
  /// Pair only.
  const Colour& pair_base() const;
  double pair_u() const;

  std::string describe() const;

  friend bool operator==(const Colour& a, const Colour& b);
  friend bool operator!=(const Colour& a, const Colour& b) { return !(a == b); }

 private:
  explicit Colour(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

struct Colour::Pair {
  Colour base;
  double u;
};

/// True when the colour is a valid point of the space (structural check;
/// Real coordinates must lie in [0,1]).
bool colour_in_space(const Colour& c, const ColourSpace& space);

/// Closed interval [lo, hi] inside [0,1].
struct Interval {
  double lo;
  double hi;
};

/// Measurable sets the evaluate() operation accepts. The family is the one
/// every supported measure can integrate exactly: everything, finite colour
/// lists, finite unions of intervals in [0,1], and base-set x interval-union
/// rectangles on product spaces.
class TestSet {
 public:
  enum class Kind { Full, Colours, Intervals, ProductSet };

  static TestSet full();
  static TestSet colours(std::vector<Colour> values);
  static TestSet intervals(std::vector<Interval> values);
  static TestSet product(TestSet base, std::vector<Interval> values);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Colour>& colour_values() const;
  const std::vector<Interval>& interval_values() const;
  const TestSet& base() const;

  /// Membership of an individual colour. Interval sets only make sense for
  /// Real colours, product sets for Pair colours; anything else throws
  /// UnsupportedTestSet.
  bool contains(const Colour& c) const;

  /// Total Lebesgue length of the interval union (intervals are normalized
  /// to a disjoint sorted union at construction).
  double lambda_length() const;

 private:
  TestSet(Kind kind, std::vector<Colour> cs, std::vector<Interval> iv,
          std::shared_ptr<const TestSet> base)
      : kind_(kind), colours_(std::move(cs)), intervals_(std::move(iv)), base_(std::move(base)) {}

  Kind kind_;
  std::vector<Colour> colours_;
  std::vector<Interval> intervals_;
  std::shared_ptr<const TestSet> base_;
};

}  // namespace urnlift
