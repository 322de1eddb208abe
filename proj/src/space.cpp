#include "urnlift/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

namespace urnlift {

ColourSpace ColourSpace::finite(std::uint32_t size) {
  if (size == 0) throw ConfigError("finite space needs at least one colour");
  return ColourSpace(Kind::Finite, size, nullptr);
}

ColourSpace ColourSpace::lattice(std::uint32_t dim) {
  if (dim == 0) throw ConfigError("lattice space needs dimension >= 1");
  return ColourSpace(Kind::Lattice, dim, nullptr);
}

ColourSpace ColourSpace::unit_interval() {
  return ColourSpace(Kind::UnitInterval, 0, nullptr);
}

ColourSpace ColourSpace::product(ColourSpace base) {
  if (base.is_product()) throw ConfigError("nested product spaces are not supported");
  return ColourSpace(Kind::Product, 0, std::make_shared<const ColourSpace>(std::move(base)));
}

std::uint32_t ColourSpace::size() const {
  if (kind_ != Kind::Finite) throw ConfigError("size() is only defined for finite spaces");
  return n_;
}

std::uint32_t ColourSpace::dim() const {
  if (kind_ != Kind::Lattice) throw ConfigError("dim() is only defined for lattice spaces");
  return n_;
}

const ColourSpace& ColourSpace::base() const {
  if (kind_ != Kind::Product) throw NotProductSpace("base() called on a non-product space");
  return *base_;
}

std::string ColourSpace::describe() const {
  switch (kind_) {
    case Kind::Finite:
      return "finite(" + std::to_string(n_) + ")";
    case Kind::Lattice:
      return "lattice(" + std::to_string(n_) + ")";
    case Kind::UnitInterval:
      return "unit_interval";
    case Kind::Product:
      return base_->describe() + " x [0,1]";
  }
  return "?";
}

bool operator==(const ColourSpace& a, const ColourSpace& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case ColourSpace::Kind::Finite:
    case ColourSpace::Kind::Lattice:
      return a.n_ == b.n_;
    case ColourSpace::Kind::UnitInterval:
      return true;
    case ColourSpace::Kind::Product:
      return *a.base_ == *b.base_;
  }
  return false;
}

namespace {

// Bitwise double identity: distinguishes -0.0 from 0.0 and makes NaNs
// self-equal, so component merging is a strict equivalence.
bool same_double(double a, double b) {
  std::uint64_t ia, ib;
  std::memcpy(&ia, &a, sizeof ia);
  std::memcpy(&ib, &b, sizeof ib);
  return ia == ib;
}

std::string format_real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

Colour Colour::index(std::uint32_t k) { return Colour(Rep{Index{k}}); }

Colour Colour::point(std::vector<std::int64_t> coords) {
  if (coords.empty()) throw ConfigError("lattice colour needs at least one coordinate");
  return Colour(Rep{Point{std::move(coords)}});
}

Colour Colour::real(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("unit-interval colour outside [0,1]");
  return Colour(Rep{Real{x}});
}

Colour Colour::pair(Colour base, double u) {
  if (base.is_pair()) throw ConfigError("nested pair colours are not supported");
  if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("pair coordinate outside [0,1]");
  return Colour(Rep{std::make_shared<const Pair>(Pair{std::move(base), u})});
}

bool Colour::is_pair() const noexcept {
  return std::holds_alternative<std::shared_ptr<const Pair>>(rep_);
}

const Colour& Colour::pair_base() const {
  if (!is_pair()) throw SpaceMismatch("pair_base() on a non-pair colour");
  return std::get<std::shared_ptr<const Pair>>(rep_)->base;
}

double Colour::pair_u() const {
  if (!is_pair()) throw SpaceMismatch("pair_u() on a non-pair colour");
  return std::get<std::shared_ptr<const Pair>>(rep_)->u;
}

std::string Colour::describe() const {
  struct V {
    std::string operator()(const Index& i) const { return std::to_string(i.k); }
    std::string operator()(const Point& p) const {
      std::string out = "(";
      for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.coords[i]);
      }
      return out + ")";
    }
    std::string operator()(const Real& r) const { return format_real(r.x); }
    std::string operator()(const std::shared_ptr<const Pair>& p) const {
      return "(" + p->base.describe() + ", " + format_real(p->u) + ")";
    }
  };
  return std::visit(V{}, rep_);
}

bool operator==(const Colour& a, const Colour& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  struct V {
    const Colour::Rep& other;
    bool operator()(const Colour::Index& i) const {
      return i.k == std::get<Colour::Index>(other).k;
    }
    bool operator()(const Colour::Point& p) const {
      return p.coords == std::get<Colour::Point>(other).coords;
    }
    bool operator()(const Colour::Real& r) const {
      return same_double(r.x, std::get<Colour::Real>(other).x);
    }
    bool operator()(const std::shared_ptr<const Colour::Pair>& p) const {
      const auto& q = std::get<std::shared_ptr<const Colour::Pair>>(other);
      return p->base == q->base && same_double(p->u, q->u);
    }
  };
  return std::visit(V{b.rep_}, a.rep_);
}

bool colour_in_space(const Colour& c, const ColourSpace& space) {
  switch (space.kind()) {
    case ColourSpace::Kind::Finite: {
      const auto* i = std::get_if<Colour::Index>(&c.rep());
      return i && i->k < space.size();
    }
    case ColourSpace::Kind::Lattice: {
      const auto* p = std::get_if<Colour::Point>(&c.rep());
      return p && p->coords.size() == space.dim();
    }
    case ColourSpace::Kind::UnitInterval: {
      const auto* r = std::get_if<Colour::Real>(&c.rep());
      return r && r->x >= 0.0 && r->x <= 1.0;
    }
    case ColourSpace::Kind::Product:
      return c.is_pair() && colour_in_space(c.pair_base(), space.base()) && c.pair_u() >= 0.0 &&
             c.pair_u() <= 1.0;
  }
  return false;
}

namespace {

std::vector<Interval> normalize_intervals(std::vector<Interval> values) {
  for (const auto& iv : values) {
    if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi))
      throw ConfigError("test-set interval must satisfy 0 <= lo <= hi <= 1");
  }
  std::sort(values.begin(), values.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : values) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

}  // namespace

TestSet TestSet::full() { return TestSet(Kind::Full, {}, {}, nullptr); }

TestSet TestSet::colours(std::vector<Colour> values) {
  if (values.empty()) throw ConfigError("colour test set needs at least one colour");
  return TestSet(Kind::Colours, std::move(values), {}, nullptr);
}

TestSet TestSet::intervals(std::vector<Interval> values) {
  return TestSet(Kind::Intervals, {}, normalize_intervals(std::move(values)), nullptr);
}

TestSet TestSet::product(TestSet base, std::vector<Interval> values) {
  if (base.kind_ == Kind::ProductSet)
    throw ConfigError("nested product test sets are not supported");
  return TestSet(Kind::ProductSet, {}, normalize_intervals(std::move(values)),
                 std::make_shared<const TestSet>(std::move(base)));
}

const std::vector<Colour>& TestSet::colour_values() const {
  if (kind_ != Kind::Colours) throw UnsupportedTestSet("not a colour test set");
  return colours_;
}

const std::vector<Interval>& TestSet::interval_values() const {
  if (kind_ != Kind::Intervals && kind_ != Kind::ProductSet)
    throw UnsupportedTestSet("not an interval test set");
  return intervals_;
}

const TestSet& TestSet::base() const {
  if (kind_ != Kind::ProductSet) throw UnsupportedTestSet("not a product test set");
  return *base_;
}

namespace {

bool in_intervals(double x, const std::vector<Interval>& ivs) {
  for (const auto& iv : ivs) {
    if (x >= iv.lo && x <= iv.hi) return true;
  }
  return false;
}

}  // namespace

bool TestSet::contains(const Colour& c) const {
  switch (kind_) {
    case Kind::Full:
      return true;
    case Kind::Colours:
      return std::find(colours_.begin(), colours_.end(), c) != colours_.end();
    case Kind::Intervals: {
      const auto* r = std::get_if<Colour::Real>(&c.rep());
      if (!r) throw UnsupportedTestSet("interval test set applied to a non-real colour");
      return in_intervals(r->x, intervals_);
    }
    case Kind::ProductSet: {
      if (!c.is_pair()) throw UnsupportedTestSet("product test set applied to a non-pair colour");
      return base_->contains(c.pair_base()) && in_intervals(c.pair_u(), intervals_);
    }
  }
  return false;
}

double TestSet::lambda_length() const {
  if (kind_ == Kind::Full) return 1.0;
  if (kind_ != Kind::Intervals && kind_ != Kind::ProductSet)
    throw UnsupportedTestSet("lambda length needs an interval test set");
  double len = 0.0;
  for (const auto& iv : intervals_) len += iv.hi - iv.lo;
  return len;
}

}  // namespace urnlift
