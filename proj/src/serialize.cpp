#include "urnlift/serialize.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

namespace urnlift {

namespace {

// Strict schemas: unknown keys are rejected so typos fail loudly.
void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw ConfigError(what + " has unknown field '" + key + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(what + " is missing field '" + std::string(key) + "'");
  return *it;
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

json space_to_json(const ColourSpace& space) {
  switch (space.kind()) {
    case ColourSpace::Kind::Finite:
      return json{{"kind", "finite"}, {"size", space.size()}};
    case ColourSpace::Kind::Lattice:
      return json{{"kind", "lattice"}, {"dim", space.dim()}};
    case ColourSpace::Kind::UnitInterval:
      return json{{"kind", "unit_interval"}};
    case ColourSpace::Kind::Product:
      return json{{"kind", "product"}, {"base", space_to_json(space.base())}};
  }
  throw ConfigError("unreachable space kind");
}

ColourSpace space_from_json(const json& j) {
  const std::string kind = require(j, "kind", "space").get<std::string>();
  if (kind == "finite") {
    check_keys(j, {"kind", "size"}, "finite space");
    const std::int64_t size = as_integer(require(j, "size", "finite space"), "size");
    if (size < 1 || size > 0xFFFFFFFFll) throw ConfigError("finite space size out of range");
    return ColourSpace::finite(static_cast<std::uint32_t>(size));
  }
  if (kind == "lattice") {
    check_keys(j, {"kind", "dim"}, "lattice space");
    const std::int64_t dim = as_integer(require(j, "dim", "lattice space"), "dim");
    if (dim < 1 || dim > 64) throw ConfigError("lattice dimension out of range");
    return ColourSpace::lattice(static_cast<std::uint32_t>(dim));
  }
  if (kind == "unit_interval") {
    check_keys(j, {"kind"}, "unit interval space");
    return ColourSpace::unit_interval();
  }
  if (kind == "product") {
    check_keys(j, {"kind", "base"}, "product space");
    return ColourSpace::product(space_from_json(require(j, "base", "product space")));
  }
  throw ConfigError("unknown space kind '" + kind + "'");
}

json colour_to_json(const Colour& c) {
  if (const auto* i = std::get_if<Colour::Index>(&c.rep())) return json(i->k);
  if (const auto* r = std::get_if<Colour::Real>(&c.rep())) return json(r->x);
  if (const auto* p = std::get_if<Colour::Point>(&c.rep())) return json(p->coords);
  return json::array({colour_to_json(c.pair_base()), c.pair_u()});
}

Colour colour_from_json(const json& j, const ColourSpace& space) {
  switch (space.kind()) {
    case ColourSpace::Kind::Finite: {
      const std::int64_t k = as_integer(j, "finite colour");
      if (k < 0 || static_cast<std::uint64_t>(k) >= space.size())
        throw ConfigError("colour index " + std::to_string(k) + " outside " + space.describe());
      return Colour::index(static_cast<std::uint32_t>(k));
    }
    case ColourSpace::Kind::Lattice: {
      if (!j.is_array() || j.size() != space.dim())
        throw ConfigError("lattice colour must be an array of " + std::to_string(space.dim()) +
                          " integers");
      std::vector<std::int64_t> coords;
      coords.reserve(j.size());
      for (const auto& v : j) coords.push_back(as_integer(v, "lattice coordinate"));
      return Colour::point(std::move(coords));
    }
    case ColourSpace::Kind::UnitInterval: {
      const double x = as_number(j, "unit-interval colour");
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("unit-interval colour outside [0,1]");
      return Colour::real(x);
    }
    case ColourSpace::Kind::Product: {
      if (!j.is_array() || j.size() != 2)
        throw ConfigError("product colour must be a [base, u] pair");
      const double u = as_number(j[1], "product colour coordinate");
      if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("product coordinate outside [0,1]");
      return Colour::pair(colour_from_json(j[0], space.base()), u);
    }
  }
  throw ConfigError("unreachable space kind");
}

json payload_to_json(const Payload& p) {
  switch (p.kind()) {
    case Payload::Kind::Atom:
      return json{{"atom", colour_to_json(p.atom_colour())}};
    case Payload::Kind::Continuous:
      return json{{"family", family_name(p.family())}, {"params", p.family_params()}};
    case Payload::Kind::ProductLambda:
      return json{{"product_lambda", payload_to_json(p.inner())}};
  }
  throw ConfigError("unreachable payload kind");
}

Payload payload_from_json(const json& j, const ColourSpace& space) {
  if (!j.is_object()) throw ConfigError("payload must be a JSON object");
  if (j.contains("atom")) {
    check_keys(j, {"atom", "w"}, "atom payload");
    return Payload::atom(colour_from_json(j.at("atom"), space));
  }
  if (j.contains("family")) {
    check_keys(j, {"family", "params", "w"}, "continuous payload");
    const std::string fam = j.at("family").get<std::string>();
    if (fam != "uniform") throw ConfigError("unknown continuous family '" + fam + "'");
    std::vector<double> params;
    if (j.contains("params")) {
      if (!j.at("params").is_array()) throw ConfigError("params must be an array");
      for (const auto& v : j.at("params")) params.push_back(as_number(v, "family parameter"));
    }
    if (space.kind() != ColourSpace::Kind::UnitInterval)
      throw ConfigError("continuous payloads live on the unit interval");
    return Payload::continuous(ContinuousFamily::Uniform01, std::move(params));
  }
  if (j.contains("product_lambda")) {
    check_keys(j, {"product_lambda", "w"}, "product payload");
    if (!space.is_product()) throw ConfigError("product_lambda payload needs a product space");
    return Payload::product_lambda(payload_from_json(j.at("product_lambda"), space.base()));
  }
  throw ConfigError("payload needs one of 'atom', 'family', 'product_lambda'");
}

json measure_to_json(const FiniteMeasure& mu) {
  json comps = json::array();
  for (const auto& c : mu.components()) {
    json entry = payload_to_json(c.payload);
    entry["w"] = c.weight;
    comps.push_back(std::move(entry));
  }
  return json{{"space", space_to_json(mu.space())}, {"components", std::move(comps)}};
}

FiniteMeasure measure_from_json(const json& j) {
  check_keys(j, {"space", "components"}, "measure");
  ColourSpace space = space_from_json(require(j, "space", "measure"));
  const json& comps = require(j, "components", "measure");
  if (!comps.is_array()) throw ConfigError("measure components must be an array");
  std::vector<Component> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    const double w = as_number(require(c, "w", "component"), "component weight");
    out.push_back({w, payload_from_json(c, space)});
  }
  return FiniteMeasure(std::move(space), std::move(out));
}

json testset_to_json(const TestSet& set) {
  switch (set.kind()) {
    case TestSet::Kind::Full:
      return json{{"kind", "full"}};
    case TestSet::Kind::Colours: {
      json values = json::array();
      for (const auto& c : set.colour_values()) values.push_back(colour_to_json(c));
      return json{{"kind", "colours"}, {"values", std::move(values)}};
    }
    case TestSet::Kind::Intervals: {
      json values = json::array();
      for (const auto& iv : set.interval_values()) values.push_back(json::array({iv.lo, iv.hi}));
      return json{{"kind", "intervals"}, {"values", std::move(values)}};
    }
    case TestSet::Kind::ProductSet: {
      json values = json::array();
      for (const auto& iv : set.interval_values()) values.push_back(json::array({iv.lo, iv.hi}));
      return json{{"kind", "product"}, {"base", testset_to_json(set.base())},
                  {"intervals", std::move(values)}};
    }
  }
  throw ConfigError("unreachable test set kind");
}

namespace {

std::vector<Interval> intervals_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("intervals must be an array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2) throw ConfigError("interval must be a [lo, hi] pair");
    out.push_back({as_number(v[0], "interval bound"), as_number(v[1], "interval bound")});
  }
  return out;
}

}  // namespace

TestSet testset_from_json(const json& j, const ColourSpace& space) {
  const std::string kind = require(j, "kind", "test set").get<std::string>();
  if (kind == "full") {
    check_keys(j, {"kind"}, "test set");
    return TestSet::full();
  }
  if (kind == "colours") {
    check_keys(j, {"kind", "values"}, "test set");
    const json& values = require(j, "values", "colour test set");
    if (!values.is_array()) throw ConfigError("colour test set values must be an array");
    std::vector<Colour> cs;
    for (const auto& v : values) cs.push_back(colour_from_json(v, space));
    return TestSet::colours(std::move(cs));
  }
  if (kind == "intervals") {
    check_keys(j, {"kind", "values"}, "test set");
    return TestSet::intervals(intervals_from_json(require(j, "values", "interval test set")));
  }
  if (kind == "product") {
    check_keys(j, {"kind", "base", "intervals"}, "test set");
    if (!space.is_product()) throw ConfigError("product test set needs a product space");
    return TestSet::product(testset_from_json(require(j, "base", "product test set"),
                                              space.base()),
                            intervals_from_json(require(j, "intervals", "product test set")));
  }
  throw ConfigError("unknown test set kind '" + kind + "'");
}

json statistic_to_json(const Statistic& stat) {
  json j;
  switch (stat.kind) {
    case StatKind::TotalMass:
      j["name"] = "mass";
      break;
    case StatKind::EvalSet:
      j["name"] = "eval";
      break;
    case StatKind::EvalFraction:
      j["name"] = "frac";
      break;
    case StatKind::DistinctAtoms:
      j["name"] = "distinct_atoms";
      break;
    case StatKind::MaxAtomFraction:
      j["name"] = "max_atom_frac";
      break;
    case StatKind::FirstAtomFraction:
      j["name"] = "first_atom_frac";
      break;
    case StatKind::MeanCoordinate:
      j["name"] = "mean_coord";
      j["axis"] = stat.axis;
      break;
  }
  if (stat.set) j["test_set"] = testset_to_json(*stat.set);
  if (stat.name != j["name"].get<std::string>()) j["label"] = stat.name;
  return j;
}

Statistic statistic_from_json(const json& j, const ColourSpace& space) {
  check_keys(j, {"name", "test_set", "axis", "label"}, "statistic");
  const std::string name = require(j, "name", "statistic").get<std::string>();
  std::optional<TestSet> set;
  if (j.contains("test_set")) set = testset_from_json(j.at("test_set"), space);
  Statistic stat;
  if (name == "mass") {
    stat = Statistic::total_mass();
  } else if (name == "eval") {
    if (!set) throw ConfigError("statistic 'eval' needs a test_set");
    stat = Statistic::eval_set(*set);
  } else if (name == "frac") {
    if (!set) throw ConfigError("statistic 'frac' needs a test_set");
    stat = Statistic::eval_fraction(*set);
  } else if (name == "distinct_atoms") {
    stat = Statistic::distinct_atoms();
  } else if (name == "max_atom_frac") {
    stat = Statistic::max_atom_fraction();
  } else if (name == "first_atom_frac") {
    stat = Statistic::first_atom_fraction();
  } else if (name == "mean_coord") {
    int axis = 0;
    if (j.contains("axis")) axis = static_cast<int>(as_integer(j.at("axis"), "axis"));
    stat = Statistic::mean_coordinate(axis);
  } else {
    throw ConfigError("unknown statistic '" + name + "'");
  }
  if (j.contains("label")) stat.name = j.at("label").get<std::string>();
  return stat;
}

}  // namespace urnlift
