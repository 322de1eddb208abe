#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "urnlift/cli.hpp"
#include "urnlift/lift.hpp"
#include "urnlift/models.hpp"
#include "urnlift/serialize.hpp"

namespace py = pybind11;
using namespace urnlift;

namespace {

std::vector<LatticeStep> to_lattice_law(
    const std::vector<std::pair<std::vector<std::int64_t>, double>>& law) {
  std::vector<LatticeStep> out;
  out.reserve(law.size());
  for (const auto& [offset, prob] : law) out.push_back({offset, prob});
  return out;
}

std::vector<std::vector<RandomRow>> to_row_law(
    const std::vector<std::vector<std::pair<std::vector<std::int64_t>, double>>>& law) {
  std::vector<std::vector<RandomRow>> out;
  out.reserve(law.size());
  for (const auto& rows : law) {
    std::vector<RandomRow> parsed;
    parsed.reserve(rows.size());
    for (const auto& [row, prob] : rows) parsed.push_back({row, prob});
    out.push_back(std::move(parsed));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Measure-valued urns with derandomized kernel lifts";

  // translators run newest-first, so the base class goes in first
  py::register_exception<UrnError>(m, "UrnError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CouplingBroken>(m, "CouplingBrokenError", PyExc_RuntimeError);

  py::class_<ColourSpace>(m, "ColourSpace")
      .def_static("finite", &ColourSpace::finite, py::arg("size"))
      .def_static("lattice", &ColourSpace::lattice, py::arg("dim"))
      .def_static("unit_interval", &ColourSpace::unit_interval)
      .def_static("product", &ColourSpace::product, py::arg("base"))
      .def("is_product", &ColourSpace::is_product)
      .def("__eq__", [](const ColourSpace& a, const ColourSpace& b) { return a == b; })
      .def("__repr__", [](const ColourSpace& s) { return "ColourSpace(" + s.describe() + ")"; });

  py::class_<Colour>(m, "Colour")
      .def_static("index", &Colour::index, py::arg("k"))
      .def_static("point", &Colour::point, py::arg("coords"))
      .def_static("real", &Colour::real, py::arg("x"))
      .def_static("pair", &Colour::pair, py::arg("base"), py::arg("u"))
      .def("__eq__", [](const Colour& a, const Colour& b) { return a == b; })
      .def("__repr__", [](const Colour& c) { return "Colour(" + c.describe() + ")"; });

  py::class_<Interval>(m, "Interval")
      .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }), py::arg("lo"),
           py::arg("hi"))
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi);

  py::class_<TestSet>(m, "TestSet")
      .def_static("full", &TestSet::full)
      .def_static("colours", &TestSet::colours, py::arg("values"))
      .def_static("intervals", &TestSet::intervals, py::arg("values"))
      .def_static("product", &TestSet::product, py::arg("base"), py::arg("intervals"))
      .def("contains", &TestSet::contains, py::arg("colour"));

  py::enum_<ContinuousFamily>(m, "ContinuousFamily")
      .value("Uniform01", ContinuousFamily::Uniform01);

  py::class_<Payload>(m, "Payload")
      .def_static("atom", &Payload::atom, py::arg("colour"))
      .def_static("continuous", &Payload::continuous, py::arg("family"),
                  py::arg("params") = std::vector<double>{})
      .def_static("product_lambda", &Payload::product_lambda, py::arg("inner"))
      .def("__eq__", [](const Payload& a, const Payload& b) { return a == b; });

  py::class_<FiniteMeasure>(m, "FiniteMeasure")
      .def(py::init([](const ColourSpace& space,
                       const std::vector<std::pair<double, Payload>>& components) {
             std::vector<Component> comps;
             comps.reserve(components.size());
             for (const auto& [w, p] : components) comps.push_back({w, p});
             return FiniteMeasure(space, std::move(comps));
           }),
           py::arg("space"), py::arg("components") = std::vector<std::pair<double, Payload>>{})
      .def_property_readonly("space", &FiniteMeasure::space)
      .def_property_readonly("components",
                             [](const FiniteMeasure& mu) {
                               std::vector<std::pair<double, Payload>> out;
                               for (const auto& c : mu.components())
                                 out.emplace_back(c.weight, c.payload);
                               return out;
                             })
      .def("total_mass", &FiniteMeasure::total_mass)
      .def("is_zero", &FiniteMeasure::is_zero)
      .def("to_json", [](const FiniteMeasure& mu) { return measure_to_json(mu).dump(); })
      .def("__repr__", [](const FiniteMeasure& mu) {
        return "FiniteMeasure(" + mu.space().describe() + ", mass=" +
               std::to_string(mu.total_mass()) + ", components=" +
               std::to_string(mu.components().size()) + ")";
      });

  py::class_<SignedAtomicMeasure>(m, "SignedAtomicMeasure")
      .def(py::init<ColourSpace, std::vector<std::pair<Colour, double>>>(), py::arg("space"),
           py::arg("atoms"))
      .def_property_readonly("atoms", &SignedAtomicMeasure::atoms)
      .def("total", &SignedAtomicMeasure::total);

  m.def("measure_from_json",
        [](const std::string& text) { return measure_from_json(json::parse(text)); });
  m.def("add", &add);
  m.def("normalize", &normalize);
  m.def("evaluate", &evaluate);
  m.def("product_with_uniform", &product_with_uniform);
  m.def("project", &project);
  m.def("add_signed", &add_signed);
  m.def("add_signed_times_lambda", &add_signed_times_lambda);
  m.def("jordan", &jordan);
  m.def("approx_equal", &approx_equal, py::arg("mu"), py::arg("nu"), py::arg("tol"));
  m.def("max_weight_discrepancy", &max_weight_discrepancy);

  py::class_<RandomnessStream>(m, "RandomnessStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("replicate") = 0)
      .def("seek", &RandomnessStream::seek, py::arg("step"), py::arg("channel"))
      .def("next", &RandomnessStream::next);

  m.def("sample",
        [](const FiniteMeasure& mu, RandomnessStream& stream) { return sample(mu, stream); });
  m.def("split_uniform", &split_uniform, py::arg("u"), py::arg("k"));

  py::class_<UrnSpec>(m, "UrnSpec")
      .def_property_readonly("space", [](const UrnSpec& s) { return s.space; })
      .def_property_readonly("x0", [](const UrnSpec& s) { return s.x0; })
      .def_property_readonly("kernel_name",
                             [](const UrnSpec& s) { return kernel_name(s.kernel); })
      .def_property_readonly("kernel_is_random",
                             [](const UrnSpec& s) { return is_random(s.kernel); })
      .def("__repr__", [](const UrnSpec& s) {
        return "UrnSpec(" + s.space.describe() + ", kernel=" + kernel_name(s.kernel) + ")";
      });

  py::class_<Statistic>(m, "Statistic")
      .def_static("total_mass", &Statistic::total_mass, py::arg("name") = "mass")
      .def_static("eval_set", &Statistic::eval_set, py::arg("set"), py::arg("name") = "eval")
      .def_static("eval_fraction", &Statistic::eval_fraction, py::arg("set"),
                  py::arg("name") = "frac")
      .def_static("distinct_atoms", &Statistic::distinct_atoms,
                  py::arg("name") = "distinct_atoms")
      .def_static("max_atom_fraction", &Statistic::max_atom_fraction,
                  py::arg("name") = "max_atom_frac")
      .def_static("first_atom_fraction", &Statistic::first_atom_fraction,
                  py::arg("name") = "first_atom_frac")
      .def_static("mean_coordinate", &Statistic::mean_coordinate, py::arg("axis") = 0,
                  py::arg("name") = "mean_coord")
      .def_readonly("name", &Statistic::name);

  m.def("compute_statistic", &compute_statistic);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("stat_names",
                             [](const Trajectory& t) {
                               std::vector<std::string> names;
                               for (const auto& s : t.stats) names.push_back(s.name);
                               return names;
                             })
      .def_readonly("values", &Trajectory::values)
      .def_readonly("states", &Trajectory::states)
      .def_property_readonly("stopped_at",
                             [](const Trajectory& t) { return t.stopped_at; })
      .def("__len__", [](const Trajectory& t) { return t.length(); });

  m.def(
      "run",
      [](const UrnSpec& spec, std::uint64_t n, std::uint64_t seed, std::uint64_t replicate,
         const std::vector<Statistic>& stats, bool record_states) {
        RunOptions options;
        if (!stats.empty()) options.stats = stats;
        options.record_states = record_states;
        return run(spec, n, seed, replicate, options);
      },
      py::arg("spec"), py::arg("n"), py::arg("seed"), py::arg("replicate") = 0,
      py::arg("stats") = std::vector<Statistic>{}, py::arg("record_states") = false,
      py::call_guard<py::gil_scoped_release>());

  m.def("monte_carlo", &monte_carlo, py::arg("spec"), py::arg("n"), py::arg("replicates"),
        py::arg("stat"), py::arg("seed"), py::arg("parallelism") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.def("check_balanced", &check_balanced, py::arg("trajectory"), py::arg("a"), py::arg("b"),
        py::arg("tol") = 1e-9);

  m.def("lift_spec", &lift_spec);

  py::class_<CoupledRun>(m, "CoupledRun")
      .def_readonly("base", &CoupledRun::base)
      .def_readonly("lifted", &CoupledRun::lifted)
      .def_readonly("max_projection_error", &CoupledRun::max_projection_error);

  m.def(
      "coupled_run",
      [](const UrnSpec& spec, std::uint64_t n, std::uint64_t seed,
         const std::vector<Statistic>& stats, bool record_states) {
        RunOptions options;
        if (!stats.empty()) options.stats = stats;
        options.record_states = record_states;
        return coupled_run(spec, n, seed, options);
      },
      py::arg("spec"), py::arg("n"), py::arg("seed"),
      py::arg("stats") = std::vector<Statistic>{}, py::arg("record_states") = false,
      py::call_guard<py::gil_scoped_release>());

  py::class_<CompareReport>(m, "CompareReport")
      .def_readonly("statistic", &CompareReport::statistic)
      .def_readonly("threshold", &CompareReport::threshold)
      .def_readonly("alpha", &CompareReport::alpha)
      .def_readonly("pass_", &CompareReport::pass)
      .def_readonly("samples_per_side", &CompareReport::samples_per_side);

  m.def(
      "distributional_compare",
      [](const UrnSpec& spec, std::uint64_t n, std::uint64_t replicates, const Statistic& stat,
         double alpha, std::uint64_t seed) {
        return distributional_compare(spec, n, replicates, stat, alpha, seed);
      },
      py::arg("spec"), py::arg("n"), py::arg("replicates"), py::arg("stat"), py::arg("alpha"),
      py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  py::class_<KsReport>(m, "KsReport")
      .def_readonly("d", &KsReport::d)
      .def_readonly("critical", &KsReport::critical)
      .def_readonly("alpha", &KsReport::alpha)
      .def_readonly("pass_", &KsReport::pass)
      .def_readonly("n", &KsReport::n)
      .def_readonly("m", &KsReport::m);

  py::class_<ChiSquareReport>(m, "ChiSquareReport")
      .def_readonly("statistic", &ChiSquareReport::statistic)
      .def_readonly("dof", &ChiSquareReport::dof)
      .def_readonly("critical", &ChiSquareReport::critical)
      .def_readonly("alpha", &ChiSquareReport::alpha)
      .def_readonly("pass_", &ChiSquareReport::pass);

  m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"), py::arg("alpha"));
  m.def("ks_critical", &ks_critical);
  m.def("chi_square_gof", &chi_square_gof, py::arg("counts"), py::arg("probs"),
        py::arg("alpha") = 0.001);
  m.def("chi_square_quantile", &chi_square_quantile);
  m.def("gem_stick_breaking", [](double theta, int k, RandomnessStream& stream) {
    return gem_stick_breaking(theta, k, stream);
  });
  m.def("expected_distinct", &expected_distinct);

  m.def("eggenberger_polya", &eggenberger_polya, py::arg("a"), py::arg("w"));
  m.def("blackwell_macqueen", &blackwell_macqueen, py::arg("theta"));
  m.def("friedman_random", &friedman_random, py::arg("p"),
        py::arg("w") = std::vector<double>{1.0, 1.0});
  m.def(
      "lattice_walk",
      [](std::uint32_t dim,
         const std::vector<std::pair<std::vector<std::int64_t>, double>>& law) {
        return lattice_walk(dim, to_lattice_law(law));
      },
      py::arg("dim"), py::arg("step_law"));
  m.def("without_replacement_urn", &without_replacement_urn, py::arg("addition"),
        py::arg("x0"));
  m.def(
      "random_without_replacement",
      [](const std::vector<std::vector<std::pair<std::vector<std::int64_t>, double>>>& law,
         const std::vector<std::int64_t>& x0) {
        return random_without_replacement(to_row_law(law), x0);
      },
      py::arg("law"), py::arg("x0"));

  m.def("trajectory_csv", [](const Trajectory& traj, std::uint64_t replicate) {
    std::string out = trajectory_csv_header();
    append_trajectory_csv(out, replicate, traj);
    return out;
  });
  m.def("monte_carlo_csv", &monte_carlo_csv);

  m.def(
      "run_simulate_json",
      [](const std::string& config_text, unsigned threads) {
        return run_simulate(config_from_json(json::parse(config_text)), threads);
      },
      py::arg("config"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_couple_json",
      [](const std::string& config_text, std::uint64_t seeds, double tol) {
        return run_couple(config_from_json(json::parse(config_text)), seeds, tol).dump();
      },
      py::arg("config"), py::arg("seeds") = 1, py::arg("tol") = 1e-9,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_compare_json",
      [](const std::string& config_text, double alpha) {
        return run_compare(config_from_json(json::parse(config_text)), alpha, std::nullopt)
            .dump();
      },
      py::arg("config"), py::arg("alpha") = 0.01, py::call_guard<py::gil_scoped_release>());
  m.def("models_listing", [] { return models_listing().dump(); });

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
