#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rieszbasis/cli.hpp"
#include "rieszbasis/construct.hpp"
#include "rieszbasis/error.hpp"
#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/region.hpp"
#include "rieszbasis/verify.hpp"

namespace py = pybind11;
using namespace rieszbasis;

namespace {

// Rationals cross the boundary as strings such as "3/4"; the Python layer
// converts them to fractions.Fraction.
using BoxText = std::vector<std::pair<std::string, std::string>>;

Region make_region(std::size_t dim, const std::vector<BoxText>& boxes) {
  std::vector<Box> out;
  for (const auto& b : boxes) {
    Box box;
    for (const auto& [lo, hi] : b) box.push_back({parse_rational(lo), parse_rational(hi)});
    out.push_back(std::move(box));
  }
  return Region(dim, std::move(out));
}

std::vector<BoxText> region_boxes(const Region& r) {
  std::vector<BoxText> out;
  for (const Box& b : r.boxes()) {
    BoxText box;
    for (const Interval& iv : b) box.emplace_back(to_string(iv.lo), to_string(iv.hi));
    out.push_back(std::move(box));
  }
  return out;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "paper") return Strategy::kPaper;
  if (s == "direct") return Strategy::kDirect;
  throw ContractError("unknown strategy: " + s);
}

CoherencePolicy parse_policy(const std::string& s) {
  if (s == "aligned") return CoherencePolicy::kAligned;
  if (s == "window") return CoherencePolicy::kPaperWindow;
  throw ContractError("unknown coherence policy: " + s);
}

py::dict trace_dict(const TracePtr& trace) {
  const TraceStats st = summarize(*trace);
  py::dict d;
  d["nodes"] = st.nodes;
  d["depth"] = st.depth;
  d["folds"] = st.folds;
  d["products"] = st.products;
  d["rotations"] = st.rotations;
  d["fold_moduli"] = st.fold_moduli;
  return d;
}

py::dict spectral_dict(const SpectralReport& r) {
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["lower_bound"] = r.lower_bound;
  d["upper_bound"] = r.upper_bound;
  d["sequence_bound"] = r.sequence_bound;
  d["frame_bound"] = r.frame_bound;
  d["condition"] = r.condition;
  d["sigma_min"] = r.sigma_min;
  d["cell_count"] = r.cell_count;
  d["residue_count"] = r.residue_count;
  d["moduli"] = r.moduli;
  d["sigma_values"] = r.sigma_values;
  d["tolerance"] = r.tolerance;
  return d;
}

BuildOptions options(const std::string& strategy, std::int64_t cap, const std::string& coherence) {
  BuildOptions o;
  o.strategy = parse_strategy(strategy);
  o.max_fold_modulus = cap;
  o.coherence = parse_policy(coherence);
  return o;
}

}  // namespace

PYBIND11_MODULE(_rieszbasis, m) {
  m.doc() = "Exponential Riesz bases for unions of rational boxes";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CapError>(m, "CapError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());

  py::class_<Region>(m, "Region")
      .def(py::init(&make_region), py::arg("dim"), py::arg("boxes"))
      .def_static("unit_cube", &Region::unit_cube)
      .def_property_readonly("dim", &Region::dim)
      .def_property_readonly("boxes", &region_boxes)
      .def("measure", [](const Region& r) { return to_string(r.measure()); })
      .def("empty", &Region::empty)
      .def("contains",
           [](const Region& r, const std::vector<std::string>& point) {
             std::vector<Rational> p;
             for (const auto& x : point) p.push_back(parse_rational(x));
             return r.contains(p);
           })
      .def("__eq__", [](const Region& a, const Region& b) { return a == b; })
      .def("__repr__", [](const Region& r) {
        std::ostringstream os;
        os << "Region(dim=" << r.dim() << ", boxes=" << r.boxes().size() << ", measure=" << to_string(r.measure())
           << ")";
        return os.str();
      });

  m.def("region_complement", py::overload_cast<const Region&>(&complement));
  m.def("region_intersect", py::overload_cast<const Region&, const Region&>(&intersect));
  m.def("region_unite", py::overload_cast<const Region&, const Region&>(&unite));
  m.def("region_is_subset", py::overload_cast<const Region&, const Region&>(&is_subset));
  m.def("fold_1d_region", &fold_1d_region, py::arg("region"), py::arg("n_mod"));

  py::class_<PeriodicSet>(m, "PeriodicSet")
      .def(py::init<IntVector, const std::vector<IntVector>&>(), py::arg("moduli"), py::arg("residues"))
      .def_static("lattice", &PeriodicSet::lattice)
      .def_static("empty_set", [](std::size_t dim) { return PeriodicSet::empty(dim); })
      .def_property_readonly("dim", &PeriodicSet::dim)
      .def_property_readonly("moduli", &PeriodicSet::moduli)
      .def_property_readonly("residues", &PeriodicSet::residues)
      .def("density", [](const PeriodicSet& s) { return to_string(s.density()); })
      .def("contains", [](const PeriodicSet& s, const IntVector& p) { return s.contains(p); })
      .def("same_representation", &PeriodicSet::same_representation)
      .def("__len__", &PeriodicSet::residue_count)
      .def("__eq__", [](const PeriodicSet& a, const PeriodicSet& b) { return a == b; })
      .def("__repr__", [](const PeriodicSet& s) {
        std::ostringstream os;
        os << "PeriodicSet(moduli=[";
        for (std::size_t k = 0; k < s.dim(); ++k) os << (k ? ", " : "") << s.moduli()[k];
        os << "], residues=" << s.residue_count() << ")";
        return os.str();
      });

  m.def("set_unite", py::overload_cast<const PeriodicSet&, const PeriodicSet&>(&unite));
  m.def("set_intersect", py::overload_cast<const PeriodicSet&, const PeriodicSet&>(&intersect));
  m.def("set_minus", &minus);
  m.def("set_is_subset", py::overload_cast<const PeriodicSet&, const PeriodicSet&>(&is_subset));
  m.def("set_product", py::overload_cast<const PeriodicSet&, const PeriodicSet&>(&product));
  m.def("canonicalize", [](const PeriodicSet& s) { return canonicalize(s); });

  m.def(
      "riesz_basis",
      [](const Region& r, const std::string& strategy, std::int64_t cap) {
        const Built b = riesz_basis_d(r, options(strategy, cap, "aligned"));
        return py::make_tuple(b.basis, trace_dict(b.trace));
      },
      py::arg("region"), py::arg("strategy") = "paper", py::arg("max_fold_modulus") = 0);

  m.def(
      "coherent_bases",
      [](const std::vector<Region>& family, const std::string& strategy, std::int64_t cap,
         const std::string& coherence) {
        const CoherentFamily fam = coherent_bases_d(family, options(strategy, cap, coherence));
        std::vector<PeriodicSet> out;
        for (const auto& e : fam.entries) out.push_back(e.basis);
        return py::make_tuple(out, fam.inclusions);
      },
      py::arg("family"), py::arg("strategy") = "paper", py::arg("max_fold_modulus") = 0,
      py::arg("coherence") = "aligned");

  m.def(
      "exact_riesz_bounds",
      [](const Region& r, const PeriodicSet& s, double tol) { return spectral_dict(exact_riesz_bounds(r, s, tol)); },
      py::arg("region"), py::arg("basis"), py::arg("tolerance") = kDefaultTolerance);

  m.def(
      "dft_submatrix",
      [](const IntVector& moduli, const std::vector<IntVector>& cells, const std::vector<IntVector>& residues) {
        return dft_submatrix(moduli, cells, residues);
      },
      py::arg("moduli"), py::arg("cells"), py::arg("residues"));

  m.def(
      "grid_cells", [](const Region& r, const IntVector& moduli) { return grid_cells(r, moduli); }, py::arg("region"),
      py::arg("moduli"));

  m.def("gram_matrix", &gram_matrix, py::arg("region"), py::arg("freqs"));

  m.def(
      "gram_truncation_sweep",
      [](const Region& r, const PeriodicSet& s, const IntVector& radii) {
        const GramSweep g = gram_truncation_sweep(r, s, radii);
        py::dict d;
        d["radii"] = g.radii;
        d["sizes"] = g.sizes;
        d["min_eigenvalue"] = g.min_eigenvalue;
        d["max_eigenvalue"] = g.max_eigenvalue;
        return d;
      },
      py::arg("region"), py::arg("basis"), py::arg("radii"));

  m.def(
      "dual_complement_check",
      [](const Region& r, const PeriodicSet& s, double tol) {
        const DualReport rep = dual_complement_check(r, s, tol);
        py::dict d;
        d["consistent"] = rep.consistent;
        d["primary"] = spectral_dict(rep.primary);
        d["complement"] = spectral_dict(rep.complement);
        d["complement_region"] = rep.complement_region;
        d["complement_basis"] = rep.complement_basis;
        return d;
      },
      py::arg("region"), py::arg("basis"), py::arg("tolerance") = kDefaultTolerance);

  m.def(
      "density_check",
      [](const Region& r, const PeriodicSet& s) {
        const DensityCheck c = density_check(r, s);
        py::dict d;
        d["ok"] = c.ok;
        d["density"] = to_string(c.density);
        d["measure"] = to_string(c.measure);
        return d;
      },
      py::arg("region"), py::arg("basis"));

  m.def(
      "brute_force_selection_search",
      [](const IntVector& moduli, const std::vector<IntVector>& cells, double tol) {
        py::list out;
        for (const Selection& s : brute_force_selection_search(moduli, cells, tol)) {
          py::dict d;
          d["residues"] = s.residues;
          d["sigma_min"] = s.sigma_min;
          out.append(d);
        }
        return out;
      },
      py::arg("moduli"), py::arg("cells"), py::arg("tolerance") = kDefaultTolerance);

  m.def(
      "universal_row_selection_check",
      [](const IntVector& moduli, std::size_t size, double tol) {
        const UniversalRowCheck c = universal_row_selection_check(moduli, size, tol);
        py::dict d;
        d["universal"] = c.universal;
        d["rows"] = c.rows;
        py::list witnesses;
        for (const auto& w : c.witnesses) {
          py::dict wd;
          wd["rows"] = w.rows;
          wd["columns"] = w.columns;
          witnesses.append(wd);
        }
        d["witnesses"] = witnesses;
        return d;
      },
      py::arg("moduli"), py::arg("size"), py::arg("tolerance") = kDefaultTolerance);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "rieszbasis");
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
