#include "rieszbasis/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "rieszbasis/error.hpp"
#include "rieszbasis/trace.hpp"

namespace rieszbasis {

using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

Rational rational_field(const ordered_json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": rationals must be strings \"p/q\"");
  return parse_rational(v.get<std::string>());
}

std::int64_t integer_field(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

const ordered_json& member(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

ordered_json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string decimal(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}e}", v, precision);
}

ordered_json tuples_json(const std::vector<IntVector>& tuples) {
  ordered_json out = ordered_json::array();
  for (const auto& t : tuples) out.push_back(t);
  return out;
}

ordered_json trace_json(const TraceNode& trace) {
  const TraceStats s = summarize(trace);
  ordered_json out;
  out["root"] = step_name(trace);
  out["nodes"] = s.nodes;
  out["depth"] = s.depth;
  out["folds"] = s.folds;
  out["products"] = s.products;
  out["rotations"] = s.rotations;
  out["fold_moduli"] = s.fold_moduli;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string strategy_name(Strategy s) { return s == Strategy::kDirect ? "direct" : "paper"; }

std::string join_moduli(const IntVector& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("malformed " + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("empty " + what);
  return out;
}

// "0,1;1,0" -> {(0,1), (1,0)}
std::vector<IntVector> parse_tuple_list(const std::string& text, std::size_t dim) {
  std::vector<IntVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    IntVector t = parse_int_list(item, "cell");
    if (t.size() != dim) throw ParseError("cell '" + item + "' has the wrong dimension");
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ParseError("empty cell list");
  return out;
}

ordered_json verify_one(const NamedRegion& set, const PeriodicSet& basis, const VerifyRequest& req) {
  const int p = req.precision;
  const DualReport dual = dual_complement_check(set.region, basis, req.tolerance);
  const SpectralReport& rep = dual.primary;
  const DensityCheck dens = density_check(set.region, basis);
  const GramSweep sweep = gram_truncation_sweep(set.region, basis, req.radii);

  bool bessel_ok = true;
  bool lower_ok = true;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < sweep.radii.size(); ++i) {
    const bool empty = sweep.sizes[i] == 0;
    const bool in_range = empty || (sweep.min_eigenvalue[i] >= -req.tolerance && sweep.max_eigenvalue[i] <= 1 + req.tolerance);
    const bool above = empty || sweep.min_eigenvalue[i] >= rep.sequence_bound - req.tolerance;
    bessel_ok = bessel_ok && in_range;
    lower_ok = lower_ok && above;
    ordered_json row;
    row["radius"] = sweep.radii[i];
    row["size"] = sweep.sizes[i];
    row["min_eigenvalue"] = decimal(empty ? 0.0 : sweep.min_eigenvalue[i], p);
    row["max_eigenvalue"] = decimal(empty ? 0.0 : sweep.max_eigenvalue[i], p);
    rows.push_back(std::move(row));
  }

  ordered_json out;
  out["name"] = set.name;
  out["measure"] = to_string(dens.measure);
  ordered_json density;
  density["ok"] = dens.ok;
  density["density"] = to_string(dens.density);
  density["measure"] = to_string(dens.measure);
  out["density"] = std::move(density);

  ordered_json spectral;
  spectral["verdict"] = to_string(rep.verdict);
  spectral["grid"] = rep.moduli;
  spectral["cell_count"] = rep.cell_count;
  spectral["residue_count"] = rep.residue_count;
  spectral["lower_bound"] = decimal(rep.lower_bound, p);
  spectral["upper_bound"] = decimal(rep.upper_bound, p);
  spectral["sequence_bound"] = decimal(rep.sequence_bound, p);
  spectral["frame_bound"] = decimal(rep.frame_bound, p);
  spectral["sigma_min"] = decimal(rep.sigma_min, p);
  spectral["condition"] = decimal(rep.condition, p);
  out["spectral"] = std::move(spectral);

  ordered_json d;
  d["consistent"] = dual.consistent;
  d["complement_measure"] = to_string(dual.complement_region.measure());
  d["complement_verdict"] = to_string(dual.complement.verdict);
  out["dual"] = std::move(d);

  ordered_json sw;
  sw["bessel_ok"] = bessel_ok;
  sw["lower_bound_ok"] = lower_ok;
  sw["rows"] = std::move(rows);
  out["sweep"] = std::move(sw);

  std::vector<std::string> failures;
  if (!dens.ok) failures.push_back("density " + to_string(dens.density) + " != measure " + to_string(dens.measure));
  if (rep.verdict != Verdict::kRieszBasis) failures.push_back("verdict " + to_string(rep.verdict));
  if (!dual.consistent) failures.push_back("dual complement inconsistent");
  if (!bessel_ok) failures.push_back("gram eigenvalue outside [0, 1]");
  if (!lower_ok) failures.push_back("gram eigenvalue below exact lower bound");
  out["pass"] = failures.empty();
  out["failures"] = failures;
  return out;
}

void emit(const ordered_json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump(2) << '\n';
    return;
  }
  const std::string command = doc.at("command").get<std::string>();
  if (command == "build") {
    out << "name,moduli,residue\n";
    for (const auto& set : doc.at("sets")) {
      const std::string moduli = join_moduli(set.at("moduli").get<IntVector>(), ' ');
      for (const auto& r : set.at("residues")) {
        out << set.at("name").get<std::string>() << ',' << moduli << ',' << join_moduli(r.get<IntVector>(), ' ')
            << '\n';
      }
    }
  } else if (command == "verify") {
    out << "name,radius,size,min_eigenvalue,max_eigenvalue\n";
    for (const auto& set : doc.at("sets")) {
      for (const auto& row : set.at("sweep").at("rows")) {
        out << set.at("name").get<std::string>() << ',' << row.at("radius").get<std::int64_t>() << ','
            << row.at("size").get<std::size_t>() << ',' << row.at("min_eigenvalue").get<std::string>() << ','
            << row.at("max_eigenvalue").get<std::string>() << '\n';
      }
    }
  } else {
    // Other reports have no tabular form.
    out << doc.dump(2) << '\n';
  }
}

}  // namespace

RegionSpec parse_region_spec(const ordered_json& doc) {
  RegionSpec spec;
  const std::int64_t dim = integer_field(member(doc, "dim", "spec"), "spec.dim");
  if (dim < 1) throw ParseError("spec.dim must be at least 1");
  spec.dim = static_cast<std::size_t>(dim);

  const ordered_json& sets = member(doc, "sets", "spec");
  if (!sets.is_array()) throw ParseError("spec.sets must be an array");
  std::map<std::string, std::size_t> index;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::string where = "spec.sets[" + std::to_string(s) + "]";
    const ordered_json& name = member(sets[s], "name", where);
    if (!name.is_string()) throw ParseError(where + ".name must be a string");
    const ordered_json& boxes = member(sets[s], "boxes", where);
    if (!boxes.is_array()) throw ParseError(where + ".boxes must be an array");
    std::vector<Box> parsed;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const std::string bw = where + ".boxes[" + std::to_string(b) + "]";
      if (!boxes[b].is_array() || boxes[b].size() != spec.dim) {
        throw ParseError(bw + " must list " + std::to_string(spec.dim) + " [lo, hi] pairs");
      }
      Box box;
      for (std::size_t k = 0; k < spec.dim; ++k) {
        const ordered_json& pair = boxes[b][k];
        if (!pair.is_array() || pair.size() != 2) throw ParseError(bw + ": each side must be [lo, hi]");
        box.push_back({rational_field(pair[0], bw), rational_field(pair[1], bw)});
      }
      parsed.push_back(std::move(box));
    }
    const std::string n = name.get<std::string>();
    if (!index.emplace(n, s).second) throw ParseError("duplicate set name '" + n + "'");
    spec.sets.push_back({n, Region(spec.dim, std::move(parsed))});
  }

  if (doc.contains("inclusions")) {
    const ordered_json& inc = doc.at("inclusions");
    if (!inc.is_array()) throw ParseError("spec.inclusions must be an array");
    for (const auto& pair : inc) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw ParseError("each inclusion must be [name_i, name_j]");
      }
      const std::string a = pair[0].get<std::string>();
      const std::string b = pair[1].get<std::string>();
      const auto ia = index.find(a);
      const auto ib = index.find(b);
      if (ia == index.end() || ib == index.end()) {
        throw ParseError("inclusion names unknown set '" + (ia == index.end() ? a : b) + "'");
      }
      if (!is_subset(spec.sets[ia->second].region, spec.sets[ib->second].region)) {
        throw ContractError("declared inclusion " + a + " ⊆ " + b + " does not hold");
      }
      spec.inclusions.emplace_back(ia->second, ib->second);
    }
  }
  return spec;
}

RegionSpec load_region_spec(const std::string& path) { return parse_region_spec(read_json(path)); }

std::vector<NamedBasis> parse_basis_file(const ordered_json& doc) {
  const ordered_json& sets = member(doc, "sets", "basis file");
  if (!sets.is_array()) throw ParseError("basis file: sets must be an array");
  std::vector<NamedBasis> out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::string where = "basis sets[" + std::to_string(s) + "]";
    const ordered_json& name = member(sets[s], "name", where);
    const ordered_json& moduli = member(sets[s], "moduli", where);
    const ordered_json& residues = member(sets[s], "residues", where);
    if (!name.is_string() || !moduli.is_array() || !residues.is_array()) throw ParseError(where + ": malformed entry");
    IntVector m;
    for (const auto& v : moduli) m.push_back(integer_field(v, where + ".moduli"));
    std::vector<IntVector> r;
    for (const auto& t : residues) {
      if (!t.is_array() || t.size() != m.size()) throw ParseError(where + ": residue tuple has the wrong dimension");
      IntVector tuple;
      for (const auto& v : t) tuple.push_back(integer_field(v, where + ".residues"));
      r.push_back(std::move(tuple));
    }
    out.push_back({name.get<std::string>(), PeriodicSet(std::move(m), r)});
  }
  return out;
}

std::vector<NamedBasis> load_basis_file(const std::string& path) { return parse_basis_file(read_json(path)); }

ordered_json build_report(const RegionSpec& spec, const BuildRequest& request) {
  // Sets linked by declared inclusions are built as one coherent family; the
  // rest are independent.
  std::vector<std::size_t> group(spec.sets.size());
  for (std::size_t i = 0; i < group.size(); ++i) group[i] = i;
  auto root = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (const auto& [a, b] : spec.inclusions) group[root(a)] = root(b);

  std::vector<CoherentEntry> entries(spec.sets.size());
  std::vector<bool> done(spec.sets.size(), false);
  for (std::size_t i = 0; i < spec.sets.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    std::vector<Region> family;
    for (std::size_t j = i; j < spec.sets.size(); ++j) {
      if (root(j) != root(i)) continue;
      members.push_back(j);
      family.push_back(spec.sets[j].region);
    }
    const CoherentFamily fam = coherent_bases_d(family, request.options);
    for (std::size_t k = 0; k < members.size(); ++k) {
      entries[members[k]] = fam.entries[k];
      done[members[k]] = true;
    }
  }

  ordered_json doc;
  doc["tool"] = "rieszbasis";
  doc["version"] = kToolVersion;
  doc["command"] = "build";
  if (!request.deterministic) doc["timestamp"] = utc_timestamp();
  doc["dim"] = spec.dim;
  doc["strategy"] = strategy_name(request.options.strategy);
  doc["max_fold_modulus"] = request.options.max_fold_modulus;

  ordered_json sets = ordered_json::array();
  for (std::size_t i = 0; i < spec.sets.size(); ++i) {
    const CoherentEntry& e = entries[i];
    ordered_json s;
    s["name"] = spec.sets[i].name;
    s["measure"] = to_string(e.region.measure());
    s["moduli"] = e.basis.moduli();
    s["residues"] = tuples_json(e.basis.residues());
    s["density"] = to_string(e.basis.density());
    s["strategy"] = strategy_name(request.options.strategy);
    s["trace"] = trace_json(*e.trace);
    sets.push_back(std::move(s));
  }
  doc["sets"] = std::move(sets);

  ordered_json inclusions = ordered_json::array();
  for (const auto& [a, b] : spec.inclusions) {
    ordered_json inc;
    inc["subset"] = spec.sets[a].name;
    inc["superset"] = spec.sets[b].name;
    inc["basis_inclusion"] = is_subset(entries[a].basis, entries[b].basis);
    inclusions.push_back(std::move(inc));
  }
  doc["inclusions"] = std::move(inclusions);
  return doc;
}

ordered_json verify_report(const RegionSpec& spec, const std::vector<NamedBasis>& bases, const VerifyRequest& request) {
  std::vector<const PeriodicSet*> matched;
  for (const auto& set : spec.sets) {
    const auto it = std::find_if(bases.begin(), bases.end(), [&](const NamedBasis& b) { return b.name == set.name; });
    if (it == bases.end()) throw ContractError("basis file has no entry for set '" + set.name + "'");
    if (it->basis.dim() != spec.dim) throw ContractError("basis for '" + set.name + "' has the wrong dimension");
    matched.push_back(&it->basis);
  }

  // Each worker fills its own slots; output order follows the input file regardless of --jobs.
  std::vector<ordered_json> results(spec.sets.size());
  std::vector<std::exception_ptr> errors(spec.sets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.sets.size(); i = next++) {
      try {
        results[i] = verify_one(spec.sets[i], *matched[i], request);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(request.jobs, spec.sets.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ordered_json doc;
  doc["tool"] = "rieszbasis";
  doc["version"] = kToolVersion;
  doc["command"] = "verify";
  doc["tolerance"] = decimal(request.tolerance, 3);
  doc["precision"] = request.precision;
  doc["radii"] = request.radii;
  bool pass = true;
  ordered_json sets = ordered_json::array();
  for (auto& r : results) {
    pass = pass && r.at("pass").get<bool>();
    sets.push_back(std::move(r));
  }
  doc["pass"] = pass;
  doc["sets"] = std::move(sets);
  return doc;
}

ordered_json oracle_report(const std::vector<std::int64_t>& moduli, const std::vector<IntVector>& cells,
                           double tolerance, int precision) {
  for (const auto& c : cells) {
    for (std::size_t k = 0; k < moduli.size(); ++k) {
      if (c[k] < 0 || c[k] >= moduli[k]) throw ContractError("cell outside the grid");
    }
  }
  std::vector<IntVector> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ContractError("duplicate cell");
  const auto selections = brute_force_selection_search(moduli, sorted, tolerance);

  ordered_json doc;
  doc["tool"] = "rieszbasis";
  doc["version"] = kToolVersion;
  doc["command"] = "oracle";
  doc["moduli"] = moduli;
  doc["cells"] = tuples_json(sorted);
  doc["count"] = selections.size();
  ordered_json list = ordered_json::array();
  for (const auto& s : selections) {
    ordered_json e;
    e["residues"] = tuples_json(s.residues);
    e["sigma_min"] = decimal(s.sigma_min, precision);
    list.push_back(std::move(e));
  }
  doc["selections"] = std::move(list);
  return doc;
}

ordered_json counterexample_report(const std::vector<std::int64_t>& moduli, std::size_t size, double tolerance) {
  const UniversalRowCheck check = universal_row_selection_check(moduli, size, tolerance);
  ordered_json doc;
  doc["tool"] = "rieszbasis";
  doc["version"] = kToolVersion;
  doc["command"] = "counterexample";
  doc["moduli"] = moduli;
  doc["size"] = size;
  doc["universal"] = check.universal;
  if (check.universal) {
    std::string rows;
    for (std::size_t i = 0; i < check.rows.size(); ++i) {
      if (i) rows += ", ";
      rows += check.rows[i].size() == 1 ? std::to_string(check.rows[i][0])
                                        : "(" + join_moduli(check.rows[i], ',') + ")";
    }
    doc["message"] = "universal: rows {" + rows + "}";
    doc["rows"] = tuples_json(check.rows);
  } else {
    doc["message"] = "no universal row selection";
  }
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : check.witnesses) {
    ordered_json e;
    e["rows"] = tuples_json(w.rows);
    e["singular_columns"] = tuples_json(w.columns);
    witnesses.push_back(std::move(e));
  }
  doc["witness_count"] = check.witnesses.size();
  doc["witnesses"] = std::move(witnesses);
  return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential Riesz bases for unions of rational boxes", "rieszbasis"};
  app.require_subcommand(1);

  std::string format = "json";
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string spec_path;
  std::string strategy = "paper";
  std::int64_t max_fold = 0;
  bool deterministic = false;
  CLI::App* build = app.add_subcommand("build", "Construct frequency sets for every set in a spec");
  build->add_option("spec", spec_path, "Region specification (JSON)")->required();
  build->add_option("--strategy", strategy, "Construction strategy")->check(CLI::IsMember({"direct", "paper"}));
  build->add_option("--max-fold-modulus", max_fold, "Cap for fold-modulus searches (0 = default)")
      ->check(CLI::NonNegativeNumber);
  build->add_flag("--deterministic", deterministic, "Omit the timestamp field");
  add_format(build);

  std::string basis_path;
  std::string radii_text = "1,2,3";
  double tolerance = kDefaultTolerance;
  std::size_t jobs = 1;
  CLI::App* verify = app.add_subcommand("verify", "Check frequency sets against their regions");
  verify->add_option("spec", spec_path, "Region specification (JSON)")->required();
  verify->add_option("basis", basis_path, "Build result (JSON)")->required();
  verify->add_option("--radii", radii_text, "Comma-separated Gram truncation radii");
  verify->add_option("--tolerance", tolerance, "Singular-value tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--deterministic", deterministic, "Accepted for symmetry; verify output has no timestamp");
  add_format(verify);

  std::string moduli_text;
  std::string cells_text;
  CLI::App* oracle = app.add_subcommand("oracle", "Enumerate invertible residue selections for a cell set");
  oracle->add_option("--moduli", moduli_text, "Comma-separated grid moduli")->required();
  oracle->add_option("--cells", cells_text, "Cells as tuples separated by ';', coordinates by ','")->required();
  oracle->add_option("--tolerance", tolerance, "Singular-value tolerance")->check(CLI::PositiveNumber);
  add_format(oracle);

  std::size_t size = 0;
  CLI::App* counter = app.add_subcommand("counterexample", "Search for a universal row selection");
  counter->add_option("--moduli", moduli_text, "Comma-separated group moduli")->required();
  counter->add_option("--size", size, "Selection size")->required()->check(CLI::PositiveNumber);
  counter->add_option("--tolerance", tolerance, "Singular-value tolerance")->check(CLI::PositiveNumber);
  add_format(counter);

  // CLI11 consumes arguments from the back.
  std::vector<std::string> pending(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(pending.begin(), pending.end());
  try {
    app.parse(pending);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    ordered_json doc;
    if (build->parsed()) {
      BuildRequest req;
      req.options.strategy = strategy == "direct" ? Strategy::kDirect : Strategy::kPaper;
      req.options.max_fold_modulus = max_fold;
      req.deterministic = deterministic;
      doc = build_report(load_region_spec(spec_path), req);
    } else if (verify->parsed()) {
      VerifyRequest req;
      req.radii = parse_int_list(radii_text, "radii");
      req.tolerance = tolerance;
      req.jobs = jobs;
      doc = verify_report(load_region_spec(spec_path), load_basis_file(basis_path), req);
    } else if (oracle->parsed()) {
      const auto moduli = parse_int_list(moduli_text, "moduli");
      doc = oracle_report(moduli, parse_tuple_list(cells_text, moduli.size()), tolerance, 12);
    } else {
      doc = counterexample_report(parse_int_list(moduli_text, "moduli"), size, tolerance);
    }
    emit(doc, format, out);
    if (doc.contains("pass") && !doc.at("pass").get<bool>()) {
      err << "verification failed\n";
      return kExitVerification;
    }
    return kExitOk;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::kParse:
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
      case ErrorKind::kCap:
        err << "bound exceeded: " << e.what() << '\n';
        return kExitCap;
      case ErrorKind::kContract:
        err << "contract violation: " << e.what() << '\n';
        return kExitContract;
    }
  }
  return kExitContract;
}

}  // namespace rieszbasis
