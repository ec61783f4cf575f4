#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rieszbasis/construct.hpp"
#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/region.hpp"
#include "rieszbasis/verify.hpp"

namespace rieszbasis {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitCap = 3,
  kExitContract = 4,
  kExitVerification = 5,
};

struct NamedRegion {
  std::string name;
  Region region;
};

struct RegionSpec {
  std::size_t dim = 1;
  std::vector<NamedRegion> sets;
  std::vector<std::pair<std::size_t, std::size_t>> inclusions;  // indices into sets, first ⊆ second
};

struct NamedBasis {
  std::string name;
  PeriodicSet basis;
};

/// Parses and validates a region specification document. Malformed content
/// throws ParseError; a declared inclusion that does not hold throws ContractError.
RegionSpec parse_region_spec(const nlohmann::ordered_json& doc);
RegionSpec load_region_spec(const std::string& path);

/// Reads the "sets" array of a build result (name, moduli, residues).
std::vector<NamedBasis> parse_basis_file(const nlohmann::ordered_json& doc);
std::vector<NamedBasis> load_basis_file(const std::string& path);

struct BuildRequest {
  BuildOptions options;
  bool deterministic = false;
};

nlohmann::ordered_json build_report(const RegionSpec& spec, const BuildRequest& request);

struct VerifyRequest {
  std::vector<std::int64_t> radii{1, 2, 3};
  double tolerance = kDefaultTolerance;
  std::size_t jobs = 1;
  int precision = 12;
};

/// The "pass" field of the result is the overall verdict.
nlohmann::ordered_json verify_report(const RegionSpec& spec, const std::vector<NamedBasis>& bases,
                                     const VerifyRequest& request);

nlohmann::ordered_json oracle_report(const std::vector<std::int64_t>& moduli, const std::vector<IntVector>& cells,
                                     double tolerance, int precision);

nlohmann::ordered_json counterexample_report(const std::vector<std::int64_t>& moduli, std::size_t size,
                                             double tolerance);

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`; the return value is an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rieszbasis
