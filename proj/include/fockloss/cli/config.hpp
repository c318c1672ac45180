#pragma once
// Run configuration for the command-line front end and the parsers for its
// state and grid specifications.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockloss/error.hpp"
#include "fockloss/fock.hpp"

namespace fockloss::cli {

/// Malformed command line or configuration (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GridRange {
  double start = 0.0;
  double stop = 1.0;
  int steps = 11;

  /// `steps` evenly spaced points including both ends (one point if steps == 1).
  std::vector<double> points() const;
};

/// Parses "start:stop:steps".
GridRange parse_grid(const std::string& text);

struct RunConfig {
  std::string command;
  std::vector<std::string> states;
  std::optional<GridRange> grid;
  std::vector<double> s_values;
  double T = 1.0;
  std::string out;  // empty: stdout
  std::uint64_t seed = 1;
  std::optional<double> tol;
  bool allow_nonpositive = false;
  int quad_radial = 80;
  int quad_angular = 128;
  std::string suite = "all";
  std::string name;
  std::string phi;
  std::string phi_basis;  // empty: per-command default
  int points = 121;
  double half_width = 0.0;  // 0: chosen from the state
};

/// Parses "r:theta" quadrature sizes.
void parse_quadrature(const std::string& text, RunConfig& cfg);

struct NamedState {
  std::string id;
  DensityOperator rho;
};

/// Expands one state spec into states:
///   fock:n[:cutoff]        coherent:re[:im]      squeezed:r
///   thermal:nbar           random:count[:cutoff[:rank]]
///   file:path
/// Random corpora draw seeds seed, seed+1, ...; without a rank the corpus
/// cycles through pure, rank-2 and rank-3 states.
std::vector<NamedState> expand_state_spec(const std::string& spec, std::uint64_t seed,
                                          bool allow_nonpositive);

/// Text matrix file: the cutoff c, then c*c entries "re im" in row-major order.
/// `#` starts a comment.
DensityOperator load_state_file(const std::string& path, bool allow_nonpositive);

/// Smallest cutoff (from 8 upward) at which the pure state leaves less than
/// 1e-12 of its norm outside.
int auto_cutoff_coherent(Complex alpha);
int auto_cutoff_squeezed(double r);
int auto_cutoff_thermal(double nbar);

}  // namespace fockloss::cli
