#include "fockloss/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace fockloss::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end || s.empty()) {
    throw UsageError("cannot read " + what + " from '" + s + "'");
  }
  return v;
}

long to_int(const std::string& s, const std::string& what) {
  long v = 0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end || s.empty()) {
    throw UsageError("cannot read " + what + " from '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<double> GridRange::points() const {
  std::vector<double> pts;
  pts.reserve(steps);
  if (steps == 1) {
    pts.push_back(start);
    return pts;
  }
  for (int i = 0; i < steps; ++i) {
    // Endpoints are reproduced exactly.
    pts.push_back(i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1));
  }
  return pts;
}

GridRange parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid must be start:stop:steps, got '" + text + "'");
  GridRange g;
  g.start = to_double(parts[0], "grid start");
  g.stop = to_double(parts[1], "grid stop");
  const long steps = to_int(parts[2], "grid steps");
  if (steps < 1) throw UsageError("grid needs at least one step");
  if (steps > 1 && !(g.stop > g.start)) throw UsageError("grid stop must exceed start");
  g.steps = static_cast<int>(steps);
  return g;
}

void parse_quadrature(const std::string& text, RunConfig& cfg) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("quadrature must be r:theta, got '" + text + "'");
  const long r = to_int(parts[0], "radial nodes");
  const long t = to_int(parts[1], "angular nodes");
  if (r < 4 || t < 4) throw UsageError("quadrature sizes must be at least 4");
  cfg.quad_radial = static_cast<int>(r);
  cfg.quad_angular = static_cast<int>(t);
}

int auto_cutoff_coherent(Complex alpha) {
  for (int c = 8; c <= 200; c += 2) {
    if (make_coherent(alpha, c).tail_weight() < 1e-12) return c;
  }
  throw UsageError("coherent amplitude too large for the supported cutoff");
}

int auto_cutoff_squeezed(double r) {
  for (int c = 8; c <= 200; c += 2) {
    if (make_squeezed_vacuum(r, c).tail_weight() < 1e-12) return c;
  }
  throw UsageError("squeezing too strong for the supported cutoff");
}

int auto_cutoff_thermal(double nbar) {
  for (int c = 8; c <= 400; c += 2) {
    double tail = 0.0;
    make_thermal(nbar, c, &tail);
    if (tail < 1e-12) return c;
  }
  throw UsageError("thermal occupation too large for the supported cutoff");
}

DensityOperator load_state_file(const std::string& path, bool allow_nonpositive) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open state file '" + path + "'");
  std::string content;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    content += line;
    content.push_back('\n');
  }
  std::istringstream is(content);
  int c = 0;
  if (!(is >> c) || c < 1) throw UsageError("state file must start with a positive cutoff");
  CMatrix m(c, c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      double re = 0.0;
      double im = 0.0;
      if (!(is >> re >> im)) throw UsageError("state file '" + path + "' has too few entries");
      m(i, j) = Complex(re, im);
    }
  }
  std::string extra;
  if (is >> extra) throw UsageError("state file '" + path + "' has trailing data");
  return DensityOperator(std::move(m), allow_nonpositive ? DensityOperator::Kind::nonpositive
                                                         : DensityOperator::Kind::physical);
}

std::vector<NamedState> expand_state_spec(const std::string& spec, std::uint64_t seed,
                                          bool allow_nonpositive) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("state spec needs family:args, got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  std::vector<NamedState> out;
  if (family == "file") {
    out.push_back({spec, load_state_file(rest, allow_nonpositive)});
    return out;
  }
  const auto args = split(rest, ':');
  if (family == "fock") {
    if (args.size() > 2) throw UsageError("fock spec is fock:n[:cutoff]");
    const long n = to_int(args[0], "photon number");
    if (n < 0) throw UsageError("photon number must be nonnegative");
    const long c = args.size() == 2 ? to_int(args[1], "cutoff") : n + 1;
    if (c < n + 1) throw UsageError("cutoff must exceed the photon number");
    out.push_back({spec, make_fock(static_cast<int>(n), static_cast<int>(c)).density()});
  } else if (family == "coherent") {
    if (args.size() > 2) throw UsageError("coherent spec is coherent:re[:im]");
    const Complex alpha(to_double(args[0], "amplitude"),
                        args.size() == 2 ? to_double(args[1], "amplitude") : 0.0);
    out.push_back({spec, make_coherent(alpha, auto_cutoff_coherent(alpha)).density()});
  } else if (family == "squeezed") {
    if (args.size() != 1) throw UsageError("squeezed spec is squeezed:r");
    const double r = to_double(args[0], "squeezing");
    out.push_back({spec, make_squeezed_vacuum(r, auto_cutoff_squeezed(r)).density()});
  } else if (family == "thermal") {
    if (args.size() != 1) throw UsageError("thermal spec is thermal:nbar");
    const double nbar = to_double(args[0], "mean photon number");
    if (nbar < 0.0) throw UsageError("mean photon number must be nonnegative");
    out.push_back({spec, make_thermal(nbar, auto_cutoff_thermal(nbar))});
  } else if (family == "random") {
    if (args.size() > 3) throw UsageError("random spec is random:count[:cutoff[:rank]]");
    const long count = to_int(args[0], "count");
    const long c = args.size() >= 2 ? to_int(args[1], "cutoff") : 8;
    const long rank = args.size() == 3 ? to_int(args[2], "rank") : 0;
    if (count < 1 || c < 1) throw UsageError("random corpus needs count >= 1 and cutoff >= 1");
    if (rank < 0 || rank > c) throw UsageError("rank must lie in [1, cutoff]");
    for (long i = 0; i < count; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      const int r = rank > 0 ? static_cast<int>(rank)
                             : static_cast<int>(std::min<long>(1 + i % 3, c));
      std::string id = "random:" + std::to_string(s) + ":" + std::to_string(c) + ":" +
                       std::to_string(r);
      if (r == 1) {
        out.push_back({std::move(id), random_pure(s, static_cast<int>(c)).density()});
      } else {
        out.push_back({std::move(id), random_mixed(s, static_cast<int>(c), r)});
      }
    }
  } else {
    throw UsageError("unknown state family '" + family + "'");
  }
  return out;
}

}  // namespace fockloss::cli
