// Copyright 2026 The oscitool Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "oscitool/errors.hpp"
#include "oscitool/frft.hpp"
#include "oscitool/io.hpp"
#include "oscitool/modspace.hpp"
#include "oscitool/oscillator.hpp"
#include "oscitool/strichartz.hpp"

namespace osc::cli {
namespace {

namespace fs = std::filesystem;

// Raised when a numeric check fails; maps to kExitCheckFailed.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError(what + ": cannot parse '" + text + "' as a number");
  }
  if (used != t.size()) throw DomainError(what + ": cannot parse '" + text + "' as a number");
  return v;
}

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i".
Complex parse_complex(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.empty()) throw DomainError(what + ": empty value");
  if (t.back() != 'i') return {parse_real(t, what), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, what);
  };
  if (split == std::string::npos) return {0.0, imag(t)};
  return {parse_real(t.substr(0, split), what), imag(t.substr(split))};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Eigen::VectorXcd parse_order(const std::string& text, int dim) {
  auto items = split_list(text);
  if (items.empty()) throw DomainError("--rho: empty list");
  if (items.size() == 1 && dim > 1) items.assign(static_cast<std::size_t>(dim), items[0]);
  if (dim > 0 && static_cast<int>(items.size()) != dim) {
    throw DomainError("--rho: expected " + std::to_string(dim) + " entries, got " + std::to_string(items.size()));
  }
  Eigen::VectorXcd r(static_cast<Eigen::Index>(items.size()));
  for (std::size_t k = 0; k < items.size(); ++k) r[static_cast<Eigen::Index>(k)] = parse_complex(items[k], "--rho");
  return r;
}

std::vector<double> real_order(const Eigen::VectorXcd& rho) {
  std::vector<double> r;
  for (Eigen::Index j = 0; j < rho.size(); ++j) {
    if (rho[j].imag() != 0.0) throw DomainError("--rho: this route needs a real order");
    r.push_back(rho[j].real());
  }
  return r;
}

// "a:b:step" or a comma list.
std::vector<double> parse_sweep(const std::string& text) {
  std::string t = text;
  if (auto eq = t.find('='); eq != std::string::npos) t = t.substr(eq + 1);
  std::vector<double> v;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("--sweep: expected start:stop:step");
    const double a = parse_real(parts[0], "--sweep");
    const double b = parse_real(parts[1], "--sweep");
    const double h = parse_real(parts[2], "--sweep");
    if (!(h > 0.0) || b < a) throw DomainError("--sweep: empty range");
    const auto n = static_cast<int>(std::floor((b - a) / h + 1e-9));
    for (int k = 0; k <= n; ++k) v.push_back(a + k * h);
  } else {
    for (const auto& s : split_list(t)) v.push_back(parse_real(s, "--sweep"));
  }
  if (v.empty()) throw DomainError("--sweep: empty range");
  return v;
}

Weight parse_weight(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t == "1" || t == "constant") return Weight::constant();
  auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const double r = colon == std::string::npos ? 1.0 : parse_real(t.substr(colon + 1), "--weight");
  if (kind == "poly") return Weight::polynomial(r);
  if (kind == "radial-poly") {
    return Weight::rotational([r](std::span<const double> rho) {
      double s = 1.0;
      for (double v : rho) s += v;
      return std::pow(s, 0.5 * r);
    });
  }
  throw DomainError("--weight: expected constant, poly:<r> or radial-poly:<r>");
}

RadialProfile parse_profile(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t == "1" || t == "one") return [](std::span<const double>) { return 1.0; };
  if (t == "sqrt") {
    return [](std::span<const double> r) {
      double s = 1.0;
      for (double v : r) s *= std::sqrt(v);
      return s;
    };
  }
  if (t.rfind("poly:", 0) == 0) {
    const double k = parse_real(t.substr(5), "--w0");
    return [k](std::span<const double> r) {
      double s = 1.0;
      for (double v : r) s += v;
      return std::pow(s, k);
    };
  }
  throw DomainError("--w0: expected one, sqrt or poly:<k>");
}

NormFlavor parse_flavor(const std::string& s) {
  if (s == "M") return NormFlavor::kM;
  if (s == "W") return NormFlavor::kW;
  throw DomainError("--space: expected M or W");
}

EstimateDirection parse_direction(const std::string& s) {
  if (s == "MM") return EstimateDirection::kMtoM;
  if (s == "WW") return EstimateDirection::kWtoW;
  if (s == "MW") return EstimateDirection::kMtoW;
  if (s == "WM") return EstimateDirection::kWtoM;
  throw DomainError("expected one of MM, WW, MW, WM");
}

fs::path output_path(const std::string& p) {
  fs::path path(p);
  if (const char* dir = std::getenv("OSCITOOL_OUT_DIR"); dir != nullptr && *dir != '\0' && path.is_relative()) {
    return fs::path(dir) / path;
  }
  return path;
}

void emit_json(const Json& j, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json(output_path(out_file), j);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit_csv(const std::string& header, const std::vector<std::vector<double>>& rows, const std::string& out_file,
              std::ostream& out) {
  std::ostringstream os;
  os << header << '\n';
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << fmt(r[k]);
    os << '\n';
  }
  if (out_file.empty()) {
    out << os.str();
    return;
  }
  const fs::path path = output_path(out_file);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path.string());
  f << os.str();
}

HermiteCoeffs read_coeffs(const std::string& path) { return coeffs_from_json(read_json(path)); }

PropagatorSpec make_spec(const std::string& rho, const std::string& c, double r, int dim) {
  PropagatorSpec s;
  s.rho = parse_order(rho, dim);
  s.c = parse_complex(c, "--c");
  s.r = r;
  return s;
}

Lattice make_lattice(int dim, int N, int points, double half_width) {
  return half_width > 0.0 ? Lattice::symmetric(dim, points, half_width) : Lattice::for_truncation(dim, N, points);
}

// ----- option bundles ------------------------------------------------------

struct Common {
  std::string in;
  std::string out;
  std::string rho = "1";
  std::string c = "0";
  double r = 1.0;
  int points = 129;
  double half_width = 0.0;
};

struct Opts {
  Common frft, stft, prop, cls, norm, evolve, duh, strich, vid, vmink, vest, viso;
  std::string route = "spectral";
  int kernel_points = 96;
  std::string zeta = "0";
  std::string space = "M";
  std::string p = "2";
  std::string q = "2";
  std::string weight = "constant";
  double T = 1.0;
  int steps = 64;
  std::string variant = "s1";
  bool check = false;
  std::string estimate = "duhamel";
  std::string p0 = "2";
  std::string r0 = "2";
  std::string p2 = "2";
  std::string p02 = "2";
  std::string pairing = "MM";
  bool sweep_flag = false;
  std::uint64_t seed = 1;
  int N = 16;
  int dim = 1;
  std::string form = "sin";
  std::string direction = "MM";
  std::string sweep = "0.05:0.5:0.05";
  double expect_slope = std::numeric_limits<double>::quiet_NaN();
  double slope_tol = 0.1;
  double t = 1.0;
  std::string w0 = "one";
  std::string config;
};

// ----- verbs ----------------------------------------------------------------

int do_frft(const Opts& o, std::ostream& out) {
  const Json in = read_json(o.frft.in);
  if (o.route == "spectral") {
    const HermiteCoeffs c = coeffs_from_json(in);
    emit_json(to_json(spectral_frft(c, FracOrder(parse_order(o.frft.rho, c.dim())))), o.frft.out, out);
    return kExitPass;
  }
  if (o.route != "kernel") throw DomainError("--route: expected spectral or kernel");
  GridFunction f;
  if (in.contains("entries")) {
    const HermiteCoeffs c = coeffs_from_json(in);
    f = synthesize(c, std::vector<Axis>(static_cast<std::size_t>(c.dim()),
                                        kernel_axis(o.kernel_points)));
  } else {
    f = grid_from_json(in);
  }
  const auto rho = real_order(parse_order(o.frft.rho, f.dim()));
  emit_json(to_json(kernel_frft(f, rho, f.axes)), o.frft.out, out);
  return kExitPass;
}

int do_stft(const Opts& o, std::ostream& out) {
  const HermiteCoeffs c = read_coeffs(o.stft.in);
  const Lattice lat = make_lattice(c.dim(), c.trunc(), o.stft.points, o.stft.half_width);
  emit_json(to_json(stft_matrix(c, lat)), o.stft.out, out);
  return kExitPass;
}

int do_propagate(const Opts& o, std::ostream& out, std::ostream& err) {
  const HermiteCoeffs c = read_coeffs(o.prop.in);
  PropagatorSpec s = make_spec(o.prop.rho, o.prop.c, o.prop.r, c.dim());
  s.zeta = parse_complex(o.zeta, "--zeta");
  const HermiteCoeffs u = apply_propagator(c, s);
  const auto bad = overflow_indices(u);
  if (!bad.empty()) err << "warning: " << bad.size() << " coefficients overflowed\n";
  emit_json(to_json(u), o.prop.out, out);
  return kExitPass;
}

int do_classify(const Opts& o, std::ostream& out) {
  const GrowthClass k = classify_growth(read_coeffs(o.cls.in));
  emit_json({{"tag", to_string(k.tag)}, {"parameter", k.parameter}, {"residual", k.residual}, {"accepted", k.accepted}},
            o.cls.out, out);
  return kExitPass;
}

int do_norm(const Opts& o, std::ostream& out) {
  const HermiteCoeffs c = read_coeffs(o.norm.in);
  const Lattice lat = make_lattice(c.dim(), c.trunc(), o.norm.points, o.norm.half_width);
  MixedNormSpec spec{parse_real(o.p, "--p"), parse_real(o.q, "--q"), parse_flavor(o.space), parse_weight(o.weight)};
  emit_json({{"space", o.space}, {"p", o.p}, {"q", o.q}, {"norm", mixed_norm(stft_matrix(c, lat), spec)}}, o.norm.out,
            out);
  return kExitPass;
}

// Norm of a state: l2 of the coefficients, or a lattice M/W norm.
std::function<double(const HermiteCoeffs&)> state_norm(const Opts& o, const Common& c, int dim, int N) {
  if (o.space == "l2") return [](const HermiteCoeffs& u) { return u.l2_norm(); };
  const Lattice lat = make_lattice(dim, N, c.points, c.half_width);
  MixedNormSpec spec{parse_real(o.p, "--p"), parse_real(o.q, "--q"), parse_flavor(o.space), parse_weight(o.weight)};
  return [lat, spec](const HermiteCoeffs& u) { return mixed_norm(stft_matrix(u, lat), spec); };
}

int do_evolve(const Opts& o, std::ostream& out) {
  const HermiteCoeffs u0 = read_coeffs(o.evolve.in);
  const PropagatorSpec h = make_spec(o.evolve.rho, o.evolve.c, o.evolve.r, u0.dim());
  const TimeSlices s = evolve_E(u0, TimeGrid::uniform(o.T, o.steps), h);
  const auto nrm = state_norm(o, o.evolve, u0.dim(), u0.trunc());
  std::vector<std::vector<double>> rows;
  for (Eigen::Index k = 0; k < s.grid.size(); ++k) {
    rows.push_back({s.grid.nodes[k], nrm(s.states[static_cast<std::size_t>(k)])});
  }
  emit_csv("t,norm", rows, o.evolve.out, out);
  return kExitPass;
}

int do_duhamel(const Opts& o, std::ostream& out, std::ostream& err) {
  const HermiteCoeffs f = read_coeffs(o.duh.in);
  const PropagatorSpec h = make_spec(o.duh.rho, o.duh.c, o.duh.r, f.dim());
  DuhamelVariant v = DuhamelVariant::kS1;
  if (o.variant == "s2") {
    v = DuhamelVariant::kS2;
  } else if (o.variant != "s1") {
    throw DomainError("--variant: expected s1 or s2");
  }
  const TimeGrid grid = TimeGrid::uniform(o.T, o.steps);
  const DuhamelResult r = duhamel_S(sample_source([&](double) { return f; }, grid), h, v);
  const auto nrm = state_norm(o, o.duh, f.dim(), f.trunc());
  std::vector<std::vector<double>> rows;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    rows.push_back({grid.nodes[k], nrm(r.slices.states[static_cast<std::size_t>(k)])});
  }
  emit_csv("t,norm", rows, o.duh.out, out);
  err << "refinement gap: " << fmt(r.refinement_gap) << '\n';
  if (r.too_coarse()) {
    err << "warning: time grid too coarse (refinement gap above 1%)\n";
    if (o.check) throw CheckFailed("Duhamel refinement gap exceeds 1%");
  }
  return kExitPass;
}

int do_strichartz(const Opts& o, std::ostream& out) {
  StrichartzConfig cfg;
  if (o.estimate == "duhamel") {
    cfg.estimate = StrichartzEstimate::kDuhamel;
  } else if (o.estimate == "weak") {
    cfg.estimate = StrichartzEstimate::kWeakType;
  } else if (o.estimate == "l2") {
    cfg.estimate = StrichartzEstimate::kHomogeneousL2;
  } else if (o.estimate == "inhomogeneous") {
    cfg.estimate = StrichartzEstimate::kInhomogeneous;
  } else {
    throw DomainError("--estimate: expected duhamel, weak, l2 or inhomogeneous");
  }
  cfg.exponents = {parse_real(o.p, "--p"),   parse_real(o.q, "--q"),   parse_real(o.p0, "--p0"),
                   parse_real(o.r0, "--r0"), parse_real(o.p2, "--p2"), parse_real(o.p02, "--p02")};
  cfg.pairing = parse_direction(o.pairing);
  cfg.variant = o.variant == "s2" ? DuhamelVariant::kS2 : DuhamelVariant::kS1;
  cfg.T = o.T;
  cfg.intervals = o.steps;
  cfg.lattice_points = o.strich.points;
  HermiteCoeffs u = o.strich.in.empty() ? HermiteCoeffs::unit(o.dim, 8, MultiIndex(std::vector<int>(
                                                                              static_cast<std::size_t>(o.dim), 0)))
                                        : read_coeffs(o.strich.in);
  cfg.hamiltonian = make_spec(o.strich.rho, o.strich.c, o.strich.r, u.dim());

  Json summary;
  bool admissible = true;
  if (o.sweep_flag) {
    const StrichartzSweep s = sweep_strichartz(cfg, o.seed);
    admissible = !s.reports.empty() && s.reports.front().admissible;
    Json ratios = Json::array();
    for (const auto& r : s.reports) ratios.push_back(r.ratio);
    summary = {{"admissible", admissible}, {"max_ratio", s.max_ratio}, {"ratios", ratios}};
    if (!admissible) summary["violation"] = s.reports.front().violation;
  } else {
    const StrichartzReport r = verify_strichartz(cfg, u);
    admissible = r.admissible;
    summary = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}, {"admissible", r.admissible}};
    if (cfg.estimate == StrichartzEstimate::kWeakType) summary["lhs_strong"] = r.lhs_strong;
    if (!r.admissible) summary["violation"] = r.violation;
  }
  emit_json(summary, o.strich.out, out);
  if (!admissible) throw CheckFailed(summary["violation"].get<std::string>());
  return kExitPass;
}

int do_verify_identity(const Opts& o, std::ostream& out) {
  PropagatorSpec s = make_spec(o.vid.rho, o.vid.c, 1.0, o.dim);
  s.zeta = Complex(0.0, -0.25 * std::numbers::pi);
  const FracOrder rho(s.rho);
  const Complex shift = std::exp(Complex(0.0, -0.25 * std::numbers::pi) * (rho.sum() + s.c));
  const auto& idx = *SimplexIndex::get(s.dim(), o.N);
  double worst = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Complex a = std::exp(s.zeta * eigenvalue(s, idx[i]));
    const Complex b = shift * frft_multiplier(rho, idx[i]);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  emit_json({{"max_relative_deviation", worst}, {"tolerance", 1e-14}}, o.vid.out, out);
  if (!(worst <= 1e-14)) throw CheckFailed("propagator and FrFT multipliers differ beyond 1e-14");
  return kExitPass;
}

int do_verify_minkowski(const Opts& o, std::ostream& out) {
  StftMatrix s;
  if (o.vmink.in.empty()) {
    // a fixed anisotropic Gaussian bump when no input is given
    const Lattice lat = Lattice::symmetric(o.dim, o.vmink.points, o.vmink.half_width > 0.0 ? o.vmink.half_width : 8.0);
    s = sample_phase_space(lat, [](const PhasePoint& pt) {
      return Complex(std::exp(-0.5 * pt.x.squaredNorm() / 4.0 - 0.5 * (pt.xi.array() - 0.5).square().sum()), 0.0);
    });
  } else {
    const HermiteCoeffs c = read_coeffs(o.vmink.in);
    s = stft_matrix(c, make_lattice(c.dim(), c.trunc(), o.vmink.points, o.vmink.half_width));
  }
  MinkowskiForm form = MinkowskiForm::kSine;
  if (o.form == "cos") {
    form = MinkowskiForm::kCosine;
  } else if (o.form != "sin") {
    throw DomainError("--form: expected sin or cos");
  }
  const double rho = parse_real(o.vmink.rho, "--rho");
  const MinkowskiReport r = verify_minkowski(s, parse_real(o.p, "--p"), parse_real(o.q, "--q"), rho, form);
  emit_json({{"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}}, o.vmink.out, out);
  if (!r.pass) throw CheckFailed("rotated Minkowski inequality violated beyond 2% slack");
  return kExitPass;
}

int do_verify_estimate(const Opts& o, std::ostream& out, std::ostream& err) {
  const HermiteCoeffs c = read_coeffs(o.vest.in);
  const Lattice lat = make_lattice(c.dim(), c.trunc(), o.vest.points, o.vest.half_width);
  const EstimateDirection dir = parse_direction(o.direction);
  const bool sine = dir == EstimateDirection::kMtoM || dir == EstimateDirection::kWtoW;
  const double p = parse_real(o.p, "--p");
  const double q = parse_real(o.q, "--q");
  const Weight w = parse_weight(o.weight);
  std::vector<double> rhos = parse_sweep(o.sweep);
  std::vector<EstimateReport> reps;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double r : rhos) {
    std::vector<double> rv(static_cast<std::size_t>(c.dim()), r);
    reps.push_back(verify_frft_mod_estimate(c, rv, p, q, w, dir, lat));
    const double th = 0.5 * std::numbers::pi * r;
    lx.push_back(std::log(std::abs(sine ? std::sin(th) : std::cos(th))));
    ly.push_back(std::log(reps.back().lhs / reps.back().source));
  }
  const double slope = rhos.size() >= 2 ? fitted_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < rhos.size(); ++k) rows.push_back({rhos[k], reps[k].lhs, reps[k].rhs, reps[k].ratio, slope});
  emit_csv("rho,lhs,rhs,ratio,fitted_slope", rows, o.vest.out, out);
  if (!std::isnan(o.expect_slope)) {
    err << "fitted slope " << fmt(slope) << ", expected " << fmt(o.expect_slope) << " +- " << fmt(o.slope_tol) << '\n';
    if (!(std::abs(slope - o.expect_slope) <= o.slope_tol)) throw CheckFailed("fitted slope outside tolerance");
  }
  return kExitPass;
}

int do_verify_isometry(const Opts& o, std::ostream& out) {
  const HermiteCoeffs c = read_coeffs(o.viso.in);
  PropagatorSpec s;
  s.rho = Eigen::VectorXcd::Ones(c.dim());
  s.zeta = Complex(0.0, o.t);
  s.r = o.viso.r;
  const RadialProfile w0 = parse_profile(o.w0);
  const double before = hilbert_mod_norm(c, w0);
  const double after = hilbert_mod_norm(apply_propagator(c, s), w0);
  const double rel = std::abs(after - before) / std::max(before, 1e-300);
  emit_json({{"before", before}, {"after", after}, {"relative_change", rel}}, o.viso.out, out);
  if (!(rel <= 1e-12)) throw CheckFailed("Hilbert modulation norm changed beyond 1e-12");
  return kExitPass;
}

// ----- parser ---------------------------------------------------------------

void add_io(CLI::App* sub, Common& c, bool needs_in = true) {
  auto* in = sub->add_option("--in", c.in, "input JSON file");
  if (needs_in) in->required();
  sub->add_option("--out", c.out, "output file (stdout when omitted)");
}

void add_hamiltonian(CLI::App* sub, Common& c) {
  sub->add_option("--rho", c.rho, "order per axis, comma separated; complex as a+bi");
  sub->add_option("--c", c.c, "constant shift c (complex)");
  sub->add_option("--r", c.r, "power r");
}

void add_lattice(CLI::App* sub, Common& c) {
  sub->add_option("--points", c.points, "lattice points per axis")->check(CLI::Range(2, 100000));
  sub->add_option("--half-width", c.half_width, "lattice half width (default sqrt(2N)+4)");
}

void add_space(CLI::App* sub, Opts& o) {
  sub->add_option("--p", o.p, "x exponent (inf allowed)");
  sub->add_option("--q", o.q, "xi exponent (inf allowed)");
  sub->add_option("--weight", o.weight, "constant | poly:<r> | radial-poly:<r>");
}

// Turns {"verb": "...", "args": {...}} into a command line.
std::vector<std::string> config_to_args(const Json& cfg) {
  if (!cfg.is_object()) throw DomainError("$: expected an object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (it.key() != "verb" && it.key() != "args") throw DomainError("$." + it.key() + ": unknown field");
  }
  if (!cfg.contains("verb") || !cfg["verb"].is_string()) throw DomainError("$.verb: expected a string");
  std::vector<std::string> args{"oscitool"};
  std::stringstream verb(cfg["verb"].get<std::string>());
  for (std::string w; verb >> w;) {
    if (w == "run") throw DomainError("$.verb: run cannot nest");
    args.push_back(w);
  }
  if (cfg.contains("args")) {
    const Json& a = cfg["args"];
    if (!a.is_object()) throw DomainError("$.args: expected an object");
    for (auto it = a.begin(); it != a.end(); ++it) {
      const std::string path = "$.args." + it.key();
      const Json& v = it.value();
      const std::string flag = "--" + it.key();
      if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back(flag);
      } else if (v.is_string()) {
        args.push_back(flag);
        args.push_back(v.get<std::string>());
      } else if (v.is_number()) {
        args.push_back(flag);
        args.push_back(v.is_number_integer() ? std::to_string(v.get<long long>()) : fmt(v.get<double>()));
      } else if (v.is_array()) {
        std::string joined;
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (!v[k].is_number() && !v[k].is_string()) throw DomainError(path + "[" + std::to_string(k) + "]: expected a number or string");
          joined += (k ? "," : "") + (v[k].is_string() ? v[k].get<std::string>() : fmt(v[k].get<double>()));
        }
        args.push_back(flag);
        args.push_back(joined);
      } else {
        throw DomainError(path + ": unsupported value type");
      }
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Fractional Fourier transforms, oscillator propagators and modulation-space norms"};
  app.name(args.empty() ? "oscitool" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);

  auto* frft = app.add_subcommand("frft", "fractional Fourier transform of a coefficient or grid file");
  add_io(frft, o.frft);
  frft->add_option("--rho", o.frft.rho, "order per axis")->required();
  frft->add_option("--route", o.route, "spectral | kernel");
  frft->add_option("--kernel-points", o.kernel_points, "grid nodes per axis for the kernel route");

  auto* stft = app.add_subcommand("stft", "Gaussian-window STFT on a phase-space lattice");
  add_io(stft, o.stft);
  add_lattice(stft, o.stft);

  auto* prop = app.add_subcommand("propagate", "apply exp(zeta H^r_{x,rho,c})");
  add_io(prop, o.prop);
  add_hamiltonian(prop, o.prop);
  prop->add_option("--zeta", o.zeta, "complex time zeta");

  auto* cls = app.add_subcommand("classify", "growth class of a coefficient sequence");
  add_io(cls, o.cls);

  auto* norm = app.add_subcommand("norm", "modulation or amalgam quasi-norm");
  add_io(norm, o.norm);
  add_lattice(norm, o.norm);
  add_space(norm, o);
  norm->add_option("--space", o.space, "M | W");

  auto* evolve = app.add_subcommand("evolve", "norm trajectory of exp(-itH^r) u0");
  add_io(evolve, o.evolve);
  add_hamiltonian(evolve, o.evolve);
  add_lattice(evolve, o.evolve);
  add_space(evolve, o);
  evolve->add_option("--space", o.space, "l2 | M | W");
  evolve->add_option("--T", o.T, "time horizon");
  evolve->add_option("--steps", o.steps, "time intervals");

  auto* duh = app.add_subcommand("duhamel", "Duhamel integrals S1 or S2 of a time-constant source");
  add_io(duh, o.duh);
  add_hamiltonian(duh, o.duh);
  add_lattice(duh, o.duh);
  add_space(duh, o);
  duh->add_option("--space", o.space, "l2 | M | W");
  duh->add_option("--variant", o.variant, "s1 | s2");
  duh->add_option("--T", o.T, "time horizon");
  duh->add_option("--steps", o.steps, "time intervals");
  duh->add_flag("--check", o.check, "exit 1 when the refinement gap exceeds 1%");

  auto* strich = app.add_subcommand("strichartz", "Strichartz-type estimates on modulation spaces");
  add_io(strich, o.strich, false);
  add_hamiltonian(strich, o.strich);
  strich->add_option("--points", o.strich.points, "lattice points per axis");
  strich->add_option("--estimate", o.estimate, "duhamel | weak | l2 | inhomogeneous");
  strich->add_option("--p", o.p);
  strich->add_option("--q", o.q);
  strich->add_option("--p0", o.p0);
  strich->add_option("--r0", o.r0);
  strich->add_option("--p2", o.p2);
  strich->add_option("--p02", o.p02);
  strich->add_option("--pairing", o.pairing, "MM | MW | WM | WW");
  strich->add_option("--variant", o.variant, "s1 | s2");
  strich->add_option("--T", o.T, "time horizon");
  strich->add_option("--steps", o.steps, "time intervals");
  strich->add_option("--dim", o.dim, "dimension when no input is given");
  strich->add_flag("--sweep", o.sweep_flag, "sweep h_0..h_8 and 20 random inputs");
  strich->add_option("--seed", o.seed, "random seed for --sweep");

  auto* verify = app.add_subcommand("verify", "numerical checks");
  verify->require_subcommand(1);
  auto* vid = verify->add_subcommand("identity", "propagator multiplier vs FrFT multiplier");
  vid->add_option("--rho", o.vid.rho, "order")->required();
  vid->add_option("--c", o.vid.c, "constant c");
  vid->add_option("--N", o.N, "truncation");
  vid->add_option("--dim", o.dim, "dimension");
  vid->add_option("--out", o.vid.out);
  auto* vmink = verify->add_subcommand("minkowski", "rotated Minkowski inequality");
  add_io(vmink, o.vmink, false);
  add_lattice(vmink, o.vmink);
  vmink->add_option("--p", o.p);
  vmink->add_option("--q", o.q);
  vmink->add_option("--rho", o.vmink.rho, "scalar order")->required();
  vmink->add_option("--form", o.form, "sin | cos");
  vmink->add_option("--dim", o.dim, "dimension when no input is given");
  auto* vest = verify->add_subcommand("frft-estimate", "FrFT mapping estimates over a sweep of orders");
  add_io(vest, o.vest);
  add_lattice(vest, o.vest);
  add_space(vest, o);
  vest->add_option("--direction", o.direction, "MM | WW | MW | WM");
  vest->add_option("--sweep", o.sweep, "rho=start:stop:step or a comma list");
  vest->add_option("--expect-slope", o.expect_slope, "exit 1 unless the fitted slope is within --slope-tol");
  vest->add_option("--slope-tol", o.slope_tol);
  auto* viso = verify->add_subcommand("isometry", "Hilbert modulation norm under exp(itH^r)");
  add_io(viso, o.viso);
  viso->add_option("--t", o.t, "time");
  viso->add_option("--r", o.viso.r, "power");
  viso->add_option("--w0", o.w0, "one | sqrt | poly:<k>");

  auto* runcfg = app.add_subcommand("run", "run a JSON experiment config");
  runcfg->add_option("--config", o.config, "config file")->required();

  try {
    // CLI11 consumes a reversed argument list without the program name
    std::vector<std::string> rev;
    if (!args.empty()) rev.assign(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (runcfg->parsed()) {
      const auto sub = config_to_args(read_json(o.config));
      return run(sub, out, err);
    }
    if (frft->parsed()) return do_frft(o, out);
    if (stft->parsed()) return do_stft(o, out);
    if (prop->parsed()) return do_propagate(o, out, err);
    if (cls->parsed()) return do_classify(o, out);
    if (norm->parsed()) return do_norm(o, out);
    if (evolve->parsed()) return do_evolve(o, out);
    if (duh->parsed()) return do_duhamel(o, out, err);
    if (strich->parsed()) return do_strichartz(o, out);
    if (vid->parsed()) return do_verify_identity(o, out);
    if (vmink->parsed()) return do_verify_minkowski(o, out);
    if (vest->parsed()) return do_verify_estimate(o, out, err);
    if (viso->parsed()) return do_verify_isometry(o, out);
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace osc::cli
