#include "scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lgt/basis.hpp"
#include "lgt/dense.hpp"
#include "lgt/dynamics.hpp"
#include "lgt/floquet.hpp"
#include "lgt/gauss.hpp"
#include "lgt/hamiltonians.hpp"
#include "lgt/observables.hpp"
#include "lgt/static_gauge.hpp"

namespace lgt::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Strict config sections.

class Section {
 public:
  Section(const json& j, std::string path, json& resolved)
      : j_(j), path_(std::move(path)), out_(resolved) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    if (!out_.is_object()) out_ = json::object();
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  double number(const std::string& key) {
    if (!has(key)) throw ConfigError(field(key), "required number is missing");
    return read_number(key);
  }
  double number(const std::string& key, double fallback) {
    if (!has(key)) return out_[key] = fallback, mark(key), fallback;
    return read_number(key);
  }

  long integer(const std::string& key) {
    if (!has(key)) throw ConfigError(field(key), "required integer is missing");
    return read_integer(key);
  }
  long integer(const std::string& key, long fallback) {
    if (!has(key)) return out_[key] = fallback, mark(key), fallback;
    return read_integer(key);
  }

  std::optional<double> optional_number(const std::string& key) {
    mark(key);
    if (!has(key)) {
      out_[key] = nullptr;
      return std::nullopt;
    }
    return read_number(key);
  }

  std::string string(const std::string& key, const std::set<std::string>& allowed) {
    if (!has(key)) throw ConfigError(field(key), "required string is missing");
    return read_string(key, allowed);
  }
  std::string string(const std::string& key, const std::set<std::string>& allowed,
                     const std::string& fallback) {
    if (!has(key)) return out_[key] = fallback, mark(key), fallback;
    return read_string(key, allowed);
  }

  bool boolean(const std::string& key, bool fallback) {
    mark(key);
    if (!has(key)) return out_[key] = fallback, fallback;
    if (!j_.at(key).is_boolean()) throw ConfigError(field(key), "expected true or false");
    return out_[key] = j_.at(key).get<bool>(), j_.at(key).get<bool>();
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    mark(key);
    if (!has(key)) return out_[key] = fallback, fallback;
    return read_numbers(key);
  }
  std::vector<double> numbers(const std::string& key) {
    mark(key);
    if (!has(key)) throw ConfigError(field(key), "required list is missing");
    return read_numbers(key);
  }

  /// Nested object; a missing optional section reads as empty.
  Section child(const std::string& key, bool required = false) {
    mark(key);
    if (!has(key)) {
      if (required) throw ConfigError(field(key), "required section is missing");
      return Section(empty(), field(key), out_[key]);
    }
    return Section(j_.at(key), field(key), out_[key]);
  }

  const json& raw(const std::string& key) const { return j_.at(key); }
  void mark(const std::string& key) { used_.insert(key); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  json& resolved() { return out_; }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }

  double read_number(const std::string& key) {
    mark(key);
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
    out_[key] = x;
    return x;
  }
  long read_integer(const std::string& key) {
    mark(key);
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    out_[key] = v.get<long>();
    return v.get<long>();
  }
  std::string read_string(const std::string& key, const std::set<std::string>& allowed) {
    mark(key);
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    const auto s = v.get<std::string>();
    if (!allowed.empty() && !allowed.count(s)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(field(key), "'" + s + "' is not one of: " + list);
    }
    out_[key] = s;
    return s;
  }
  std::vector<double> read_numbers(const std::string& key) {
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected a list of numbers");
    std::vector<double> xs;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      xs.push_back(v[i].get<double>());
    }
    out_[key] = xs;
    return xs;
  }

  const json& j_;
  std::string path_;
  json& out_;
  std::set<std::string> used_;
};

void require(bool ok, const Section& s, const std::string& key, const std::string& msg) {
  if (!ok) throw ConfigError(s.field(key), msg);
}

// ---------------------------------------------------------------------------
// CSV output.

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
    line(cells);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(num(v));
    row(cells);
  }
  std::string str() const { return body_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << '\n';
  }
  std::size_t width_;
  std::ostringstream body_;
};

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// 1D gauge models shared by several scenarios.

struct ChainModel {
  std::string type;
  std::size_t n = 0;
  SpinModelParams encoded;
  SchwingerParams schwinger;
  GaussLaw law;
  BasisPtr basis;
  SparseOperator h;
  std::vector<SparseOperator> generators;
};

ChainModel read_chain_model(Section& m, bool allow_schwinger) {
  ChainModel c;
  c.type = m.string("type", allow_schwinger ? std::set<std::string>{"encoded", "schwinger"}
                                            : std::set<std::string>{"encoded"});
  const long n = m.integer("n_sites");
  require(n >= 2 && n <= 24, m, "n_sites", "must be between 2 and 24");
  c.n = static_cast<std::size_t>(n);
  const double t = m.number("t");
  require(t >= 0.0, m, "t", "must be >= 0");
  const double mass = m.number("m");
  const double g2 = m.number("g2");
  require(g2 >= 0.0, m, "g2", "must be >= 0");
  const double background = m.number("background");
  c.law.background = background;

  if (c.type == "encoded") {
    c.encoded = {c.n, t, mass, g2, background};
    if (c.n > 20) throw CapacityError("encoded model", std::pow(2.0, n), std::pow(2.0, 20));
    c.basis = spin_chain_basis(c.n);
    c.h = spin_encoded_hamiltonian(c.encoded, c.basis);
  } else {
    auto link = m.child("link", true);
    const auto kind = link.string("kind", {"quantum_link", "truncated_wilson"});
    LinkKind lk = LinkKind::none();
    if (kind == "quantum_link") {
      const long s2 = link.integer("twice_spin");
      require(s2 >= 1, link, "twice_spin", "must be >= 1");
      lk = LinkKind::quantum_link(static_cast<int>(s2));
    } else {
      const long cut = link.integer("cutoff");
      require(cut >= 0, link, "cutoff", "must be >= 0");
      lk = LinkKind::truncated_wilson(static_cast<int>(cut));
    }
    link.finish();
    const auto boundary = m.string("boundary", {"open", "periodic"}, "open");
    c.law.right_edge = m.optional_number("right_edge");
    const auto phase = m.string("phase", {"imaginary", "real"}, "imaginary");
    std::optional<int> filling;
    if (m.has("fermion_number")) {
      const long f = m.integer("fermion_number");
      require(f >= 0 && f <= n, m, "fermion_number", "must be between 0 and n_sites");
      filling = static_cast<int>(f);
    } else {
      m.mark("fermion_number");
      m.resolved()["fermion_number"] = nullptr;
    }
    c.schwinger = {t, mass, g2, phase == "real" ? HoppingPhase::real : HoppingPhase::imaginary};
    const auto geometry = chain(c.n, boundary == "open" ? Boundary::open : Boundary::periodic);
    c.basis = gauss_sector_basis(geometry, lk, c.law, filling);
    if (c.basis->size() == 0) throw InvalidArgument("the requested Gauss sector is empty");
    c.h = schwinger_hamiltonian(c.schwinger, c.basis);
    c.generators = gauss_generators(c.basis, c.law);
  }
  m.finish();
  return c;
}

// Basis as {"sites", "links", "link_kind", "states": [{"index", "occupations", "links"}]},
// occupations as a site-ordered 0/1 string and links as field values.
std::string basis_dump(const SectorBasis& b) {
  json states = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string occ;
    for (std::size_t s = 0; s < b.num_sites(); ++s) occ += b.has_matter() && b.occupied(i, s) ? '1' : '0';
    json links = json::array();
    for (std::size_t l = 0; l < b.num_links(); ++l) links.push_back(b.link_value(i, l));
    states.push_back({{"index", i}, {"occupations", occ}, {"links", links}});
  }
  const json out = {{"sites", b.num_sites()},
                    {"links", b.num_links()},
                    {"link_kind", b.has_links() ? b.link_kind().describe() : "none"},
                    {"states", states}};
  return out.dump(1) + "\n";
}

// Nonzero entries as row,col,re,im in column-major order.
std::string triplet_dump(const SparseOperator& op) {
  Csv csv({"row", "col", "re", "im"});
  const auto& m = op.matrix();
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      csv.row({static_cast<double>(it.row()), static_cast<double>(it.col()), it.value().real(),
               it.value().imag()});
    }
  }
  return csv.str();
}

void validate_model(const ChainModel& c) {
  if (!c.h.is_hermitian()) throw ValidationFailure("Hamiltonian is not Hermitian");
  for (std::size_t r = 0; r < c.generators.size(); ++r) {
    if (commutator(c.h, c.generators[r]).max_abs() > 1e-12) {
      throw ValidationFailure("Hamiltonian does not commute with Gauss generator " + std::to_string(r));
    }
  }
}

QuantumState bare_vacuum(const ChainModel& c) {
  ProductState vac;
  for (std::size_t s = 0; s < c.n; s += 2) vac.occupations |= std::uint64_t{1} << s;
  if (c.basis->has_links()) {
    const int d = c.basis->link_kind().index_of(c.law.background);
    if (d < 0) throw InvalidArgument("background field is not in the link spectrum");
    vac.link_digits.assign(c.basis->num_links(), d);
  }
  const auto idx = c.basis->find(vac);
  if (!idx) throw InvalidArgument("the bare vacuum is not in the selected sector");
  return QuantumState::basis_state(c.basis, *idx);
}

// ---------------------------------------------------------------------------
// Scenarios.

ScenarioResult spectrum(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const auto model = read_chain_model(m, true);
  auto nm = root.child("numerics");
  const long count = nm.integer("n_eigenvalues", 0);
  require(count >= 0, nm, "n_eigenvalues", "must be >= 0");
  const bool dump = nm.boolean("dump", false);
  nm.finish();
  validate_model(model);
  const auto e = eigenvalues(model.h);
  const auto k = count == 0 ? e.size() : std::min<Eigen::Index>(count, e.size());
  Csv csv({"index", "energy"});
  for (Eigen::Index i = 0; i < k; ++i) csv.row({num(static_cast<double>(i)), num(e(i))});
  r.files.push_back({"spectrum.csv", csv.str()});
  if (dump) {
    r.files.push_back({"basis.json", basis_dump(*model.basis)});
    r.files.push_back({"hamiltonian.csv", triplet_dump(model.h)});
  }
  r.results = {{"dimension", model.basis->size()}, {"ground_energy", e(0)}};
  return r;
}

ScenarioResult evolve(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const auto model = read_chain_model(m, true);
  auto nm = root.child("numerics");
  const double t_final = nm.number("t_final", 5.0);
  require(t_final > 0.0, nm, "t_final", "must be > 0");
  const double dt = nm.number("dt", 0.05);
  require(dt > 0.0, nm, "dt", "must be > 0");
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  require(steps >= 1 && std::abs(static_cast<double>(steps) * dt - t_final) < 1e-9 * t_final, nm,
          "dt", "must divide t_final");
  const auto method = nm.string("method", {"auto", "exact", "krylov"}, "auto");
  KrylovOptions ko;
  ko.krylov_dim = static_cast<int>(nm.integer("krylov_dim", 20));
  require(ko.krylov_dim >= 4, nm, "krylov_dim", "must be >= 4");
  ko.tolerance = nm.number("tolerance", 1e-10);
  require(ko.tolerance > 0.0, nm, "tolerance", "must be > 0");
  const long cut = nm.integer("cut", static_cast<long>(model.n / 2));
  require(cut >= 1 && cut < static_cast<long>(model.n), nm, "cut", "must satisfy 1 <= cut < n_sites");
  const bool negativity = nm.boolean("negativity", false);
  nm.finish();
  validate_model(model);

  const auto psi0 = bare_vacuum(model);
  const bool exact =
      method == "exact" || (method == "auto" && model.h.dim() <= kMaxDenseDim);
  EvolutionResult traj;
  if (exact) {
    std::vector<double> times;
    for (std::size_t k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * dt);
    traj = evolve_exact(model.h, psi0, times);
  } else {
    traj = evolve_krylov(model.h, psi0, dt, steps, ko);
  }
  RecordOptions ro;
  if (model.type == "encoded") ro.encoded_background = model.law.background;
  ro.generators = model.generators;
  ro.cut = static_cast<std::size_t>(cut);
  ro.negativity = negativity;
  const auto records = record_trajectory(traj, psi0, ro);

  std::vector<std::string> header{"time", "nu", "persistence_re", "persistence_im",
                                  "persistence_abs2", "gauss_violation", "entropy"};
  if (negativity) header.push_back("negativity");
  const std::size_t nlinks = records.front().field.size();
  for (std::size_t l = 0; l < nlinks; ++l) header.push_back("L_" + std::to_string(l));
  Csv csv(header);
  double max_drift = 0.0;
  double max_violation = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& rec = records[k];
    std::vector<double> row{rec.time, rec.nu, rec.persistence.real(), rec.persistence.imag(),
                            std::norm(rec.persistence), rec.gauss_violation, rec.entropy};
    if (negativity) row.push_back(*rec.negativity);
    row.insert(row.end(), rec.field.begin(), rec.field.end());
    csv.row(row);
    max_drift = std::max(max_drift, traj.norm_drift[k]);
    max_violation = std::max(max_violation, rec.gauss_violation);
  }
  r.files.push_back({"trajectory.csv", csv.str()});
  r.results = {{"method", traj.method},
               {"dimension", model.basis->size()},
               {"steps", steps},
               {"max_norm_drift", max_drift},
               {"max_gauss_violation", max_violation},
               {"entropy_log_base", "e"}};
  return r;
}

ScenarioResult trotter(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const auto model = read_chain_model(m, false);
  auto nm = root.child("numerics");
  const double t_final = nm.number("t_final", 1.0);
  require(t_final > 0.0, nm, "t_final", "must be > 0");
  const auto steps = nm.numbers("n_steps", {16, 32, 64, 128});
  for (double s : steps) require(s >= 1 && s == std::floor(s), nm, "n_steps", "entries must be positive integers");
  const auto orders = nm.numbers("orders", {1, 2});
  for (double o : orders) require(o == 1 || o == 2, nm, "orders", "entries must be 1 or 2");
  nm.finish();
  validate_model(model);

  const auto psi0 = bare_vacuum(model);
  const auto split = TermSplit::create(model.h, spin_encoded_terms(model.encoded, model.basis));
  const std::vector<double> at{t_final};
  const Vector exact = evolve_exact(model.h, psi0, at).states.back();
  Csv csv({"order", "n_steps", "gate_count", "error"});
  json slopes = json::object();
  for (double o : orders) {
    std::vector<double> xs, errs;
    for (double s : steps) {
      const auto n = static_cast<std::size_t>(s);
      const auto res = trotter_evolve(split, psi0, t_final, n, static_cast<int>(o), n);
      const double err = (res.states.back() - exact).norm();
      csv.row({o, s, static_cast<double>(res.gate_count), err});
      xs.push_back(s);
      errs.push_back(err);
    }
    slopes["order_" + std::to_string(static_cast<int>(o))] =
        xs.size() >= 2 ? json(fitted_slope(xs, errs)) : json(nullptr);
  }
  r.files.push_back({"trotter.csv", csv.str()});
  r.results = {{"fitted_slopes", slopes}, {"terms", split.terms().size()}};
  return r;
}

DriveSpec read_drive(Section& m) {
  const auto system = m.string("system", {"two-level", "spin-chain"});
  const double amp = m.number("amplitude");
  const double field = m.number("field");
  DriveSpec d;
  if (system == "two-level") {
    DenseMatrix sz(2, 2), sp(2, 2);
    sz << 1, 0, 0, -1;
    sp << 0, 1, 0, 0;
    d.h0 = SparseOperator::from_dense(0.5 * field * sz);
    d.harmonics.push_back({1, SparseOperator::from_dense(amp * sp), std::nullopt});
  } else {
    const long n = m.integer("n_sites");
    require(n >= 2 && n <= 8, m, "n_sites", "must be between 2 and 8");
    const auto b = spin_chain_basis(static_cast<std::size_t>(n));
    SpinModelParams hop{static_cast<std::size_t>(n), 1.0, 0.0, 0.0, 0.0};
    // The strictly lower triangle of the encoded hopping is sum s+_{j+1} s-_j.
    const auto full = spin_encoded_hamiltonian(hop, b);
    std::vector<Triplet> lower;
    for (int k = 0; k < full.matrix().outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(full.matrix(), k); it; ++it) {
        if (it.row() > it.col()) lower.emplace_back(it.row(), it.col(), amp * it.value());
      }
    }
    std::vector<Triplet> diag;
    for (std::size_t i = 0; i < b->size(); ++i) {
      double z = 0.0;
      for (long s = 0; s < n; ++s) z += b->occupied(i, static_cast<std::size_t>(s)) ? 1.0 : -1.0;
      diag.emplace_back(static_cast<int>(i), static_cast<int>(i), field * z);
    }
    d.h0 = SparseOperator::from_triplets(b, diag);
    d.harmonics.push_back({1, SparseOperator::from_triplets(b, lower), std::nullopt});
  }
  return d;
}

ScenarioResult floquet_compare(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  DriveSpec drive = read_drive(m);
  m.finish();
  auto nm = root.child("numerics");
  const auto taus = nm.numbers("taus", {0.1, 0.05, 0.025, 0.0125});
  for (double t : taus) require(t > 0.0, nm, "taus", "entries must be > 0");
  const long ns = nm.integer("n_substeps", 2000);
  require(ns >= 100, nm, "n_substeps", "must be >= 100");
  nm.finish();
  Csv csv({"tau", "omega", "deviation"});
  std::vector<double> devs;
  for (double tau : taus) {
    drive.omega = 2.0 * kPi / tau;
    const double dev = floquet_deviation(drive, static_cast<std::size_t>(ns));
    csv.row({tau, drive.omega, dev});
    devs.push_back(dev);
  }
  r.files.push_back({"floquet.csv", csv.str()});
  r.results = {{"fitted_slope", taus.size() >= 2 ? json(fitted_slope(taus, devs)) : json(nullptr)}};
  return r;
}

LatticeGeometry read_lattice(Section& s) {
  const auto ext = s.numbers("extents");
  require(ext.size() == 1 || ext.size() == 2, s, "extents", "must have one or two entries");
  std::vector<std::size_t> e;
  for (double x : ext) {
    require(x >= 2 && x == std::floor(x), s, "extents", "entries must be integers >= 2");
    e.push_back(static_cast<std::size_t>(x));
  }
  const auto b = s.string("boundary", {"open", "periodic"}, "open");
  s.finish();
  return build_lattice(static_cast<int>(e.size()), e, {b == "open" ? Boundary::open : Boundary::periodic});
}

ScenarioResult shaking(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  auto lat = m.child("lattice", true);
  const auto geometry = read_lattice(lat);
  ShakingProtocol p;
  p.period = m.number("period");
  require(p.period > 0.0, m, "period", "must be > 0");
  m.mark("offsets");
  if (!m.has("offsets") || !m.raw("offsets").is_array()) {
    throw ConfigError(m.field("offsets"), "expected a list with one entry per site");
  }
  const auto& offs = m.raw("offsets");
  auto& resolved_offs = m.resolved()["offsets"] = json::array();
  for (std::size_t i = 0; i < offs.size(); ++i) {
    resolved_offs.push_back(json::object());
    Section o(offs[i], m.field("offsets") + "[" + std::to_string(i) + "]", resolved_offs.back());
    if (o.has("samples")) {
      p.offsets.push_back(SampledOffset{o.numbers("samples")});
    } else {
      SinusoidalOffset s;
      s.amplitude = o.number("amplitude");
      s.offset = o.number("offset", 0.0);
      s.harmonic = static_cast<int>(o.integer("harmonic", 1));
      require(s.harmonic >= 1, o, "harmonic", "must be >= 1");
      s.phase = o.number("phase", 0.0);
      p.offsets.push_back(s);
    }
    o.finish();
  }
  require(p.offsets.size() == geometry.num_sites(), m, "offsets", "needs one entry per site");
  m.finish();
  auto nm = root.child("numerics");
  const long q = nm.integer("quadrature_points", 4096);
  require(q >= 1000, nm, "quadrature_points", "must be >= 1000");
  p.quadrature_points = static_cast<std::size_t>(q);
  std::optional<std::array<double, 3>> sweep;
  if (nm.has("bessel_sweep")) {
    auto sw = nm.child("bessel_sweep");
    const double a0 = sw.number("a_min", 0.0);
    const double a1 = sw.number("a_max", 5.0);
    const long pts = sw.integer("points", 101);
    require(pts >= 2, sw, "points", "must be >= 2");
    require(a1 > a0 && a0 >= 0.0, sw, "a_max", "needs 0 <= a_min < a_max");
    sw.finish();
    sweep = std::array<double, 3>{a0, a1, static_cast<double>(pts)};
  } else {
    nm.mark("bessel_sweep");
    nm.resolved()["bessel_sweep"] = nullptr;
  }
  nm.finish();

  const auto factors = shaken_hopping_factors(p, geometry);
  Csv csv({"link", "origin", "target", "factor_re", "factor_im", "factor_abs"});
  for (std::size_t l = 0; l < factors.size(); ++l) {
    const auto& link = geometry.link(l);
    csv.row({static_cast<double>(l), static_cast<double>(link.origin), static_cast<double>(link.target),
             factors[l].real(), factors[l].imag(), std::abs(factors[l])});
  }
  r.files.push_back({"factors.csv", csv.str()});
  if (sweep) {
    Csv sc({"A", "factor_re", "factor_im", "bessel_j0"});
    const auto pts = static_cast<std::size_t>((*sweep)[2]);
    const auto two = chain(2);
    double worst = 0.0;
    for (std::size_t k = 0; k < pts; ++k) {
      const double a = (*sweep)[0] + ((*sweep)[1] - (*sweep)[0]) * static_cast<double>(k) /
                                         static_cast<double>(pts - 1);
      ShakingProtocol two_site;
      two_site.period = 1.0;
      two_site.quadrature_points = p.quadrature_points;
      two_site.offsets = {SinusoidalOffset{0.0, a * 2.0 * kPi, 1, 0.0}, SinusoidalOffset{}};
      const cplx f = shaken_hopping_factors(two_site, two)[0];
      const double j0 = std::cyl_bessel_j(0.0, a);
      worst = std::max(worst, std::abs(f - j0));
      sc.row({a, f.real(), f.imag(), j0});
    }
    r.files.push_back({"bessel_sweep.csv", sc.str()});
    r.results["bessel_max_deviation"] = worst;
  }
  double largest = 0.0;
  for (const auto& f : factors) largest = std::max(largest, std::abs(f));
  r.results["links"] = factors.size();
  r.results["max_factor_abs"] = largest;
  return r;
}

void read_flux(Section& m, int& p, int& q, double& t) {
  p = static_cast<int>(m.integer("p"));
  q = static_cast<int>(m.integer("q"));
  t = m.number("t");
  require(q >= 1 && q <= 50, m, "q", "must be between 1 and 50");
  require(p >= 0, m, "p", "must be >= 0");
  require(std::gcd(p, q) == 1, m, "p", "p and q must be coprime");
  m.finish();
}

ScenarioResult hofstadter(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  int p, q;
  double t;
  read_flux(m, p, q, t);
  auto nm = root.child("numerics");
  const long nx = nm.integer("nx", 20);
  const long ny = nm.integer("ny", 20);
  require(nx >= 2 && nx <= 400, nm, "nx", "must be between 2 and 400");
  require(ny >= 2 && ny <= 400, nm, "ny", "must be between 2 and 400");
  nm.finish();
  const auto bands = hofstadter_spectrum(p, q, {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)}, t);
  Csv csv({"kx", "ky", "band", "energy"});
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < bands.grid.nx; ++i) {
    for (std::size_t j = 0; j < bands.grid.ny; ++j) {
      for (int n = 0; n < q; ++n) {
        const double e = bands.energy(i, j, n);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        csv.row({bands.kx[i], bands.ky[j], static_cast<double>(n), e});
      }
    }
  }
  r.files.push_back({"bands.csv", csv.str()});
  r.results = {{"flux", static_cast<double>(p) / q}, {"energy_min", lo}, {"energy_max", hi}};
  return r;
}

ScenarioResult chern(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  int p, q;
  double t;
  read_flux(m, p, q, t);
  auto nm = root.child("numerics");
  const auto grids = nm.numbers("grids", {20, 40});
  for (double g : grids) require(g >= 2 && g <= 400 && g == std::floor(g), nm, "grids", "entries must be integers in [2, 400]");
  const double gap_tol = nm.number("gap_tol", 1e-6);
  require(gap_tol > 0.0, nm, "gap_tol", "must be > 0");
  nm.finish();
  Csv csv({"grid", "band", "chern", "min_gap"});
  std::vector<std::vector<std::optional<int>>> all;
  for (double g : grids) {
    const auto n = static_cast<std::size_t>(g);
    const auto bands = hofstadter_spectrum(p, q, {n, n}, t);
    const auto c = chern_numbers(bands, gap_tol);
    for (int b = 0; b < q; ++b) {
      csv.row({num(g), num(b), c[b] ? std::to_string(*c[b]) : std::string("undefined"),
               num(band_gap(bands, b))});
    }
    all.push_back(c);
  }
  bool stable = true;
  for (const auto& c : all) stable = stable && c == all.front();
  json per_band = json::array();
  int sum = 0;
  bool defined = true;
  for (const auto& c : all.front()) {
    per_band.push_back(c ? json(*c) : json(nullptr));
    if (c) sum += *c; else defined = false;
  }
  r.files.push_back({"chern.csv", csv.str()});
  r.results = {{"chern", per_band}, {"stable_under_refinement", stable},
               {"sum", defined ? json(sum) : json(nullptr)}};
  return r;
}

ScenarioResult berry(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const auto texture = m.string("texture", {"monopole", "beam"});
  const double mass = m.number("mass");
  require(mass > 0.0, m, "mass", "must be > 0");
  const double omega = m.number("omega");
  require(omega > 0.0, m, "omega", "must be > 0");
  double theta_max = 0, waist = 1, kx = 0, ky = 0;
  if (texture == "beam") {
    theta_max = m.number("theta_max");
    require(theta_max >= 0.0 && theta_max <= kPi, m, "theta_max", "must lie in [0, pi]");
    waist = m.number("waist");
    require(waist > 0.0, m, "waist", "must be > 0");
    kx = m.number("k_x");
    ky = m.number("k_y");
  }
  m.finish();
  auto nm = root.child("numerics");
  const long n = nm.integer("n", 200);
  require(n >= 5 && n <= 2000, nm, "n", "must be between 5 and 2000");
  double extent = 0.0;
  std::vector<double> latitudes;
  if (texture == "beam") {
    extent = nm.number("extent", 2.0);
    require(extent > 0.0, nm, "extent", "must be > 0");
  } else {
    latitudes = nm.numbers("latitudes", {kPi / 4, kPi / 2, 3 * kPi / 4});
    for (double l : latitudes) require(l >= 0.0 && l <= kPi, nm, "latitudes", "entries must lie in [0, pi]");
  }
  nm.finish();

  TwoLevelField f;
  if (texture == "monopole") {
    f = monopole_texture(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  } else {
    f.nx = f.ny = static_cast<std::size_t>(n);
    f.dx = f.dy = 2.0 * extent / static_cast<double>(n - 1);
    f.theta.resize(f.nx * f.ny);
    f.phi.resize(f.nx * f.ny);
    for (std::size_t j = 0; j < f.ny; ++j) {
      for (std::size_t i = 0; i < f.nx; ++i) {
        const double x = -extent + f.dx * static_cast<double>(i);
        const double y = -extent + f.dy * static_cast<double>(j);
        f.theta[i + f.nx * j] = theta_max * std::exp(-(x * x + y * y) / (waist * waist));
        double ph = std::fmod(kx * x + ky * y, 2.0 * kPi);
        if (ph < 0.0) ph += 2.0 * kPi;
        f.phi[i + f.nx * j] = ph;
      }
    }
  }
  f.mass = mass;
  f.omega = omega;
  const auto closed = dressed_potentials(f);
  const auto eig = eigenvector_berry_connection(f);
  Csv csv({"ix", "iy", "theta", "phi", "ax", "ay", "v", "ax_eigenvector", "ay_eigenvector"});
  double dev = 0.0;
  for (std::size_t j = 0; j < f.ny; ++j) {
    for (std::size_t i = 0; i < f.nx; ++i) {
      const std::size_t k = i + f.nx * j;
      dev = std::max({dev, std::abs(closed.ax[k] - eig.ax[k]), std::abs(closed.ay[k] - eig.ay[k])});
      csv.row({static_cast<double>(i), static_cast<double>(j), f.theta[k], f.phi[k], closed.ax[k],
               closed.ay[k], closed.v[k], eig.ax[k], eig.ay[k]});
    }
  }
  r.files.push_back({"potentials.csv", csv.str()});
  r.results = {{"max_connection_deviation", dev},
               {"flux_closed_form", berry_flux(f, closed)},
               {"flux_from_states", berry_flux_from_states(f)}};
  if (!latitudes.empty()) {
    Csv lc({"theta0", "closed_form", "discrete", "analytic"});
    for (double th : latitudes) {
      lc.row({th, latitude_berry_phase(th, static_cast<std::size_t>(n)),
              latitude_berry_phase_discrete(th, static_cast<std::size_t>(n)),
              kPi * (std::cos(th) - 1.0)});
    }
    r.files.push_back({"latitudes.csv", lc.str()});
  }
  return r;
}

ScenarioResult penalty_check(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const long n = m.integer("n_sites");
  require(n >= 2 && n <= 6, m, "n_sites", "must be between 2 and 6");
  PenaltyParams p;
  p.t_f = m.number("t_f");
  p.t_b = m.number("t_b");
  p.u = m.number("u");
  p.v_f = m.numbers("v_f", {});
  p.v_b1 = m.numbers("v_b1", {});
  p.v_b2 = m.numbers("v_b2", {});
  p.twice_spin = static_cast<int>(m.integer("twice_spin"));
  require(p.twice_spin >= 1, m, "twice_spin", "must be >= 1");
  p.law.background = m.number("background");
  p.law.right_edge = m.optional_number("right_edge");
  m.finish();
  auto nm = root.child("numerics");
  const auto gammas = nm.numbers("gammas", {100, 200});
  for (double g : gammas) require(g > 0.0, nm, "gammas", "entries must be > 0");
  nm.finish();

  const auto basis = enumerate_basis(chain(static_cast<std::size_t>(n)), LinkKind::quantum_link(p.twice_spin));
  const auto generators = gauss_generators(basis, p.law);
  Csv csv({"gamma", "level", "full", "effective", "difference"});
  json residuals = json::array();
  std::vector<double> res;
  std::size_t kernel = 0;
  for (double g : gammas) {
    p.gamma = g;
    const auto h = penalty_hamiltonian(p, basis);
    if (!h.is_hermitian()) throw ValidationFailure("penalty Hamiltonian is not Hermitian");
    const auto eff = effective_second_order(penalty_bare_hamiltonian(p, basis), generators, g);
    kernel = eff.kernel_dim();
    if (kernel == 0) throw InvalidArgument("the gauge-invariant subspace is empty for this Gauss law");
    const auto ef = eigenvalues(h);
    const auto ee = eigenvalues(eff.h_eff);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < ee.size(); ++k) {
      worst = std::max(worst, std::abs(ef(k) - ee(k)));
      csv.row({g, static_cast<double>(k), ef(k), ee(k), ef(k) - ee(k)});
    }
    residuals.push_back(worst);
    res.push_back(worst);
  }
  json ratios = json::array();
  for (std::size_t k = 1; k < res.size(); ++k) ratios.push_back(res[k - 1] / res[k]);
  r.files.push_back({"penalty.csv", csv.str()});
  r.results = {{"kernel_dimension", kernel}, {"residuals", residuals}, {"residual_ratios", ratios}};
  return r;
}

ScenarioResult equivalence_check(Section& root) {
  ScenarioResult r;
  auto m = root.child("model", true);
  const long n = m.integer("n_sites");
  require(n >= 2, m, "n_sites", "must be >= 2");
  if (n > 8) throw CapacityError("equivalence check supports at most 8 sites", static_cast<double>(n), 8.0);
  SpinModelParams sp;
  sp.n_sites = static_cast<std::size_t>(n);
  sp.t = m.number("t");
  require(sp.t >= 0.0, m, "t", "must be >= 0");
  sp.m = m.number("m");
  sp.g2 = m.number("g2");
  require(sp.g2 >= 0.0, m, "g2", "must be >= 0");
  sp.background = m.number("background");
  // Smallest cutoff that keeps every encoded configuration: link fields span
  // [L0 - floor(n/2), L0 + floor((n-1)/2)].
  const double reach = std::max(std::abs(sp.background - static_cast<double>(n / 2)),
                                std::abs(sp.background + static_cast<double>((n - 1) / 2)));
  const long exact_cutoff = static_cast<long>(std::ceil(reach));
  const long cutoff = m.integer("cutoff", exact_cutoff);
  require(cutoff >= 0, m, "cutoff", "must be >= 0");
  m.finish();
  auto nm = root.child("numerics");
  const double tol = nm.number("tolerance", 1e-10);
  require(tol > 0.0, nm, "tolerance", "must be > 0");
  nm.finish();

  const auto enc = spin_encoded_hamiltonian(sp);
  GaussLaw law;
  law.background = sp.background;
  const auto sector = gauss_sector_basis(chain(sp.n_sites), LinkKind::truncated_wilson(static_cast<int>(cutoff)), law);
  const std::size_t want = std::size_t{1} << sp.n_sites;
  r.results = {{"encoded_dimension", want}, {"sector_dimension", sector->size()}};
  if (sector->size() != want) {
    r.passed = false;
    r.diagnostic = "truncated-Wilson cutoff " + std::to_string(cutoff) +
                   " removes states required by the encoding: sector dimension " +
                   std::to_string(sector->size()) + " < " + std::to_string(want);
    r.results["pass"] = false;
    r.results["max_deviation"] = nullptr;
    r.results["diagnostic"] = r.diagnostic;
    return r;
  }
  const auto h = schwinger_hamiltonian({sp.t, sp.m, sp.g2, HoppingPhase::imaginary}, sector);
  for (const auto& g : gauss_generators(sector, law)) {
    if (commutator(h, g).max_abs() > 1e-12) throw ValidationFailure("sector Hamiltonian is not gauge invariant");
  }
  const auto a = eigenvalues(enc);
  const auto b = eigenvalues(h);
  Csv csv({"index", "encoded", "gauge_sector", "difference"});
  double dev = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    dev = std::max(dev, std::abs(a(k) - b(k)));
    csv.row({static_cast<double>(k), a(k), b(k), a(k) - b(k)});
  }
  r.files.push_back({"equivalence.csv", csv.str()});
  r.passed = dev < tol;
  if (!r.passed) r.diagnostic = "spectral deviation " + num(dev) + " exceeds tolerance " + num(tol);
  r.results["pass"] = r.passed;
  r.results["max_deviation"] = dev;
  if (!r.passed) r.results["diagnostic"] = r.diagnostic;
  return r;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> kinds{
      "spectrum", "evolve", "trotter", "floquet-compare", "shaking", "hofstadter",
      "chern", "berry", "penalty-check", "equivalence-check"};
  return kinds;
}

ScenarioResult run_scenario(const std::string& kind, const json& config) {
  json resolved = json::object();
  Section root(config, "", resolved);
  if (root.has("scenario")) {
    const auto s = root.string("scenario", {});
    if (s != kind) throw ConfigError("scenario", "config is for '" + s + "' but '" + kind + "' was requested");
  } else {
    root.mark("scenario");
  }
  resolved["scenario"] = kind;

  ScenarioResult r;
  if (kind == "spectrum") r = spectrum(root);
  else if (kind == "evolve") r = evolve(root);
  else if (kind == "trotter") r = trotter(root);
  else if (kind == "floquet-compare") r = floquet_compare(root);
  else if (kind == "shaking") r = shaking(root);
  else if (kind == "hofstadter") r = hofstadter(root);
  else if (kind == "chern") r = chern(root);
  else if (kind == "berry") r = berry(root);
  else if (kind == "penalty-check") r = penalty_check(root);
  else if (kind == "equivalence-check") r = equivalence_check(root);
  else throw ConfigError("", "unknown scenario '" + kind + "'");
  root.finish();
  r.resolved = resolved;
  return r;
}

int run_to_directory(const RunOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto started = utc_now();
  auto fail = [&](int code, const std::string& msg) {
    std::cerr << "lgtsim " << o.kind << ": " << msg << '\n';
    return code;
  };
  if (o.threads < 1) return fail(kExitConfig, "--threads must be >= 1");

  json config;
  {
    std::ifstream in(o.config);
    if (!in) return fail(kExitConfig, "cannot read config file " + o.config.string());
    try {
      config = json::parse(in);
    } catch (const json::parse_error& e) {
      return fail(kExitConfig, o.config.string() + ": " + e.what());
    }
  }

  ScenarioResult r;
  try {
    r = run_scenario(o.kind, config);
  } catch (const ConfigError& e) {
    return fail(kExitConfig, std::string("config error: ") + e.what());
  } catch (const CapacityError& e) {
    return fail(kExitCapacity, std::string("capacity error: ") + e.what());
  } catch (const InvalidArgument& e) {
    return fail(kExitConfig, std::string("invalid parameters: ") + e.what());
  } catch (const ValidationFailure& e) {
    return fail(kExitNumerical, std::string("validation failed: ") + e.what());
  } catch (const NumericalError& e) {
    return fail(kExitNumerical, std::string("numerical error: ") + e.what());
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json meta = {{"scenario", o.kind},
               {"version", LGT_VERSION},
               {"config", r.resolved},
               {"threads", o.threads},
               {"results", r.results},
               {"status", r.passed ? "pass" : "fail"},
               {"files", json::array()},
               {"timestamp", {{"started_utc", started}, {"elapsed_seconds", elapsed}}}};
  for (const auto& f : r.files) meta["files"].push_back(f.name);

  try {
    std::filesystem::create_directories(o.out);
    for (const auto& f : r.files) {
      std::ofstream out(o.out / f.name, std::ios::binary);
      out << f.body;
      if (!out) throw std::runtime_error("cannot write " + (o.out / f.name).string());
    }
    std::ofstream out(o.out / "metadata.json", std::ios::binary);
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write metadata.json");
  } catch (const std::exception& e) {
    return fail(kExitConfig, std::string("output error: ") + e.what());
  }
  if (o.verbose) std::cerr << "lgtsim " << o.kind << ": wrote " << r.files.size() + 1 << " files to " << o.out.string() << '\n';
  if (!r.passed) return fail(kExitNumerical, r.diagnostic);
  return kExitOk;
}

int main_cli(int argc, char** argv) {
  CLI::App app{"lgtsim: lattice gauge theory simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LGT_VERSION);
  RunOptions o;
  std::string config, out;
  for (const auto& kind : scenario_kinds()) {
    auto* sub = app.add_subcommand(kind, "run the " + kind + " scenario");
    sub->add_option("--config", config, "JSON scenario configuration")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->add_option("--threads", o.threads, "worker threads (computations are single-threaded)");
    sub->add_flag("--verbose", o.verbose, "report progress on stderr");
    sub->callback([&o, kind] { o.kind = kind; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  o.config = config;
  o.out = out;
  return run_to_directory(o);
}

}  // namespace lgt::cli
