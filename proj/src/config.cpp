#include "dephasure/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dephasure/constants.hpp"

namespace dephasure::io {

namespace {

const double kTwoPi = 2.0 * constants::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

struct Doc {
  // section -> key -> entry
  std::map<std::string, std::map<std::string, Entry>> sections;

  const Entry* find(const std::string& sec, const std::string& key) const {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }
};

Doc tokenize(const std::string& text) {
  Doc doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header '" + line + "'", lineno);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", lineno);
      doc.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
    }
    if (section.empty()) {
      throw ConfigError("key outside of any [section]", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("empty key or value", lineno);
    }
    auto& sec = doc.sections[section];
    if (sec.count(key) != 0) {
      throw ConfigError("duplicate key '" + section + "." + key + "'", lineno);
    }
    sec[key] = Entry{value, lineno, false};
  }
  return doc;
}

enum class Unit {
  Angular,
  Time,
  Temperature,
  Length,
  Force,
  TensionPerLength,
  Density,
  Scalar
};

double suffix_factor(Unit unit, const std::string& suffix, int line) {
  struct Row {
    const char* name;
    double factor;
  };
  static const std::map<Unit, std::vector<Row>> kTable = {
      {Unit::Angular,
       {{"rad/s", 1.0},
        {"Hz", kTwoPi},
        {"kHz", kTwoPi * 1e3},
        {"MHz", kTwoPi * 1e6},
        {"GHz", kTwoPi * 1e9}}},
      {Unit::Time, {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}}},
      {Unit::Temperature, {{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}}},
      {Unit::Length,
       {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}}},
      {Unit::Force, {{"N", 1.0}, {"mN", 1e-3}, {"uN", 1e-6}, {"nN", 1e-9}}},
      {Unit::TensionPerLength, {{"N/m", 1.0}}},
      {Unit::Density, {{"kg/m3", 1.0}, {"kg/m^3", 1.0}}},
      {Unit::Scalar, {}},
  };
  if (suffix.empty()) return 1.0;
  for (const Row& r : kTable.at(unit)) {
    if (suffix == r.name) return r.factor;
  }
  throw ConfigError("unknown unit '" + suffix + "'", line);
}

double parse_quantity(const std::string& text, Unit unit, int line) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str()) throw ConfigError("malformed number '" + t + "'", line);
  const std::string suffix = trim(end);
  return v * suffix_factor(unit, suffix, line);
}

long parse_int(const std::string& text, int line) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || trim(end).size() != 0) {
    throw ConfigError("malformed integer '" + t + "'", line);
  }
  return v;
}

struct FieldRef {
  Unit unit;
  std::function<double&(RunConfig&)> ref;
};

// dotted parameter name -> (unit, accessor); used by the parser and by sweeps
const std::map<std::string, FieldRef>& field_table() {
  static const std::map<std::string, FieldRef> table = {
      {"bath.coupling_c", {Unit::Scalar, [](RunConfig& c) -> double& { return c.generic.model.coupling_c; }}},
      {"bath.omega_1", {Unit::Angular, [](RunConfig& c) -> double& { return c.generic.model.omega_1; }}},
      {"bath.omega_u", {Unit::Angular, [](RunConfig& c) -> double& { return c.generic.model.omega_u; }}},
      {"bath.boundary_weight", {Unit::Scalar, [](RunConfig& c) -> double& { return c.generic.model.boundary_weight; }}},
      {"bath.continuum_correction", {Unit::Scalar, [](RunConfig& c) -> double& { return c.generic.model.continuum_correction; }}},
      {"bath.mode_cutoff_factor", {Unit::Scalar, [](RunConfig& c) -> double& { return c.generic.mode_cutoff_factor; }}},
      {"cavity.omega_cavity", {Unit::Angular, [](RunConfig& c) -> double& { return c.generic.omega_cavity; }}},
      {"thermal.temperature", {Unit::Temperature, [](RunConfig& c) -> double& { return c.generic.temperature; }}},
      {"thermal.beta_hbar", {Unit::Time, [](RunConfig& c) -> double& { return c.generic.beta_hbar; }}},
      {"strip.rho_m", {Unit::Density, [](RunConfig& c) -> double& { return c.strip.params.rho_m; }}},
      {"strip.tension_f", {Unit::Force, [](RunConfig& c) -> double& { return c.strip.params.tension_f; }}},
      {"strip.width_w", {Unit::Length, [](RunConfig& c) -> double& { return c.strip.params.width_w; }}},
      {"strip.thickness_t", {Unit::Length, [](RunConfig& c) -> double& { return c.strip.params.thickness_t; }}},
      {"strip.length_l", {Unit::Length, [](RunConfig& c) -> double& { return c.strip.params.length_l; }}},
      {"strip.metallized_dl", {Unit::Length, [](RunConfig& c) -> double& { return c.strip.params.metallized_dl; }}},
      {"strip.gap_d", {Unit::Length, [](RunConfig& c) -> double& { return c.strip.params.gap_d; }}},
      {"strip.circuit_omega", {Unit::Angular, [](RunConfig& c) -> double& { return c.strip.params.circuit_omega; }}},
      {"strip.temperature", {Unit::Temperature, [](RunConfig& c) -> double& { return c.strip.params.temperature; }}},
      {"strip.mode_cutoff_factor", {Unit::Scalar, [](RunConfig& c) -> double& { return c.strip.mode_cutoff_factor; }}},
      {"strip.boundary_weight", {Unit::Scalar, [](RunConfig& c) -> double& { return c.strip.boundary_weight; }}},
      {"membrane.rho_m", {Unit::Density, [](RunConfig& c) -> double& { return c.membrane.params.rho_m; }}},
      {"membrane.tension_per_length", {Unit::TensionPerLength, [](RunConfig& c) -> double& { return c.membrane.params.tension_per_length; }}},
      {"membrane.thickness_t", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.thickness_t; }}},
      {"membrane.side_l", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.side_l; }}},
      {"membrane.cavity_length", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.cavity_length; }}},
      {"membrane.wavelength", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.wavelength; }}},
      {"membrane.rayleigh_range", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.rayleigh_range; }}},
      {"membrane.z0", {Unit::Length, [](RunConfig& c) -> double& { return c.membrane.params.z0; }}},
      {"membrane.refractive_n", {Unit::Scalar, [](RunConfig& c) -> double& { return c.membrane.params.refractive_n; }}},
      {"membrane.temperature", {Unit::Temperature, [](RunConfig& c) -> double& { return c.membrane.params.temperature; }}},
      {"membrane.mode_cutoff_factor", {Unit::Scalar, [](RunConfig& c) -> double& { return c.membrane.mode_cutoff_factor; }}},
      {"membrane.continuum_correction", {Unit::Scalar, [](RunConfig& c) -> double& { return c.membrane.continuum_correction; }}},
      {"time_grid.t_min", {Unit::Time, [](RunConfig& c) -> double& { return c.time_grid.t_min; }}},
      {"time_grid.t_max", {Unit::Time, [](RunConfig& c) -> double& { return c.time_grid.t_max; }}},
  };
  return table;
}

// reads "section.key" quantities straight into the config via the field table
void read_field(RunConfig& cfg, const Doc& doc, const std::string& dotted,
                bool required) {
  const auto dot = dotted.find('.');
  const std::string sec = dotted.substr(0, dot);
  const std::string key = dotted.substr(dot + 1);
  const Entry* e = doc.find(sec, key);
  const FieldRef& f = field_table().at(dotted);
  if (e == nullptr) {
    if (required) throw ConfigError("missing required key '" + dotted + "'");
    return;
  }
  f.ref(cfg) = parse_quantity(e->value, f.unit, e->line);
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void TimeGrid::validate() const {
  if (points < 2) throw ConfigError("time_grid.points must be >= 2");
  if (!(t_max > t_min)) throw ConfigError("time_grid requires t_max > t_min");
  if (spacing == GridSpacing::Log && !(t_min > 0.0)) {
    throw ConfigError("log time_grid requires t_min > 0");
  }
  if (t_min < 0.0) throw ConfigError("time_grid requires t_min >= 0");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / (points - 1);
    out[static_cast<std::size_t>(i)] =
        spacing == GridSpacing::Log
            ? t_min * std::pow(t_max / t_min, u)
            : t_min + (t_max - t_min) * u;
  }
  return out;
}

void RunConfig::validate() const {
  time_grid.validate();
  if (fock_pairs.empty()) throw ConfigError("fock.pairs must list at least one pair");
  const int dim = resolved_dim();
  for (const FockPair& p : fock_pairs) {
    if (p.n < 0 || p.n_prime < 0) throw ConfigError("fock pair indices must be >= 0");
    if (p.n >= dim || p.n_prime >= dim) {
      throw ConfigError("fock pair (" + std::to_string(p.n) + ":" +
                        std::to_string(p.n_prime) + ") outside dim " +
                        std::to_string(dim));
    }
  }
  if (initial_state.kind == InitialState::Kind::Diagonal) {
    if (initial_state.diagonal_weights.empty()) {
      throw ConfigError("diagonal initial state needs weights");
    }
    if (static_cast<int>(initial_state.diagonal_weights.size()) > dim) {
      throw ConfigError("diagonal weights exceed fock dim");
    }
    for (double w : initial_state.diagonal_weights) {
      if (w < 0.0) throw ConfigError("diagonal weights must be >= 0");
    }
  } else {
    if (initial_state.sup_n == initial_state.sup_n_prime ||
        initial_state.sup_n >= dim || initial_state.sup_n_prime >= dim ||
        initial_state.sup_n < 0 || initial_state.sup_n_prime < 0) {
      throw ConfigError("superposition initial state indices invalid");
    }
  }

  switch (mode) {
    case RunMode::GenericBath: {
      generic.model.validate();
      if (!(generic.omega_cavity > 0.0)) {
        throw ConfigError("cavity.omega_cavity must be > 0");
      }
      const bool has_t = generic.temperature > 0.0;
      const bool has_b = generic.beta_hbar > 0.0;
      if (has_t == has_b) {
        throw ConfigError(
            "thermal: set exactly one of temperature or beta_hbar");
      }
      if (!(generic.mode_cutoff_factor > 0.0)) {
        throw ConfigError("bath.mode_cutoff_factor must be > 0");
      }
      break;
    }
    case RunMode::Strip:
      strip.params.validate();
      if (!(strip.mode_cutoff_factor > 0.0) || !(strip.boundary_weight >= 0.0)) {
        throw ConfigError("strip run options out of range");
      }
      break;
    case RunMode::Membrane:
      membrane.params.validate();
      if (!(membrane.mode_cutoff_factor > 0.0) ||
          !(membrane.continuum_correction > 0.0)) {
        throw ConfigError("membrane run options out of range");
      }
      break;
  }

  if (evaluation == Evaluation::ClosedForm &&
      spectral_model().cutoff_shape != bath::CutoffShape::Exponential) {
    throw ConfigError(
        "closed_form evaluation requires the exponential cutoff; use "
        "quadrature or discrete_exact");
  }

  if (!sweep.parameter.empty()) {
    if (field_table().count(sweep.parameter) == 0) {
      throw ConfigError("unknown sweep parameter '" + sweep.parameter + "'");
    }
    if (sweep.values.empty()) throw ConfigError("sweep.values is empty");
  }
}

bath::SpectralModel RunConfig::spectral_model() const {
  switch (mode) {
    case RunMode::GenericBath:
      return generic.model;
    case RunMode::Strip:
      return devices::strip_spectral_model(strip.params, strip.boundary_weight);
    case RunMode::Membrane:
      return devices::membrane_spectral_model(membrane.params,
                                              membrane.continuum_correction);
  }
  throw std::logic_error("unreachable");
}

CavityParams RunConfig::cavity() const {
  switch (mode) {
    case RunMode::GenericBath:
      return {generic.omega_cavity};
    case RunMode::Strip:
      return devices::strip_cavity(strip.params);
    case RunMode::Membrane:
      return devices::membrane_cavity(membrane.params);
  }
  throw std::logic_error("unreachable");
}

ThermalParams RunConfig::thermal() const {
  switch (mode) {
    case RunMode::GenericBath:
      return generic.temperature > 0.0
                 ? ThermalParams::from_temperature(generic.temperature)
                 : ThermalParams::from_beta_hbar(generic.beta_hbar);
    case RunMode::Strip:
      return ThermalParams::from_temperature(strip.params.temperature);
    case RunMode::Membrane:
      return ThermalParams::from_temperature(membrane.params.temperature);
  }
  throw std::logic_error("unreachable");
}

ModeBath RunConfig::build_bath() const {
  switch (mode) {
    case RunMode::GenericBath:
      return bath::discretize(generic.model, generic.mode_cutoff_factor);
    case RunMode::Strip:
      return devices::strip_bath(strip.params, strip.mode_cutoff_factor);
    case RunMode::Membrane:
      return devices::membrane_bath(membrane.params, membrane.mode_cutoff_factor);
  }
  throw std::logic_error("unreachable");
}

double RunConfig::mode_cutoff_factor() const {
  switch (mode) {
    case RunMode::GenericBath:
      return generic.mode_cutoff_factor;
    case RunMode::Strip:
      return strip.mode_cutoff_factor;
    case RunMode::Membrane:
      return membrane.mode_cutoff_factor;
  }
  throw std::logic_error("unreachable");
}

int RunConfig::resolved_dim() const {
  if (fock_dim > 0) return fock_dim;
  int dim = 2;
  for (const FockPair& p : fock_pairs) {
    dim = std::max({dim, p.n + 1, p.n_prime + 1});
  }
  if (initial_state.kind == InitialState::Kind::Superposition) {
    dim = std::max({dim, initial_state.sup_n + 1, initial_state.sup_n_prime + 1});
  } else {
    dim = std::max(dim, static_cast<int>(initial_state.diagonal_weights.size()));
  }
  return dim;
}

FockDensityMatrix RunConfig::initial_density_matrix() const {
  const int dim = resolved_dim();
  if (initial_state.kind == InitialState::Kind::Superposition) {
    return FockDensityMatrix::equal_superposition(dim, initial_state.sup_n,
                                                  initial_state.sup_n_prime);
  }
  std::vector<double> w = initial_state.diagonal_weights;
  w.resize(static_cast<std::size_t>(dim), 0.0);
  return FockDensityMatrix::diagonal(w);
}

RunConfig parse_config(const std::string& text) {
  Doc doc = tokenize(text);
  RunConfig cfg;

  // [run]
  {
    const Entry* e = doc.find("run", "mode");
    if (e == nullptr) throw ConfigError("missing required key 'run.mode'");
    if (e->value == "generic_bath") {
      cfg.mode = RunMode::GenericBath;
    } else if (e->value == "strip") {
      cfg.mode = RunMode::Strip;
    } else if (e->value == "membrane") {
      cfg.mode = RunMode::Membrane;
    } else {
      throw ConfigError("unknown run.mode '" + e->value + "'", e->line);
    }
    if (const Entry* ev = doc.find("run", "evaluation")) {
      if (ev->value == "discrete_exact") {
        cfg.evaluation = Evaluation::DiscreteExact;
      } else if (ev->value == "closed_form") {
        cfg.evaluation = Evaluation::ClosedForm;
      } else if (ev->value == "quadrature") {
        cfg.evaluation = Evaluation::Quadrature;
      } else if (ev->value == "asymptotic") {
        cfg.evaluation = Evaluation::Asymptotic;
      } else {
        throw ConfigError("unknown run.evaluation '" + ev->value + "'", ev->line);
      }
    }
  }

  // [time_grid]
  read_field(cfg, doc, "time_grid.t_min", true);
  read_field(cfg, doc, "time_grid.t_max", true);
  {
    const Entry* e = doc.find("time_grid", "points");
    if (e == nullptr) throw ConfigError("missing required key 'time_grid.points'");
    cfg.time_grid.points = static_cast<int>(parse_int(e->value, e->line));
    if (const Entry* sp = doc.find("time_grid", "spacing")) {
      if (sp->value == "log") {
        cfg.time_grid.spacing = GridSpacing::Log;
      } else if (sp->value == "linear") {
        cfg.time_grid.spacing = GridSpacing::Linear;
      } else {
        throw ConfigError("unknown spacing '" + sp->value + "'", sp->line);
      }
    }
  }

  // [fock]
  {
    const Entry* e = doc.find("fock", "pairs");
    if (e == nullptr) throw ConfigError("missing required key 'fock.pairs'");
    for (const std::string& tok : split(e->value, ',')) {
      if (tok.empty()) continue;
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ConfigError("fock pair '" + tok + "' must be 'n:n_prime'", e->line);
      }
      FockPair p;
      p.n = static_cast<int>(parse_int(tok.substr(0, colon), e->line));
      p.n_prime = static_cast<int>(parse_int(tok.substr(colon + 1), e->line));
      cfg.fock_pairs.push_back(p);
    }
    if (const Entry* d = doc.find("fock", "dim")) {
      cfg.fock_dim = static_cast<int>(parse_int(d->value, d->line));
      if (cfg.fock_dim < 1) throw ConfigError("fock.dim must be >= 1", d->line);
    }
    if (const Entry* st = doc.find("fock", "initial_state")) {
      std::istringstream ss(st->value);
      std::string kind;
      ss >> kind;
      if (kind == "superposition") {
        cfg.initial_state.kind = InitialState::Kind::Superposition;
        if (!(ss >> cfg.initial_state.sup_n >> cfg.initial_state.sup_n_prime)) {
          throw ConfigError("initial_state superposition needs two indices",
                            st->line);
        }
      } else if (kind == "diagonal") {
        cfg.initial_state.kind = InitialState::Kind::Diagonal;
        double w = 0.0;
        while (ss >> w) cfg.initial_state.diagonal_weights.push_back(w);
        if (cfg.initial_state.diagonal_weights.empty()) {
          throw ConfigError("initial_state diagonal needs weights", st->line);
        }
      } else {
        throw ConfigError("unknown initial_state kind '" + kind + "'", st->line);
      }
    } else if (!cfg.fock_pairs.empty()) {
      cfg.initial_state.sup_n = cfg.fock_pairs.front().n;
      cfg.initial_state.sup_n_prime = cfg.fock_pairs.front().n_prime;
    }
  }

  // [output]
  if (const Entry* e = doc.find("output", "prefix")) cfg.output_prefix = e->value;

  // mode-specific sections
  if (cfg.mode == RunMode::GenericBath) {
    const Entry* s = doc.find("bath", "s");
    if (s == nullptr) throw ConfigError("missing required key 'bath.s'");
    cfg.generic.model.s = static_cast<int>(parse_int(s->value, s->line));
    if (const Entry* c = doc.find("bath", "cutoff")) {
      if (c->value == "exponential") {
        cfg.generic.model.cutoff_shape = bath::CutoffShape::Exponential;
      } else if (c->value == "sinc2") {
        cfg.generic.model.cutoff_shape = bath::CutoffShape::SincSq;
      } else if (c->value == "gaussian") {
        cfg.generic.model.cutoff_shape = bath::CutoffShape::Gaussian;
      } else {
        throw ConfigError("unknown cutoff '" + c->value + "'", c->line);
      }
    }
    read_field(cfg, doc, "bath.coupling_c", true);
    read_field(cfg, doc, "bath.omega_1", true);
    read_field(cfg, doc, "bath.omega_u", true);
    read_field(cfg, doc, "bath.boundary_weight", false);
    read_field(cfg, doc, "bath.continuum_correction", false);
    read_field(cfg, doc, "bath.mode_cutoff_factor", false);
    read_field(cfg, doc, "cavity.omega_cavity", true);
    read_field(cfg, doc, "thermal.temperature", false);
    read_field(cfg, doc, "thermal.beta_hbar", false);
  } else if (cfg.mode == RunMode::Strip) {
    for (const char* key :
         {"strip.rho_m", "strip.tension_f", "strip.width_w", "strip.thickness_t",
          "strip.length_l", "strip.metallized_dl", "strip.gap_d",
          "strip.circuit_omega", "strip.temperature"}) {
      read_field(cfg, doc, key, true);
    }
    read_field(cfg, doc, "strip.mode_cutoff_factor", false);
    read_field(cfg, doc, "strip.boundary_weight", false);
  } else {
    for (const char* key :
         {"membrane.rho_m", "membrane.tension_per_length", "membrane.thickness_t",
          "membrane.side_l", "membrane.cavity_length", "membrane.wavelength",
          "membrane.rayleigh_range", "membrane.z0", "membrane.refractive_n",
          "membrane.temperature"}) {
      read_field(cfg, doc, key, true);
    }
    read_field(cfg, doc, "membrane.mode_cutoff_factor", false);
    read_field(cfg, doc, "membrane.continuum_correction", false);
  }

  // [sweep]
  if (doc.sections.count("sweep") != 0) {
    const Entry* p = doc.find("sweep", "parameter");
    const Entry* v = doc.find("sweep", "values");
    if (p == nullptr || v == nullptr) {
      throw ConfigError("sweep needs both 'parameter' and 'values'");
    }
    cfg.sweep.parameter = p->value;
    const auto it = field_table().find(p->value);
    if (it == field_table().end()) {
      throw ConfigError("unknown sweep parameter '" + p->value + "'", p->line);
    }
    for (const std::string& tok : split(v->value, ',')) {
      if (tok.empty()) continue;
      cfg.sweep.values.push_back(parse_quantity(tok, it->second.unit, v->line));
    }
  }

  // reject anything we did not consume
  for (const auto& [sec, keys] : doc.sections) {
    for (const auto& [key, entry] : keys) {
      if (!entry.used) {
        throw ConfigError("unknown key '" + sec + "." + key + "'", entry.line);
      }
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[run]\n";
  out << "mode = "
      << (cfg.mode == RunMode::GenericBath
              ? "generic_bath"
              : cfg.mode == RunMode::Strip ? "strip" : "membrane")
      << "\n";
  out << "evaluation = "
      << (cfg.evaluation == Evaluation::DiscreteExact
              ? "discrete_exact"
              : cfg.evaluation == Evaluation::ClosedForm
                    ? "closed_form"
                    : cfg.evaluation == Evaluation::Quadrature ? "quadrature"
                                                               : "asymptotic")
      << "\n\n";

  out << "[time_grid]\n";
  out << "t_min = " << fmt_g17(cfg.time_grid.t_min) << "\n";
  out << "t_max = " << fmt_g17(cfg.time_grid.t_max) << "\n";
  out << "points = " << cfg.time_grid.points << "\n";
  out << "spacing = "
      << (cfg.time_grid.spacing == GridSpacing::Log ? "log" : "linear") << "\n\n";

  out << "[fock]\n";
  out << "pairs = ";
  for (std::size_t i = 0; i < cfg.fock_pairs.size(); ++i) {
    if (i != 0) out << ", ";
    out << cfg.fock_pairs[i].n << ":" << cfg.fock_pairs[i].n_prime;
  }
  out << "\n";
  if (cfg.fock_dim > 0) out << "dim = " << cfg.fock_dim << "\n";
  if (cfg.initial_state.kind == InitialState::Kind::Superposition) {
    out << "initial_state = superposition " << cfg.initial_state.sup_n << " "
        << cfg.initial_state.sup_n_prime << "\n";
  } else {
    out << "initial_state = diagonal";
    for (double w : cfg.initial_state.diagonal_weights) out << " " << fmt_g17(w);
    out << "\n";
  }
  out << "\n";

  if (!cfg.output_prefix.empty()) {
    out << "[output]\nprefix = " << cfg.output_prefix << "\n\n";
  }

  if (cfg.mode == RunMode::GenericBath) {
    out << "[bath]\n";
    out << "s = " << cfg.generic.model.s << "\n";
    out << "coupling_c = " << fmt_g17(cfg.generic.model.coupling_c) << "\n";
    out << "omega_1 = " << fmt_g17(cfg.generic.model.omega_1) << "\n";
    out << "omega_u = " << fmt_g17(cfg.generic.model.omega_u) << "\n";
    out << "cutoff = "
        << (cfg.generic.model.cutoff_shape == bath::CutoffShape::Exponential
                ? "exponential"
                : cfg.generic.model.cutoff_shape == bath::CutoffShape::SincSq
                      ? "sinc2"
                      : "gaussian")
        << "\n";
    out << "boundary_weight = " << fmt_g17(cfg.generic.model.boundary_weight)
        << "\n";
    out << "continuum_correction = "
        << fmt_g17(cfg.generic.model.continuum_correction) << "\n";
    out << "mode_cutoff_factor = " << fmt_g17(cfg.generic.mode_cutoff_factor)
        << "\n\n";
    out << "[cavity]\nomega_cavity = " << fmt_g17(cfg.generic.omega_cavity)
        << "\n\n";
    out << "[thermal]\n";
    if (cfg.generic.temperature > 0.0) {
      out << "temperature = " << fmt_g17(cfg.generic.temperature) << "\n";
    } else {
      out << "beta_hbar = " << fmt_g17(cfg.generic.beta_hbar) << "\n";
    }
  } else if (cfg.mode == RunMode::Strip) {
    const auto& p = cfg.strip.params;
    out << "[strip]\n";
    out << "rho_m = " << fmt_g17(p.rho_m) << "\n";
    out << "tension_f = " << fmt_g17(p.tension_f) << "\n";
    out << "width_w = " << fmt_g17(p.width_w) << "\n";
    out << "thickness_t = " << fmt_g17(p.thickness_t) << "\n";
    out << "length_l = " << fmt_g17(p.length_l) << "\n";
    out << "metallized_dl = " << fmt_g17(p.metallized_dl) << "\n";
    out << "gap_d = " << fmt_g17(p.gap_d) << "\n";
    out << "circuit_omega = " << fmt_g17(p.circuit_omega) << "\n";
    out << "temperature = " << fmt_g17(p.temperature) << "\n";
    out << "mode_cutoff_factor = " << fmt_g17(cfg.strip.mode_cutoff_factor) << "\n";
    out << "boundary_weight = " << fmt_g17(cfg.strip.boundary_weight) << "\n";
  } else {
    const auto& p = cfg.membrane.params;
    out << "[membrane]\n";
    out << "rho_m = " << fmt_g17(p.rho_m) << "\n";
    out << "tension_per_length = " << fmt_g17(p.tension_per_length) << "\n";
    out << "thickness_t = " << fmt_g17(p.thickness_t) << "\n";
    out << "side_l = " << fmt_g17(p.side_l) << "\n";
    out << "cavity_length = " << fmt_g17(p.cavity_length) << "\n";
    out << "wavelength = " << fmt_g17(p.wavelength) << "\n";
    out << "rayleigh_range = " << fmt_g17(p.rayleigh_range) << "\n";
    out << "z0 = " << fmt_g17(p.z0) << "\n";
    out << "refractive_n = " << fmt_g17(p.refractive_n) << "\n";
    out << "temperature = " << fmt_g17(p.temperature) << "\n";
    out << "mode_cutoff_factor = " << fmt_g17(cfg.membrane.mode_cutoff_factor)
        << "\n";
    out << "continuum_correction = "
        << fmt_g17(cfg.membrane.continuum_correction) << "\n";
  }

  if (!cfg.sweep.parameter.empty()) {
    out << "\n[sweep]\n";
    out << "parameter = " << cfg.sweep.parameter << "\n";
    out << "values = ";
    for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
      if (i != 0) out << ", ";
      out << fmt_g17(cfg.sweep.values[i]);
    }
    out << "\n";
  }
  return out.str();
}

RunConfig with_override(const RunConfig& base, const std::string& parameter,
                        double value) {
  const auto it = field_table().find(parameter);
  if (it == field_table().end()) {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
  RunConfig next = base;
  it->second.ref(next) = value;
  next.validate();
  return next;
}

}  // namespace dephasure::io
