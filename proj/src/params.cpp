#include "irmen/params.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "irmen/errors.hpp"

namespace irmen {

namespace {

struct ScalarField {
  std::string_view name;
  double ParamSet::*member;
};

constexpr std::array kScalarFields{
    ScalarField{"K", &ParamSet::K},
    ScalarField{"V_FM", &ParamSet::V_FM},
    ScalarField{"eta", &ParamSet::eta},
    ScalarField{"M_s", &ParamSet::M_s},
    ScalarField{"C_ME", &ParamSet::C_ME},
    ScalarField{"zeta", &ParamSet::zeta},
    ScalarField{"lambda_IR", &ParamSet::lambda_IR},
    ScalarField{"rho_IR", &ParamSet::rho_IR},
    ScalarField{"w_IR", &ParamSet::w_IR},
    ScalarField{"t_IR", &ParamSet::t_IR},
    ScalarField{"alpha", &ParamSet::alpha},
    ScalarField{"gamma", &ParamSet::gamma},
    ScalarField{"T", &ParamSet::T},
    ScalarField{"tau_FE", &ParamSet::tau_FE},
    ScalarField{"dt", &ParamSet::dt},
    ScalarField{"V_drive", &ParamSet::V_drive},
    ScalarField{"V_DD", &ParamSet::V_DD},
    ScalarField{"R_drive_extra", &ParamSet::R_drive_extra},
    ScalarField{"C_Y", &ParamSet::C_Y},
    ScalarField{"R_V", &ParamSet::R_V},
    ScalarField{"k_sat", &ParamSet::k_sat},
    ScalarField{"I_leak0", &ParamSet::I_leak0},
    ScalarField{"F", &ParamSet::F},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("value for '" + std::string(key) + "' is not a number: '" +
                     std::string(text) + "'");
  }
  return value;
}

FmDims parse_dims(std::string_view text) {
  std::string normalized(text);
  for (char& c : normalized) {
    if (c == ',' || c == '(' || c == ')') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<std::string> parts;
  for (std::string tok; in >> tok;) parts.push_back(tok);
  if (parts.size() != 3) {
    throw ParseError("fm_dims needs three numbers (l, w, t), got '" + std::string(text) + "'");
  }
  return {parse_number("fm_dims", parts[0]), parse_number("fm_dims", parts[1]),
          parse_number("fm_dims", parts[2])};
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_param(ParamSet& p, std::string_view key, std::string_view value) {
  if (key == "fm_dims") {
    p.fm_dims = parse_dims(value);
    return;
  }
  for (const auto& f : kScalarFields) {
    if (f.name == key) {
      p.*(f.member) = parse_number(key, value);
      return;
    }
  }
  throw ParseError("unknown parameter '" + std::string(key) + "'");
}

ParamSet load_params(std::string_view config_text) {
  ParamSet p;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!config_text.empty()) {
    ++line_no;
    const auto nl = config_text.find('\n');
    std::string_view line = config_text.substr(0, nl);
    config_text.remove_prefix(nl == std::string_view::npos ? config_text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" +
                       std::string(key) + "'");
    }
    try {
      set_param(p, key, value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (auto violations = validate(p); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return p;
}

ParamSet load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_params(buf.str());
}

std::vector<std::string> validate(const ParamSet& p) {
  std::vector<std::string> out;

  for (const auto& f : kScalarFields) {
    if (!std::isfinite(p.*(f.member))) out.push_back(std::string(f.name) + " must be finite");
  }

  auto positive = [&](std::string_view name, double v) {
    if (!(v > 0.0)) out.push_back(std::string(name) + " must be > 0");
  };
  auto nonnegative = [&](std::string_view name, double v) {
    if (!(v >= 0.0)) out.push_back(std::string(name) + " must be >= 0");
  };
  auto unit_interval = [&](std::string_view name, double v) {
    if (!(v > 0.0 && v <= 1.0)) out.push_back(std::string(name) + " must be in (0,1]");
  };

  positive("K", p.K);
  positive("V_FM", p.V_FM);
  positive("fm_dims.l", p.fm_dims.l);
  positive("fm_dims.w", p.fm_dims.w);
  positive("fm_dims.t", p.fm_dims.t);
  unit_interval("eta", p.eta);
  positive("M_s", p.M_s);
  positive("C_ME", p.C_ME);
  unit_interval("zeta", p.zeta);
  positive("lambda_IR", p.lambda_IR);
  positive("rho_IR", p.rho_IR);
  positive("w_IR", p.w_IR);
  positive("t_IR", p.t_IR);
  positive("alpha", p.alpha);
  positive("gamma", p.gamma);
  nonnegative("T", p.T);
  positive("tau_FE", p.tau_FE);
  positive("dt", p.dt);
  nonnegative("V_drive", p.V_drive);
  positive("V_DD", p.V_DD);
  nonnegative("R_drive_extra", p.R_drive_extra);
  positive("C_Y", p.C_Y);
  positive("R_V", p.R_V);
  unit_interval("k_sat", p.k_sat);
  nonnegative("I_leak0", p.I_leak0);
  positive("F", p.F);

  const double box = p.fm_dims.l * p.fm_dims.w * p.fm_dims.t;
  if (!(std::abs(box - p.V_FM) <= 1e-3 * p.V_FM)) {
    out.push_back("fm_dims: l*w*t = " + fmt_g17(box) + " nm^3 differs from V_FM = " +
                  fmt_g17(p.V_FM) + " nm^3 by more than 0.1%");
  }
  if (!(p.dt <= p.tau_FE / 5.0)) {
    out.push_back("dt: violates dt <= tau_FE/5 (dt = " + fmt_g17(p.dt) +
                  " s, tau_FE = " + fmt_g17(p.tau_FE) + " s)");
  }
  return out;
}

double magnet_volume_cm3(const ParamSet& p) { return p.V_FM * units::kNm3ToCm3; }

// Drive path along x through the IR stack: length l, cross-section w_IR*t_IR.
double ir_resistance_x(const ParamSet& p) {
  const double rho = p.rho_IR * units::kMilliOhmCmToOhmM;
  return rho * (p.fm_dims.l * units::kNmToM) /
         ((p.w_IR * units::kNmToM) * (p.t_IR * units::kNmToM));
}

// Drive current enters along z: length t_IR, cross-section l*w_IR.
double ir_resistance_z(const ParamSet& p) {
  const double rho = p.rho_IR * units::kMilliOhmCmToOhmM;
  return rho * (p.t_IR * units::kNmToM) /
         ((p.fm_dims.l * units::kNmToM) * (p.w_IR * units::kNmToM));
}

DerivedReport derive_quantities(const ParamSet& p) {
  DerivedReport r;
  const double volume = magnet_volume_cm3(p);
  const double moment = p.M_s * volume;  // emu

  r.H_K_mag = 2.0 * p.K / p.M_s;
  r.Delta_barrier = p.T > 0.0 ? p.K * volume / (units::kBoltzmannErg * p.T)
                              : std::numeric_limits<double>::infinity();
  r.tau_N = units::kAttemptTime * std::exp(r.Delta_barrier);
  r.sigma_T = std::sqrt(2.0 * units::kBoltzmannErg * p.T * p.alpha / (p.gamma * moment * p.dt));
  r.R_IR_x = ir_resistance_x(p);
  r.R_IR_z = ir_resistance_z(p);
  r.R_X_at_my1 = p.eta * (p.lambda_IR / p.w_IR) * r.R_IR_x;
  r.I_d = p.V_drive / (r.R_IR_z + p.R_drive_extra);
  // J -> erg over the total moment gives Oe.
  r.H_ME_at_VDD = p.zeta * 2.0 * p.C_ME * p.V_DD * p.V_DD * units::kJouleToErg / moment;

  r.precession_step_number = p.gamma * r.H_ME_at_VDD * p.dt;
  r.gate_step_number = p.dt / (kGateResistanceFloor * p.C_Y);
  return r;
}

std::string format_params(const ParamSet& p) {
  std::string out;
  for (const auto& f : kScalarFields) {
    out += std::string(f.name) + " = " + fmt_g17(p.*(f.member)) + "\n";
    if (f.name == "V_FM") {
      out += "fm_dims = " + fmt_g17(p.fm_dims.l) + ", " + fmt_g17(p.fm_dims.w) + ", " +
             fmt_g17(p.fm_dims.t) + "\n";
    }
  }
  return out;
}

namespace {
std::string join_violations(const std::vector<std::string>& v) {
  std::string s = "invalid parameters:";
  for (const auto& m : v) s += "\n  " + m;
  return s;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

NumericalError::NumericalError(const std::string& what, std::size_t neuron)
    : std::runtime_error(what), neuron_(neuron) {}

}  // namespace irmen
