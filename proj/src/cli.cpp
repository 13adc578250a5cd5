#include "chiral_casimir/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <sstream>
#include <thread>

#include "chiral_casimir/casimir.hpp"
#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/estimator.hpp"
#include "chiral_casimir/pt.hpp"
#include "chiral_casimir/response.hpp"

namespace chiral_casimir::cli {

using nlohmann::ordered_json;
using model::OscillatorParams;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::derive, "derive"},   {Command::ground_state, "ground-state"}, {Command::casimir, "casimir"},
    {Command::response, "response"}, {Command::estimate, "estimate"},       {Command::sweep, "sweep"},
    {Command::verify, "verify"},
};

// + 0.0 folds negative zero so reports never print "-0"
ordered_json vec_json(const Vec3& v) { return ordered_json::array({v[0] + 0.0, v[1] + 0.0, v[2] + 0.0}); }

ordered_json params_json(const OscillatorParams& p) {
  return ordered_json{{"omega_x", p.omega[0]}, {"omega_y", p.omega[1]}, {"omega_z", p.omega[2]},
                      {"C", p.C_chiral},       {"m_e_eff", p.m_e_eff},   {"m_N", p.m_N},
                      {"B0", vec_json(p.B0)}};
}

double rel_diff(const Vec3& a, const Vec3& b) {
  const double s = std::max(norm(a), norm(b));
  return s > 0.0 ? norm(a - b) / s : 0.0;
}

// ---------------------------------------------------------------------------------------
// config parsing

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where.empty() ? what : where + ": " + what);
}

double get_number(const ordered_json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    fail(where + "." + key, "must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(where + "." + key, "must be finite");
  }
  return d;
}

Vec3 get_vec3(const ordered_json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) {
    fail(where + "." + key, "must be an array of three numbers");
  }
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) {
      fail(where + "." + key, "must be an array of three numbers");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

OscillatorParams parse_params(const ordered_json& v, std::string& label) {
  if (v.is_string()) {
    if (v.get<std::string>() != "REF1") {
      fail("params", "unknown preset '" + v.get<std::string>() + "' (only \"REF1\")");
    }
    label = "REF1";
    return model::ref1();
  }
  if (!v.is_object()) {
    fail("params", "must be \"REF1\" or an object");
  }
  static const std::vector<std::string> kKeys = {"preset", "omega_x", "omega_y", "omega_z",
                                                 "C",      "m_e_eff", "m_N",     "B0"};
  for (const auto& [key, val] : v.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      fail("params", "unknown key '" + key + "'");
    }
  }
  OscillatorParams p{};
  bool have_base = false;
  if (v.contains("preset")) {
    if (!v.at("preset").is_string() || v.at("preset").get<std::string>() != "REF1") {
      fail("params.preset", "only \"REF1\" is defined");
    }
    p = model::ref1();
    have_base = true;
    label = "REF1+overrides";
  } else {
    label = "custom";
  }
  auto scalar = [&](const char* key, double& target) {
    if (v.contains(key)) {
      target = get_number(v, key, "params");
    } else if (!have_base) {
      fail("params", std::string("missing key '") + key + "'");
    }
  };
  scalar("omega_x", p.omega[0]);
  scalar("omega_y", p.omega[1]);
  scalar("omega_z", p.omega[2]);
  scalar("C", p.C_chiral);
  scalar("m_e_eff", p.m_e_eff);
  scalar("m_N", p.m_N);
  if (v.contains("B0")) {
    p.B0 = get_vec3(v, "B0", "params");
  } else if (!have_base) {
    fail("params", "missing key 'B0'");
  }
  try {
    model::validate_physical(p);
  } catch (const DomainError& e) {
    fail("params", e.what());
  }
  return p;
}

void apply_sweep_value(OscillatorParams& p, const std::string& name, double value) {
  if (name == "omega_x") {
    p.omega[0] = value;
  } else if (name == "omega_y") {
    p.omega[1] = value;
  } else if (name == "omega_z") {
    p.omega[2] = value;
  } else if (name == "C") {
    p.C_chiral = value;
  } else if (name == "m_e_eff") {
    p.m_e_eff = value;
  } else if (name == "m_N") {
    p.m_N = value;
  } else if (name == "B0_x") {
    p.B0[0] = value;
  } else if (name == "B0_y") {
    p.B0[1] = value;
  } else if (name == "B0_z") {
    p.B0[2] = value;
  } else {
    throw DomainError("unknown sweep parameter '" + name + "'");
  }
}

// ---------------------------------------------------------------------------------------
// parallel rows

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  // report the first failure in input order
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

// ---------------------------------------------------------------------------------------
// commands

ordered_json header(const RunConfig& c) {
  ordered_json h;
  h["command"] = command_name(c.command);
  h["params_label"] = c.params_label;
  h["params"] = params_json(c.params);
  return h;
}

Report cmd_derive(const RunConfig& c) {
  const auto d = model::derive(c.params);
  Report r;
  r.document = header(c);
  ordered_json eta = ordered_json::array();
  for (const auto& row : d.eta) {
    eta.push_back(vec_json(row));
  }
  r.document["derived"] = ordered_json{{"M_total", d.M_total},   {"mu", d.mu},
                                       {"mu_star", d.mu_star},   {"E0", d.E0},
                                       {"script_C", d.script_C}, {"script_B", vec_json(d.script_B)},
                                       {"eta", eta}};
  r.rows.push_back(r.document["derived"]);
  return r;
}

Report cmd_ground_state(const RunConfig& c) {
  const fock::Basis basis(c.basis_cutoff);
  const auto rs = pt::ground_state_rs(c.params, basis);
  const auto analytic = pt::ground_state_analytic(c.params, basis);
  const auto exact = pt::ground_state_exact(c.params, basis);
  Report r;
  r.document = header(c);
  r.document["basis_cutoff"] = c.basis_cutoff;
  double worst = 0.0;
  for (const auto& [state, tags] : rs.tagged_states()) {
    for (const auto tag : tags) {
      const auto a = rs.amplitude(state, tag);
      const auto b = analytic.amplitude(state, tag);
      const double s = std::max(std::abs(a), std::abs(b));
      worst = std::max(worst, s > 0.0 ? std::abs(a - b) / s : 0.0);
      r.rows.push_back(ordered_json{{"state", state.label()},
                                    {"order_C", tag.c},
                                    {"order_B0", tag.b},
                                    {"re", a.real()},
                                    {"im", a.imag()},
                                    {"analytic_re", b.real()},
                                    {"analytic_im", b.imag()}});
    }
  }
  r.document["rs_vs_analytic_max_relative_difference"] = worst;
  r.document["exact"] = ordered_json{
      {"energy", exact.energy},
      {"relative_residual", exact.relative_residual},
      {"amplitude_000", exact.state[0].real()},
      {"overlap_deficit_vs_analytic", pt::overlap_deficit(exact.state, fock::normalized(analytic.total()))},
      {"expectation_r", vec_json(pt::expectation_r(c.params, basis, exact.state))}};
  r.document["amplitudes"] = r.rows;
  return r;
}

Report cmd_casimir(const RunConfig& c) {
  const fock::Basis basis(c.basis_cutoff);
  const auto& p = c.params;
  const auto quad = casimir::longitudinal_quadrature(p, basis, c.rel_tol);
  const auto closed = casimir::longitudinal_closed_form(p);
  const auto rot_quad = casimir::rotational_average(
      p, [&](const OscillatorParams& q) { return casimir::longitudinal_quadrature(q, basis, c.rel_tol).vector; });
  const auto rot_13 =
      casimir::rotational_average(p, [](const OscillatorParams& q) { return casimir::longitudinal_closed_form(q).vector; });
  const auto total = casimir::total_casimir(p);
  const double cn = norm(closed.vector);

  Report r;
  r.document = header(c);
  r.document["basis_cutoff"] = c.basis_cutoff;
  r.document["rel_tol"] = c.rel_tol;
  r.document["longitudinal"] = ordered_json{
      {"quadrature", vec_json(quad.vector)},
      {"closed_form", vec_json(closed.vector)},
      {"ratio_quadrature_to_closed_form", cn > 0.0 ? norm(quad.vector) / cn : 0.0},
      {"diagnostics",
       ordered_json{{"k_subdivisions", quad.diagnostics.k_subdivisions},
                    {"estimated_quadrature_error", quad.diagnostics.estimated_quadrature_error},
                    {"estimated_abs_error", quad.diagnostics.estimated_abs_error},
                    {"basis_cutoff", quad.diagnostics.basis_cutoff}}}};
  r.document["rotational_average"] =
      ordered_json{{"longitudinal_quadrature", vec_json(rot_quad.vector)},
                   {"longitudinal_closed_form", vec_json(casimir::longitudinal_rot_closed_form(p))},
                   {"longitudinal_closed_form_trace", vec_json(rot_13.vector)},
                   {"transverse_closed_form", vec_json(casimir::transverse_rot_closed_form(p))},
                   {"total_closed_form", vec_json(total.vector)}};
  r.rows.push_back(r.document);
  return r;
}

Report cmd_response(const RunConfig& c) {
  const auto cf = response::closed_form(c.params);
  const auto sos = response::sum_over_states(c.params, fock::Basis(c.basis_cutoff));
  Report r;
  r.document = header(c);
  r.document["basis_cutoff"] = c.basis_cutoff;
  r.document["closed_form"] = ordered_json{{"alpha_E", cf.alpha_E}, {"beta", cf.beta}, {"ratio", cf.ratio}};
  r.document["sum_over_states"] = ordered_json{{"alpha_E", sos.alpha_E},
                                               {"beta", sos.beta},
                                               {"ratio", sos.ratio},
                                               {"D_effective", sos.D_effective},
                                               {"anisotropic_fraction", sos.anisotropic_residual},
                                               {"probe_frequency", sos.probe_frequency}};
  r.rows.push_back(r.document);
  return r;
}

Report cmd_estimate(const RunConfig& c) {
  if (c.compound_file.empty()) {
    throw DomainError("estimate: no compound_file configured");
  }
  const auto compounds = estimator::load_compounds(c.compound_file, c.B0_magnitude);
  Report r;
  r.document["command"] = "estimate";
  r.document["B0_magnitude_T"] = c.B0_magnitude;
  for (const auto& d : compounds) {
    const auto e = estimator::estimate(d);
    r.rows.push_back(ordered_json{{"name", e.name},
                                  {"number_density", e.number_density},
                                  {"beta0", e.beta0},
                                  {"alpha_E0", e.alpha_E0},
                                  {"chiral_length", e.chiral_length},
                                  {"g_pseudoscalar", e.g_pseudoscalar},
                                  {"momentum", e.momentum},
                                  {"velocity", e.velocity}});
  }
  r.document["estimates"] = r.rows;
  return r;
}

Report cmd_sweep(const RunConfig& c) {
  const auto& s = *c.sweep;
  const fock::Basis basis(c.basis_cutoff);
  std::vector<ordered_json> rows(s.values.size());
  parallel_for(s.values.size(), [&](std::size_t i) {
    OscillatorParams p = c.params;
    apply_sweep_value(p, s.parameter, s.values[i]);
    const auto q = casimir::longitudinal_quadrature(p, basis, c.rel_tol).vector;
    const auto cf = casimir::longitudinal_closed_form(p).vector;
    const auto rl = casimir::longitudinal_rot_closed_form(p);
    const auto rt = casimir::transverse_rot_closed_form(p);
    const double cn = norm(cf);
    rows[i] = ordered_json{{s.parameter, s.values[i]},
                           {"quadrature", vec_json(q)},
                           {"closed_form", vec_json(cf)},
                           {"ratio", cn > 0.0 ? norm(q) / cn : 0.0},
                           {"rot_longitudinal", vec_json(rl)},
                           {"rot_transverse", vec_json(rt)}};
  });
  Report r;
  r.document = header(c);
  r.document["basis_cutoff"] = c.basis_cutoff;
  r.document["rel_tol"] = c.rel_tol;
  r.document["sweep_parameter"] = s.parameter;
  r.document["rows"] = rows;
  r.rows = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------------------
// verify

struct CheckList {
  std::vector<ordered_json> rows;
  bool all = true;

  // passes when value <= threshold
  void add(const std::string& name, double value, double threshold, const std::string& detail = "") {
    const bool pass = value <= threshold;
    all = all && pass;
    rows.push_back(ordered_json{{"check", name},
                                {"passed", pass},
                                {"informational", false},
                                {"value", value},
                                {"threshold", threshold},
                                {"detail", detail}});
  }
  void info(const std::string& name, double value, const std::string& detail) {
    rows.push_back(ordered_json{{"check", name},
                                {"passed", true},
                                {"informational", true},
                                {"value", value},
                                {"threshold", nullptr},
                                {"detail", detail}});
  }
};

double max_rel_component_diff(const pt::PerturbedState& a, const pt::PerturbedState& b) {
  double worst = 0.0;
  for (const auto tag : {pt::kOrderC, pt::kOrderB, pt::kOrderCB}) {
    const auto& u = a.component(tag);
    const auto& v = b.component(tag);
    for (std::size_t k = 0; k < u.dim(); ++k) {
      const double s = std::max(std::abs(u[k]), std::abs(v[k]));
      if (s > 0.0) {
        worst = std::max(worst, std::abs(u[k] - v[k]) / s);
      }
    }
  }
  return worst;
}

Report cmd_verify(const RunConfig& c) {
  const auto& p = c.params;
  const fock::Basis basis(c.basis_cutoff);
  CheckList checks;

  // perturbation theory
  const auto rs = pt::ground_state_rs(p, basis);
  const auto analytic = pt::ground_state_analytic(p, basis);
  checks.add("pt.rs_matches_analytic_state", max_rel_component_diff(rs, analytic), 1e-10,
             "max relative difference over all amplitudes of orders C, B0, C*B0");
  {
    double phase = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      phase = std::max({phase, std::abs(rs.component(pt::kOrderC)[k].imag()),
                        std::abs(rs.component(pt::kOrderB)[k].real()),
                        std::abs(rs.component(pt::kOrderCB)[k].real())});
    }
    checks.add("pt.order_phases", phase, 1e-15, "order C real, orders B0 and C*B0 imaginary");
  }
  {
    std::vector<double> deficit;
    for (const double s : {1.0, 0.5, 0.25}) {
      OscillatorParams q = p;
      q.C_chiral *= s;
      q.B0 = s * q.B0;
      const auto ex = pt::ground_state_exact(q, basis);
      deficit.push_back(pt::overlap_deficit(ex.state, fock::normalized(pt::ground_state_analytic(q, basis).total())));
    }
    const double e1 = std::log2(deficit[0] / deficit[1]);
    const double e2 = std::log2(deficit[1] / deficit[2]);
    checks.add("pt.exact_deficit_exponent", std::max(std::abs(e1 - 4.0), std::abs(e2 - 4.0)), 0.3,
               "|exponent - 4| for the overlap deficit under (C, B0) scaling by 1, 1/2, 1/4");
  }
  {
    const double len = model::oscillator_length(p, fock::Axis::x);
    checks.add("pt.expectation_r_vanishes", norm(pt::expectation_r(p, rs)) / len, 1e-12,
               "|<r>| of the perturbed state over the oscillator length");
  }

  // closed-form identities
  const auto rot13 =
      casimir::rotational_average(p, [](const OscillatorParams& q) { return casimir::longitudinal_closed_form(q).vector; });
  const Vec3 rot14 = casimir::longitudinal_rot_closed_form(p);
  checks.add("casimir.trace_identity", rel_diff(rot13.vector, rot14), 1e-10,
             "one third of the trace of the closed-form response tensor vs the averaged closed form");
  {
    OscillatorParams swapped = p;
    std::swap(swapped.m_N, swapped.m_e_eff);
    checks.add("casimir.mass_exchange_invariance",
               rel_diff(casimir::longitudinal_closed_form(p).vector, casimir::longitudinal_closed_form(swapped).vector),
               0.0, "closed form with m_e and m_N exchanged");
  }

  // quadrature
  const fock::Basis small(8);
  const fock::Basis large(std::max(12, c.basis_cutoff));
  const auto q_small = casimir::longitudinal_quadrature(p, small, c.rel_tol);
  const auto q_large = casimir::longitudinal_quadrature(p, large, c.rel_tol);
  checks.add("casimir.quadrature_cutoff_independence", rel_diff(q_small.vector, q_large.vector), 1e-6,
             "basis cutoff 8 vs " + std::to_string(large.n_total_max()));
  checks.add("casimir.quadrature_error_estimate", q_large.diagnostics.estimated_quadrature_error,
             std::max(c.rel_tol, 1e-15), "estimated relative error vs requested tolerance");
  {
    OscillatorParams c2 = p;
    c2.C_chiral *= 2.0;
    OscillatorParams b2 = p;
    b2.B0 = 2.0 * b2.B0;
    const Vec3 twice = 2.0 * q_small.vector;
    checks.add("casimir.quadrature_linear_in_C",
               rel_diff(casimir::longitudinal_quadrature(c2, small, c.rel_tol).vector, twice), 1e-8);
    checks.add("casimir.quadrature_linear_in_B0",
               rel_diff(casimir::longitudinal_quadrature(b2, small, c.rel_tol).vector, twice), 1e-8);
  }
  const double cn = norm(casimir::longitudinal_closed_form(p).vector);
  checks.info("casimir.quadrature_to_closed_form_ratio", cn > 0.0 ? norm(q_large.vector) / cn : 0.0,
              "|quadrature| / |leading-log closed form|; reported, not asserted");

  // symmetry suite
  {
    auto all_outputs = [&](const OscillatorParams& q) {
      std::vector<Vec3> v;
      v.push_back(casimir::longitudinal_quadrature(q, small, c.rel_tol).vector);
      v.push_back(casimir::longitudinal_closed_form(q).vector);
      v.push_back(casimir::longitudinal_rot_closed_form(q));
      v.push_back(casimir::transverse_rot_closed_form(q));
      return v;
    };
    const auto base = all_outputs(p);
    OscillatorParams q = p;
    q.C_chiral = 0.0;
    double worst = 0.0;
    for (const auto& v : all_outputs(q)) {
      worst = std::max(worst, norm(v));
    }
    checks.add("symmetry.zero_C", worst, 0.0, "largest output magnitude with C = 0");
    q = p;
    q.B0 = {0.0, 0.0, 0.0};
    worst = 0.0;
    for (const auto& v : all_outputs(q)) {
      worst = std::max(worst, norm(v));
    }
    checks.add("symmetry.zero_B0", worst, 0.0, "largest output magnitude with B0 = 0");
    q = p;
    q.C_chiral = -p.C_chiral;
    const auto flipped = all_outputs(q);
    worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      worst = std::max(worst, rel_diff(flipped[i], -1.0 * base[i]));
    }
    checks.add("symmetry.C_parity", worst, 0.0, "outputs at -C versus negated outputs at C");
    worst = 0.0;
    for (int pair = 0; pair < 3; ++pair) {
      q = p;
      q.omega[(pair + 1) % 3] = q.omega[pair];
      worst = std::max({worst, norm(casimir::longitudinal_rot_closed_form(q)),
                        norm(casimir::transverse_rot_closed_form(q))});
      const auto avg = casimir::rotational_average(
          q, [&](const OscillatorParams& r) { return casimir::longitudinal_quadrature(r, small, c.rel_tol).vector; });
      double scale = 0.0;
      for (const auto& row : avg.tensor) {
        scale = std::max(scale, norm(row));
      }
      if (scale > 0.0) {
        worst = std::max(worst, std::abs(avg.trace_over_3) / scale);
      }
    }
    checks.add("symmetry.equal_frequencies", worst, 1e-10,
               "averaged closed forms (absolute) and quadrature trace relative to its tensor");
  }

  // response
  {
    const double a_cf = response::alpha_E_static(p);
    const double a_sos = response::alpha_E_sum_over_states(p, basis);
    checks.add("response.alpha_E_sum_over_states", std::abs(a_sos / a_cf - 1.0), 1e-8);
    if (c.basis_cutoff >= 8) {
      const auto sos = response::sum_over_states(p, basis);
      OscillatorParams q = p;
      q.C_chiral = -p.C_chiral;
      const double flipped = response::beta_static_oracle(q, basis);
      checks.add("response.beta_C_odd", std::abs(flipped + sos.beta) / std::max(std::abs(sos.beta), 1e-300), 1e-12);
      checks.info("response.D_effective", sos.D_effective, "sum-over-states ratio over the closed form with D = 1");
    }
  }

  Report r;
  r.document = header(c);
  r.document["basis_cutoff"] = c.basis_cutoff;
  r.document["rel_tol"] = c.rel_tol;
  r.document["all_passed"] = checks.all;
  r.document["checks"] = checks.rows;
  r.rows = std::move(checks.rows);
  r.ok = checks.all;
  return r;
}

// ---------------------------------------------------------------------------------------
// rendering

void flatten(const ordered_json& v, const std::string& prefix, ordered_json& out) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      flatten(val, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (v.is_array()) {
    static constexpr const char* kAxis[3] = {"x", "y", "z"};
    const bool xyz = v.size() == 3 && v[0].is_number();
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "_" + (xyz ? std::string(kAxis[i]) : std::to_string(i)), out);
    }
  } else {
    out[prefix] = v;
  }
}

std::string csv_cell(const ordered_json& v, int digits) {
  char buf[64];
  if (v.is_number_float()) {
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v.get<double>() + 0.0);
    return buf;
  }
  if (v.is_number_integer() || v.is_number_unsigned()) {
    return v.dump();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_null()) {
    return "";
  }
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string q = "\"";
  for (const char ch : s) {
    q += ch;
    if (ch == '"') {
      q += '"';
    }
  }
  return q + "\"";
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (n == name) {
      return c;
    }
  }
  return std::nullopt;
}

std::string_view command_name(Command c) {
  for (const auto& [cmd, n] : kCommands) {
    if (cmd == c) {
      return n;
    }
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") {
    return Format::json;
  }
  if (name == "csv") {
    return Format::csv;
  }
  return std::nullopt;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> k = {"omega_x", "omega_y", "omega_z", "C",   "m_e_eff",
                                             "m_N",     "B0_x",    "B0_y",    "B0_z"};
  return k;
}

RunConfig parse_config(const std::string& text, std::optional<Command> command, const std::string& base_dir) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the byte offset; translate it to line and column
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                 e.what());
  }
  if (!doc.is_object()) {
    fail("", "top level must be a JSON object");
  }
  static const std::vector<std::string> kKeys = {"command",  "params",       "compound_file", "sweep",
                                                 "output_format", "rel_tol", "basis_cutoff",  "B0_magnitude_T",
                                                 "include_doppler"};
  for (const auto& [key, val] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      fail("", "unknown key '" + key + "'");
    }
  }

  RunConfig c;
  std::optional<Command> from_doc;
  if (doc.contains("command")) {
    if (!doc["command"].is_string() || !(from_doc = parse_command(doc["command"].get<std::string>()))) {
      fail("command", "unknown command");
    }
  }
  if (command && from_doc && *command != *from_doc) {
    fail("command", "config says '" + std::string(command_name(*from_doc)) + "' but '" +
                        std::string(command_name(*command)) + "' was requested");
  }
  if (!command && !from_doc) {
    fail("command", "no command given");
  }
  c.command = command ? *command : *from_doc;

  if (doc.contains("params")) {
    c.params = parse_params(doc["params"], c.params_label);
  }
  if (doc.contains("output_format")) {
    const auto& f = doc["output_format"];
    std::optional<Format> fmt;
    if (!f.is_string() || !(fmt = parse_format(f.get<std::string>()))) {
      fail("output_format", "must be \"json\" or \"csv\"");
    }
    c.output_format = *fmt;
  }
  if (doc.contains("rel_tol")) {
    c.rel_tol = get_number(doc, "rel_tol", "config");
    if (!(c.rel_tol >= 1e-10 && c.rel_tol <= 1e-2)) {
      fail("rel_tol", "must lie in [1e-10, 1e-2]");
    }
  }
  if (doc.contains("basis_cutoff")) {
    const auto& b = doc["basis_cutoff"];
    if (!b.is_number_integer()) {
      fail("basis_cutoff", "must be an integer");
    }
    const auto v = b.get<long long>();
    if (v < 5 || v > 30) {
      fail("basis_cutoff", "must lie in [5, 30]");
    }
    c.basis_cutoff = static_cast<int>(v);
  }
  if (doc.contains("B0_magnitude_T")) {
    c.B0_magnitude = get_number(doc, "B0_magnitude_T", "config");
    if (c.B0_magnitude < 0.0) {
      fail("B0_magnitude_T", "must be non-negative");
    }
  }
  if (doc.contains("include_doppler")) {
    if (!doc["include_doppler"].is_boolean()) {
      fail("include_doppler", "must be a boolean");
    }
    if (doc["include_doppler"].get<bool>()) {
      fail("include_doppler", "the recoil (Doppler) term is not part of the integrand; only false is accepted");
    }
  }
  if (doc.contains("compound_file")) {
    if (!doc["compound_file"].is_string()) {
      fail("compound_file", "must be a string path");
    }
    std::filesystem::path path = doc["compound_file"].get<std::string>();
    if (path.is_relative()) {
      path = std::filesystem::path(base_dir) / path;
    }
    c.compound_file = path.lexically_normal().string();
  }
  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    if (!s.is_object()) {
      fail("sweep", "must be an object with 'parameter' and 'values'");
    }
    for (const auto& [key, val] : s.items()) {
      if (key != "parameter" && key != "values") {
        fail("sweep", "unknown key '" + key + "'");
      }
    }
    if (!s.contains("parameter") || !s["parameter"].is_string()) {
      fail("sweep.parameter", "must be a string");
    }
    SweepSpec spec;
    spec.parameter = s["parameter"].get<std::string>();
    const auto& names = sweep_parameters();
    if (std::find(names.begin(), names.end(), spec.parameter) == names.end()) {
      fail("sweep.parameter", "unknown parameter '" + spec.parameter + "'");
    }
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty()) {
      fail("sweep.values", "must be a non-empty array of numbers");
    }
    for (std::size_t i = 0; i < s["values"].size(); ++i) {
      const auto& v = s["values"][i];
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        fail("sweep.values[" + std::to_string(i) + "]", "must be a finite number");
      }
      OscillatorParams trial = c.params;
      apply_sweep_value(trial, spec.parameter, v.get<double>());
      try {
        model::validate_physical(trial);
      } catch (const DomainError& e) {
        fail("sweep.values[" + std::to_string(i) + "]", e.what());
      }
      spec.values.push_back(v.get<double>());
    }
    c.sweep = std::move(spec);
  }
  if (c.command == Command::sweep && !c.sweep) {
    fail("sweep", "required for the sweep command");
  }
  if (c.command == Command::estimate && c.compound_file.empty()) {
    fail("compound_file", "required for the estimate command");
  }
  if (c.command == Command::response && c.basis_cutoff < 8) {
    fail("basis_cutoff", "the response oracle needs at least 8");
  }
  return c;
}

Report execute(const RunConfig& config) {
  switch (config.command) {
    case Command::derive:
      return cmd_derive(config);
    case Command::ground_state:
      return cmd_ground_state(config);
    case Command::casimir:
      return cmd_casimir(config);
    case Command::response:
      return cmd_response(config);
    case Command::estimate:
      return cmd_estimate(config);
    case Command::sweep:
      return cmd_sweep(config);
    case Command::verify:
      return cmd_verify(config);
  }
  throw DomainError("unknown command");
}

std::string render(const Report& report, Format format) {
  if (format == Format::json) {
    return report.document.dump(2) + "\n";
  }
  std::vector<ordered_json> flat;
  std::vector<std::string> columns;
  for (const auto& row : report.rows) {
    ordered_json f = ordered_json::object();
    flatten(row, "", f);
    for (const auto& [key, val] : f.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
        columns.push_back(key);
      }
    }
    flat.push_back(std::move(f));
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << csv_cell(columns[i], report.csv_digits);
  }
  out << "\n";
  for (const auto& f : flat) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << (f.contains(columns[i]) ? csv_cell(f[columns[i]], report.csv_digits) : "");
    }
    out << "\n";
  }
  return out.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Report r = execute(config);
    out << render(r, config.output_format);
    if (!r.ok) {
      err << "chiral-casimir: one or more checks failed\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "chiral-casimir: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "chiral-casimir: " << e.what() << "\n";
    return 1;
  }
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHIRAL_CASIMIR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return hw;
}

}  // namespace chiral_casimir::cli
