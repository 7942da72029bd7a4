// JSON instance schema ("monomial-envelope/1") and serializers for the
// report types emitted by the CLI.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "monenv/branching.hpp"
#include "monenv/core.hpp"
#include "monenv/envelopes.hpp"
#include "monenv/geometry2d.hpp"
#include "monenv/oracle.hpp"

namespace monenv {

inline constexpr const char* kInstanceSchema = "monomial-envelope/1";

/// Parses {"schema":"monomial-envelope/1","exponents":[...],
/// "wedge":{"i":..,"j":..,"p":..,"q":..},"bounds":{"l":..,"u":..}}.
/// Indices are zero-based in the file format. The result is validated.
inline MonomialInstance instance_from_json(const nlohmann::json& js) {
  if (!js.is_object() || !js.contains("schema") ||
      js.at("schema") != kInstanceSchema)
    throw validation_error(std::string("expected schema \"") +
                           kInstanceSchema + "\"");
  for (const char* key : {"exponents", "wedge", "bounds"})
    if (!js.contains(key))
      throw validation_error(std::string("missing field \"") + key + "\"");
  MonomialInstance inst;
  inst.a = js.at("exponents").get<std::vector<double>>();
  const auto& w = js.at("wedge");
  inst.i = w.at("i").get<int>();
  inst.j = w.at("j").get<int>();
  inst.p = w.at("p").get<double>();
  inst.q = w.at("q").get<double>();
  const auto& b = js.at("bounds");
  inst.l = b.at("l").get<double>();
  inst.u = b.at("u").get<double>();
  validate(inst);
  return inst;
}

inline nlohmann::json instance_to_json(const MonomialInstance& inst) {
  return nlohmann::json{
      {"schema", kInstanceSchema},
      {"exponents", inst.a},
      {"wedge",
       {{"i", inst.i}, {"j", inst.j}, {"p", inst.p}, {"q", inst.q}}},
      {"bounds", {{"l", inst.l}, {"u", inst.u}}}};
}

inline MonomialInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open instance file: " + path);
  nlohmann::json js;
  try {
    in >> js;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("instance file is not valid JSON: ") +
                           e.what());
  }
  return instance_from_json(js);
}

namespace detail {

inline nlohmann::json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace detail

inline nlohmann::json params_to_json(const Model& m) {
  const bool ok = cone_identities_ok(m.inst, m.cone, m.tol.identity) &&
                  wedge_identities_ok(m.inst, m.wedge, m.tol.identity);
  return nlohmann::json{{"schema", "monomial-envelope/params-1"},
                        {"beta", m.inst.beta()},
                        {"z0", m.cone.z0},
                        {"gamma", m.cone.gamma},
                        {"d_i", m.wedge.d_i},
                        {"d_j", m.wedge.d_j},
                        {"eta_i", m.wedge.eta_i},
                        {"eta_j", m.wedge.eta_j},
                        {"lambda", m.wedge.lambda},
                        {"zeta", m.wedge.zeta},
                        {"phi_i", m.wedge.phi_i},
                        {"phi_j", m.wedge.phi_j},
                        {"sigma", detail::num_or_null(m.wedge.sigma)},
                        {"tau", detail::num_or_null(m.wedge.tau)},
                        {"identities_ok", ok}};
}

inline nlohmann::json verdict_to_json(const MembershipVerdict& v) {
  return nlohmann::json{{"schema", "monomial-envelope/verdict-1"},
                        {"inside", v.inside},
                        {"margin", v.margin},
                        {"binding", v.binding}};
}

inline nlohmann::json volume_to_json(const VolumeReport& r) {
  nlohmann::json js{{"schema", "monomial-envelope/volume-1"},
                    {"closed_form", r.closed_form},
                    {"quadrature", r.quadrature},
                    {"quad_abs_error", r.quad_abs_error},
                    {"quadrature_converged", r.quadrature_converged}};
  if (r.has_mc) {
    js["monte_carlo"] = {{"value", r.mc_value},
                         {"stderr", r.mc_stderr},
                         {"samples", r.mc_samples},
                         {"seed", r.mc_seed}};
  } else {
    js["monte_carlo"] = nullptr;
  }
  js["agreement"] = {{"quadrature_ok", r.quad_agrees},
                     {"monte_carlo_ok",
                      r.has_mc ? nlohmann::json(r.mc_agrees)
                               : nlohmann::json(nullptr)}};
  return js;
}

inline nlohmann::json branch_to_json(const BranchResult& b) {
  return nlohmann::json{
      {"schema", "monomial-envelope/branch-1"},
      {"kind", b.kind == BranchKind::Ratio ? "ratio" : "value"},
      {"point", b.point},
      {"left_volume", b.left_volume},
      {"right_volume", b.right_volume},
      {"total", b.total}};
}

inline nlohmann::json tightness_to_json(const TightnessReport& t) {
  return nlohmann::json{{"schema", "monomial-envelope/compare-1"},
                        {"grid_points_used", t.grid_points_used},
                        {"mean_width_wedge", t.mean_width_wedge},
                        {"mean_width_mccormick", t.mean_width_mccormick},
                        {"max_pointwise_excess", t.max_pointwise_excess},
                        {"wedge_dominates", t.wedge_dominates}};
}

/// Flattens a JSON object into "key,value" CSV rows (nested keys joined
/// with '.'), with numbers printed to 17 significant digits and a '.'
/// decimal separator regardless of locale.
inline std::string json_to_csv(const nlohmann::json& js) {
  std::string out = "key,value\n";
  std::function<void(const nlohmann::json&, const std::string&)> walk =
      [&](const nlohmann::json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          int k = 0;
          for (const auto& el : node) walk(el, prefix + "." + std::to_string(k++));
        } else {
          out += prefix;
          out += ',';
          if (node.is_number_float()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", node.get<double>());
            out += buf;
          } else {
            out += node.is_string() ? node.get<std::string>() : node.dump();
          }
          out += '\n';
        }
      };
  walk(js, "");
  return out;
}

}  // namespace monenv
