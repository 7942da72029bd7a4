// monenv: load a JSON instance, derive envelope parameters, test membership,
// compute hull volumes, pick branching points, and emit figure data.
//
// Exit codes: 0 ok, 1 numerical failure, 2 bad flags/arguments,
// 3 invalid instance. Errors go to stderr as machine-readable JSON.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monenv/monenv.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                   : comma - pos);
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::domain_error("bad number: " + tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const json& js, const std::string& format) {
  if (format == "csv")
    std::cout << monenv::json_to_csv(js);
  else
    std::cout << js.dump(2) << "\n";
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string instance_path;
  std::string format;  // empty means the per-command default
  std::string point;
  std::optional<double> with_z;
  std::optional<double> z;
  std::string set_name;
  std::vector<std::string> oracles;
  std::string criterion;
  std::string on = "both";
  double branch_tol = 1e-8;
  double branch_eps = 1e-3;
  std::string xi_list;
  int points = 200;
  int grid = 100;
};

monenv::BranchResult run_branch_family(const monenv::Model& m,
                                       const Options& opt,
                                       monenv::BranchKind kind) {
  if (opt.criterion == "balanced")
    return monenv::balanced_point(m, kind, opt.branch_tol);
  return monenv::min_volume_branch_family(m, kind, opt.branch_eps,
                                          opt.branch_tol);
}

int run(int argc, char** argv) {
  CLI::App app{"Convex envelopes, hull volumes, and branching points for "
               "bounded monomials on a wedge"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", opt.instance_path, "instance JSON file")
        ->required();
    sub->add_option("--format", opt.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* params = app.add_subcommand(
      "params", "derived cone and wedge constants");
  add_common(params);

  CLI::App* eval = app.add_subcommand(
      "eval", "f, upper envelope, and lower envelope at a point");
  add_common(eval);
  eval->add_option("-x", opt.point, "point, comma separated")->required();
  eval->add_option("--with-z", opt.with_z, "echo a z coordinate");

  CLI::App* check = app.add_subcommand("check", "membership test");
  add_common(check);
  check->add_option("-x", opt.point, "point, comma separated")->required();
  check->add_option("--z", opt.z, "value coordinate");
  check->add_option("--set", opt.set_name, "hull|Y|upper|orthant")
      ->required()
      ->check(CLI::IsMember({"hull", "Y", "upper", "orthant"}));

  CLI::App* volume = app.add_subcommand("volume", "hull volume report");
  add_common(volume);
  volume->add_option("--oracle", opt.oracles,
                     "cross-checks: quad and/or mc:SEED:SAMPLES");

  CLI::App* branch = app.add_subcommand("branch", "branch-point selection");
  add_common(branch);
  branch->add_option("--criterion", opt.criterion, "balanced|minvol")
      ->required()
      ->check(CLI::IsMember({"balanced", "minvol"}));
  branch->add_option("--on", opt.on, "ratio|value|both")
      ->check(CLI::IsMember({"ratio", "value", "both"}));
  branch->add_option("--tol", opt.branch_tol, "relative tolerance");
  branch->add_option("--eps", opt.branch_eps,
                     "interval inset as a fraction of the width");

  CLI::App* levelset = app.add_subcommand(
      "levelset", "sampled level curves between the wedge faces (CSV)");
  add_common(levelset);
  levelset->add_option("--xi", opt.xi_list, "level values, comma separated")
      ->required();
  levelset->add_option("--points", opt.points, "points per curve");

  CLI::App* compare = app.add_subcommand(
      "compare", "wedge hull versus the McCormick baseline (bilinear only)");
  add_common(compare);
  compare->add_option("--grid", opt.grid, "grid resolution per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", e.what()}, {"exit", 2}}.dump() << "\n";
    return 2;
  }

  if (opt.format.empty()) opt.format = *levelset ? "csv" : "json";

  const monenv::Model m =
      monenv::make_model(monenv::load_instance_file(opt.instance_path));

  if (*params) {
    emit(monenv::params_to_json(m), opt.format);
    return 0;
  }

  if (*eval) {
    const std::vector<double> x = parse_doubles(opt.point);
    json out{{"schema", "monomial-envelope/eval-1"},
             {"f", monenv::eval_f(m.inst, x)},
             {"upper_env", monenv::upper_env_value(m, x)},
             {"lower_env", monenv::lower_env_value(m, x)}};
    if (opt.with_z) out["z"] = *opt.with_z;
    emit(out, opt.format);
    return 0;
  }

  if (*check) {
    monenv::Point pt{parse_doubles(opt.point), opt.z};
    monenv::SetKind kind;
    if (opt.set_name == "hull")
      kind = monenv::SetKind::Hull2D;
    else if (opt.set_name == "Y")
      kind = monenv::SetKind::YProjection;
    else if (opt.set_name == "upper")
      kind = monenv::SetKind::UpperWedge;
    else
      kind = monenv::SetKind::UpperOrthant;
    emit(monenv::verdict_to_json(monenv::check_membership(m, kind, pt)),
         opt.format);
    return 0;
  }

  if (*volume) {
    monenv::VolumeReport rep = monenv::volume(m);
    for (const std::string& o : opt.oracles) {
      if (o == "quad") continue;  // quadrature is always included
      if (o.rfind("mc:", 0) == 0) {
        const std::size_t c2 = o.find(':', 3);
        if (c2 == std::string::npos)
          throw std::domain_error("expected mc:SEED:SAMPLES");
        const auto seed =
            static_cast<std::uint64_t>(std::stoull(o.substr(3, c2 - 3)));
        const long long samples = std::stoll(o.substr(c2 + 1));
        monenv::attach_mc(rep, monenv::mc_volume(m, seed, samples));
      } else {
        throw std::domain_error("unknown oracle: " + o);
      }
    }
    emit(monenv::volume_to_json(rep), opt.format);
    return 0;
  }

  if (*branch) {
    if (opt.on == "both" && opt.criterion == "minvol") {
      const auto r =
          run_branch_family(m, opt, monenv::BranchKind::Ratio);
      const auto v =
          run_branch_family(m, opt, monenv::BranchKind::Value);
      const auto& best = v.total < r.total ? v : r;
      json out = monenv::branch_to_json(best);
      out["candidates"] = {{"ratio", monenv::branch_to_json(r)},
                           {"value", monenv::branch_to_json(v)}};
      emit(out, opt.format);
    } else if (opt.on == "both") {
      json out{{"schema", "monomial-envelope/branch-pair-1"}};
      out["ratio"] = monenv::branch_to_json(
          run_branch_family(m, opt, monenv::BranchKind::Ratio));
      out["value"] = monenv::branch_to_json(
          run_branch_family(m, opt, monenv::BranchKind::Value));
      emit(out, opt.format);
    } else {
      const auto kind = opt.on == "ratio" ? monenv::BranchKind::Ratio
                                          : monenv::BranchKind::Value;
      emit(monenv::branch_to_json(run_branch_family(m, opt, kind)),
           opt.format);
    }
    return 0;
  }

  if (*levelset) {
    const std::vector<double> xis = parse_doubles(opt.xi_list);
    const auto rows = monenv::levelset_table(m, xis, opt.points);
    if (opt.format == "json") {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"xi", r.xi},
                       {"x1", r.x1},
                       {"x2", r.x2},
                       {"on_P", r.on_P},
                       {"on_Q", r.on_Q}});
      emit(json{{"schema", "monomial-envelope/levelset-1"}, {"rows", arr}},
           "json");
    } else {
      std::string out = "xi,x1,x2,on_P,on_Q\n";
      for (const auto& r : rows) {
        out += fmt17(r.xi) + "," + fmt17(r.x1) + "," + fmt17(r.x2) + "," +
               (r.on_P ? "1" : "0") + "," + (r.on_Q ? "1" : "0") + "\n";
      }
      std::cout << out;
    }
    return 0;
  }

  if (*compare) {
    emit(monenv::tightness_to_json(monenv::tightness_comparison(m, opt.grid)),
         opt.format);
    return 0;
  }

  return 2;
}

void error_json(const std::string& msg, int code) {
  std::cerr << json{{"error", msg}, {"exit", code}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const monenv::validation_error& e) {
    error_json(e.what(), 3);
    return 3;
  } catch (const std::logic_error& e) {
    // domain_error, invalid_argument, out_of_range: bad flags or arguments
    error_json(e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    error_json(e.what(), 1);
    return 1;
  }
}
