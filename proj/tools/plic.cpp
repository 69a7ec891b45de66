#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "plic/io.hpp"
#include "plic/lemmas.hpp"
#include "plic/snake.hpp"
#include "plic/svg.hpp"

using namespace plic;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return 1;
    case ErrorKind::SearchExhausted:
    case ErrorKind::LadderExhausted:
      return 3;
    case ErrorKind::InternalInvariant:
    case ErrorKind::SimplicityViolated:
      return 4;
    default:
      return 2;
  }
}

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    io::write_text_file(out, text);
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text_file(out, text);
}

json runs_json(const PLMap& half) {
  json j = io::report("departures");
  json runs = json::array();
  for (const auto& r : departures(half).runs) runs.push_back(io::to_json(r));
  j["runs"] = runs;
  json cps = json::array();
  if (!is_constant(half))
    for (const auto& c : contour_points(half)) cps.push_back(io::to_json(c));
  j["contour_points"] = cps;
  return j;
}

json census_json(const PLMap& f) {
  RadialDepartures rd(f);
  json j = io::report("census");
  j["census"] = to_string(rd.census());
  auto pairs = [&](const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
    json arr = json::array();
    for (std::size_t i = 0; i < ps.size() && i < 16; ++i)
      arr.push_back({rd.representatives()[ps[i].first].str(), rd.representatives()[ps[i].second].str()});
    return arr;
  };
  j["positive_value_pairs"] = pairs(rd.positive());
  j["negative_value_pairs"] = pairs(rd.negative());
  j["positive_cells"] = rd.positive().size();
  j["negative_cells"] = rd.negative().size();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact piecewise-linear interval map calculus"};
  app.require_subcommand(1);
  std::string out;

  std::string map_path, g_path, grid_text, w_text, x_text;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a map at a point");
  eval_cmd->add_option("--map", map_path)->required();
  eval_cmd->add_option("--x", x_text)->required();

  auto* compose_cmd = app.add_subcommand("compose", "Compose two maps, f after g");
  compose_cmd->add_option("--f", map_path)->required();
  compose_cmd->add_option("--g", g_path)->required();
  compose_cmd->add_option("--out", out);

  auto* trunc_cmd = app.add_subcommand("truncate", "Truncate a map relative to a grid");
  trunc_cmd->add_option("--map", map_path)->required();
  trunc_cmd->add_option("--grid", grid_text)->required();
  trunc_cmd->add_option("--out", out);

  auto* dep_cmd = app.add_subcommand("departures", "Departure runs and contour points");
  dep_cmd->add_option("--map", map_path)->required();
  dep_cmd->add_option("--out", out);

  auto* contour_cmd = app.add_subcommand("contour", "Contour factor of a map on [0,1]");
  contour_cmd->add_option("--map", map_path)->required();
  contour_cmd->add_option("--out", out);

  auto* rc_cmd = app.add_subcommand("radial-contour", "Radial contour factor of a map on [-1,1]");
  rc_cmd->add_option("--map", map_path)->required();
  rc_cmd->add_option("--out", out);

  auto* census_cmd = app.add_subcommand("census", "Orientation census of radial departures");
  census_cmd->add_option("--map", map_path)->required();
  census_cmd->add_option("--out", out);

  auto* ct_cmd = app.add_subcommand("compare-trunc", "Evaluate the five truncation comparison clauses");
  ct_cmd->add_option("--f", map_path)->required();
  ct_cmd->add_option("--g", g_path)->required();
  ct_cmd->add_option("--grid-v", grid_text)->required();
  ct_cmd->add_option("--grid-w", w_text)->required();
  ct_cmd->add_option("--out", out);

  auto* factor_cmd = app.add_subcommand("factor", "Factor a map through its radial contour factor");
  factor_cmd->add_option("--map", map_path)->required();
  factor_cmd->add_option("--out", out);

  std::string f1_path, f2_path, f3_path;
  std::optional<std::size_t> max_nodes;
  auto* bridged_cmd = app.add_subcommand("bridged", "Search for a bridging lift");
  bridged_cmd->add_option("--f1", f1_path)->required();
  bridged_cmd->add_option("--f2", f2_path)->required();
  bridged_cmd->add_option("--f3", f3_path)->required();
  bridged_cmd->add_option("--max-nodes", max_nodes);
  bridged_cmd->add_option("--out", out);

  std::string sys_f, sys_g, eps_text;
  auto* mio_cmd = app.add_subcommand("mio-check", "Exact deviation table of two systems");
  mio_cmd->add_option("--sys-f", sys_f)->required();
  mio_cmd->add_option("--sys-g", sys_g)->required();
  mio_cmd->add_option("--eps", eps_text)->required();
  mio_cmd->add_option("--out", out);

  std::string system_path, delta_text, report_path;
  std::size_t stages = 2, window = StagePolicy{}.window;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Build stages and verify the three claims");
  pipe_cmd->add_option("--system", system_path)->required();
  pipe_cmd->add_option("--stages", stages);
  pipe_cmd->add_option("--delta-schedule", delta_text);
  pipe_cmd->add_option("--window", window);
  pipe_cmd->add_option("--report", report_path);

  std::string kind = "plot";
  std::vector<std::string> plot_maps;
  std::vector<std::string> plot_grids;
  std::size_t depth = 3;
  bool reflect_left = false;
  auto* render_cmd = app.add_subcommand("render", "Render maps or a snake approximation as SVG");
  render_cmd->add_option("--kind", kind)->check(CLI::IsMember({"plot", "snake"}));
  render_cmd->add_option("--map", plot_maps);
  render_cmd->add_option("--grid", plot_grids);
  render_cmd->add_option("--system", system_path);
  render_cmd->add_option("--depth", depth);
  render_cmd->add_flag("--reflect-left", reflect_left);
  render_cmd->add_option("--out", out);

  std::uint64_t seed = 1;
  std::size_t cases = 100;
  auto* prop_cmd = app.add_subcommand("prop-test", "Run the lemma suite on seeded random instances");
  prop_cmd->add_option("--seed", seed);
  prop_cmd->add_option("--cases", cases);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*eval_cmd) {
      std::cout << io::read_map(map_path)(Rational::parse(x_text)).str() << "\n";
    } else if (*compose_cmd) {
      emit(io::to_json(compose(io::read_map(map_path), io::read_map(g_path))), out);
    } else if (*trunc_cmd) {
      emit(io::to_json(truncate(io::read_map(map_path), io::parse_grid(grid_text))), out);
    } else if (*dep_cmd) {
      PLMap f = io::read_map(map_path);
      if (f.domain() == Domain::Unit) {
        emit(runs_json(f), out);
      } else {
        json j = io::report("departures");
        j["right"] = runs_json(right_half(f));
        j["left"] = runs_json(left_reflected(f));
        j["census"] = to_string(orientation_census(f));
        emit(j, out);
      }
    } else if (*contour_cmd) {
      emit(io::to_json(contour_factor(io::read_map(map_path))), out);
    } else if (*rc_cmd) {
      emit(io::to_json(radial_contour_factor(io::read_map(map_path))), out);
    } else if (*census_cmd) {
      emit(census_json(io::read_map(map_path)), out);
    } else if (*ct_cmd) {
      auto r = compare_trunc(io::read_map(map_path), io::read_map(g_path), io::parse_grid(grid_text),
                             io::parse_grid(w_text));
      json j = io::report("compare-trunc");
      j["clause1"] = r.clause1;
      j["clause2"] = {{"premise", r.clause2_premise}, {"conclusion", r.clause2_conclusion}, {"holds", r.clause2()}};
      j["clause3"] = r.clause3;
      j["clause4"] = r.clause4;
      j["clause5"] = r.clause5;
      j["all"] = r.all();
      emit(j, out);
    } else if (*factor_cmd) {
      Factorization fac = factor_contour(io::read_map(map_path));
      json j = io::report("factor");
      j["t"] = io::to_json(fac.t);
      j["s"] = io::to_json(fac.s);
      emit(j, out);
    } else if (*bridged_cmd) {
      BridgeResult br = bridged_s(io::read_map(f1_path), io::read_map(f2_path), io::read_map(f3_path),
                                  max_nodes.value_or(default_max_nodes()));
      json j = io::report("bridged");
      j["s"] = io::to_json(br.s);
      j["census"] = to_string(br.census);
      j["explored"] = br.explored;
      j["lifts_checked"] = br.lifts_checked;
      emit(j, out);
    } else if (*mio_cmd) {
      auto F = io::system_from_json(io::read_json_file(sys_f));
      auto G = io::system_from_json(io::read_json_file(sys_g));
      json j = io::report("mio-check");
      j["report"] = io::to_json(mioduszewski_report(F, G, io::parse_rational_list(eps_text)));
      emit(j, out);
      if (!j["report"]["pass"].get<bool>()) return 2;
    } else if (*pipe_cmd) {
      auto sys = io::system_from_json(io::read_json_file(system_path));
      std::vector<Rational> deltas;
      if (delta_text.empty())
        for (std::size_t i = 0; i < stages; ++i) deltas.emplace_back(1, static_cast<long>(2 * i + 2));
      else
        deltas = io::parse_rational_list(delta_text);
      require(deltas.size() >= stages, ErrorKind::LengthMismatch, "delta schedule shorter than --stages");
      StagePolicy policy;
      policy.window = window;
      std::vector<StageState> built;
      for (std::size_t i = 0; i < stages; ++i) built.push_back(build_stage(sys, built, deltas[i], policy));
      ClaimReport cr = verify_claims(sys, built);
      json j = io::report("pipeline");
      j["window_note"] = "claims verified over a finite index window; this does not certify the infinite construction";
      j["stages"] = json::array();
      for (const auto& st : built) j["stages"].push_back(io::to_json(st));
      j["claims"] = io::to_json(cr);
      emit(j, report_path);
      if (!cr.pass()) return 4;
    } else if (*render_cmd) {
      if (kind == "plot") {
        PlotSpec spec;
        for (std::size_t i = 0; i < plot_maps.size(); ++i) spec.maps.push_back({io::read_map(plot_maps[i]), {i, false}});
        for (const auto& g : plot_grids) spec.grids.push_back(io::parse_grid(g));
        emit_text(plot_map(spec), out);
      } else {
        require(!system_path.empty(), ErrorKind::ParseError, "--system is required for a snake");
        SnakeSpec spec;
        spec.system = io::system_from_json(io::read_json_file(system_path));
        spec.depth = depth;
        spec.reflect_left = reflect_left;
        SnakeResult r = snake_embedding(spec);
        require(r.access_clear, ErrorKind::SimplicityViolated, "access segment to the marked point is blocked");
        emit_text(r.svg, out);
      }
    } else if (*prop_cmd) {
      auto tallies = lemmas::run_suite(seed, cases);
      json j = io::report("prop-test");
      j["seed"] = seed;
      j["cases"] = cases;
      bool ok = true;
      json lem = json::object();
      for (const auto& [name, t] : tallies) {
        lem[name] = {{"checked", t.checked}, {"passed", t.passed}, {"vacuous", t.vacuous}, {"failures", t.failures}};
        ok = ok && t.all_passed();
      }
      j["lemmas"] = lem;
      j["pass"] = ok;
      emit(j, "");
      if (!ok) return 4;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "InternalInvariant: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
