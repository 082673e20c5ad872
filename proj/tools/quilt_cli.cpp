// Command-line surface: ingest JSON instances, run separator-criterion and
// brute-force checks, evaluate glued functions, and drive the exact-real
// demos. Reports are JSON on standard output; exit codes: 0 ok, 2 schema
// error, 3 instance too large, 4 budget exhausted / diverged.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quilt/json_io.hpp"
#include "quilt/quilt.hpp"

namespace {

using quilt::Json;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitBudget = 4;

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

Json mask_names(quilt::Mask k, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (quilt::mask_has(k, i)) out.push_back(names[i]);
  return out;
}

std::vector<std::string> collection_names(
    const quilt::Collection<quilt::BitSet64>& a) {
  std::vector<std::string> names;
  for (const auto& m : a.members) names.push_back(m.name);
  return names;
}

int run_check_sep(const quilt::Instance& inst, bool include_trivial) {
  auto policy = include_trivial ? quilt::TrivialMasks::kInclude
                                : quilt::TrivialMasks::kSkip;
  Json report;
  if (const auto* topo = std::get_if<quilt::TopologyInstance>(&inst)) {
    auto res = quilt::criterion_check(
        topo->collection, quilt::open_separator_oracle(topo->space), policy);
    report["kind"] = "topology";
    report["holds"] = res.holds;
    Json seps = Json::array();
    for (const auto& [k, open] : res.separators)
      seps.push_back(
          {{"mask", k},
           {"members", mask_names(k, collection_names(topo->collection))},
           {"open", quilt::point_set_json(open, topo->points)}});
    report["separators"] = seps;
    report["failures"] = res.failures;
    emit(report);
    return kExitOk;
  }
  if (const auto* uv = std::get_if<quilt::UvDeskInstance>(&inst)) {
    auto res = quilt::criterion_check(
        uv->collection, quilt::eff_union_separator_oracle(uv->u), policy);
    report["kind"] = "uv_desk";
    report["holds"] = res.holds;
    Json seps = Json::array();
    for (const auto& [k, sep] : res.separators)
      seps.push_back(
          {{"mask", k},
           {"members", mask_names(k, collection_names(uv->collection))},
           {"codes", sep.codes},
           {"points", quilt::point_set_json(sep.points, uv->points)}});
    report["separators"] = seps;
    report["failures"] = res.failures;
    emit(report);
    return kExitOk;
  }
  if (const auto* real = std::get_if<quilt::RealInstance>(&inst)) {
    const auto& cuts = real->cut_points;
    auto table = quilt::partition_separators(cuts);
    std::size_t pieces = cuts.size() + 1;
    // sample grid: the cuts, midpoints between them, and outer points
    std::vector<quilt::Rational> grid = cuts;
    for (std::size_t i = 1; i < cuts.size(); ++i)
      grid.push_back((cuts[i - 1] + cuts[i]) / 2);
    grid.push_back(cuts.front() - 1);
    grid.push_back(cuts.back() + 1);
    auto in_piece = [&](std::size_t i, const quilt::Rational& s) {
      if (i == 0) return s <= cuts.front();
      if (i == pieces - 1) return cuts.back() <= s;
      return cuts[i - 1] <= s && s <= cuts[i];
    };
    bool holds = true;
    Json entries = Json::array();
    for (quilt::Mask k = 0; k <= quilt::full_mask(pieces); ++k) {
      bool valid = true;
      for (const auto& s : grid) {
        bool in_k = false, out_k = false;
        for (std::size_t i = 0; i < pieces; ++i)
          (quilt::mask_has(k, i) ? in_k : out_k) |= in_piece(i, s);
        if (in_k && !out_k && !quilt::covers_within(table.at(k), s, 2000))
          valid = false;
        if (out_k && !in_k && quilt::covers_within(table.at(k), s, 2000))
          valid = false;
      }
      holds = holds && valid;
      entries.push_back({{"mask", k}, {"grid_valid", valid}});
    }
    report["kind"] = "real";
    report["holds"] = holds;
    report["separators"] = entries;
    emit(report);
    return kExitOk;
  }
  throw quilt::SchemaError("check-sep does not apply to prf instances");
}

int run_check_sjp(const quilt::Instance& inst, const std::string& wanted_class,
                  const std::string& mode, std::uint64_t cap) {
  bool strong = mode == "sjp";
  Json report;
  report["mode"] = mode;

  const quilt::Collection<quilt::BitSet64>* coll = nullptr;
  const std::vector<std::string>* labels = nullptr;
  const std::vector<std::string>* value_labels = nullptr;
  quilt::ClassOracle oracle;
  unsigned x_size = 0, y_size = 0;
  std::string cls = wanted_class;

  if (const auto* topo = std::get_if<quilt::TopologyInstance>(&inst)) {
    if (cls.empty()) cls = "continuity";
    if (cls != "continuity" && cls != "constant-range")
      throw quilt::SchemaError("topology instances support --class "
                               "continuity or constant-range");
    coll = &topo->collection;
    labels = &topo->points;
    value_labels = &topo->value_points;
    x_size = topo->space.size;
    y_size = topo->value_space.size;
    oracle = cls == "continuity"
                 ? quilt::continuity_oracle(topo->space, topo->value_space)
                 : quilt::one_element_range_oracle();
    report["kind"] = "topology";
  } else if (const auto* uv = std::get_if<quilt::UvDeskInstance>(&inst)) {
    if (cls.empty()) cls = "uv";
    if (cls != "uv")
      throw quilt::SchemaError("uv_desk instances support --class uv");
    coll = &uv->collection;
    labels = &uv->points;
    value_labels = &uv->points;
    x_size = uv->u.point_count;
    y_size = uv->v.point_count;
    oracle = quilt::uv_computable_oracle(uv->u, uv->v);
    report["kind"] = "uv_desk";
  } else {
    throw quilt::SchemaError(
        "check-sjp applies to topology or uv_desk instances");
  }

  report["class"] = cls;
  auto res = strong ? quilt::sjp_bruteforce(*coll, oracle, x_size, y_size, cap)
                    : quilt::jp_bruteforce(*coll, oracle, x_size, y_size, cap);
  report["verdict"] = res.verdict;
  if (res.counterexample) {
    Json cex = Json::object();
    for (unsigned x = 0; x < res.counterexample->graph.size(); ++x) {
      std::int8_t v = res.counterexample->graph[x];
      if (v >= 0 && x < labels->size())
        cex[(*labels)[x]] = (*value_labels)[static_cast<unsigned>(v)];
    }
    report["counterexample"] = cex;
  } else {
    report["counterexample"] = nullptr;
  }
  emit(report);
  return kExitOk;
}

int run_check_theorem(const quilt::Instance& inst, std::uint64_t cap) {
  Json report;
  if (const auto* topo = std::get_if<quilt::TopologyInstance>(&inst)) {
    auto res = quilt::theorem_tcont_check(topo->collection, topo->space,
                                          topo->value_space, cap);
    report["kind"] = "topology";
    report["criterion"] = res.criterion;
    report["bruteforce"] = res.bruteforce;
    report["converse_applicable"] = res.converse_applicable;
    emit(report);
    return kExitOk;
  }
  if (const auto* uv = std::get_if<quilt::UvDeskInstance>(&inst)) {
    auto res = quilt::theorem_tcomp_check(uv->collection, uv->u, uv->v, cap);
    report["kind"] = "uv_desk";
    report["criterion"] = res.criterion;
    report["bruteforce"] = res.bruteforce;
    report["converse_applicable"] = res.converse_applicable;
    emit(report);
    return kExitOk;
  }
  throw quilt::SchemaError(
      "check-theorem applies to topology or uv_desk instances");
}

int run_glue_eval(const quilt::Instance& inst,
                  const std::vector<std::uint64_t>& x, std::uint64_t budget) {
  const auto* prf = std::get_if<quilt::PrfInstance>(&inst);
  if (!prf) throw quilt::SchemaError("glue-eval applies to prf instances");
  if (x.size() != prf->arity)
    throw quilt::SchemaError("glue-eval: --x arity mismatch");
  auto g = prf->to_glue();
  auto value = quilt::glue_eval(g, x, budget);
  Json report;
  report["x"] = x;
  report["budget"] = budget;
  if (value) {
    report["status"] = "ok";
    report["value"] = *value;
    emit(report);
    return kExitOk;
  }
  report["status"] = "diverged";
  emit(report);
  return kExitBudget;
}

Json interval_json(const quilt::RatInterval& iv) {
  return {{"lo", quilt::rational_string(iv.lo)},
          {"hi", quilt::rational_string(iv.hi)},
          {"width", quilt::rational_string(iv.width())}};
}

int run_arctan(const std::string& xs, const std::string& epss,
               std::uint64_t budget) {
  quilt::Rational x = quilt::parse_rational(xs);
  quilt::Rational eps = quilt::parse_rational(epss);
  if (eps <= 0) throw quilt::SchemaError("--eps must be positive");
  auto run = quilt::run_to_precision(quilt::arctan_name(quilt::rat_name(x)),
                                     eps, budget);
  Json report;
  report["x"] = xs;
  report["eps"] = quilt::rational_string(eps);
  if (run.result) {
    report["status"] = "ok";
    report["interval"] = interval_json(*run.result);
    emit(report);
    return kExitOk;
  }
  report["status"] = "budget-exhausted";
  report["narrowest"] = run.narrowest ? interval_json(*run.narrowest) : Json{};
  emit(report);
  return kExitBudget;
}

int run_cases(const std::string& xs, const std::string& ts,
              const std::string& ys, const std::string& zs,
              const std::string& epss, std::uint64_t budget) {
  quilt::Rational eps = quilt::parse_rational(epss);
  if (eps <= 0) throw quilt::SchemaError("--eps must be positive");
  auto name = quilt::cases_name(quilt::rat_name(quilt::parse_rational(xs)),
                                quilt::rat_name(quilt::parse_rational(ts)),
                                quilt::rat_name(quilt::parse_rational(ys)),
                                quilt::rat_name(quilt::parse_rational(zs)));
  auto run = quilt::run_to_precision(name, eps, budget);
  Json report;
  report["eps"] = quilt::rational_string(eps);
  if (run.result) {
    report["status"] = "ok";
    report["interval"] = interval_json(*run.result);
    emit(report);
    return kExitOk;
  }
  report["status"] = "budget-exhausted";
  report["narrowest"] = run.narrowest ? interval_json(*run.narrowest) : Json{};
  report["note"] = "no emitted interval reached the requested width";
  emit(report);
  return kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"criterion checks, glued evaluation and exact-real demos "
               "for piecewise-defined functions"};
  app.require_subcommand(1);

  std::string file;
  bool include_trivial = false;
  std::string cls;
  std::string mode = "sjp";
  std::uint64_t cap = quilt::kDefaultBruteForceCap;
  std::vector<std::uint64_t> x_tuple;
  std::uint64_t budget = 1000;
  std::string xs, ts, ys, zs, epss;
  std::uint64_t name_budget = quilt::kDefaultNameBudget;

  auto* sep = app.add_subcommand("check-sep",
                                 "separator-criterion check of an instance");
  sep->add_option("file", file)->required();
  sep->add_flag("--include-trivial", include_trivial);

  auto* sjp = app.add_subcommand("check-sjp",
                                 "brute-force gluing verdict of an instance");
  sjp->add_option("file", file)->required();
  sjp->add_option("--class", cls,
                  "continuity | uv | constant-range (default per kind)");
  sjp->add_option("--mode", mode)->check(CLI::IsMember({"sjp", "jp"}));
  sjp->add_option("--cap", cap);

  auto* thm = app.add_subcommand(
      "check-theorem", "criterion vs brute force with converse flag");
  thm->add_option("file", file)->required();
  thm->add_option("--cap", cap);

  auto* glue = app.add_subcommand("glue-eval",
                                  "evaluate the glued function at a point");
  glue->add_option("file", file)->required();
  glue->add_option("--x", x_tuple, "point, one natural per coordinate")
      ->required();
  glue->add_option("--budget", budget);

  auto* atn = app.add_subcommand("arctan",
                                 "enclose arctan(x) to a requested width");
  atn->add_option("--x", xs)->required();
  atn->add_option("--eps", epss)->required();
  atn->add_option("--budget", name_budget);

  auto* cas = app.add_subcommand("cases", "two-branch case selection demo");
  cas->add_option("--x", xs)->required();
  cas->add_option("--t", ts)->required();
  cas->add_option("--y", ys)->required();
  cas->add_option("--z", zs)->required();
  cas->add_option("--eps", epss)->required();
  cas->add_option("--budget", name_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSchema;
  }

  try {
    if (sep->parsed())
      return run_check_sep(quilt::load_instance(file), include_trivial);
    if (sjp->parsed())
      return run_check_sjp(quilt::load_instance(file), cls, mode, cap);
    if (thm->parsed())
      return run_check_theorem(quilt::load_instance(file), cap);
    if (glue->parsed())
      return run_glue_eval(quilt::load_instance(file), x_tuple, budget);
    if (atn->parsed()) return run_arctan(xs, epss, name_budget);
    if (cas->parsed()) return run_cases(xs, ts, ys, zs, epss, name_budget);
  } catch (const quilt::SchemaError& e) {
    std::cout << Json{{"status", "schema-error"}, {"error", e.what()}}.dump(2)
              << "\n";
    return kExitSchema;
  } catch (const quilt::InstanceTooLarge& e) {
    std::cout << Json{{"status", "instance-too-large"}, {"error", e.what()}}
                     .dump(2)
              << "\n";
    return kExitTooLarge;
  } catch (const quilt::BudgetExhausted& e) {
    std::cout << Json{{"status", "budget-exhausted"}, {"error", e.what()}}
                     .dump(2)
              << "\n";
    return kExitBudget;
  }
  return kExitOk;
}
