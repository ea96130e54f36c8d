#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "orbifold.hpp"
#include "spec_json.hpp"

namespace orbifolder::cli {

using json = nlohmann::json;

enum ExitCode : int { ok = 0, failure = 1, validation_error = 2, cap_exceeded = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string render(const json& j) { return j.dump(2) + "\n"; }

inline json integer_json(const Integer& v) {
  if (v >= 0 && v <= Integer(std::numeric_limits<std::uint64_t>::max())) return json(static_cast<std::uint64_t>(v));
  return json(v.str());
}

inline json rows_json(const ValueTable& table) {
  json rows = json::array();
  for (std::size_t q = 0; q < table.values.size(); ++q) {
    rows.push_back(json{{"decoration", spec::to_json(table.base.groupoid->object(q))}, {"value", to_string(table.values[q])}});
  }
  return rows;
}

inline json error_json(std::string_view code, const std::string& message) {
  return json{{"error", json{{"code", code}, {"message", message}}}};
}

inline std::vector<std::string> tokens_between(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Re-runs every `<case>.cmd.json` in `dir` ({"argv":[...],"exit":n}; the
/// token "@DIR@" in argv expands to `dir`) and byte-compares standard output
/// with `<case>.expected.json`.
inline json regress(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError("regress: '" + dir + "' is not a directory");
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 9 && name.ends_with(".cmd.json")) cases.push_back(entry.path());
  }
  std::sort(cases.begin(), cases.end());

  json mismatches = json::array();
  std::size_t passed = 0;
  for (const auto& cmd_path : cases) {
    const std::string file = cmd_path.filename().string();
    const std::string name = file.substr(0, file.size() - 9);
    const fs::path expected_path = cmd_path.parent_path() / (name + ".expected.json");
    if (!fs::exists(expected_path)) throw ValidationError("regress: missing expectation for case '" + name + "'");
    const json cmd = spec::parse_json_text(detail::read_file(cmd_path.string()), "regress case");
    std::vector<std::string> argv;
    for (const auto& a : cmd.at("argv")) {
      std::string s = a.get<std::string>();
      for (auto pos = s.find("@DIR@"); pos != std::string::npos; pos = s.find("@DIR@")) s.replace(pos, 5, dir);
      argv.push_back(std::move(s));
    }
    const int expected_exit = cmd.value("exit", 0);
    std::ostringstream actual, ignored;
    const int code = run(argv, actual, ignored);
    const std::string expected = detail::read_file(expected_path.string());
    if (code == expected_exit && actual.str() == expected) {
      ++passed;
      continue;
    }
    const auto want = detail::tokens_between(expected), got = detail::tokens_between(actual.str());
    std::size_t line = 0;
    while (line < want.size() && line < got.size() && want[line] == got[line]) ++line;
    mismatches.push_back(json{{"case", name},
                              {"exit", json{{"expected", expected_exit}, {"actual", code}}},
                              {"line", line + 1},
                              {"expected", line < want.size() ? want[line] : std::string("<eof>")},
                              {"actual", line < got.size() ? got[line] : std::string("<eof>")}});
  }
  return json{{"cases", cases.size()}, {"passed", passed}, {"ok", passed == cases.size()}, {"mismatches", mismatches}};
}

/// Parses argv (without the program name), runs one subcommand and writes
/// deterministic JSON. Exit codes: 0 success, 2 validation error, 3 cap exceeded, 1 other failures.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants of finite-group equivariant field theories and their orbifolds", "orbifolder"};
  app.require_subcommand(1);

  Caps caps;
  bool caps_from_env_failed = false;
  std::string env_error;
  try {
    caps = Caps::from_environment();
  } catch (const Error& e) {
    caps_from_env_failed = true;
    env_error = e.what();
  }
  std::size_t cap_objects = caps.max_objects;
  unsigned threads = caps.threads;
  std::string output_path;
  app.add_option("--cap-objects", cap_objects, "Maximum enumerated objects (env ORBIFOLDER_CAP_OBJECTS)")
      ->default_val(caps.max_objects);
  app.add_option("--threads", threads, "Worker threads (env ORBIFOLDER_THREADS)")->default_val(caps.threads);
  app.add_flag("--full-validation", caps.full_validation, "Exhaustive action/functoriality validation");
  app.add_option("--output", output_path, "Write JSON here instead of standard output");

  std::string spec_text, group_text, theory_text, along_text, manifold_text = "torus:3", tuple_text, values_path,
                                                                rep_path, emit_rep_path, golden_dir;
  unsigned letters = 0;
  std::string k_text = "1";
  bool want_smove = false, want_twisted = false;

  auto* group_cmd = app.add_subcommand("group", "Finite group queries")->require_subcommand(1);
  auto* group_info = group_cmd->add_subcommand("info", "Order, classes and generators");
  group_info->add_option("--spec", spec_text, "Group spec JSON")->required();

  auto* bundles_cmd = app.add_subcommand("bundles", "Bundle groupoids")->require_subcommand(1);
  auto* bundles_count = bundles_cmd->add_subcommand("count", "Objects, components and cardinality of Bun_G(M)");
  bundles_count->add_option("--group", group_text, "Group spec JSON")->required();
  bundles_count->add_option("--manifold", manifold_text, "circle | torus:n | surface:g")->required();

  auto* dw_cmd = app.add_subcommand("dw", "Dijkgraaf-Witten type theory values")->require_subcommand(1);
  auto* dw_closed = dw_cmd->add_subcommand("closed", "Closed-manifold values per decoration");
  dw_closed->add_option("--theory", theory_text, "Hom spec or group spec JSON")->required();
  dw_closed->add_option("--manifold", manifold_text, "torus:n | surface:g | circle")->capture_default_str();
  dw_closed->add_option("--tuple", tuple_text, "Single decoration j1,j2,...");
  auto* dw_verlinde = dw_cmd->add_subcommand("verlinde", "Torus fiber dimensions over commuting pairs");
  dw_verlinde->add_option("--theory", theory_text, "Hom spec or group spec JSON")->required();
  dw_verlinde->add_flag("--smove", want_smove, "Check dim(g,h) = dim(h^-1,g)");
  dw_verlinde->add_flag("--twisted-sectors", want_twisted, "Check the sectors (j,1) are non-zero");

  auto* orb_cmd = app.add_subcommand("orbifold", "Orbifold and pushforward invariants")->require_subcommand(1);
  auto* orb_simples = orb_cmd->add_subcommand("simples", "Simple objects of the orbifold category");
  orb_simples->add_option("--theory", theory_text, "Hom spec or group spec JSON")->required();
  auto* orb_closed = orb_cmd->add_subcommand("closed", "Orbifold value on a closed manifold");
  orb_closed->add_option("--theory", theory_text, "Hom spec or group spec JSON")->required();
  orb_closed->add_option("--manifold", manifold_text, "torus:n | surface:g | circle")->capture_default_str();
  auto* orb_permorb = orb_cmd->add_subcommand("permorb", "Simple objects of a permutation orbifold");
  orb_permorb->add_option("--n", letters, "Number of letters")->required();
  orb_permorb->add_option("--k", k_text, "Simple objects of the input category")->capture_default_str();
  auto* orb_push = orb_cmd->add_subcommand("push", "Pushforward of the closed-value table along a hom");
  orb_push->add_option("--theory", theory_text, "Hom spec or group spec JSON")->required();
  orb_push->add_option("--along", along_text, "Hom spec JSON out of the equivariance group")->required();
  orb_push->add_option("--manifold", manifold_text, "torus:n | surface:g | circle")->capture_default_str();
  auto* orb_check = orb_cmd->add_subcommand("check", "Divisibility of a torus value table by |G|");
  orb_check->add_option("--group", group_text, "Group spec JSON")->required();
  orb_check->add_option("--values", values_path, "Values file [{\"tuple\":[...],\"value\":\"p/q\"}]")->required();

  auto* par_cmd = app.add_subcommand("par", "Parallel sections")->require_subcommand(1);
  auto* par_inv = par_cmd->add_subcommand("invariants", "Dimension of parallel sections of a representation");
  par_inv->add_option("--theory", theory_text, "Use the surface value of this theory");
  par_inv->add_option("--manifold", manifold_text, "torus:2 | surface:g (with --theory)");
  par_inv->add_option("--rep", rep_path, "Representation JSON file");
  par_inv->add_option("--emit-rep", emit_rep_path, "Also write the representation JSON here");

  auto* regress_cmd = app.add_subcommand("regress", "Re-run golden cases and byte-compare");
  regress_cmd->add_option("dir", golden_dir, "Directory of <case>.cmd.json / <case>.expected.json")->required();

  auto emit = [&](const json& result) {
    if (output_path.empty()) {
      out << detail::render(result);
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw ValidationError("cannot write '" + output_path + "'");
      file << detail::render(result);
    }
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    out << detail::render(detail::error_json("validation", e.what()));
    return validation_error;
  }

  int code = ok;
  try {
    if (caps_from_env_failed) throw ValidationError(env_error);
    caps.max_objects = cap_objects;
    caps.threads = std::max(threads, 1u);

    if (*group_info) {
      auto g = spec::parse_group(spec::parse_json_text(spec_text, "group spec"), caps);
      const auto classes = conjugacy_classes(*g);
      json sizes = json::array(), reps = json::array();
      for (const auto& c : classes) {
        sizes.push_back(c.size());
        reps.push_back(c.representative);
      }
      emit(json{{"name", g->name()},
                {"order", g->order()},
                {"abelian", g->is_abelian()},
                {"classes", classes.size()},
                {"class_sizes", sizes},
                {"class_representatives", reps},
                {"generators", g->generators()}});
    } else if (*bundles_count) {
      auto g = spec::parse_group(spec::parse_json_text(group_text, "group spec"), caps);
      auto m = ManifoldTag::parse(manifold_text);
      auto bun = bundle_groupoid(g, m, caps);
      emit(json{{"manifold", m.to_string()},
                {"objects", bun.groupoid->size()},
                {"components", bun.groupoid->components().size()},
                {"cardinality", to_string(cardinality(*bun.groupoid))}});
    } else if (*dw_closed) {
      auto theory = spec::parse_theory(spec::parse_json_text(theory_text, "theory spec"), caps);
      auto m = ManifoldTag::parse(manifold_text);
      TheoryOnManifold ctx(theory, m, caps);
      json rows = json::array();
      if (!tuple_text.empty()) {
        const Tuple q = spec::parse_tuple(tuple_text);
        rows.push_back(json{{"decoration", spec::to_json(q)}, {"value", to_string(closed_value(ctx, ctx.decoration_index(q)))}});
      } else {
        rows = detail::rows_json(closed_value_table(ctx));
      }
      emit(json{{"manifold", m.to_string()}, {"rows", rows}});
    } else if (*dw_verlinde) {
      auto theory = spec::parse_theory(spec::parse_json_text(theory_text, "theory spec"), caps);
      json rows = json::array();
      std::size_t total = 0;
      for (const auto& e : verlinde_dims(theory, caps)) {
        rows.push_back(json{{"pair", spec::to_json(e.pair)}, {"dim", e.dim}});
        total += e.dim;
      }
      json result{{"rows", rows}, {"total", total}};
      if (want_smove) {
        const auto report = smove_check(theory, caps);
        result["smove"] = json{{"ok", report.ok},
                               {"offending_pair", report.offending_pair ? spec::to_json(*report.offending_pair) : json()}};
      }
      if (want_twisted) {
        const auto report = twisted_sector_check(theory, caps);
        result["twisted_sectors"] = json{{"precondition_met", report.precondition_met},
                                         {"ok", report.ok},
                                         {"empty_sectors", report.empty_sectors},
                                         {"message", report.message}};
      }
      emit(result);
    } else if (*orb_simples) {
      auto theory = spec::parse_theory(spec::parse_json_text(theory_text, "theory spec"), caps);
      emit(json{{"simples", detail::integer_json(simple_count(theory, caps))}});
    } else if (*orb_closed) {
      auto theory = spec::parse_theory(spec::parse_json_text(theory_text, "theory spec"), caps);
      auto m = ManifoldTag::parse(manifold_text);
      const auto report = orbifold_closed(theory, m, caps);
      json breakdown = json::array();
      for (const auto& s : report.breakdown) {
        breakdown.push_back(json{{"representative", spec::to_json(s.representative)},
                                 {"aut_order", s.aut_order},
                                 {"summand", to_string(s.summand)}});
      }
      emit(json{{"manifold", m.to_string()},
                {"value", to_string(report.value)},
                {"integral", report.integral},
                {"breakdown", breakdown}});
    } else if (*orb_permorb) {
      const Integer k = parse_integer(k_text);
      emit(json{{"simples", detail::integer_json(perm_orbifold_simples(letters, k, caps))}});
    } else if (*orb_push) {
      auto theory = spec::parse_theory(spec::parse_json_text(theory_text, "theory spec"), caps);
      auto hom = spec::parse_hom(spec::parse_json_text(along_text, "hom spec"), caps);
      auto m = ManifoldTag::parse(manifold_text);
      emit(json{{"manifold", m.to_string()}, {"rows", detail::rows_json(pushforward_closed(theory, hom, m, caps))}});
    } else if (*orb_check) {
      auto g = spec::parse_group(spec::parse_json_text(group_text, "group spec"), caps);
      const json values = spec::parse_json_text(detail::read_file(values_path), "values file");
      if (!values.is_array() || values.empty()) throw ValidationError("values file must be a non-empty array");
      const std::size_t arity = values[0].at("tuple").size();
      if (arity == 0) throw ValidationError("values file tuples must be non-empty");
      const auto tuples = commuting_tuples(g, arity, caps);
      std::vector<Rational> table(tuples.size(), 0);
      std::vector<bool> seen(tuples.size(), false);
      for (const auto& row : values) {
        Tuple t;
        for (const auto& x : row.at("tuple")) t.push_back(x.get<element_t>());
        if (t.size() != arity) throw ValidationError("values file tuples have inconsistent length");
        std::size_t idx = tuples.size();
        for (std::size_t i = 0; i < tuples.size() && idx == tuples.size(); ++i)
          if (std::ranges::equal(tuples[i], t)) idx = i;
        if (idx == tuples.size()) throw ValidationError("values file lists a non-commuting or invalid tuple");
        if (seen[idx]) throw ValidationError("values file lists a tuple twice");
        seen[idx] = true;
        table[idx] = parse_rational(row.at("value").get<std::string>());
      }
      const auto report = divisibility_check(g, tuples, table);
      emit(json{{"arity", arity},
                {"group_order", report.group_order},
                {"sum", to_string(report.sum)},
                {"ok", report.ok}});
    } else if (*par_inv) {
      if (theory_text.empty() == rep_path.empty()) throw ValidationError("par invariants needs exactly one of --theory, --rep");
      json result;
      if (!theory_text.empty()) {
        const json theory_json = spec::parse_json_text(theory_text, "theory spec");
        auto theory = spec::parse_theory(theory_json, caps);
        auto m = ManifoldTag::parse(par_inv->count("--manifold") ? manifold_text : std::string("torus:2"));
        TheoryOnManifold ctx(theory, m, caps);
        const auto rep = surface_value(ctx);
        if (!emit_rep_path.empty()) {
          std::ofstream file(emit_rep_path, std::ios::binary);
          if (!file) throw ValidationError("cannot write '" + emit_rep_path + "'");
          file << detail::render(spec::rep_to_json(rep, spec::theory_target_spec(theory_json), m));
        }
        result = json{{"manifold", m.to_string()},
                      {"fiber_dims", rep.dims()},
                      {"components", rep.base()->components().size()},
                      {"invariants", invariants_dim(rep)}};
      } else {
        const auto loaded = spec::rep_from_json(spec::parse_json_text(detail::read_file(rep_path), "rep file"), caps);
        result = json{{"manifold", loaded.base.manifold.to_string()},
                      {"fiber_dims", loaded.rep.dims()},
                      {"components", loaded.rep.base()->components().size()},
                      {"invariants", invariants_dim(loaded.rep)}};
      }
      emit(result);
    } else if (*regress_cmd) {
      const json summary = regress(golden_dir);
      emit(summary);
      code = summary.at("ok").get<bool>() ? ok : failure;
    }
  } catch (const CapExceeded& e) {
    out << detail::render(detail::error_json(to_string(e.code()), e.what()));
    return cap_exceeded;
  } catch (const ValidationError& e) {
    out << detail::render(detail::error_json(to_string(e.code()), e.what()));
    return validation_error;
  } catch (const InvarianceViolation& e) {
    out << detail::render(detail::error_json(to_string(e.code()), e.what()));
    return validation_error;
  } catch (const json::exception& e) {
    out << detail::render(detail::error_json("validation", std::string("malformed JSON input: ") + e.what()));
    return validation_error;
  } catch (const Error& e) {
    out << detail::render(detail::error_json(to_string(e.code()), e.what()));
    return failure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    out << detail::render(detail::error_json("internal", e.what()));
    return failure;
  }
  return code;
}

}  // namespace orbifolder::cli
