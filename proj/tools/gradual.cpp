// Command-line frontend.  Loads algebra / module / L∞ descriptions from
// JSON, runs the requested pipeline, and emits a report as JSON or an
// aligned table.
//
// Exit codes: 0 success (and every checked identity holds), 1 invalid
// input, 2 a checked mathematical assertion failed (character mismatch,
// duality failure), 3 internal inconsistency (d² ≠ 0, transfer checks).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradual/berezin.hpp"
#include "gradual/ce.hpp"
#include "gradual/errors.hpp"
#include "gradual/io.hpp"
#include "gradual/linfty.hpp"

namespace {

using gradual::io::json;

struct Options {
  std::string input;
  std::vector<std::string> modules;
  int truncation = -1;
  int max_degree = -1;
  std::string twist = "none";
  std::string format = "json";
  std::string output;
};

// Inputs are looked up as given first; GRADUAL_CATALOG then serves as a
// fallback root so `catalog/foo.json` works from any directory.
std::string resolve_input(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* root = std::getenv("GRADUAL_CATALOG")) {
    std::string stripped = path;
    const std::string prefix = "catalog/";
    if (stripped.rfind(prefix, 0) == 0) stripped = stripped.substr(prefix.size());
    for (const std::string& cand : {std::string(root) + "/" + stripped,
                                    std::string(root) + "/" + path})
      if (fs::exists(cand)) return cand;
  }
  return path;  // let the open error name the original path
}

void emit(const json& report, const Options& o) {
  std::string text = o.format == "table" ? gradual::io::render_table(report)
                                         : report.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    if (!out) gradual::fail(gradual::ErrorKind::InvalidInput, "cannot write '" + o.output + "'");
    out << text;
  }
}

gradual::LieAlgebra load_algebra(const Options& o) {
  return gradual::io::algebra_from_json(gradual::io::read_json_file(resolve_input(o.input)));
}

std::vector<std::pair<std::string, gradual::LieModule>> load_modules(
    const Options& o, const gradual::LieAlgebra& a) {
  std::vector<std::pair<std::string, gradual::LieModule>> mods;
  for (const std::string& p : o.modules)
    mods.emplace_back(p, gradual::io::module_from_json(
                             gradual::io::read_json_file(resolve_input(p)), a));
  if (mods.empty()) mods.emplace_back("trivial", gradual::trivial_module(a));
  return mods;
}

// --twist none | divergence | file:PATH, resolved against the given context.
std::optional<gradual::Elem> resolve_twist(const Options& o, const gradual::GenSet& ctx,
                                           const gradual::Elem& divergence) {
  if (o.twist == "none") return std::nullopt;
  if (o.twist == "divergence") return divergence;
  const std::string prefix = "file:";
  if (o.twist.rfind(prefix, 0) == 0) {
    std::string path = resolve_input(o.twist.substr(prefix.size()));
    return gradual::io::elem_from_json(ctx, gradual::io::read_json_file(path), "twist");
  }
  gradual::fail(gradual::ErrorKind::InvalidInput,
                "--twist expects none, divergence, or file:PATH");
}

int run_validate(const Options& o) {
  json j = gradual::io::read_json_file(resolve_input(o.input));
  gradual::ValidationReport rep;
  if (gradual::io::looks_like_algebra(j)) {
    gradual::LieAlgebra a = gradual::io::algebra_from_json(j);
    rep = a.validate();
    for (const std::string& p : o.modules) {
      gradual::LieModule m =
          gradual::io::module_from_json(gradual::io::read_json_file(resolve_input(p)), a);
      for (const std::string& prob : m.validate().problems)
        rep.problems.push_back(p + ": " + prob);
    }
  } else {
    rep = gradual::io::linfty_from_json(j, o.truncation).validate();
  }
  emit(gradual::io::validation_to_json(rep), o);
  return rep.ok() ? 0 : 1;
}

int run_cohomology(const Options& o) {
  gradual::LieAlgebra a = load_algebra(o);
  auto mods = load_modules(o, a);
  gradual::GenSet duals = gradual::dual_context(a);
  std::optional<gradual::Elem> twist =
      resolve_twist(o, duals, gradual::supertrace_cocycle(a, duals));
  int maxd = o.max_degree >= 0 ? o.max_degree : static_cast<int>(a.dim());
  json results = json::array();
  for (auto& [name, m] : mods) {
    gradual::CochainComplex cx(a, m, twist ? &*twist : nullptr);
    json r = gradual::io::cohomology_to_json(cx.cohomology(maxd));
    if (mods.size() == 1) {
      emit(r, o);
      return 0;
    }
    r["module"] = name;
    results.push_back(std::move(r));
  }
  emit(json{{"results", results}}, o);
  return 0;
}

int run_character(const Options& o) {
  gradual::LieAlgebra a = load_algebra(o);
  gradual::Transfer t(a);
  gradual::MainTheoremReport rep = gradual::verify_main_theorem(t);
  emit(gradual::io::character_to_json(a, rep), o);
  return rep.character_match && rep.closed && rep.degree_match ? 0 : 2;
}

int run_hazewinkel(const Options& o) {
  gradual::LieAlgebra a = load_algebra(o);
  if (!gradual::hazewinkel_eligible(a))
    gradual::fail(gradual::ErrorKind::InvalidInput,
                  "duality check needs an ungraded algebra (Z mode, all degrees 0)");
  auto mods = load_modules(o, a);
  bool all = true;
  json results = json::array();
  for (auto& [name, m] : mods) {
    gradual::HazewinkelReport rep = gradual::hazewinkel_check(a, m);
    all = all && rep.match;
    json r = gradual::io::hazewinkel_to_json(rep);
    if (mods.size() == 1) {
      emit(r, o);
      return rep.match ? 0 : 2;
    }
    r["module"] = name;
    results.push_back(std::move(r));
  }
  emit(json{{"results", results}, {"match", all}}, o);
  return all ? 0 : 2;
}

int run_divergence(const Options& o) {
  json j = gradual::io::read_json_file(resolve_input(o.input));
  if (gradual::io::looks_like_algebra(j)) {
    gradual::LieAlgebra a = gradual::io::algebra_from_json(j);
    gradual::GenSet duals = gradual::dual_context(a);
    gradual::Elem div = gradual::ce_divergence(a, duals);
    gradual::Elem chi = gradual::supertrace_cocycle(a, duals);
    bool match = div == chi;
    emit(json{{"divergence", gradual::io::elem_to_json(duals, div)},
              {"supertrace_cocycle", gradual::io::elem_to_json(duals, chi)},
              {"match", match}},
         o);
    return match ? 0 : 2;
  }
  gradual::Linfty s = gradual::io::linfty_from_json(j, o.truncation);
  gradual::Elem div = s.divergence_cocycle();
  emit(json{{"divergence", gradual::io::elem_to_json(s.ctx(), div)}, {"closed", true}}, o);
  return 0;
}

int run_linfty(const Options& o) {
  json j = gradual::io::read_json_file(resolve_input(o.input));
  gradual::Linfty s = gradual::io::linfty_from_json(j, o.truncation);
  gradual::ValidationReport rep = s.validate();
  if (!rep.ok()) {
    emit(gradual::io::validation_to_json(rep), o);
    return 1;
  }
  std::optional<gradual::Elem> twist;
  if (o.twist != "none") twist = resolve_twist(o, s.ctx(), s.divergence_cocycle());
  int maxd = o.max_degree >= 0 ? o.max_degree
                               : static_cast<int>(std::max<long long>(s.total_dim(), 0));
  gradual::LinftyCohomology c =
      s.truncated_cohomology(twist ? &*twist : nullptr, 0, maxd, o.truncation);
  json out;
  out["valid"] = true;
  out["minimal"] = s.minimal();
  out["hypothesis_h"] = s.hypothesis_h();
  out["total_dimension"] = s.total_dim();
  json cj = gradual::io::linfty_to_json(c);
  out.update(cj);
  emit(out, o);
  return 0;
}

int run_conjecture(const Options& o) {
  json j = gradual::io::read_json_file(resolve_input(o.input));
  gradual::ConjectureEvidence ev;
  if (gradual::io::looks_like_algebra(j)) {
    gradual::LieAlgebra a = gradual::io::algebra_from_json(j);
    gradual::Linfty s = gradual::linfty_from_algebra(a, o.truncation);
    ev = s.conjecture_evidence(o.truncation);
  } else {
    gradual::Linfty s = gradual::io::linfty_from_json(j, o.truncation);
    ev = s.conjecture_evidence(o.truncation);
  }
  emit(gradual::io::conjecture_to_json(ev), o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Chevalley-Eilenberg (co)homology, dualizing characters, and L-infinity truncations"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("-i,--input", o.input, "input JSON description")->required();
    cmd->add_option("-m,--module", o.modules, "module JSON description (repeatable)");
    cmd->add_option("--truncation", o.truncation, "series truncation order override");
    cmd->add_option("--max-degree", o.max_degree, "top cohomological degree to report");
    cmd->add_option("--twist", o.twist, "none | divergence | file:PATH");
    cmd->add_option("--format", o.format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("-o,--output", o.output, "write the report here instead of stdout");
    return cmd;
  };

  CLI::App* validate = add_common(app.add_subcommand(
      "validate", "check bracket antisymmetry, homogeneity, Jacobi / l^2 = 0"));
  CLI::App* cohomology = add_common(app.add_subcommand(
      "cohomology", "cochain cohomology dimensions, optionally twisted"));
  CLI::App* character = add_common(app.add_subcommand(
      "character", "dualizing-module character vs the supertrace of ad"));
  CLI::App* hazewinkel = add_common(app.add_subcommand(
      "hazewinkel", "twisted homology vs complementary-degree dual cohomology"));
  CLI::App* divergence = add_common(app.add_subcommand(
      "divergence", "divergence of the structure derivation, with cocycle check"));
  CLI::App* linfty = add_common(app.add_subcommand(
      "linfty", "truncated cohomology of an L-infinity structure"));
  CLI::App* conjecture = add_common(app.add_subcommand(
      "conjecture", "untwisted vs twisted complementary-degree dimension table"));

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(o);
    if (cohomology->parsed()) return run_cohomology(o);
    if (character->parsed()) return run_character(o);
    if (hazewinkel->parsed()) return run_hazewinkel(o);
    if (divergence->parsed()) return run_divergence(o);
    if (linfty->parsed()) return run_linfty(o);
    if (conjecture->parsed()) return run_conjecture(o);
    return 1;
  } catch (const gradual::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind) {
      case gradual::ErrorKind::InvalidInput:
      case gradual::ErrorKind::ShapeMismatch:
      case gradual::ErrorKind::NotMaurerCartan:
      case gradual::ErrorKind::TruncationRequired:
        return 1;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
