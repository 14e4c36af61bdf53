#include "rlie/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlie/algebra_io.hpp"
#include "rlie/enveloping.hpp"
#include "rlie/free_restricted.hpp"
#include "rlie/monadic.hpp"
#include "rlie/restricted_lie.hpp"

namespace rlie {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit;
  std::string file;
  std::size_t samples = 100;
  bool table = false;
  std::uint64_t p = 0;
  std::size_t rank = 0;
  std::optional<std::size_t> max_degree;
  bool oracle = false;
  std::size_t instances = 8;
};

struct Outcome {
  Json report;
  std::ostringstream text;
  bool pass = true;
};

Json element_json(const RestrictedLieAlgebra& lie, const LieElement& x) {
  Json out = Json::object();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 0) {
      out[lie.names()[k]] = x[k];
    }
  }
  return out;
}

std::string element_text(const std::vector<std::string>& names, const LieElement& x) {
  std::string out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) {
      continue;
    }
    out += out.empty() ? "" : " + ";
    out += (x[k] == 1 ? "" : std::to_string(x[k]) + "*") + names[k];
  }
  return out.empty() ? "0" : out;
}

Json matrix_json(const FpMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<Residue>(row.begin(), row.end()));
  }
  return rows;
}

Json header(const std::string& command, const Options& opt) {
  Json j;
  j["command"] = command;
  if (!opt.file.empty()) {
    j["file"] = opt.file;
  }
  return j;
}

std::size_t default_truncation(const RestrictedLieAlgebra& lie) {
  return std::max<std::size_t>(4, lie.characteristic() + 1);
}

// ---------------------------------------------------------------------------

void cmd_check(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const AxiomReport r = check_axioms(lie, opt.samples, opt.seed);
  const auto& names = lie.names();
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["dim"] = lie.dim();
  j["samples"] = opt.samples;
  j["seed"] = opt.seed;
  o.text << "check " << opt.file << ": p=" << lie.characteristic() << ", dim=" << lie.dim() << "\n";

  Json jac = Json::array();
  for (const auto& f : r.jacobi) {
    jac.push_back({{"triple", {names[f.i], names[f.j], names[f.k]}}, {"residual", element_json(lie, f.residual)}});
    o.text << "Jacobi fails on (" << names[f.i] << ", " << names[f.j] << ", " << names[f.k]
           << "): residual " << element_text(names, f.residual) << "\n";
  }
  j["jacobi"] = {{"triples_checked", r.jacobi_triples_checked}, {"failures", jac}};
  o.text << "Jacobi: " << r.jacobi_triples_checked << " basis triples, " << (r.jacobi_ok() ? "ok" : "FAILED") << "\n";

  Json res = Json::array();
  for (const auto& f : r.restrictedness) {
    res.push_back({{"index", f.index}, {"name", names[f.index]}, {"residual", matrix_json(f.residual)}});
    o.text << "restrictedness fails at " << names[f.index] << ": ad(" << names[f.index] << "^[p]) - ad("
           << names[f.index] << ")^p =\n"
           << f.residual;
  }
  j["restrictedness"] = {{"basis_checked", lie.dim()}, {"failures", res}};
  o.text << "restrictedness: " << lie.dim() << " basis vectors, " << (r.restrictedness_ok() ? "ok" : "FAILED")
         << "\n";

  auto samples_json = [&](const std::vector<SampleFailure>& failures, bool additive, const char* label) {
    Json arr = Json::array();
    for (const auto& f : failures) {
      Json item = {{"sample", f.sample}, {"x", element_json(lie, f.x)}};
      if (additive) {
        item["y"] = element_json(lie, f.y);
      } else {
        item["alpha"] = f.alpha;
      }
      item["residual"] = element_json(lie, f.residual);
      arr.push_back(item);
      o.text << label << " fails on sample " << f.sample << ": x = " << element_text(names, f.x);
      if (additive) {
        o.text << ", y = " << element_text(names, f.y);
      } else {
        o.text << ", alpha = " << f.alpha;
      }
      o.text << ", residual " << element_text(names, f.residual) << "\n";
    }
    return Json{{"samples_checked", opt.samples}, {"failures", arr}};
  };
  j["additivity"] = samples_json(r.additivity, true, "additivity");
  o.text << "additivity: " << opt.samples << " samples, " << (r.additivity_ok() ? "ok" : "FAILED") << "\n";
  j["semilinearity"] = samples_json(r.semilinearity, false, "semilinearity");
  o.text << "semilinearity: " << opt.samples << " samples, " << (r.semilinearity_ok() ? "ok" : "FAILED") << "\n";

  o.pass = r.passed();
  o.text << (o.pass ? "all axioms hold" : "axioms violated") << "\n";
}

void cmd_env(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const EnvelopingAlgebra env(lie, opt.size_limit);
  const AssociativityReport a = check_associativity(env, opt.samples, opt.seed);
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["lie_dim"] = lie.dim();
  j["dim"] = env.dim();
  j["associativity"] = {{"exhaustive", a.exhaustive},
                        {"triples_checked", a.triples_checked},
                        {"unit_ok", a.unit_ok},
                        {"passed", a.passed()}};
  o.text << "u(L) for " << opt.file << ": dimension " << env.dim() << " = " << lie.characteristic() << "^"
         << lie.dim() << "\n";
  o.text << "associativity: " << a.triples_checked << (a.exhaustive ? " monomial triples" : " sampled triples")
         << ", " << (a.passed() ? "ok" : "FAILED") << "\n";
  if (opt.table) {
    Json table = Json::array();
    for (std::size_t x = 0; x < env.dim(); ++x) {
      for (std::size_t y = 0; y < env.dim(); ++y) {
        const EnvElement prod = env.multiply(env.basis_monomial(x), env.basis_monomial(y));
        Json terms = Json::object();
        for (const auto& [m, c] : prod.terms()) {
          terms[env.monomial_name(m)] = c;
        }
        table.push_back({{"left", env.monomial_name(x)}, {"right", env.monomial_name(y)}, {"product", terms}});
        o.text << env.monomial_name(x) << " * " << env.monomial_name(y) << " = " << env.to_string(prod) << "\n";
      }
    }
    j["table"] = table;
  }
  o.pass = a.passed();
}

void cmd_primitives(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const EnvelopingAlgebra env(lie, opt.size_limit);
  const RestrictedPrimitiveSpace prim = restricted_primitives(env);
  const EtaReport eta = unit_eta_check(env, prim);
  const bool axioms_ok = check_axioms(lie, opt.samples, opt.seed).passed();
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["lie_dim"] = lie.dim();
  j["axioms_ok"] = axioms_ok;
  j["env_dim"] = env.dim();
  j["primitive_dim"] = prim.dim();
  j["closed"] = prim.closed();
  Json basis = Json::array();
  o.text << "P(u(L)) for " << opt.file << ": dimension " << prim.dim() << " inside u(L) of dimension " << env.dim()
         << "\n";
  for (std::size_t k = 0; k < prim.dim(); ++k) {
    basis.push_back(env.to_string(prim.basis()[k]));
    o.text << "  P" << k << " = " << env.to_string(prim.basis()[k]) << "\n";
  }
  j["basis"] = basis;
  Json brackets = Json::array();
  for (const auto& [a, b] : eta.bracket_mismatches) {
    brackets.push_back({lie.names()[a], lie.names()[b]});
  }
  Json pmaps = Json::array();
  for (const auto i : eta.pmap_mismatches) {
    pmaps.push_back(lie.names()[i]);
  }
  j["eta"] = {{"images_primitive", eta.images_primitive}, {"image_rank", eta.image_rank},
              {"injective", eta.injective()},             {"dimension_match", eta.dimension_match()},
              {"bracket_mismatches", brackets},           {"pmap_mismatches", pmaps},
              {"passed", eta.passed()}};
  o.text << "closed under commutator and p-th power: " << (prim.closed() ? "yes" : "NO") << "\n";
  o.text << "L -> P(u(L)): images primitive " << (eta.images_primitive ? "yes" : "NO") << ", injective "
         << (eta.injective() ? "yes" : "NO") << ", dimensions equal " << (eta.dimension_match() ? "yes" : "NO")
         << ", brackets match " << (eta.brackets_match() ? "yes" : "NO") << ", p-maps match "
         << (eta.pmaps_match() ? "yes" : "NO") << "\n";
  if (!axioms_ok) {
    o.text << "input fails the restricted Lie axioms (see check); u(L) above is not associative\n";
  }
  o.pass = axioms_ok && eta.passed() && prim.closed();
  o.text << (o.pass ? "L is isomorphic to P(u(L))" : "L -> P(u(L)) is not an isomorphism") << "\n";
}

void cmd_free(const Options& opt, Outcome& o) {
  const std::size_t top = opt.max_degree.value_or(4);
  const auto layers = free_restricted_basis(opt.p, opt.rank, top);
  Json& j = o.report;
  j["p"] = opt.p;
  j["rank"] = opt.rank;
  j["max_degree"] = top;
  std::vector<std::size_t> dims;
  std::vector<std::uint64_t> witt;
  for (const auto& layer : layers) {
    dims.push_back(layer.dim());
    witt.push_back(witt_oracle_dimension(opt.p, opt.rank, layer.degree()));
  }
  j["dims"] = dims;
  o.text << "free restricted Lie algebra: p=" << opt.p << ", rank=" << opt.rank << ", N=" << top << "\n";
  o.text << (opt.oracle ? "degree  dim  witt-oracle (cross-check)\n" : "degree  dim\n");
  for (std::size_t n = 0; n < dims.size(); ++n) {
    char line[64];
    std::snprintf(line, sizeof line, "%-6zu  %-3zu", n + 1, dims[n]);
    o.text << line;
    if (opt.oracle) {
      o.text << "  " << witt[n] << (witt[n] == dims[n] ? "" : "  MISMATCH");
    }
    o.text << "\n";
  }
  if (opt.oracle) {
    j["witt_oracle_dims"] = witt;
    const bool agree = std::equal(dims.begin(), dims.end(), witt.begin());
    j["oracle_agrees"] = agree;
    o.pass = agree;
  }
}

void cmd_roundtrip(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const std::size_t top = opt.max_degree.value_or(default_truncation(lie));
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["max_degree"] = top;
  const RoundtripReport r = roundtrip_check(lie, top, opt.size_limit, opt.seed);
  const EnvelopingAlgebra env(lie, opt.size_limit);
  const PrimitiveComparisonReport c =
      compare_with_primitives(env, restricted_primitives(env), lambda(mu0_from_restricted(lie, top, opt.size_limit)));
  auto pairs = [&](const std::vector<std::pair<std::size_t, std::size_t>>& v) {
    Json arr = Json::array();
    for (const auto& [a, b] : v) {
      arr.push_back({lie.names()[a], lie.names()[b]});
    }
    return arr;
  };
  auto singles = [&](const std::vector<std::size_t>& v) {
    Json arr = Json::array();
    for (const auto i : v) {
      arr.push_back(lie.names()[i]);
    }
    return arr;
  };
  j["em_witness"] = r.em_witness;
  j["bracket_mismatches"] = pairs(r.bracket_mismatches);
  j["pmap_mismatches"] = singles(r.pmap_mismatches);
  j["axioms_ok"] = r.axioms_ok;
  j["primitive_comparison"] = {{"bracket_mismatches", pairs(c.bracket_mismatches)},
                               {"pmap_mismatches", singles(c.pmap_mismatches)},
                               {"passed", c.passed()}};
  o.text << "round trip for " << opt.file << " at truncation N=" << top << "\n";
  o.text << "EM laws at N: " << (r.em_witness ? "ok" : "FAILED") << "\n";
  o.text << "brackets recovered: " << (r.bracket_mismatches.empty() ? "all" : "MISMATCH") << "\n";
  for (const auto& [a, b] : r.bracket_mismatches) {
    o.text << "  [" << lie.names()[a] << ", " << lie.names()[b] << "]\n";
  }
  o.text << "p-map recovered: " << (r.pmap_mismatches.empty() ? "all" : "MISMATCH") << "\n";
  for (const auto i : r.pmap_mismatches) {
    o.text << "  " << lie.names()[i] << "^[p]\n";
  }
  o.text << "axioms of the recovered algebra: " << (r.axioms_ok ? "ok" : "FAILED") << "\n";
  o.text << "agrees with commutator and p-th power on P(u(L)): " << (c.passed() ? "yes" : "NO") << "\n";
  o.pass = r.passed() && c.passed();
}

void cmd_em_check(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const std::size_t top = opt.max_degree.value_or(std::min<std::size_t>(2 * lie.characteristic(), 6));
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["max_degree"] = top;
  j["seed"] = opt.seed;
  j["instances_per_pattern"] = opt.instances;
  const EMObject a = mu0_from_restricted(lie, top, opt.size_limit);
  const EmLawsReport r = em_laws_check(a, top, opt.seed, opt.instances);
  j["unit_ok"] = r.unit_ok;
  Json patterns = Json::array();
  for (const auto& p : r.patterns) {
    patterns.push_back({{"pattern", p.pattern},
                        {"degree", p.degree},
                        {"combinations", p.combinations},
                        {"instances", p.instances},
                        {"exhaustive", p.exhaustive},
                        {"failures", p.failures}});
  }
  j["patterns"] = patterns;
  j["instances_checked"] = r.instances_checked();
  Json mismatches = Json::array();
  auto value = [&](const std::optional<LieElement>& v) { return v ? element_json(lie, *v) : Json(nullptr); };
  for (const auto& m : r.mismatches) {
    mismatches.push_back({{"pattern", m.pattern},
                          {"leaves", m.leaves},
                          {"via_inner", value(m.via_inner)},
                          {"via_flatten", value(m.via_flatten)}});
  }
  j["mismatches"] = mismatches;
  o.text << "EM laws for mu0 of " << opt.file << " up to degree " << top << "\n";
  o.text << "unit law: " << (r.unit_ok ? "ok" : "FAILED") << "\n";
  for (std::size_t d = 1; d <= top; ++d) {
    std::size_t count = 0;
    std::size_t instances = 0;
    std::size_t failures = 0;
    for (const auto& p : r.patterns) {
      if (p.degree == d) {
        ++count;
        instances += p.instances;
        failures += p.failures;
      }
    }
    o.text << "degree " << d << ": " << count << " patterns, " << instances << " nested inputs, " << failures
           << " failures\n";
  }
  for (const auto& m : r.mismatches) {
    o.text << "  " << m.pattern << " with leaves " << m.leaves << ": "
           << (m.via_inner ? element_text(lie.names(), *m.via_inner) : "undefined") << " vs "
           << (m.via_flatten ? element_text(lie.names(), *m.via_flatten) : "undefined") << "\n";
  }
  o.pass = r.passed();
  o.text << (o.pass ? "associativity and unit laws hold" : "EM laws violated") << "\n";
}

void cmd_sandwich(const Options& opt, Outcome& o) {
  const RestrictedLieAlgebra lie = parse_algebra_file(opt.file);
  const std::size_t top = opt.max_degree.value_or(default_truncation(lie));
  Json& j = o.report;
  j["p"] = lie.characteristic();
  j["max_degree"] = top;
  const M2Object v2 = certify_m2(mu0_from_restricted(lie, top, opt.size_limit), opt.seed);
  const SandwichReport r = sandwich_certificate(v2, top, opt.size_limit);
  j["full_dim"] = r.full_dim;
  Json rows = Json::array();
  o.text << "sandwich certificate for " << opt.file << " up to degree " << top << "\n";
  o.text << "d  dim T<=d  rank phi  span quotient  PBW filtration\n";
  for (const auto& row : r.rows) {
    rows.push_back({{"degree", row.degree},
                    {"tensor_dim", row.tensor_dim},
                    {"rank_phi", row.rank_phi},
                    {"span_quotient_dim", row.span_quotient_dim},
                    {"pbw_filtration_dim", row.pbw_filtration_dim},
                    {"relations_considered", row.relations_considered},
                    {"agree", row.agree()}});
    char line[96];
    std::snprintf(line, sizeof line, "%-2zu %-9zu %-9zu %-14zu %zu%s\n", row.degree, row.tensor_dim, row.rank_phi,
                  row.span_quotient_dim, row.pbw_filtration_dim, row.agree() ? "" : "  DISAGREE");
    o.text << line;
  }
  j["rows"] = rows;
  j["certified_up_to"] = r.certified_up_to;
  j["sound"] = r.sound();
  j["soundness_checked"] = r.soundness_checked;
  j["soundness_failures"] = r.soundness_failures;
  j["bounds_hold"] = r.bounds_hold();
  j["reaches_full_dim_at"] = r.reaches_full_dim_at ? Json(*r.reaches_full_dim_at) : Json(nullptr);
  o.text << "phi(z) = phi(mu0 z) on " << r.soundness_checked << " layer elements: " << (r.sound() ? "ok" : "FAILED")
         << "\n";
  o.text << "certified up to degree " << r.certified_up_to << "; dim u(L) = " << r.full_dim;
  if (r.reaches_full_dim_at) {
    o.text << " reached at degree " << *r.reaches_full_dim_at << "\n";
  } else {
    o.text << " not reached by degree " << top << "\n";
  }
  o.pass = r.passed();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Restricted Lie algebras over F_p: enveloping algebras, primitives and monadic checks", "rlie"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "Seed for every sampled check");
  app.add_option("--size-limit", opt.size_limit, "Largest allowed p^n for u(L)")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Check the restricted Lie algebra axioms");
  check->add_option("file", opt.file, "Algebra file")->required();
  check->add_option("--samples", opt.samples, "Random samples for the p-map rules");

  auto* env = app.add_subcommand("env", "Restricted enveloping algebra u(L)");
  env->add_option("file", opt.file, "Algebra file")->required();
  env->add_flag("--table", opt.table, "Print the full multiplication table");
  env->add_option("--samples", opt.samples, "Random triples when u(L) is too large for exhaustive associativity");

  auto* prim = app.add_subcommand("primitives", "Primitive elements of u(L) and the map L -> P(u(L))");
  prim->add_option("file", opt.file, "Algebra file")->required();
  prim->add_option("--samples", opt.samples, "Random samples for the p-map rules");

  auto* free = app.add_subcommand("free", "Layer dimensions of the free restricted Lie algebra");
  free->add_option("--p", opt.p, "Prime")->required();
  free->add_option("--rank", opt.rank, "Number of generators")->required()->check(CLI::PositiveNumber);
  free->add_option("--max-degree", opt.max_degree, "Largest degree (default 4)")->check(CLI::PositiveNumber);
  free->add_flag("--oracle", opt.oracle, "Compare with the Witt-sum count");

  auto* roundtrip = app.add_subcommand("roundtrip", "Recover L from its EM structure");
  roundtrip->add_option("file", opt.file, "Algebra file")->required();
  roundtrip->add_option("--max-degree", opt.max_degree, "Truncation degree (default max(4, p+1))");

  auto* em = app.add_subcommand("em-check", "Eilenberg-Moore laws for mu0 of L");
  em->add_option("file", opt.file, "Algebra file")->required();
  em->add_option("--max-degree", opt.max_degree, "Truncation degree (default min(2p, 6))")
      ->check(CLI::PositiveNumber);
  em->add_option("--instances", opt.instances, "Leaf choices per pattern");

  auto* sandwich = app.add_subcommand("sandwich", "Quotient / PBW sandwich certificate");
  sandwich->add_option("file", opt.file, "Algebra file")->required();
  sandwich->add_option("--max-degree", opt.max_degree, "Truncation degree (default max(4, p+1))");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome o;
  o.report = header(command, opt);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "check") {
      cmd_check(opt, o);
    } else if (command == "env") {
      cmd_env(opt, o);
    } else if (command == "primitives") {
      cmd_primitives(opt, o);
    } else if (command == "free") {
      cmd_free(opt, o);
    } else if (command == "roundtrip") {
      cmd_roundtrip(opt, o);
    } else if (command == "em-check") {
      cmd_em_check(opt, o);
    } else {
      cmd_sandwich(opt, o);
    }
  } catch (const EtaFailure& e) {
    o.report["error"] = e.what();
    o.text << "error: " << e.what() << "\n";
    o.pass = false;
  } catch (const EmLawFailure& e) {
    o.report["error"] = e.what();
    o.text << "error: " << e.what() << "\n";
    o.pass = false;
  } catch (const Error& e) {
    err << "rlie " << command << ": " << e.what() << "\n";
    return 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.report["status"] = o.pass ? "pass" : "fail";
  if (opt.format == "json") {
    out << o.report.dump(2) << "\n";
  } else {
    char line[64];
    std::snprintf(line, sizeof line, "status: %s (%.3f s)\n", o.pass ? "pass" : "fail", seconds);
    out << o.text.str() << line;
  }
  return o.pass ? 0 : 1;
}

}  // namespace rlie
