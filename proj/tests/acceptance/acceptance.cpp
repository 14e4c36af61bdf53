// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "rlie/algebra_io.hpp"
#include "rlie/enveloping.hpp"
#include "rlie/free_restricted.hpp"
#include "rlie/monadic.hpp"
#include "rlie/restricted_lie.hpp"

using namespace rlie;

namespace {

const std::vector<std::string> kCorpus{"abelian_p2",    "abelian_p3",    "abelian_p5", "abelian_p2_xx_eq_x",
                                       "heisenberg_p2", "heisenberg_p3", "sl2_p5"};

std::string path_of(const std::string& name) { return std::string(RLIE_ALGEBRA_DIR) + "/" + name + ".json"; }

RestrictedLieAlgebra load(const std::string& name) { return parse_algebra_file(path_of(name)); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::vector<std::string>& args) {
  std::string cmd = std::string("'") + RLIE_CLI_PATH + "'";
  for (const auto& a : args) {
    cmd += " '" + a + "'";
  }
  cmd += " 2>/dev/null";
  Shell r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    r.out.append(buf, n);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t tensor_dim(std::size_t rank, std::size_t top) {
  std::size_t total = 0;
  for (std::size_t d = 0, power = 1; d <= top; ++d, power *= rank) {
    total += power;
  }
  return total;
}

Outcome eta_suite() {
  Outcome o;
  for (const auto& name : kCorpus) {
    const auto r = unit_eta_check(load(name));
    o.require(r.injective(), name + " injectivity");
    o.require(r.dimension_match(), name + " dim P(u(L)) = dim L");
    o.require(r.brackets_match(), name + " bracket match");
    o.require(r.pmaps_match(), name + " p-map match");
    o.require(r.images_primitive, name + " images primitive");
  }
  o.notes.push_back(std::to_string(kCorpus.size()) + " algebras");
  return o;
}

Outcome roundtrip_suite() {
  Outcome o;
  for (const auto& name : kCorpus) {
    const auto lie = load(name);
    const std::size_t top = std::max<std::size_t>(4, lie.characteristic() + 1);
    const auto r = roundtrip_check(lie, top);
    o.require(r.passed(), name + " round trip at N=" + std::to_string(top));
    const auto back = lambda(certify_m2(mu0_from_restricted(lie, top)));
    o.require(back == lie, name + " exact structure constants and p-map table");
  }
  return o;
}

Outcome free_suite() {
  Outcome o;
  for (const std::uint64_t p : {2U, 3U}) {
    for (std::size_t r = 1; r <= 2; ++r) {
      const auto layers = free_restricted_basis(p, r, 6);
      std::string dims;
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto oracle = witt_oracle_dimension(p, r, n);
        o.require(layers[n - 1].dim() == oracle, "p=" + std::to_string(p) + " r=" + std::to_string(r) +
                                                     " n=" + std::to_string(n));
        dims += (n > 1 ? "," : "") + std::to_string(layers[n - 1].dim());
      }
      o.notes.push_back("p=" + std::to_string(p) + " r=" + std::to_string(r) + ": " + dims);
    }
  }
  const auto a = free_restricted_basis(2, 1, 2);
  o.require(a[0].dim() == 1 && a[1].dim() == 1, "anchor (p=2, r=1) -> 1,1");
  const auto b = free_restricted_basis(2, 2, 2);
  o.require(b[0].dim() == 2 && b[1].dim() == 3, "anchor (p=2, r=2) -> 2,3");
  return o;
}

Outcome em_suite() {
  Outcome o;
  std::size_t instances = 0;
  for (const auto& name : kCorpus) {
    const auto lie = load(name);
    const std::size_t top = std::min<std::size_t>(2 * lie.characteristic(), 6);
    const auto r = em_laws_check(mu0_from_restricted(lie, top), top, 0);
    o.require(r.passed(), name + " EM laws to degree " + std::to_string(top));
    // Patterns whose leaf layers are all nonempty must be exercised; the rest are vacuous.
    for (std::size_t d = 1; d <= top; ++d) {
      const bool enumerated = std::any_of(r.patterns.begin(), r.patterns.end(),
                                          [d](const EmPatternRecord& p) { return p.degree == d; });
      o.require(enumerated, name + " patterns in degree " + std::to_string(d));
    }
    for (const auto& p : r.patterns) {
      o.require(p.combinations == 0 || p.instances > 0, name + " pattern " + p.pattern + " exercised");
    }
    instances += r.instances_checked();
  }
  o.notes.push_back(std::to_string(instances) + " nested inputs");
  return o;
}

Outcome sandwich_suite() {
  Outcome o;
  for (const auto& name : kCorpus) {
    const auto lie = load(name);
    const std::size_t p = lie.characteristic();
    if (p > 3) {
      continue;
    }
    const auto r = sandwich_certificate(certify_m2(mu0_from_restricted(lie, 4)), 4);
    std::string seq;
    for (const auto& row : r.rows) {
      o.require(row.agree(), name + " rank = span quotient = PBW at d=" + std::to_string(row.degree));
      seq += (seq.empty() ? "" : ",") + std::to_string(row.rank_phi);
    }
    o.require(r.sound(), name + " soundness");
    const bool must_reach = r.full_dim <= tensor_dim(lie.dim(), 4);
    if (must_reach) {
      o.require(r.reaches_full_dim_at.has_value(),
                name + " reaches p^n = " + std::to_string(r.full_dim) + " by d=4 (got " + seq + ")");
    }
    o.notes.push_back(name + ": " + seq + " of " + std::to_string(r.full_dim));
  }
  return o;
}

Outcome jacobson_suite() {
  Outcome o;
  for (const auto& name : kCorpus) {
    const auto lie = load(name);
    const EnvelopingAlgebra env(lie);
    std::mt19937_64 rng(2024);
    std::size_t bad_sum = 0;
    std::size_t bad_frobenius = 0;
    for (int k = 0; k < 100; ++k) {
      const auto x = random_element(lie, rng);
      const auto y = random_element(lie, rng);
      bad_sum += lie.pmap(x + y) == lie.pmap(x) + lie.pmap(y) + lie.s_term(x, y) ? 0 : 1;
      bad_frobenius += env.embed(lie.pmap(x)) == env.power(env.embed(x), lie.characteristic()) ? 0 : 1;
    }
    o.require(bad_sum == 0, name + " sum rule (" + std::to_string(bad_sum) + " of 100)");
    o.require(bad_frobenius == 0, name + " image(x^[p]) = image(x)^p (" + std::to_string(bad_frobenius) + " of 100)");
  }
  return o;
}

Outcome negative_suite() {
  Outcome o;
  const auto jac = check_axioms(load("sl2_p5_bad_jacobi"), 100, 0);
  o.require(!jac.jacobi.empty(), "mutated bracket rejected");
  for (const auto& f : jac.jacobi) {
    o.require(!f.residual.is_zero(), "Jacobi residual nonzero");
    o.notes.push_back("Jacobi fails on triple (" + std::to_string(f.i) + "," + std::to_string(f.j) + "," +
                      std::to_string(f.k) + ")");
  }
  const auto pm = check_axioms(load("heisenberg_p2_bad_pmap"), 100, 0);
  o.require(!pm.restrictedness.empty(), "mutated p-map rejected");
  for (const auto& f : pm.restrictedness) {
    o.require(!f.residual.is_zero(), "restrictedness residual nonzero");
    o.notes.push_back("restrictedness fails at basis index " + std::to_string(f.index));
  }
  o.require(shell({"check", path_of("sl2_p5_bad_jacobi")}).code == 1, "CLI exit 1 on mutated bracket");
  o.require(shell({"check", path_of("heisenberg_p2_bad_pmap")}).code == 1, "CLI exit 1 on mutated p-map");
  return o;
}

Outcome determinism_suite() {
  Outcome o;
  std::vector<std::vector<std::string>> commands;
  for (const auto& name : kCorpus) {
    for (const char* cmd : {"check", "env", "primitives", "roundtrip", "em-check"}) {
      commands.push_back({cmd, path_of(name)});
    }
    if (load(name).characteristic() <= 3) {
      commands.push_back({"sandwich", path_of(name)});
    }
  }
  commands.push_back({"check", path_of("sl2_p5_bad_jacobi")});
  commands.push_back({"free", "--p", "3", "--rank", "2", "--max-degree", "6", "--oracle"});
  commands.push_back({"env", path_of("heisenberg_p2"), "--table"});
  for (auto args : commands) {
    args.insert(args.begin(), {"--format", "json", "--seed", "7"});
    const auto first = shell(args);
    const auto second = shell(args);
    std::string label = args[4] + (args.size() > 5 ? " " + args[5].substr(args[5].rfind('/') + 1) : "");
    o.require(!first.out.empty() && first.out == second.out && first.code == second.code, label + " byte-identical");
  }
  o.notes.push_back(std::to_string(commands.size()) + " commands");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "eta: L -> P(u(L)) is an isomorphism on the corpus", 30, eta_suite},
      {2, "Lambda of mu0 recovers every corpus algebra", 60, roundtrip_suite},
      {3, "free restricted layers match the Witt oracle", 60, free_suite},
      {4, "EM laws for mu0 up to degree min(2p, 6)", 60, em_suite},
      {5, "sandwich certificate for p = 2, 3", 60, sandwich_suite},
      {6, "Jacobson sum rule and Frobenius on 100 seeded pairs", 30, jacobson_suite},
      {7, "mutated tables are rejected with residuals", 60, negative_suite},
      {8, "JSON output is byte-identical across runs", 120, determinism_suite},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.notes.push_back("over the time budget");
    }
    all = all && o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << " (" << timing
              << ")\n";
    for (const auto& note : o.notes) {
      std::cout << "    " << note << "\n";
    }
  }
  return all ? 0 : 1;
}
