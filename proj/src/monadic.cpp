#include "rlie/monadic.hpp"

#include <limits>
#include <random>
#include <string>

namespace rlie {

std::shared_ptr<const FreeLayers> shared_free_layers(std::uint64_t p, std::size_t rank, std::size_t max_degree) {
  return std::make_shared<const FreeLayers>(free_restricted_basis(p, rank, max_degree));
}

// ---------------------------------------------------------------------------
// EMObject

EMObject::EMObject(std::vector<std::string> names, std::shared_ptr<const FreeLayers> layers, std::vector<FpMatrix> mu0)
    : names_(std::move(names)), layers_(std::move(layers)), mu0_(std::move(mu0)) {
  if (!layers_ || layers_->empty()) {
    throw DimensionMismatch("EM object needs at least the degree-1 free layer");
  }
  if (ctx().rank != names_.size()) {
    throw DimensionMismatch("free layers on " + std::to_string(ctx().rank) + " generators for a space of dimension " +
                            std::to_string(names_.size()));
  }
  if (mu0_.size() != layers_->size()) {
    throw DimensionMismatch(std::to_string(mu0_.size()) + " structure matrices for " +
                            std::to_string(layers_->size()) + " free layers");
  }
  for (std::size_t d = 1; d <= mu0_.size(); ++d) {
    const FpMatrix& m = mu0_[d - 1];
    if (!(m.field() == field()) || m.rows() != dim() || m.cols() != layer(d).dim()) {
      throw DimensionMismatch("mu0 in degree " + std::to_string(d) + " is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " + std::to_string(dim()) + "x" +
                              std::to_string(layer(d).dim()));
    }
  }
}

const FreeRestrictedLayer& EMObject::layer(std::size_t degree) const {
  if (degree == 0 || degree > layers_->size()) {
    throw DegreeOutOfRange("no free layer in degree " + std::to_string(degree));
  }
  return (*layers_)[degree - 1];
}

const FpMatrix& EMObject::mu0(std::size_t degree) const {
  if (degree == 0 || degree > mu0_.size()) {
    throw DegreeOutOfRange("no mu0 component in degree " + std::to_string(degree));
  }
  return mu0_[degree - 1];
}

std::optional<LieElement> EMObject::try_apply(const TensorElement& z) const {
  if (!(z.context() == ctx())) {
    return std::nullopt;
  }
  std::vector<TensorElement> parts(max_degree() + 1, TensorElement(ctx()));
  for (const auto& [w, c] : z.terms()) {
    if (w.empty() || w.size() > max_degree()) {
      return std::nullopt;
    }
    parts[w.size()].add_term(w, c);
  }
  LieElement out(field(), dim());
  for (std::size_t d = 1; d <= max_degree(); ++d) {
    if (parts[d].is_zero()) {
      continue;
    }
    const auto coords = layer(d).coordinates(parts[d]);
    if (!coords) {
      return std::nullopt;
    }
    out += mu0(d) * *coords;
  }
  return out;
}

LieElement EMObject::apply(const TensorElement& z) const {
  auto out = try_apply(z);
  if (!out) {
    throw DimensionMismatch("element is not a primitive of T(V0) within the truncation");
  }
  return *out;
}

bool operator==(const EMObject& a, const EMObject& b) {
  return a.names_ == b.names_ && a.ctx() == b.ctx() && a.mu0_ == b.mu0_;
}

// ---------------------------------------------------------------------------
// mu0 from a restricted Lie algebra

std::vector<std::vector<EnvElement>> word_images(const EnvelopingAlgebra& env, std::size_t max_degree) {
  const std::size_t r = env.lie().dim();
  std::vector<std::vector<EnvElement>> images;
  images.push_back({env.one()});
  for (std::size_t d = 1; d <= max_degree; ++d) {
    const std::size_t tail = word_count(r, d - 1);
    const std::size_t count = word_count(r, d);
    std::vector<EnvElement> level(count, env.zero());
    const auto& previous = images.back();
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
      const auto i = static_cast<std::size_t>(idx);
      level[i] = env.left_mul_generator(i / tail, previous[i % tail]);
    }
    images.push_back(std::move(level));
  }
  return images;
}

namespace {

EnvElement image_of(const EnvelopingAlgebra& env, const std::vector<std::vector<EnvElement>>& images,
                    const TensorElement& z) {
  EnvElement u = env.zero();
  for (const auto& [w, c] : z.terms()) {
    u.axpy(c, images.at(w.size())[word_index(w, env.lie().dim())]);
  }
  return u;
}

std::vector<FpVector> generator_family(const EnvelopingAlgebra& env) {
  std::vector<FpVector> out;
  for (std::size_t i = 0; i < env.lie().dim(); ++i) {
    out.push_back(env.generator(i).coords());
  }
  return out;
}

std::string eta_summary(const EtaReport& r) {
  return "e_i -> e_i is not an isomorphism onto P(u(L)): dim L = " + std::to_string(r.lie_dim) +
         ", dim P(u(L)) = " + std::to_string(r.primitive_dim) + ", image rank = " + std::to_string(r.image_rank);
}

}  // namespace

EMObject mu0_from_restricted(const EnvelopingAlgebra& env, std::shared_ptr<const FreeLayers> layers) {
  const RestrictedLieAlgebra& lie = env.lie();
  if (!layers || layers->empty() || layers->front().context().rank != lie.dim() ||
      !(layers->front().context().field == lie.field())) {
    throw DimensionMismatch("free layers do not match the Lie algebra");
  }
  const EtaReport eta = unit_eta_check(env, restricted_primitives(env));
  if (!eta.passed()) {
    throw EtaFailure(eta_summary(eta));
  }
  const std::size_t top = layers->size();
  const auto images = word_images(env, top);
  const SpanSolver eta_inverse(env.field(), env.dim(), generator_family(env));
  std::vector<FpMatrix> mu0;
  for (std::size_t d = 1; d <= top; ++d) {
    const FreeRestrictedLayer& layer = (*layers)[d - 1];
    FpMatrix m(lie.field(), lie.dim(), layer.dim());
    for (std::size_t k = 0; k < layer.dim(); ++k) {
      const auto coords = eta_inverse.coordinates(image_of(env, images, layer.basis()[k]).coords());
      if (!coords) {
        throw EtaFailure("image of free-layer element " + std::to_string(d) + "." + std::to_string(k) +
                         " in u(L) is not in the image of L");
      }
      for (std::size_t i = 0; i < lie.dim(); ++i) {
        m.set_residue(i, k, (*coords)[i]);
      }
    }
    mu0.push_back(std::move(m));
  }
  return EMObject(lie.names(), std::move(layers), std::move(mu0));
}

EMObject mu0_from_restricted(const RestrictedLieAlgebra& lie, std::size_t max_degree, std::size_t size_limit) {
  const EnvelopingAlgebra env(lie, size_limit);
  return mu0_from_restricted(env, shared_free_layers(lie.characteristic(), lie.dim(), max_degree));
}

// ---------------------------------------------------------------------------
// Lambda

RestrictedLieAlgebra lambda(const EMObject& a) {
  const Residue p = a.characteristic();
  if (a.max_degree() < p) {
    throw TruncationTooSmall("Lambda needs truncation N >= p = " + std::to_string(p) + ", got N = " +
                             std::to_string(a.max_degree()));
  }
  const TensorContext& ctx = a.ctx();
  RestrictedLieAlgebra::BracketTable table;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      const TensorElement c =
          commutator(TensorElement::generator(ctx, i), TensorElement::generator(ctx, j));
      table.emplace(std::pair{i, j}, a.apply(c));
    }
  }
  std::vector<LieElement> pmaps;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    pmaps.push_back(a.apply(TensorElement::monomial(ctx, Word(p, static_cast<Letter>(i)))));
  }
  return RestrictedLieAlgebra(a.field(), a.names(), table, std::move(pmaps));
}

RestrictedLieAlgebra lambda(const M2Object& v2) {
  if (!v2.idempotency_witness) {
    throw EmLawFailure("input does not satisfy the Eilenberg-Moore laws at its truncation");
  }
  return lambda(v2.underlying);
}

// ---------------------------------------------------------------------------
// EM laws

namespace {

struct PatternNode {
  enum class Kind { Leaf, Bracket, Power };
  Kind kind;
  std::size_t degree;
  std::size_t left = 0;
  std::size_t right = 0;
  std::string text;
  std::vector<std::size_t> leaf_degrees;
};

// Every bracket/power tree over free-layer leaves with total degree <= N.
// [A, A] and [B, A] duplicates of [A, B] are skipped.
std::vector<PatternNode> enumerate_patterns(std::size_t max_degree, std::size_t p) {
  std::vector<PatternNode> nodes;
  std::vector<std::vector<std::size_t>> by_degree(max_degree + 1);
  for (std::size_t d = 1; d <= max_degree; ++d) {
    by_degree[d].push_back(nodes.size());
    nodes.push_back({PatternNode::Kind::Leaf, d, 0, 0, "L" + std::to_string(d), {d}});
    if (d % p == 0) {
      for (const std::size_t a : by_degree[d / p]) {
        by_degree[d].push_back(nodes.size());
        nodes.push_back({PatternNode::Kind::Power, d, a, 0, "P(" + nodes[a].text + ")", nodes[a].leaf_degrees});
      }
    }
    for (std::size_t da = 1; 2 * da <= d; ++da) {
      const std::size_t db = d - da;
      for (const std::size_t a : by_degree[da]) {
        for (const std::size_t b : by_degree[db]) {
          if (da == db && a >= b) {
            continue;
          }
          std::vector<std::size_t> leaves = nodes[a].leaf_degrees;
          leaves.insert(leaves.end(), nodes[b].leaf_degrees.begin(), nodes[b].leaf_degrees.end());
          by_degree[d].push_back(nodes.size());
          nodes.push_back({PatternNode::Kind::Bracket, d, a, b, "[" + nodes[a].text + "," + nodes[b].text + "]",
                           std::move(leaves)});
        }
      }
    }
  }
  return nodes;
}

TensorElement evaluate(const std::vector<PatternNode>& nodes, std::size_t root, const std::vector<TensorElement>& leaves,
                       std::size_t& next, std::size_t p) {
  const PatternNode& node = nodes[root];
  switch (node.kind) {
    case PatternNode::Kind::Leaf:
      return leaves[next++];
    case PatternNode::Kind::Power:
      return tensor_power(evaluate(nodes, node.left, leaves, next, p), p);
    case PatternNode::Kind::Bracket: {
      const TensorElement x = evaluate(nodes, node.left, leaves, next, p);
      const TensorElement y = evaluate(nodes, node.right, leaves, next, p);
      return commutator(x, y);
    }
  }
  return TensorElement(leaves.front().context());
}

TensorElement degree_one(const TensorContext& ctx, const LieElement& v) {
  TensorElement out(ctx);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.add_term(Word{static_cast<Letter>(i)}, v[i]);
  }
  return out;
}

struct EmJob {
  std::size_t pattern;
  std::vector<std::size_t> choice;  // basis index per leaf
  std::optional<LieElement> via_inner;
  std::optional<LieElement> via_flatten;
};

}  // namespace

std::size_t EmLawsReport::instances_checked() const {
  std::size_t n = 0;
  for (const auto& p : patterns) {
    n += p.instances;
  }
  return n;
}

EmLawsReport em_laws_check(const EMObject& a, std::size_t max_degree, std::uint64_t seed,
                           std::size_t instances_per_pattern) {
  EmLawsReport report;
  report.max_degree = std::min(max_degree, a.max_degree());
  report.seed = seed;
  report.instances_per_pattern = instances_per_pattern;
  const TensorContext& ctx = a.ctx();
  const std::size_t p = a.characteristic();

  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto image = a.try_apply(TensorElement::generator(ctx, i));
    if (!image || !(*image == LieElement::unit(a.field(), a.dim(), i))) {
      report.unit_ok = false;
      report.unit_failures.push_back(i);
    }
  }

  const auto nodes = enumerate_patterns(report.max_degree, p);
  std::mt19937_64 rng(seed);
  std::vector<EmJob> jobs;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto& leaf_degrees = nodes[n].leaf_degrees;
    EmPatternRecord record;
    record.pattern = nodes[n].text;
    record.degree = nodes[n].degree;
    std::size_t combos = 1;
    for (const std::size_t d : leaf_degrees) {
      const std::size_t size = a.layer(d).dim();
      combos = (size != 0 && combos > std::numeric_limits<std::size_t>::max() / size) ? std::numeric_limits<std::size_t>::max()
                                                                                       : combos * size;
    }
    record.combinations = combos;
    record.exhaustive = combos <= instances_per_pattern;
    const std::size_t count = record.exhaustive ? combos : instances_per_pattern;
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<std::size_t> choice(leaf_degrees.size());
      std::size_t rest = s;
      for (std::size_t l = leaf_degrees.size(); l-- > 0;) {
        const std::size_t size = a.layer(leaf_degrees[l]).dim();
        if (record.exhaustive) {
          choice[l] = rest % size;
          rest /= size;
        } else {
          choice[l] = static_cast<std::size_t>(rng() % size);
        }
      }
      jobs.push_back({n, std::move(choice), std::nullopt, std::nullopt});
    }
    record.instances = count;
    report.patterns.push_back(std::move(record));
  }

  const auto job_count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < job_count; ++j) {
    EmJob& job = jobs[static_cast<std::size_t>(j)];
    const auto& leaf_degrees = nodes[job.pattern].leaf_degrees;
    std::vector<TensorElement> inner;
    std::vector<TensorElement> flat;
    for (std::size_t l = 0; l < leaf_degrees.size(); ++l) {
      const std::size_t d = leaf_degrees[l];
      inner.push_back(degree_one(ctx, a.mu0(d).column(job.choice[l])));
      flat.push_back(a.layer(d).basis()[job.choice[l]]);
    }
    std::size_t next = 0;
    job.via_inner = a.try_apply(evaluate(nodes, job.pattern, inner, next, p));
    next = 0;
    job.via_flatten = a.try_apply(evaluate(nodes, job.pattern, flat, next, p));
  }

  for (auto& job : jobs) {
    if (job.via_inner && job.via_flatten && *job.via_inner == *job.via_flatten) {
      continue;
    }
    ++report.patterns[job.pattern].failures;
    std::string leaves;
    for (std::size_t l = 0; l < job.choice.size(); ++l) {
      leaves += (l ? " " : "") + std::to_string(nodes[job.pattern].leaf_degrees[l]) + "." +
                std::to_string(job.choice[l]);
    }
    report.mismatches.push_back({nodes[job.pattern].text, leaves, std::move(job.via_inner), std::move(job.via_flatten)});
  }
  return report;
}

M2Object certify_m2(EMObject a, std::uint64_t seed) {
  const bool ok = em_laws_check(a, a.max_degree(), seed).passed();
  return M2Object{std::move(a), ok};
}

// ---------------------------------------------------------------------------
// Round trip

RoundtripReport roundtrip_check(const RestrictedLieAlgebra& lie, std::size_t max_degree, std::size_t size_limit,
                                std::uint64_t seed) {
  RoundtripReport report;
  report.max_degree = max_degree;
  const M2Object v2 = certify_m2(mu0_from_restricted(lie, max_degree, size_limit), seed);
  report.em_witness = v2.idempotency_witness;
  const RestrictedLieAlgebra back = lambda(v2.underlying);
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    for (std::size_t j = i + 1; j < lie.dim(); ++j) {
      if (!(back.structure(i, j) == lie.structure(i, j))) {
        report.bracket_mismatches.emplace_back(i, j);
      }
    }
    if (!(back.pmap_row(i) == lie.pmap_row(i))) {
      report.pmap_mismatches.push_back(i);
    }
  }
  report.axioms_ok = check_axioms(back, 100, seed).passed();
  return report;
}

PrimitiveComparisonReport compare_with_primitives(const EnvelopingAlgebra& env,
                                                  const RestrictedPrimitiveSpace& primitives,
                                                  const RestrictedLieAlgebra& from_lambda) {
  PrimitiveComparisonReport report;
  const std::size_t n = from_lambda.dim();
  const std::size_t k = primitives.dim();
  const PrimeField& f = env.field();
  std::vector<FpVector> c;
  for (std::size_t i = 0; i < n; ++i) {
    auto coords = primitives.coordinates(env.generator(i));
    if (!coords) {
      throw EtaFailure("generator " + std::to_string(i) + " is not primitive in u(L)");
    }
    c.push_back(std::move(*coords));
  }
  auto to_primitive = [&](const LieElement& x) {
    FpVector out(f, k);
    for (std::size_t i = 0; i < n; ++i) {
      out.axpy(x[i], c[i]);
    }
    return out;
  };
  const auto& table = primitives.bracket_table();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      FpVector direct(f, k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          if (a != b) {
            direct.axpy(f.mul(c[i][a], c[j][b]), table[a][b]);
          }
        }
      }
      if (!(direct == to_primitive(from_lambda.structure(i, j)))) {
        report.bracket_mismatches.emplace_back(i, j);
      }
    }
  }
  const RestrictedLieAlgebra p_lie = primitives.as_lie_algebra();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p_lie.pmap(c[i]) == to_primitive(from_lambda.pmap_row(i)))) {
      report.pmap_mismatches.push_back(i);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sandwich certificate

namespace {

// Row echelon form grown one vector at a time.
class Echelon {
 public:
  Echelon(PrimeField field, std::size_t cols) : field_(field), cols_(cols), pivot_row_(cols, -1) {}

  [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

  bool insert(std::vector<Residue> v) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) {
        continue;
      }
      const std::ptrdiff_t r = pivot_row_[c];
      if (r < 0) {
        const Residue scale = field_.inv(v[c]);
        for (std::size_t k = c; k < cols_; ++k) {
          v[k] = field_.mul(v[k], scale);
        }
        pivot_row_[c] = static_cast<std::ptrdiff_t>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      const Residue factor = v[c];
      const auto& row = rows_[static_cast<std::size_t>(r)];
      for (std::size_t k = c; k < cols_; ++k) {
        if (row[k] != 0) {
          v[k] = field_.sub(v[k], field_.mul(factor, row[k]));
        }
      }
    }
    return false;
  }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::vector<std::ptrdiff_t> pivot_row_;
  std::vector<std::vector<Residue>> rows_;
};

}  // namespace

bool SandwichReport::bounds_hold() const noexcept {
  for (const auto& row : rows) {
    if (row.rank_phi > row.span_quotient_dim || row.rank_phi > row.pbw_filtration_dim) {
      return false;
    }
  }
  return true;
}

SandwichReport sandwich_certificate(const M2Object& v2, std::size_t max_degree, std::size_t size_limit) {
  const EMObject& a = v2.underlying;
  const std::size_t p = a.characteristic();
  if (max_degree < p) {
    throw TruncationTooSmall("sandwich certificate needs N >= p = " + std::to_string(p));
  }
  if (max_degree > a.max_degree()) {
    throw DegreeOutOfRange("sandwich degree " + std::to_string(max_degree) + " exceeds the EM truncation " +
                           std::to_string(a.max_degree()));
  }
  const EnvelopingAlgebra env(lambda(v2), size_limit);
  const PrimeField& f = a.field();
  const std::size_t r = a.dim();
  const std::size_t top = max_degree;

  SandwichReport report;
  report.max_degree = top;
  report.full_dim = env.dim();

  const auto images = word_images(env, top);

  // phi(z) == phi(mu0 z) for every layer element used as a relation.
  for (std::size_t k = 2; k <= top; ++k) {
    for (std::size_t idx = 0; idx < a.layer(k).dim(); ++idx) {
      ++report.soundness_checked;
      if (!(image_of(env, images, a.layer(k).basis()[idx]) == env.embed(a.mu0(k).column(idx)))) {
        report.soundness_failures.push_back("degree " + std::to_string(k) + " element " + std::to_string(idx));
      }
    }
  }

  // Columns of T^{<=N}: longest words first, so relations lead with a z b.
  std::vector<std::size_t> offset(top + 2, 0);
  for (std::size_t d = 0; d <= top; ++d) {
    offset[d + 1] = offset[d] + word_count(r, d);
  }
  const std::size_t total = offset[top + 1];
  auto column = [&](const Word& w) { return total - 1 - (offset[w.size()] + word_index(w, r)); };

  Echelon phi_rank(f, env.dim());
  Echelon relations(f, total);
  const EnvElement unit = env.one();
  phi_rank.insert(std::vector<Residue>(unit.coords().entries().begin(), unit.coords().entries().end()));
  std::vector<std::vector<Word>> words;
  for (std::size_t d = 0; d <= top; ++d) {
    words.push_back(words_of_degree(r, d));
  }

  for (std::size_t d = 1; d <= top; ++d) {
    SandwichRow row;
    row.degree = d;
    row.tensor_dim = offset[d + 1];
    for (const auto& u : images[d]) {
      const auto e = u.coords().entries();
      phi_rank.insert(std::vector<Residue>(e.begin(), e.end()));
    }
    row.rank_phi = phi_rank.rank();
    const std::size_t kernel_dim = row.tensor_dim - row.rank_phi;
    bool saturated = report.sound() && relations.rank() == kernel_dim;
    for (std::size_t k = 2; k <= d && !saturated; ++k) {
      const FreeRestrictedLayer& layer = a.layer(k);
      for (std::size_t idx = 0; idx < layer.dim() && !saturated; ++idx) {
        const TensorElement& z = layer.basis()[idx];
        const FpVector mz = a.mu0(k).column(idx);
        for (std::size_t i = 0; i + k <= d && !saturated; ++i) {
          const std::size_t j = d - k - i;
          for (const Word& left : words[i]) {
            for (const Word& right : words[j]) {
              std::vector<Residue> v(total, 0);
              Word w = left;
              for (const auto& [zw, c] : z.terms()) {
                w.resize(left.size());
                w.insert(w.end(), zw.begin(), zw.end());
                w.insert(w.end(), right.begin(), right.end());
                const std::size_t col = column(w);
                v[col] = f.add(v[col], c);
              }
              for (std::size_t letter = 0; letter < r; ++letter) {
                if (mz[letter] == 0) {
                  continue;
                }
                w.resize(left.size());
                w.push_back(static_cast<Letter>(letter));
                w.insert(w.end(), right.begin(), right.end());
                const std::size_t col = column(w);
                v[col] = f.sub(v[col], mz[letter]);
              }
              ++row.relations_considered;
              relations.insert(std::move(v));
              // Every spanned relation lies in ker phi, so once the span fills it
              // the remaining relations cannot add rank.
              if (report.sound() && relations.rank() == kernel_dim) {
                saturated = true;
                break;
              }
            }
            if (saturated) {
              break;
            }
          }
        }
      }
    }
    row.span_quotient_dim = row.tensor_dim - relations.rank();
    row.pbw_filtration_dim = pbw_filtration_count(env, d);
    if (!report.reaches_full_dim_at && row.rank_phi == report.full_dim) {
      report.reaches_full_dim_at = d;
    }
    report.rows.push_back(row);
  }
  for (const auto& row : report.rows) {
    if (!row.agree()) {
      break;
    }
    report.certified_up_to = row.degree;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Morphisms and stationarity

TensorElement map_tensor(const TensorElement& z, const FpMatrix& f, const TensorContext& target) {
  if (f.cols() != z.context().rank || f.rows() != target.rank) {
    throw DimensionMismatch("linear map shape does not match the tensor algebras");
  }
  std::vector<TensorElement> letters;
  for (std::size_t i = 0; i < f.cols(); ++i) {
    letters.push_back(degree_one(target, f.column(i)));
  }
  TensorElement out(target);
  for (const auto& [w, c] : z.terms()) {
    TensorElement term = TensorElement::unit(target).scaled(c);
    for (const Letter l : w) {
      term = concat_mul(term, letters[l]);
    }
    out += term;
  }
  return out;
}

EmMorphismReport em_morphism_check(const EMObject& source, const EMObject& target, const FpMatrix& f,
                                   std::size_t samples, std::uint64_t seed) {
  if (!(source.field() == target.field()) || source.max_degree() != target.max_degree()) {
    throw DimensionMismatch("EM objects differ in characteristic or truncation");
  }
  if (f.rows() != target.dim() || f.cols() != source.dim()) {
    throw DimensionMismatch("linear map shape does not match the EM objects");
  }
  EmMorphismReport report;
  for (std::size_t d = 1; d <= source.max_degree(); ++d) {
    bool ok = true;
    for (std::size_t k = 0; k < source.layer(d).dim(); ++k) {
      ++report.elements_checked;
      const LieElement lhs = f * source.mu0(d).column(k);
      const auto rhs = target.try_apply(map_tensor(source.layer(d).basis()[k], f, target.ctx()));
      ok = ok && rhs && *rhs == lhs;
    }
    if (!ok) {
      report.failing_degrees.push_back(d);
    }
  }
  const RestrictedLieAlgebra la = lambda(source);
  const RestrictedLieAlgebra lb = lambda(target);
  for (std::size_t i = 0; i < la.dim(); ++i) {
    for (std::size_t j = i + 1; j < la.dim(); ++j) {
      if (!(f * la.structure(i, j) == lb.bracket(f.column(i), f.column(j)))) {
        report.bracket_mismatches.emplace_back(i, j);
      }
    }
    if (!(f * la.pmap_row(i) == lb.pmap(f.column(i)))) {
      report.pmap_mismatches.push_back(i);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const LieElement x = random_element(la, rng);
    if (!(f * la.pmap(x) == lb.pmap(f * x))) {
      report.pmap_mismatches.push_back(la.dim() + s);
    }
  }
  return report;
}

StationarityReport stationarity_check(const M2Object& v2, std::size_t size_limit) {
  const EMObject& a = v2.underlying;
  StationarityReport report;
  report.max_degree = a.max_degree();
  const EnvelopingAlgebra env(lambda(v2), size_limit);
  const EMObject again = mu0_from_restricted(env, a.shared_layers());
  for (std::size_t d = 1; d <= a.max_degree(); ++d) {
    if (!(again.mu0(d) == a.mu0(d))) {
      report.mismatched_degrees.push_back(d);
    }
  }
  return report;
}

}  // namespace rlie
