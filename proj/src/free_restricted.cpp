#include "rlie/free_restricted.hpp"

#include <algorithm>
#include <string>

namespace rlie {

namespace {

std::vector<FpVector> dense_family(const std::vector<TensorElement>& basis, std::size_t degree) {
  std::vector<FpVector> out;
  out.reserve(basis.size());
  for (const auto& z : basis) {
    out.push_back(z.dense(degree));
  }
  return out;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) {
        return 0;
      }
      sign = -sign;
    }
  }
  return n > 1 ? -sign : sign;
}

std::int64_t int_power(std::uint64_t base, std::uint64_t e) {
  std::int64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    out *= static_cast<std::int64_t>(base);
  }
  return out;
}

}  // namespace

FreeRestrictedLayer::FreeRestrictedLayer(TensorContext ctx, std::size_t degree, std::vector<TensorElement> basis)
    : ctx_(ctx),
      degree_(degree),
      basis_(std::move(basis)),
      solver_(ctx_.field, word_count(ctx_.rank, degree_), dense_family(basis_, degree_)) {}

std::optional<FpVector> FreeRestrictedLayer::coordinates(const TensorElement& z) const {
  if (!(z.context() == ctx_) || !z.is_homogeneous(degree_)) {
    return std::nullopt;
  }
  return solver_.coordinates(z.dense(degree_));
}

TensorElement FreeRestrictedLayer::element(const FpVector& c) const {
  if (c.size() != basis_.size()) {
    throw DimensionMismatch("layer coordinates of length " + std::to_string(c.size()) + " for a layer of dimension " +
                            std::to_string(basis_.size()));
  }
  TensorElement out(ctx_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (c[k] != 0) {
      out += basis_[k].scaled(c[k]);
    }
  }
  return out;
}

std::vector<FreeRestrictedLayer> free_restricted_basis(const TensorContext& ctx) {
  if (ctx.max_degree == 0) {
    throw DegreeOutOfRange("free restricted Lie algebra needs truncation degree N >= 1");
  }
  std::vector<FreeRestrictedLayer> layers;
  layers.reserve(ctx.max_degree);
  for (std::size_t n = 1; n <= ctx.max_degree; ++n) {
    layers.emplace_back(ctx, n, primitive_basis(ctx, n));
  }
  return layers;
}

std::vector<FreeRestrictedLayer> free_restricted_basis(std::uint64_t p, std::size_t rank, std::size_t max_degree) {
  return free_restricted_basis(TensorContext{PrimeField(p), rank, max_degree});
}

std::uint64_t witt_number(std::uint64_t degree, std::uint64_t rank) {
  if (degree == 0) {
    return 0;
  }
  std::int64_t sum = 0;
  for (std::uint64_t e = 1; e <= degree; ++e) {
    if (degree % e == 0) {
      sum += mobius(e) * int_power(rank, degree / e);
    }
  }
  return static_cast<std::uint64_t>(sum) / degree;
}

std::uint64_t witt_oracle_dimension(std::uint64_t p, std::uint64_t rank, std::uint64_t degree) {
  std::uint64_t total = 0;
  for (std::uint64_t d = degree;; d /= p) {
    total += witt_number(d, rank);
    if (d % p != 0) {
      break;
    }
  }
  return total;
}

std::string ClosureRecord::describe() const {
  const std::string left = "b" + std::to_string(left_degree) + "." + std::to_string(left_index);
  if (kind == Kind::Power) {
    return left + "^p -> degree " + std::to_string(result_degree);
  }
  return "[" + left + ", b" + std::to_string(right_degree) + "." + std::to_string(right_index) + "] -> degree " +
         std::to_string(result_degree);
}

std::size_t ClosureReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : records) {
    n += r.coordinates ? 0 : 1;
  }
  return n;
}

ClosureReport closure_check(const std::vector<FreeRestrictedLayer>& layers, std::size_t max_degree) {
  ClosureReport report;
  report.max_degree = std::min(max_degree, layers.size());
  const std::size_t top = report.max_degree;
  std::vector<ClosureRecord> jobs;
  for (std::size_t n = 1; n <= top; ++n) {
    for (std::size_t m = n; n + m <= top; ++m) {
      for (std::size_t a = 0; a < layers[n - 1].dim(); ++a) {
        for (std::size_t b = (m == n ? a : 0); b < layers[m - 1].dim(); ++b) {
          jobs.push_back({ClosureRecord::Kind::Bracket, n, a, m, b, n + m, std::nullopt});
        }
      }
    }
  }
  if (!layers.empty()) {
    const std::size_t p = layers.front().context().field.modulus();
    for (std::size_t n = 1; n * p <= top; ++n) {
      for (std::size_t a = 0; a < layers[n - 1].dim(); ++a) {
        jobs.push_back({ClosureRecord::Kind::Power, n, a, 0, 0, n * p, std::nullopt});
      }
    }
  }
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    ClosureRecord& job = jobs[static_cast<std::size_t>(j)];
    const TensorElement& x = layers[job.left_degree - 1].basis()[job.left_index];
    const TensorElement value = job.kind == ClosureRecord::Kind::Bracket
                                    ? commutator(x, layers[job.right_degree - 1].basis()[job.right_index])
                                    : tensor_power(x, x.field().modulus());
    job.coordinates = layers[job.result_degree - 1].coordinates(value);
  }
  for (const auto& job : jobs) {
    (job.kind == ClosureRecord::Kind::Bracket ? report.brackets_checked : report.powers_checked) += 1;
  }
  report.records = std::move(jobs);
  return report;
}

}  // namespace rlie
