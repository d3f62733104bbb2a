#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gentile/fock_basis.hpp"
#include "gentile/ladder.hpp"
#include "gentile/sparse_operator.hpp"

namespace gentile {

/// Leaf operator usable both as an assembled matrix and as a matrix-free map.
class Primitive {
 public:
  virtual ~Primitive() = default;
  virtual std::size_t dim() const = 0;
  virtual const ComplexOperator& matrix() const = 0;
  virtual std::vector<cplx> apply(std::span<const cplx> x) const = 0;
  virtual std::vector<cplx> apply_adjoint(std::span<const cplx> x) const = 0;
};

class MatrixPrimitive final : public Primitive {
 public:
  explicit MatrixPrimitive(ComplexOperator op) : op_(std::move(op)) {}

  std::size_t dim() const override { return op_.dim(); }
  const ComplexOperator& matrix() const override { return op_; }
  std::vector<cplx> apply(std::span<const cplx> x) const override { return op_.apply(x); }
  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const override {
    if (!adj_) adj_ = gentile::adjoint(op_);
    return adj_->apply(x);
  }

 private:
  ComplexOperator op_;
  mutable std::optional<ComplexOperator> adj_;
};

/// Ladder-word operator; the matrix is assembled only when requested.
class WordPrimitive final : public Primitive {
 public:
  WordPrimitive(WordSum words, std::shared_ptr<const FockBasis> basis)
      : words_(std::move(words)), adjoint_words_(words_.adjoint()), basis_(std::move(basis)) {}

  std::size_t dim() const override { return basis_->dimension(); }
  const ComplexOperator& matrix() const override {
    if (!assembled_) assembled_ = assemble(words_, *basis_);
    return assembled_->op;
  }
  double leakage() const {
    matrix();
    return assembled_->leakage;
  }
  std::vector<cplx> apply(std::span<const cplx> x) const override {
    return apply_words(words_, *basis_, x);
  }
  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const override {
    return apply_words(adjoint_words_, *basis_, x);
  }

 private:
  WordSum words_;
  WordSum adjoint_words_;
  std::shared_ptr<const FockBasis> basis_;
  mutable std::optional<Assembly> assembled_;
};

/// Linear-operator expression over primitives: sums, products, adjoints and
/// entrywise conjugates. Products are written left to right and applied right to left.
class Expr {
 public:
  static Expr leaf(std::shared_ptr<const Primitive> p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::leaf;
    n->dim = p->dim();
    n->prim = std::move(p);
    return Expr(std::move(n));
  }

  std::size_t dim() const { return node_->dim; }

  Expr adjoint() const { return unary(Kind::adjoint, *this); }
  Expr conj() const { return unary(Kind::conj, *this); }

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({{1.0, a}, {1.0, b}}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({{1.0, a}, {-1.0, b}}); }
  friend Expr operator*(cplx s, const Expr& a) { return sum({{s, a}}); }
  friend Expr operator*(const Expr& a, const Expr& b) {
    check_dims(a, b);
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->dim = a.dim();
    n->children = {a, b};
    return Expr(std::move(n));
  }

  static Expr sum(std::vector<std::pair<cplx, Expr>> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::sum;
    n->dim = terms.empty() ? 0 : terms.front().second.dim();
    for (auto& [c, e] : terms) {
      if (e.dim() != n->dim) throw DomainError("Expr: dimension mismatch in sum");
      n->coeffs.push_back(c);
      n->children.push_back(std::move(e));
    }
    return Expr(std::move(n));
  }

  ComplexOperator materialize() const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::leaf:
        return n.prim->matrix();
      case Kind::sum: {
        ComplexOperator acc(n.dim);
        bool first = true;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          auto term = n.coeffs[i] * n.children[i].materialize();
          acc = first ? std::move(term) : acc + term;
          first = false;
        }
        return acc;
      }
      case Kind::product: {
        ComplexOperator acc = n.children.front().materialize();
        for (std::size_t i = 1; i < n.children.size(); ++i) acc = acc * n.children[i].materialize();
        return acc;
      }
      case Kind::adjoint:
        return gentile::adjoint(n.children.front().materialize());
      case Kind::conj:
        return entrywise_conjugate(n.children.front().materialize());
    }
    return ComplexOperator(n.dim);
  }

  std::vector<cplx> apply(std::span<const cplx> x) const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::leaf:
        return n.prim->apply(x);
      case Kind::sum: {
        std::vector<cplx> y(n.dim, cplx{});
        for (std::size_t i = 0; i < n.children.size(); ++i) axpy(n.coeffs[i], n.children[i].apply(x), y);
        return y;
      }
      case Kind::product: {
        std::vector<cplx> v(x.begin(), x.end());
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) v = it->apply(v);
        return v;
      }
      case Kind::adjoint:
        return n.children.front().apply_adjoint(x);
      case Kind::conj:
        return conjugated(n.children.front().apply(conjugated(x)));
    }
    return {};
  }

  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const {
    const Node& n = *node_;
    switch (n.kind) {
      case Kind::leaf:
        return n.prim->apply_adjoint(x);
      case Kind::sum: {
        std::vector<cplx> y(n.dim, cplx{});
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          axpy(std::conj(n.coeffs[i]), n.children[i].apply_adjoint(x), y);
        }
        return y;
      }
      case Kind::product: {
        std::vector<cplx> v(x.begin(), x.end());
        for (const auto& c : n.children) v = c.apply_adjoint(v);
        return v;
      }
      case Kind::adjoint:
        return n.children.front().apply(x);
      case Kind::conj:
        // (conj X)^dagger = X^T, and X^T v = conj(X^dagger conj v)
        return conjugated(n.children.front().apply_adjoint(conjugated(x)));
    }
    return {};
  }

 private:
  enum class Kind { leaf, sum, product, adjoint, conj };

  struct Node {
    Kind kind = Kind::leaf;
    std::size_t dim = 0;
    std::shared_ptr<const Primitive> prim;
    std::vector<cplx> coeffs;
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Expr unary(Kind k, const Expr& e) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->dim = e.dim();
    n->children = {e};
    return Expr(std::move(n));
  }

  static void check_dims(const Expr& a, const Expr& b) {
    if (a.dim() != b.dim()) throw DomainError("Expr: dimension mismatch in product");
  }

  static void axpy(cplx c, const std::vector<cplx>& x, std::vector<cplx>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
  }

  static std::vector<cplx> conjugated(std::span<const cplx> x) {
    std::vector<cplx> y(x.size());
    std::ranges::transform(x, y.begin(), [](cplx v) { return std::conj(v); });
    return y;
  }

  std::shared_ptr<const Node> node_;
};

inline Expr leaf(ComplexOperator op) { return Expr::leaf(std::make_shared<MatrixPrimitive>(std::move(op))); }

inline Expr leaf(WordSum words, std::shared_ptr<const FockBasis> basis) {
  return Expr::leaf(std::make_shared<WordPrimitive>(std::move(words), std::move(basis)));
}

/// Entrywise real part (X + conj X) / 2.
inline Expr real_part(const Expr& e) { return Expr::sum({{0.5, e}, {0.5, e.conj()}}); }

/// Hermitian part (X + X^dagger) / 2.
inline Expr hermitian_part(const Expr& e) { return Expr::sum({{0.5, e}, {0.5, e.adjoint()}}); }

/// Complex vectors with independent N(0, 1/2) real and imaginary parts.
///
/// Box-Muller over mt19937_64 so the stream is identical on every standard library.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(std::uint64_t seed) : rng_(seed) {}

  std::vector<cplx> vector(std::size_t dim) {
    std::vector<cplx> v(dim);
    for (auto& z : v) {
      const double u1 = uniform_open();
      const double u2 = uniform_open();
      const double r = std::sqrt(-std::log(u1));  // variance 1/2 per component
      const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
      z = {r * std::cos(t), r * std::sin(t)};
    }
    return v;
  }

 private:
  double uniform_open() {
    // 53 random bits mapped into (0, 1)
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
};

inline double inf_norm(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// max over k seeded random vectors of |R v|_inf / |v|_inf
inline double sampled_norm(const Expr& r, std::size_t samples, std::uint64_t seed) {
  ComplexGaussian gen(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto v = gen.vector(r.dim());
    const double vn = inf_norm(v);
    if (vn == 0.0) continue;
    worst = std::max(worst, inf_norm(r.apply(v)) / vn);
  }
  return worst;
}

}  // namespace gentile
