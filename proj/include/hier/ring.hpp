#pragma once

#include <climits>
#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hier/scalar.hpp"

namespace hier {

inline constexpr int kUnbounded = INT_MAX;

enum class Mode { Classical, Quantum };

struct TruncationWindow {
  // Largest eps_pow + 2*hbar_pow kept.
  int max_order = kUnbounded;
  // Largest number of u-letters kept.
  int max_u_degree = kUnbounded;
  bool operator==(const TruncationWindow&) const = default;
};

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

struct RingOptions {
  int n_vars = 1;
  Mode mode = Mode::Classical;
  std::vector<std::string> params;
  TruncationWindow window;
  std::vector<std::string> var_names;  // defaults: u or u1..uN
  Matrix eta;                          // defaults: identity
};

class RingContext {
 public:
  static RingPtr create(RingOptions opts);

  int n_vars() const { return n_vars_; }
  Mode mode() const { return mode_; }
  bool quantum() const { return mode_ == Mode::Quantum; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& var_names() const { return var_names_; }
  const TruncationWindow& window() const { return window_; }
  const Matrix& eta() const { return eta_; }
  const Matrix& eta_inv() const { return eta_inv_; }
  int param_index(const std::string& name) const;  // -1 if absent

  RingOptions options() const;
  RingPtr with_window(TruncationWindow w) const;
  RingPtr with_mode(Mode m) const;
  RingPtr with_params(std::vector<std::string> params) const;

  bool same_as(const RingContext& o) const;

 private:
  RingContext() = default;
  int n_vars_ = 1;
  Mode mode_ = Mode::Classical;
  std::vector<std::string> params_;
  std::vector<std::string> var_names_;
  TruncationWindow window_;
  Matrix eta_, eta_inv_;
};

struct RingMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// u^var_order raised to power; var is 0-based.
struct Factor {
  int var = 0;
  int order = 0;
  int power = 1;
  bool operator==(const Factor&) const = default;
};

struct Monomial {
  std::vector<int> params;
  int eps = 0;
  int hbar = 0;
  std::vector<Factor> factors;

  int u_degree() const;
  int diff_degree() const;
  int genus_order() const { return eps + 2 * hbar; }
  int degree() const { return diff_degree() - eps - 2 * hbar; }
  int weight() const { return u_degree() + eps + 2 * hbar; }
  bool is_constant() const { return factors.empty(); }
  int power_of(int var, int order) const;
  bool operator==(const Monomial&) const = default;
};

std::strong_ordering compare(const Monomial& a, const Monomial& b);
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

Monomial multiply(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Complex coeff;
};

// Scalar coefficient: Gaussian rational times a monomial in the ring parameters.
struct Coefficient {
  Complex value;
  std::map<std::string, int> params;
};

class DiffPoly;

class TermMap {
 public:
  void add(const Monomial& m, const Complex& c);
  void add(Monomial&& m, const Complex& c);
  void add_scaled(const DiffPoly& p, const Complex& c);
  void add(const DiffPoly& p) { add_scaled(p, Complex(1)); }
  void merge(TermMap&& other);
  bool empty() const { return map_.empty(); }
  DiffPoly finish(const RingPtr& ring, int exact = kUnbounded);

 private:
  std::map<Monomial, Complex, MonomialLess> map_;
};

class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(RingPtr ring);

  static DiffPoly constant(const RingPtr& ring, const Complex& c);
  static DiffPoly coefficient(const RingPtr& ring, const Coefficient& c);
  static DiffPoly variable(const RingPtr& ring, int var, int order = 0);
  static DiffPoly eps(const RingPtr& ring, int power = 1);
  static DiffPoly hbar(const RingPtr& ring, int power = 1);
  static DiffPoly param(const RingPtr& ring, const std::string& name, int power = 1);
  static DiffPoly monomial(const RingPtr& ring, Monomial m, const Complex& c);
  // Canonicalizes: merges duplicates, drops zeros, applies the window.
  static DiffPoly from_terms(const RingPtr& ring, std::vector<Term> terms, int exact = kUnbounded);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int exact_u_degree() const { return exact_; }
  DiffPoly with_exact(int exact) const;

  int max_u_degree() const;
  int min_u_degree() const;  // kUnbounded for zero
  int min_genus_order() const;
  int max_genus_order() const;
  int max_order(int var) const;  // -1 if var absent
  // Coefficient of the exact monomial.
  Complex coeff_of(const Monomial& m) const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  friend class TermMap;
  RingPtr ring_;
  std::vector<Term> terms_;
  int exact_ = kUnbounded;
};

void require_same_ring(const DiffPoly& a, const DiffPoly& b);

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
DiffPoly operator-(const DiffPoly& a);
DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
DiffPoly scale(const Complex& c, const DiffPoly& f);
DiffPoly scale(const Coefficient& c, const DiffPoly& f);
DiffPoly power(const DiffPoly& f, int n);

// Serial reference and OpenMP kernel for the product; both give identical results.
DiffPoly mul_serial(const DiffPoly& a, const DiffPoly& b);
DiffPoly mul_parallel(const DiffPoly& a, const DiffPoly& b);

DiffPoly dx(const DiffPoly& f);
DiffPoly dx(const DiffPoly& f, int times);
DiffPoly partial(const DiffPoly& f, int var, int order);
DiffPoly euler_D(const DiffPoly& f);
// u^a_k -> dx^k(images[a]).
DiffPoly substitute(const DiffPoly& f, const std::vector<DiffPoly>& images);

DiffPoly constant_part(const DiffPoly& f);
DiffPoly drop_constants(const DiffPoly& f);
DiffPoly set_hbar_zero(const DiffPoly& f);
DiffPoly set_eps_zero(const DiffPoly& f);
// Requires every term to carry at least one power.
DiffPoly divide_by_hbar(const DiffPoly& f);
DiffPoly divide_by_eps(const DiffPoly& f);
DiffPoly truncate_order(const DiffPoly& f, int max_order);
DiffPoly truncate_u_degree(const DiffPoly& f, int max_u_degree);
// Same polynomial in another ring; parameters and variables matched by position/name.
DiffPoly lift(const DiffPoly& f, const RingPtr& target);
// Replace ring parameters by constant polynomials (other parameters untouched).
DiffPoly substitute_params(const DiffPoly& f, const std::map<std::string, DiffPoly>& values);

// Execution control for the parallel kernels.
namespace exec {
void set_threads(int n);
int threads();
bool parallel();
}  // namespace exec

}  // namespace hier
