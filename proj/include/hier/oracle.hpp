#pragma once

#include <map>
#include <string>
#include <vector>

#include "hier/ring.hpp"

// Brute-force brackets on trigonometric loops u^a(x) = sum_{|k|<=K} p^a_k e^{ikx}.
// Test support only.
namespace hier::oracle {

struct Mode {
  int var = 0;
  int k = 0;
  auto operator<=>(const Mode&) const = default;
};

struct FMono {
  std::vector<int> params;
  int eps = 0;
  int hbar = 0;
  std::vector<std::pair<Mode, int>> modes;  // sorted, powers >= 1

  int frequency() const;
  int degree() const;
  bool genus_order_exceeds(int max_order) const { return max_order != kUnbounded && eps + 2 * hbar > max_order; }
  auto operator<=>(const FMono&) const = default;
};

class FourierPoly {
 public:
  FourierPoly() = default;
  FourierPoly(RingPtr ring, int k_max) : ring_(std::move(ring)), k_max_(k_max) {}

  static FourierPoly mode(const RingPtr& ring, int k_max, int var, int k);
  static FourierPoly constant(const RingPtr& ring, int k_max, const Complex& c);

  const RingPtr& ring() const { return ring_; }
  int k_max() const { return k_max_; }
  const std::map<FMono, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const;

  void add(const FMono& m, const Complex& c);

  friend bool operator==(const FourierPoly& a, const FourierPoly& b) { return a.terms_ == b.terms_; }
  friend FourierPoly operator+(const FourierPoly& a, const FourierPoly& b);
  friend FourierPoly operator-(const FourierPoly& a, const FourierPoly& b);
  friend FourierPoly operator*(const FourierPoly& a, const FourierPoly& b);

 private:
  RingPtr ring_;
  int k_max_ = 0;
  std::map<FMono, Complex> terms_;
};

FourierPoly to_fourier(const DiffPoly& f, int k_max);
FourierPoly frequency_part(const FourierPoly& f, int freq);
// Sets every mode with |k| > k_max to zero.
FourierPoly restrict_modes(const FourierPoly& f, int k_max);

FourierPoly poisson_fourier(const FourierPoly& f, const FourierPoly& g);
FourierPoly star_product_fourier(const FourierPoly& f, const FourierPoly& g);
FourierPoly star_commutator_fourier(const FourierPoly& f, const FourierPoly& g);

// Mode bound for the oracle so that the comparison below is exact on modes <= k.
int oracle_modes(int k, const DiffPoly& h);

// to_fourier of the local bracket vs. the oracle, both restricted to modes <= k.
bool classical_agrees(const DiffPoly& f, const DiffPoly& h, int k);
bool quantum_agrees(const DiffPoly& f, const DiffPoly& h, int k);

// One flag per (f, h) pair: classical_agrees or quantum_agrees. Pairs run in parallel.
std::vector<char> agree_batch(const std::vector<std::pair<DiffPoly, DiffPoly>>& pairs, int k, bool quantum);
std::vector<char> agree_batch_serial(const std::vector<std::pair<DiffPoly, DiffPoly>>& pairs, int k, bool quantum);

std::string to_string(const FourierPoly& f);

}  // namespace hier::oracle
